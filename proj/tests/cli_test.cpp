#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("kerrsq_cli_test_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::string& args) {
    const std::string cmd = std::string(KERRSQ_CLI) + " " + args + " >" + (dir_ / "stdout").string() + " 2>" +
                            (dir_ / "stderr").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string read(const fs::path& p) const {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string stderr_text() const { return read(dir_ / "stderr"); }

  void write(const std::string& name, const std::string& text) const { std::ofstream(dir_ / name) << text; }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, fig1_writes_csv_json_and_plotscript) {
  ASSERT_EQ(run("fig1 --out " + path("f1") + " --format csv,json,plotscript --set grid.psi0.count=11"), 0);
  const std::string csv = read(path("f1.csv"));
  EXPECT_EQ(csv.substr(0, 21), "psi0,omega_reduced,S\n");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 11 * 201 + 1);
  const auto doc = nlohmann::json::parse(read(path("f1.json")));
  EXPECT_EQ(doc.at("config").at("grid").at("psi0").at("count"), 11);
  EXPECT_TRUE(fs::exists(path("f1.gp")));
}

TEST_F(Cli, flags_override_config_file) {
  write("cfg.json", R"({"mode": "mandel", "pulse": {"psi0": 1}, "dispersion": {"phi": 0.2}})");
  ASSERT_EQ(run("mandel --config " + path("cfg.json") + " --psi0 2 --phi 0.1 --out " + path("m") + " --format csv"), 0);
  EXPECT_EQ(read(path("m.csv")), "psi0,phi,Q,masked\n2,0.1,-0.02339107150311518,0\n");
}

TEST_F(Cli, subcommand_selects_the_mode) {
  write("cfg.json", R"({"mode": "fig1", "pulse": {"psi0": 5}})");
  ASSERT_EQ(run("bandwidth --config " + path("cfg.json") + " --out " + path("b") + " --format csv"), 0);
  EXPECT_EQ(read(path("b.csv")).substr(0, 32), "lower,upper,upper_at_scan_limit\n");
}

TEST_F(Cli, validation_errors_exit_2) {
  EXPECT_EQ(run("fig1 --set grid.psi0.count=1 --out " + path("x")), 2);
  EXPECT_NE(stderr_text().find("grid count must be >= 2"), std::string::npos);
  EXPECT_EQ(run("fig1 --strict --set kernel.bogus=1 --out " + path("x")), 2);
  EXPECT_NE(stderr_text().find("kernel.bogus"), std::string::npos);
  write("broken.json", "{\n  \"mode\": \"fig1\"\n  \"kernel\": {}\n}");
  EXPECT_EQ(run("fig1 --config " + path("broken.json")), 2);
  EXPECT_NE(stderr_text().find("line 3"), std::string::npos);
  EXPECT_EQ(run("mandel --psi0 1 --phi 0.1 --format plotscript --out " + path("x")), 2);
  EXPECT_EQ(run("fig1 --workers 0"), 2);
  EXPECT_EQ(run("nosuchmode"), 2);
  EXPECT_FALSE(fs::exists(path("x.csv")));
}

TEST_F(Cli, domain_errors_exit_3) {
  EXPECT_EQ(run("mandel --psi0 4 --phi 0.3 --out " + path("m")), 3);
  EXPECT_NE(stderr_text().find("compression"), std::string::npos);
}

TEST_F(Cli, worker_count_does_not_change_output) {
  ASSERT_EQ(run("fig2 --workers 1 --out " + path("a")), 0);
  ASSERT_EQ(run("fig2 --workers 8 --out " + path("b")), 0);
  EXPECT_EQ(read(path("a.csv")), read(path("b.csv")));
  const auto a = nlohmann::json::parse(read(path("a.json")));
  const auto b = nlohmann::json::parse(read(path("b.json")));
  EXPECT_EQ(a.at("config").at("output").at("prefix"), path("a"));
  EXPECT_EQ(a.at("payload"), b.at("payload"));
}

TEST_F(Cli, normal_dispersion_fig2_warns) {
  ASSERT_EQ(run("fig2 --s -1 --out " + path("n") + " --format json"), 0);
  EXPECT_NE(stderr_text().find("warning"), std::string::npos);
  const auto doc = nlohmann::json::parse(read(path("n.json")));
  EXPECT_TRUE(doc.at("flags").at("nonstandard_variant").get<bool>());
}

TEST_F(Cli, help_exits_zero) { EXPECT_EQ(run("--help"), 0); }
