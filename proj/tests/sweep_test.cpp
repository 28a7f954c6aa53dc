#include "kerrsq/sweep.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "kerrsq/emit.hpp"

using namespace kerrsq;
using nlohmann::json;

namespace {

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / ("kerrsq_sweep_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(FormatNumber, shortest_round_trip) {
  EXPECT_EQ(format_number(0.25), "0.25");
  EXPECT_EQ(format_number(2.0), "2");
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(-0.02339107150311518), "-0.02339107150311518");
  for (double x : {1.0 / 3.0, 0.009271995540935024, 1e-300, 6.02214076e23}) EXPECT_EQ(std::stod(format_number(x)), x);
}

TEST(Run, default_fig1_surface) {
  const auto env = run(parse_config(R"({"mode": "fig1"})"), 4);
  const auto& s = std::get<SpectrumSurface>(env.payload);
  EXPECT_EQ(s.values.rows(), 201);
  EXPECT_EQ(s.values.cols(), 201);
  EXPECT_EQ(s.values(0, 0), 0.25);
  EXPECT_NEAR(s.values(100, 20), 0.00927199554093498, 1e-15);  // psi0 = 5, Omega = 1
  EXPECT_TRUE(env.flags.validity.ok());
  EXPECT_EQ(env.content_hash.size(), 64u);

  const std::string csv = render_csv(env);
  EXPECT_EQ(count_lines(csv), 201u * 201u + 1u);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "psi0,omega_reduced,S");
  EXPECT_EQ(csv.find('\r'), std::string::npos);
}

TEST(Run, mandel_point) {
  const auto env = run(parse_config(R"({"mode": "mandel", "pulse": {"psi0": 2}, "dispersion": {"phi": 0.1}})"));
  const auto& m = std::get<MandelPoint>(env.payload);
  EXPECT_NEAR(m.Q, -0.0234, 1e-4);
  EXPECT_DOUBLE_EQ(m.w2, 0.8);
  EXPECT_DOUBLE_EQ(m.phi_d, 10.0);
  EXPECT_EQ(render_csv(env), "psi0,phi,Q,masked\n2,0.1,-0.02339107150311518,0\n");
}

TEST(Run, mandel_beyond_focus_is_a_domain_error_naming_the_cell) {
  const auto cfg = parse_config(R"({"mode": "mandel", "pulse": {"psi0": 4}, "dispersion": {"phi": 0.3}})");
  try {
    run(cfg);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("psi0=4"), std::string::npos) << e.what();
  }
}

TEST(Run, bandwidth_contains_design_frequency) {
  const auto env = run(parse_config(R"({"mode": "bandwidth", "pulse": {"psi0": 5}})"));
  const auto& b = std::get<BandwidthResult>(env.payload);
  ASSERT_FALSE(b.bands.empty());
  EXPECT_LE(b.bands[0].lower, 1.0);
  EXPECT_GE(b.bands[0].upper, 1.0);
  EXPECT_EQ(render_csv(env).substr(0, 34), "lower,upper,upper_at_scan_limit\n0,");
}

TEST(Run, spectrum_line) {
  const auto env = run(parse_config(R"({"mode": "spectrum", "pulse": {"psi0": 0}})"));
  const auto& line = std::get<SpectrumLine>(env.payload);
  EXPECT_TRUE((line.values.array() == 0.25).all());
}

TEST(Run, fig2_masks_and_flags_variant) {
  const auto env = run(parse_config(R"({"mode": "fig2", "grid": {"psi0": {"max": 6, "count": 7}, "phi": {"count": 4}}})"));
  const auto& q = std::get<QSurface>(env.payload);
  EXPECT_GT(q.masked.count(), 0);
  const std::string csv = render_csv(env);
  EXPECT_NE(csv.find("\n6,0.19999999999999998,,1\n"), std::string::npos);
  EXPECT_NE(csv.find("\n0,0,0,0\n"), std::string::npos);
  EXPECT_FALSE(env.flags.nonstandard_variant);

  const auto normal = run(parse_config(R"({"mode": "fig2", "dispersion": {"s": -1}})"));
  EXPECT_TRUE(normal.flags.nonstandard_variant);
  EXPECT_EQ(std::get<QSurface>(normal.payload).masked.count(), 0);
}

TEST(Run, validity_flags_reported) {
  const auto env = run(parse_config(R"({"mode": "spectrum", "pulse": {"psi0": 1, "gamma": 0.5, "tau_p": 2}})"));
  EXPECT_FALSE(env.flags.validity.coupling_ok);
  EXPECT_FALSE(env.flags.validity.duration_ratio_ok);
  EXPECT_EQ(env.flags.notes.size(), 2u);
}

TEST(Envelope, json_round_trip_for_every_mode) {
  const std::vector<std::string> docs{
      R"({"mode": "fig1", "grid": {"psi0": {"count": 9}, "omega": {"count": 7}}})",
      R"({"mode": "fig2", "grid": {"psi0": {"max": 8, "count": 9}, "phi": {"count": 5}}})",
      R"({"mode": "spectrum", "pulse": {"psi0": 2.5, "t": 3}})",
      R"({"mode": "bandwidth", "pulse": {"psi0": 5}})",
      R"({"mode": "mandel", "pulse": {"psi0": 2}, "dispersion": {"phi": 0.1}})",
  };
  for (const auto& text : docs) {
    const auto env = run(parse_config(text));
    const std::string dumped = render_json(env);
    const auto back = envelope_from_json(json::parse(dumped));
    EXPECT_EQ(render_json(back), dumped) << text;
    EXPECT_EQ(content_hash(back), env.content_hash);
    EXPECT_EQ(back.config, env.config);
    EXPECT_EQ(render_csv(back), render_csv(env));
  }
}

TEST(Envelope, deterministic_across_runs_and_workers) {
  const auto cfg = parse_config(R"({"mode": "fig2", "grid": {"psi0": {"max": 6}}})");
  const auto a = run(cfg, 1);
  const auto b = run(cfg, 8);
  EXPECT_EQ(a.content_hash, b.content_hash);
  EXPECT_EQ(render_json(a), render_json(b));
  EXPECT_EQ(render_csv(a), render_csv(b));
}

TEST(Emit, writes_requested_formats) {
  const auto dir = scratch_dir();
  const auto env = run(parse_config(R"({"mode": "fig1", "grid": {"psi0": {"count": 5}, "omega": {"count": 4}}})"));
  const auto prefix = (dir / "nested" / "fig1").string();
  const auto paths = emit(env, prefix, {OutputFormat::csv, OutputFormat::json, OutputFormat::plotscript});
  ASSERT_EQ(paths.size(), 3u);
  EXPECT_EQ(slurp(paths[0]), render_csv(env));
  EXPECT_EQ(envelope_from_json(json::parse(slurp(paths[1]))).content_hash, env.content_hash);
  const std::string script = slurp(paths[2]);
  EXPECT_NE(script.find("set xlabel 'psi'"), std::string::npos);
  EXPECT_NE(script.find("set ylabel 'Omega'"), std::string::npos);
  EXPECT_NE(script.find("set output 'fig1.png'"), std::string::npos);
  EXPECT_NE(script.find("$surface << EOD"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(Emit, fig2_plotscript_labels_and_missing_cells) {
  const auto env = run(parse_config(R"({"mode": "fig2", "grid": {"psi0": {"max": 6, "count": 4}, "phi": {"count": 3}}})"));
  const std::string script = render_plotscript(env, "fig2");
  EXPECT_NE(script.find("set xlabel 'psi(0)'"), std::string::npos);
  EXPECT_NE(script.find("set ylabel 'phi(z)'"), std::string::npos);
  EXPECT_NE(script.find(" NaN\n"), std::string::npos);
}

TEST(Emit, unwritable_prefix_raises_io_error) {
  const auto env = run(parse_config(R"({"mode": "spectrum", "pulse": {"psi0": 1}})"));
  EXPECT_THROW(emit(env, "/proc/kerrsq_forbidden/out", {OutputFormat::csv}), IoError);
}
