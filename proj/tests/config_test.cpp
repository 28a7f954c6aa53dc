#include "kerrsq/config.hpp"

#include <gtest/gtest.h>

using namespace kerrsq;
using nlohmann::json;

namespace {

std::string field_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<no error>";
}

}  // namespace

TEST(ParseConfig, minimal_fig1_fills_defaults) {
  const auto cfg = parse_config(R"({"mode": "fig1", "kernel": {"tau_r": 1}, "grid": {"psi0": {"max": 10}}})");
  EXPECT_EQ(cfg.mode, Mode::fig1);
  ASSERT_TRUE(cfg.grid.psi0 && cfg.grid.omega);
  EXPECT_EQ(cfg.grid.psi0->count, 201);
  EXPECT_EQ(cfg.grid.omega->count, 201);
  EXPECT_EQ(cfg.grid.psi0->max, 10.0);
  EXPECT_EQ(cfg.grid.omega->max, 10.0);
  EXPECT_FALSE(cfg.grid.phi);
  EXPECT_EQ(std::get<OptimalPhase<double>>(cfg.pulse.phase).omega0.value, 1.0);
  EXPECT_EQ(cfg.pulse.t, 0.0);
  EXPECT_EQ(cfg.pulse.tau_p, 10.0);
  EXPECT_FALSE(cfg.dispersion);
  EXPECT_EQ(cfg.output.prefix, "kerrsq_fig1");
}

TEST(ParseConfig, fig2_defaults) {
  const auto cfg = parse_config(R"({"mode": "fig2"})");
  ASSERT_TRUE(cfg.dispersion);
  EXPECT_EQ(cfg.dispersion->sign, DispersionSign::anomalous);
  EXPECT_EQ(cfg.dispersion->T_over_tau_p, 0.1);
  EXPECT_EQ(cfg.grid.psi0->max, 3.0);
  EXPECT_EQ(cfg.grid.phi->max, 0.3);
  EXPECT_EQ(cfg.scenario().T, 1.0);
  EXPECT_EQ(cfg.scenario().length_ratio(), 100.0);
}

TEST(ParseConfig, fig2_normal_dispersion_is_accepted) {
  const auto cfg = parse_config(R"({"mode": "fig2", "dispersion": {"s": -1}})");
  EXPECT_EQ(cfg.dispersion->sign, DispersionSign::normal);
}

TEST(ParseConfig, peak_phase_expansion) {
  const auto only_psi = parse_config(R"({"mode": "spectrum", "pulse": {"psi0": 5}})");
  EXPECT_EQ(only_psi.pulse.gamma, 0.01);
  EXPECT_DOUBLE_EQ(only_psi.pulse.n_bar0, 250.0);
  const auto pair = parse_config(R"({"mode": "spectrum", "pulse": {"gamma": 0.002, "n_bar0": 1000}})");
  EXPECT_DOUBLE_EQ(pair.pulse.psi0, 4.0);
  const auto psi_and_n = parse_config(R"({"mode": "spectrum", "pulse": {"psi0": 4, "n_bar0": 1000}})");
  EXPECT_DOUBLE_EQ(psi_and_n.pulse.gamma, 0.002);
  EXPECT_EQ(field_of([] { parse_config(R"({"mode": "spectrum", "pulse": {"psi0": 4, "gamma": 0.1, "n_bar0": 1}})"); }),
            "pulse.psi0");
  EXPECT_EQ(field_of([] { parse_config(R"({"mode": "bandwidth"})"); }), "pulse.psi0");
}

TEST(ParseConfig, semantic_errors_name_the_field) {
  EXPECT_EQ(field_of([] { parse_config(R"({"mode": "fig1", "grid": {"psi0": {"count": 1}}})"); }), "grid.psi0.count");
  EXPECT_EQ(field_of([] { parse_config(R"({"mode": "fig1", "grid": {"omega": {"min": 3, "max": 1}}})"); }), "grid.omega");
  EXPECT_EQ(field_of([] { parse_config(R"({"mode": "fig1", "kernel": {"tau_r": 0}})"); }), "kernel.tau_r");
  EXPECT_EQ(field_of([] { parse_config(R"({"mode": "fig1", "kernel": {"tau_r": "1"}})"); }), "kernel.tau_r");
  EXPECT_EQ(field_of([] { parse_config(R"({"mode": "warp"})"); }), "mode");
  EXPECT_EQ(field_of([] { parse_config(R"({"mode": "fig1", "dispersion": {}})"); }), "dispersion");
  EXPECT_EQ(field_of([] { parse_config(R"({"mode": "mandel", "pulse": {"psi0": 2}})"); }), "dispersion.phi");
  EXPECT_EQ(field_of([] { parse_config(R"({"mode": "fig2", "dispersion": {"s": 0}})"); }), "dispersion.s");
  EXPECT_EQ(field_of([] { parse_config(R"({"mode": "fig1", "pulse": {"phase": {"policy": "constant"}}})"); }),
            "pulse.phase.policy");
  EXPECT_EQ(field_of([] { parse_config(R"({"mode": "mandel", "pulse": {"psi0": 1}, "dispersion": {"phi": 0.1},
                                          "output": {"formats": ["plotscript"]}})"); }),
            "output.formats");
}

TEST(ParseConfig, grid_count_error_message) {
  try {
    parse_config(R"({"mode": "fig1", "grid": {"omega": {"count": 1}}})");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("grid count must be >= 2"), std::string::npos);
  }
}

TEST(ParseConfig, syntax_error_reports_line_and_column) {
  try {
    parse_config("{\n  \"mode\": \"fig1\",\n  \"kernel\": {\"tau_r\": 1,}\n}");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3, column"), std::string::npos) << e.what();
  }
}

TEST(ParseConfig, strict_mode_rejects_unknown_fields) {
  const char* text = R"({"mode": "fig1", "kernel": {"tau_r": 1, "tau_x": 2}})";
  EXPECT_NO_THROW(parse_config(text));
  EXPECT_EQ(field_of([&] { parse_config(text, ParseOptions{true}); }), "kernel.tau_x");
  EXPECT_EQ(field_of([] { parse_config(R"({"mode": "fig1", "extra": 1})", ParseOptions{true}); }), "extra");
}

TEST(ParseConfig, round_trip_through_canonical_document) {
  const std::vector<std::string> docs{
      R"({"mode": "fig1"})",
      R"({"mode": "fig2", "dispersion": {"s": -1, "T_over_tau_p": 0.05}, "grid": {"phi": {"max": 0.2, "count": 11}}})",
      R"({"mode": "spectrum", "pulse": {"psi0": 3.3, "t": 1.5, "phase": {"policy": "constant", "value": 0.1}}})",
      R"({"mode": "bandwidth", "pulse": {"gamma": 0.003, "n_bar0": 777}, "bandwidth": {"omega_max": 20}})",
      R"({"mode": "mandel", "kernel": {"tau_r": 0.3}, "pulse": {"psi0": 2, "tau_p": 3}, "dispersion": {"phi": 0.1},
          "output": {"prefix": "x/y", "formats": ["json"]}})",
  };
  for (const auto& text : docs) {
    const auto once = parse_config(text);
    const auto twice = parse_config_document(to_json(once), ParseOptions{true});
    EXPECT_EQ(once, twice) << text;
    EXPECT_EQ(to_json(once).dump(), to_json(twice).dump());
  }
}
