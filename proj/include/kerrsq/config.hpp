#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "kerrsq/dispersive_stats.hpp"
#include "kerrsq/pulse_model.hpp"

namespace kerrsq {

enum class Mode { spectrum, bandwidth, mandel, fig1, fig2 };
enum class OutputFormat { csv, json, plotscript };

std::string_view to_string(Mode mode);
std::string_view to_string(OutputFormat format);
Mode parse_mode(std::string_view name);
OutputFormat parse_format(std::string_view name);

/// Inclusive linear axis [min, max] with `count` points.
struct AxisSpec {
  double min = 0.0;
  double max = 1.0;
  Eigen::Index count = 2;

  Eigen::VectorXd points() const { return Eigen::VectorXd::LinSpaced(count, min, max); }
  bool operator==(const AxisSpec&) const = default;
};

struct PulseConfig {
  double psi0 = 0.0;
  double gamma = kDefaultCoupling;
  double n_bar0 = 0.0;
  double tau_p = 10.0;
  double t = 0.0;
  PhasePolicy<double> phase = OptimalPhase<double>{};
  bool operator==(const PulseConfig&) const = default;
};

struct DispersionConfig {
  DispersionSign sign = DispersionSign::anomalous;
  double T_over_tau_p = 0.1;
  double k2_abs = 1.0;
  std::optional<double> phi;  // single-point mandel runs only
  bool operator==(const DispersionConfig&) const = default;
};

struct GridConfig {
  std::optional<AxisSpec> psi0;
  std::optional<AxisSpec> omega;
  std::optional<AxisSpec> phi;
  bool operator==(const GridConfig&) const = default;
};

struct BandwidthConfig {
  double tolerance = 1e-6;
  double scan_step = 0.01;
  double omega_max = 100.0;
  bool operator==(const BandwidthConfig&) const = default;
};

struct OutputConfig {
  std::string prefix;
  std::vector<OutputFormat> formats{OutputFormat::csv, OutputFormat::json};
  bool operator==(const OutputConfig&) const = default;
};

/// A fully validated run with every default filled in.
struct RunConfig {
  Mode mode = Mode::fig1;
  double tau_r = 1.0;
  PulseConfig pulse;
  std::optional<DispersionConfig> dispersion;
  GridConfig grid;
  BandwidthConfig bandwidth;
  OutputConfig output;
  bool operator==(const RunConfig&) const = default;

  RelaxationKernel<double> kernel() const { return RelaxationKernel<double>(tau_r); }
  PulseSpec<double> pulse_spec() const;
  /// Requires a dispersion section.
  DispersionScenario<double> scenario() const;
};

struct ParseOptions {
  bool strict = false;  // reject unknown fields
};

/// Parses a JSON config document. Syntax errors carry line and column; semantic errors
/// name the offending field. Both raise ConfigError.
RunConfig parse_config(std::string_view text, ParseOptions options = {});
RunConfig parse_config_document(const nlohmann::json& document, ParseOptions options = {});

/// Canonical document for a validated config; parse_config(to_json(c)) == c.
nlohmann::json to_json(const RunConfig& config);

/// Parses text as JSON, reporting syntax errors as ConfigError with line/column.
nlohmann::json parse_json_document(std::string_view text);

}  // namespace kerrsq
