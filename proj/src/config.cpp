#include "kerrsq/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

namespace kerrsq {

using nlohmann::json;

namespace {

constexpr std::array kModeNames{"spectrum", "bandwidth", "mandel", "fig1", "fig2"};
constexpr std::array kFormatNames{"csv", "json", "plotscript"};

struct Defaults {
  AxisSpec psi0;
  AxisSpec omega;
  AxisSpec phi;
};

Defaults grid_defaults(Mode mode) {
  if (mode == Mode::fig2) return {{0.0, 3.0, 61}, {0.0, 10.0, 201}, {0.0, 0.3, 61}};
  return {{0.0, 10.0, 201}, {0.0, 10.0, 201}, {0.0, 0.3, 61}};
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

void check_fields(const json& object, const std::string& path, std::initializer_list<const char*> allowed,
                  const ParseOptions& options) {
  if (!object.is_object()) throw ConfigError(path, "expected an object");
  if (!options.strict) return;
  for (const auto& [key, value] : object.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
    if (!known) throw ConfigError(join(path, key), "unknown field");
  }
}

double number(const json& object, const std::string& path, const char* key, double fallback) {
  if (!object.contains(key)) return fallback;
  const json& v = object.at(key);
  if (!v.is_number()) throw ConfigError(join(path, key), "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(join(path, key), "must be finite");
  return x;
}

std::optional<double> optional_number(const json& object, const std::string& path, const char* key) {
  if (!object.contains(key)) return std::nullopt;
  return number(object, path, key, 0.0);
}

void require_positive(double x, const std::string& field) {
  if (!(x > 0.0)) throw ConfigError(field, "must be positive");
}

void require_non_negative(double x, const std::string& field) {
  if (!(x >= 0.0)) throw ConfigError(field, "must be non-negative");
}

AxisSpec parse_axis(const json& object, const std::string& path, const AxisSpec& fallback,
                    const ParseOptions& options) {
  check_fields(object, path, {"min", "max", "count"}, options);
  AxisSpec axis = fallback;
  axis.min = number(object, path, "min", fallback.min);
  axis.max = number(object, path, "max", fallback.max);
  if (object.contains("count")) {
    const json& c = object.at("count");
    if (!c.is_number_integer()) throw ConfigError(join(path, "count"), "expected an integer");
    axis.count = c.get<Eigen::Index>();
  }
  if (axis.count < 2) throw ConfigError(join(path, "count"), "grid count must be >= 2");
  if (!(axis.min < axis.max)) throw ConfigError(path, "grid min must be < max");
  return axis;
}

PhasePolicy<double> parse_phase(const json& object, const std::string& path, const ParseOptions& options) {
  check_fields(object, path, {"policy", "omega0", "value"}, options);
  const std::string policy = object.value("policy", std::string("optimal"));
  if (policy == "optimal") {
    if (object.contains("value")) throw ConfigError(join(path, "value"), "only valid for the constant policy");
    const double omega0 = number(object, path, "omega0", 1.0);
    require_non_negative(omega0, join(path, "omega0"));
    return OptimalPhase<double>{ReducedFrequency{omega0}};
  }
  if (policy == "constant") {
    if (object.contains("omega0")) throw ConfigError(join(path, "omega0"), "only valid for the optimal policy");
    return ConstantPhase<double>{number(object, path, "value", 0.0)};
  }
  throw ConfigError(join(path, "policy"), "expected \"optimal\" or \"constant\"");
}

/// Fills psi0 / gamma / n_bar0 so that psi0 = 2 gamma n_bar0.
void resolve_coupling(PulseConfig& pulse, std::optional<double> psi0, std::optional<double> gamma,
                      std::optional<double> n_bar0, bool psi0_required) {
  if (psi0) require_non_negative(*psi0, "pulse.psi0");
  if (gamma) require_non_negative(*gamma, "pulse.gamma");
  if (n_bar0) require_non_negative(*n_bar0, "pulse.n_bar0");

  if (psi0 && gamma && n_bar0) {
    const double implied = 2.0 * *gamma * *n_bar0;
    if (std::abs(implied - *psi0) > 1e-12 * std::max(1.0, std::abs(*psi0)))
      throw ConfigError("pulse.psi0", "inconsistent with 2 * gamma * n_bar0");
  } else if (psi0 && n_bar0 && !gamma) {
    if (*n_bar0 == 0.0 && *psi0 != 0.0) throw ConfigError("pulse.n_bar0", "must be positive when psi0 > 0");
    gamma = *n_bar0 == 0.0 ? kDefaultCoupling : *psi0 / (2.0 * *n_bar0);
  } else if (psi0) {
    if (!gamma) gamma = kDefaultCoupling;
    if (*gamma == 0.0 && *psi0 != 0.0) throw ConfigError("pulse.gamma", "must be positive when psi0 > 0");
    n_bar0 = *gamma == 0.0 ? 0.0 : *psi0 / (2.0 * *gamma);
  } else if (gamma && n_bar0) {
    psi0 = 2.0 * *gamma * *n_bar0;
  } else if (psi0_required) {
    throw ConfigError("pulse.psi0", "required (or both gamma and n_bar0)");
  } else {
    // Swept modes: psi0 comes from the grid.
    psi0 = 0.0;
    if (!gamma) gamma = kDefaultCoupling;
    n_bar0 = 0.0;
  }
  pulse.psi0 = *psi0;
  pulse.gamma = *gamma;
  pulse.n_bar0 = *n_bar0;
}

bool swept(Mode mode) { return mode == Mode::fig1 || mode == Mode::fig2; }
bool dispersive(Mode mode) { return mode == Mode::mandel || mode == Mode::fig2; }

}  // namespace

std::string_view to_string(Mode mode) { return kModeNames[static_cast<std::size_t>(mode)]; }
std::string_view to_string(OutputFormat format) { return kFormatNames[static_cast<std::size_t>(format)]; }

Mode parse_mode(std::string_view name) {
  for (std::size_t i = 0; i < kModeNames.size(); ++i)
    if (name == kModeNames[i]) return static_cast<Mode>(i);
  throw ConfigError("mode", "unknown mode '" + std::string(name) + "'");
}

OutputFormat parse_format(std::string_view name) {
  for (std::size_t i = 0; i < kFormatNames.size(); ++i)
    if (name == kFormatNames[i]) return static_cast<OutputFormat>(i);
  throw ConfigError("output.formats", "unknown format '" + std::string(name) + "'");
}

json parse_json_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const std::size_t offset = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ConfigError("", "syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) +
                              ": " + e.what());
  }
}

RunConfig parse_config(std::string_view text, ParseOptions options) {
  return parse_config_document(parse_json_document(text), options);
}

RunConfig parse_config_document(const json& doc, ParseOptions options) {
  check_fields(doc, "", {"mode", "kernel", "pulse", "dispersion", "grid", "bandwidth", "output"}, options);
  RunConfig cfg;

  if (!doc.contains("mode") || !doc.at("mode").is_string()) throw ConfigError("mode", "required string");
  cfg.mode = parse_mode(doc.at("mode").get<std::string>());

  const json empty = json::object();
  const json& kernel = doc.contains("kernel") ? doc.at("kernel") : empty;
  check_fields(kernel, "kernel", {"tau_r"}, options);
  cfg.tau_r = number(kernel, "kernel", "tau_r", 1.0);
  require_positive(cfg.tau_r, "kernel.tau_r");

  const json& pulse = doc.contains("pulse") ? doc.at("pulse") : empty;
  check_fields(pulse, "pulse", {"psi0", "gamma", "n_bar0", "tau_p", "t", "phase"}, options);
  resolve_coupling(cfg.pulse, optional_number(pulse, "pulse", "psi0"), optional_number(pulse, "pulse", "gamma"),
                   optional_number(pulse, "pulse", "n_bar0"), !swept(cfg.mode));
  cfg.pulse.tau_p = number(pulse, "pulse", "tau_p", kMinDurationRatio * cfg.tau_r);
  require_positive(cfg.pulse.tau_p, "pulse.tau_p");
  cfg.pulse.t = number(pulse, "pulse", "t", 0.0);
  if (swept(cfg.mode) && cfg.pulse.t != 0.0) throw ConfigError("pulse.t", "figure surfaces are evaluated at t = 0");
  if (pulse.contains("phase")) cfg.pulse.phase = parse_phase(pulse.at("phase"), "pulse.phase", options);
  if (cfg.mode == Mode::fig1 && !std::holds_alternative<OptimalPhase<double>>(cfg.pulse.phase))
    throw ConfigError("pulse.phase.policy", "fig1 uses the optimal phase policy");

  if (doc.contains("dispersion")) {
    if (!dispersive(cfg.mode)) throw ConfigError("dispersion", "section only applies to mandel and fig2 modes");
    const json& d = doc.at("dispersion");
    check_fields(d, "dispersion", {"s", "T_over_tau_p", "k2_abs", "phi"}, options);
    DispersionConfig dc;
    if (d.contains("s")) {
      const json& s = d.at("s");
      if (!s.is_number_integer() || (s.get<int>() != 1 && s.get<int>() != -1))
        throw ConfigError("dispersion.s", "must be +1 (k2 < 0) or -1 (k2 > 0)");
      dc.sign = s.get<int>() == 1 ? DispersionSign::anomalous : DispersionSign::normal;
    }
    dc.T_over_tau_p = number(d, "dispersion", "T_over_tau_p", dc.T_over_tau_p);
    require_positive(dc.T_over_tau_p, "dispersion.T_over_tau_p");
    dc.k2_abs = number(d, "dispersion", "k2_abs", dc.k2_abs);
    require_positive(dc.k2_abs, "dispersion.k2_abs");
    dc.phi = optional_number(d, "dispersion", "phi");
    if (dc.phi) require_non_negative(*dc.phi, "dispersion.phi");
    if (dc.phi && cfg.mode != Mode::mandel) throw ConfigError("dispersion.phi", "only used by mandel mode");
    cfg.dispersion = dc;
  } else if (dispersive(cfg.mode)) {
    cfg.dispersion = DispersionConfig{};
  }
  if (cfg.mode == Mode::mandel && !cfg.dispersion->phi) throw ConfigError("dispersion.phi", "required for mandel mode");

  const Defaults defaults = grid_defaults(cfg.mode);
  const json& grid = doc.contains("grid") ? doc.at("grid") : empty;
  check_fields(grid, "grid", {"psi0", "omega", "phi"}, options);
  const auto axis = [&](const char* key, const AxisSpec& fallback, bool used) -> std::optional<AxisSpec> {
    if (grid.contains(key)) return parse_axis(grid.at(key), join("grid", key), fallback, options);
    if (used) return fallback;
    return std::nullopt;
  };
  cfg.grid.psi0 = axis("psi0", defaults.psi0, swept(cfg.mode));
  cfg.grid.omega = axis("omega", defaults.omega, cfg.mode == Mode::fig1 || cfg.mode == Mode::spectrum);
  cfg.grid.phi = axis("phi", defaults.phi, cfg.mode == Mode::fig2);
  if (cfg.grid.psi0 && cfg.grid.psi0->min < 0.0) throw ConfigError("grid.psi0.min", "must be non-negative");
  if (cfg.grid.omega && cfg.grid.omega->min < 0.0) throw ConfigError("grid.omega.min", "must be non-negative");
  if (cfg.grid.phi && cfg.grid.phi->min < 0.0) throw ConfigError("grid.phi.min", "must be non-negative");

  if (doc.contains("bandwidth")) {
    const json& b = doc.at("bandwidth");
    check_fields(b, "bandwidth", {"tolerance", "scan_step", "omega_max"}, options);
    cfg.bandwidth.tolerance = number(b, "bandwidth", "tolerance", cfg.bandwidth.tolerance);
    cfg.bandwidth.scan_step = number(b, "bandwidth", "scan_step", cfg.bandwidth.scan_step);
    cfg.bandwidth.omega_max = number(b, "bandwidth", "omega_max", cfg.bandwidth.omega_max);
    require_positive(cfg.bandwidth.tolerance, "bandwidth.tolerance");
    require_positive(cfg.bandwidth.scan_step, "bandwidth.scan_step");
    require_positive(cfg.bandwidth.omega_max, "bandwidth.omega_max");
  }

  cfg.output.prefix = "kerrsq_" + std::string(to_string(cfg.mode));
  if (doc.contains("output")) {
    const json& o = doc.at("output");
    check_fields(o, "output", {"prefix", "formats"}, options);
    if (o.contains("prefix")) {
      if (!o.at("prefix").is_string() || o.at("prefix").get<std::string>().empty())
        throw ConfigError("output.prefix", "expected a non-empty string");
      cfg.output.prefix = o.at("prefix").get<std::string>();
    }
    if (o.contains("formats")) {
      const json& f = o.at("formats");
      if (!f.is_array() || f.empty()) throw ConfigError("output.formats", "expected a non-empty array");
      cfg.output.formats.clear();
      for (const json& item : f) {
        if (!item.is_string()) throw ConfigError("output.formats", "expected format names");
        const OutputFormat fmt = parse_format(item.get<std::string>());
        if (std::find(cfg.output.formats.begin(), cfg.output.formats.end(), fmt) == cfg.output.formats.end())
          cfg.output.formats.push_back(fmt);
      }
    }
  }
  const bool has_plot = std::find(cfg.output.formats.begin(), cfg.output.formats.end(), OutputFormat::plotscript) !=
                        cfg.output.formats.end();
  if (has_plot && (cfg.mode == Mode::bandwidth || cfg.mode == Mode::mandel))
    throw ConfigError("output.formats", "plotscript is only available for spectrum, fig1 and fig2");
  return cfg;
}

namespace {

json axis_json(const AxisSpec& a) { return {{"min", a.min}, {"max", a.max}, {"count", a.count}}; }

json phase_json(const PhasePolicy<double>& phase) {
  if (const auto* c = std::get_if<ConstantPhase<double>>(&phase)) return {{"policy", "constant"}, {"value", c->value}};
  return {{"policy", "optimal"}, {"omega0", std::get<OptimalPhase<double>>(phase).omega0.value}};
}

}  // namespace

json to_json(const RunConfig& c) {
  json doc;
  doc["mode"] = to_string(c.mode);
  doc["kernel"] = {{"tau_r", c.tau_r}};
  doc["pulse"] = {{"psi0", c.pulse.psi0}, {"gamma", c.pulse.gamma}, {"n_bar0", c.pulse.n_bar0},
                  {"tau_p", c.pulse.tau_p}, {"t", c.pulse.t},         {"phase", phase_json(c.pulse.phase)}};
  if (c.dispersion) {
    json d = {{"s", sign_value(c.dispersion->sign)},
              {"T_over_tau_p", c.dispersion->T_over_tau_p},
              {"k2_abs", c.dispersion->k2_abs}};
    if (c.dispersion->phi) d["phi"] = *c.dispersion->phi;
    doc["dispersion"] = d;
  }
  json grid = json::object();
  if (c.grid.psi0) grid["psi0"] = axis_json(*c.grid.psi0);
  if (c.grid.omega) grid["omega"] = axis_json(*c.grid.omega);
  if (c.grid.phi) grid["phi"] = axis_json(*c.grid.phi);
  doc["grid"] = grid;
  doc["bandwidth"] = {{"tolerance", c.bandwidth.tolerance},
                      {"scan_step", c.bandwidth.scan_step},
                      {"omega_max", c.bandwidth.omega_max}};
  json formats = json::array();
  for (const OutputFormat f : c.output.formats) formats.push_back(to_string(f));
  doc["output"] = {{"prefix", c.output.prefix}, {"formats", formats}};
  return doc;
}

PulseSpec<double> RunConfig::pulse_spec() const {
  return PulseSpec<double>(pulse.n_bar0, pulse.tau_p, pulse.gamma, pulse.phase);
}

DispersionScenario<double> RunConfig::scenario() const {
  if (!dispersion) throw ConfigError("dispersion", "section required");
  DispersionScenario<double> scn;
  scn.sign = dispersion->sign;
  scn.tau_p = pulse.tau_p;
  scn.tau_r = tau_r;
  scn.T = dispersion->T_over_tau_p * pulse.tau_p;
  scn.k2_abs = dispersion->k2_abs;
  scn.n_bar0 = pulse.n_bar0;
  scn.psi0 = pulse.psi0;
  return scn;
}

}  // namespace kerrsq
