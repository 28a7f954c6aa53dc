#include "kerrsq/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include <openssl/evp.h>

namespace kerrsq {

using nlohmann::json;

namespace {

Eigen::VectorXd require_axis(const std::optional<AxisSpec>& axis, const char* name) {
  if (!axis) throw ConfigError(std::string("grid.") + name, "axis required for this mode");
  return axis->points();
}

RunFlags flags_for(const RunConfig& cfg) {
  RunFlags flags;
  flags.validity = check_validity(cfg.pulse_spec(), cfg.kernel());
  if (!flags.validity.coupling_ok) flags.notes.emplace_back("gamma exceeds 0.1: outside the small-coupling regime");
  if (!flags.validity.duration_ratio_ok)
    flags.notes.emplace_back("tau_p / tau_r below 10: pulse not long compared with the relaxation time");
  if (cfg.mode == Mode::fig2 && cfg.dispersion && cfg.dispersion->sign == DispersionSign::normal) {
    flags.nonstandard_variant = true;
    flags.notes.emplace_back("fig2 with s = -1 (normal dispersion); the reference surface uses s = +1");
  }
  return flags;
}

SpectrumLine run_spectrum(const RunConfig& cfg) {
  const auto kernel = cfg.kernel();
  const auto spec = cfg.pulse_spec();
  SpectrumLine line;
  line.omega_axis = require_axis(cfg.grid.omega, "omega");
  line.psi = psi_profile(spec, cfg.pulse.t);
  line.total_phase = total_phase(spec, kernel, cfg.pulse.t);
  line.values.resize(line.omega_axis.size());
  for (Eigen::Index i = 0; i < line.omega_axis.size(); ++i)
    line.values[i] = spectral_density(spec, kernel, cfg.pulse.t, ReducedFrequency{line.omega_axis[i]});
  return line;
}

BandwidthResult run_bandwidth(const RunConfig& cfg) {
  const auto kernel = cfg.kernel();
  const auto spec = cfg.pulse_spec();
  BandwidthResult result;
  result.psi = psi_profile(spec, cfg.pulse.t);
  result.total_phase = total_phase(spec, kernel, cfg.pulse.t);
  const BandScan scan{0.0, cfg.bandwidth.omega_max, cfg.bandwidth.scan_step};
  result.bands = squeezing_bandwidth(spec, kernel, cfg.pulse.t, cfg.bandwidth.tolerance, scan);
  return result;
}

MandelPoint run_mandel(const RunConfig& cfg) {
  const auto scn = cfg.scenario();
  scn.validate();
  MandelPoint point;
  point.psi0 = scn.psi0;
  point.phi = *cfg.dispersion->phi;
  point.phi_d = point.phi * scn.length_ratio();
  try {
    const auto widths = beam_widths(scn, point.phi);
    point.w2 = widths.w2;
    point.V2 = widths.V2;
    point.Q = mandel_q(scn, point.phi);
    point.mean_photons = mean_photons(scn, cfg.pulse.t, point.phi);
  } catch (const DomainError& e) {
    char cell[128];
    std::snprintf(cell, sizeof cell, " (cell psi0=%.17g, phi=%.17g)", point.psi0, point.phi);
    throw DomainError(e.what() + std::string(cell));
  }
  return point;
}

json vector_json(const Eigen::VectorXd& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

Eigen::VectorXd vector_from(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

json phase_json(const PhasePolicy<double>& phase) {
  if (const auto* c = std::get_if<ConstantPhase<double>>(&phase)) return {{"policy", "constant"}, {"value", c->value}};
  return {{"policy", "optimal"}, {"omega0", std::get<OptimalPhase<double>>(phase).omega0.value}};
}

PhasePolicy<double> phase_from(const json& j) {
  if (j.at("policy") == "constant") return ConstantPhase<double>{j.at("value").get<double>()};
  return OptimalPhase<double>{ReducedFrequency{j.at("omega0").get<double>()}};
}

json scenario_json(const DispersionScenario<double>& s) {
  return {{"s", sign_value(s.sign)}, {"T", s.T},          {"tau_p", s.tau_p},   {"tau_r", s.tau_r},
          {"k2_abs", s.k2_abs},      {"n_bar0", s.n_bar0}, {"psi0", s.psi0}};
}

DispersionScenario<double> scenario_from(const json& j) {
  DispersionScenario<double> s;
  s.sign = j.at("s").get<int>() == 1 ? DispersionSign::anomalous : DispersionSign::normal;
  s.T = j.at("T").get<double>();
  s.tau_p = j.at("tau_p").get<double>();
  s.tau_r = j.at("tau_r").get<double>();
  s.k2_abs = j.at("k2_abs").get<double>();
  s.n_bar0 = j.at("n_bar0").get<double>();
  s.psi0 = j.at("psi0").get<double>();
  return s;
}

struct PayloadWriter {
  json operator()(const SpectrumLine& p) const {
    return {{"kind", "spectrum"},
            {"psi", p.psi},
            {"total_phase", p.total_phase},
            {"omega_axis", vector_json(p.omega_axis)},
            {"values", vector_json(p.values)}};
  }
  json operator()(const BandwidthResult& p) const {
    json bands = json::array();
    for (const auto& b : p.bands)
      bands.push_back({{"lower", b.lower}, {"upper", b.upper}, {"upper_at_scan_limit", b.upper_at_scan_limit}});
    return {{"kind", "bandwidth"}, {"psi", p.psi}, {"total_phase", p.total_phase}, {"bands", bands}};
  }
  json operator()(const MandelPoint& p) const {
    return {{"kind", "mandel"}, {"psi0", p.psi0}, {"phi", p.phi}, {"phi_d", p.phi_d}, {"Q", p.Q},
            {"w2", p.w2},       {"V2", p.V2},     {"mean_photons", p.mean_photons}};
  }
  json operator()(const SpectrumSurface& p) const {
    json rows = json::array();
    for (Eigen::Index r = 0; r < p.values.rows(); ++r) rows.push_back(vector_json(p.values.row(r).transpose()));
    return {{"kind", "fig1"},
            {"t", p.t},
            {"phase", phase_json(p.phase)},
            {"psi0_axis", vector_json(p.psi0_axis)},
            {"omega_axis", vector_json(p.omega_axis)},
            {"values", rows}};
  }
  json operator()(const QSurface& p) const {
    json rows = json::array();
    for (Eigen::Index r = 0; r < p.values.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < p.values.cols(); ++c)
        row.push_back(p.masked(r, c) ? json(nullptr) : json(p.values(r, c)));
      rows.push_back(row);
    }
    return {{"kind", "fig2"},
            {"scenario", scenario_json(p.scenario)},
            {"psi0_axis", vector_json(p.psi0_axis)},
            {"phi_axis", vector_json(p.phi_axis)},
            {"values", rows}};
  }
};

Payload payload_from(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "spectrum") {
    SpectrumLine p;
    p.psi = j.at("psi").get<double>();
    p.total_phase = j.at("total_phase").get<double>();
    p.omega_axis = vector_from(j.at("omega_axis"));
    p.values = vector_from(j.at("values"));
    return p;
  }
  if (kind == "bandwidth") {
    BandwidthResult p;
    p.psi = j.at("psi").get<double>();
    p.total_phase = j.at("total_phase").get<double>();
    for (const json& b : j.at("bands"))
      p.bands.push_back({b.at("lower").get<double>(), b.at("upper").get<double>(), b.at("upper_at_scan_limit").get<bool>()});
    return p;
  }
  if (kind == "mandel") {
    MandelPoint p;
    p.psi0 = j.at("psi0").get<double>();
    p.phi = j.at("phi").get<double>();
    p.phi_d = j.at("phi_d").get<double>();
    p.Q = j.at("Q").get<double>();
    p.w2 = j.at("w2").get<double>();
    p.V2 = j.at("V2").get<double>();
    p.mean_photons = j.at("mean_photons").get<double>();
    return p;
  }
  if (kind == "fig1") {
    SpectrumSurface p;
    p.t = j.at("t").get<double>();
    p.phase = phase_from(j.at("phase"));
    p.psi0_axis = vector_from(j.at("psi0_axis"));
    p.omega_axis = vector_from(j.at("omega_axis"));
    p.values.resize(p.psi0_axis.size(), p.omega_axis.size());
    const json& rows = j.at("values");
    for (Eigen::Index r = 0; r < p.values.rows(); ++r) p.values.row(r) = vector_from(rows.at(r)).transpose();
    return p;
  }
  if (kind == "fig2") {
    QSurface p;
    p.scenario = scenario_from(j.at("scenario"));
    p.psi0_axis = vector_from(j.at("psi0_axis"));
    p.phi_axis = vector_from(j.at("phi_axis"));
    p.values.resize(p.psi0_axis.size(), p.phi_axis.size());
    p.masked.resize(p.psi0_axis.size(), p.phi_axis.size());
    const json& rows = j.at("values");
    for (Eigen::Index r = 0; r < p.values.rows(); ++r) {
      for (Eigen::Index c = 0; c < p.values.cols(); ++c) {
        const json& cell = rows.at(r).at(c);
        p.masked(r, c) = cell.is_null();
        p.values(r, c) = cell.is_null() ? std::numeric_limits<double>::quiet_NaN() : cell.get<double>();
      }
    }
    return p;
  }
  throw ConfigError("payload.kind", "unknown payload kind '" + kind + "'");
}

json unhashed_json(const ResultEnvelope& e) {
  json flags = {{"coupling_ok", e.flags.validity.coupling_ok},
                {"duration_ratio_ok", e.flags.validity.duration_ratio_ok},
                {"nonstandard_variant", e.flags.nonstandard_variant},
                {"notes", e.flags.notes}};
  return {{"tool_version", e.tool_version},
          {"config", to_json(e.config)},
          {"flags", flags},
          {"payload", std::visit(PayloadWriter{}, e.payload)}};
}

}  // namespace

ResultEnvelope run(const RunConfig& config, unsigned workers) {
  ResultEnvelope envelope;
  envelope.config = config;
  envelope.flags = flags_for(config);
  switch (config.mode) {
    case Mode::spectrum:
      envelope.payload = run_spectrum(config);
      break;
    case Mode::bandwidth:
      envelope.payload = run_bandwidth(config);
      break;
    case Mode::mandel:
      envelope.payload = run_mandel(config);
      break;
    case Mode::fig1:
      envelope.payload = fig1_surface(require_axis(config.grid.psi0, "psi0"), require_axis(config.grid.omega, "omega"),
                                      config.kernel(), std::get<OptimalPhase<double>>(config.pulse.phase).omega0,
                                      workers);
      break;
    case Mode::fig2:
      envelope.payload =
          fig2_surface(require_axis(config.grid.psi0, "psi0"), require_axis(config.grid.phi, "phi"), config.scenario(), workers);
      break;
  }
  envelope.content_hash = content_hash(envelope);
  return envelope;
}

std::string content_hash(const ResultEnvelope& envelope) {
  const std::string canonical = unhashed_json(envelope).dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(canonical.data(), canonical.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

json to_json(const ResultEnvelope& envelope) {
  json doc = unhashed_json(envelope);
  doc["content_hash"] = envelope.content_hash;
  return doc;
}

ResultEnvelope envelope_from_json(const json& doc) {
  ResultEnvelope e;
  e.tool_version = doc.at("tool_version").get<std::string>();
  e.config = parse_config_document(doc.at("config"), ParseOptions{true});
  const json& flags = doc.at("flags");
  e.flags.validity.coupling_ok = flags.at("coupling_ok").get<bool>();
  e.flags.validity.duration_ratio_ok = flags.at("duration_ratio_ok").get<bool>();
  e.flags.nonstandard_variant = flags.at("nonstandard_variant").get<bool>();
  e.flags.notes = flags.at("notes").get<std::vector<std::string>>();
  e.payload = payload_from(doc.at("payload"));
  e.content_hash = doc.at("content_hash").get<std::string>();
  return e;
}

}  // namespace kerrsq
