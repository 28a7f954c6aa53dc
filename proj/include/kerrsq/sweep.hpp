#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "kerrsq/config.hpp"
#include "kerrsq/dispersive_stats.hpp"
#include "kerrsq/quadrature_spectra.hpp"

namespace kerrsq {

inline constexpr const char* kToolVersion = "0.1.0";

/// S(Omega) at one (psi0, t).
struct SpectrumLine {
  Eigen::VectorXd omega_axis;
  Eigen::VectorXd values;
  double psi = 0.0;          // psi(t)
  double total_phase = 0.0;  // Phi(t)
};

struct BandwidthResult {
  std::vector<SqueezingBand> bands;
  double psi = 0.0;
  double total_phase = 0.0;
};

struct MandelPoint {
  double psi0 = 0.0;
  double phi = 0.0;
  double phi_d = 0.0;
  double Q = 0.0;
  double w2 = 0.0;
  double V2 = 0.0;
  double mean_photons = 0.0;  // <N_T(t, z)> at the configured t
};

using Payload = std::variant<SpectrumLine, BandwidthResult, MandelPoint, SpectrumSurface, QSurface>;

struct RunFlags {
  ValidityReport validity;
  /// fig2 with s = -1: the reference surface is the compression case s = +1.
  bool nonstandard_variant = false;
  std::vector<std::string> notes;
};

struct ResultEnvelope {
  RunConfig config;
  RunFlags flags;
  Payload payload;
  std::string tool_version = kToolVersion;
  std::string content_hash;  // SHA-256 of the canonical JSON without this field
};

/// Runs a validated config. Domain errors from the compute modules are rethrown as
/// DomainError annotated with the failing cell; fig2 masks compression singularities.
ResultEnvelope run(const RunConfig& config, unsigned workers = 1);

nlohmann::json to_json(const ResultEnvelope& envelope);
ResultEnvelope envelope_from_json(const nlohmann::json& document);

/// Hex SHA-256 over the canonical dump of everything except content_hash.
std::string content_hash(const ResultEnvelope& envelope);

}  // namespace kerrsq
