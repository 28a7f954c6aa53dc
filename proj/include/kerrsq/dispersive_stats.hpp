#pragma once

#include <cmath>
#include <numbers>

#include <Eigen/Core>

#include "kerrsq/errors.hpp"

namespace kerrsq {

/// Sign s of the group-velocity dispersion term: +1 for k2 < 0, -1 for k2 > 0.
enum class DispersionSign : int { anomalous = 1, normal = -1 };

inline int sign_value(DispersionSign s) { return static_cast<int>(s); }

/// A self-phase-modulated Gaussian pulse entering a lossless dispersive medium.
///
/// Propagation distance enters only through phi = z/D with D = tau_p^2/|k2|; the
/// relaxation scale enters through phi_d = z/d = phi (tau_p/tau_r)^2. T is the photon
/// counting window; the closed forms do not constrain it relative to tau_r.
template <typename Scalar = double>
struct DispersionScenario {
  DispersionSign sign = DispersionSign::anomalous;
  Scalar T{0.1};
  Scalar tau_p{10};
  Scalar tau_r{1};
  Scalar k2_abs{1};
  Scalar n_bar0{0};
  Scalar psi0{0};

  void validate() const {
    const auto positive = [](Scalar x) { return x > Scalar(0) && std::isfinite(static_cast<double>(x)); };
    if (!positive(T)) throw DomainError("measurement time T must be positive");
    if (!positive(tau_p)) throw DomainError("pulse duration tau_p must be positive");
    if (!positive(tau_r)) throw DomainError("relaxation time tau_r must be positive");
    if (!positive(k2_abs)) throw DomainError("|k2| must be positive");
    if (!(n_bar0 >= Scalar(0))) throw DomainError("n_bar0 must be non-negative");
    if (!(psi0 >= Scalar(0))) throw DomainError("psi0 must be non-negative");
  }

  /// D = tau_p^2 / |k2|
  Scalar dispersion_length() const { return tau_p * tau_p / k2_abs; }
  /// d = tau_r^2 / |k2|
  Scalar relaxation_length() const { return tau_r * tau_r / k2_abs; }
  /// (tau_p / tau_r)^2 = D / d
  Scalar length_ratio() const { return (tau_p / tau_r) * (tau_p / tau_r); }
};

template <typename Scalar = double>
struct DispersionPhases {
  Scalar phi;
  Scalar phi_d;
};

template <typename Scalar>
DispersionPhases<Scalar> dispersion_phases(const DispersionScenario<Scalar>& scn, Scalar z) {
  if (!(z >= Scalar(0))) throw DomainError("propagation distance z must be non-negative");
  return {z / scn.dispersion_length(), z / scn.relaxation_length()};
}

template <typename Scalar = double>
struct BeamWidths {
  Scalar w2;  // 1 - s psi0 phi
  Scalar V2;  // w2 + phi^2
};

template <typename Scalar>
BeamWidths<Scalar> beam_widths(const DispersionScenario<Scalar>& scn, Scalar phi) {
  const Scalar w2 = Scalar(1) - Scalar(sign_value(scn.sign)) * scn.psi0 * phi;
  if (!(w2 > Scalar(0)))
    throw CompressionSingularity("w^2 = 1 - s psi0 phi is not positive: beyond the compression focus");
  return {w2, w2 + phi * phi};
}

/// <N_T(t, z)> = n_bar0 T V^-1 exp(-t^2 / (V^2 tau_p^2)).
template <typename Scalar>
Scalar mean_photons(const DispersionScenario<Scalar>& scn, Scalar t, Scalar phi) {
  using std::exp, std::sqrt;
  const auto [w2, V2] = beam_widths(scn, phi);
  return scn.n_bar0 * scn.T / sqrt(V2) * exp(-t * t / (V2 * scn.tau_p * scn.tau_p));
}

/// Mandel parameter at the pulse centre,
///   Q(0,z) = -[T psi0 / (sqrt(pi) tau_p)] sin[atan(phi/w) + theta/2] / (w^4 - 2 phi^2 w^2 + 4 phi^4)^(1/4)
/// with theta = atan2(2 phi w, 2 phi phi_d - w^2) in [0, pi]. theta is continuous in
/// phi > 0 through the pole 2 phi phi_d = w^2. At phi = 0 the pulse has not left the
/// Kerr stage, which conserves photon number, and Q = 0.
template <typename Scalar>
Scalar mandel_q(const DispersionScenario<Scalar>& scn, Scalar phi) {
  using std::atan2, std::sin, std::sqrt, std::pow;
  const auto [w2, V2] = beam_widths(scn, phi);
  (void)V2;
  if (phi == Scalar(0)) return Scalar(0);
  const Scalar w = sqrt(w2);
  const Scalar phi_d = phi * scn.length_ratio();
  const Scalar theta = atan2(Scalar(2) * phi * w, Scalar(2) * phi * phi_d - w2);
  const Scalar angle = atan2(phi, w) + Scalar(0.5) * theta;
  const Scalar denom = pow(w2 * w2 - Scalar(2) * phi * phi * w2 + Scalar(4) * phi * phi * phi * phi, Scalar(0.25));
  const Scalar prefactor = scn.T * scn.psi0 / (sqrt(std::numbers::pi_v<Scalar>) * scn.tau_p);
  return -prefactor * sin(angle) / denom;
}

/// Q(0, z) over psi0 x phi. Cells with w^2 <= 0 are masked (mask = true, value NaN).
struct QSurface {
  Eigen::VectorXd psi0_axis;
  Eigen::VectorXd phi_axis;
  Eigen::MatrixXd values;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> masked;
  DispersionScenario<double> scenario;
};

/// scenario.psi0 is ignored; each row takes its psi0 from the axis.
QSurface fig2_surface(const Eigen::Ref<const Eigen::VectorXd>& psi0_axis,
                      const Eigen::Ref<const Eigen::VectorXd>& phi_axis, const DispersionScenario<double>& scenario,
                      unsigned workers = 1);

}  // namespace kerrsq
