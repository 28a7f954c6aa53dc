#pragma once

#include <cmath>
#include <numbers>
#include <type_traits>
#include <variant>

#include "kerrsq/errors.hpp"
#include "kerrsq/kernels.hpp"

namespace kerrsq {

/// phi(t) = value for all t.
template <typename Scalar = double>
struct ConstantPhase {
  Scalar value{};
  bool operator==(const ConstantPhase&) const = default;
};

/// phi(t) chosen so that S(omega0, t) is minimal at every t.
template <typename Scalar = double>
struct OptimalPhase {
  ReducedFrequency<Scalar> omega0{Scalar(1)};
  bool operator==(const OptimalPhase& o) const { return omega0.value == o.omega0.value; }
};

template <typename Scalar = double>
using PhasePolicy = std::variant<ConstantPhase<Scalar>, OptimalPhase<Scalar>>;

/// Coupling used when only the peak phase psi0 is given.
inline constexpr double kDefaultCoupling = 0.01;
/// Model validity limits: gamma << 1 and tau_p >> tau_r.
inline constexpr double kMaxCoupling = 0.1;
inline constexpr double kMinDurationRatio = 10.0;

/// Gaussian coherent input pulse, n(t) = n_bar0 exp(-t^2/tau_p^2).
template <typename Scalar = double>
class PulseSpec {
 public:
  PulseSpec(Scalar n_bar0, Scalar tau_p, Scalar gamma, PhasePolicy<Scalar> phase = ConstantPhase<Scalar>{})
      : n_bar0_(n_bar0), tau_p_(tau_p), gamma_(gamma), phase_(phase) {
    if (!(tau_p > Scalar(0)) || !std::isfinite(static_cast<double>(tau_p)))
      throw DomainError("pulse duration tau_p must be positive and finite");
    if (!(n_bar0 >= Scalar(0)) || !std::isfinite(static_cast<double>(n_bar0)))
      throw DomainError("photon number density n_bar0 must be non-negative");
    if (!(gamma >= Scalar(0)) || !std::isfinite(static_cast<double>(gamma)))
      throw DomainError("nonlinear coupling gamma must be non-negative");
  }

  /// Expands psi0 into (gamma, n_bar0) with gamma fixed.
  static PulseSpec from_peak_phase(Scalar psi0, Scalar tau_p, PhasePolicy<Scalar> phase = ConstantPhase<Scalar>{},
                                   Scalar gamma = Scalar(kDefaultCoupling)) {
    if (!(psi0 >= Scalar(0)))
      throw DomainError("peak nonlinear phase psi0 must be non-negative");
    if (!(gamma > Scalar(0)))
      throw DomainError("gamma must be positive to carry a peak phase");
    return PulseSpec(psi0 / (Scalar(2) * gamma), tau_p, gamma, phase);
  }

  Scalar n_bar0() const { return n_bar0_; }
  Scalar tau_p() const { return tau_p_; }
  Scalar gamma() const { return gamma_; }
  const PhasePolicy<Scalar>& phase() const { return phase_; }
  Scalar peak_phase() const { return Scalar(2) * gamma_ * n_bar0_; }

 private:
  Scalar n_bar0_;
  Scalar tau_p_;
  Scalar gamma_;
  PhasePolicy<Scalar> phase_;
};

struct ValidityReport {
  bool coupling_ok = true;        // gamma <= kMaxCoupling
  bool duration_ratio_ok = true;  // tau_p / tau_r >= kMinDurationRatio
  bool ok() const { return coupling_ok && duration_ratio_ok; }
  bool operator==(const ValidityReport&) const = default;
};

template <typename Scalar>
ValidityReport check_validity(const PulseSpec<Scalar>& spec, const RelaxationKernel<Scalar>& kernel) {
  return {spec.gamma() <= Scalar(kMaxCoupling), spec.tau_p() / kernel.tau_r() >= Scalar(kMinDurationRatio)};
}

/// psi(t) = psi0 exp(-t^2 / tau_p^2).
template <typename Scalar>
Scalar psi_profile(const PulseSpec<Scalar>& spec, Scalar t) {
  using std::exp;
  const Scalar x = t / spec.tau_p();
  return spec.peak_phase() * exp(-x * x);
}

/// Phi* = 0.5 arctan(1/(psi L)), continuous at psi L = 0 where it equals pi/4.
template <typename Scalar>
Scalar optimal_total_phase(Scalar psi_times_lorentz) {
  using std::atan2;
  return Scalar(0.5) * atan2(Scalar(1), psi_times_lorentz);
}

template <typename Scalar>
Scalar phi_optimal(const PulseSpec<Scalar>& spec, const RelaxationKernel<Scalar>& kernel, Scalar t,
                   ReducedFrequency<Scalar> omega0) {
  const Scalar psi = psi_profile(spec, t);
  return optimal_total_phase(psi * kernel.lorentzian(omega0)) - psi;
}

/// Phi(t) = psi(t) + phi(t). Under the optimal policy the psi terms cancel and the
/// result is computed directly.
template <typename Scalar>
Scalar total_phase(const PulseSpec<Scalar>& spec, const RelaxationKernel<Scalar>& kernel, Scalar t) {
  const Scalar psi = psi_profile(spec, t);
  return std::visit(
      [&](const auto& policy) -> Scalar {
        using P = std::decay_t<decltype(policy)>;
        if constexpr (std::is_same_v<P, ConstantPhase<Scalar>>)
          return psi + policy.value;
        else
          return optimal_total_phase(psi * kernel.lorentzian(policy.omega0));
      },
      spec.phase());
}

}  // namespace kerrsq
