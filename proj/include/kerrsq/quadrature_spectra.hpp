#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Core>

#include "kerrsq/kernels.hpp"
#include "kerrsq/pulse_model.hpp"

namespace kerrsq {

/// X-quadrature spectral density at given psi(t), L(omega), Phi(t):
///   S = 1/4 [1 - 2 psi L sin 2Phi + 4 psi^2 L^2 sin^2 Phi].
/// Shot noise is S = 1/4.
template <typename Scalar>
Scalar squeezing_spectrum(Scalar psi, Scalar lorentz, Scalar total_phase) {
  using std::sin;
  const Scalar a = psi * lorentz;
  const Scalar s = sin(total_phase);
  return Scalar(0.25) * (Scalar(1) - Scalar(2) * a * sin(Scalar(2) * total_phase) + Scalar(4) * a * a * s * s);
}

inline constexpr double kShotNoise = 0.25;

template <typename Scalar>
Scalar spectral_density(const PulseSpec<Scalar>& spec, const RelaxationKernel<Scalar>& kernel, Scalar t,
                        ReducedFrequency<Scalar> omega) {
  return squeezing_spectrum(psi_profile(spec, t), kernel.lorentzian(omega), total_phase(spec, kernel, t));
}

template <typename Scalar = double>
struct MinimumSpectrum {
  Scalar value;
  Scalar total_phase;
};

/// Minimum of S over Phi at fixed psi and L, with a = psi L:
///   S_min = 1/4 [1 + 2a^2 - 2a sqrt(1 + a^2)],  Phi* = 0.5 arctan(1/a).
template <typename Scalar>
MinimumSpectrum<Scalar> min_spectral_density(Scalar psi, Scalar lorentz) {
  using std::sqrt;
  if (!(psi >= Scalar(0)))
    throw DomainError("min_spectral_density: psi must be non-negative");
  if (!(lorentz > Scalar(0) && lorentz <= Scalar(1)))
    throw DomainError("min_spectral_density: L must lie in (0, 1]");
  const Scalar a = psi * lorentz;
  // 1 + 2a^2 - 2a sqrt(1+a^2) = 1 / (1 + 2a^2 + 2a sqrt(1+a^2)); no cancellation for large a.
  const Scalar value = Scalar(0.25) / (Scalar(1) + Scalar(2) * a * a + Scalar(2) * a * sqrt(Scalar(1) + a * a));
  return {value, optimal_total_phase(a)};
}

/// R(t, t+tau) at fixed t: a delta(tau) term of weight 1/4 kept symbolically plus the
/// smooth part 1/4 [-psi h(tau) sin 2Phi + psi^2 g(tau) sin^2 Phi] sampled on a
/// symmetric window.
struct CorrelationSlice {
  double t = 0.0;
  double tau_r = 1.0;
  double psi = 0.0;
  double total_phase = 0.0;
  double delta_weight = 0.25;
  double window = 0.0;
  Eigen::Index intervals = 0;
  Eigen::ArrayXd tau;
  Eigen::ArrayXd smooth;

  double step() const { return window / static_cast<double>(intervals); }
};

/// Requires window >= 40 tau_r and n_samples >= 2^10 (a multiple of 4).
CorrelationSlice correlation_slice(const PulseSpec<double>& spec, const RelaxationKernel<double>& kernel, double t,
                                   double window, Eigen::Index n_samples);

/// delta_weight plus the quadrature cosine transform of the smooth part. The sine part
/// must vanish by symmetry; a residual above 1e-10 relative is reported as a logic error.
double spectral_density_numeric(const CorrelationSlice& slice, ReducedFrequency<double> omega);

/// One maximal interval of reduced frequency where S < 1/4.
struct SqueezingBand {
  double lower = 0.0;
  double upper = 0.0;
  /// The band was still open at the end of the scanned range.
  bool upper_at_scan_limit = false;
  bool operator==(const SqueezingBand&) const = default;
};

struct BandScan {
  double omega_min = 0.0;
  double omega_max = 100.0;
  double step = 0.01;
};

/// Sign changes of S - 1/4 bracketed on the scan grid, refined by bisection until the
/// bracket is narrower than `tolerance` (in Omega). Empty when nothing is squeezed.
std::vector<SqueezingBand> squeezing_bandwidth(const PulseSpec<double>& spec, const RelaxationKernel<double>& kernel,
                                               double t, double tolerance, const BandScan& scan = {});

/// S(Omega; psi0) at t = 0, rows indexed by psi0 and columns by Omega.
struct SpectrumSurface {
  Eigen::VectorXd psi0_axis;
  Eigen::VectorXd omega_axis;
  Eigen::MatrixXd values;
  PhasePolicy<double> phase = OptimalPhase<double>{};
  double t = 0.0;
};

/// Optimal phase at omega0 for every psi0 row. Rows may be split across `workers`
/// threads; the result does not depend on the worker count.
SpectrumSurface fig1_surface(const Eigen::Ref<const Eigen::VectorXd>& psi0_axis,
                             const Eigen::Ref<const Eigen::VectorXd>& omega_axis,
                             const RelaxationKernel<double>& kernel, ReducedFrequency<double> omega0,
                             unsigned workers = 1);

/// Same as fig1_surface with an arbitrary phase policy.
SpectrumSurface spectrum_surface(const Eigen::Ref<const Eigen::VectorXd>& psi0_axis,
                                 const Eigen::Ref<const Eigen::VectorXd>& omega_axis,
                                 const RelaxationKernel<double>& kernel, const PhasePolicy<double>& phase,
                                 unsigned workers = 1);

}  // namespace kerrsq
