#include "kerrsq/quadrature_spectra.hpp"

#include <algorithm>
#include <stdexcept>

#include "kerrsq/parallel.hpp"
#include "kerrsq/quadrature.hpp"

namespace kerrsq {

CorrelationSlice correlation_slice(const PulseSpec<double>& spec, const RelaxationKernel<double>& kernel, double t,
                                   double window, Eigen::Index n_samples) {
  if (window < 40.0 * kernel.tau_r())
    throw DomainError("correlation slice window must be at least 40 tau_r");
  if (n_samples < (Eigen::Index{1} << 10))
    throw DomainError("correlation slice needs at least 2^10 samples");
  const SymmetricGrid grid(window, n_samples);

  CorrelationSlice slice;
  slice.t = t;
  slice.tau_r = kernel.tau_r();
  slice.psi = psi_profile(spec, t);
  slice.total_phase = total_phase(spec, kernel, t);
  slice.window = window;
  slice.intervals = n_samples;
  slice.tau = grid.nodes();

  const double psi = slice.psi;
  const double sin_phi = std::sin(slice.total_phase);
  const double h_coeff = -psi * std::sin(2.0 * slice.total_phase);
  const double g_coeff = psi * psi * sin_phi * sin_phi;
  slice.smooth = slice.tau.unaryExpr(
      [&](double tau) { return 0.25 * (h_coeff * kernel.h(tau) + g_coeff * kernel.g(tau)); });
  return slice;
}

double spectral_density_numeric(const CorrelationSlice& slice, ReducedFrequency<double> omega) {
  const SymmetricGrid grid(slice.window, slice.intervals);
  if (slice.tau.size() != grid.size() || slice.smooth.size() != grid.size())
    throw DomainError("correlation slice samples do not match its grid");
  const double angular = omega.value / slice.tau_r;
  const FourierSample ft = fourier_quadrature(grid, slice.tau, grid.weights(), slice.smooth, angular);
  const double result = slice.delta_weight + ft.re;
  if (std::abs(ft.im) > 1e-10 * std::abs(result))
    throw std::logic_error("correlation slice is not even in tau: imaginary part of its transform survives");
  return result;
}

namespace {

double bisect_crossing(const auto& excess, double inside, double outside, double tolerance) {
  // excess(inside) < 0 <= excess(outside)
  while (std::abs(outside - inside) > tolerance) {
    const double mid = 0.5 * (inside + outside);
    if (excess(mid) < 0.0)
      inside = mid;
    else
      outside = mid;
  }
  return 0.5 * (inside + outside);
}

}  // namespace

std::vector<SqueezingBand> squeezing_bandwidth(const PulseSpec<double>& spec, const RelaxationKernel<double>& kernel,
                                               double t, double tolerance, const BandScan& scan) {
  if (!(tolerance > 0.0))
    throw DomainError("bandwidth tolerance must be positive");
  if (!(scan.step > 0.0) || !(scan.omega_max > scan.omega_min) || scan.omega_min < 0.0)
    throw DomainError("bandwidth scan range must satisfy 0 <= omega_min < omega_max with a positive step");

  const double psi = psi_profile(spec, t);
  const double phase = total_phase(spec, kernel, t);
  const auto excess = [&](double omega) {
    return squeezing_spectrum(psi, kernel.lorentzian(ReducedFrequency{omega}), phase) - kShotNoise;
  };

  const auto steps = static_cast<Eigen::Index>(std::ceil((scan.omega_max - scan.omega_min) / scan.step));
  const auto node = [&](Eigen::Index k) { return std::min(scan.omega_min + static_cast<double>(k) * scan.step, scan.omega_max); };

  std::vector<SqueezingBand> bands;
  bool inside = excess(node(0)) < 0.0;
  double lower = node(0);
  for (Eigen::Index k = 1; k <= steps; ++k) {
    const double prev = node(k - 1);
    const double cur = node(k);
    const bool now_inside = excess(cur) < 0.0;
    if (now_inside && !inside) {
      lower = bisect_crossing(excess, cur, prev, tolerance);
    } else if (!now_inside && inside) {
      bands.push_back({lower, bisect_crossing(excess, prev, cur, tolerance), false});
    }
    inside = now_inside;
  }
  if (inside) bands.push_back({lower, scan.omega_max, true});
  return bands;
}

namespace {

void require_axis(const Eigen::Ref<const Eigen::VectorXd>& axis, const char* name) {
  if (axis.size() == 0)
    throw DomainError(std::string(name) + " axis must not be empty");
  for (Eigen::Index i = 1; i < axis.size(); ++i)
    if (!(axis[i] > axis[i - 1]))
      throw DomainError(std::string(name) + " axis must be sorted ascending");
}

}  // namespace

SpectrumSurface spectrum_surface(const Eigen::Ref<const Eigen::VectorXd>& psi0_axis,
                                 const Eigen::Ref<const Eigen::VectorXd>& omega_axis,
                                 const RelaxationKernel<double>& kernel, const PhasePolicy<double>& phase,
                                 unsigned workers) {
  require_axis(psi0_axis, "psi0");
  require_axis(omega_axis, "Omega");
  if (psi0_axis[0] < 0.0)
    throw DomainError("psi0 axis must be non-negative");

  SpectrumSurface surface;
  surface.psi0_axis = psi0_axis;
  surface.omega_axis = omega_axis;
  surface.phase = phase;
  surface.t = 0.0;
  surface.values.resize(psi0_axis.size(), omega_axis.size());

  const double tau_p = kMinDurationRatio * kernel.tau_r();  // irrelevant at t = 0
  for_each_row(psi0_axis.size(), workers, [&](Eigen::Index row) {
    const auto spec = PulseSpec<double>::from_peak_phase(psi0_axis[row], tau_p, phase);
    for (Eigen::Index col = 0; col < omega_axis.size(); ++col)
      surface.values(row, col) = spectral_density(spec, kernel, 0.0, ReducedFrequency{omega_axis[col]});
  });
  return surface;
}

SpectrumSurface fig1_surface(const Eigen::Ref<const Eigen::VectorXd>& psi0_axis,
                             const Eigen::Ref<const Eigen::VectorXd>& omega_axis,
                             const RelaxationKernel<double>& kernel, ReducedFrequency<double> omega0,
                             unsigned workers) {
  return spectrum_surface(psi0_axis, omega_axis, kernel, OptimalPhase<double>{omega0}, workers);
}

}  // namespace kerrsq
