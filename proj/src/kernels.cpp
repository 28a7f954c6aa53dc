#include "kerrsq/kernels.hpp"

#include <algorithm>

#include "kerrsq/quadrature.hpp"

namespace kerrsq {

double kernel_transform_residual(const RelaxationKernel<double>& kernel,
                                 const Eigen::Ref<const Eigen::ArrayXd>& omega_grid,
                                 double window, Eigen::Index n_samples) {
  if (window < 40.0 * kernel.tau_r())
    throw DomainError("kernel transform window must be at least 40 tau_r");
  if (n_samples < (Eigen::Index{1} << 12))
    throw DomainError("kernel transform needs at least 2^12 samples");

  const SymmetricGrid grid(window, n_samples);
  const Eigen::ArrayXd tau = grid.nodes();
  const Eigen::ArrayXd weights = grid.weights();
  const Eigen::ArrayXd h = tau.unaryExpr([&](double x) { return kernel.h(x); });
  const Eigen::ArrayXd g = tau.unaryExpr([&](double x) { return kernel.g(x); });

  double worst = 0.0;
  for (const double omega : omega_grid) {
    const double lorentz = kernel.lorentzian(omega);
    const double fh = fourier_quadrature(grid, tau, weights, h, omega).re;
    const double fg = fourier_quadrature(grid, tau, weights, g, omega).re;
    worst = std::max(worst, std::abs(fh - 2.0 * lorentz) / (2.0 * lorentz));
    worst = std::max(worst, std::abs(fg - 4.0 * lorentz * lorentz) / (4.0 * lorentz * lorentz));
  }
  return worst;
}

}  // namespace kerrsq
