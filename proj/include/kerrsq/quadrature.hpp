#pragma once

#include <cmath>
#include <numbers>

#include <Eigen/Core>

#include "kerrsq/errors.hpp"

namespace kerrsq {

/// Uniform grid on [-window/2, window/2] with `intervals` steps; tau = 0 is node
/// intervals/2. Weights are composite Simpson on each half, so an integrand that is
/// smooth on either side of 0 (but kinked there, like exp(-|tau|)) converges at h^4.
class SymmetricGrid {
 public:
  SymmetricGrid(double window, Eigen::Index intervals) : window_(window), intervals_(intervals) {
    if (!(window > 0.0) || !std::isfinite(window))
      throw DomainError("quadrature window must be positive and finite");
    if (intervals < 4 || intervals % 4 != 0)
      throw DomainError("quadrature interval count must be a positive multiple of 4");
  }

  double window() const { return window_; }
  Eigen::Index intervals() const { return intervals_; }
  Eigen::Index size() const { return intervals_ + 1; }
  double step() const { return window_ / static_cast<double>(intervals_); }
  double nyquist() const { return std::numbers::pi / step(); }

  Eigen::ArrayXd nodes() const {
    const Eigen::Index half = intervals_ / 2;
    Eigen::ArrayXd tau(size());
    for (Eigen::Index k = 0; k < size(); ++k)
      tau[k] = static_cast<double>(k - half) * step();
    return tau;
  }

  Eigen::ArrayXd weights() const {
    const Eigen::Index half = intervals_ / 2;
    Eigen::ArrayXd w(size());
    for (Eigen::Index k = 0; k < size(); ++k) {
      const Eigen::Index j = k <= half ? k : k - half;  // position within its half
      if (j == 0 || j == half)
        w[k] = 1.0;
      else
        w[k] = (j % 2 == 1) ? 4.0 : 2.0;
    }
    w[half] = 2.0;  // right end of the left half plus left end of the right half
    return w * (step() / 3.0);
  }

  void require_resolvable(double omega) const {
    if (!(std::abs(omega) < nyquist()))
      throw DomainError("frequency exceeds the Nyquist limit of the sampling grid");
  }

 private:
  double window_;
  Eigen::Index intervals_;
};

/// Real and imaginary parts of sum_k w_k f_k exp(i omega tau_k).
struct FourierSample {
  double re;
  double im;
};

inline FourierSample fourier_quadrature(const SymmetricGrid& grid,
                                        const Eigen::Ref<const Eigen::ArrayXd>& tau,
                                        const Eigen::Ref<const Eigen::ArrayXd>& weights,
                                        const Eigen::Ref<const Eigen::ArrayXd>& values,
                                        double omega) {
  grid.require_resolvable(omega);
  const Eigen::ArrayXd phase = omega * tau;
  const Eigen::ArrayXd wf = weights * values;
  return {(wf * phase.cos()).sum(), (wf * phase.sin()).sum()};
}

}  // namespace kerrsq
