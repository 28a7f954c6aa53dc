#pragma once

#include <cmath>
#include <concepts>
#include <limits>

#include <Eigen/Core>

#include "kerrsq/errors.hpp"

namespace kerrsq {

/// Reduced frequency Omega = omega * tau_r. Public spectral interfaces take this
/// rather than a physical angular frequency.
template <typename Scalar = double>
struct ReducedFrequency {
  Scalar value{};
};

template <typename Scalar>
ReducedFrequency(Scalar) -> ReducedFrequency<Scalar>;

/// Anything that can stand in for the medium response: the even kernel h, its
/// self-convolution g = h * h, and the frequency filter L with FT[h] = 2L, FT[g] = 4L^2.
template <typename K>
concept ResponseKernel = requires(const K& k, typename K::Scalar x) {
  typename K::Scalar;
  { k.tau_r() } -> std::convertible_to<typename K::Scalar>;
  { k.h(x) } -> std::convertible_to<typename K::Scalar>;
  { k.g(x) } -> std::convertible_to<typename K::Scalar>;
  { k.lorentzian(x) } -> std::convertible_to<typename K::Scalar>;
};

/// Exponential (Debye) response with relaxation time tau_r. h integrates to 2.
template <typename Scalar_ = double>
class RelaxationKernel {
 public:
  using Scalar = Scalar_;

  explicit RelaxationKernel(Scalar tau_r) : tau_r_(tau_r) {
    if (!(tau_r > Scalar(0)) || !std::isfinite(static_cast<double>(tau_r)))
      throw DomainError("relaxation time tau_r must be positive and finite");
  }

  Scalar tau_r() const { return tau_r_; }

  Scalar h(Scalar tau) const {
    using std::abs, std::exp;
    return exp(-abs(tau) / tau_r_) / tau_r_;
  }

  Scalar g(Scalar tau) const {
    using std::abs, std::exp;
    const Scalar x = abs(tau) / tau_r_;
    if (std::isinf(x)) return Scalar(0);
    return (Scalar(1) + x) * exp(-x) / tau_r_;
  }

  /// L(omega) = 1 / (1 + (omega tau_r)^2), omega in physical units.
  Scalar lorentzian(Scalar omega) const {
    const Scalar x = omega * tau_r_;
    return Scalar(1) / (Scalar(1) + x * x);
  }

  Scalar lorentzian(ReducedFrequency<Scalar> omega) const {
    return Scalar(1) / (Scalar(1) + omega.value * omega.value);
  }

  Scalar to_angular(ReducedFrequency<Scalar> omega) const { return omega.value / tau_r_; }
  ReducedFrequency<Scalar> to_reduced(Scalar omega) const { return {omega * tau_r_}; }

 private:
  Scalar tau_r_;
};

template <ResponseKernel K>
typename K::Scalar eval_h(const K& kernel, typename K::Scalar tau) {
  return kernel.h(tau);
}

template <ResponseKernel K>
typename K::Scalar eval_g(const K& kernel, typename K::Scalar tau) {
  return kernel.g(tau);
}

template <ResponseKernel K>
typename K::Scalar eval_L(const K& kernel, typename K::Scalar omega) {
  return kernel.lorentzian(omega);
}

template <typename Scalar>
Scalar eval_L(const RelaxationKernel<Scalar>& kernel, ReducedFrequency<Scalar> omega) {
  return kernel.lorentzian(omega);
}

/// Largest relative error, over omega_grid (physical angular frequencies), between the
/// numerical cosine transforms of h and g and their closed forms 2L and 4L^2.
///
/// The window is sampled symmetrically on n_samples uniform intervals; see
/// quadrature.hpp for the weights. Requires window >= 40 tau_r, n_samples >= 2^12 and
/// divisible by 4, and every |omega| below the sampling Nyquist limit.
double kernel_transform_residual(const RelaxationKernel<double>& kernel,
                                 const Eigen::Ref<const Eigen::ArrayXd>& omega_grid,
                                 double window, Eigen::Index n_samples);

}  // namespace kerrsq
