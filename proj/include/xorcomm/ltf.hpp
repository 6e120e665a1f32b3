#ifndef XORCOMM_LTF_HPP
#define XORCOMM_LTF_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bits.hpp"
#include "boolean_function.hpp"

namespace xorcomm {

/// f(x) = 1 iff sum_i w_i x_i > theta, with positive, non-increasing weights.
///
/// Margins are found by enumerating all 2^n inputs at construction:
/// m0 = min over f(z)=0 of |sum w_i z_i - theta|, m1 likewise over f(z)=1, and
/// margin = min(m0, m1). A one-sided margin is +infinity when f never takes
/// that value. Inputs that land exactly on theta are rejected.
class LinearThresholdFunction {
 public:
  LinearThresholdFunction(std::vector<double> weights, double theta, int cap = kDefaultArityCap)
      : weights_(std::move(weights)), theta_(theta) {
    const int n = arity();
    BooleanFunction::check_arity(n, cap);
    if (!std::isfinite(theta_)) throw std::invalid_argument("threshold must be finite");
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) throw std::invalid_argument("weights must be positive");
      if (i > 0 && weights_[i] > weights_[i - 1]) throw std::invalid_argument("weights must be non-increasing");
    }
    m0_ = m1_ = std::numeric_limits<double>::infinity();
    const auto sums = weighted_sums();
    for (double v : sums) {
      if (v == theta_) throw std::invalid_argument("an input lands exactly on the threshold (zero margin)");
      if (v > theta_) {
        m1_ = std::min(m1_, v - theta_);
      } else {
        m0_ = std::min(m0_, theta_ - v);
      }
    }
  }

  int arity() const { return static_cast<int>(weights_.size()); }
  const std::vector<double>& weights() const { return weights_; }
  double theta() const { return theta_; }
  double m0() const { return m0_; }
  double m1() const { return m1_; }
  double margin() const { return std::min(m0_, m1_); }

  /// sum_i w_i z_i accumulated in variable order.
  double weighted_sum(std::uint64_t z) const {
    double v = 0.0;
    for (int i = 0; i < arity(); ++i) {
      if ((z >> i) & 1u) v += weights_[static_cast<std::size_t>(i)];
    }
    return v;
  }

  bool evaluate(std::uint64_t z) const { return weighted_sum(z) > theta_; }

  /// Same LTF with weights and threshold multiplied by a positive factor.
  LinearThresholdFunction scaled(double factor) const {
    std::vector<double> w = weights_;
    for (double& x : w) x *= factor;
    return LinearThresholdFunction(std::move(w), theta_ * factor);
  }

 private:
  // Same accumulation order as weighted_sum, computed incrementally.
  std::vector<double> weighted_sums() const {
    const std::uint64_t size = std::uint64_t{1} << arity();
    std::vector<double> sums(size, 0.0);
    for (std::uint64_t z = 1; z < size; ++z) {
      const int top = 63 - std::countl_zero(z);
      sums[z] = sums[z ^ (std::uint64_t{1} << top)] + weights_[static_cast<std::size_t>(top)];
    }
    return sums;
  }

  std::vector<double> weights_;
  double theta_;
  double m0_;
  double m1_;
};

/// Truth table of the LTF.
inline BooleanFunction ltf_realize(const LinearThresholdFunction& ltf) {
  return BooleanFunction::tabulate(ltf.arity(), [&](std::uint64_t z) { return ltf.evaluate(z); });
}

/// Majority on n bits as an LTF with every weight equal to `scale` and
/// threshold scale * n / 2 (odd n only, so no input sits on the threshold).
inline LinearThresholdFunction majority_ltf(int n, double scale = 1.0) {
  if (n % 2 == 0) throw std::invalid_argument("majority LTF needs odd n");
  return LinearThresholdFunction(std::vector<double>(static_cast<std::size_t>(n), scale), scale * n / 2.0);
}

}  // namespace xorcomm

#endif  // XORCOMM_LTF_HPP
