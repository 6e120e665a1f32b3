#ifndef XORCOMM_FOURIER_HPP
#define XORCOMM_FOURIER_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bits.hpp"
#include "boolean_function.hpp"

namespace xorcomm {

/// In-place unnormalized Walsh-Hadamard transform:
/// v[S] <- sum_x (-1)^{<S,x>} v[x]. Applying it twice multiplies by 2^n.
template <class Int>
void walsh_hadamard(std::span<Int> v) {
  for (std::size_t len = 1; len < v.size(); len <<= 1) {
    for (std::size_t i = 0; i < v.size(); i += len << 1) {
      for (std::size_t j = i; j < i + len; ++j) {
        const Int a = v[j];
        const Int b = v[j + len];
        v[j] = a + b;
        v[j + len] = a - b;
      }
    }
  }
}

/// Fourier coefficients of the +-1 view F(x) = 1 - 2 f(x), scaled by 2^n so
/// that every entry is an exact integer: coeffs[S] = 2^n * fhat(S).
class FourierSpectrum {
 public:
  FourierSpectrum(int arity, std::vector<std::int64_t> coeffs) : arity_(arity), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != (std::size_t{1} << arity)) throw std::invalid_argument("spectrum length must be 2^n");
  }

  int arity() const { return arity_; }
  std::uint64_t size() const { return coeffs_.size(); }
  /// 2^n, the factor every stored coefficient carries.
  std::int64_t scale() const { return std::int64_t{1} << arity_; }

  std::int64_t operator[](SubsetMask s) const { return coeffs_[s.bits]; }
  std::int64_t operator[](std::uint64_t s) const { return coeffs_[s]; }
  std::span<const std::int64_t> coeffs() const { return coeffs_; }

  /// fhat(S) as a real number.
  double coefficient(SubsetMask s) const { return static_cast<double>(coeffs_[s.bits]) / static_cast<double>(scale()); }

  bool in_support(std::uint64_t s) const { return coeffs_[s] != 0; }

  std::vector<SubsetMask> support() const {
    std::vector<SubsetMask> out;
    for (std::uint64_t s = 0; s < coeffs_.size(); ++s) {
      if (coeffs_[s] != 0) out.emplace_back(s);
    }
    return out;
  }

  std::uint64_t support_size() const {
    return static_cast<std::uint64_t>(std::count_if(coeffs_.begin(), coeffs_.end(), [](auto c) { return c != 0; }));
  }

  /// sum_S |coeffs[S]|, i.e. 2^n times the spectral norm.
  std::int64_t l1_scaled() const {
    std::int64_t total = 0;
    for (auto c : coeffs_) total += std::abs(c);
    return total;
  }

  std::int64_t linf_scaled() const {
    std::int64_t best = 0;
    for (auto c : coeffs_) best = std::max(best, std::abs(c));
    return best;
  }

  /// sum_S coeffs[S]^2; equals 4^n for any boolean function.
  std::int64_t parseval_sum() const {
    std::int64_t total = 0;
    for (auto c : coeffs_) total += c * c;
    return total;
  }

  friend bool operator==(const FourierSpectrum&, const FourierSpectrum&) = default;

 private:
  int arity_;
  std::vector<std::int64_t> coeffs_;
};

inline FourierSpectrum wht(const BooleanFunction& f) {
  std::vector<std::int64_t> v(f.size());
  for (std::uint64_t x = 0; x < f.size(); ++x) v[x] = f(x) ? -1 : 1;
  walsh_hadamard(std::span<std::int64_t>(v));
  return FourierSpectrum(f.arity(), std::move(v));
}

/// Applies the transform to the scaled coefficients again, giving 2^n * F(x).
inline std::vector<std::int64_t> inverse_wht(const FourierSpectrum& spec) {
  std::vector<std::int64_t> v(spec.coeffs().begin(), spec.coeffs().end());
  walsh_hadamard(std::span<std::int64_t>(v));
  return v;
}

/// Recovers f from a spectrum, throwing if the spectrum is not that of a
/// boolean function.
inline BooleanFunction function_from_spectrum(const FourierSpectrum& spec) {
  const auto values = inverse_wht(spec);
  const std::int64_t full = spec.scale();
  BitVector table(values.size());
  for (std::size_t x = 0; x < values.size(); ++x) {
    if (values[x] == -full) {
      table.set(x, true);
    } else if (values[x] != full) {
      throw std::invalid_argument("spectrum does not describe a boolean function");
    }
  }
  return BooleanFunction(spec.arity(), std::move(table));
}

enum class Norm { L0, L1, L2, Linf };

/// ||fhat||_p with the 2^n scaling removed. L0 returns the support size.
inline double spectral_norm(const FourierSpectrum& spec, Norm p) {
  const double scale = static_cast<double>(spec.scale());
  switch (p) {
    case Norm::L0:
      return static_cast<double>(spec.support_size());
    case Norm::L1:
      return static_cast<double>(spec.l1_scaled()) / scale;
    case Norm::L2:
      return std::sqrt(static_cast<double>(spec.parseval_sum())) / scale;
    case Norm::Linf:
      return static_cast<double>(spec.linf_scaled()) / scale;
  }
  return 0.0;
}

/// Rank over F2 of a set of vectors packed into 64-bit words.
inline int f2_rank(std::span<const std::uint64_t> vectors) {
  std::vector<std::uint64_t> basis;  // kept with distinct leading bits
  for (std::uint64_t v : vectors) {
    for (std::uint64_t b : basis) v = std::min(v, v ^ b);
    if (v != 0) {
      basis.push_back(v);
      std::sort(basis.rbegin(), basis.rend());
    }
  }
  return static_cast<int>(basis.size());
}

/// dim f: the F2 rank of supp fhat.
inline int fourier_dimension(const FourierSpectrum& spec) {
  std::vector<std::uint64_t> masks;
  for (std::uint64_t s = 1; s < spec.size(); ++s) {
    if (spec.in_support(s)) masks.push_back(s);
  }
  return f2_rank(masks);
}

/// out[S] = in[S xor T]: the spectrum of f(x) * chi_T(x).
inline FourierSpectrum shift_spectrum(const FourierSpectrum& spec, SubsetMask t) {
  if ((t.bits & ~low_mask(spec.arity())) != 0) throw std::invalid_argument("mask has more than n bits");
  std::vector<std::int64_t> out(spec.size());
  for (std::uint64_t s = 0; s < spec.size(); ++s) out[s] = spec[s ^ t.bits];
  return FourierSpectrum(spec.arity(), std::move(out));
}

}  // namespace xorcomm

#endif  // XORCOMM_FOURIER_HPP
