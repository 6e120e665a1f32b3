#ifndef XORCOMM_BOOLEAN_FUNCTION_HPP
#define XORCOMM_BOOLEAN_FUNCTION_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "bits.hpp"

namespace xorcomm {

/// f: {0,1}^n -> {0,1} stored as a packed truth table.
///
/// Index convention: bit i of a table index is input variable x_{i+1}, so
/// the string x_1 x_2 ... x_n maps to index sum_i x_i 2^{i-1}. Inputs are
/// passed around as such indices throughout the library.
class BooleanFunction {
 public:
  BooleanFunction(int arity, BitVector table, int cap = kDefaultArityCap)
      : arity_(arity), table_(std::move(table)) {
    check_arity(arity, cap);
    if (table_.size() != (std::size_t{1} << arity)) {
      throw std::invalid_argument("truth table length must be 2^n");
    }
  }

  /// Tabulates pred(x) over all 2^n indices.
  template <class Pred>
  static BooleanFunction tabulate(int arity, Pred&& pred, int cap = kDefaultArityCap) {
    check_arity(arity, cap);
    const std::uint64_t size = std::uint64_t{1} << arity;
    BitVector table(size);
    for (std::uint64_t x = 0; x < size; ++x) {
      if (pred(x)) table.set(x, true);
    }
    return BooleanFunction(arity, std::move(table), cap);
  }

  /// Parses a string of 2^n characters from {0,1}; position i is f(index i).
  static BooleanFunction from_string(int arity, std::string_view bits) {
    check_arity(arity, kDefaultArityCap);
    if (bits.size() != (std::size_t{1} << arity)) {
      throw std::invalid_argument("truth table length must be 2^n");
    }
    BitVector table(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] != '0' && bits[i] != '1') throw std::invalid_argument("truth table must be 0/1");
      table.set(i, bits[i] == '1');
    }
    return BooleanFunction(arity, std::move(table));
  }

  int arity() const { return arity_; }
  std::uint64_t size() const { return std::uint64_t{1} << arity_; }
  const BitVector& table() const { return table_; }

  /// f(x) for an input index; x must fit in n bits.
  bool evaluate(std::uint64_t x) const {
    if ((x & ~low_mask(arity_)) != 0) throw std::invalid_argument("input has more than n bits");
    return table_[x];
  }

  /// f(x) for an explicit bit string x_1 ... x_n.
  bool evaluate(std::span<const bool> x) const {
    if (static_cast<int>(x.size()) != arity_) throw std::invalid_argument("input length differs from arity");
    std::uint64_t index = 0;
    for (int i = 0; i < arity_; ++i) {
      if (x[static_cast<std::size_t>(i)]) index |= std::uint64_t{1} << i;
    }
    return table_[index];
  }

  bool operator()(std::uint64_t x) const { return table_[x]; }

  std::string to_string() const { return table_.to_string(); }

  friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

  static void check_arity(int arity, int cap) {
    if (arity < 1) throw std::invalid_argument("arity must be at least 1");
    if (arity > cap || arity > 62) {
      throw std::invalid_argument("arity " + std::to_string(arity) + " exceeds cap " + std::to_string(cap));
    }
  }

 private:
  int arity_;
  BitVector table_;
};

// Constructors for the standard families.

inline BooleanFunction constant_function(int n, bool value) {
  return BooleanFunction::tabulate(n, [value](std::uint64_t) { return value; });
}

inline BooleanFunction parity_function(int n) {
  return BooleanFunction::tabulate(n, [](std::uint64_t x) { return inner_product(x, x) == 1; });
}

inline BooleanFunction and_function(int n) {
  const std::uint64_t all = low_mask(n);
  return BooleanFunction::tabulate(n, [all](std::uint64_t x) { return x == all; });
}

inline BooleanFunction or_function(int n) {
  return BooleanFunction::tabulate(n, [](std::uint64_t x) { return x != 0; });
}

/// 1 iff more than half of the bits are set.
inline BooleanFunction majority_function(int n) {
  return BooleanFunction::tabulate(n, [n](std::uint64_t x) { return 2 * std::popcount(x) > n; });
}

/// 1 only at the all-zero input (the +-1 view is -1 exactly at 0^n).
inline BooleanFunction zero_indicator(int n) {
  return BooleanFunction::tabulate(n, [](std::uint64_t x) { return x == 0; });
}

/// Addressing function on m + 2^m bits: the first m bits x_1..x_m hold an
/// address a (x_1 least significant), the next 2^m bits hold data d_0..d_{2^m-1};
/// f returns d_a.
inline BooleanFunction addressing_function(int m, int cap = kDefaultArityCap) {
  if (m < 1 || m > 5) throw std::invalid_argument("addressing function needs 1 <= m <= 5");
  const int n = m + (1 << m);
  if (n > cap) throw std::invalid_argument("addressing function exceeds arity cap");
  return BooleanFunction::tabulate(
      n,
      [m](std::uint64_t x) {
        const std::uint64_t address = x & low_mask(m);
        return ((x >> (m + address)) & 1u) != 0;
      },
      cap);
}

/// f^{+y}(x) = f(x XOR y).
inline BooleanFunction shift_input(const BooleanFunction& f, std::uint64_t y) {
  if ((y & ~low_mask(f.arity())) != 0) throw std::invalid_argument("shift has more than n bits");
  return BooleanFunction::tabulate(f.arity(), [&](std::uint64_t x) { return f(x ^ y); });
}

inline BooleanFunction complement(const BooleanFunction& f) {
  return BooleanFunction::tabulate(f.arity(), [&](std::uint64_t x) { return !f(x); });
}

/// Maximum over x of the number of neighbours y of x with f(y) != f(x).
inline int sensitivity(const BooleanFunction& f) {
  int best = 0;
  const int n = f.arity();
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    const bool fx = f(x);
    int s = 0;
    for (int i = 0; i < n; ++i) s += f(x ^ (std::uint64_t{1} << i)) != fx;
    best = std::max(best, s);
    if (best == n) break;
  }
  return best;
}

/// Coefficients of the algebraic normal form (F2 Moebius transform of the
/// table): entry S is 1 iff the monomial prod_{i in S} x_i appears.
inline std::vector<std::uint8_t> anf_coefficients(const BooleanFunction& f) {
  std::vector<std::uint8_t> a(f.size());
  for (std::uint64_t x = 0; x < f.size(); ++x) a[x] = f(x) ? 1 : 0;
  for (std::uint64_t step = 1; step < a.size(); step <<= 1) {
    for (std::uint64_t x = 0; x < a.size(); ++x) {
      if (x & step) a[x] ^= a[x ^ step];
    }
  }
  return a;
}

/// Degree of f as a polynomial over F2; 0 for constants.
inline int f2_degree(const BooleanFunction& f) {
  const auto a = anf_coefficients(f);
  int degree = 0;
  for (std::uint64_t s = 0; s < a.size(); ++s) {
    if (a[s]) degree = std::max(degree, std::popcount(s));
  }
  return degree;
}

/// Checked through single-bit 0 -> 1 flips, which suffices for monotonicity.
inline bool is_monotone(const BooleanFunction& f) {
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    if (!f(x)) continue;
    for (int i = 0; i < f.arity(); ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if (!(x & bit) && !f(x | bit)) return false;
    }
  }
  return true;
}

/// True iff flipping variable x_{i+1} changes f somewhere.
inline bool depends_on(const BooleanFunction& f, int i) {
  const std::uint64_t bit = std::uint64_t{1} << i;
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    if (!(x & bit) && f(x) != f(x | bit)) return true;
  }
  return false;
}

inline bool depends_on_all(const BooleanFunction& f) {
  for (int i = 0; i < f.arity(); ++i) {
    if (!depends_on(f, i)) return false;
  }
  return true;
}

}  // namespace xorcomm

#endif  // XORCOMM_BOOLEAN_FUNCTION_HPP
