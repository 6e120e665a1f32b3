#ifndef XORCOMM_COMM_MATRIX_HPP
#define XORCOMM_COMM_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "boolean_function.hpp"
#include "fourier.hpp"
#include "io.hpp"
#include "ltf.hpp"

namespace xorcomm {

inline constexpr int kMaxMaterializedArity = 12;
inline constexpr int kMaxEliminationArity = 8;
inline constexpr int kRankCrossCheckArity = 5;

/// Rank over Q of a dense row-major integer matrix by fraction-free
/// (Bareiss) elimination. Every division is exact; a nonzero remainder
/// throws VerificationError.
template <class Int>
int bareiss_rank(std::vector<Int> a, std::size_t rows, std::size_t cols) {
  if (a.size() != rows * cols) throw std::invalid_argument("matrix size mismatch");
  auto at = [&](std::size_t i, std::size_t j) -> Int& { return a[i * cols + j]; };
  std::size_t rank = 0;
  Int prev = 1;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && at(pivot, col) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(pivot, j), at(rank, j));
    }
    const Int p = at(rank, col);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      const Int lead = at(i, col);
      for (std::size_t j = col + 1; j < cols; ++j) {
        const Int num = p * at(i, j) - lead * at(rank, j);
        const Int q = num / prev;
        if (q * prev != num) throw VerificationError("Bareiss step produced an inexact division");
        at(i, j) = q;
      }
      at(i, col) = 0;
    }
    prev = p;
    ++rank;
  }
  return static_cast<int>(rank);
}

/// The communication matrix M_{xy} = f(x xor y) of the XOR function,
/// presented with +-1 entries (1 - 2 f). Entries are computed on demand;
/// materialize() builds the dense 2^n x 2^n matrix for n <= 12.
class CommMatrixView {
 public:
  explicit CommMatrixView(const BooleanFunction& f) : f_(&f) {}

  int arity() const { return f_->arity(); }
  std::uint64_t dimension() const { return f_->size(); }
  const BooleanFunction& function() const { return *f_; }

  int entry(std::uint64_t x, std::uint64_t y) const { return (*f_)(x ^ y) ? -1 : 1; }

  std::vector<std::int8_t> materialize() const {
    if (arity() > kMaxMaterializedArity) throw std::invalid_argument("matrix too large to materialize");
    const std::uint64_t d = dimension();
    std::vector<std::int8_t> m(d * d);
    for (std::uint64_t x = 0; x < d; ++x) {
      for (std::uint64_t y = 0; y < d; ++y) m[x * d + y] = static_cast<std::int8_t>(entry(x, y));
    }
    return m;
  }

  /// Row x as a packed bit vector (bit y set iff f(x xor y) = 1).
  BitVector row_bits(std::uint64_t x) const { return shift_input(*f_, x).table(); }

 private:
  const BooleanFunction* f_;
};

/// Rank of M by exact elimination, independent of the Fourier route.
inline int elimination_rank(const BooleanFunction& f) {
  if (f.arity() > kMaxEliminationArity) throw std::invalid_argument("exact elimination limited to small arity");
  const auto dense = CommMatrixView(f).materialize();
  const std::size_t d = f.size();
  if (f.arity() <= 4) {
    // 16 x 16 +-1 minors stay below 2^33, products below 2^66.
    std::vector<__int128> a(dense.begin(), dense.end());
    return bareiss_rank(std::move(a), d, d);
  }
  using boost::multiprecision::cpp_int;
  std::vector<cpp_int> a(dense.begin(), dense.end());
  return bareiss_rank(std::move(a), d, d);
}

/// rank(M) = ||fhat||_0. For n <= 5 the value is cross-checked against
/// elimination_rank and a mismatch throws VerificationError.
inline std::uint64_t matrix_rank(const BooleanFunction& f) {
  const std::uint64_t rank = wht(f).support_size();
  if (f.arity() <= kRankCrossCheckArity) {
    const int checked = elimination_rank(f);
    if (static_cast<std::uint64_t>(checked) != rank) {
      throw VerificationError("rank cross-check failed: spectrum gives " + std::to_string(rank) + ", elimination gives " +
                             std::to_string(checked));
    }
  }
  return rank;
}

/// Number of distinct rows of M (n <= 12).
inline std::uint64_t distinct_rows(const BooleanFunction& f) {
  if (f.arity() > kMaxMaterializedArity) throw std::invalid_argument("matrix too large to materialize");
  const CommMatrixView m(f);
  std::vector<std::vector<std::uint64_t>> rows;
  rows.reserve(f.size());
  for (std::uint64_t x = 0; x < f.size(); ++x) rows.push_back(m.row_bits(x).words());
  std::sort(rows.begin(), rows.end());
  return static_cast<std::uint64_t>(std::unique(rows.begin(), rows.end()) - rows.begin());
}

/// Exact one-way complexity of f(x xor y): dim f. For n <= 12 the number of
/// distinct rows of M must equal 2^{dim f}, otherwise VerificationError.
inline int one_way_complexity(const BooleanFunction& f) {
  const int dim = fourier_dimension(wht(f));
  if (f.arity() <= kMaxMaterializedArity) {
    const std::uint64_t rows = distinct_rows(f);
    if (rows != (std::uint64_t{1} << dim)) {
      throw VerificationError("one-way cross-check failed: " + std::to_string(rows) + " distinct rows, dim " +
                             std::to_string(dim));
    }
  }
  return dim;
}

/// Complexity bounds for g(x,y) = f(x xor y) derived from the spectrum.
/// Optional fields are present only when their hypothesis holds for f.
struct BoundsReport {
  int n = 0;
  std::uint64_t sparsity = 0;  // ||fhat||_0 = rank M
  int dimension = 0;           // dim f = exact one-way cost
  double lb_classical = 0.0;   // log2 ||fhat||_0
  double lb_quantum = 0.0;     // (1/2) log2 ||fhat||_0
  std::optional<double> ub_monotone;  // 4 (log2 ||fhat||_0)^2, f monotone
  std::optional<int> lb_ltf;          // ceil((n+1)/2), f an LTF on all n bits
};

/// `ltf`, when given, must realize f; the LTF bound is then reported if f
/// depends on all of its variables. Throws VerificationError if a lower bound
/// exceeds an upper bound.
inline BoundsReport bounds_report(const BooleanFunction& f, const LinearThresholdFunction* ltf = nullptr) {
  const FourierSpectrum spec = wht(f);
  BoundsReport r;
  r.n = f.arity();
  r.sparsity = spec.support_size();
  r.dimension = fourier_dimension(spec);
  const double log_rank = std::log2(static_cast<double>(r.sparsity));
  r.lb_classical = log_rank;
  r.lb_quantum = log_rank / 2.0;
  if (is_monotone(f)) r.ub_monotone = 4.0 * log_rank * log_rank;
  if (ltf != nullptr) {
    if (ltf->arity() != f.arity() || !(ltf_realize(*ltf) == f)) throw std::invalid_argument("LTF does not realize f");
    if (depends_on_all(f)) r.lb_ltf = (r.n + 2) / 2;
  }
  if (r.ub_monotone) {
    const double ub = *r.ub_monotone;
    if (r.lb_classical > ub || r.lb_quantum > ub || (r.lb_ltf && *r.lb_ltf > ub)) {
      throw VerificationError("bounds report is inconsistent: lower bound above upper bound");
    }
  }
  return r;
}

inline void write_bounds(std::ostream& out, const BoundsReport& r) {
  using detail::format_double;
  out << "rank=" << r.sparsity << '\n'
      << "dim=" << r.dimension << '\n'
      << "lb_classical=" << format_double(r.lb_classical) << '\n'
      << "lb_quantum=" << format_double(r.lb_quantum) << '\n';
  if (r.ub_monotone) out << "ub_monotone=" << format_double(*r.ub_monotone) << '\n';
  if (r.lb_ltf) out << "lb_ltf=" << *r.lb_ltf << '\n';
}

/// Verifies the addressing-function witness: with S_x = {(a, 0)} and
/// S_y = {(0, d)}, the 2^{2^m} rows of M indexed by S_y, restricted to the
/// columns S_x, are pairwise distinct, so S_x is shattered. Returns |S_x| = 2^m.
inline std::uint64_t addressing_vc_witness(int m, int cap = kDefaultArityCap) {
  if (m < 1 || m > 4) throw std::invalid_argument("addressing witness needs 1 <= m <= 4");
  const BooleanFunction f = addressing_function(m, cap);
  const std::uint64_t columns = std::uint64_t{1} << m;
  const std::uint64_t rows = std::uint64_t{1} << columns;
  std::vector<std::uint64_t> patterns;
  patterns.reserve(rows);
  for (std::uint64_t d = 0; d < rows; ++d) {
    const std::uint64_t y = d << m;
    std::uint64_t pattern = 0;
    for (std::uint64_t a = 0; a < columns; ++a) {
      if (f(a ^ y)) pattern |= std::uint64_t{1} << a;
    }
    patterns.push_back(pattern);
  }
  std::sort(patterns.begin(), patterns.end());
  if (std::adjacent_find(patterns.begin(), patterns.end()) != patterns.end() || patterns.size() != rows) {
    throw VerificationError("addressing VC witness verification failed");
  }
  return columns;
}

}  // namespace xorcomm

#endif  // XORCOMM_COMM_MATRIX_HPP
