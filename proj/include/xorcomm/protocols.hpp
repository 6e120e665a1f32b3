#ifndef XORCOMM_PROTOCOLS_HPP
#define XORCOMM_PROTOCOLS_HPP

// Simultaneous-message protocols with public randomness for XOR functions
// g(x, y) = f(x xor y). Alice sees x, Bob sees y, and each sends one message
// to a referee who also sees the shared coins. Outputs are reported in the
// 0/1 convention of f.
//
// A protocol type P provides
//   Coins draw(const SharedRandomness&)        public coins for one run
//   BitVector alice(const Coins&, uint64_t x)  Alice's message
//   BitVector bob(const Coins&, uint64_t y)    Bob's message
//   bool referee(const Coins&, a, b)           the output bit
//   bool target(uint64_t z)                    f(z), for scoring
//   std::size_t cost()                         |a| + |b|

#include <algorithm>
#include <bit>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bits.hpp"
#include "boolean_function.hpp"
#include "fourier.hpp"
#include "ltf.hpp"
#include "parallel.hpp"
#include "random.hpp"

namespace xorcomm {

/// One simulated execution.
struct ProtocolRun {
  BitVector alice;
  BitVector bob;
  bool output = false;
  std::size_t cost = 0;
};

template <class P>
concept SmpProtocol = requires(const P& p, const SharedRandomness& rand, const typename P::Coins& coins,
                               std::uint64_t x, const BitVector& m) {
  { p.arity() } -> std::convertible_to<int>;
  { p.draw(rand) } -> std::same_as<typename P::Coins>;
  { p.alice(coins, x) } -> std::same_as<BitVector>;
  { p.bob(coins, x) } -> std::same_as<BitVector>;
  { p.referee(coins, m, m) } -> std::same_as<bool>;
  { p.target(x) } -> std::same_as<bool>;
  { p.cost() } -> std::convertible_to<std::size_t>;
};

template <SmpProtocol P>
ProtocolRun run_protocol(const P& p, std::uint64_t x, std::uint64_t y, const SharedRandomness& rand) {
  const auto coins = p.draw(rand);
  ProtocolRun run;
  run.alice = p.alice(coins, x);
  run.bob = p.bob(coins, y);
  run.output = p.referee(coins, run.alice, run.bob);
  run.cost = run.alice.size() + run.bob.size();
  return run;
}

// ---------------------------------------------------------------------------
// Spectral sampling

/// Samples k sets S_i with probability |fhat(S)| / ||fhat||_1. Each party
/// sends its k parities chi_{S_i}; the referee outputs the sign of
/// sum_i chi_{S_i}(x) chi_{S_i}(y) sgn(fhat(S_i)), with 0 counted as +1.
/// k = ceil(2 ||fhat||_1^2 ln(1/delta)).
class GrolmuszProtocol {
 public:
  struct Coins {
    std::vector<std::uint64_t> sets;
    BitVector negative;  // bit i set iff fhat(S_i) < 0
  };

  GrolmuszProtocol(const FourierSpectrum& spec, double delta = 1.0 / 6.0)
      : f_(function_from_spectrum(spec)), delta_(delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
    std::int64_t running = 0;
    for (std::uint64_t s = 0; s < spec.size(); ++s) {
      if (spec[s] == 0) continue;
      running += std::abs(spec[s]);
      support_.push_back(s);
      cumulative_.push_back(static_cast<std::uint64_t>(running));
      negative_.push_back(spec[s] < 0);
    }
    total_ = static_cast<std::uint64_t>(running);
    l1_ = static_cast<double>(running) / static_cast<double>(spec.scale());
    k_ = sample_count(l1_, delta);
  }

  static std::size_t sample_count(double l1, double delta) {
    return static_cast<std::size_t>(std::ceil(2.0 * l1 * l1 * std::log(1.0 / delta)));
  }

  int arity() const { return f_.arity(); }
  std::size_t samples() const { return k_; }
  std::size_t cost() const { return 2 * k_; }
  double spectral_norm() const { return l1_; }
  double delta() const { return delta_; }

  /// Exact sampling probability of S.
  double probability(SubsetMask s) const {
    const auto it = std::lower_bound(support_.begin(), support_.end(), s.bits);
    if (it == support_.end() || *it != s.bits) return 0.0;
    const auto i = static_cast<std::size_t>(it - support_.begin());
    const std::uint64_t weight = cumulative_[i] - (i == 0 ? 0 : cumulative_[i - 1]);
    return static_cast<double>(weight) / static_cast<double>(total_);
  }

  /// Index into the support, drawn exactly proportional to |coeff|.
  std::size_t sample_index(Engine& eng) const {
    const std::uint64_t u = uniform_below(eng, total_);
    return static_cast<std::size_t>(std::upper_bound(cumulative_.begin(), cumulative_.end(), u) - cumulative_.begin());
  }

  Coins draw(const SharedRandomness& rand) const {
    Engine eng = rand.engine();
    Coins coins;
    coins.sets.reserve(k_);
    coins.negative.reserve(k_);
    for (std::size_t i = 0; i < k_; ++i) {
      const std::size_t j = sample_index(eng);
      coins.sets.push_back(support_[j]);
      coins.negative.push_back(negative_[j]);
    }
    return coins;
  }

  BitVector alice(const Coins& coins, std::uint64_t x) const { return parities(coins, x); }
  BitVector bob(const Coins& coins, std::uint64_t y) const { return parities(coins, y); }

  bool referee(const Coins& coins, const BitVector& a, const BitVector& b) const {
    // Each term is (-1)^{a_i xor b_i xor neg_i}.
    const auto minus = static_cast<std::int64_t>(hamming_distance(a ^ b, coins.negative));
    const std::int64_t statistic = static_cast<std::int64_t>(k_) - 2 * minus;
    return statistic < 0;  // sign -1 means f = 1
  }

  bool target(std::uint64_t z) const { return f_(z); }

 private:
  static BitVector parities(const Coins& coins, std::uint64_t x) {
    BitVector out;
    out.reserve(coins.sets.size());
    for (auto s : coins.sets) out.push_back(inner_product(s, x));
    return out;
  }

  BooleanFunction f_;
  double delta_;
  std::vector<std::uint64_t> support_;
  std::vector<std::uint64_t> cumulative_;
  std::vector<bool> negative_;
  std::uint64_t total_ = 0;
  double l1_ = 0.0;
  std::size_t k_ = 0;
};

inline ProtocolRun grolmusz_run(const FourierSpectrum& spec, std::uint64_t x, std::uint64_t y,
                                const SharedRandomness& rand, double delta = 1.0 / 6.0) {
  return run_protocol(GrolmuszProtocol(spec, delta), x, y, rand);
}

// ---------------------------------------------------------------------------
// Membership testing by parity fingerprints

/// Sorted set of n-bit strings on which f differs from a reference function.
class DisagreementSet {
 public:
  DisagreementSet(int arity, std::vector<std::uint64_t> elements) : arity_(arity), elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    for (auto z : elements_) {
      if ((z & ~low_mask(arity)) != 0) throw std::invalid_argument("element has more than n bits");
    }
  }

  int arity() const { return arity_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const std::vector<std::uint64_t>& elements() const { return elements_; }
  bool contains(std::uint64_t z) const { return std::binary_search(elements_.begin(), elements_.end(), z); }

 private:
  int arity_;
  std::vector<std::uint64_t> elements_;
};

/// Smallest k with 2^k >= 3 |S|, which bounds the false-positive rate of the
/// fingerprint check by 1/3.
inline int fingerprint_length(std::size_t set_size) {
  const std::uint64_t target = 3 * std::max<std::uint64_t>(1, set_size);
  return std::bit_width(target - 1);
}

/// Shared-coin test of x xor y in S. The coins are k uniform n-bit strings
/// r_i; Alice and Bob send <x, r_i> and <y, r_i>, and the referee accepts iff
/// some z in S has <z, r_i> = a_i xor b_i for every i. Members are always
/// accepted; a non-member is accepted with probability at most |S| / 2^k.
class MembershipCheck {
 public:
  struct Coins {
    std::vector<std::uint64_t> strings;
    std::vector<std::uint64_t> member_fingerprints;  // sorted
  };

  MembershipCheck(const DisagreementSet& set, int k) : set_(&set), k_(k) {
    if (k <= 0) throw std::invalid_argument("fingerprint length must be positive");
    if (k > 64) throw std::invalid_argument("fingerprint length above 64 bits");
  }

  int length() const { return k_; }

  Coins draw(Engine& eng) const {
    Coins coins;
    const std::uint64_t mask = low_mask(set_->arity());
    coins.strings.reserve(static_cast<std::size_t>(k_));
    for (int i = 0; i < k_; ++i) coins.strings.push_back(eng() & mask);
    coins.member_fingerprints.reserve(set_->size());
    for (auto z : set_->elements()) coins.member_fingerprints.push_back(fingerprint(coins, z));
    std::sort(coins.member_fingerprints.begin(), coins.member_fingerprints.end());
    return coins;
  }

  static std::uint64_t fingerprint(const Coins& coins, std::uint64_t x) {
    std::uint64_t fp = 0;
    for (std::size_t i = 0; i < coins.strings.size(); ++i) {
      fp |= static_cast<std::uint64_t>(inner_product(coins.strings[i], x)) << i;
    }
    return fp;
  }

  static bool accepts(const Coins& coins, std::uint64_t fa, std::uint64_t fb) {
    return std::binary_search(coins.member_fingerprints.begin(), coins.member_fingerprints.end(), fa ^ fb);
  }

 private:
  const DisagreementSet* set_;
  int k_;
};

inline bool equality_shift_check(const DisagreementSet& set, std::uint64_t x, std::uint64_t y,
                                 const SharedRandomness& rand, int k) {
  if (set.empty()) throw std::invalid_argument("membership check needs a nonempty set");
  const MembershipCheck check(set, k);
  Engine eng = rand.engine();
  const auto coins = check.draw(eng);
  return MembershipCheck::accepts(coins, MembershipCheck::fingerprint(coins, x), MembershipCheck::fingerprint(coins, y));
}

/// F = 1 - 2f written as sign * chi_T corrected on a disagreement set.
struct ParityApproximation {
  SubsetMask parity;
  int sign = 1;
  DisagreementSet disagreements;
};

/// Chooses T maximizing |fhat(T)| (smallest mask on ties) and the sign of
/// fhat(T), so |S| = 2^{n-1} (1 - ||fhat||_inf).
inline ParityApproximation best_parity_approximation(const BooleanFunction& f) {
  const FourierSpectrum spec = wht(f);
  std::uint64_t best = 0;
  for (std::uint64_t s = 1; s < spec.size(); ++s) {
    if (std::abs(spec[s]) > std::abs(spec[best])) best = s;
  }
  const int sign = spec[best] < 0 ? -1 : 1;
  std::vector<std::uint64_t> differ;
  for (std::uint64_t z = 0; z < f.size(); ++z) {
    const int value = f(z) ? -1 : 1;
    if (value != sign * character(SubsetMask{best}, z)) differ.push_back(z);
  }
  return {SubsetMask{best}, sign, DisagreementSet(f.arity(), std::move(differ))};
}

/// Each party sends chi_T of its input plus a k-bit fingerprint; the
/// referee outputs sign * chi_T(x) chi_T(y), negated when x xor y is found
/// in the disagreement set. k = 0 when the set is empty.
class NearParityProtocol {
 public:
  using Coins = MembershipCheck::Coins;

  NearParityProtocol(SubsetMask parity, int sign, DisagreementSet set)
      : parity_(parity), sign_(sign), set_(std::move(set)), k_(set_.empty() ? 0 : fingerprint_length(set_.size())) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    if ((parity.bits & ~low_mask(set_.arity())) != 0) throw std::invalid_argument("mask has more than n bits");
    if (k_ > 64) throw std::invalid_argument("fingerprint length above 64 bits");
  }

  explicit NearParityProtocol(const ParityApproximation& approx)
      : NearParityProtocol(approx.parity, approx.sign, approx.disagreements) {}

  explicit NearParityProtocol(const BooleanFunction& f) : NearParityProtocol(best_parity_approximation(f)) {}

  int arity() const { return set_.arity(); }
  int fingerprint_bits() const { return k_; }
  std::size_t cost() const { return 2 * static_cast<std::size_t>(k_ + 1); }
  SubsetMask parity() const { return parity_; }
  int sign() const { return sign_; }
  const DisagreementSet& disagreements() const { return set_; }

  Coins draw(const SharedRandomness& rand) const {
    if (k_ == 0) return {};
    Engine eng = rand.engine();
    return MembershipCheck(set_, k_).draw(eng);
  }

  BitVector alice(const Coins& coins, std::uint64_t x) const { return message(coins, x); }
  BitVector bob(const Coins& coins, std::uint64_t y) const { return message(coins, y); }

  bool referee(const Coins& coins, const BitVector& a, const BitVector& b) const {
    int value = sign_ * ((a[0] != b[0]) ? -1 : 1);
    if (k_ > 0) {
      std::uint64_t fa = 0;
      std::uint64_t fb = 0;
      for (int i = 0; i < k_; ++i) {
        fa |= static_cast<std::uint64_t>(a[static_cast<std::size_t>(i) + 1]) << i;
        fb |= static_cast<std::uint64_t>(b[static_cast<std::size_t>(i) + 1]) << i;
      }
      if (MembershipCheck::accepts(coins, fa, fb)) value = -value;
    }
    return value < 0;
  }

  bool target(std::uint64_t z) const {
    int value = sign_ * character(parity_, z);
    if (set_.contains(z)) value = -value;
    return value < 0;
  }

 private:
  BitVector message(const Coins& coins, std::uint64_t x) const {
    BitVector out;
    out.reserve(static_cast<std::size_t>(k_) + 1);
    out.push_back(inner_product(parity_.bits, x));
    const std::uint64_t fp = k_ > 0 ? MembershipCheck::fingerprint(coins, x) : 0;
    for (int i = 0; i < k_; ++i) out.push_back((fp >> i) & 1u);
    return out;
  }

  SubsetMask parity_;
  int sign_;
  DisagreementSet set_;
  int k_;
};

inline ProtocolRun near_parity_run(SubsetMask parity, int sign, const DisagreementSet& set, std::uint64_t x,
                                   std::uint64_t y, const SharedRandomness& rand) {
  return run_protocol(NearParityProtocol(parity, sign, set), x, y, rand);
}

// ---------------------------------------------------------------------------
// Linear threshold functions

/// Pr[<r, x> = 1] when bit i of r is 1 independently with probability p_i:
/// (1 - prod_i (1 - 2 p_i x_i)) / 2.
inline double parity_prob_exact(std::span<const double> p, std::uint64_t x) {
  if (p.size() < 64 && (x >> p.size()) != 0) throw std::invalid_argument("x has more bits than p");
  double product = 1.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0.0 && p[i] <= 1.0)) throw std::invalid_argument("probability outside [0, 1]");
    if ((x >> i) & 1u) product *= 1.0 - 2.0 * p[i];
  }
  return 0.5 * (1.0 - product);
}

/// Shared strings r_j with Pr[bit i = 1] = p_i = (1 - (1 - 1/theta)^{w_i}) / 2,
/// so that Pr[<r_j, z> = 1] = (1 - (1 - 1/theta)^{sum w_i z_i}) / 2. The
/// referee averages a_j xor b_j over k = ceil(c (theta/m)^2) strings and
/// outputs 1 iff the mean exceeds the midpoint between the two sides
///   (1 - ((1 - 1/theta)^{theta - m0} + (1 - 1/theta)^{theta + m1}) / 2) / 2.
/// If any of m0, m1, theta is at most 1, weights and threshold are first
/// multiplied by 1.0001 / min(m0, m1, theta).
class LtfProtocol {
 public:
  using Coins = std::vector<std::uint64_t>;

  explicit LtfProtocol(const LinearThresholdFunction& ltf, double c = 48.0)
      : original_(ltf), scaled_(rescale(ltf)), c_(c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("c must be positive");
    const double ratio = ltf.theta() / ltf.margin();
    const double k = std::ceil(c * ratio * ratio);
    if (!(k >= 1.0) || k > 1e9) throw std::invalid_argument("sample count out of range");
    k_ = static_cast<std::size_t>(k);
    const double base = 1.0 - 1.0 / scaled_.theta();
    for (double w : scaled_.weights()) probabilities_.push_back(0.5 * (1.0 - std::pow(base, w)));
    const double theta = scaled_.theta();
    threshold_ = 0.5 * (1.0 - 0.5 * (std::pow(base, theta - scaled_.m0()) + std::pow(base, theta + scaled_.m1())));
  }

  int arity() const { return original_.arity(); }
  std::size_t samples() const { return k_; }
  std::size_t cost() const { return 2 * k_; }
  const LinearThresholdFunction& original() const { return original_; }
  /// The LTF actually used, after any rescaling.
  const LinearThresholdFunction& scaled() const { return scaled_; }
  const std::vector<double>& bit_probabilities() const { return probabilities_; }
  double referee_threshold() const { return threshold_; }

  /// (1 - (1 - 1/theta)^{sum w_i z_i}) / 2 on the scaled LTF.
  double marginal(std::uint64_t z) const {
    return 0.5 * (1.0 - std::pow(1.0 - 1.0 / scaled_.theta(), scaled_.weighted_sum(z)));
  }

  /// Lower bound on |marginal(z) - marginal(z')| whenever f(z) != f(z'):
  /// ((1 - 1/theta)^{theta - m} - (1 - 1/theta)^{theta + m}) / 2.
  double separation_bound() const {
    const double base = 1.0 - 1.0 / scaled_.theta();
    const double theta = scaled_.theta();
    const double m = scaled_.margin();
    return 0.5 * (std::pow(base, theta - m) - std::pow(base, theta + m));
  }

  Coins draw(const SharedRandomness& rand) const {
    Engine eng = rand.engine();
    Coins strings(k_, 0);
    for (auto& r : strings) {
      for (std::size_t i = 0; i < probabilities_.size(); ++i) {
        if (bernoulli(eng, probabilities_[i])) r |= std::uint64_t{1} << i;
      }
    }
    return strings;
  }

  BitVector alice(const Coins& coins, std::uint64_t x) const { return parities(coins, x); }
  BitVector bob(const Coins& coins, std::uint64_t y) const { return parities(coins, y); }

  bool referee(const Coins&, const BitVector& a, const BitVector& b) const {
    const double s = static_cast<double>(hamming_distance(a, b)) / static_cast<double>(k_);
    return s > threshold_;
  }

  bool target(std::uint64_t z) const { return original_.evaluate(z); }

 private:
  static LinearThresholdFunction rescale(const LinearThresholdFunction& ltf) {
    if (!std::isfinite(ltf.m0()) || !std::isfinite(ltf.m1())) {
      throw std::invalid_argument("LTF protocol needs a non-constant function");
    }
    const double smallest = std::min({ltf.m0(), ltf.m1(), ltf.theta()});
    LinearThresholdFunction out = ltf;
    if (smallest <= 1.0) {
      if (!(smallest > 0.0)) throw std::invalid_argument("cannot rescale: threshold is not positive");
      out = ltf.scaled(1.0001 / smallest);
    }
    if (!(out.m0() > 1.0 && out.m1() > 1.0 && out.theta() > 1.0)) {
      throw std::invalid_argument("rescaling failed to make m0, m1 and theta exceed 1");
    }
    return out;
  }

  static BitVector parities(const Coins& coins, std::uint64_t x) {
    BitVector out;
    out.reserve(coins.size());
    for (auto r : coins) out.push_back(inner_product(r, x));
    return out;
  }

  LinearThresholdFunction original_;
  LinearThresholdFunction scaled_;
  double c_;
  std::size_t k_ = 0;
  std::vector<double> probabilities_;
  double threshold_ = 0.0;
};

inline ProtocolRun ltf_protocol_run(const LinearThresholdFunction& ltf, std::uint64_t x, std::uint64_t y,
                                    const SharedRandomness& rand, double c = 48.0) {
  return run_protocol(LtfProtocol(ltf, c), x, y, rand);
}

// ---------------------------------------------------------------------------
// Monte Carlo harness

using InputPair = std::pair<std::uint64_t, std::uint64_t>;

inline std::vector<InputPair> all_pairs(int n) {
  if (n < 1 || n > 12) throw std::invalid_argument("all-pairs mode needs 1 <= n <= 12");
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<InputPair> out;
  out.reserve(size * size);
  for (std::uint64_t x = 0; x < size; ++x) {
    for (std::uint64_t y = 0; y < size; ++y) out.emplace_back(x, y);
  }
  return out;
}

/// `count` uniform pairs drawn from a stream derived from `rand`.
inline std::vector<InputPair> sample_pairs(int n, std::uint64_t count, const SharedRandomness& rand) {
  Engine eng = rand.derive(0x9a1f5).engine();
  const std::uint64_t mask = low_mask(n);
  std::vector<InputPair> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t x = eng() & mask;
    const std::uint64_t y = eng() & mask;
    out.emplace_back(x, y);
  }
  return out;
}

struct PairResult {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  std::uint64_t successes = 0;
};

struct SuccessTable {
  int arity = 0;
  std::uint64_t runs = 0;
  std::size_t cost = 0;
  std::vector<PairResult> pairs;

  double rate(std::size_t i) const { return static_cast<double>(pairs[i].successes) / static_cast<double>(runs); }

  /// Index of the pair with the fewest successes (first on ties).
  std::size_t worst() const {
    std::size_t w = 0;
    for (std::size_t i = 1; i < pairs.size(); ++i) {
      if (pairs[i].successes < pairs[w].successes) w = i;
    }
    return w;
  }

  double mean_rate() const {
    if (pairs.empty()) return 0.0;
    std::uint64_t total = 0;
    for (const auto& p : pairs) total += p.successes;
    return static_cast<double>(total) / (static_cast<double>(runs) * static_cast<double>(pairs.size()));
  }
};

/// Runs the protocol `runs` times on every pair and scores each output
/// against direct evaluation of f(x xor y). Run j uses the public coins of
/// SharedRandomness(seed, j) for every pair, so results do not depend on the
/// worker count. Throws VerificationError if a run's cost differs from the
/// declared cost.
template <SmpProtocol P>
SuccessTable monte_carlo_success(const P& protocol, std::span<const InputPair> pairs, std::uint64_t runs,
                                 std::uint64_t seed, unsigned workers = worker_count()) {
  if (runs < 1) throw std::invalid_argument("runs must be at least 1");
  SuccessTable table;
  table.arity = protocol.arity();
  table.runs = runs;
  table.cost = protocol.cost();
  table.pairs.reserve(pairs.size());

  // Distinct inputs per side, so each message is computed once per run.
  std::vector<std::uint64_t> xs;
  std::vector<std::uint64_t> ys;
  for (const auto& [x, y] : pairs) {
    if (((x | y) & ~low_mask(protocol.arity())) != 0) throw std::invalid_argument("input pair has more than n bits");
    xs.push_back(x);
    ys.push_back(y);
    table.pairs.push_back({x, y, 0});
  }
  auto dedup = [](std::vector<std::uint64_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedup(xs);
  dedup(ys);
  std::vector<std::uint32_t> xi(pairs.size());
  std::vector<std::uint32_t> yi(pairs.size());
  std::vector<bool> expected(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    xi[i] = static_cast<std::uint32_t>(std::lower_bound(xs.begin(), xs.end(), pairs[i].first) - xs.begin());
    yi[i] = static_cast<std::uint32_t>(std::lower_bound(ys.begin(), ys.end(), pairs[i].second) - ys.begin());
    expected[i] = protocol.target(pairs[i].first ^ pairs[i].second);
  }

  workers = std::max(1u, workers);
  std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(pairs.size(), 0));
  parallel_blocks(runs, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
    auto& successes = partial[w];
    std::vector<BitVector> alice(xs.size());
    std::vector<BitVector> bob(ys.size());
    for (std::uint64_t run = begin; run < end; ++run) {
      const auto coins = protocol.draw(SharedRandomness(seed, run));
      for (std::size_t i = 0; i < xs.size(); ++i) alice[i] = protocol.alice(coins, xs[i]);
      for (std::size_t i = 0; i < ys.size(); ++i) bob[i] = protocol.bob(coins, ys[i]);
      if (!xs.empty() && alice[0].size() + bob[0].size() != table.cost) {
        throw VerificationError("protocol cost differs from its declared budget");
      }
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        successes[i] += protocol.referee(coins, alice[xi[i]], bob[yi[i]]) == expected[i];
      }
    }
  });
  for (const auto& part : partial) {
    for (std::size_t i = 0; i < pairs.size(); ++i) table.pairs[i].successes += part[i];
  }
  return table;
}

}  // namespace xorcomm

#endif  // XORCOMM_PROTOCOLS_HPP
