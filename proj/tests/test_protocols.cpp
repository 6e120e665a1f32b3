#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "xorcomm/protocols.hpp"

using namespace xorcomm;

namespace {

// Binomial 3-sigma slack for a proportion p estimated from `trials` draws.
double three_sigma(double p, double trials) { return 3.0 * std::sqrt(p * (1.0 - p) / trials); }

}  // namespace

TEST(Random, SharedStreamsAreReproducible) {
  const SharedRandomness a(5, 3);
  const SharedRandomness b(5, 3);
  Engine ea = a.engine();
  Engine eb = b.engine();
  for (int i = 0; i < 10; ++i) EXPECT_EQ(ea(), eb());
  EXPECT_NE(SharedRandomness(5, 3).engine()(), SharedRandomness(5, 4).engine()());
  EXPECT_NE(SharedRandomness(5, 3).engine()(), SharedRandomness(6, 3).engine()());
}

TEST(Random, UniformBelowIsUniform) {
  Engine eng(1);
  std::vector<int> counts(6, 0);
  const int draws = 60000;
  for (int i = 0; i < draws; ++i) ++counts[uniform_below(eng, 6)];
  for (int c : counts) EXPECT_NEAR(c / double(draws), 1.0 / 6.0, three_sigma(1.0 / 6.0, draws));
  EXPECT_THROW(uniform_below(eng, 0), std::invalid_argument);
}

TEST(Grolmusz, SampleCount) {
  const GrolmuszProtocol p(wht(addressing_function(2)));
  EXPECT_DOUBLE_EQ(p.spectral_norm(), 4.0);
  EXPECT_EQ(p.samples(), static_cast<std::size_t>(std::ceil(2.0 * 16.0 * std::log(6.0))));
  EXPECT_EQ(p.cost(), 2 * p.samples());
  EXPECT_THROW(GrolmuszProtocol(wht(parity_function(2)), 0.0), std::invalid_argument);
  EXPECT_THROW(GrolmuszProtocol(wht(parity_function(2)), 1.0), std::invalid_argument);
}

TEST(Grolmusz, ParityIsExact) {
  const auto f = parity_function(4);
  const GrolmuszProtocol p(wht(f));
  const auto table = monte_carlo_success(p, all_pairs(4), 20, 1, 2);
  for (std::size_t i = 0; i < table.pairs.size(); ++i) EXPECT_EQ(table.rate(i), 1.0);
  const auto run = grolmusz_run(wht(f), 3, 5, SharedRandomness(1));
  EXPECT_EQ(run.output, f(3 ^ 5));
  EXPECT_EQ(run.cost, p.cost());
}

TEST(Grolmusz, SamplerMarginals) {
  const auto f = addressing_function(2);
  const auto c = oracle::spectrum(f);
  double l1 = 0;
  for (auto v : c) l1 += std::abs(static_cast<double>(v));
  const GrolmuszProtocol p(wht(f));
  const std::vector<SubsetMask> support = wht(f).support();
  std::vector<std::uint64_t> counts(f.size(), 0);
  Engine eng = SharedRandomness(77).engine();
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) ++counts[support[p.sample_index(eng)].bits];
  for (std::uint64_t s = 0; s < f.size(); ++s) {
    const double expected = std::abs(static_cast<double>(c[s])) / l1;
    EXPECT_DOUBLE_EQ(p.probability(SubsetMask{s}), expected);
    EXPECT_NEAR(counts[s] / double(draws), expected, three_sigma(expected, draws)) << s;
  }
}

TEST(Grolmusz, EstimatorIsUnbiased) {
  // E[chi_S(z) sgn fhat(S)] = F(z) / ||fhat||_1 with F = 1 - 2f.
  const auto f = addressing_function(2);
  const GrolmuszProtocol p(wht(f));
  const auto support = wht(f).support();
  const auto spec = wht(f);
  Engine eng = SharedRandomness(78).engine();
  const int draws = 100000;
  for (std::uint64_t z : {0ull, 5ull, 21ull, 63ull, 34ull}) {
    double sum = 0;
    for (int i = 0; i < draws; ++i) {
      const SubsetMask s = support[p.sample_index(eng)];
      sum += character(s, z) * (spec[s] < 0 ? -1 : 1);
    }
    const double target = (f(z) ? -1.0 : 1.0) / 4.0;
    // Each term is +-1 with mean target, so its variance is 1 - target^2.
    EXPECT_NEAR(sum / draws, target, 3.0 * std::sqrt((1.0 - target * target) / draws)) << z;
  }
}

TEST(Grolmusz, TieResolvesToPlusOne) {
  // With k = 2 on a single-set support a tie needs one agreeing and one
  // disagreeing term, so drive the referee directly.
  const GrolmuszProtocol p(wht(parity_function(2)), 0.5);
  ASSERT_EQ(p.samples(), 2u);
  GrolmuszProtocol::Coins coins;
  coins.sets = {3, 3};
  coins.negative = BitVector(2);
  BitVector a(2);
  const BitVector b(2);
  EXPECT_FALSE(p.referee(coins, a, b));  // +1 +1
  a.set(0, true);
  EXPECT_FALSE(p.referee(coins, a, b));  // -1 +1: tie counts as +1, so f = 0
  a.set(1, true);
  EXPECT_TRUE(p.referee(coins, a, b));  // -1 -1
}

TEST(Membership, FingerprintLength) {
  EXPECT_EQ(fingerprint_length(0), 2);
  EXPECT_EQ(fingerprint_length(1), 2);
  EXPECT_EQ(fingerprint_length(2), 3);
  EXPECT_EQ(fingerprint_length(3), 4);
  EXPECT_EQ(fingerprint_length(100), 9);
  for (std::size_t s = 1; s < 2000; ++s) {
    const int k = fingerprint_length(s);
    EXPECT_GE(std::uint64_t{1} << k, 3 * s);
    EXPECT_LT(std::uint64_t{1} << (k - 1), 3 * s);
  }
}

TEST(Membership, PerfectCompletenessExhaustive) {
  std::mt19937_64 rng(51);
  for (int n = 1; n <= 8; ++n) {
    const std::uint64_t size = std::uint64_t{1} << n;
    std::vector<std::uint64_t> elements;
    for (std::uint64_t z = 0; z < size; ++z) {
      if (rng() % 5 == 0) elements.push_back(z);
    }
    if (elements.empty()) elements.push_back(0);
    const DisagreementSet set(n, elements);
    const int k = fingerprint_length(set.size());
    for (std::uint64_t run = 0; run < 4; ++run) {
      const MembershipCheck check(set, k);
      Engine eng = SharedRandomness(9, run).engine();
      const auto coins = check.draw(eng);
      for (std::uint64_t z : set.elements()) {
        for (std::uint64_t x = 0; x < size; ++x) {
          const std::uint64_t y = x ^ z;
          ASSERT_TRUE(MembershipCheck::accepts(coins, MembershipCheck::fingerprint(coins, x),
                                               MembershipCheck::fingerprint(coins, y)));
        }
      }
    }
  }
}

TEST(Membership, EqualitySpecialCase) {
  const DisagreementSet set(5, {0});
  for (std::uint64_t x = 0; x < 32; ++x) EXPECT_TRUE(equality_shift_check(set, x, x, SharedRandomness(x), 2));
  EXPECT_THROW(equality_shift_check(set, 0, 0, SharedRandomness(1), 0), std::invalid_argument);
  EXPECT_THROW(equality_shift_check(DisagreementSet(5, {}), 0, 0, SharedRandomness(1), 2), std::invalid_argument);
}

TEST(Membership, FalsePositiveRateWithinUnionBound) {
  const DisagreementSet set(8, {0, 3, 17, 200, 255});
  const int k = fingerprint_length(set.size());
  const double bound = static_cast<double>(set.size()) / std::ldexp(1.0, k);
  ASSERT_LE(bound, 1.0 / 3.0);
  const int runs = 4000;
  for (std::uint64_t z : {1ull, 2ull, 128ull, 77ull}) {
    ASSERT_FALSE(set.contains(z));
    int accepted = 0;
    for (int run = 0; run < runs; ++run) accepted += equality_shift_check(set, 9, 9 ^ z, SharedRandomness(3, run), k);
    EXPECT_LE(accepted / double(runs), bound + three_sigma(bound, runs)) << z;
  }
}

TEST(NearParity, DisagreementSetSize) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const auto f = oracle::random_function(n, rng);
    const auto c = oracle::spectrum(f);
    std::int64_t best = 0;
    for (auto v : c) best = std::max(best, std::abs(v));
    const auto approx = best_parity_approximation(f);
    // 2^{n-1} (1 - ||fhat||_inf) = (2^n - 2^n ||fhat||_inf) / 2.
    EXPECT_EQ(static_cast<std::int64_t>(approx.disagreements.size()) * 2, (std::int64_t{1} << n) - best);
    EXPECT_EQ(std::abs(c[approx.parity.bits]), best);
    for (std::uint64_t z = 0; z < f.size(); ++z) {
      const bool differs = (f(z) ? -1 : 1) != approx.sign * character(approx.parity, z);
      ASSERT_EQ(approx.disagreements.contains(z), differs);
    }
  }
}

TEST(NearParity, ExactParityCostsTwo) {
  const auto f = BooleanFunction::tabulate(5, [](std::uint64_t x) { return inner_product(x, 0b10110) == 1; });
  const NearParityProtocol p(f);
  EXPECT_EQ(p.parity().bits, 0b10110u);
  EXPECT_TRUE(p.disagreements().empty());
  EXPECT_EQ(p.cost(), 2u);
  const auto table = monte_carlo_success(p, all_pairs(5), 5, 1, 1);
  for (std::size_t i = 0; i < table.pairs.size(); ++i) EXPECT_EQ(table.rate(i), 1.0);
  // A negated parity uses sign -1.
  const NearParityProtocol q(complement(f));
  EXPECT_EQ(q.sign(), -1);
  EXPECT_EQ(q.cost(), 2u);
  const auto negated = monte_carlo_success(q, all_pairs(5), 5, 1, 1);
  for (std::size_t i = 0; i < negated.pairs.size(); ++i) EXPECT_EQ(negated.rate(i), 1.0);
}

TEST(NearParity, ZeroIndicator) {
  const NearParityProtocol p(zero_indicator(6));
  EXPECT_TRUE(p.parity().empty());
  EXPECT_EQ(p.disagreements().size(), 1u);
  EXPECT_EQ(p.fingerprint_bits(), 2);
  EXPECT_EQ(p.cost(), 6u);
  for (std::uint64_t z = 0; z < 64; ++z) EXPECT_EQ(p.target(z), z == 0);
  const auto table = monte_carlo_success(p, sample_pairs(6, 200, SharedRandomness(4)), 300, 4, 2);
  EXPECT_GE(table.rate(table.worst()), 2.0 / 3.0);
}

TEST(NearParity, RandomFunctionArity6) {
  std::mt19937_64 rng(53);
  // Perturb a parity on a few inputs so the protocol has a small set to test.
  std::vector<bool> flipped(64, false);
  for (int i = 0; i < 5; ++i) flipped[rng() & 63u] = true;
  const auto f = BooleanFunction::tabulate(6, [&](std::uint64_t x) {
    return (inner_product(x, 0b110101) == 1) != flipped[x];
  });
  const NearParityProtocol p(f);
  for (std::uint64_t z = 0; z < 64; ++z) ASSERT_EQ(p.target(z), f(z));
  // Five disagreements and k = 4 leave the union bound at 1 - 5/16, only 0.02
  // above 2/3, so the run count must resolve rates to well under that gap.
  ASSERT_EQ(p.disagreements().size(), 5u);
  ASSERT_EQ(p.fingerprint_bits(), 4);
  const auto table = monte_carlo_success(p, sample_pairs(6, 256, SharedRandomness(5)), 8000, 5, 4);
  EXPECT_GE(table.rate(table.worst()), 2.0 / 3.0);
  const auto run = near_parity_run(p.parity(), p.sign(), p.disagreements(), 1, 2, SharedRandomness(1));
  EXPECT_EQ(run.cost, p.cost());
}

TEST(NearParity, UniformRandomFunctionArity6) {
  std::mt19937_64 rng(57);
  for (int trial = 0; trial < 3; ++trial) {
    const auto f = oracle::random_function(6, rng);
    const NearParityProtocol p(f);
    for (std::uint64_t z = 0; z < 64; ++z) ASSERT_EQ(p.target(z), f(z));
    const auto table = monte_carlo_success(p, sample_pairs(6, 256, SharedRandomness(trial)), 400, 6, 4);
    EXPECT_GE(table.rate(table.worst()), 2.0 / 3.0) << "trial " << trial << " |S|=" << p.disagreements().size();
  }
}

TEST(ParityProbability, Examples) {
  const std::vector<double> one{0.25};
  EXPECT_DOUBLE_EQ(parity_prob_exact(one, 1), 0.25);
  EXPECT_DOUBLE_EQ(parity_prob_exact(one, 0), 0.0);
  const std::vector<double> two{0.5, 0.5};
  EXPECT_DOUBLE_EQ(parity_prob_exact(two, 3), 0.5);
  const std::vector<double> bad{1.5};
  EXPECT_THROW(parity_prob_exact(bad, 1), std::invalid_argument);
  EXPECT_THROW(parity_prob_exact(one, 2), std::invalid_argument);
}

TEST(ParityProbability, MatchesRecurrence) {
  std::mt19937_64 rng(54);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 16);
    std::vector<double> p(static_cast<std::size_t>(n));
    for (auto& v : p) v = unit(rng);
    const std::uint64_t x = rng() & low_mask(n);
    ASSERT_NEAR(parity_prob_exact(p, x), oracle::parity_prob_recurrence(p, x), 1e-12);
  }
}

TEST(ParityProbability, MatchesSampling) {
  const std::vector<double> p{0.1, 0.3, 0.45, 0.2};
  Engine eng(55);
  const int draws = 100000;
  for (std::uint64_t x : {1ull, 6ull, 15ull}) {
    int ones = 0;
    for (int i = 0; i < draws; ++i) {
      std::uint64_t r = 0;
      for (std::size_t b = 0; b < p.size(); ++b) {
        if (bernoulli(eng, p[b])) r |= std::uint64_t{1} << b;
      }
      ones += inner_product(r, x);
    }
    const double q = parity_prob_exact(p, x);
    EXPECT_NEAR(ones / double(draws), q, three_sigma(q, draws));
  }
}

TEST(LtfProtocol, Majority7TimesFour) {
  const LtfProtocol p(majority_ltf(7, 4.0));
  EXPECT_EQ(p.samples(), 2352u);
  EXPECT_EQ(p.cost(), 4704u);
  EXPECT_DOUBLE_EQ(p.scaled().theta(), 14.0);  // no rescaling needed
  const double base = 1.0 - 1.0 / 14.0;
  for (double q : p.bit_probabilities()) EXPECT_NEAR(q, 0.5 * (1.0 - std::pow(base, 4.0)), 1e-15);
  EXPECT_NEAR(p.referee_threshold(), 0.5 * (1.0 - 0.5 * (std::pow(base, 12.0) + std::pow(base, 16.0))), 1e-15);
}

TEST(LtfProtocol, MarginalMatchesClosedForm) {
  for (const auto& ltf : {majority_ltf(7, 4.0), LinearThresholdFunction({3, 2.5, 2, 1, 0.5}, 4.2)}) {
    const LtfProtocol p(ltf);
    const double theta = p.scaled().theta();
    for (std::uint64_t z = 0; z < (std::uint64_t{1} << ltf.arity()); ++z) {
      const double closed = 0.5 * (1.0 - std::pow(1.0 - 1.0 / theta, p.scaled().weighted_sum(z)));
      EXPECT_NEAR(p.marginal(z), closed, 1e-12);
      EXPECT_NEAR(parity_prob_exact(p.bit_probabilities(), z), closed, 1e-12);
    }
    EXPECT_EQ(p.marginal(0), 0.0);
  }
}

TEST(LtfProtocol, EmpiricalMarginal) {
  const LtfProtocol p(majority_ltf(7, 4.0));
  std::uint64_t ones = 0;
  std::uint64_t total = 0;
  const std::uint64_t z = 0b0101011;
  for (std::uint64_t run = 0; run < 40; ++run) {
    const auto coins = p.draw(SharedRandomness(6, run));
    ones += hamming_distance(p.alice(coins, z), p.bob(coins, 0));
    total += coins.size();
  }
  const double q = p.marginal(z);
  EXPECT_NEAR(ones / double(total), q, three_sigma(q, double(total)));
}

TEST(LtfProtocol, SeparationBound) {
  std::mt19937_64 rng(56);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  std::vector<LinearThresholdFunction> ltfs{majority_ltf(7, 4.0), majority_ltf(3), majority_ltf(5, 2.0)};
  while (ltfs.size() < 40) {
    const int n = 2 + static_cast<int>(rng() % 7);
    std::vector<double> w(static_cast<std::size_t>(n));
    for (auto& v : w) v = unit(rng);
    std::sort(w.rbegin(), w.rend());
    double total = 0;
    for (double v : w) total += v;
    try {
      const LinearThresholdFunction candidate(w, (0.2 + 0.6 * unit(rng)) * total);
      // The protocol refuses more than 1e9 samples; those instances are covered below.
      const double ratio = candidate.theta() / candidate.margin();
      if (48.0 * ratio * ratio <= 1e9) ltfs.push_back(candidate);
    } catch (const std::invalid_argument&) {
    }
  }
  EXPECT_THROW(LtfProtocol(LinearThresholdFunction({1.0, 1.0}, 1.0 + 1e-6)), std::invalid_argument);
  for (const auto& ltf : ltfs) {
    if (std::isinf(ltf.m0()) || std::isinf(ltf.m1())) continue;
    const LtfProtocol p(ltf);
    const auto& s = p.scaled();
    EXPECT_GT(s.m0(), 1.0);
    EXPECT_GT(s.m1(), 1.0);
    EXPECT_GT(s.theta(), 1.0);
    double low_max = 0.0;   // largest marginal where f = 0
    double high_min = 1.0;  // smallest marginal where f = 1
    for (std::uint64_t z = 0; z < (std::uint64_t{1} << ltf.arity()); ++z) {
      (ltf.evaluate(z) ? high_min : low_max) =
          ltf.evaluate(z) ? std::min(high_min, p.marginal(z)) : std::max(low_max, p.marginal(z));
    }
    EXPECT_GE(high_min - low_max, p.separation_bound() - 1e-12);
    EXPECT_GT(p.referee_threshold(), low_max);
    EXPECT_LT(p.referee_threshold(), high_min);
  }
}

TEST(LtfProtocol, Rescaling) {
  const LtfProtocol p(majority_ltf(3));
  EXPECT_NEAR(p.scaled().margin(), 1.0001, 1e-12);
  EXPECT_EQ(ltf_realize(p.scaled()), majority_function(3));
  // k uses the scale-free ratio theta / m = 3.
  EXPECT_EQ(p.samples(), 48u * 9u);
  EXPECT_THROW(LtfProtocol(LinearThresholdFunction({1, 1}, -0.5)), std::invalid_argument);
  EXPECT_THROW(LtfProtocol(majority_ltf(3), 0.0), std::invalid_argument);
}

TEST(LtfProtocol, ZeroInputGivesZero) {
  const LtfProtocol p(majority_ltf(5, 2.0));
  for (std::uint64_t run = 0; run < 5; ++run) {
    const auto r = ltf_protocol_run(majority_ltf(5, 2.0), 7, 7, SharedRandomness(1, run));
    EXPECT_FALSE(r.output);
    EXPECT_EQ(r.cost, p.cost());
  }
}

TEST(Harness, DeterministicAcrossWorkerCounts) {
  const GrolmuszProtocol p(wht(addressing_function(1)));
  const auto pairs = all_pairs(3);
  const auto a = monte_carlo_success(p, pairs, 64, 12, 1);
  const auto b = monte_carlo_success(p, pairs, 64, 12, 3);
  const auto c = monte_carlo_success(p, pairs, 64, 13, 3);
  ASSERT_EQ(a.pairs.size(), 64u);
  bool differs = false;
  for (std::size_t i = 0; i < a.pairs.size(); ++i) {
    EXPECT_EQ(a.pairs[i].successes, b.pairs[i].successes);
    differs = differs || a.pairs[i].successes != c.pairs[i].successes;
  }
  EXPECT_TRUE(differs);
}

TEST(Harness, TranscriptsAreReproducible) {
  const GrolmuszProtocol p(wht(addressing_function(2)));
  const auto r1 = run_protocol(p, 11, 42, SharedRandomness(3, 8));
  const auto r2 = run_protocol(p, 11, 42, SharedRandomness(3, 8));
  EXPECT_EQ(r1.alice, r2.alice);
  EXPECT_EQ(r1.bob, r2.bob);
  EXPECT_EQ(r1.output, r2.output);
  EXPECT_EQ(r1.cost, r2.cost);
}

TEST(Harness, PairSources) {
  EXPECT_EQ(all_pairs(3).size(), 64u);
  const auto a = sample_pairs(10, 100, SharedRandomness(1));
  const auto b = sample_pairs(10, 100, SharedRandomness(1));
  ASSERT_EQ(a.size(), 100u);
  EXPECT_EQ(a, b);
  for (const auto& [x, y] : a) EXPECT_LT(x | y, 1024u);
}
