#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "xorcomm/comm_matrix.hpp"

using namespace xorcomm;

TEST(CommMatrix, EntriesAndSymmetry) {
  std::mt19937_64 rng(31);
  const auto f = oracle::random_function(6, rng);
  const CommMatrixView m(f);
  for (int i = 0; i < 500; ++i) {
    const std::uint64_t x = rng() & 63u;
    const std::uint64_t y = rng() & 63u;
    EXPECT_EQ(m.entry(x, y), f(x ^ y) ? -1 : 1);
    EXPECT_EQ(m.entry(x, y), m.entry(y, x));
  }
}

TEST(CommMatrix, RankExamples) {
  for (int n = 1; n <= 6; ++n) {
    EXPECT_EQ(matrix_rank(parity_function(n)), 1u);
    EXPECT_EQ(matrix_rank(constant_function(n, false)), 1u);
    EXPECT_EQ(matrix_rank(constant_function(n, true)), 1u);
  }
  EXPECT_EQ(matrix_rank(and_function(2)), 4u);
  EXPECT_EQ(elimination_rank(and_function(2)), 4);
}

TEST(CommMatrix, BareissOnKnownMatrices) {
  // 3x3 of rank 2, and a singular 4x4 with a zero pivot that needs a swap.
  EXPECT_EQ(bareiss_rank<long long>({1, 2, 3, 4, 5, 6, 7, 8, 9}, 3, 3), 2);
  EXPECT_EQ(bareiss_rank<long long>({0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1}, 4, 4), 3);
  EXPECT_EQ(bareiss_rank<long long>({2, 4, 1, 2}, 2, 2), 1);
  EXPECT_EQ(bareiss_rank<long long>({1, 0, 0, 0, 1, 0}, 2, 3), 2);
}

TEST(CommMatrix, EliminationAgreesWithSpectrumAtLargerArity) {
  std::mt19937_64 rng(32);
  for (int n = 5; n <= 7; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      const auto f = oracle::random_function(n, rng);
      EXPECT_EQ(static_cast<std::uint64_t>(elimination_rank(f)), oracle::support_size(oracle::spectrum(f)));
    }
  }
  // A low-rank function at n = 6: depends on a 2-dimensional subspace.
  const auto g = BooleanFunction::tabulate(6, [](std::uint64_t x) { return inner_product(x, 0b000111) && inner_product(x, 0b111000); });
  EXPECT_EQ(elimination_rank(g), 4);
  EXPECT_THROW(elimination_rank(constant_function(9, false)), std::invalid_argument);
}

TEST(CommMatrix, OneWayExamples) {
  for (int n = 1; n <= 6; ++n) {
    EXPECT_EQ(one_way_complexity(parity_function(n)), 1);
    EXPECT_EQ(one_way_complexity(constant_function(n, true)), 0);
  }
  EXPECT_EQ(one_way_complexity(and_function(2)), 2);
  EXPECT_EQ(distinct_rows(and_function(2)), 4u);
}

TEST(CommMatrix, DistinctRowsMatchesOracle) {
  std::mt19937_64 rng(33);
  for (int n = 1; n <= 7; ++n) {
    const auto f = oracle::random_function(n, rng);
    EXPECT_EQ(distinct_rows(f), oracle::distinct_rows(f));
  }
}

TEST(CommMatrix, ExhaustiveRankAndRowIdentitiesUpToThree) {
  for (int n = 1; n <= 3; ++n) {
    for (std::uint64_t index = 0; index < (std::uint64_t{1} << (1u << n)); ++index) {
      const auto f = oracle::function_by_index(n, index);
      const auto sparsity = oracle::support_size(oracle::spectrum(f));
      ASSERT_EQ(static_cast<std::uint64_t>(elimination_rank(f)), sparsity);
      const auto rows = oracle::distinct_rows(f);
      ASSERT_EQ(rows, std::uint64_t{1} << one_way_complexity(f));
      ASSERT_EQ(static_cast<int>(std::ceil(std::log2(static_cast<double>(rows)))), one_way_complexity(f));
    }
  }
}

TEST(CommMatrix, BoundsMajority3) {
  const auto f = majority_function(3);
  const auto ltf = majority_ltf(3);
  const auto r = bounds_report(f, &ltf);
  EXPECT_EQ(r.sparsity, oracle::support_size(oracle::spectrum(f)));
  EXPECT_DOUBLE_EQ(r.lb_classical, 2.0);
  EXPECT_DOUBLE_EQ(r.lb_quantum, 1.0);
  ASSERT_TRUE(r.ub_monotone.has_value());
  EXPECT_DOUBLE_EQ(*r.ub_monotone, 16.0);
  ASSERT_TRUE(r.lb_ltf.has_value());
  EXPECT_EQ(*r.lb_ltf, 2);
}

TEST(CommMatrix, BoundsPresenceFollowsHypotheses) {
  const auto parity = bounds_report(parity_function(4));
  EXPECT_DOUBLE_EQ(parity.lb_classical, 0.0);
  EXPECT_FALSE(parity.ub_monotone.has_value());
  EXPECT_FALSE(parity.lb_ltf.has_value());

  const auto addressing = addressing_function(2);
  const auto r = bounds_report(addressing);
  const double sparsity = static_cast<double>(oracle::support_size(oracle::spectrum(addressing)));
  EXPECT_DOUBLE_EQ(r.lb_quantum, 0.5 * std::log2(sparsity));
  EXPECT_FALSE(r.ub_monotone.has_value());

  // An LTF that ignores x3 gets no LTF bound.
  const LinearThresholdFunction partial({1, 1, 0.1}, 1.5);
  const auto f = ltf_realize(partial);
  ASSERT_FALSE(depends_on(f, 2));
  EXPECT_FALSE(bounds_report(f, &partial).lb_ltf.has_value());

  const auto wrong = majority_ltf(3);
  EXPECT_THROW(bounds_report(and_function(3), &wrong), std::invalid_argument);
}

TEST(CommMatrix, BoundsConsistentSampled) {
  for (std::uint64_t index = 0; index < 65536; index += 7) {
    const auto r = bounds_report(oracle::function_by_index(4, index));
    if (r.ub_monotone) {
      EXPECT_LE(r.lb_classical, *r.ub_monotone);
    }
  }
}

TEST(CommMatrix, AddressingWitness) {
  for (int m = 1; m <= 3; ++m) EXPECT_EQ(addressing_vc_witness(m), std::uint64_t{1} << m);
  EXPECT_THROW(addressing_vc_witness(0), std::invalid_argument);
}
