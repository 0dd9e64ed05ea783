#include <gtest/gtest.h>

#include "support.hpp"
#include "tpkit/production.hpp"
#include "tpkit/trimat.hpp"

using namespace tpkit;
using namespace tpkit::testing;

namespace {

TriMatrix pascal() { return triangle_of("pascal", pascal_entry); }
TriMatrix stirling2() {
  return triangle_of("stirling2", [](std::size_t n, std::size_t k) { return stirling2_entry(n + 1, k + 1); });
}
TriMatrix stirling2_unshifted() { return triangle_of("S", stirling2_entry); }
TriMatrix lah() {
  return triangle_of("lah", [](std::size_t n, std::size_t k) { return lah_entry(n + 1, k + 1); });
}
TriMatrix stirling1() { return triangle_of("c", stirling1_entry); }
TriMatrix eulerian() { return triangle_of("eulerian", eulerian_entry); }
TriMatrix whitney(long m, long r) {
  return triangle_of("w", [m, r](std::size_t n, std::size_t k) { return whitney_entry(m, r, n, k); });
}

FiniteMatrix all_ones(std::size_t m) {
  return block_of([](std::size_t, std::size_t) { return ExactScalar(1); }, m);
}

// Nonzero-diagonal triangles used by the round-trip and grid properties.
std::vector<TriMatrix> fleet() {
  return {pascal(), stirling2(), stirling1(), lah(), whitney(2, 1), whitney(1, 3), whitney(3, 0), eulerian()};
}

}  // namespace

TEST(LeftProduction, PascalGivesAllOnes) { EXPECT_EQ(left_production(pascal(), 4), all_ones(4)); }

TEST(LeftProduction, IdentityIsFixed) {
  TriMatrix id = TriMatrix::from_finite("id", FiniteMatrix::identity(6));
  EXPECT_EQ(left_production(id, 5), FiniteMatrix::identity(6));
}

TEST(LeftProduction, WhitneyMatchesOrdinaryRiordanBlock) {
  // Column k of R(1/(1-t), t/(1-2t)) is t^k / ((1-t)(1-2t)^k).
  FiniteMatrix expect(6, 6);
  for (std::size_t k = 0; k <= 5; ++k) {
    // coefficients of 1/(1-2t)^k: C(k-1+i, i) 2^i
    for (std::size_t n = k; n <= 5; ++n) {
      ExactScalar acc = 0;
      for (std::size_t i = 0; i <= n - k; ++i) {
        ExactScalar c = k == 0 ? ExactScalar(i == 0 ? 1 : 0) : binomial(k - 1 + i, i);
        acc += c * pow(ExactScalar(2), i);
      }
      expect(n, k) = acc;
    }
  }
  EXPECT_EQ(left_production(whitney(2, 1), 5), expect);
}

TEST(LeftProduction, ZeroDiagonalIsReported) {
  TriMatrix z = TriMatrix::from_finite("z", ints({{1, 0, 0}, {1, 0, 0}, {1, 1, 1}}));
  EXPECT_NO_THROW(left_production(z, 1));
  try {
    left_production(z, 2);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::singular_diagonal);
  }
}

TEST(LeftProduction, LowerTriangularWithSameDiagonal) {
  for (const auto& a : fleet()) {
    FiniteMatrix q = left_production(a, 7);
    EXPECT_TRUE(q.is_lower_triangular()) << a.name();
    for (std::size_t i = 0; i <= 7; ++i) EXPECT_EQ(q(i, i), a.entry(i, i)) << a.name();
  }
}

TEST(LeftProduction, LeadingBlockIsStable) {
  for (const auto& a : fleet())
    for (std::size_t r = 0; r <= 6; ++r) EXPECT_TRUE(production_is_stable(a, r)) << a.name() << " r=" << r;
}

TEST(LeftProduction, LazyTriangleRowsMatchFiniteBlocks) {
  TriMatrix q = production_matrix(stirling2());
  EXPECT_EQ(q.name(), "Q(stirling2)");
  EXPECT_EQ(q.leading_principal(6), left_production(stirling2(), 6));
}

TEST(Reconstruct, AllOnesGivesPascal) { EXPECT_EQ(reconstruct(all_ones(4)), block_of(pascal_entry, 4)); }

TEST(Reconstruct, IdentityIsFixed) { EXPECT_EQ(reconstruct(FiniteMatrix::identity(6)), FiniteMatrix::identity(6)); }

TEST(Reconstruct, RoundTripForFleet) {
  for (const auto& a : fleet())
    for (std::size_t m = 0; m <= 8; ++m)
      EXPECT_EQ(reconstruct(left_production(a, m)), a.leading_principal(m)) << a.name() << " m=" << m;
}

TEST(Reconstruct, SingularProductionIsAllowed) {
  // A Q with a zero on the diagonal still defines A.
  FiniteMatrix q = ints({{1, 0, 0}, {1, 0, 0}, {2, 1, 1}});
  FiniteMatrix a = reconstruct(q);
  EXPECT_EQ(a, q * embed(1, q.block(0, 0, 2, 2), 0) * embed(2, q.block(0, 0, 1, 1), 0));
  TriMatrix t = triangle_from_production(TriMatrix::from_finite("q", q), "a");
  EXPECT_EQ(t.leading_principal(2), a);
}

TEST(BuildMnr, SingleFactorIsQ) {
  FiniteMatrix q = left_production(stirling2(), 3);
  EXPECT_EQ(build_Mnr(q, 0), q);
}

TEST(BuildMnr, PascalSmallCase) {
  EXPECT_EQ(build_Mnr(all_ones(1), 1), ints({{1, 0, 0}, {1, 1, 0}, {0, 1, 1}}));
}

TEST(BuildMnr, IdentityStaysIdentity) {
  EXPECT_EQ(build_Mnr(FiniteMatrix::identity(3), 4), FiniteMatrix::identity(7));
}

TEST(ToeplitzViaMnr, Examples) {
  EXPECT_EQ(toeplitz_via_Mnr(pascal(), 1, 1), ints({{1, 1}, {0, 1}}));
  EXPECT_EQ(toeplitz_via_Mnr(stirling2(), 0, 0), ints({{1}}));
  EXPECT_EQ(toeplitz_via_Mnr(stirling2_unshifted(), 3, 3),
            toeplitz(row_of({0, 1, 3, 1}), 3).transpose());
}

TEST(ThmT, GridHoldsForFleet) {
  for (const auto& a : fleet()) {
    auto rep = verify_thm_T(a, 5, 5);
    EXPECT_TRUE(rep.pass) << a.name();
    EXPECT_EQ(rep.pairs_checked, 36u);
  }
  EXPECT_TRUE(verify_thm_T(pascal(), 4, 4).pass);
  EXPECT_TRUE(verify_thm_T(TriMatrix::from_finite("id", FiniteMatrix::identity(12)), 5, 5).pass);
}

TEST(ThmT, WrongProductionReportsMismatch) {
  TriMatrix q = TriMatrix::from_finite("bad", ints({{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 1, 1, 1}}));
  auto rep = verify_thm_T(pascal(), q, 3, 3);
  EXPECT_FALSE(rep.pass);
  ASSERT_TRUE(rep.mismatch.has_value());
  EXPECT_NE(rep.mismatch->toeplitz_side, rep.mismatch->production_side);
}

TEST(ThmMain, StirlingAndLahPass) {
  for (const auto& a : {stirling2(), lah()}) {
    auto rep = verify_thm_main(a, 6);
    EXPECT_TRUE(rep.hypothesis_tp) << a.name();
    EXPECT_TRUE(rep.A_tp);
    EXPECT_TRUE(rep.rev_tp);
    EXPECT_TRUE(rep.rows_real_rooted);
    EXPECT_FALSE(rep.contradiction());
  }
}

TEST(ThmMain, EulerianHypothesisFails) {
  auto rep = verify_thm_main(eulerian(), 5);
  EXPECT_TRUE(rep.hypothesis_failed());
  ASSERT_TRUE(rep.hypothesis_witness.has_value());
  EXPECT_LT(rep.hypothesis_witness->value.sign(), 0);
  EXPECT_TRUE(rep.A_tp);
  EXPECT_TRUE(rep.rows_real_rooted);
  EXPECT_FALSE(rep.contradiction());
}

TEST(ThmMain, TotallyPositiveProductionImpliesConclusions) {
  // Q built as a product of random nonnegative bidiagonals is TP; A = reconstruct(Q).
  Gen g(7);
  for (int trial = 0; trial < 12; ++trial) {
    std::size_t m = static_cast<std::size_t>(g.integer(2, 5));
    FiniteMatrix q = FiniteMatrix::identity(m + 1);
    for (int k = 0; k < 3; ++k) q = q * random_bidiagonal(g, m + 1, 2);
    ASSERT_TRUE(is_tp_to_order(q).tp);
    FiniteMatrix a = reconstruct(q);
    auto rep = verify_thm_main(q, a);
    EXPECT_TRUE(rep.hypothesis_tp);
    EXPECT_TRUE(rep.conclusions_hold());
  }
}
