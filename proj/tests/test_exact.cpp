#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "support.hpp"
#include "tpkit/exact.hpp"

using namespace tpkit;
using tpkit::testing::Gen;

namespace {

Poly P(std::initializer_list<long> c) {
  std::vector<ExactScalar> v;
  for (long x : c) v.emplace_back(x);
  return Poly(v);
}

Poly linear(const ExactScalar& root) { return Poly({-root, ExactScalar(1)}); }

}  // namespace

TEST(ExactScalar, NormalizesSignAndLowestTerms) {
  ExactScalar a(BigInt(6), BigInt(-4));
  EXPECT_EQ(a.numerator(), -3);
  EXPECT_EQ(a.denominator(), 2);
  EXPECT_EQ(a.str(), "-3/2");
  EXPECT_EQ(ExactScalar::parse("-6/4"), a);
  EXPECT_EQ(ExactScalar::parse("12").str(), "12");
}

TEST(ExactScalar, RejectsZeroDenominatorAndGarbage) {
  EXPECT_THROW(ExactScalar(BigInt(1), BigInt(0)), error);
  EXPECT_THROW(ExactScalar::parse("1/0"), error);
  EXPECT_THROW(ExactScalar::parse("1.5"), error);
  EXPECT_THROW(ExactScalar::parse(""), error);
  try {
    ExactScalar(1) / ExactScalar(0);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::division_by_zero);
  }
}

TEST(ExactScalar, FieldLawsOnRandomTriples) {
  Gen g(11);
  for (int trial = 0; trial < 300; ++trial) {
    ExactScalar a = g.rational(-50, 50, 30), b = g.rational(-50, 50, 30), c = g.rational(-50, 50, 30);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    if (!b.is_zero()) {
      EXPECT_EQ((a / b) * b, a);
    }
  }
}

TEST(PolyEval, Examples) {
  EXPECT_EQ(poly_eval(P({1, 3, 1}), 0), ExactScalar(1));
  EXPECT_EQ(poly_eval(Poly{}, 5), ExactScalar(0));
  EXPECT_EQ(poly_eval(P({1, 3, 1}), -1), ExactScalar(-1));
}

TEST(Poly, TrimsTrailingZeros) {
  EXPECT_EQ(P({1, 2, 0, 0}).degree(), 1);
  EXPECT_TRUE(P({0, 0}).is_zero());
  EXPECT_EQ(P({0}).degree(), -1);
}

TEST(SturmCount, Examples) {
  EXPECT_EQ(sturm_real_root_count(P({-1, 0, 1})).distinct, 2u);
  EXPECT_EQ(sturm_real_root_count(P({1, 0, 1})).distinct, 0u);
  EXPECT_EQ(sturm_real_root_count(P({0, 1, 3, 1})).distinct, 3u);
}

TEST(SturmCount, HalfOpenIntervalConvention) {
  Poly p = P({-1, 0, 1});  // roots -1, 1
  EXPECT_EQ(sturm_real_root_count(p, ExactScalar(-1), ExactScalar(1)).distinct, 1u);
  EXPECT_EQ(sturm_real_root_count(p, ExactScalar(-2), ExactScalar(-1)).distinct, 1u);
  EXPECT_EQ(sturm_real_root_count(p, std::nullopt, ExactScalar(0)).distinct, 1u);
  EXPECT_EQ(sturm_real_root_count(p, ExactScalar(1), std::nullopt).distinct, 0u);
}

TEST(SturmCount, MultiplicitiesReportedSeparately) {
  Poly p = linear(1) * linear(1) * linear(1) * linear(-2) * P({1, 0, 1});
  auto rc = sturm_real_root_count(p);
  EXPECT_EQ(rc.distinct, 2u);
  EXPECT_EQ(rc.with_multiplicity, 4u);
}

TEST(SturmCount, ZeroPolynomialRejected) {
  try {
    sturm_real_root_count(Poly{});
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::zero_polynomial);
  }
}

TEST(RealRooted, Examples) {
  EXPECT_TRUE(is_real_rooted(P({7})));
  EXPECT_TRUE(is_real_rooted(P({1, 2, 1})));
  EXPECT_FALSE(is_real_rooted(P({1, 1, 1})));
  EXPECT_TRUE(is_real_rooted(Poly{}));
}

TEST(RealRooted, ProductsOfLinearFactors) {
  Gen g(2024);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t deg = static_cast<std::size_t>(g.integer(1, 8));
    Poly p = P({1});
    for (std::size_t i = 0; i < deg; ++i) p = p * linear(g.rational(-5, 5, 4));
    p = g.rational(1, 9, 3) * p;
    EXPECT_TRUE(is_real_rooted(p));
    EXPECT_FALSE(is_real_rooted(p * P({1, 0, 1})));
  }
}

// Root counts of products of chosen linear factors and irreducible
// quadratics are known by construction.
TEST(SturmCount, ConstructedFactorOracle) {
  Gen g(77);
  for (int trial = 0; trial < 200; ++trial) {
    Poly p = P({1});
    std::set<ExactScalar> roots;
    std::size_t linear_factors = 0;
    int deg = 0;
    const int target = static_cast<int>(g.integer(1, 4));
    while (deg < target) {
      if (target - deg >= 2 && g.coin()) {
        // x^2 + b x + c with b^2 < 4c
        long b = g.integer(-3, 3);
        long c = b * b / 4 + g.integer(1, 4);
        p = p * P({c, b, 1});
        deg += 2;
      } else {
        ExactScalar r = g.rational(-3, 3, 2);
        roots.insert(r);
        ++linear_factors;
        p = p * linear(r);
        deg += 1;
      }
    }
    auto rc = sturm_real_root_count(p);
    EXPECT_EQ(rc.distinct, roots.size());
    EXPECT_EQ(rc.with_multiplicity, linear_factors);
    EXPECT_EQ(is_real_rooted(p), linear_factors == static_cast<std::size_t>(deg));
  }
}

// Degree <= 3 integer polynomials with nonzero discriminant: sign of the
// discriminant fixes the number of real roots.
TEST(SturmCount, DiscriminantOracle) {
  Gen g(5);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    long a = g.integer(1, 4), b = g.integer(-6, 6), c = g.integer(-6, 6), d = g.integer(-6, 6);
    if (g.coin()) {
      long disc = b * b - 4 * a * c;
      if (disc == 0) continue;
      EXPECT_EQ(sturm_real_root_count(P({c, b, a})).distinct, disc > 0 ? 2u : 0u);
    } else {
      long disc = 18 * a * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * a * c * c * c - 27 * a * a * d * d;
      if (disc == 0) continue;
      EXPECT_EQ(sturm_real_root_count(P({d, c, b, a})).distinct, disc > 0 ? 3u : 1u);
    }
    ++checked;
  }
  EXPECT_GT(checked, 300);
}

TEST(Poly, SquareFreeDecompositionRebuildsInput) {
  Poly f1 = linear(2) * P({1, 1, 1});
  Poly f2 = linear(-1);
  Poly f3 = linear(ExactScalar(BigInt(1), BigInt(3)));
  Poly p = ExactScalar(5) * f1 * f2 * f2 * f3 * f3 * f3;
  auto dec = square_free_decomposition(p);
  Poly rebuilt = P({1});
  for (const auto& [f, m] : dec)
    for (std::size_t i = 0; i < m; ++i) rebuilt = rebuilt * f;
  EXPECT_EQ(make_monic(p), rebuilt);
  EXPECT_EQ(square_free_part(p), make_monic(f1 * f2 * f3));
}
