#include <gtest/gtest.h>

#include "ffarith/localfield/expr.hpp"
#include "ffarith/twisted/twisted_poly.hpp"
#include "support/gen.hpp"

using namespace ffarith;
using ffarith::testing::random_elem;
using ffarith::testing::uniform;

namespace {

TwistedPoly tw(const char* text, int q, int m = 1) { return parse_twisted(text, GaloisField::of_size(q), m); }

TwistedPoly random_twisted(const GaloisField& fq, int m, int max_deg) {
  std::vector<ScalarMatrix> c;
  const int deg = uniform(0, max_deg);
  for (int i = 0; i <= deg; ++i) {
    std::vector<Scalar> entries;
    for (int k = 0; k < m * m; ++k) {
      entries.emplace_back(RationalFn(ffarith::testing::random_poly(fq, 2)));
    }
    c.emplace_back(m, m, std::move(entries));
  }
  return TwistedPoly(fq, m, std::move(c));
}

std::vector<LocalElem> random_point(const LocalField& f, int m, std::int64_t prec) {
  std::vector<LocalElem> x;
  for (int i = 0; i < m; ++i) x.push_back(random_elem(f, -1, 2, prec));
  return x;
}

bool agree(const std::vector<LocalElem>& a, const std::vector<LocalElem>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].agrees_with(b[i])) return false;
  }
  return true;
}

}  // namespace

TEST(TwistedPoly, AdditionExamples) {
  EXPECT_EQ(tw("T + t", 2) + tw("t", 2), tw("T", 2));
  auto p = tw("T + t", 2);
  EXPECT_EQ(p + TwistedPoly(GaloisField::of_size(2), 1), p);
  EXPECT_EQ((tw("T + t", 3) + tw("1 + t^2", 3)).render(), "T + 1 + t + t^2");
  EXPECT_THROW(tw("T", 2, 1) + tw("T", 2, 2), Error);
}

TEST(TwistedPoly, MultiplicationExamples) {
  for (int q : {2, 3, 4}) {
    const auto& fq = GaloisField::of_size(q);
    // tau * c = c^q * tau
    auto c = TwistedPoly::constant(scalar_matrix(fq, 1, Scalar::variable(fq) + Scalar::one(fq)));
    auto lhs = TwistedPoly::tau(fq, 1) * c;
    EXPECT_EQ(lhs.degree(), 1);
    EXPECT_EQ(lhs.scalar_coeff(1), Scalar((RationalFn::variable(fq) + RationalFn::constant(fq, 1)).frobenius(1)));

    auto p = tw("T + t", q);
    auto sq = p * p;
    auto tq = RationalFn::variable(fq).pow(q);
    auto expected = TwistedPoly::from_scalars(fq, {Scalar(RationalFn::variable(fq).pow(2)),
                                                   Scalar(tq + RationalFn::variable(fq)), Scalar::one(fq)});
    EXPECT_EQ(sq, expected) << q;
    EXPECT_EQ(TwistedPoly::one(fq, 1) * p, p);
  }
  EXPECT_EQ((tw("T + t", 2) * tw("T + t", 2)).render(), "T^2 + (T^2 + T)*t + t^2");
}

TEST(TwistedPoly, EvaluationExamples) {
  const auto f2 = LocalField::laurent(2);
  auto x = embed(parse_qk("1/T", GlobalField::function_field(2)).fn(), f2, 20);
  auto y = tw("T + t", 2).evaluate(x);
  auto expected = embed(parse_qk("1 + 1/T^2", GlobalField::function_field(2)).fn(), f2, 20);
  EXPECT_TRUE(y.agrees_with(expected));
  EXPECT_EQ(y.precision(), 19);

  EXPECT_TRUE(tw("T^3 + t + T*t^2", 2).evaluate(LocalElem::zero(f2, 10)).is_zero());

  const auto f3 = LocalField::laurent(3);
  auto u = LocalElem::uniformizer_power(f3, 1, 10);
  auto u9 = tw("t^2", 3).evaluate(u);
  EXPECT_EQ(u9.valuation(), 9);
  EXPECT_TRUE(u9.agrees_with(LocalElem::uniformizer_power(f3, 9, 90)));
}

TEST(TwistedPoly, MatrixCoefficients) {
  auto phi = tw("[[T, 1], [0, T]] + [[0, 0], [1, 0]]*t", 2, 2);
  EXPECT_EQ(phi.degree(), 1);
  EXPECT_EQ(phi.render(), "[[T, 1], [0, T]] + [[0, 0], [1, 0]]*t");
  // tau * A = A^(q) * tau entrywise.
  auto a = tw("[[T, 1], [T^2, 0]]", 2, 2);
  auto prod = TwistedPoly::tau(GaloisField::of_size(2), 2) * a;
  EXPECT_EQ(prod, tw("[[T^2, 1], [T^4, 0]]*t", 2, 2));
  EXPECT_EQ(tw("t*T", 3), tw("T^3*t", 3));
  EXPECT_EQ(tw("T", 2, 2), tw("[[T, 0], [0, T]]", 2, 2));
}

TEST(TwistedPoly, ParseErrors) {
  EXPECT_THROW(tw("T +", 2), ParseError);
  EXPECT_THROW(tw("[[T, 1], [0]]", 2, 2), ParseError);
  EXPECT_THROW(tw("[[T]]", 2, 2), ParseError);
  EXPECT_THROW(tw("1/t", 2), ParseError);
  try {
    tw("T + t*x", 2);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 7);
  }
}

TEST(TwistedPoly, RenderParseRoundTrip) {
  for (int q : {2, 3, 4}) {
    const auto& fq = GaloisField::of_size(q);
    for (int m : {1, 2}) {
      for (int i = 0; i < 50; ++i) {
        auto p = random_twisted(fq, m, 3);
        ASSERT_EQ(parse_twisted(p.render(), fq, m), p) << p.render();
      }
    }
  }
}

class TwistedLaws : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(TwistedLaws, RingAxioms) {
  const auto [q, m] = GetParam();
  const auto& fq = GaloisField::of_size(q);
  for (int i = 0; i < 100; ++i) {
    auto a = random_twisted(fq, m, 2);
    auto b = random_twisted(fq, m, 2);
    auto c = random_twisted(fq, m, 2);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ((a + b) * c, a * c + b * c);
    if (m == 1 && !a.is_zero() && !b.is_zero()) ASSERT_EQ((a * b).degree(), a.degree() + b.degree());
  }
}

TEST_P(TwistedLaws, EvaluationIsHomomorphismAndLinear) {
  const auto [q, m] = GetParam();
  const auto& fq = GaloisField::of_size(q);
  const auto f = LocalField::laurent(q);
  for (int i = 0; i < 100; ++i) {
    auto a = random_twisted(fq, m, 2);
    auto b = random_twisted(fq, m, 2);
    auto x = random_point(f, m, 12);
    auto y = random_point(f, m, 12);
    ASSERT_TRUE(agree((a * b).evaluate(x), a.evaluate(b.evaluate(x))));

    std::vector<LocalElem> sum;
    for (int k = 0; k < m; ++k) sum.push_back(x[static_cast<std::size_t>(k)] + y[static_cast<std::size_t>(k)]);
    auto lhs = a.evaluate(sum);
    auto ax = a.evaluate(x);
    auto ay = a.evaluate(y);
    for (int k = 0; k < m; ++k) {
      ASSERT_TRUE((lhs[static_cast<std::size_t>(k)] - (ax[static_cast<std::size_t>(k)] + ay[static_cast<std::size_t>(k)])).is_zero());
    }

    const auto c = static_cast<LocalElem::Digit>(uniform(0, q - 1));
    std::vector<LocalElem> cx;
    for (const auto& v : x) cx.push_back(LocalElem::from_residue(f, c, 1000) * v);
    auto acx = a.evaluate(cx);
    for (int k = 0; k < m; ++k) {
      ASSERT_TRUE(acx[static_cast<std::size_t>(k)].agrees_with(LocalElem::from_residue(f, c, 1000) * ax[static_cast<std::size_t>(k)]));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, TwistedLaws,
                         ::testing::Values(std::pair{2, 1}, std::pair{3, 1}, std::pair{4, 1}, std::pair{2, 2}, std::pair{3, 2}));
