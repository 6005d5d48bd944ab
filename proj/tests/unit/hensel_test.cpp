#include <gtest/gtest.h>

#include "ffarith/hensel/hensel.hpp"
#include "support/gen.hpp"

using namespace ffarith;
using ffarith::testing::random_elem;

namespace {

constexpr std::int64_t kPrec = 40;

AnalyticMap system(const LocalField& f, const char* text, std::vector<std::string> params,
                   std::vector<std::string> unknowns, std::int64_t prec = kPrec) {
  return AnalyticMap::parse(f, text, params, unknowns, prec);
}

LocalElem num(const LocalField& f, long long n, std::int64_t prec = kPrec) { return LocalElem::from_int(f, n, prec); }

LocalElem u_pow(const LocalField& f, std::int64_t k, std::int64_t prec = kPrec) {
  return LocalElem::uniformizer_power(f, k, prec);
}

bool congruent(const LocalElem& x, long long n, std::int64_t digits) {
  return (x - num(x.field(), n)).valuation_bound() >= digits;
}

}  // namespace

TEST(Hensel, JacobianExamples) {
  const auto f2 = LocalField::laurent(2);
  auto lin = system(f2, "y - x", {"x"}, {"y"});
  const LocalPoint origin{LocalElem::zero(f2, kPrec), LocalElem::zero(f2, kPrec)};
  auto j = lin.jacobian(origin, kPrec);
  EXPECT_TRUE(j(0, 0).agrees_with(num(f2, -1)));
  EXPECT_TRUE(j(0, 1).agrees_with(num(f2, 1)));

  for (int q : {2, 3, 4}) {
    const auto fq = LocalField::laurent(q);
    const std::string text = "y^" + std::to_string(q) + " - y - x";
    auto as = system(fq, text.c_str(), {"x"}, {"y"});
    auto ja = as.jacobian(LocalPoint{LocalElem::zero(fq, kPrec), LocalElem::zero(fq, kPrec)}, kPrec);
    EXPECT_TRUE(ja(0, 0).agrees_with(num(fq, -1))) << q;
    EXPECT_TRUE(ja(0, 1).agrees_with(num(fq, -1))) << q;
  }

  const auto q5 = LocalField::padic(5);
  auto sq = system(q5, "x^2 + 1", {}, {"x"});
  EXPECT_TRUE(sq.jacobian(LocalPoint{num(q5, 2)}, kPrec)(0, 0).agrees_with(num(q5, 4)));
}

TEST(Hensel, SquareRootOfMinusOneInQ5) {
  const auto q5 = LocalField::padic(5);
  auto f = system(q5, "x^2 + 1", {}, {"x"}, 10);
  auto s1 = newton_refine(f, LocalPoint{num(q5, 2, 10)}, 10);
  EXPECT_TRUE(congruent(s1.point[0], 7, 2));
  EXPECT_EQ(s1.residual_before, 1);
  auto s2 = newton_refine(f, s1.point, 10);
  EXPECT_TRUE(congruent(s2.point[0], 57, 3));

  auto run = newton_solve(f, LocalPoint{num(q5, 2, 10)}, 10);
  // 2057^2 + 1 = 4231250 = 1354 * 5^5
  EXPECT_TRUE(congruent(run.root[0], 2057, 5));
  const std::vector<LocalElem::Digit> digits(run.root[0].digits().begin(), run.root[0].digits().begin() + 5);
  EXPECT_EQ(digits, (std::vector<LocalElem::Digit>{2, 1, 2, 1, 3}));
  auto fx = f.evaluate(run.root, 10);
  EXPECT_GE(fx[0].valuation_bound(), 10);
}

TEST(Hensel, LinearSystemSolvedInOneStep) {
  const auto q5 = LocalField::padic(5);
  auto f = system(q5, "x - 17/3", {}, {"x"});
  for (long long start : {0, 1, 4, 123}) {
    auto run = newton_solve(f, LocalPoint{num(q5, start)}, kPrec);
    EXPECT_LE(run.steps.size(), 1u);
    EXPECT_TRUE((run.root[0] * num(q5, 3) - num(q5, 17)).valuation_bound() >= kPrec - 1);
  }
}

TEST(Hensel, GuardAndSingularity) {
  const auto q5 = LocalField::padic(5);
  auto f = system(q5, "x^2 + 1", {}, {"x"});
  try {
    newton_refine(f, LocalPoint{num(q5, 1)}, kPrec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kHenselConditionFailed);
    EXPECT_NE(std::string(e.what()).find("v(F(x)) = 0"), std::string::npos);
  }
  auto g = system(q5, "x^2 + 5", {}, {"x"});
  try {
    newton_refine(g, LocalPoint{LocalElem::zero(q5, kPrec)}, kPrec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSingularJacobian);
  }
}

TEST(Hensel, QuadraticConvergenceAcrossSuite) {
  struct Problem {
    LocalField field;
    const char* text;
    std::vector<std::string> vars;
    LocalPoint start;
  };
  const auto q5 = LocalField::padic(5);
  const auto q7 = LocalField::padic(7);
  const auto f2 = LocalField::laurent(2);
  const auto f3 = LocalField::laurent(3);
  std::vector<Problem> suite{
      {q5, "x^2 + 1", {"x"}, {num(q5, 2)}},
      {q5, "x^2 + 1", {"x"}, {num(q5, 3)}},
      {q7, "x^3 - 6", {"x"}, {num(q7, 3)}},
      {q7, "x^2 + 2*y^2 - 3; x*y - 1", {"x", "y"}, {num(q7, 8), num(q7, 1)}},
      {f2, "x^2 - x - u", {"x"}, {LocalElem::zero(f2, kPrec)}},
      {f3, "x^3 - x + u^2 - u", {"x"}, {LocalElem::zero(f3, kPrec)}},
      {f2, "x^2 + x + y*u + u; y^2 + y + x*u", {"x", "y"}, {LocalElem::zero(f2, kPrec), LocalElem::zero(f2, kPrec)}},
  };
  for (const auto& p : suite) {
    auto f = system(p.field, p.text, {}, p.vars);
    NewtonRun run;
    try {
      run = newton_solve(f, p.start, kPrec);
    } catch (const Error& e) {
      ADD_FAILURE() << p.text << ": " << e.what();
      continue;
    }
    for (const auto& s : run.steps) {
      EXPECT_GE(s.residual_after, std::min(kPrec, 2 * s.residual_before - 2 * s.det_valuation)) << p.text;
    }
    EXPECT_GE(min_valuation(f.evaluate(run.root, kPrec)), kPrec) << p.text;
  }
}

TEST(Hensel, DistinctRootsStayDistinct) {
  const auto q5 = LocalField::padic(5);
  auto f = system(q5, "x^2 + 1", {}, {"x"});
  auto a = newton_solve(f, LocalPoint{num(q5, 2)}, kPrec).root[0];
  auto b = newton_solve(f, LocalPoint{num(q5, 3)}, kPrec).root[0];
  EXPECT_LT((a - b).valuation(), 1);
  EXPECT_TRUE((a + b).valuation_bound() >= kPrec - 1);
}

TEST(ImplicitSolve, ArtinSchreierChart) {
  const auto f2 = LocalField::laurent(2);
  auto f = system(f2, "y^2 - y - x", {"x"}, {"y"});
  const LocalPoint origin{LocalElem::zero(f2, kPrec), LocalElem::zero(f2, kPrec)};
  auto chart = implicit_solve(f, origin, kPrec);
  EXPECT_EQ(chart.radius(), 1);
  EXPECT_EQ(chart.unknown_columns(), std::vector<int>{1});
  auto y = chart.solve_fiber(LocalPoint{u_pow(f2, 1)})[0];
  // u + u^2 + u^4 + ... + u^32 covers every exponent below 40.
  auto expected = LocalElem::zero(f2, kPrec);
  for (std::int64_t k = 1; k < kPrec; k *= 2) expected = expected + u_pow(f2, k);
  EXPECT_GE((y - expected).valuation_bound(), kPrec - kResidualMargin);
}

TEST(ImplicitSolve, PolynomialGraph) {
  const auto q5 = LocalField::padic(5);
  auto f = system(q5, "y - x^2", {"x"}, {"y"});
  auto chart = implicit_solve(f, LocalPoint{LocalElem::zero(q5, kPrec), LocalElem::zero(q5, kPrec)}, kPrec);
  for (long long x : {5, 10, 25, 130}) {
    auto y = chart.solve_fiber(LocalPoint{num(q5, x)})[0];
    EXPECT_TRUE(y.agrees_with(num(q5, x * x)));
  }
  EXPECT_THROW(chart.solve_fiber(LocalPoint{num(q5, 1)}), Error);
}

TEST(ImplicitSolve, BinomialSquareRoot) {
  const auto q5 = LocalField::padic(5);
  auto f = system(q5, "y^2 - (1 + x)", {"x"}, {"y"});
  auto chart = implicit_solve(f, LocalPoint{LocalElem::zero(q5, kPrec), num(q5, 1)}, kPrec);
  EXPECT_EQ(chart.radius(), 1);
  auto y = chart.solve_fiber(LocalPoint{num(q5, 5)})[0];
  EXPECT_EQ(y.digit(0), 1);
  EXPECT_EQ(y.digit(1), 3);  // sqrt(6) = 1 + 5/2 + ... and 1/2 = 3 mod 5
  EXPECT_GE((y * y - num(q5, 6)).valuation_bound(), kPrec - kResidualMargin);

  auto series = implicit_series(f, LocalPoint{LocalElem::zero(q5, kPrec), num(q5, 1)}, 4, kPrec);
  ASSERT_EQ(series.size(), 1u);
  // 1 + x/2 - x^2/8 + x^3/16 - 5x^4/128
  const std::vector<std::pair<int, std::pair<long long, long long>>> want{{0, {1, 1}}, {1, {1, 2}}, {2, {-1, 8}}, {3, {1, 16}}, {4, {-5, 128}}};
  ASSERT_EQ(series[0].terms().size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    const auto& [e, c] = series[0].terms()[i];
    EXPECT_EQ(e[0], want[i].first);
    EXPECT_GE((c * num(q5, want[i].second.second) - num(q5, want[i].second.first)).valuation_bound(), kPrec - 10);
  }
}

TEST(ImplicitSolve, ArtinSchreierSeriesTermwise) {
  for (int q : {2, 3}) {
    const auto fq = LocalField::laurent(q);
    const std::string text = "y^" + std::to_string(q) + " - y - x";
    auto f = system(fq, text.c_str(), {"x"}, {"y"});
    int top = 1;
    for (int i = 0; i < 5; ++i) top *= q;
    auto series = implicit_series(f, LocalPoint{LocalElem::zero(fq, kPrec), LocalElem::zero(fq, kPrec)}, top, kPrec);
    MPoly<LocalElem> expected(1);
    for (int k = 1; k <= top; k *= q) expected.add_term({k}, num(fq, -1));
    ASSERT_EQ(series[0].terms().size(), expected.terms().size()) << q;
    for (std::size_t i = 0; i < expected.terms().size(); ++i) {
      EXPECT_EQ(series[0].terms()[i].first, expected.terms()[i].first);
      EXPECT_TRUE(series[0].terms()[i].second.agrees_with(expected.terms()[i].second));
    }
  }
}

TEST(ImplicitSolve, ColumnPermutationAndSingularBlock) {
  const auto q5 = LocalField::padic(5);
  const LocalPoint origin{LocalElem::zero(q5, kPrec), LocalElem::zero(q5, kPrec)};
  auto f = system(q5, "x - y^2", {"x"}, {"y"});
  auto chart = implicit_solve(f, origin, kPrec);
  EXPECT_EQ(chart.unknown_columns(), std::vector<int>{0});
  EXPECT_EQ(chart.parameter_columns(), std::vector<int>{1});
  auto x = chart.solve_fiber(LocalPoint{num(q5, 5)})[0];
  EXPECT_TRUE(x.agrees_with(num(q5, 25)));

  auto g = system(q5, "x^2 + y^2", {"x"}, {"y"});
  try {
    implicit_solve(g, origin, kPrec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSingularBlock);
  }
}

TEST(ImplicitSolve, TruncatedSeriesBounds) {
  const auto f2 = LocalField::laurent(2);
  auto base = system(f2, "y - x", {"x"}, {"y"});
  AnalyticMap truncated(f2, 1, 1, base.components(), 12);
  const LocalPoint outside{u_pow(f2, -1), LocalElem::zero(f2, kPrec)};
  try {
    truncated.jacobian(outside, kPrec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEvaluationDivergence);
  }
  const LocalPoint origin{LocalElem::zero(f2, kPrec), LocalElem::zero(f2, kPrec)};
  try {
    implicit_solve(truncated, origin, kPrec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kTruncationInsufficient);
  }
  EXPECT_NO_THROW(implicit_solve(truncated, origin, 15));
}

TEST(ImplicitSolve, RandomPointsOnEveryChart) {
  struct Case {
    LocalField field;
    const char* text;
    LocalPoint center;
  };
  const auto q5 = LocalField::padic(5);
  const auto f2 = LocalField::laurent(2);
  const auto f3 = LocalField::laurent(3);
  std::vector<Case> cases{
      {f2, "y^2 - y - x", {LocalElem::zero(f2, kPrec), LocalElem::zero(f2, kPrec)}},
      {f3, "y^3 - y - x", {LocalElem::zero(f3, kPrec), LocalElem::zero(f3, kPrec)}},
      {q5, "y^2 - (1 + x)", {LocalElem::zero(q5, kPrec), num(q5, 1)}},
      {q5, "y - x^2", {LocalElem::zero(q5, kPrec), LocalElem::zero(q5, kPrec)}},
      {q5, "y^2 - 2*y - x", {LocalElem::zero(q5, kPrec), LocalElem::zero(q5, kPrec)}},
  };
  for (const auto& c : cases) {
    auto f = system(c.field, c.text, {"x"}, {"y"});
    auto chart = implicit_solve(f, c.center, kPrec);
    for (int i = 0; i < 20; ++i) {
      auto offset = random_elem(c.field, static_cast<int>(chart.radius()), static_cast<int>(chart.radius()) + 4, kPrec);
      LocalPoint params{c.center[0] + offset};
      auto z = chart.point(params);
      EXPECT_GE(min_valuation(f.evaluate(z, kPrec)), kPrec - kResidualMargin) << c.text;
    }
  }
}

TEST(AnalyticMapParse, SystemsAndErrors) {
  const auto q7 = LocalField::padic(7);
  auto f = system(q7, "sum(x^2 + y^2) - 2; x - y", {}, {"x", "y"});
  EXPECT_EQ(f.target_dim(), 2);
  auto run = newton_solve(f, LocalPoint{num(q7, 8), num(q7, 1)}, kPrec);
  EXPECT_TRUE(run.root[0].agrees_with(num(q7, 1)));
  EXPECT_TRUE(run.root[1].agrees_with(num(q7, 1)));
  try {
    system(q7, "x - y; x + z", {}, {"x", "y"});
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 12);
  }
  EXPECT_THROW(system(q7, "x / y", {}, {"x", "y"}), ParseError);
}
