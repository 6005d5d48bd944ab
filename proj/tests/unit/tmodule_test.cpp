#include <gtest/gtest.h>

#include <functional>

#include "ffarith/tmodule/tmodule.hpp"
#include "support/gen.hpp"

using namespace ffarith;
using ffarith::testing::uniform;

namespace {

FqPoly poly(const char* text, int q) { return parse_fq_poly(text, GaloisField::of_size(q)); }

TwistedPoly tw(const char* text, int q, int m = 1) { return parse_twisted(text, GaloisField::of_size(q), m); }

FqPoly random_fq_poly(const GaloisField& fq, int max_deg) {
  std::vector<GaloisField::Elem> c(static_cast<std::size_t>(uniform(0, max_deg)) + 1);
  for (auto& x : c) x = static_cast<GaloisField::Elem>(uniform(0, fq.size() - 1));
  return FqPoly(fq, c);
}

LocalElem embed_fn(const char* text, const LocalField& field, std::int64_t prec) {
  return embed(parse_qk(text, GlobalField::function_field(field.q())).fn(), field, prec);
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::kInvalidArgument;
}

}  // namespace

TEST(TModule, Validation) {
  const auto c = TModule::carlitz(3);
  EXPECT_EQ(c.dimension(), 1);
  EXPECT_TRUE(c.nilpotent_part().is_zero());
  EXPECT_TRUE(c.leading_invertible());

  const auto n = TModule::nilpotent_example(2);
  EXPECT_EQ(n.dimension(), 2);
  EXPECT_EQ(render(n.nilpotent_part()), "[[0, 1], [0, 0]]");

  EXPECT_EQ(kind_of([] { TModule::create(tw("[[T + 1, 0], [0, T]] + t", 2, 2)); }), ErrorKind::kNotNilpotent);
  EXPECT_EQ(kind_of([] { TModule::create(tw("T + 1 + t", 3)); }), ErrorKind::kNotNilpotent);
  EXPECT_EQ(kind_of([] { TModule::create(tw("T", 3)); }), ErrorKind::kBadConstantTerm);
  EXPECT_FALSE(TModule::create(tw("[[T, 1], [0, T]] + [[0, 0], [1, 0]]*t", 2, 2)).leading_invertible());
}

TEST(TModule, AndersonColemanExample) {
  for (int q : {2, 3}) {
    const std::int64_t prec = 30;
    const auto c = anderson_coleman_parameter(q, prec);
    EXPECT_EQ(c.valuation(), 1);
    const auto t = embed_fn("T", c.field(), prec);
    const auto rel = c * c - t * c + LocalElem::one(c.field(), prec);
    EXPECT_GE(rel.valuation_bound(), prec) << q;

    const auto ac = anderson_coleman_example(q, prec);
    EXPECT_EQ(ac.dimension(), 2);
    EXPECT_EQ(ac.phi_t().degree(), 2);
    const auto& fq = GaloisField::of_size(q);
    EXPECT_EQ(ac.dphi(FqPoly::variable(fq)), scalar_matrix(fq, 2, Scalar::variable(fq)));
    EXPECT_TRUE(ac.leading_invertible());
    // Entries 1 - c^(q+1) and 1 - c^q.
    const auto a1 = ac.phi_t().coeff(1);
    EXPECT_TRUE(a1(0, 0).is_exact_zero());
    EXPECT_TRUE(a1(0, 1).local().agrees_with(LocalElem::one(c.field(), prec) - c.frobenius(1) * c));
    EXPECT_TRUE(a1(1, 0).local().agrees_with(LocalElem::one(c.field(), prec) - c.frobenius(1)));
  }
}

TEST(TModule, PhiExamples) {
  EXPECT_EQ(TModule::carlitz(2).phi(poly("T^2", 2)).render(), "T^2 + (T^2 + T)*t + t^2");
  EXPECT_EQ(TModule::carlitz(2).phi(poly("T^2", 2)), tw("T + t", 2) * tw("T + t", 2));
  EXPECT_EQ(TModule::carlitz(3).phi(poly("1", 3)), TwistedPoly::one(GaloisField::of_size(3), 1));
  EXPECT_EQ(TModule::carlitz(3).phi(poly("T + 1", 3)), tw("T + 1 + t", 3));
  EXPECT_EQ(TModule::nilpotent_example(2).phi(poly("1", 2)), TwistedPoly::one(GaloisField::of_size(2), 2));
}

TEST(TModule, DphiExamples) {
  const auto& f2 = GaloisField::of_size(2);
  for (const char* a : {"1", "T", "T^2 + T + 1"}) {
    const auto p = poly(a, 2);
    EXPECT_EQ(TModule::carlitz(2).dphi(p), scalar_matrix(f2, 1, Scalar(RationalFn(p))));
  }
  EXPECT_EQ(TModule::nilpotent_example(2).dphi(poly("T^2", 2)), scalar_matrix(f2, 2, Scalar::variable(f2).pow(2)));
  const auto n3 = TModule::nilpotent_example(3).dphi(poly("T^2", 3));
  EXPECT_EQ(render(n3), "[[T^2, 2*T], [0, T^2]]");
}

TEST(TModule, JInvariant) {
  for (int q : {2, 3, 4}) EXPECT_EQ(j_invariant(TModule::carlitz(q)), 1);
  EXPECT_EQ(j_invariant(TModule::nilpotent_example(2)), 2);
  EXPECT_EQ(j_invariant(TModule::nilpotent_example(3)), 3);
  EXPECT_EQ(j_invariant(anderson_coleman_example(2, 20)), 1);
  EXPECT_EQ(j_invariant(TModule::power(TModule::carlitz(3), 3)), 1);
}

TEST(TModule, LieInvariance) {
  const auto& f2 = GaloisField::of_size(2);
  const Scalar zero = Scalar::zero(f2);
  const Scalar one = Scalar::one(f2);
  const Scalar t = Scalar::variable(f2);
  const auto n = TModule::nilpotent_example(2);
  EXPECT_TRUE(lie_invariant(n, {{one, zero}}));
  EXPECT_FALSE(lie_invariant(n, {{zero, one}}));
  EXPECT_TRUE(lie_invariant(n, {{one, zero}, {t, one}}));
  const auto c2 = TModule::power(TModule::carlitz(2), 2);
  EXPECT_TRUE(lie_invariant(c2, {{one, t}}));
  EXPECT_EQ(kind_of([&] { lie_invariant(n, {{one, zero}, {t, zero}}); }), ErrorKind::kDependentBasis);
}

TEST(TModule, TorsionCountExamples) {
  EXPECT_EQ(torsion_count(TModule::carlitz(3), poly("T", 3)), 3);
  EXPECT_EQ(torsion_count(TModule::carlitz(2), poly("T^2 + T", 2)), 4);
  EXPECT_EQ(torsion_count(TModule::carlitz(3), poly("T^2", 3)), 9);
  EXPECT_EQ(torsion_count(TModule::carlitz(3), poly("T^2 + 1", 3)), 9);
  EXPECT_EQ(torsion_count(TModule::nilpotent_example(2), poly("1", 2)), 1);
  EXPECT_EQ(torsion_count(TModule::nilpotent_example(2), poly("T", 2)), 4);
  EXPECT_EQ(torsion_count(TModule::power(TModule::carlitz(3), 2), poly("T", 3)), 9);
  // Invertible leading coefficient: rank m * deg phi_T = 4.
  EXPECT_EQ(torsion_count(anderson_coleman_example(2, 30), poly("T", 2)), 16);
  EXPECT_EQ(kind_of([] { torsion_count(TModule::carlitz(2), poly("0", 2)); }), ErrorKind::kInvalidArgument);
  EXPECT_EQ(kind_of([] { triangular_form(tw("[[1, 1], [1, 1]]*t", 2, 2)); }), ErrorKind::kInseparable);
}

TEST(TModule, TriangularFormKeepsDegree) {
  // A unimodular change of rows cannot change the number of roots.
  const auto m = TModule::create(tw("[[T, 1], [0, T]] + [[0, 0], [1, 0]]*t", 2, 2));
  const auto tri = triangular_form(m.phi(poly("T", 2)));
  EXPECT_TRUE(tri[1][0].is_zero());
  EXPECT_EQ(tri[0][0].degree() + tri[1][1].degree(), 1);
  EXPECT_EQ(torsion_count(m, poly("T", 2)), 2);
}

TEST(TorsionPoints, Carlitz3AtT) {
  const auto m = TModule::carlitz(3);
  const auto res = torsion_points(m, poly("T", 3), 20, {2, 2});
  ASSERT_TRUE(res.complete);
  EXPECT_EQ(res.field, LocalField::laurent(3, 2, 2));
  ASSERT_EQ(res.points.size(), 3u);
  const auto& field = res.field;
  const auto minus_t = embed_fn("-T", field, 40);
  int nonzero = 0;
  for (const auto& p : res.points) {
    if (p[0].is_zero()) continue;
    ++nonzero;
    EXPECT_EQ(p[0].valuation(), -1);
    EXPECT_GE((p[0] * p[0] - minus_t).valuation_bound(), 40 - kResidualMargin);
  }
  EXPECT_EQ(nonzero, 2);
}

TEST(TorsionPoints, Carlitz2AtT) {
  const auto res = torsion_points(TModule::carlitz(2), poly("T", 2), 20, {1, 1});
  ASSERT_TRUE(res.complete);
  ASSERT_EQ(res.points.size(), 2u);
  const auto t = embed_fn("T", res.field, 20);
  EXPECT_TRUE(res.points[0][0].agrees_with(t));
  EXPECT_TRUE(res.points[1][0].is_zero());
}

TEST(TorsionPoints, UnitAnnihilator) {
  const auto res = torsion_points(TModule::nilpotent_example(3), poly("1", 3), 10, {1, 1});
  ASSERT_EQ(res.points.size(), 1u);
  EXPECT_TRUE(res.points[0][0].is_zero() && res.points[0][1].is_zero());
}

TEST(TorsionPoints, BudgetTooSmall) {
  const auto res = torsion_points(TModule::carlitz(3), poly("T", 3), 20, {1, 2});
  EXPECT_FALSE(res.complete);
  EXPECT_EQ(res.points.size(), 1u);
  EXPECT_EQ(res.expected, 3);
}

TEST(TorsionPoints, Carlitz2AtTSquared) {
  const auto res = torsion_points(TModule::carlitz(2), poly("T^2", 2), 20, {1, 1});
  ASSERT_TRUE(res.complete);
  ASSERT_EQ(res.points.size(), 4u);
  const auto& f = res.field;
  const auto t = embed_fn("T", f, 40);
  // 0 and T are the T-torsion; the other two map to T under phi(T).
  int over_t = 0;
  for (const auto& p : res.points) {
    const auto image = p[0] * p[0] + t * p[0];
    if ((image - t).valuation_bound() >= 20 - kResidualMargin) ++over_t;
  }
  EXPECT_EQ(over_t, 2);
  EXPECT_TRUE(res.points[0][0].agrees_with(t) || res.points[1][0].agrees_with(t));
}

class TorsionClosure : public ::testing::TestWithParam<std::tuple<int, const char*, int, int>> {};

TEST_P(TorsionClosure, VectorSpaceAndVerified) {
  const auto [q, a, e, f] = GetParam();
  const auto m = TModule::carlitz(q);
  const std::int64_t prec = 20;
  const auto res = torsion_points(m, poly(a, q), prec, {e, f});
  ASSERT_TRUE(res.complete) << a;
  EXPECT_EQ(BigInt(res.points.size()), torsion_count(m, poly(a, q)));
  const auto phi = m.phi(poly(a, q));
  const std::int64_t tol = prec * res.field.ramification() - kResidualMargin;
  auto contains = [&](const LocalElem& x) {
    return std::any_of(res.points.begin(), res.points.end(), [&](const LocalPoint& p) {
      return (p[0] - x).valuation_bound() >= tol;
    });
  };
  for (const auto& x : res.points) {
    EXPECT_GE(phi.evaluate(x[0]).valuation_bound(), tol);
    for (int c = 0; c < q; ++c) {
      EXPECT_TRUE(contains(LocalElem::from_residue(res.field, res.field.residue().embed_from(GaloisField::of_size(q), static_cast<GaloisField::Elem>(c)), 1000) * x[0]));
    }
    for (const auto& y : res.points) EXPECT_TRUE(contains(x[0] + y[0]));
  }
}

INSTANTIATE_TEST_SUITE_P(Carlitz, TorsionClosure,
                         ::testing::Values(std::tuple{2, "T", 1, 1}, std::tuple{2, "T^2", 1, 1},
                                           std::tuple{2, "T^2 + T", 1, 1}, std::tuple{3, "T", 2, 2},
                                           std::tuple{3, "T^2", 2, 2}, std::tuple{2, "T^2 + T + 1", 1, 2},
                                           std::tuple{4, "T", 3, 1}));

TEST(TorsionPoints, NilpotentExampleAndProducts) {
  const auto n = TModule::nilpotent_example(2);
  const auto res = torsion_points(n, poly("T", 2), 20, {1, 2});
  EXPECT_EQ(BigInt(res.points.size()) <= res.expected, true);
  EXPECT_EQ(res.expected, 4);
  const auto phi = n.phi(poly("T", 2));
  for (const auto& p : res.points) {
    EXPECT_GE(min_valuation(phi.evaluate(p)), 20 * res.field.ramification() - kResidualMargin);
  }

  const auto c3 = TModule::power(TModule::carlitz(3), 2);
  const auto prod = torsion_points(c3, poly("T", 3), 20, {2, 2});
  EXPECT_TRUE(prod.complete);
  EXPECT_EQ(prod.points.size(), 9u);
}

TEST(TorsionPoints, Subvariety) {
  const auto m = TModule::power(TModule::carlitz(3), 2);
  const auto k = GlobalField::function_field(3);
  const std::vector<std::string> vars{"x1", "x2"};
  auto count = [&](const char* text) {
    return torsion_in_subvariety(m, {parse_mpoly(text, vars, k)}, poly("T", 3), 20, {2, 2});
  };
  EXPECT_EQ(count("x2 - x1 - 1").count, 0u);
  const auto graph = count("x2 - (T*x1 + x1^3)");
  EXPECT_EQ(graph.count, 3u);
  EXPECT_TRUE(graph.complete);
  EXPECT_EQ(count("x1 - x2").count, 3u);
  EXPECT_EQ(count("1").count, 0u);
  EXPECT_EQ(count("x1*x2").count, 5u);
}

TEST(TModuleFile, ParseAndRender) {
  const auto m = parse_tmodule("# carlitz\nm = 1\nq = 3\nphi_T = T + t\nlabel = carlitz(3)\n");
  EXPECT_EQ(m.label(), "carlitz(3)");
  EXPECT_EQ(m.phi_t(), tw("T + t", 3));
  EXPECT_EQ(parse_tmodule(render_tmodule(m)).phi_t(), m.phi_t());
  const auto n = TModule::nilpotent_example(2);
  EXPECT_EQ(parse_tmodule(render_tmodule(n)).phi_t(), n.phi_t());

  EXPECT_THROW(parse_tmodule("m = 1\nq = 3\nphi = T + t\n"), ParseError);
  EXPECT_THROW(parse_tmodule("m = 1\nq = 3\n"), Error);
  EXPECT_THROW(parse_tmodule("m = x\nq = 3\nphi_T = T + t\n"), ParseError);
  try {
    parse_tmodule("m = 1\nq = 3\nphi_T = T + t*x\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 15);
  }
}

class TModuleLaws : public ::testing::TestWithParam<int> {};

TEST_P(TModuleLaws, HomomorphismAndDifferential) {
  const int q = GetParam();
  const auto& fq = GaloisField::of_size(q);
  const std::vector<TModule> modules{TModule::carlitz(q), TModule::nilpotent_example(q)};
  for (const auto& m : modules) {
    for (int i = 0; i < 30; ++i) {
      const auto a = random_fq_poly(fq, 3);
      const auto b = random_fq_poly(fq, 3);
      ASSERT_EQ(m.phi(a * b), m.phi(a) * m.phi(b));
      ASSERT_EQ(m.phi(a + b), m.phi(a) + m.phi(b));
      const auto d = m.dphi(a);
      ASSERT_EQ(d, m.phi(a).coeff(0));
      const auto nil = d - scalar_matrix(fq, m.dimension(), Scalar(RationalFn(a)));
      ASSERT_TRUE(matrix_power(nil, static_cast<unsigned>(m.dimension()), Scalar::zero(fq), Scalar::one(fq)).is_zero());
    }
    const int j = j_invariant(m);
    int pw = 1;
    while (pw < j) pw *= fq.characteristic();
    EXPECT_EQ(pw, j);
    for (int k = 1; k <= 3; ++k) {
      const auto tj = FqPoly::monomial(fq, 1, j * k);
      EXPECT_TRUE(m.dphi(tj).is_scalar());
    }
  }
}

TEST_P(TModuleLaws, TorsionChainUnderFrobeniusTwist) {
  const int q = GetParam();
  const auto& fq = GaloisField::of_size(q);
  const auto m = TModule::nilpotent_example(q);
  const int j = j_invariant(m);
  for (int i = 0; i < 20; ++i) {
    auto a = random_fq_poly(fq, 2);
    if (a.is_zero()) continue;
    EXPECT_LE(torsion_count(m, a), torsion_count(m, a.compose_power(j)));
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, TModuleLaws, ::testing::Values(2, 3, 4));
