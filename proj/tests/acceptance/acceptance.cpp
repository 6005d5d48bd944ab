// One line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ffarith/cli/cli.hpp"
#include "ffarith/counting/counting.hpp"
#include "support/gen.hpp"

using namespace ffarith;
using ffarith::testing::random_elem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Collects failed checks with a short reason each.
class Checker {
 public:
  void expect(bool cond, const std::string& what) {
    ++checks_;
    if (!cond) {
      ++failures_;
      if (first_.empty()) first_ = what;
    }
  }
  int checks() const { return checks_; }
  Outcome outcome(const std::string& summary) const {
    std::string d = summary + ", " + std::to_string(checks_) + " checks, " + std::to_string(failures_) + " failures";
    if (!first_.empty()) d += "; first: " + first_;
    return {failures_ == 0 && checks_ > 0, d};
  }

 private:
  int checks_ = 0;
  int failures_ = 0;
  std::string first_;
};

bool agree_relative(const LocalElem& a, const LocalElem& b, std::int64_t digits) {
  if (a.is_zero() || b.is_zero()) return (a - b).is_zero();
  return (a - b).valuation_bound() >= std::min(a.valuation_bound(), b.valuation_bound()) + digits;
}

Outcome laws() {
  Checker c;
  const std::int64_t prec = 30;
  for (const auto& field : {LocalField::laurent(2), LocalField::laurent(3), LocalField::padic(5)}) {
    for (int i = 0; i < 1000; ++i) {
      const auto x = random_elem(field, -5, 5, prec);
      const auto y = random_elem(field, -5, 5, prec);
      const std::string where = field.describe() + " case " + std::to_string(i);
      if (!x.is_zero() && !y.is_zero()) {
        c.expect((x * y).valuation() == x.valuation() + y.valuation(), "v(xy) " + where);
        c.expect(agree_relative(x * x.inverse(), LocalElem::one(field, prec), 10), "inverse " + where);
      }
      const auto s = x + y;
      c.expect(s.is_zero() || s.valuation_bound() >= std::min(x.valuation_bound(), y.valuation_bound()),
               "ultrametric " + where);
      if (field.is_laurent()) {
        c.expect((x + y).frobenius(1).agrees_with(x.frobenius(1) + y.frobenius(1)), "frobenius additive " + where);
        c.expect((x * y).frobenius(1).agrees_with(x.frobenius(1) * y.frobenius(1)), "frobenius multiplicative " + where);
      }
    }
  }
  return c.outcome("F_2((u)), F_3((u)), Q_5");
}

Outcome functional_equation() {
  Checker c;
  const std::int64_t prec = 40;
  const std::int64_t bound = 35;
  struct Case {
    TModule module;
    int truncation;
  };
  const std::vector<Case> suite{{TModule::carlitz(2), 6}, {TModule::carlitz(3), 6}, {anderson_coleman_example(2, prec), 4}};
  for (const auto& cs : suite) {
    const auto e = exp_coeffs(cs.module, cs.truncation);
    const auto field = LocalField::laurent(cs.module.q());
    for (const char* a_text : {"T", "T + 1", "T^2"}) {
      const auto a = parse_fq_poly(a_text, cs.module.constants());
      int checked = 0;
      for (int k = 0; k < 400 && checked < 20; ++k) {
        LocalPoint z;
        for (int i = 0; i < cs.module.dimension(); ++i) z.push_back(random_elem(field, -1, 8, prec));
        try {
          const auto r = verify_functional_equation(cs.module, e, a, z, prec);
          c.expect(r >= bound, cs.module.label() + " a = " + a_text + " residual " + std::to_string(r));
          ++checked;
        } catch (const Error& err) {
          if (err.kind() != ErrorKind::kExpDivergence && err.kind() != ErrorKind::kTruncationInsufficient) throw;
        }
      }
      c.expect(checked == 20, cs.module.label() + " a = " + a_text + " found only " + std::to_string(checked) + " points");
    }
  }
  return c.outcome("Carlitz q = 2, 3 and Anderson-Coleman, residual >= 35");
}

Outcome exp_coefficients() {
  Checker c;
  for (int q : {2, 3}) {
    const auto& fq = GaloisField::of_size(q);
    const auto e = exp_coeffs(TModule::carlitz(q), 2);
    const Scalar t = Scalar::variable(fq);
    const Scalar d1 = t.frobenius(1) - t;
    const Scalar d2 = t.frobenius(2) - t;
    c.expect(e.coeffs[1](0, 0) == d1.inverse(), "e1 for q = " + std::to_string(q));
    c.expect(e.coeffs[2](0, 0) == (d2 * d1.frobenius(1)).inverse(), "e2 for q = " + std::to_string(q));
  }
  return c.outcome("e1 and e2 for q = 2, 3");
}

Outcome torsion() {
  Checker c;
  const auto m = TModule::carlitz(3);
  for (const auto& [text, want] : std::vector<std::pair<const char*, int>>{{"T", 3}, {"T^2", 9}, {"T^2 + 1", 9}}) {
    const auto a = parse_fq_poly(text, m.constants());
    const auto n = torsion_count(m, a);
    c.expect(n == want, std::string("|A[") + text + "]|");
    c.expect(n == lattice_quotient_count({1, 0}, a), std::string("lattice count for ") + text);
  }
  const std::int64_t prec = 20;
  const auto a = parse_fq_poly("T", m.constants());
  const auto res = torsion_points(m, a, prec, {2, 2});
  c.expect(res.complete && res.points.size() == 3, "A[T] complete within (2, 2)");
  const auto phi = m.phi(a);
  for (const auto& z : res.points) {
    c.expect(min_valuation(phi.evaluate(std::span<const LocalElem>(z))) >= prec - kResidualMargin, "torsion residual");
  }
  return c.outcome("carlitz(3), A[T] in " + res.field.describe());
}

Outcome j_invariants() {
  Checker c;
  c.expect(j_invariant(TModule::carlitz(2)) == 1, "carlitz");
  c.expect(j_invariant(TModule::nilpotent_example(2)) == 2, "nilpotent example");
  c.expect(j_invariant(anderson_coleman_example(2, 30)) == 1, "Anderson-Coleman");
  return c.outcome("carlitz 1, nilpotent 2, Anderson-Coleman 1");
}

Outcome chain() {
  Checker c;
  const auto m = TModule::nilpotent_example(2);
  const int j = j_invariant(m);
  c.expect(j == 2, "j = 2");
  for (const auto& a : all_polys_below_degree(m.constants(), 3)) {
    if (a.is_zero()) continue;
    c.expect(torsion_count(m, a) <= torsion_count(m, a.compose_power(j)), "a = " + a.render());
  }
  return c.outcome("nilpotent example, every nonzero a with deg a <= 2");
}

Outcome hensel() {
  Checker c;
  const auto q5 = LocalField::padic(5);
  const std::int64_t prec = 12;
  const auto f = AnalyticMap::parse(q5, "x^2 + 1", {}, {"x"}, prec);
  const auto run = newton_solve(f, LocalPoint{LocalElem::from_int(q5, 2, prec)}, prec);
  std::vector<int> digits;
  for (int k = 0; k < 5; ++k) digits.push_back(run.root[0].digit(k));
  c.expect(digits == std::vector<int>{2, 1, 2, 1, 3}, "sqrt(-1) digits");
  c.expect(min_valuation(f.evaluate(run.root, 5)) >= 5, "x^2 + 1 = 0 mod 5^5");
  for (const auto& s : run.steps) {
    c.expect(s.residual_after >= std::min(2 * s.residual_before - 2 * s.det_valuation, prec),
             "quadratic step");
  }

  const auto f2 = LocalField::laurent(2);
  const std::int64_t sp = 40;
  const auto as = AnalyticMap::parse(f2, "y^2 - y - x", {"x"}, {"y"}, sp);
  const LocalPoint origin{LocalElem::zero(f2, sp), LocalElem::zero(f2, sp)};
  const auto series = implicit_series(as, origin, 32, sp);
  MPoly<LocalElem> expected(1);
  for (int k = 1; k <= 32; k *= 2) expected.add_term({k}, LocalElem::from_int(f2, -1, sp));
  c.expect(series[0].terms().size() == expected.terms().size(), "Artin-Schreier term count");
  for (std::size_t i = 0; i < std::min(series[0].terms().size(), expected.terms().size()); ++i) {
    c.expect(series[0].terms()[i].first == expected.terms()[i].first &&
                 series[0].terms()[i].second.agrees_with(expected.terms()[i].second),
             "Artin-Schreier term " + std::to_string(i));
  }
  return c.outcome("sqrt(-1) in Q_5 in " + std::to_string(run.steps.size()) +
                   " Newton steps, Artin-Schreier over F_2((u))");
}

Outcome enumeration() {
  Checker c;
  const auto& fq = GaloisField::of_size(2);
  BigInt t = 1;
  for (int s = 0; s <= 3; ++s, t *= 2) {
    std::vector<std::string> oracle;
    const auto polys = all_polys_below_degree(fq, s + 1);
    for (const auto& num : polys) {
      for (const auto& den : polys) {
        if (!den.is_zero()) oracle.push_back(QkElem(RationalFn(num, den)).render());
      }
    }
    std::sort(oracle.begin(), oracle.end());
    oracle.erase(std::unique(oracle.begin(), oracle.end()), oracle.end());
    const auto pts = enumerate_rationals(GlobalField::function_field(2), 1, t);
    std::vector<std::string> got;
    for (const auto& z : pts) got.push_back(z[0].render());
    std::sort(got.begin(), got.end());
    c.expect(got == oracle, "t = " + t.str());
    if (t == 2) c.expect(pts.size() == 8, "8 points at t = 2");
  }
  return c.outcome("F_2(T), t in {1, 2, 4, 8}, sizes 2, 8, 32, 128");
}

AnalyticSetSpec carlitz_graph(std::int64_t prec) {
  return AnalyticSetSpec::exp_graph(exp_coeffs(TModule::carlitz(2), 6), LocalField::laurent(2), prec);
}

Outcome counting() {
  Checker c;
  const auto low = carlitz_graph(30);
  const auto high = carlitz_graph(60);
  for (int t : {2, 4, 8, 16}) {
    const auto n30 = count_transcendent(low, {}, t, 30);
    const auto n60 = count_transcendent(high, {}, t, 60);
    c.expect(n30 == 1, "N = 1 at t = " + std::to_string(t));
    c.expect(n60 == n30, "stable at t = " + std::to_string(t));
  }
  return c.outcome("Carlitz exponential graph, precision 30 and 60");
}

Outcome cover() {
  Checker c;
  const auto w = AnalyticSetSpec::image(AnalyticMap::parse(LocalField::laurent(2), "s; s^2", {"s"}, {}, 20));
  const auto k = GlobalField::function_field(2);
  const std::int64_t t = 16;
  const auto pts = rational_points(w, t, 20);
  const auto quad = cover_by_hypersurfaces(w, t, 2, 20);
  c.expect(quad.size() == 1, "one conic at delta = 2");
  if (quad.size() == 1) {
    // y - x^2 over monomials 1, x, y, x^2, xy, y^2, scaled to a leading 1.
    const std::vector<QkElem> want{QkElem::zero(k), QkElem::zero(k), QkElem::one(k),
                                   -QkElem::one(k), QkElem::zero(k), QkElem::zero(k)};
    c.expect(quad[0].coeffs == want, "kernel is y - x^2");
  }
  const auto lines = cover_by_hypersurfaces(w, t, 1, 20);
  for (const auto& h : lines) c.expect(h.degree <= 1, "degree at most 1");
  for (const auto& z : pts) {
    c.expect(std::any_of(lines.begin(), lines.end(), [&](const Hypersurface& h) { return h.contains(z); }),
             "point covered");
  }
  std::size_t last = SIZE_MAX;
  for (int delta : {1, 2, 3}) {
    const auto n = cover_by_hypersurfaces(w, t, delta, 20).size();
    c.expect(n <= last, "non-increasing at delta = " + std::to_string(delta));
    last = n;
  }
  return c.outcome("parabola, t = 16, " + std::to_string(pts.size()) + " points, " + std::to_string(lines.size()) +
                   " lines");
}

std::string run_cli(const std::vector<std::string>& args, int& status) {
  std::ostringstream out;
  std::ostringstream err;
  status = cli::run(args, out, err);
  return out.str();
}

Outcome determinism() {
  Checker c;
  const std::string data = FFARITH_DATA_DIR;
  const std::vector<std::vector<std::string>> commands{
      {"count", "--flavor", "fq", "--q", "2", "--set", data + "/carlitz-exp-graph.set", "--t", "2,4,8,16", "--precision",
       "30", "--out", "-"},
      {"count", "--flavor", "fq", "--q", "2", "--set", data + "/parabola.set", "--t", "2,4,8", "--precision", "20",
       "--delta", "2"},
      {"cover", "--flavor", "fq", "--q", "2", "--set", data + "/parabola.set", "--t", "8", "--delta", "1,2,3"},
      {"exp-check", "--builtin", "carlitz", "--q", "3", "--a", "T,T+1,T^2", "--precision", "40", "--points", "5"},
      {"enumerate", "--flavor", "fq", "--q", "3", "--n", "2", "--t", "3"},
      {"torsion", "--module", data + "/carlitz.tmod", "--q", "3", "--a", "T", "--ext-budget", "2,2"},
  };
  for (const auto& args : commands) {
    int s1 = -1;
    int s2 = -1;
    const auto a = run_cli(args, s1);
    const auto b = run_cli(args, s2);
    c.expect(s1 == 0 && s2 == 0, args[0] + " exit status");
    c.expect(!a.empty() && a == b, args[0] + " output identical");
  }
  const auto w = carlitz_graph(30);
  const auto r1 = render_csv(count_report(w, {}, {2, 4, 8, 16}, 30, 1));
  const auto r2 = render_csv(count_report(w, {}, {2, 4, 8, 16}, 30, 1));
  c.expect(r1 == r2 && render_csv(parse_csv(r1)) == r1, "report CSV round trip");
  return c.outcome("six CLI reports and a count CSV, each run twice");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "ultrametric and arithmetic laws", 5, laws},
      {2, "exponential functional equation", 30, functional_equation},
      {3, "exponential coefficients", 0, exp_coefficients},
      {4, "torsion counts and points", 60, torsion},
      {5, "j-invariants", 0, j_invariants},
      {6, "torsion chain under a -> a(T^j)", 0, chain},
      {7, "Hensel lifting", 5, hensel},
      {8, "enumeration against brute force", 10, enumeration},
      {9, "counting on the Carlitz exponential graph", 120, counting},
      {10, "hypersurface covers", 60, cover},
      {11, "determinism of reports", 0, determinism},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = cr.limit_s == 0 || secs < cr.limit_s;
    const bool pass = o.ok && in_time;
    if (!pass) ++failed;
    char timing[64];
    if (cr.limit_s > 0) {
      std::snprintf(timing, sizeof timing, "%.2fs, limit %.0fs", secs, cr.limit_s);
    } else {
      std::snprintf(timing, sizeof timing, "%.2fs", secs);
    }
    std::printf("criterion %2d %s  %s (%s): %s%s\n", cr.id, pass ? "PASS" : "FAIL", cr.name, timing, o.detail.c_str(),
                in_time ? "" : "; over time limit");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
