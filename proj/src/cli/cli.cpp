#include "ffarith/cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "ffarith/counting/counting.hpp"
#include "ffarith/localfield/expr.hpp"

namespace ffarith::cli {

namespace {

constexpr int kMaxQ = 16;
constexpr std::int64_t kMaxPrecision = 200;
constexpr long long kMaxHeight = 1LL << 16;

struct FieldOptions {
  std::string flavor;
  int q = 0;
  int p = 0;
  int e = 1;
  int f = 1;
};

struct Options {
  FieldOptions field;
  std::string out = "-";
  std::int64_t precision = 30;
  bool timing = false;

  std::string module_path;
  std::string builtin;
  std::vector<std::string> a_list;
  std::string ext_budget = "2,2";
  bool count_only = false;

  int truncation = 6;
  int points = 20;

  std::string system;
  std::vector<std::string> vars;
  std::vector<std::string> start;
  int digits = 5;

  int n = 1;
  long long t = 2;
  std::string set_path;
  std::vector<long long> t_grid;
  std::vector<int> deltas;
};

[[noreturn]] void validation(const std::string& message) { fail(ErrorKind::kInvalidArgument, message); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) validation("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check_precision(std::int64_t precision) {
  if (precision < 1 || precision > kMaxPrecision) {
    validation("precision must lie in 1.." + std::to_string(kMaxPrecision) + ", got " + std::to_string(precision));
  }
}

void check_height(long long t) {
  if (t < 1 || t > kMaxHeight) validation("t must lie in 1.." + std::to_string(kMaxHeight) + ", got " + std::to_string(t));
}

// The local field named on the command line, if any.
std::optional<LocalField> field_from(const FieldOptions& o) {
  if (o.flavor.empty() && o.q == 0 && o.p == 0) return std::nullopt;
  std::string flavor = o.flavor;
  if (flavor.empty()) flavor = o.p != 0 ? "qp" : "fq";
  if (flavor == "fq") {
    if (o.p != 0) validation("--p applies to the qp flavor");
    if (o.q < 2 || o.q > kMaxQ) validation("--q must lie in 2.." + std::to_string(kMaxQ));
    return LocalField::laurent(o.q, o.e, o.f);
  }
  if (flavor == "qp") {
    if (o.q != 0) validation("--q applies to the fq flavor");
    if (o.e != 1 || o.f != 1) validation("--e and --f apply to the fq flavor");
    return LocalField::padic(o.p);
  }
  validation("unknown flavor '" + flavor + "' (expected fq or qp)");
}

LocalField require_field(const FieldOptions& o) {
  auto f = field_from(o);
  if (!f) validation("a field is required: --flavor fq --q Q or --flavor qp --p P");
  return *f;
}

// Module from --module or --builtin; a --q given alongside must agree.
TModule load_module(const Options& o) {
  if (o.module_path.empty() == o.builtin.empty()) validation("exactly one of --module and --builtin is required");
  TModule m = TModule::carlitz(2);
  if (!o.module_path.empty()) {
    try {
      m = parse_tmodule(read_file(o.module_path));
    } catch (const ParseError& e) {
      throw ParseError(e.line(), e.column(), o.module_path + ": " + e.message());
    }
  } else {
    const int q = o.field.q == 0 ? 2 : o.field.q;
    if (q < 2 || q > kMaxQ) validation("--q must lie in 2.." + std::to_string(kMaxQ));
    if (o.builtin == "carlitz") {
      m = TModule::carlitz(q);
    } else if (o.builtin == "nilpotent") {
      m = TModule::nilpotent_example(q);
    } else if (o.builtin == "anderson-coleman") {
      m = anderson_coleman_example(q, o.precision + 10);
    } else {
      validation("unknown builtin module '" + o.builtin + "' (carlitz, nilpotent, anderson-coleman)");
    }
  }
  if (o.field.q != 0 && o.field.q != m.q()) {
    fail(ErrorKind::kFlavorMismatch, "--q " + std::to_string(o.field.q) + " disagrees with the module's q = " +
                                         std::to_string(m.q()));
  }
  return m;
}

std::vector<FqPoly> parse_a_list(const Options& o, const GaloisField& fq) {
  if (o.a_list.empty()) validation("--a needs at least one polynomial");
  std::vector<FqPoly> out;
  for (const auto& s : o.a_list) out.push_back(parse_fq_poly(s, fq));
  return out;
}

std::string base_valuation(std::int64_t v, int e) { return render(Rational(v, e)); }

// Points are shown to a few significant digits; the residual column carries the precision.
std::string render_point(const LocalPoint& z) {
  constexpr std::int64_t kShownDigits = 6;
  std::string s;
  for (const auto& x : z) {
    s += (s.empty() ? "" : ", ") + (x.is_zero() ? std::string("0") : x.with_precision(x.valuation_bound() + kShownDigits).render());
  }
  return "(" + s + ")";
}

std::string render_rational_point(const RationalPoint& z) {
  std::string s;
  for (const auto& x : z) s += (s.empty() ? "" : ", ") + x.render();
  return "(" + s + ")";
}

std::string run_torsion(const Options& o) {
  const TModule m = load_module(o);
  check_precision(o.precision);
  ExtensionBudget budget;
  {
    const auto comma = o.ext_budget.find(',');
    if (comma == std::string::npos) validation("--ext-budget expects E,F");
    try {
      budget.e_max = std::stoi(o.ext_budget.substr(0, comma));
      budget.f_max = std::stoi(o.ext_budget.substr(comma + 1));
    } catch (const std::exception&) {
      validation("--ext-budget expects E,F, got '" + o.ext_budget + "'");
    }
    if (budget.e_max < 1 || budget.f_max < 1) validation("--ext-budget entries must be positive");
  }
  std::ostringstream out;
  for (const auto& a : parse_a_list(o, m.constants())) {
    const BigInt count = torsion_count(m, a);
    out << "a = " << a.render() << "\n";
    out << "  torsion count: " << count << "\n";
    if (!a.is_constant() && m.dphi(a) == scalar_matrix(m.constants(), m.dimension(), Scalar(RationalFn(a)))) {
      out << "  lattice quotient count (d = " << torsion_degree(m, a) / a.degree() << "): "
          << lattice_quotient_count({torsion_degree(m, a) / a.degree(), 0}, a) << "\n";
    }
    if (o.count_only) continue;
    const auto res = torsion_points(m, a, o.precision, budget);
    const auto phi_a = m.phi(a);
    out << "  field: " << res.field.describe() << (res.complete ? "" : " (incomplete)") << "\n";
    out << "  points found: " << res.points.size() << " of " << res.expected << "\n";
    for (const auto& z : res.points) {
      std::string vals;
      for (const auto& x : z) {
        vals += (vals.empty() ? "" : ", ") + (x.is_zero() ? std::string("inf") : base_valuation(x.valuation(), res.field.ramification()));
      }
      out << "  " << render_point(z) << "  valuation " << vals << "  residual >= "
          << std::min(min_valuation(phi_a.evaluate(std::span<const LocalElem>(z))), o.precision) << "\n";
    }
  }
  return out.str();
}

// Deterministic test points: first exponent and digits follow fixed arithmetic patterns.
LocalPoint grid_point(const LocalField& field, int index, int dim, std::int64_t precision) {
  const auto r = static_cast<int>(field.residue().size());
  LocalPoint z;
  for (int i = 0; i < dim; ++i) {
    const int k = index * dim + i;
    const std::int64_t first = (k % 9) - 1;
    std::vector<LocalElem::Digit> digits;
    for (std::int64_t j = first; j < precision; ++j) {
      const auto d = static_cast<int>((7 * k + 3 * (j - first) * (j - first) + 1) % r);
      digits.push_back(static_cast<LocalElem::Digit>(j == first && d == 0 ? 1 : d));
    }
    z.push_back(LocalElem::from_digits(field, first, std::move(digits), precision));
  }
  return z;
}

std::string run_exp_check(const Options& o) {
  const TModule m = load_module(o);
  check_precision(o.precision);
  if (o.truncation < 1 || o.truncation > 12) validation("--truncation must lie in 1..12");
  if (o.points < 1 || o.points > 1000) validation("--points must lie in 1..1000");
  const auto e = exp_coeffs(m, o.truncation);
  const auto field = LocalField::laurent(m.q());
  std::ostringstream out;
  out << "a,point,residual,status\n";
  for (const auto& a : parse_a_list(o, m.constants())) {
    int checked = 0;
    for (int k = 0; k < 10 * o.points && checked < o.points; ++k) {
      const auto z = grid_point(field, k, m.dimension(), o.precision);
      try {
        const auto r = verify_functional_equation(m, e, a, z, o.precision);
        const auto shown = std::min(r, o.precision);
        out << a.render() << "," << k << "," << shown << "," << (shown >= o.precision - kResidualMargin ? "ok" : "low")
            << "\n";
        ++checked;
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::kExpDivergence && err.kind() != ErrorKind::kTruncationInsufficient) throw;
      }
    }
    if (checked < o.points) {
      fail(ErrorKind::kTruncationInsufficient, "only " + std::to_string(checked) + " convergent points for a = " +
                                                   a.render());
    }
  }
  return out.str();
}

void collect_names(const Expr& e, std::vector<std::string>& names) {
  if (e.kind == Expr::Kind::kName && std::find(names.begin(), names.end(), e.name) == names.end()) {
    names.push_back(e.name);
  }
  for (const auto& a : e.args) collect_names(a, names);
}

std::string run_hensel(const Options& o) {
  const LocalField field = require_field(o.field);
  if (o.digits < 1 || o.digits > kMaxPrecision) validation("--digits must lie in 1.." + std::to_string(kMaxPrecision));
  if (o.system.empty()) validation("--system is required");
  std::vector<std::string> vars = o.vars;
  if (vars.empty()) {
    std::string rest = o.system;
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const auto semi = rest.find(';', pos);
      collect_names(parse_expr(rest.substr(pos, semi - pos)), vars);
      if (semi == std::string::npos) break;
      pos = semi + 1;
    }
    std::erase_if(vars, [&](const std::string& v) { return field.is_laurent() && (v == "T" || v == "g"); });
    std::sort(vars.begin(), vars.end());
  }
  const std::int64_t precision = std::max<std::int64_t>(2 * o.digits, o.digits + 10);
  const auto f = AnalyticMap::parse(field, o.system, {}, vars, precision);
  if (static_cast<int>(o.start.size()) != f.source_dim()) {
    validation("--start needs " + std::to_string(f.source_dim()) + " values for unknowns " + [&] {
      std::string s;
      for (const auto& v : vars) s += (s.empty() ? "" : ",") + v;
      return s;
    }());
  }
  const auto k = GlobalField::of(field);
  LocalPoint x0;
  for (const auto& s : o.start) x0.push_back(embed(parse_qk(s, k), field, precision));
  const auto run = newton_solve(f, x0, o.digits);
  std::ostringstream out;
  for (std::size_t i = 0; i < run.steps.size(); ++i) {
    const auto& s = run.steps[i];
    out << "step " << i + 1 << ": residual " << s.residual_before << " -> " << std::min(s.residual_after, precision)
        << ", det valuation " << s.det_valuation << "\n";
  }
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const auto& x = run.root[i];
    out << vars[i] << " digits:";
    for (std::int64_t j = 0; j < o.digits; ++j) out << (j == 0 ? " " : ",") << static_cast<int>(x.digit(j));
    out << "\n";
  }
  const auto fx = f.evaluate(run.root, o.digits);
  const bool verified = min_valuation(fx) >= o.digits;
  out << "verification: v(F(x)) >= " << o.digits << (verified ? " holds" : " FAILS") << "\n";
  if (!verified) fail(ErrorKind::kHenselConditionFailed, "the lifted root does not satisfy the system");
  return out.str();
}

std::string run_enumerate(const Options& o) {
  const GlobalField k = [&] {
    const auto f = field_from(o.field);
    if (!f) validation("a field is required: --flavor fq --q Q or --flavor qp --p P");
    return GlobalField::of(*f);
  }();
  check_height(o.t);
  if (o.n < 1 || o.n > 4) validation("--n must lie in 1..4");
  const auto pts = enumerate_rationals(k, o.n, o.t);
  std::ostringstream out;
  out << "count: " << pts.size() << "\n";
  if (!o.count_only) {
    for (const auto& z : pts) out << render_rational_point(z) << "  height " << height(z).value << "\n";
  }
  return out.str();
}

struct LoadedSet {
  SetDescription description;
  AnalyticSetSpec set;
  AlgebraicPartSpec algebraic;
};

LoadedSet load_set(const Options& o) {
  if (o.set_path.empty()) validation("--set is required");
  check_precision(o.precision);
  try {
    auto d = parse_set_spec(read_file(o.set_path));
    auto w = build_set(d, field_from(o.field), o.precision);
    auto alg = build_algebraic_part(d, w);
    return {std::move(d), std::move(w), std::move(alg)};
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), o.set_path + ": " + e.message());
  }
}

std::string run_count(const Options& o) {
  const auto loaded = load_set(o);
  if (o.t_grid.empty()) validation("--t needs at least one height");
  std::vector<BigInt> grid;
  for (auto t : o.t_grid) {
    check_height(t);
    grid.emplace_back(t);
  }
  const int delta = o.deltas.empty() ? 1 : o.deltas.front();
  if (delta < 1 || delta > 6) validation("--delta must lie in 1..6");
  return render_csv(count_report(loaded.set, loaded.algebraic, grid, o.precision, delta, o.timing));
}

std::string run_cover(const Options& o) {
  const auto loaded = load_set(o);
  check_height(o.t);
  const std::vector<int> deltas = o.deltas.empty() ? std::vector<int>{1, 2, 3} : o.deltas;
  const auto names = ambient_names(loaded.description, loaded.set.ambient_dim());
  const auto pts = rational_points(loaded.set, o.t, o.precision);
  std::ostringstream out;
  out << "points: " << pts.size() << "\n";
  for (int delta : deltas) {
    if (delta < 1 || delta > 6) validation("--delta must lie in 1..6");
    const auto cover = cover_points(pts, loaded.set.ambient_dim(), delta);
    out << "delta " << delta << ": " << cover.size() << " hypersurface" << (cover.size() == 1 ? "" : "s") << "\n";
    for (const auto& h : cover) out << "  " << h.render(names) << " = 0\n";
  }
  return out.str();
}

std::string run_j_invariant(const Options& o) {
  const TModule m = load_module(o);
  return "j = " + std::to_string(j_invariant(m)) + "\n";
}

void add_field_flags(CLI::App* sub, Options& o) {
  sub->add_option("--flavor", o.field.flavor, "fq (F_q((1/T))) or qp (Q_p)")->check(CLI::IsMember({"fq", "qp"}));
  sub->add_option("--q", o.field.q, "constant field size for the fq flavor");
  sub->add_option("--p", o.field.p, "prime for the qp flavor");
  sub->add_option("--e", o.field.e, "ramification index of the fq extension");
  sub->add_option("--f", o.field.f, "residue degree of the fq extension");
}

void add_module_flags(CLI::App* sub, Options& o) {
  sub->add_option("--module", o.module_path, "T-module file (m, q, phi_T, label)");
  sub->add_option("--builtin", o.builtin, "carlitz, nilpotent or anderson-coleman");
  sub->add_option("--q", o.field.q, "constant field size");
}

void add_common_flags(CLI::App* sub, Options& o) {
  sub->add_option("--out", o.out, "output file, - for standard output");
  sub->add_option("--precision", o.precision, "absolute precision");
  sub->add_flag("--timing", o.timing, "record elapsed times");
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) validation("cannot write '" + path + "'");
  file << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Arithmetic of T-modules over local fields and rational point counts", "ffarith"};
  app.set_config("--config", "", "read flags from a TOML or INI file");
  app.require_subcommand(1);

  auto* torsion = app.add_subcommand("torsion", "torsion counts and points per a(T)");
  add_module_flags(torsion, o);
  add_common_flags(torsion, o);
  torsion->add_option("--a", o.a_list, "annihilating polynomials")->delimiter(',')->required();
  torsion->add_option("--ext-budget", o.ext_budget, "largest extension E,F to search");
  torsion->add_flag("--count-only", o.count_only, "skip the point search");

  auto* exp_check = app.add_subcommand("exp-check", "functional-equation residual table");
  add_module_flags(exp_check, o);
  add_common_flags(exp_check, o);
  exp_check->add_option("--a", o.a_list, "polynomials a(T)")->delimiter(',')->required();
  exp_check->add_option("--truncation", o.truncation, "number of exponential coefficients");
  exp_check->add_option("--points", o.points, "convergent points per a");

  auto* hensel = app.add_subcommand("hensel", "lift a root of a polynomial system");
  add_field_flags(hensel, o);
  hensel->add_option("--out", o.out, "output file, - for standard output");
  hensel->add_option("--system", o.system, "equations separated by ;")->required();
  hensel->add_option("--vars", o.vars, "unknowns in order (default: names in the system, sorted)")->delimiter(',');
  hensel->add_option("--start", o.start, "approximate root, one value per unknown")->delimiter(',')->required();
  hensel->add_option("--digits", o.digits, "digits to lift and print");

  auto* enumerate = app.add_subcommand("enumerate", "rational points of bounded height");
  add_field_flags(enumerate, o);
  enumerate->add_option("--out", o.out, "output file, - for standard output");
  enumerate->add_option("--n", o.n, "dimension");
  enumerate->add_option("--t", o.t, "height bound");
  enumerate->add_flag("--count-only", o.count_only, "print only the count");

  auto* count = app.add_subcommand("count", "transcendent point counts as CSV");
  add_field_flags(count, o);
  add_common_flags(count, o);
  count->add_option("--set", o.set_path, "set file")->required();
  count->add_option("--t", o.t_grid, "height grid")->delimiter(',')->required();
  count->add_option("--delta", o.deltas, "cover degree for the cover_size column");

  auto* cover = app.add_subcommand("cover", "hypersurface covers of the rational points");
  add_field_flags(cover, o);
  add_common_flags(cover, o);
  cover->add_option("--set", o.set_path, "set file")->required();
  cover->add_option("--t", o.t, "height bound");
  cover->add_option("--delta", o.deltas, "cover degrees")->delimiter(',');

  auto* jinv = app.add_subcommand("j-invariant", "smallest j with dphi(T^j) scalar");
  add_module_flags(jinv, o);
  jinv->add_option("--out", o.out, "output file, - for standard output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    std::string text;
    if (torsion->parsed()) text = run_torsion(o);
    if (exp_check->parsed()) text = run_exp_check(o);
    if (hensel->parsed()) text = run_hensel(o);
    if (enumerate->parsed()) text = run_enumerate(o);
    if (count->parsed()) text = run_count(o);
    if (cover->parsed()) text = run_cover(o);
    if (jinv->parsed()) text = run_j_invariant(o);
    write_output(text, o.out, out);
    return kExitOk;
  } catch (const ParseError& e) {
    err << "error: line " << e.line() << ", column " << e.column() << ": " << e.message() << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_budget_error(e.kind()) ? kExitBudget : kExitValidation;
  }
}

}  // namespace ffarith::cli
