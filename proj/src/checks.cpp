#include "lgh/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "lgh/io.hpp"

namespace lgh {

namespace {

constexpr double kPi = std::numbers::pi;

EulerAngles random_angles(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> phi(0, 2 * kPi), theta(0, kPi), psi(-2 * kPi, 2 * kPi);
  return {phi(rng), theta(rng), psi(rng)};
}

double max_entry(const FourierTable& t) {
  double m = 0;
  for (const auto& [key, b] : t.blocks())
    for (const cplx& v : b.data) m = std::max(m, std::abs(v));
  return m;
}

bool singular_row(const SpecSymbol& symbol, const ProductGroup& g, const RepPair& key, int m, int r) {
  return symbol.zero(twice_eigenvalue(g.factor1.kind, key.xi, m), twice_eigenvalue(g.factor2.kind, key.eta, r));
}

double largest_off_singular(const OperatorSpec& reduced, const FourierTable& t) {
  const SpecSymbol symbol(reduced);
  double worst = 0;
  for (const auto& [key, b] : t.blocks())
    for (int m = 0; m < b.d1; ++m)
      for (int r = 0; r < b.d2; ++r) {
        if (singular_row(symbol, t.group(), key, m, r)) continue;
        for (int n = 0; n < b.d1; ++n)
          for (int s = 0; s < b.d2; ++s) worst = std::max(worst, std::abs(b.at(m, n, r, s)));
      }
  return worst;
}

int table_band(const std::optional<FieldFunction>& f, int which) {
  if (!f) return 0;
  if (!f->table()) return 1;
  const Factor& fac = which == 1 ? f->table()->group().factor1 : f->table()->group().factor2;
  return fac.trunc;
}

Factor shrink(Factor f, int by) {
  f.trunc = std::max(0, f.trunc - by);
  return f;
}

}  // namespace

CheckResult make_check(std::string name, double value, double tolerance, std::string detail) {
  return {std::move(name), value, tolerance, value <= tolerance, std::move(detail)};
}

CheckResult make_flag(std::string name, bool ok, std::string detail) {
  CheckResult c{std::move(name), ok ? 0.0 : 1.0, 0.0, ok, std::move(detail)};
  c.measured = false;
  return c;
}

std::string format_check(const CheckResult& c) {
  char buf[64];
  std::string out = c.pass ? "PASS " : "FAIL ";
  out += c.name;
  if (c.measured) {
    std::snprintf(buf, sizeof buf, " value=%.3e tol=%.1e", c.value, c.tolerance);
    out += buf;
  }
  if (!c.detail.empty()) out += " (" + c.detail + ")";
  return out;
}

bool all_pass(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

FourierTable random_coefficients(const ProductGroup& group, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const BlockLayout l1(group.factor1), l2(group.factor2);
  std::vector<cplx> dense(l1.size() * l2.size());
  for (cplx& v : dense) {
    const double re = u(rng);
    v = cplx(re, u(rng));
  }
  return from_dense(group, l1, l2, dense);
}

CheckResult plancherel_check(const std::string& name, const ProductGroup& group, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const ProductTransform transform(default_grid(group), group);
  double worst = 0;
  for (int i = 0; i < count; ++i) {
    const FourierTable u = random_coefficients(group, rng);
    const double pn = plancherel_norm(u);
    worst = std::max(worst, std::abs(quadrature_norm(transform.inverse(u)) - pn) / pn);
  }
  return make_check(name, worst, 1e-10, "functions=" + std::to_string(count));
}

CheckResult su2_unitarity_check(int max_two_ell, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0;
  for (int J = 0; J <= max_two_ell; ++J)
    for (int t = 0; t < trials; ++t) {
      const Eigen::MatrixXcd m = rep_matrix(J, random_angles(rng));
      worst = std::max(worst, (m * m.adjoint() - Eigen::MatrixXcd::Identity(J + 1, J + 1)).norm());
    }
  return make_check("su2 unitarity", worst, 1e-12, "two_ell<=" + std::to_string(max_two_ell));
}

CheckResult su2_homomorphism_check(int max_two_ell, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0;
  for (int J = 0; J <= max_two_ell; ++J)
    for (int t = 0; t < trials; ++t) {
      const EulerAngles x = random_angles(rng), y = random_angles(rng);
      const EulerAngles xy = euler_from_matrix(su2_matrix(x) * su2_matrix(y));
      worst = std::max(worst, (rep_matrix(J, xy) - rep_matrix(J, x) * rep_matrix(J, y)).norm());
    }
  return make_check("su2 homomorphism", worst, 1e-10, "two_ell<=" + std::to_string(max_two_ell));
}

CheckResult su2_orthonormality_check(int two_ell_max) {
  const FactorGrid grid = su2_quadrature(two_ell_max);
  std::size_t columns = 0;
  for (int J = 0; J <= two_ell_max; ++J) columns += static_cast<std::size_t>(J + 1) * (J + 1);
  Eigen::MatrixXcd basis(grid.size(), columns);
  Eigen::VectorXd expect(columns);
  for (std::size_t node = 0; node < grid.size(); ++node) {
    const double w = std::sqrt(grid.weight(node));
    std::size_t c = 0;
    for (int J = 0; J <= two_ell_max; ++J) {
      const Eigen::MatrixXcd t = rep_matrix(J, grid.su2_node(node));
      for (int m = 0; m <= J; ++m)
        for (int n = 0; n <= J; ++n, ++c) {
          basis(node, c) = w * t(m, n);
          expect(c) = 1.0 / (J + 1);
        }
    }
  }
  Eigen::MatrixXcd gram = basis.adjoint() * basis;
  gram.diagonal() -= expect.cast<cplx>();
  return make_check("su2 quadrature orthonormality", gram.cwiseAbs().maxCoeff(), 1e-12,
                    "two_ell<=" + std::to_string(two_ell_max));
}

CheckResult su2_dpsi_check(int max_two_ell, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double h = 1e-5;
  double worst = 0;
  for (int J = 0; J <= max_two_ell; ++J)
    for (int t = 0; t < trials; ++t) {
      const EulerAngles x = random_angles(rng);
      EulerAngles xp = x, xm = x;
      xp.psi += h;
      xm.psi -= h;
      const Eigen::MatrixXcd deriv = (rep_matrix(J, xp) - rep_matrix(J, xm)) / (2 * h);
      const Eigen::MatrixXcd symbol = rep_matrix(J, x).adjoint() * deriv;
      worst = std::max(worst, (symbol - dpsi_symbol(J)).cwiseAbs().maxCoeff());
    }
  return make_check("su2 d/dpsi symbol", worst, 1e-7, "two_ell<=" + std::to_string(max_two_ell));
}

CheckResult rational_gap_oracle(const BigRational& a, int range) {
  const SymbolForm form(ScalarConstant::rational(a), ScalarConstant::rational(0));
  long long mismatches = 0, slots = 0;
  for (int l = -range; l <= range; ++l)
    for (int m = -range; m <= range; ++m, ++slots) {
      const GapValue g = form.evaluate(2 * l, 2 * m);
      const BigRational naive = boost::multiprecision::abs(BigRational(l) + a * m);
      if (g.exact_zero != (naive == 0) || !g.exact || *g.exact != naive) ++mismatches;
    }
  return make_check("rational gap oracle a=" + a.str(), static_cast<double>(mismatches), 0.0,
                    "slots=" + std::to_string(slots));
}

CheckResult sqrt2_gap_oracle(int range) {
  const SymbolForm form(parse_scalar("quadratic:0+1*sqrt(2)"), ScalarConstant::rational(0));
  const long double r2 = std::sqrt(2.0L);
  long long mismatches = 0, slots = 0;
  for (int k = -range; k <= range; ++k)
    for (int l = -range; l <= range; ++l, ++slots) {
      const GapValue g = form.evaluate(2 * k, 2 * l);
      if (k == 0 && l == 0) {
        mismatches += g.exact_zero ? 0 : 1;
        continue;
      }
      const long long norm = static_cast<long long>(k) * k - 2LL * l * l;
      const bool same_sign = (k >= 0) == (l >= 0);
      const long double expect = same_sign ? std::abs(k + r2 * l)
                                           : std::abs(static_cast<long double>(norm)) / std::abs(k - r2 * l);
      if (g.exact_zero || std::abs(g.magnitude - expect) > 1e-14 * expect) ++mismatches;
    }
  return make_check("sqrt2 conjugate-bound oracle", static_cast<double>(mismatches), 0.0,
                    "slots=" + std::to_string(slots));
}

std::vector<CheckResult> symbol_checks(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  struct Case {
    std::string name;
    ProductGroup group;
    const char* a;
    const char* q;
  };
  const std::vector<Case> cases = {
      {"T2 a=sqrt2", {{GroupKind::Circle, 6}, {GroupKind::Circle, 6}}, "quadratic:0+1*sqrt(2)", "rational:0"},
      {"T2 a=2/3 q=i/2", {{GroupKind::Circle, 6}, {GroupKind::Circle, 6}}, "rational:2/3", "complex:0+1/2*i"},
      {"T1xS3 a=sqrt2", {{GroupKind::Circle, 4}, {GroupKind::SU2, 6}}, "quadratic:0+1*sqrt(2)", "rational:0"},
      {"S3 q=sqrt2", {{GroupKind::Trivial, 0}, {GroupKind::SU2, 8}}, "rational:1", "quadratic:0+1*sqrt(2)"},
  };
  std::vector<CheckResult> out;
  for (const Case& c : cases) {
    OperatorSpec spec;
    spec.group = c.group;
    spec.a = parse_scalar(c.a);
    spec.q = parse_scalar(c.q);
    const ProductTransform transform(default_grid(spec.group), spec.group);
    double worst = 0;
    for (int t = 0; t < 5; ++t) {
      const FourierTable u = random_coefficients(spec.group, rng);
      const FourierTable spectral = apply_operator_spectral(spec, u);
      const FourierTable flow = transform.forward(apply_operator_grid(spec, transform, transform.inverse(u)));
      worst = std::max(worst, max_entry(spectral - flow) / max_entry(spectral));
    }
    out.push_back(make_check("spectral vs flow derivative " + c.name, worst, 1e-10));

    const SpecSymbol symbol(spec);
    double gap_err = 0;
    if (spec.q.is_zero())
      for_each_slot(spec.group, [&](const SymbolSlot& s) {
        const double mag = std::abs(full_symbol(spec, s.reps.xi, s.m, s.reps.eta, s.r));
        const double g = symbol.gap(s.lambda2, s.mu2).magnitude;
        gap_err = std::max(gap_err, std::abs(mag - g) / std::max(1.0, g));
      });
    out.push_back(make_check("symbol magnitude vs gap " + c.name, gap_err, 1e-13));
  }
  return out;
}

OperatorSpec with_truncation(const OperatorSpec& spec, int circle_trunc, int two_ell) {
  OperatorSpec out = spec;
  for (Factor* f : {&out.group.factor1, &out.group.factor2}) {
    if (f->kind == GroupKind::Circle) f->trunc = std::min(f->trunc, circle_trunc);
    if (f->kind == GroupKind::SU2) f->trunc = std::min(f->trunc, two_ell);
  }
  return out;
}

double psi_conjugation_residual(const OperatorSpec& spec, const ConjugatorBundle& bundle, int count,
                                std::mt19937_64& rng) {
  if (spec.group.factor1.kind != GroupKind::Circle) return 0.0;
  double worst = 0;
  for (int i = 0; i < count; ++i) {
    const FourierTable u = random_coefficients(spec.group, rng);
    worst = std::max(worst, conjugation_residual_psi(spec, bundle, u) / plancherel_norm(u));
  }
  return worst;
}

double exp_conjugation_residual(const OperatorSpec& spec, const ConjugatorBundle& bundle, int count,
                                std::mt19937_64& rng) {
  if (!bundle.Q) return 0.0;
  double worst = 0;
  for (int i = 0; i < count; ++i) {
    const FourierTable u = random_coefficients(spec.group, rng);
    worst = std::max(worst, conjugation_residual_exp(spec, bundle, u) / plancherel_norm(u));
  }
  return worst;
}

ManufacturedStats manufactured_solutions(const OperatorSpec& spec, int count, std::mt19937_64& rng) {
  ManufacturedStats stats;
  if (spec.constant_coefficients()) {
    stats.constant_path = true;
    for (int i = 0; i < count; ++i, ++stats.solves) {
      const FourierTable u0 = random_coefficients(spec.group, rng);
      const FourierTable f = apply_operator_spectral(spec, u0);
      const FourierTable u = solve_constant(spec, f);
      const double fnorm = plancherel_norm(f);
      if (fnorm > 0) stats.residual = std::max(stats.residual, residual(spec, u, f) / fnorm);
      stats.mismatch = std::max(stats.mismatch, largest_off_singular(spec, u - u0) / plancherel_norm(u0));
    }
    return stats;
  }
  const ConjugatorBundle bundle = build_conjugators(spec);
  const int by1 = (spec.a_var ? spec.a_var->degree() : 0) + table_band(spec.q_func, 1);
  const ProductGroup small{shrink(spec.group.factor1, by1), shrink(spec.group.factor2, table_band(spec.q_func, 2))};
  const ProductTransform base(default_grid(spec.group), spec.group);
  for (int i = 0; i < count; ++i, ++stats.solves) {
    const FourierTable u0 = random_coefficients(small, rng);
    const FourierTable f = base.forward(apply_operator_grid(spec, base, base.inverse(u0)));
    const FullSolution sol = solve_full(spec, bundle, f);
    stats.residual = std::max(stats.residual, sol.report.residual);
    const ProductTransform work(sol.u.grid, sol.report.work_group);
    GridFunction diff = sol.u;
    const GridFunction g0 = work.inverse(u0);
    for (std::size_t k = 0; k < diff.values.size(); ++k) diff.values[k] -= g0.values[k];
    if (bundle.Q) diff = exp_conjugate(bundle.Q->sample(diff.grid), 1, diff);
    OperatorSpec reduced = spec.normal_form();
    reduced.group = sol.report.work_group;
    stats.mismatch =
        std::max(stats.mismatch, largest_off_singular(reduced, transport(bundle, work, diff)) / plancherel_norm(u0));
  }
  return stats;
}

}  // namespace lgh
