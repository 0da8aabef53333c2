#include <doctest.h>

#include <cmath>
#include <random>

#include "lgh/diagnostics.hpp"
#include "support.hpp"

using namespace lgh;

namespace {

namespace mp = boost::multiprecision;

const ProductGroup kT2{{GroupKind::Circle, 24}, {GroupKind::Circle, 24}};
const ProductGroup kT1S3{{GroupKind::Circle, 16}, {GroupKind::SU2, 12}};
const ProductGroup kS3{{GroupKind::Trivial, 0}, {GroupKind::SU2, 12}};

OperatorSpec make_spec(ProductGroup group, std::string_view a, std::string_view q = "rational:0") {
  OperatorSpec s;
  s.group = group;
  s.a = parse_scalar(a);
  s.q = parse_scalar(q);
  return s;
}

bool exactly_zero(const FourierTable& t) {
  for (const auto& [key, b] : t.blocks())
    for (const cplx& v : b.data)
      if (v != cplx(0.0)) return false;
  return true;
}

}  // namespace

TEST_CASE("shell profile: rational floor against big-rational brute force") {
  const OperatorSpec spec = make_spec(kT2, "rational:2/3");
  const ShellGapProfile p = shell_profile(spec);
  REQUIRE(p.shells.size() >= 20);
  CHECK(p.certified);
  const BigRational a(2, 3);
  for (const ShellMinimum& m : p.shells) {
    BigRational best = -1;
    for (int k = -24; k <= 24; ++k)
      for (int l = -24; l <= 24; ++l) {
        if (shell_of(GroupKind::Circle, k, GroupKind::Circle, l) != m.shell) continue;
        const BigRational g = mp::abs(BigRational(k) + a * l);
        if (g != 0 && (best < 0 || g < best)) best = g;
      }
    CHECK(best >= BigRational(1, 3));
    CHECK(m.gap == doctest::Approx(best.convert_to<double>()).epsilon(1e-15));
  }
}

TEST_CASE("shell profile: sqrt(2) minima dominate 1/(3s) up to shell 100") {
  const ProductGroup big{{GroupKind::Circle, 100}, {GroupKind::Circle, 100}};
  const ShellGapProfile p = shell_profile(make_spec(big, "quadratic:0+1*sqrt(2)"));
  const long double r2 = std::sqrt(2.0L);
  std::map<double, long double> oracle;
  for (int k = -100; k <= 100; ++k)
    for (int l = -100; l <= 100; ++l) {
      if (k == 0 && l == 0) continue;
      const double s = shell_of(GroupKind::Circle, k, GroupKind::Circle, l);
      const long double norm = std::abs(static_cast<long double>(k) * k - 2.0L * l * l);
      const long double g = ((k >= 0) == (l >= 0)) ? std::abs(k + r2 * l) : norm / std::abs(k - r2 * l);
      auto [it, ins] = oracle.emplace(s, g);
      if (!ins) it->second = std::min(it->second, g);
    }
  int checked = 0;
  for (const ShellMinimum& m : p.shells) {
    if (m.shell > 100) continue;
    ++checked;
    CHECK(m.gap >= 1.0 / (3.0 * m.shell));
    CHECK(m.gap == doctest::Approx(static_cast<double>(oracle.at(m.shell))).epsilon(1e-13));
  }
  CHECK(checked >= 99);
}

TEST_CASE("shell profile: Liouville convergent shell") {
  const OperatorSpec spec = make_spec(kT2, "liouville:4");
  const auto w = liouville_witnesses(spec);
  REQUIRE(w.size() == 3);
  const auto conv = liouville_convergents(3);
  CHECK(w[2].k == -conv[2].first);
  CHECK(w[2].l == conv[2].second);
  CHECK(w[2].gap > 0);
  CHECK(w[2].gap <= BigRational(BigInt(1), mp::pow(conv[2].second, 3)));
  const ShellGapProfile p = shell_profile(spec);
  bool found = false;
  for (const ShellMinimum& m : p.shells)
    if (m.witness && std::abs(m.shell - w[2].shell) < 1e-6 * w[2].shell) {
      found = true;
      CHECK(m.log_gap <= -3 * std::log(1e6) + 1e-9);
    }
  CHECK(found);
}

TEST_CASE("Diophantine fits") {
  const DiophantineFit root2 = fit_diophantine(shell_profile(make_spec(kT2, "quadratic:0+1*sqrt(2)")));
  CHECK(root2.ok);
  CHECK(root2.M == doctest::Approx(1.0).epsilon(0.3));
  CHECK(root2.r2 > 0.8);
  CHECK_FALSE(root2.no_polynomial_bound);

  const DiophantineFit rational = fit_diophantine(shell_profile(make_spec(kT2, "rational:2/3")));
  CHECK(std::abs(rational.M) < 0.3);
  CHECK_FALSE(rational.no_polynomial_bound);

  const DiophantineFit liou = fit_diophantine(shell_profile(make_spec(kT2, "liouville:5")));
  CHECK(liou.no_polynomial_bound);

  ShellGapProfile few;
  few.shells.resize(3);
  CHECK_FALSE(fit_diophantine(few).ok);
}

TEST_CASE("certified floors hold on every slot inside the truncation") {
  const char* as[] = {"quadratic:0+1*sqrt(2)", "quadratic:1/3-2*sqrt(5)", "rational:2/3", "rational:-7/4",
                      "complex:1/2+1/3*i", "complex:0+1i", "rational:0", "quadratic:-1/2+1/7*sqrt(3)"};
  const char* qs[] = {"rational:0", "complex:0+1/2*i", "complex:0+3/2*i", "rational:1", "complex:1/3+1/5*i",
                      "complex:0+1/3*i"};
  const ProductGroup groups[] = {{{GroupKind::Circle, 12}, {GroupKind::Circle, 12}},
                                 {{GroupKind::Circle, 8}, {GroupKind::SU2, 8}},
                                 {{GroupKind::Trivial, 0}, {GroupKind::SU2, 9}},
                                 {{GroupKind::SU2, 6}, {GroupKind::Circle, 6}},
                                 {{GroupKind::SU2, 5}, {GroupKind::SU2, 5}}};
  int certified = 0;
  long long violations = 0;
  for (const ProductGroup& g : groups)
    for (const char* a : as)
      for (const char* q : qs) {
        const OperatorSpec spec = make_spec(g, a, q);
        const GapFloor f = certified_floor(spec);
        if (!f.certified) continue;
        ++certified;
        const SpecSymbol sym(spec);
        for_each_slot(g, [&](const SymbolSlot& s) {
          const GapValue v = sym.gap(s.lambda2, s.mu2);
          if (v.exact_zero) return;
          const double w = rep_weight(g.factor1.kind, s.reps.xi) + rep_weight(g.factor2.kind, s.reps.eta);
          if (v.magnitude < f.C * std::pow(w, -f.M) * (1 - 1e-12)) ++violations;
        });
      }
  CHECK(certified >= 200);
  CHECK(violations == 0);
  CHECK_FALSE(certified_floor(make_spec(kT2, "float:1.5")).certified);
  CHECK_FALSE(certified_floor(make_spec(kT2, "liouville:5")).certified);
}

TEST_CASE("verdict examples") {
  struct Case {
    ProductGroup g;
    const char* a;
    const char* q;
    Verdict gh, gs;
  };
  const Case cases[] = {
      {kT2, "quadratic:0+1*sqrt(2)", "rational:0", Verdict::YesCertified, Verdict::YesCertified},
      {kT1S3, "quadratic:0+1*sqrt(2)", "rational:0", Verdict::NoCertified, Verdict::YesCertified},
      {kT1S3, "rational:3", "rational:0", Verdict::NoCertified, Verdict::YesCertified},
      {kT2, "complex:0+1i", "rational:0", Verdict::YesCertified, Verdict::YesCertified},
      {kT2, "rational:2/3", "rational:0", Verdict::NoCertified, Verdict::YesCertified},
      {kT2, "liouville:5", "rational:0", Verdict::NoCertified, Verdict::NoCertified},
      {kS3, "rational:1", "quadratic:0+1*sqrt(2)", Verdict::YesCertified, Verdict::YesCertified},
      {kS3, "rational:1", "complex:0+3/2*i", Verdict::NoCertified, Verdict::YesCertified},
      {kS3, "rational:1", "complex:0+1/3*i", Verdict::YesCertified, Verdict::YesCertified},
  };
  for (const Case& c : cases) {
    const DiagnosticsReport r = diagnose(make_spec(c.g, c.a, c.q));
    CAPTURE(c.a);
    CAPTURE(c.q);
    CHECK(r.gh == c.gh);
    CHECK(r.gs == c.gs);
    CHECK(r.gh_mod_kernel == r.gs);
    CHECK(verdicts_consistent(r));
  }
  const DiagnosticsReport liou = diagnose(make_spec(kT2, "liouville:5"));
  CHECK(liou.witnesses.size() == 4);
  const DiagnosticsReport flt = diagnose(make_spec(kT2, "float:1.4142135623730951"));
  CHECK(flt.gh == Verdict::YesEvidence);
  CHECK(flt.gs == Verdict::YesEvidence);
}

TEST_CASE("variable coefficients are diagnosed through the normal form") {
  OperatorSpec s = make_spec(kT1S3, "rational:0");
  s.a_var = parse_trigpoly("trigpoly:[complex:0+1/2*i, quadratic:0-1*sqrt(2), complex:0-1/2*i]");
  const DiagnosticsReport r = diagnose(s);
  CHECK(r.from_normal_form);
  CHECK(r.gh == Verdict::NoCertified);
  CHECK(r.gs == Verdict::YesCertified);
  OperatorSpec t = make_spec(kT2, "rational:0");
  t.a_var = parse_trigpoly("trigpoly:[complex:0+1/2*i, quadratic:0+1*sqrt(2), complex:0-1/2*i]");
  CHECK(gh_verdict(t) == Verdict::YesCertified);
}

TEST_CASE("verdict invariants over a random corpus") {
  std::mt19937_64 rng(5);
  const char* as[] = {"quadratic:0+1*sqrt(2)", "rational:2/3", "complex:1/2+1/3*i", "liouville:4", "float:0.7",
                      "rational:0", "quadratic:1+1*sqrt(3)"};
  const char* qs[] = {"rational:0", "complex:0+1/2*i", "rational:1", "complex:0+1i", "float:0.25"};
  const ProductGroup groups[] = {kT2, kT1S3, kS3};
  for (int trial = 0; trial < 40; ++trial) {
    const OperatorSpec spec = make_spec(groups[rng() % 3], as[rng() % 7], qs[rng() % 5]);
    const DiagnosticsReport r = diagnose(spec);
    CHECK(verdicts_consistent(r));
    CHECK(r.gh_mod_kernel == r.gs);
  }
}

TEST_CASE("kernel counterexamples") {
  const OperatorSpec mixed = make_spec(kT1S3, "quadratic:0+1*sqrt(2)");
  const KernelCounterexample k = build_kernel_counterexample(mixed);
  CHECK_FALSE(k.degenerate);
  CHECK(k.slots == 7);
  for (const auto& [key, b] : k.table.blocks()) {
    CHECK(key.xi == 0);
    CHECK(key.eta % 2 == 0);
    CHECK(b.at(0, 0, static_cast<int>(key.eta / 2), 0) == cplx(1.0));
  }
  CHECK(exactly_zero(apply_operator_spectral(mixed, k.table)));
  CHECK(decay_classify(k.table).classification == DecayClass::NonDecaying);

  const OperatorSpec diag = make_spec(kT2, "rational:1");
  const KernelCounterexample d = build_kernel_counterexample(diag);
  CHECK(d.slots == 49);
  for (const auto& [key, b] : d.table.blocks()) CHECK(key.xi + key.eta == 0);
  CHECK(exactly_zero(apply_operator_spectral(diag, d.table)));
  CHECK(decay_classify(d.table).classification == DecayClass::NonDecaying);

  const KernelCounterexample c = build_kernel_counterexample(make_spec(kT2, "quadratic:0+1*sqrt(2)"));
  CHECK(c.degenerate);
  CHECK(c.slots == 1);
  CHECK_THROWS_AS(build_kernel_counterexample(make_spec(kS3, "rational:1", "quadratic:0+1*sqrt(2)")),
                  std::invalid_argument);
}

TEST_CASE("non-solvable right-hand sides") {
  const OperatorSpec liou = make_spec(kT2, "liouville:5");
  const NonSolvableRhs rhs = build_nonsolvable_rhs(liou, 3);
  REQUIRE_FALSE(rhs.slots.empty());
  for (const NonSolvableSlot& s : rhs.slots) {
    CHECK(s.exceeds);
    CHECK(s.log_solution > 3 * s.witness.log_shell);
    const BigRational exact = mp::abs(BigRational(s.witness.k) + liou.a.re.rational() * s.witness.l);
    CHECK(exact == s.witness.gap);
  }
  CHECK(rhs.table.blocks().size() == rhs.slots.size());
  for (const auto& [key, b] : rhs.table.blocks()) CHECK_FALSE(SpecSymbol(liou).is_zero(2 * key.xi, 2 * key.eta));
  CHECK(build_nonsolvable_rhs(liou, 1).slots.size() >= 2);
  CHECK_THROWS_AS(build_nonsolvable_rhs(make_spec(kT2, "quadratic:0+1*sqrt(2)"), 3), std::invalid_argument);
  CHECK_THROWS_AS(build_nonsolvable_rhs(make_spec(kT2, "rational:2/3"), 3), std::invalid_argument);
}

TEST_CASE("membership in the decaying-on-singular-set class") {
  const OperatorSpec spec = make_spec(kT1S3, "quadratic:0+1*sqrt(2)");
  std::mt19937_64 rng(9);
  FourierTable low(spec.group);
  for (Index eta = 0; eta <= 2; ++eta) {
    Block& b = low.block({0, eta});
    for (cplx& v : b.data) v = lgh::test::random_cplx(rng);
  }
  const Membership smooth = membership_M_classifier(low, spec);
  CHECK(smooth.member);
  CHECK(smooth.singular_slots == 7);

  CHECK_FALSE(membership_M_classifier(build_kernel_counterexample(spec).table, spec).member);

  FourierTable off(spec.group);
  off.set({1, 4}, 0, 0, 2, 1, 1.0);
  off.set({3, 8}, 0, 0, 4, 4, 1.0);
  const Membership vacuous = membership_M_classifier(off, spec);
  CHECK(vacuous.member);
  CHECK(vacuous.note == "vanishes on the singular set");
}
