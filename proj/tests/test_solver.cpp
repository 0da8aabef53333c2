#include <doctest.h>

#include <cmath>
#include <random>

#include "lgh/diagnostics.hpp"
#include "lgh/solver.hpp"
#include "support.hpp"

using namespace lgh;
using lgh::test::max_abs_diff;
using lgh::test::random_table;

namespace {

const ProductGroup kT2{{GroupKind::Circle, 16}, {GroupKind::Circle, 16}};
const ProductGroup kT1S3{{GroupKind::Circle, 10}, {GroupKind::SU2, 10}};
const ProductGroup kS3{{GroupKind::Trivial, 0}, {GroupKind::SU2, 12}};

OperatorSpec make_spec(ProductGroup group, std::string_view a, std::string_view q = "rational:0") {
  OperatorSpec s;
  s.group = group;
  s.a = parse_scalar(a);
  s.q = parse_scalar(q);
  return s;
}

bool on_singular_row(const OperatorSpec& spec, const RepPair& key, int m, int r) {
  return SpecSymbol(spec).zero(twice_eigenvalue(spec.group.factor1.kind, key.xi, m),
                               twice_eigenvalue(spec.group.factor2.kind, key.eta, r));
}

// Largest |x - y| / max(|x|, |y|) over slots off the singular set.
double off_singular_relative(const OperatorSpec& spec, const FourierTable& x, const FourierTable& y) {
  double worst = 0;
  for (const auto& [key, b] : x.blocks())
    for (int m = 0; m < b.d1; ++m)
      for (int r = 0; r < b.d2; ++r) {
        if (on_singular_row(spec, key, m, r)) continue;
        for (int n = 0; n < b.d1; ++n)
          for (int s = 0; s < b.d2; ++s) {
            const cplx u = b.at(m, n, r, s), v = y.entry(key, m, n, r, s);
            const double scale = std::max(std::abs(u), std::abs(v));
            if (scale > 0) worst = std::max(worst, std::abs(u - v) / scale);
          }
      }
  return worst;
}

}  // namespace

TEST_CASE("admissibility examples") {
  const OperatorSpec spec = make_spec(kT2, "quadratic:0+1*sqrt(2)");
  FourierTable one(kT2);
  one.set({0, 0}, 0, 0, 0, 0, 1.0);
  const AdmissibilityReport r1 = check_admissible(one, spec);
  CHECK_FALSE(r1.admissible);
  REQUIRE(r1.offending.size() == 1);
  CHECK(r1.offending[0].magnitude == 1.0);

  FourierTable single(kT2);
  single.set({1, 0}, 0, 0, 0, 0, 1.0);
  CHECK(check_admissible(single, spec).admissible);

  const OperatorSpec mixed = make_spec(kT1S3, "quadratic:0+1*sqrt(2)");
  const KernelCounterexample k = build_kernel_counterexample(mixed);
  const AdmissibilityReport rk = check_admissible(k.table, mixed);
  CHECK_FALSE(rk.admissible);
  CHECK(rk.offending.size() == k.slots);
  CHECK_FALSE(rk.heuristic);
  CHECK(check_admissible(one, make_spec(kT2, "float:1.41")).heuristic);
}

TEST_CASE("projection is admissible and idempotent") {
  std::mt19937_64 rng(3);
  for (const OperatorSpec& spec : {make_spec(kT1S3, "quadratic:0+1*sqrt(2)"), make_spec(kT2, "rational:-2/3"),
                                   make_spec(kS3, "rational:1", "complex:0+3/2*i")}) {
    const FourierTable f = random_table(spec.group, rng);
    const FourierTable p = project_admissible(f, spec);
    CHECK(check_admissible(p, spec, 0.0).admissible);
    CHECK(max_abs_diff(project_admissible(p, spec), p) == 0.0);
    CHECK(off_singular_relative(spec, f, p) == 0.0);
  }
}

TEST_CASE("constant-coefficient solve examples") {
  const OperatorSpec spec = make_spec(kT2, "quadratic:0+1*sqrt(2)");
  const FourierTable zero(kT2);
  CHECK(solve_constant(spec, zero).blocks().empty());

  FourierTable single(kT2);
  single.set({1, 1}, 0, 0, 0, 0, 1.0);
  const FourierTable u = solve_constant(spec, single);
  const cplx expect = cplx(0, -1) / (1 + std::sqrt(2.0));
  CHECK(std::abs(u.entry({1, 1}, 0, 0, 0, 0) - expect) < 1e-15);
  CHECK(residual(spec, u, single) < 1e-15);

  FourierTable one(kT2);
  one.set({0, 0}, 0, 0, 0, 0, 1.0);
  try {
    solve_constant(spec, one);
    FAIL("non-admissible input accepted");
  } catch (const NotAdmissible& e) {
    CHECK(e.report().offending.size() == 1);
  }
  OperatorSpec variable = spec;
  variable.a_var = parse_trigpoly("trigpoly:[rational:1]");
  CHECK_THROWS_AS(solve_constant(variable, single), std::invalid_argument);
}

TEST_CASE("manufactured solutions and canonical uniqueness") {
  std::mt19937_64 rng(41);
  const OperatorSpec specs[] = {
      make_spec(kT2, "quadratic:0+1*sqrt(2)"),
      make_spec(kT2, "rational:2/3"),
      make_spec(kT2, "complex:0+1i"),
      make_spec(kT1S3, "quadratic:0+1*sqrt(2)"),
      make_spec(kT1S3, "quadratic:0+1*sqrt(2)", "complex:0+1i"),
      make_spec(kS3, "rational:1", "complex:0+3/2*i"),
      make_spec(kS3, "rational:1", "quadratic:0+1*sqrt(2)"),
  };
  for (const OperatorSpec& spec : specs) {
    for (int trial = 0; trial < 5; ++trial) {
      const FourierTable u0 = random_table(spec.group, rng);
      const FourierTable f = apply_operator_spectral(spec, u0);
      CHECK(check_admissible(f, spec, 0.0).admissible);
      const FourierTable u = solve_constant(spec, f);
      CHECK(residual(spec, u, f) <= 1e-12 * plancherel_norm(f));
      CHECK(off_singular_relative(spec, u, u0) < 1e-12);
      CHECK(check_admissible(u, spec, 0.0).admissible);

      const FourierTable back = apply_operator_spectral(spec, u);
      CHECK(off_singular_relative(spec, back, f) < 1e-12);

      if (!enumerate_singular_set(spec).entries.empty()) {
        const FourierTable shifted = u + build_kernel_counterexample(spec).table;
        CHECK(residual(spec, shifted, f) <= 1e-12 * plancherel_norm(f));
        CHECK(off_singular_relative(spec, solve_constant(spec, f), u) == 0.0);
      }
    }
  }
}

TEST_CASE("smoothness of solutions") {
  const OperatorSpec spec = make_spec(kT2, "quadratic:0+1*sqrt(2)");
  FourierTable f(kT2);
  for (int k = -16; k <= 16; ++k)
    for (int l = -16; l <= 16; ++l)
      if (k != 0 || l != 0) f.set({k, l}, 0, 0, 0, 0, std::exp(-shell_of(GroupKind::Circle, k, GroupKind::Circle, l)));
  CHECK(decay_classify(f).classification == DecayClass::SmoothLike);
  CHECK(smoothness_of_solution(spec, f).classification == DecayClass::SmoothLike);

  FourierTable single(kT2);
  single.set({2, -3}, 0, 0, 0, 0, 1.0);
  CHECK(smoothness_of_solution(spec, single).classification == DecayClass::SmoothLike);

  const OperatorSpec liou = make_spec(kT2, "liouville:5");
  FourierTable conv(kT2);
  for (const LiouvilleWitness& w : liouville_witnesses(liou)) {
    const Index k = parse_index(w.k.str()), l = parse_index(w.l.str());
    conv.set({k, l}, 0, 0, 0, 0, 1.0 / (w.shell * w.shell));
  }
  CHECK(smoothness_of_solution(liou, conv).classification == DecayClass::NonDecaying);
}

TEST_CASE("admissible smooth inputs give smooth solutions for globally solvable operators") {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (const OperatorSpec& spec : {make_spec(kT1S3, "quadratic:0+1*sqrt(2)"), make_spec(kT2, "rational:2/3"),
                                   make_spec(kS3, "rational:1", "complex:0+3/2*i")}) {
    REQUIRE(gs_verdict(spec) == Verdict::YesCertified);
    FourierTable f = random_table(spec.group, rng);
    for (auto& [key, b] : f.blocks()) {
      const double damp = std::exp(-1.5 * shell_of(spec.group.factor1.kind, key.xi, spec.group.factor2.kind, key.eta));
      for (cplx& v : b.data) v *= damp;
    }
    f = project_admissible(f, spec);
    REQUIRE(decay_classify(f).classification == DecayClass::SmoothLike);
    CHECK(smoothness_of_solution(spec, f).classification == DecayClass::SmoothLike);
  }
}
