#include <doctest.h>

#include <cmath>
#include <random>

#include "lgh/scalars.hpp"

using namespace lgh;

TEST_CASE("parsing and canonical text") {
  CHECK(parse_scalar("rational:4/6").to_string() == "rational:2/3");
  CHECK(parse_scalar("rational:-0.25").to_string() == "rational:-1/4");
  CHECK(parse_scalar("quadratic:0+1*sqrt(2)").to_string() == "quadratic:0+1*sqrt(2)");
  CHECK(parse_scalar("quadratic:1/2-3*sqrt(8)").to_string() == "quadratic:1/2-6*sqrt(2)");
  CHECK(parse_scalar("quadratic:sqrt(5)").kind == ScalarKind::Quadratic);
  CHECK(parse_scalar("liouville:3").depth == 3);
  CHECK(parse_scalar("float:0.1").kind == ScalarKind::Float);
  const ScalarConstant i = parse_scalar("complex:0+1i");
  CHECK(i.kind == ScalarKind::Complex);
  CHECK(i.re.is_zero());
  CHECK(i.im == SurdSum(1));
  CHECK(parse_scalar("complex:1.5-0.25*i").im == SurdSum(BigRational(-1, 4)));
  CHECK(parse_scalar("complex:3/2i").im == SurdSum(BigRational(3, 2)));
  CHECK(parse_scalar("complex:-2i").im == SurdSum(-2));
  for (const char* text : {"rational:-7/3", "quadratic:1/2+3/4*sqrt(5)", "liouville:4", "complex:1/3-5/2*i"})
    CHECK(parse_scalar(parse_scalar(text).to_string()).to_string() == parse_scalar(text).to_string());
  CHECK(parse_scalar("1+sqrt(2)").kind == ScalarKind::Quadratic);
  CHECK(parse_scalar("sqrt(2)+sqrt(3)").kind == ScalarKind::Complex);

  CHECK_THROWS_AS(parse_scalar("rational:1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar("quadratic:1+0*sqrt(2)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar("quadratic:1+2*sqrt(4)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar("liouville:9"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar("liouville:0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar("bogus:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar("rational:1.2.3"), std::invalid_argument);
}

TEST_CASE("surd sums") {
  const SurdSum a = SurdSum::root(8, 1) + SurdSum(1);
  CHECK(a.surds().at(2) == 2);
  CHECK((a - SurdSum::root(2, 2)).is_rational());
  CHECK((a - a).is_zero());
  CHECK(a.to_double() == doctest::Approx(1 + std::sqrt(8.0)).epsilon(1e-15));
  CHECK(SurdSum::root(9, 2) == SurdSum(6));
}

TEST_CASE("Liouville convergents") {
  const auto c = liouville_convergents(5);
  CHECK(c[0].first == 1);
  CHECK(c[0].second == 10);
  CHECK(c[1].first == 11);
  CHECK(c[1].second == 100);
  for (int j = 1; j <= 4; ++j) {
    const BigRational err = liouville_value(5) - BigRational(c[j - 1].first, c[j - 1].second);
    CHECK(err > 0);
    long long f = 1;
    for (int i = 2; i <= j + 1; ++i) f *= i;
    CHECK(err <= BigRational(BigInt(2), boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(f))));
  }
  CHECK(liouville_value(2) == BigRational(11, 100));
  CHECK_THROWS_AS(liouville_convergents(9), std::invalid_argument);
}

TEST_CASE("gap: exact zeros and closed forms") {
  CHECK(is_exact_zero(gap(6, ScalarConstant::rational(-3), 2)));
  CHECK_FALSE(is_exact_zero(gap(6, ScalarConstant::rational(-3), 4)));
  CHECK(*gap(6, ScalarConstant::rational(-3), 4).exact == 3);
  CHECK(gap(0, ScalarConstant::rational(5), 0).exact_zero);
  const ScalarConstant s2 = parse_scalar("quadratic:0+1*sqrt(2)");
  CHECK(gap(2, s2, 2).magnitude == doctest::Approx(1 + std::sqrt(2.0)).epsilon(1e-15));
  const GapValue f = gap(2, ScalarConstant::floating(-1.0), 2);
  CHECK_FALSE(f.exact_zero);
  CHECK_FALSE(f.certified);
  CHECK(f.lower == 0.0);
}

TEST_CASE("gap agrees with naive big-rational evaluation for rational a") {
  for (const BigRational a : {BigRational(2, 3), BigRational(-7, 5)}) {
    const ScalarConstant c = ScalarConstant::rational(a);
    const SymbolForm form(c, ScalarConstant::rational(0));
    const BigRational floor(1, 2 * boost::multiprecision::denominator(a));
    long long mismatches = 0, floor_violations = 0;
    for (int l = -500; l <= 500; ++l)
      for (int m = -500; m <= 500; ++m) {
        const GapValue g = form.evaluate(2 * l, 2 * m);
        const BigRational naive = abs(BigRational(l) + a * m);
        if (g.exact_zero != (naive == 0) || !g.exact || *g.exact != naive) ++mismatches;
        if (!g.exact_zero && naive < floor) ++floor_violations;
      }
    CHECK(mismatches == 0);
    CHECK(floor_violations == 0);
  }
}

TEST_CASE("gap agrees with the conjugate-bound oracle for sqrt(2)") {
  const ScalarConstant c = parse_scalar("quadratic:0+1*sqrt(2)");
  const SymbolForm form(c, ScalarConstant::rational(0));
  const long double r2 = std::sqrt(2.0L);
  long long mismatches = 0;
  for (int k = -200; k <= 200; ++k)
    for (int l = -200; l <= 200; ++l) {
      const GapValue g = form.evaluate(2 * k, 2 * l);
      if (k == 0 && l == 0) {
        mismatches += g.exact_zero ? 0 : 1;
        continue;
      }
      const long long norm = static_cast<long long>(k) * k - 2LL * l * l;
      const long double oracle = std::abs(static_cast<long double>(norm)) / std::abs(k - r2 * l);
      const bool same_sign = (k >= 0) == (l >= 0);
      const long double direct = std::abs(k + r2 * l);
      const long double expect = same_sign ? direct : oracle;
      if (g.exact_zero || std::abs(g.magnitude - expect) > 1e-14 * expect) ++mismatches;
      if (g.magnitude * (std::abs(k) + 2 * std::abs(l)) < 1 - 1e-12) ++mismatches;
    }
  CHECK(mismatches == 0);
}

TEST_CASE("gap with complex and Liouville coefficients") {
  const ScalarConstant a = parse_scalar("complex:1/2+3/4*i");
  for (int k = -20; k <= 20; ++k)
    for (int l = -20; l <= 20; ++l) {
      const GapValue g = gap(2 * k, a, 2 * l);
      if (l != 0) CHECK(g.magnitude >= 0.75 * std::abs(l) * (1 - 1e-15));
      CHECK(g.exact_zero == (k == 0 && l == 0));
    }

  for (int J = 1; J <= 4; ++J) {
    const auto conv = liouville_convergents(J);
    const BigInt p = conv.back().first, q = conv.back().second;
    const ScalarConstant L = ScalarConstant::liouville(J + 1);
    const BigRational val = abs(BigRational(-p) + L.re.rational() * q);
    CHECK(val > 0);
    CHECK(val <= BigRational(BigInt(1), boost::multiprecision::pow(q, static_cast<unsigned>(J))));
    if (q < BigInt("1000000000000000000000000000")) {
      const Index qi = parse_index(q.str()), pi = parse_index(p.str());
      const GapValue g = gap(-2 * pi, L, 2 * qi);
      CHECK(!g.exact_zero);
      CHECK(*g.exact == val);
      CHECK(g.log_magnitude == doctest::Approx(std::log(val.convert_to<double>())).epsilon(1e-10));
    }
  }
}

TEST_CASE("shifted symbol zeros with an imaginary perturbation") {
  const ScalarConstant zero = ScalarConstant::rational(0);
  const SymbolForm half(zero, parse_scalar("complex:0+1/2*i"));
  CHECK(half.is_zero(-1, 0));
  CHECK_FALSE(half.is_zero(1, 0));
  const GapValue g = half.evaluate(1, 0);
  CHECK(g.magnitude == doctest::Approx(1.0));
  const SymbolForm root(zero, parse_scalar("quadratic:0+1*sqrt(2)"));
  for (int m2 = -20; m2 <= 20; ++m2) CHECK_FALSE(root.is_zero(m2, 0));
  CHECK(root.evaluate(0, 0).magnitude == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("exact-zero detection agrees with rational equality on random cases") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> small(-30, 30), den(1, 12), idx(-60, 60);
  long long mismatches = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const BigRational a(small(rng), den(rng));
    const int l2 = idx(rng), m2 = idx(rng);
    const bool expect = BigRational(l2, 2) + a * BigRational(m2, 2) == 0;
    if (gap(l2, ScalarConstant::rational(a), m2).exact_zero != expect) ++mismatches;
  }
  CHECK(mismatches == 0);
}
