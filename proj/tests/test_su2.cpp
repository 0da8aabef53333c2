#include <doctest.h>

#include <numbers>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "lgh/grid.hpp"
#include "lgh/kernels.hpp"
#include "lgh/su2.hpp"

using namespace lgh;

namespace {

constexpr double kPi = std::numbers::pi;

EulerAngles random_angles(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> phi(0, 2 * kPi), theta(0, kPi), psi(-2 * kPi, 2 * kPi);
  return {phi(rng), theta(rng), psi(rng)};
}

// exp(-i beta J_y) built from the ladder operators, ascending m.
Eigen::MatrixXd rotation_oracle(int two_ell, double beta) {
  const int d = two_ell + 1;
  const double j = two_ell / 2.0;
  Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i + 1 < d; ++i) {
    const double m = (2 * i - two_ell) / 2.0;
    const double c = std::sqrt(j * (j + 1) - m * (m + 1));
    gen(i + 1, i) -= c / 2;
    gen(i, i + 1) += c / 2;
  }
  return (beta * gen).exp();
}

double hs(const Eigen::MatrixXcd& m) { return m.norm(); }

}  // namespace

TEST_CASE("little d: closed forms") {
  CHECK(wigner_little_d(0, 0, 0, 0.7) == doctest::Approx(1.0));
  CHECK(wigner_little_d(1, 1, 1, 0.7) == doctest::Approx(std::cos(0.35)).epsilon(1e-15));
  CHECK(wigner_little_d(1, 1, -1, 0.7) == doctest::Approx(-std::sin(0.35)).epsilon(1e-15));
  CHECK_THROWS_AS(wigner_little_d(2, 1, 0, 0.3), std::invalid_argument);
}

TEST_CASE("little d matches the matrix-exponential oracle") {
  for (int two_ell : {1, 2, 3, 8, 17, 30, 40, kMaxTwoEll}) {
    for (double beta : {0.0, 0.4, 1.3, 2.9, kPi}) {
      const double err = (wigner_d_matrix(two_ell, beta) - rotation_oracle(two_ell, beta)).cwiseAbs().maxCoeff();
      INFO("two_ell=" << two_ell << " beta=" << beta);
      CHECK(err < (two_ell <= 30 ? 1e-13 : 1e-11));
    }
  }
}

TEST_CASE("rep_matrix: identity, explicit 2x2 form, unitarity, homomorphism") {
  std::mt19937_64 rng(11);
  CHECK(hs(rep_matrix(4, {0, 0, 0}) - Eigen::MatrixXcd::Identity(5, 5)) < 1e-15);

  Eigen::Matrix2cd swap;
  swap << 0, 1, 1, 0;
  for (int trial = 0; trial < 10; ++trial) {
    const EulerAngles x = random_angles(rng);
    CHECK(hs(swap * rep_matrix(1, x) * swap - su2_matrix(x)) < 1e-14);
  }

  double worst_unitary = 0, worst_hom = 0;
  for (int two_ell = 0; two_ell <= 12; ++two_ell) {
    const int d = two_ell + 1;
    for (int trial = 0; trial < 50; ++trial) {
      const EulerAngles x = random_angles(rng), y = random_angles(rng);
      const Eigen::MatrixXcd tx = rep_matrix(two_ell, x), ty = rep_matrix(two_ell, y);
      worst_unitary = std::max(worst_unitary, hs(tx * tx.adjoint() - Eigen::MatrixXcd::Identity(d, d)));
      const EulerAngles xy = euler_from_matrix(su2_matrix(x) * su2_matrix(y));
      worst_hom = std::max(worst_hom, hs(rep_matrix(two_ell, xy) - tx * ty));
    }
  }
  CHECK(worst_unitary <= 1e-12);
  CHECK(worst_hom <= 1e-10);
}

TEST_CASE("d/dpsi symbol against finite differences") {
  std::mt19937_64 rng(5);
  CHECK(hs(dpsi_symbol(0)) == 0.0);
  Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(3, 3);
  expect(0, 0) = cplx(0, -1);
  expect(2, 2) = cplx(0, 1);
  CHECK(hs(dpsi_symbol(2) - expect) == 0.0);
  for (int two_ell : {1, 2, 3, 6}) {
    for (int trial = 0; trial < 5; ++trial) {
      EulerAngles x = random_angles(rng);
      const double h = 1e-5;
      EulerAngles xp = x, xm = x;
      xp.psi += h;
      xm.psi -= h;
      const Eigen::MatrixXcd deriv = (rep_matrix(two_ell, xp) - rep_matrix(two_ell, xm)) / (2 * h);
      const Eigen::MatrixXcd symbol = rep_matrix(two_ell, x).adjoint() * deriv;
      CHECK((symbol - dpsi_symbol(two_ell)).cwiseAbs().maxCoeff() < 1e-7);
    }
  }
}

TEST_CASE("weights and bounds") {
  CHECK(su2_weight(0) == 1.0);
  CHECK(su2_weight(2) == doctest::Approx(std::sqrt(3.0)));
  CHECK(su2_weight(1) == doctest::Approx(std::sqrt(7.0) / 2));
  for (int two_ell = 0; two_ell <= 24; ++two_ell) {
    const double w = su2_weight(two_ell), ell = two_ell / 2.0;
    CHECK((1 + ell) / std::sqrt(2.0) <= w + 1e-15);
    CHECK(w <= 1 + ell + 1e-15);
    CHECK(two_ell + 1 <= 2 * std::pow(w, 1.5));
    CHECK(std::abs(ell) <= w);
  }
}

TEST_CASE("euler_h and the trace") {
  std::mt19937_64 rng(3);
  CHECK(euler_h({1.0, kPi, 2.0}) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(euler_h({0.0, 0.0, kPi}) == doctest::Approx(-1.0));
  for (int i = 0; i < 20; ++i) {
    const EulerAngles x = random_angles(rng);
    EulerAngles xp = x, xm = x;
    xp.psi += 1e-5;
    xm.psi -= 1e-5;
    CHECK((euler_tr(xp) - euler_tr(xm)) / 2e-5 == doctest::Approx(euler_h(x)).epsilon(1e-8));
    CHECK(euler_tr(x) == doctest::Approx(su2_matrix(x).trace().real()).epsilon(1e-14));
  }
}

TEST_CASE("quadrature orthonormality") {
  for (int two_ell_max : {0, 1, 4, 7}) {
    const FactorGrid grid = su2_quadrature(two_ell_max);
    double wsum = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) wsum += grid.weight(i);
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-15));
    std::vector<std::vector<Eigen::MatrixXcd>> mats(two_ell_max + 1);
    for (std::size_t node = 0; node < grid.size(); ++node)
      for (int J = 0; J <= two_ell_max; ++J) mats[J].push_back(rep_matrix(J, grid.su2_node(node)));
    double worst = 0;
    for (int J = 0; J <= two_ell_max; ++J)
      for (int K = 0; K <= two_ell_max; ++K)
        for (int m = 0; m <= J; ++m)
          for (int n = 0; n <= J; ++n)
            for (int mp = 0; mp <= K; ++mp)
              for (int np = 0; np <= K; ++np) {
                cplx s = 0;
                for (std::size_t node = 0; node < grid.size(); ++node)
                  s += grid.weight(node) * mats[J][node](m, n) * std::conj(mats[K][node](mp, np));
                const double expect = (J == K && m == mp && n == np) ? 1.0 / (J + 1) : 0.0;
                worst = std::max(worst, std::abs(s - expect));
              }
    INFO("two_ell_max=" << two_ell_max);
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("fast SU(2) kernels agree with direct summation") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int T : {0, 1, 2, 5}) {
    const Factor factor{GroupKind::SU2, T};
    const FactorPlan plan(FactorGrid::for_band(GroupKind::SU2, 2 * T + 3), factor);
    const std::size_t B = 3, C = plan.layout().size(), N = plan.grid().size();
    std::vector<cplx> coef(C * B), f1(N * B), f2(N * B), c1(C * B), c2(C * B);
    for (auto& v : coef) v = {u(rng), u(rng)};
    plan.inverse(coef.data(), B, f1.data());
    plan.inverse_reference(coef.data(), B, f2.data());
    double e_inv = 0, e_fwd = 0, e_round = 0;
    for (std::size_t i = 0; i < f1.size(); ++i) e_inv = std::max(e_inv, std::abs(f1[i] - f2[i]));
    plan.forward(f1.data(), B, c1.data());
    plan.forward_reference(f1.data(), B, c2.data());
    for (std::size_t i = 0; i < c1.size(); ++i) {
      e_fwd = std::max(e_fwd, std::abs(c1[i] - c2[i]));
      e_round = std::max(e_round, std::abs(c1[i] - coef[i]));
    }
    INFO("T=" << T);
    CHECK(e_inv < 1e-12);
    CHECK(e_fwd < 1e-12);
    CHECK(e_round < 1e-11);
  }
}

TEST_CASE("plan rejects undersized grids") {
  CHECK_THROWS_AS(FactorPlan(FactorGrid::for_band(GroupKind::SU2, 5), {GroupKind::SU2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(FactorPlan(FactorGrid::circle(6), {GroupKind::Circle, 3}), std::invalid_argument);
}
