#include "lgh/su2.hpp"

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numbers>
#include <string>

namespace lgh {
namespace {

// Factorials computed exactly, stored as long double.
const std::array<long double, kMaxTwoEll + 1>& factorials() {
  static const auto table = [] {
    std::array<long double, kMaxTwoEll + 1> t{};
    boost::multiprecision::cpp_int f = 1;
    for (int i = 0; i <= kMaxTwoEll; ++i) {
      if (i > 0) f *= i;
      t[i] = f.convert_to<long double>();
    }
    return t;
  }();
  return table;
}

cplx minus_i_power(int e) {
  switch (((e % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

}  // namespace

double wigner_little_d(int two_ell, int two_row, int two_col, double theta) {
  if (two_ell < 0 || two_ell > kMaxTwoEll)
    throw std::invalid_argument("two_ell out of range: " + std::to_string(two_ell));
  if (std::abs(two_row) > two_ell || std::abs(two_col) > two_ell || ((two_ell - two_row) & 1) ||
      ((two_ell - two_col) & 1))
    throw std::invalid_argument("index parity mismatch for two_ell " + std::to_string(two_ell));
  const auto& fact = factorials();
  const int jpr = (two_ell + two_row) / 2, jmr = (two_ell - two_row) / 2;
  const int jpc = (two_ell + two_col) / 2, jmc = (two_ell - two_col) / 2;
  const int cmr = (two_col - two_row) / 2;
  const long double pre = std::sqrt(fact[jpr] * fact[jmr] * fact[jpc] * fact[jmc]);
  const long double c = std::cos(static_cast<long double>(theta) / 2);
  const long double s = std::sin(static_cast<long double>(theta) / 2);
  long double acc = 0;
  const int k0 = std::max(0, cmr), k1 = std::min(jpc, jmr);
  for (int k = k0; k <= k1; ++k) {
    long double term = pre / (fact[jpc - k] * fact[k] * fact[jmr - k] * fact[k - cmr]);
    const int pc = two_ell - 2 * k + cmr, ps = 2 * k - cmr;
    if (pc > 0) term *= std::pow(c, static_cast<long double>(pc));
    if (ps > 0) term *= std::pow(s, static_cast<long double>(ps));
    acc += ((k - cmr) & 1) ? -term : term;
  }
  return static_cast<double>(acc);
}

Eigen::MatrixXd wigner_d_matrix(int two_ell, double theta) {
  const int d = two_ell + 1;
  Eigen::MatrixXd m(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) m(r, c) = wigner_little_d(two_ell, 2 * r - two_ell, 2 * c - two_ell, theta);
  return m;
}

Eigen::MatrixXcd rep_matrix(int two_ell, const EulerAngles& x) {
  const int d = two_ell + 1;
  Eigen::MatrixXd small = wigner_d_matrix(two_ell, x.theta);
  Eigen::MatrixXcd out(d, d);
  for (int r = 0; r < d; ++r) {
    const double m = (2 * r - two_ell) / 2.0;
    for (int c = 0; c < d; ++c) {
      const double n = (2 * c - two_ell) / 2.0;
      out(r, c) = minus_i_power(r - c) * std::polar(small(r, c), m * x.phi + n * x.psi);
    }
  }
  return out;
}

Eigen::Matrix2cd su2_matrix(const EulerAngles& x) {
  const double c = std::cos(x.theta / 2), s = std::sin(x.theta / 2);
  const double sum = (x.phi + x.psi) / 2, diff = (x.phi - x.psi) / 2;
  const cplx i(0.0, 1.0);
  Eigen::Matrix2cd u;
  u << c * std::exp(i * sum), i * s * std::exp(i * diff), i * s * std::exp(-i * diff), c * std::exp(-i * sum);
  return u;
}

EulerAngles euler_from_matrix(const Eigen::Matrix2cd& u) {
  constexpr double two_pi = 2 * std::numbers::pi;
  const cplx a = u(0, 0), b = u(0, 1);
  EulerAngles x;
  x.theta = 2 * std::atan2(std::abs(b), std::abs(a));
  const double half_sum = std::abs(a) > 0 ? std::arg(a) : 0.0;
  const double half_diff = std::abs(b) > 0 ? std::arg(cplx(0.0, -1.0) * b) : 0.0;
  x.phi = half_sum + half_diff;
  x.psi = half_sum - half_diff;
  const double shift = std::floor(x.phi / two_pi) * two_pi;
  x.phi -= shift;
  x.psi -= shift;
  x.psi = std::fmod(x.psi + two_pi, 2 * two_pi);
  if (x.psi < 0) x.psi += 2 * two_pi;
  x.psi -= two_pi;
  return x;
}

double su2_weight(int two_ell) { return rep_weight(GroupKind::SU2, two_ell); }

Eigen::MatrixXcd dpsi_symbol(int two_ell) {
  const int d = two_ell + 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (int r = 0; r < d; ++r) m(r, r) = cplx(0.0, (2 * r - two_ell) / 2.0);
  return m;
}

double euler_h(const EulerAngles& x) { return -std::cos(x.theta / 2) * std::sin((x.phi + x.psi) / 2); }

double euler_tr(const EulerAngles& x) { return 2 * std::cos(x.theta / 2) * std::cos((x.phi + x.psi) / 2); }

}  // namespace lgh
