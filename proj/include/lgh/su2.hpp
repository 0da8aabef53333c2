#pragma once

#include <Eigen/Dense>

#include "lgh/core.hpp"

namespace lgh {

// Euler angles on SU(2): phi in [0,2pi), theta in [0,pi], psi in [-2pi,2pi).
struct EulerAngles {
  double phi = 0.0;
  double theta = 0.0;
  double psi = 0.0;
};

// Largest two_ell accepted by the little-d evaluator.
inline constexpr int kMaxTwoEll = 48;

// Wigner little-d d^ell_{row,col}(theta) = <row| exp(-i theta J_y) |col>, doubled indices.
double wigner_little_d(int two_ell, int two_row, int two_col, double theta);

// Full little-d matrix, rows and columns ordered by ascending m.
Eigen::MatrixXd wigner_d_matrix(int two_ell, double theta);

// t^ell(x)_{mn} = (-i)^{m-n} e^{i m phi} d^ell_{mn}(theta) e^{i n psi}, ascending m ordering.
// At two_ell = 1 this is the Euler-angle matrix of SU(2) with rows and columns reversed.
Eigen::MatrixXcd rep_matrix(int two_ell, const EulerAngles& x);

// The 2x2 SU(2) matrix x(phi,theta,psi) in the standard (m = +1/2 first) ordering.
Eigen::Matrix2cd su2_matrix(const EulerAngles& x);
EulerAngles euler_from_matrix(const Eigen::Matrix2cd& u);

double su2_weight(int two_ell);
// Symbol of d/dpsi: diag(i m), ascending m.
Eigen::MatrixXcd dpsi_symbol(int two_ell);

// -cos(theta/2) sin((phi+psi)/2); equals d/dpsi of euler_tr.
double euler_h(const EulerAngles& x);
// Trace 2 cos(theta/2) cos((phi+psi)/2).
double euler_tr(const EulerAngles& x);

}  // namespace lgh
