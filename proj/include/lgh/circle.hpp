#pragma once

#include <span>
#include <vector>

#include "lgh/core.hpp"

namespace lgh {

// Samples at t_j = 2 pi j / n.
struct CircleGrid {
  std::vector<cplx> samples;

  int n_points() const { return static_cast<int>(samples.size()); }
};

cplx t1_char(Index k, double t);
double t1_weight(Index k);
cplx t1_derivative_symbol(Index k);

// Coefficients for k in [-K, K], stored at position k + K.
std::vector<cplx> t1_forward(const CircleGrid& grid, int K);
CircleGrid t1_inverse(std::span<const cplx> coeffs, int n_points);
inline int t1_default_points(int K) { return 4 * K + 1; }

}  // namespace lgh
