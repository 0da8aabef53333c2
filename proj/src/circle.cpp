#include "lgh/circle.hpp"

#include <cmath>

#include "lgh/kernels.hpp"

namespace lgh {

cplx t1_char(Index k, double t) { return std::polar(1.0, static_cast<double>(k) * t); }

double t1_weight(Index k) { return rep_weight(GroupKind::Circle, k); }

cplx t1_derivative_symbol(Index k) { return {0.0, static_cast<double>(k)}; }

std::vector<cplx> t1_forward(const CircleGrid& grid, int K) {
  if (grid.n_points() < 2 * K + 1)
    throw std::invalid_argument("circle grid of " + std::to_string(grid.n_points()) + " points too small for K=" +
                                std::to_string(K) + ": need at least " + std::to_string(2 * K + 1));
  FactorPlan plan(FactorGrid::circle(grid.n_points()), {GroupKind::Circle, K});
  std::vector<cplx> out(static_cast<std::size_t>(2 * K + 1));
  plan.forward(grid.samples.data(), 1, out.data());
  return out;
}

CircleGrid t1_inverse(std::span<const cplx> coeffs, int n_points) {
  if (coeffs.size() % 2 == 0) throw std::invalid_argument("coefficient list must have odd length 2K+1");
  const int K = static_cast<int>(coeffs.size() / 2);
  FactorPlan plan(FactorGrid::circle(n_points), {GroupKind::Circle, K});
  CircleGrid out{std::vector<cplx>(static_cast<std::size_t>(n_points))};
  plan.inverse(coeffs.data(), 1, out.samples.data());
  return out;
}

}  // namespace lgh
