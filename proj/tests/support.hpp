#pragma once

#include <random>

#include "lgh/product.hpp"

namespace lgh::test {

inline cplx random_cplx(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {u(rng), u(rng)};
}

// Table with every slot inside the truncation filled with uniform random entries.
inline FourierTable random_table(const ProductGroup& group, std::mt19937_64& rng) {
  BlockLayout l1(group.factor1), l2(group.factor2);
  std::vector<cplx> dense(l1.size() * l2.size());
  for (auto& v : dense) v = random_cplx(rng);
  return from_dense(group, l1, l2, dense);
}

inline double max_abs_diff(const FourierTable& a, const FourierTable& b) {
  double m = 0;
  const FourierTable diff = a - b;
  for (const auto& [key, blk] : diff.blocks())
    for (const cplx& v : blk.data) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace lgh::test
