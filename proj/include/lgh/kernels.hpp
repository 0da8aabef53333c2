#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lgh/core.hpp"
#include "lgh/grid.hpp"

namespace lgh {

using RowMatrixXcd = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Batched forward/inverse transform on one factor.
// Samples are laid out [node][batch], coefficients [coefficient][batch], where the coefficient
// index runs over the BlockLayout with blocks stored row-major (m, n).
// forward:  c(l)_{mn} = sum_nodes w f conj(t^l_{nm})
// inverse:  f = sum_l d_l sum_{mn} c(l)_{mn} t^l_{nm}
class FactorPlan {
 public:
  // A synthesis-only plan evaluates coefficient expansions on any grid and refuses forward transforms.
  FactorPlan(FactorGrid grid, Factor factor, bool synthesis_only = false);

  const FactorGrid& grid() const { return grid_; }
  const BlockLayout& layout() const { return layout_; }

  // Separable kernels (parallel over frequency rows).
  void forward(const cplx* in, std::size_t batch, cplx* out) const;
  void inverse(const cplx* in, std::size_t batch, cplx* out) const;

  // Direct summation over nodes and representation matrices.
  void forward_reference(const cplx* in, std::size_t batch, cplx* out) const;
  void inverse_reference(const cplx* in, std::size_t batch, cplx* out) const;

 private:
  void su2_forward(const cplx* in, std::size_t batch, cplx* out) const;
  void su2_inverse(const cplx* in, std::size_t batch, cplx* out) const;
  std::size_t parity_index(int two_m) const;

  void require_analysis() const;

  FactorGrid grid_;
  BlockLayout layout_;
  bool synthesis_only_ = false;
  // Circle: dense character matrices.
  RowMatrixXcd circle_fwd_;
  RowMatrixXcd circle_inv_;
  // SU(2): phi and psi characters and little-d tables.
  RowMatrixXcd phi_fwd_;
  RowMatrixXcd phi_inv_;
  RowMatrixXcd psi_fwd_[2];
  RowMatrixXcd psi_inv_[2];
  std::vector<std::vector<double>> dtab_;  // [two_ell][(row * d + col) * n_theta + j]
};

// Power of the imaginary unit for integer exponents.
cplx i_power(long long e);

}  // namespace lgh
