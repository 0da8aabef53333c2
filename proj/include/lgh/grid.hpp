#pragma once

#include <string>
#include <vector>

#include "lgh/core.hpp"
#include "lgh/su2.hpp"

namespace lgh {

// Quadrature grid on one factor with weights summing to 1 (normalized Haar measure).
// SU(2) nodes are ordered (phi, theta, psi) with psi fastest.
class FactorGrid {
 public:
  FactorGrid() = default;

  static FactorGrid trivial();
  static FactorGrid circle(int n_points);
  static FactorGrid su2(int n_phi, int n_theta, int n_psi);
  // Smallest grid integrating exactly every product of harmonics of total (doubled) band `band`.
  static FactorGrid for_band(GroupKind kind, int band);

  GroupKind kind() const { return kind_; }
  std::size_t size() const;
  double weight(std::size_t node) const;
  // Largest total band integrated exactly.
  int band() const;

  int n_points() const { return n_phi_; }
  int n_phi() const { return n_phi_; }
  int n_theta() const { return static_cast<int>(cos_theta_.size()); }
  int n_psi() const { return n_psi_; }
  double theta(int j) const;
  // Gauss-Legendre weight of theta node j divided by 2 (sums to 1).
  double theta_weight(int j) const { return theta_weight_[j]; }

  double circle_node(std::size_t j) const;
  double phi_node(int a) const;
  double psi_node(int p) const;
  EulerAngles su2_node(std::size_t node) const;

  std::string describe() const;
  bool operator==(const FactorGrid& other) const;

 private:
  GroupKind kind_ = GroupKind::Trivial;
  int n_phi_ = 1;
  int n_psi_ = 1;
  std::vector<double> cos_theta_;
  std::vector<double> theta_weight_;
};

// Grid used for a truncation when products of two band-limited functions must transform exactly.
FactorGrid default_factor_grid(const Factor& factor);
// SU(2) grid integrating products t^l t^l' exactly for 2l, 2l' <= two_ell_max.
FactorGrid su2_quadrature(int two_ell_max);

}  // namespace lgh
