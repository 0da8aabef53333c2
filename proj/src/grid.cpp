#include "lgh/grid.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <climits>
#include <cmath>
#include <numbers>

namespace lgh {
namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

int make_odd(int n) { return n % 2 == 0 ? n + 1 : n; }

}  // namespace

FactorGrid FactorGrid::trivial() { return FactorGrid{}; }

FactorGrid FactorGrid::circle(int n_points) {
  if (n_points < 1) throw std::invalid_argument("circle grid needs at least one point");
  FactorGrid g;
  g.kind_ = GroupKind::Circle;
  g.n_phi_ = n_points;
  return g;
}

FactorGrid FactorGrid::su2(int n_phi, int n_theta, int n_psi) {
  if (n_phi < 1 || n_theta < 1 || n_psi < 1) throw std::invalid_argument("SU(2) grid sizes must be positive");
  FactorGrid g;
  g.kind_ = GroupKind::SU2;
  g.n_phi_ = n_phi;
  g.n_psi_ = n_psi;
  gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n_theta));
  std::vector<std::pair<double, double>> nodes;
  for (int j = 0; j < n_theta; ++j) {
    double x = 0.0, w = 0.0;
    gsl_integration_glfixed_point(-1.0, 1.0, static_cast<std::size_t>(j), &x, &w, table);
    nodes.emplace_back(x, w);
  }
  gsl_integration_glfixed_table_free(table);
  std::sort(nodes.begin(), nodes.end(), [](const auto& l, const auto& r) { return l.first > r.first; });
  for (const auto& [x, w] : nodes) {
    g.cos_theta_.push_back(x);
    g.theta_weight_.push_back(w / 2);
  }
  return g;
}

FactorGrid FactorGrid::for_band(GroupKind kind, int band) {
  if (band < 0) throw std::invalid_argument("negative band");
  switch (kind) {
    case GroupKind::Trivial: return trivial();
    case GroupKind::Circle: return circle(make_odd(band + 1));
    case GroupKind::SU2: return su2(band / 2 + 1, (band + 5) / 4, make_odd(band + 1));
  }
  return trivial();
}

std::size_t FactorGrid::size() const {
  switch (kind_) {
    case GroupKind::Trivial: return 1;
    case GroupKind::Circle: return static_cast<std::size_t>(n_phi_);
    case GroupKind::SU2: return static_cast<std::size_t>(n_phi_) * cos_theta_.size() * n_psi_;
  }
  return 1;
}

double FactorGrid::weight(std::size_t node) const {
  switch (kind_) {
    case GroupKind::Trivial: return 1.0;
    case GroupKind::Circle: return 1.0 / n_phi_;
    case GroupKind::SU2: {
      const std::size_t j = (node / n_psi_) % cos_theta_.size();
      return theta_weight_[j] / (static_cast<double>(n_phi_) * n_psi_);
    }
  }
  return 1.0;
}

int FactorGrid::band() const {
  switch (kind_) {
    case GroupKind::Trivial: return INT_MAX / 4;
    case GroupKind::Circle: return n_phi_ - 1;
    case GroupKind::SU2:
      return std::min({2 * n_phi_ - 1, n_psi_ - 1, 4 * static_cast<int>(cos_theta_.size()) - 2});
  }
  return 0;
}

double FactorGrid::theta(int j) const { return std::acos(cos_theta_[j]); }

double FactorGrid::circle_node(std::size_t j) const { return kTwoPi * static_cast<double>(j) / n_phi_; }

double FactorGrid::phi_node(int a) const { return kTwoPi * a / n_phi_; }

double FactorGrid::psi_node(int p) const { return 2 * kTwoPi * p / n_psi_; }

EulerAngles FactorGrid::su2_node(std::size_t node) const {
  const std::size_t nt = cos_theta_.size();
  const int p = static_cast<int>(node % n_psi_);
  const int j = static_cast<int>((node / n_psi_) % nt);
  const int a = static_cast<int>(node / (n_psi_ * nt));
  double psi = psi_node(p);
  if (psi >= kTwoPi) psi -= 2 * kTwoPi;
  return {phi_node(a), theta(j), psi};
}

std::string FactorGrid::describe() const {
  switch (kind_) {
    case GroupKind::Trivial: return "TRIV 1";
    case GroupKind::Circle: return "T1 " + std::to_string(n_phi_);
    case GroupKind::SU2:
      return "SU2 " + std::to_string(n_phi_) + " " + std::to_string(cos_theta_.size()) + " " + std::to_string(n_psi_);
  }
  return "?";
}

bool FactorGrid::operator==(const FactorGrid& other) const {
  return kind_ == other.kind_ && n_phi_ == other.n_phi_ && n_psi_ == other.n_psi_ &&
         cos_theta_.size() == other.cos_theta_.size();
}

FactorGrid default_factor_grid(const Factor& factor) {
  switch (factor.kind) {
    case GroupKind::Trivial: return FactorGrid::trivial();
    case GroupKind::Circle: return FactorGrid::circle(4 * factor.trunc + 1);
    case GroupKind::SU2: return su2_quadrature(factor.trunc);
  }
  return FactorGrid::trivial();
}

FactorGrid su2_quadrature(int two_ell_max) { return FactorGrid::for_band(GroupKind::SU2, 2 * two_ell_max); }

}  // namespace lgh
