#include "lgh/product.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lgh/fit.hpp"

namespace lgh {

Block::Block(int dim1, int dim2)
    : d1(dim1), d2(dim2), data(static_cast<std::size_t>(dim1) * dim1 * dim2 * dim2, cplx(0.0)) {}

double Block::hs_norm() const {
  double s = 0;
  for (const cplx& v : data) s += std::norm(v);
  return std::sqrt(s);
}

bool Block::is_zero() const {
  return std::all_of(data.begin(), data.end(), [](const cplx& v) { return v == cplx(0.0); });
}

Block& FourierTable::block(const RepPair& key) {
  auto it = blocks_.find(key);
  if (it != blocks_.end()) return it->second;
  return blocks_.emplace(key, Block(rep_dim(group_.factor1.kind, key.xi), rep_dim(group_.factor2.kind, key.eta)))
      .first->second;
}

const Block* FourierTable::find(const RepPair& key) const {
  auto it = blocks_.find(key);
  return it == blocks_.end() ? nullptr : &it->second;
}

cplx FourierTable::entry(const RepPair& key, int m, int n, int r, int s) const {
  const Block* b = find(key);
  return b ? b->at(m, n, r, s) : cplx(0.0);
}

void FourierTable::set(const RepPair& key, int m, int n, int r, int s, cplx value) {
  block(key).at(m, n, r, s) = value;
}

bool FourierTable::within_truncation() const {
  BlockLayout l1(group_.factor1), l2(group_.factor2);
  return std::all_of(blocks_.begin(), blocks_.end(), [&](const auto& kv) {
    return l1.find(kv.first.xi) != BlockLayout::npos && l2.find(kv.first.eta) != BlockLayout::npos;
  });
}

void FourierTable::prune_zero_blocks() {
  std::erase_if(blocks_, [](const auto& kv) { return kv.second.is_zero(); });
}

FourierTable& FourierTable::operator+=(const FourierTable& other) {
  if (!(group_ == other.group_)) throw std::invalid_argument("table groups differ");
  for (const auto& [key, b] : other.blocks_) {
    Block& dst = block(key);
    for (std::size_t i = 0; i < b.data.size(); ++i) dst.data[i] += b.data[i];
  }
  return *this;
}

FourierTable& FourierTable::operator-=(const FourierTable& other) {
  if (!(group_ == other.group_)) throw std::invalid_argument("table groups differ");
  for (const auto& [key, b] : other.blocks_) {
    Block& dst = block(key);
    for (std::size_t i = 0; i < b.data.size(); ++i) dst.data[i] -= b.data[i];
  }
  return *this;
}

FourierTable& FourierTable::operator*=(cplx scale) {
  for (auto& [key, b] : blocks_)
    for (cplx& v : b.data) v *= scale;
  return *this;
}

FourierTable operator+(FourierTable a, const FourierTable& b) { return a += b; }
FourierTable operator-(FourierTable a, const FourierTable& b) { return a -= b; }
FourierTable operator*(cplx s, FourierTable a) { return a *= s; }

std::vector<cplx> to_dense(const FourierTable& table, const BlockLayout& l1, const BlockLayout& l2) {
  std::vector<cplx> dense(l1.size() * l2.size(), cplx(0.0));
  const std::size_t C2 = l2.size();
  for (const auto& [key, b] : table.blocks()) {
    const std::size_t p1 = l1.find(key.xi), p2 = l2.find(key.eta);
    if (p1 == BlockLayout::npos || p2 == BlockLayout::npos)
      throw std::invalid_argument("table block (" + index_to_string(key.xi) + ", " + index_to_string(key.eta) +
                                  ") lies outside the transform truncation");
    const std::size_t o1 = l1.offset(p1), o2 = l2.offset(p2);
    for (int m = 0; m < b.d1; ++m)
      for (int n = 0; n < b.d1; ++n)
        for (int r = 0; r < b.d2; ++r)
          for (int s = 0; s < b.d2; ++s)
            dense[(o1 + static_cast<std::size_t>(m) * b.d1 + n) * C2 + o2 + static_cast<std::size_t>(r) * b.d2 + s] =
                b.at(m, n, r, s);
  }
  return dense;
}

FourierTable from_dense(const ProductGroup& group, const BlockLayout& l1, const BlockLayout& l2,
                        const std::vector<cplx>& dense) {
  FourierTable table(group);
  const std::size_t C2 = l2.size();
  for (std::size_t i = 0; i < l1.rep_count(); ++i)
    for (std::size_t k = 0; k < l2.rep_count(); ++k) {
      Block b(l1.dim(i), l2.dim(k));
      bool any = false;
      for (int m = 0; m < b.d1; ++m)
        for (int n = 0; n < b.d1; ++n)
          for (int r = 0; r < b.d2; ++r)
            for (int s = 0; s < b.d2; ++s) {
              const cplx v = dense[(l1.offset(i) + static_cast<std::size_t>(m) * b.d1 + n) * C2 + l2.offset(k) +
                                   static_cast<std::size_t>(r) * b.d2 + s];
              b.at(m, n, r, s) = v;
              any = any || v != cplx(0.0);
            }
      if (any) table.blocks().emplace(RepPair{l1.rep(i), l2.rep(k)}, std::move(b));
    }
  return table;
}

ProductGrid default_grid(const ProductGroup& group) {
  return {default_factor_grid(group.factor1), default_factor_grid(group.factor2)};
}

FactorPoint factor_point(const FactorGrid& grid, std::size_t node) {
  FactorPoint p;
  if (grid.kind() == GroupKind::Circle) p.t = grid.circle_node(node);
  if (grid.kind() == GroupKind::SU2) p.x = grid.su2_node(node);
  return p;
}

GridFunction GridFunction::zeros(const ProductGrid& grid) { return {grid, std::vector<cplx>(grid.size(), cplx(0.0))}; }

GridFunction GridFunction::sample(const ProductGrid& grid,
                                  const std::function<cplx(const FactorPoint&, const FactorPoint&)>& fn) {
  GridFunction f = zeros(grid);
  const std::size_t N1 = grid.grid1.size(), N2 = grid.grid2.size();
  std::vector<FactorPoint> p2(N2);
  for (std::size_t j = 0; j < N2; ++j) p2[j] = factor_point(grid.grid2, j);
  for (std::size_t i = 0; i < N1; ++i) {
    const FactorPoint p1 = factor_point(grid.grid1, i);
    for (std::size_t j = 0; j < N2; ++j) f.at(i, j) = fn(p1, p2[j]);
  }
  return f;
}

double GridFunction::weight_sum() const {
  double s1 = 0, s2 = 0;
  for (std::size_t i = 0; i < grid.grid1.size(); ++i) s1 += grid.grid1.weight(i);
  for (std::size_t j = 0; j < grid.grid2.size(); ++j) s2 += grid.grid2.weight(j);
  return s1 * s2;
}

double quadrature_norm(const GridFunction& f) {
  const std::size_t N1 = f.grid.grid1.size(), N2 = f.grid.grid2.size();
  std::vector<double> w2(N2);
  for (std::size_t j = 0; j < N2; ++j) w2[j] = f.grid.grid2.weight(j);
  double s = 0;
  for (std::size_t i = 0; i < N1; ++i) {
    double row = 0;
    for (std::size_t j = 0; j < N2; ++j) row += w2[j] * std::norm(f.at(i, j));
    s += f.grid.grid1.weight(i) * row;
  }
  return std::sqrt(s);
}

double field_norm(const PartialCoefficientField& field) {
  const BlockLayout& l2 = field.layout2;
  double s = 0;
  for (std::size_t j = 0; j < field.grid1.size(); ++j) {
    const cplx* v = field.node(j);
    double row = 0;
    for (std::size_t k = 0; k < l2.rep_count(); ++k) {
      const std::size_t d = static_cast<std::size_t>(l2.dim(k));
      double blk = 0;
      for (std::size_t e = 0; e < d * d; ++e) blk += std::norm(v[l2.offset(k) + e]);
      row += static_cast<double>(d) * blk;
    }
    s += field.grid1.weight(j) * row;
  }
  return std::sqrt(s);
}

ProductTransform::ProductTransform(ProductGrid grid, ProductGroup group, bool reference, bool synthesis_only)
    : grid_(std::move(grid)),
      group_(group),
      plan1_(grid_.grid1, group.factor1, synthesis_only),
      plan2_(grid_.grid2, group.factor2, synthesis_only),
      reference_(reference) {}

PartialCoefficientField ProductTransform::partial_forward_x2(const GridFunction& f) const {
  if (!(f.grid == grid_)) throw std::invalid_argument("grid function does not live on the transform grid");
  const std::size_t N1 = grid_.grid1.size(), N2 = grid_.grid2.size();
  PartialCoefficientField field{grid_.grid1, plan2_.layout(), {}};
  const std::size_t C2 = field.layout2.size();
  field.data.assign(N1 * C2, cplx(0.0));
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(N1); ++i) {
    if (reference_)
      plan2_.forward_reference(f.values.data() + i * N2, 1, field.data.data() + i * C2);
    else
      plan2_.forward(f.values.data() + i * N2, 1, field.data.data() + i * C2);
  }
  return field;
}

GridFunction ProductTransform::partial_inverse_x2(const PartialCoefficientField& field) const {
  if (!(field.grid1 == grid_.grid1) || field.layout2.size() != plan2_.layout().size())
    throw std::invalid_argument("field does not match the transform grid");
  const std::size_t N1 = grid_.grid1.size(), N2 = grid_.grid2.size();
  const std::size_t C2 = field.layout2.size();
  GridFunction f = GridFunction::zeros(grid_);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(N1); ++i) {
    if (reference_)
      plan2_.inverse_reference(field.data.data() + i * C2, 1, f.values.data() + i * N2);
    else
      plan2_.inverse(field.data.data() + i * C2, 1, f.values.data() + i * N2);
  }
  return f;
}

FourierTable ProductTransform::field_forward_x1(const PartialCoefficientField& field) const {
  const std::size_t C2 = field.layout2.size();
  std::vector<cplx> dense(plan1_.layout().size() * C2);
  if (reference_)
    plan1_.forward_reference(field.data.data(), C2, dense.data());
  else
    plan1_.forward(field.data.data(), C2, dense.data());
  return from_dense(group_, plan1_.layout(), plan2_.layout(), dense);
}

PartialCoefficientField ProductTransform::field_inverse_x1(const FourierTable& table) const {
  if (table.group().factor1.kind != group_.factor1.kind || table.group().factor2.kind != group_.factor2.kind)
    throw std::invalid_argument("table group does not match the transform");
  const std::vector<cplx> dense = to_dense(table, plan1_.layout(), plan2_.layout());
  PartialCoefficientField field{grid_.grid1, plan2_.layout(), {}};
  const std::size_t C2 = field.layout2.size();
  field.data.assign(grid_.grid1.size() * C2, cplx(0.0));
  if (reference_)
    plan1_.inverse_reference(dense.data(), C2, field.data.data());
  else
    plan1_.inverse(dense.data(), C2, field.data.data());
  return field;
}

FourierTable ProductTransform::forward(const GridFunction& f) const { return field_forward_x1(partial_forward_x2(f)); }

GridFunction ProductTransform::inverse(const FourierTable& table) const {
  return partial_inverse_x2(field_inverse_x1(table));
}

FourierTable double_forward(const GridFunction& f, const ProductGroup& group) {
  return ProductTransform(f.grid, group).forward(f);
}

GridFunction double_inverse(const FourierTable& table, const ProductGrid& grid) {
  return ProductTransform(grid, table.group()).inverse(table);
}

GridFunction double_inverse(const FourierTable& table) { return double_inverse(table, default_grid(table.group())); }

GridFunction synthesize(const FourierTable& table, const ProductGrid& grid) {
  return ProductTransform(grid, table.group(), false, true).inverse(table);
}

double plancherel_norm(const FourierTable& table) {
  double s = 0;
  for (const auto& [key, b] : table.blocks()) {
    double blk = 0;
    for (const cplx& v : b.data) blk += std::norm(v);
    s += static_cast<double>(b.d1) * b.d2 * blk;
  }
  return std::sqrt(s);
}

double shell_of(GroupKind k1, Index xi, GroupKind k2, Index eta) {
  return std::round(rep_weight(k1, xi) + rep_weight(k2, eta));
}

double last_complete_shell(const ProductGroup& group) {
  const double w = std::min(edge_weight(group.factor1), edge_weight(group.factor2)) + 1.0;
  if (std::isinf(w)) return std::numeric_limits<double>::infinity();
  return std::floor(w - 0.5);
}

std::string_view decay_label(DecayClass c) {
  switch (c) {
    case DecayClass::SmoothLike: return "smooth-like";
    case DecayClass::DistributionOrder: return "distribution-order";
    case DecayClass::NonDecaying: return "non-decaying";
    case DecayClass::Inconclusive: return "inconclusive";
  }
  return "?";
}

DecayFit decay_classify(const FourierTable& table, const DecayThresholds& th) {
  DecayFit fit;
  std::map<double, double> shell_max;
  const ProductGroup& g = table.group();
  for (const auto& [key, b] : table.blocks()) {
    const double h = b.hs_norm();
    if (h == 0.0) continue;
    const double s = shell_of(g.factor1.kind, key.xi, g.factor2.kind, key.eta);
    auto [it, inserted] = shell_max.emplace(s, h);
    if (!inserted) it->second = std::max(it->second, h);
  }
  for (const auto& [s, v] : shell_max) fit.shells.push_back({s, v});
  if (fit.shells.empty()) {
    fit.classification = DecayClass::SmoothLike;
    fit.note = "empty table";
    return fit;
  }
  const double edge = last_complete_shell(g);
  const bool reaches_edge = fit.shells.back().shell >= edge - 1.0;
  std::size_t big = 0;
  for (const auto& sv : fit.shells) big += sv.value >= th.floor ? 1 : 0;
  if (reaches_edge && big >= static_cast<std::size_t>(th.min_shells) && fit.shells.back().value >= th.floor) {
    fit.classification = DecayClass::NonDecaying;
    fit.note = std::to_string(big) + " shells with block norm >= " + std::to_string(th.floor) +
               " reaching the truncation edge";
    return fit;
  }
  if (!reaches_edge) {
    fit.classification = DecayClass::SmoothLike;
    fit.note = "finitely supported inside the truncation";
    return fit;
  }
  if (fit.shells.size() < static_cast<std::size_t>(th.min_shells)) {
    fit.classification = DecayClass::Inconclusive;
    fit.note = "too few shells";
    return fit;
  }
  std::vector<double> x, y;
  for (const auto& sv : fit.shells) {
    x.push_back(std::log(sv.shell));
    y.push_back(std::log(sv.value));
  }
  const LineFit lf = fit_line(x, y);
  fit.slope = lf.slope;
  fit.constant = std::exp(lf.intercept);
  fit.r2 = lf.r2;
  const std::size_t half = std::max<std::size_t>(x.size() / 2, static_cast<std::size_t>(th.min_shells));
  const std::size_t start = x.size() > half ? x.size() - half : 0;
  const LineFit tail = fit_line(std::span(x).subspan(start), std::span(y).subspan(start));
  if (lf.slope <= th.smooth_slope && (lf.r2 >= th.smooth_r2 || tail.slope <= lf.slope)) {
    fit.classification = DecayClass::SmoothLike;
    fit.note = "slope below smoothness threshold";
  } else {
    fit.classification = DecayClass::DistributionOrder;
    fit.order = std::max(0, static_cast<int>(std::ceil(lf.slope)));
    fit.note = "polynomially bounded coefficients";
  }
  return fit;
}

}  // namespace lgh
