#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lgh/core.hpp"
#include "lgh/grid.hpp"
#include "lgh/kernels.hpp"

namespace lgh {

struct ProductGroup {
  Factor factor1;
  Factor factor2;

  bool operator==(const ProductGroup&) const = default;
};

struct RepPair {
  Index xi = 0;
  Index eta = 0;

  auto operator<=>(const RepPair&) const = default;
};

// Coefficient block u(xi, eta)_{mn,rs} stored as data[((m d1 + n) d2 + r) d2 + s].
struct Block {
  int d1 = 1;
  int d2 = 1;
  std::vector<cplx> data;

  Block() : data(1, cplx(0.0)) {}
  Block(int dim1, int dim2);

  cplx& at(int m, int n, int r, int s) { return data[((static_cast<std::size_t>(m) * d1 + n) * d2 + r) * d2 + s]; }
  const cplx& at(int m, int n, int r, int s) const {
    return data[((static_cast<std::size_t>(m) * d1 + n) * d2 + r) * d2 + s];
  }
  double hs_norm() const;
  bool is_zero() const;
};

// Truncated double Fourier coefficients. Only populated blocks are stored.
class FourierTable {
 public:
  FourierTable() = default;
  explicit FourierTable(ProductGroup group) : group_(group) {}

  const ProductGroup& group() const { return group_; }
  const std::map<RepPair, Block>& blocks() const { return blocks_; }
  std::map<RepPair, Block>& blocks() { return blocks_; }

  // Returns the block, inserting a zero block of the right shape when absent.
  Block& block(const RepPair& key);
  const Block* find(const RepPair& key) const;
  cplx entry(const RepPair& key, int m, int n, int r, int s) const;
  void set(const RepPair& key, int m, int n, int r, int s, cplx value);

  bool within_truncation() const;
  void prune_zero_blocks();

  FourierTable& operator+=(const FourierTable& other);
  FourierTable& operator-=(const FourierTable& other);
  FourierTable& operator*=(cplx scale);

 private:
  ProductGroup group_;
  std::map<RepPair, Block> blocks_;
};

FourierTable operator+(FourierTable a, const FourierTable& b);
FourierTable operator-(FourierTable a, const FourierTable& b);
FourierTable operator*(cplx s, FourierTable a);

// Dense layout [c1][c2] with c1 = offset1(xi) + m d1 + n, c2 = offset2(eta) + r d2 + s.
std::vector<cplx> to_dense(const FourierTable& table, const BlockLayout& l1, const BlockLayout& l2);
FourierTable from_dense(const ProductGroup& group, const BlockLayout& l1, const BlockLayout& l2,
                        const std::vector<cplx>& dense);

struct ProductGrid {
  FactorGrid grid1;
  FactorGrid grid2;

  std::size_t size() const { return grid1.size() * grid2.size(); }
  double weight(std::size_t i1, std::size_t i2) const { return grid1.weight(i1) * grid2.weight(i2); }
  bool operator==(const ProductGrid&) const = default;
};

ProductGrid default_grid(const ProductGroup& group);

// Coordinates of a grid node on one factor.
struct FactorPoint {
  double t = 0.0;
  EulerAngles x;
};
FactorPoint factor_point(const FactorGrid& grid, std::size_t node);

// Samples laid out [node1][node2].
struct GridFunction {
  ProductGrid grid;
  std::vector<cplx> values;

  static GridFunction zeros(const ProductGrid& grid);
  static GridFunction sample(const ProductGrid& grid,
                             const std::function<cplx(const FactorPoint&, const FactorPoint&)>& fn);

  cplx& at(std::size_t i1, std::size_t i2) { return values[i1 * grid.grid2.size() + i2]; }
  const cplx& at(std::size_t i1, std::size_t i2) const { return values[i1 * grid.grid2.size() + i2]; }
  double weight_sum() const;
};

double quadrature_norm(const GridFunction& f);

// Hybrid representation: x1 grid nodes times eta-coefficient blocks v(x1, eta)_{rs}.
struct PartialCoefficientField {
  FactorGrid grid1;
  BlockLayout layout2;
  std::vector<cplx> data;  // [node1][c2]

  cplx* node(std::size_t j) { return data.data() + j * layout2.size(); }
  const cplx* node(std::size_t j) const { return data.data() + j * layout2.size(); }
};

// Field norm: sqrt(sum_j w_j sum_eta d_eta |v|^2).
double field_norm(const PartialCoefficientField& field);

class ProductTransform {
 public:
  ProductTransform(ProductGrid grid, ProductGroup group, bool reference = false, bool synthesis_only = false);

  const ProductGrid& grid() const { return grid_; }
  const ProductGroup& group() const { return group_; }
  const FactorPlan& plan1() const { return plan1_; }
  const FactorPlan& plan2() const { return plan2_; }

  FourierTable forward(const GridFunction& f) const;
  GridFunction inverse(const FourierTable& table) const;
  PartialCoefficientField partial_forward_x2(const GridFunction& f) const;
  GridFunction partial_inverse_x2(const PartialCoefficientField& field) const;
  FourierTable field_forward_x1(const PartialCoefficientField& field) const;
  PartialCoefficientField field_inverse_x1(const FourierTable& table) const;

 private:
  ProductGrid grid_;
  ProductGroup group_;
  FactorPlan plan1_;
  FactorPlan plan2_;
  bool reference_;
};

FourierTable double_forward(const GridFunction& f, const ProductGroup& group);
GridFunction double_inverse(const FourierTable& table, const ProductGrid& grid);
GridFunction double_inverse(const FourierTable& table);
// Evaluates the expansion on any grid, including grids too coarse for the forward transform.
GridFunction synthesize(const FourierTable& table, const ProductGrid& grid);

double plancherel_norm(const FourierTable& table);

// Shell index round(<xi> + <eta>).
double shell_of(GroupKind k1, Index xi, GroupKind k2, Index eta);
// Largest shell all of whose representation pairs lie inside the truncation.
double last_complete_shell(const ProductGroup& group);

enum class DecayClass { SmoothLike, DistributionOrder, NonDecaying, Inconclusive };
std::string_view decay_label(DecayClass c);

struct ShellValue {
  double shell = 0.0;
  double value = 0.0;
};

struct DecayFit {
  double slope = 0.0;
  double constant = 0.0;
  double r2 = 0.0;
  DecayClass classification = DecayClass::Inconclusive;
  int order = 0;
  std::vector<ShellValue> shells;
  std::string note;
};

// Thresholds for decay classification.
struct DecayThresholds {
  double smooth_slope = -3.0;
  double smooth_r2 = 0.9;
  double floor = 0.5;
  int min_shells = 3;
};

DecayFit decay_classify(const FourierTable& table, const DecayThresholds& th = {});

}  // namespace lgh
