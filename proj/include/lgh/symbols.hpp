#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lgh/product.hpp"
#include "lgh/scalars.hpp"

namespace lgh {

// Trigonometric polynomial sum_{|k|<=K} c_k e^{ikt}.
struct TrigPoly {
  std::vector<ScalarConstant> coeffs;  // k = -K..K

  int degree() const { return static_cast<int>(coeffs.size() / 2); }
  cplx coefficient(int k) const;
  cplx operator()(double t) const;
  // Conjugate symmetry c_{-k} = conj(c_k), decided exactly for exact coefficients.
  bool is_real() const;
  bool is_constant() const;
  const ScalarConstant& mean() const { return coeffs[coeffs.size() / 2]; }
  std::string to_string() const;
};

// "trigpoly:[c_-K, ..., c_0, ..., c_K]" with scalar entries.
TrigPoly parse_trigpoly(std::string_view text);

// Function on G1 x G2, given by a formula or by a finite Fourier table.
class FieldFunction {
 public:
  using Fn = std::function<cplx(const FactorPoint&, const FactorPoint&)>;

  FieldFunction() = default;
  static FieldFunction analytic(Fn fn, std::string label);
  static FieldFunction band_limited(FourierTable table, std::string label);
  // Samples on a grid, transformed at the largest truncation the grid resolves.
  static FieldFunction from_samples(const GridFunction& f, const ProductGroup& kinds, std::string label);

  GridFunction sample(const ProductGrid& grid) const;
  cplx mean(const ProductGroup& group) const;
  const std::string& label() const { return label_; }
  const std::optional<FourierTable>& table() const { return table_; }

 private:
  Fn fn_;
  std::optional<FourierTable> table_;
  std::string label_;
};

// L = X1 + a(x1) X2 + q(x1, x2) on G1 x G2.
struct OperatorSpec {
  ProductGroup group;
  ScalarConstant a = ScalarConstant::rational(0);
  std::optional<TrigPoly> a_var;
  ScalarConstant q = ScalarConstant::rational(0);
  std::optional<FieldFunction> q_func;
  std::optional<ScalarConstant> q0;  // declared mean of a function perturbation
  std::optional<TrigPoly> A;
  std::optional<FieldFunction> Q;

  bool constant_coefficients() const { return !a_var && !q_func; }
  ScalarConstant a0() const;
  // Declared q0, else the constant q, else a numerical mean (float kind).
  ScalarConstant q0_value() const;
  // Constant-coefficient operator L_{a0 q0}.
  OperatorSpec normal_form() const;
  void validate() const;
};

// Doubled eigenvalue pairs and representation slots.
struct SymbolSlot {
  RepPair reps;
  int m = 0;  // local row index in factor 1
  int r = 0;  // local row index in factor 2
  Index lambda2 = 0;
  Index mu2 = 0;
};

// Visits every (xi, m, eta, r) inside the truncation of `group`.
void for_each_slot(const ProductGroup& group, const std::function<void(const SymbolSlot&)>& fn);

// i (lambda + a mu - i q) for constant a and q.
cplx full_symbol(const OperatorSpec& spec, Index xi, int m, Index eta, int r);

// Symbol evaluator for a constant-coefficient spec. Zeros of a Liouville coefficient are those of
// the irrational limit, not of its rational truncation.
class SpecSymbol {
 public:
  explicit SpecSymbol(const OperatorSpec& spec);

  bool exact() const { return form_.exact(); }
  cplx value(Index lambda2, Index mu2) const;
  bool is_zero(Index lambda2, Index mu2) const;
  // Zero test used for float kinds: |symbol| below a relative tolerance.
  bool is_numerically_zero(Index lambda2, Index mu2, double tol = 1e-12) const;
  bool zero(Index lambda2, Index mu2) const { return exact() ? is_zero(lambda2, mu2) : is_numerically_zero(lambda2, mu2); }
  GapValue gap(Index lambda2, Index mu2) const { return form_.evaluate(lambda2, mu2); }

 private:
  SymbolForm form_;
  SymbolForm zero_form_;
  cplx a_, q_;
};

enum class Finiteness { FiniteCertified, FiniteWithinTruncation, InfinitePattern };
std::string_view finiteness_label(Finiteness f);

// Exact solution structure of lambda + a mu - i q = 0 over the eigenvalue lattices.
// Coefficient used for zero detection: a Liouville truncation is replaced by an independent surd.
ScalarConstant zero_test_coefficient(const ScalarConstant& a);

struct ZeroStructure {
  enum class Kind { Empty, Finite, Line, Everything, Unknown };
  Kind kind = Kind::Unknown;
  std::vector<std::pair<Index, Index>> points;  // doubled (lambda, mu) when finite
  Finiteness finiteness = Finiteness::FiniteWithinTruncation;
  std::string reason;
};

ZeroStructure analyze_zero_structure(const OperatorSpec& spec);

struct SingularSetEntry {
  RepPair reps;
  int m = 0;
  int r = 0;
  Index lambda2 = 0;
  Index mu2 = 0;
};

struct SingularSet {
  std::vector<SingularSetEntry> entries;
  Finiteness finiteness = Finiteness::FiniteWithinTruncation;
  bool heuristic = false;
  std::string reason;
};

SingularSet enumerate_singular_set(const OperatorSpec& spec);

// Entrywise multiplication by the symbol; slots on exact zeros become exactly 0.
FourierTable apply_operator_spectral(const OperatorSpec& spec, const FourierTable& u);

}  // namespace lgh
