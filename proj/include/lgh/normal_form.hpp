#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lgh/solver.hpp"

namespace lgh {

// Relative spectral profile of a function along one factor: profile[b] is the largest coefficient
// magnitude at band b (|k| on the circle, 2l on SU(2)) divided by the largest magnitude overall.
struct SpectralProfile {
  std::vector<double> values;

  // Smallest band beyond which every value is below eps (probe length when never reached).
  int band(double eps) const;
  double at(int b) const;
};

struct ConjugatorBundle {
  ScalarConstant a0 = ScalarConstant::rational(0);
  std::vector<cplx> A{cplx(0.0)};  // antiderivative coefficients k = -K..K with A(0) = 0
  ScalarConstant q0 = ScalarConstant::rational(0);
  std::optional<FieldFunction> Q;
  std::string Q_source;  // "given", "division" or "none"
  int oversampling = 4;
  double max_abs_A = 0.0;
  // Spectra of e^{+Q} and e^{-Q} combined, along each factor.
  SpectralProfile exp_profile1;
  SpectralProfile exp_profile2;

  int degree() const { return static_cast<int>(A.size() / 2); }
  double antiderivative(double t) const;
  bool trivial_psi() const { return degree() == 0; }
};

// Threshold defining the numerical band of non-band-limited multipliers.
inline constexpr double kSpectralTail = 1e-13;

// Builds a0, A, q0 and Q; a missing Q is computed by division on two circle factors with constant a.
ConjugatorBundle build_conjugators(const OperatorSpec& spec);

// Spectral derivative along the first factor of data laid out [node][batch] on a uniform circle grid.
void circle_derivative(int n_points, std::size_t batch, const cplx* in, cplx* out);

// Multiplies row r of every eta block at node x1 by e^{sign i mu_r A(x1)}.
PartialCoefficientField psi_apply(const ConjugatorBundle& bundle, int sign, const PartialCoefficientField& v);

// Uniform circle grid size for applying Psi to tables with this truncation.
int psi_points(const ConjugatorBundle& bundle, const ProductGroup& group);

// Field of a table on a uniform circle grid with n1 points.
PartialCoefficientField table_field(const FourierTable& table, int n1);

// || L_{a0}(Psi_a u) - Psi_a(L_a u) ||, with the x1-derivative of Psi_a u taken numerically.
double conjugation_residual_psi(const OperatorSpec& spec, const ConjugatorBundle& bundle, const FourierTable& u);

// Pointwise multiplication by e^{sign Q}.
GridFunction exp_conjugate(const GridFunction& Q, int sign, const GridFunction& u);

// Grid resolving e^{+-Q} u for tables u with the truncation of `group`.
ProductGroup exp_work_group(const ConjugatorBundle& bundle, const ProductGroup& group);

// || L_{aq}(e^{-Q} u) - e^{-Q}(L_{a q0} u) || on the quadrature grid, derivatives of e^{-Q} u numerical.
double conjugation_residual_exp(const OperatorSpec& spec, const ConjugatorBundle& bundle, const FourierTable& u);

// L u for grid functions resolved by the transform: numerical x1-derivative, spectral X2.
GridFunction apply_operator_grid(const OperatorSpec& spec, const ProductTransform& transform, const GridFunction& u);

struct CohomologyResiduals {
  double A = 0.0;  // sup over k of |ik A(k) - a(k)| for k != 0
  std::optional<double> Q;  // relative quadrature norm of (X1 + a X2) Q - (q - q0)
};

CohomologyResiduals verify_cohomology(const OperatorSpec& spec, const ConjugatorBundle& bundle);
CohomologyResiduals verify_cohomology(const OperatorSpec& spec);

struct FullSolveReport {
  ProductGroup work_group;
  std::string work_grid;
  int oversampling = 4;
  int extra1 = 0;  // factor-1 band added for e^{Q} and Psi
  int extra2 = 0;  // factor-2 band added for e^{Q}
  AdmissibilityReport admissibility;
  double residual = 0.0;  // ||L u - f|| / ||f|| on the work grid
  double transported_norm = 0.0;
  bool constant_path = false;
  std::string Q_source;
};

struct FullSolution {
  GridFunction u;
  FourierTable coefficients;  // u on the work truncation
  FourierTable transported_rhs;  // Psi_a(e^{Q} f)
  FourierTable transported_solution;  // canonical solution of L_{a0 q0} v = g
  FullSolveReport report;
};

// Solves L_{aq} u = f through u = e^{-Q} Psi_{-a} v with L_{a0 q0} v = Psi_a(e^{Q} f).
FullSolution solve_full(const OperatorSpec& spec, const FourierTable& f, double tol = 1e-10);
FullSolution solve_full(const OperatorSpec& spec, const ConjugatorBundle& bundle, const FourierTable& f,
                        double tol = 1e-10);

// Coefficients of Psi_a w on the transform truncation.
FourierTable transport(const ConjugatorBundle& bundle, const ProductTransform& transform, const GridFunction& w);

}  // namespace lgh
