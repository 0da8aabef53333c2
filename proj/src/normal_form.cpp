#include "lgh/normal_form.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lgh/circle.hpp"
#include "lgh/kernels.hpp"

namespace lgh {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kCircleProbe = 128;
constexpr int kSu2Probe = 32;

int odd_at_least(int n) { return n % 2 == 0 ? n + 1 : n; }

double eigen_of(GroupKind kind, Index rep, int local) { return 0.5 * static_cast<double>(twice_eigenvalue(kind, rep, local)); }

// Band of a representation: |k| on the circle, 2l on SU(2).
int rep_band(GroupKind kind, Index rep) {
  return kind == GroupKind::Circle ? static_cast<int>(std::abs(rep)) : static_cast<int>(rep);
}

// Largest eigenvalue magnitude |mu| inside a truncation.
double max_eigen(const Factor& f) {
  switch (f.kind) {
    case GroupKind::Trivial: return 0.0;
    case GroupKind::Circle: return f.trunc;
    case GroupKind::SU2: return 0.5 * f.trunc;
  }
  return 0.0;
}

int cap_trunc(GroupKind kind, int trunc) {
  if (kind == GroupKind::Trivial) return 0;
  if (kind == GroupKind::SU2) return std::min(trunc, kMaxTwoEll);
  return trunc;
}

// Coefficients c_k, |k| <= (n-1)/2, of samples on a uniform circle grid.
std::vector<cplx> circle_dft(const std::vector<cplx>& samples) {
  const int n = static_cast<int>(samples.size());
  const int K = (n - 1) / 2;
  std::vector<cplx> c(2 * K + 1, cplx(0.0));
  for (int k = -K; k <= K; ++k) {
    cplx s = 0;
    for (int j = 0; j < n; ++j) s += samples[j] * std::polar(1.0, -2 * kPi * k * j / n);
    c[k + K] = s / static_cast<double>(n);
  }
  return c;
}

// Spectrum profile of e^{+-Q} along one factor, from slices at a few nodes of the other factor.
SpectralProfile probe_exp_profile(const FieldFunction& Q, const ProductGroup& group, int factor) {
  const Factor& own = factor == 1 ? group.factor1 : group.factor2;
  const Factor& other = factor == 1 ? group.factor2 : group.factor1;
  if (own.kind == GroupKind::Trivial) return SpectralProfile{{1.0}};
  const int probe_trunc = own.kind == GroupKind::SU2 ? kSu2Probe : kCircleProbe;
  const Factor probe{own.kind, probe_trunc};
  const FactorGrid own_grid = FactorGrid::for_band(own.kind, 2 * probe_trunc);
  const FactorGrid other_grid = FactorGrid::for_band(other.kind, 6);
  const ProductGrid grid = factor == 1 ? ProductGrid{own_grid, other_grid} : ProductGrid{other_grid, own_grid};
  const GridFunction q = Q.sample(grid);
  const FactorPlan plan(own_grid, probe);
  const BlockLayout& layout = plan.layout();

  std::vector<double> values(probe_trunc + 1, 0.0);
  const std::size_t n_own = own_grid.size(), n_other = other_grid.size();
  const std::size_t slices[] = {0, n_other / 3, (2 * n_other) / 3};
  std::vector<cplx> in(n_own), out(layout.size());
  for (std::size_t slice : slices) {
    if (slice >= n_other) continue;
    for (int sign : {1, -1}) {
      for (std::size_t i = 0; i < n_own; ++i) {
        const cplx v = factor == 1 ? q.at(i, slice) : q.at(slice, i);
        in[i] = std::exp(static_cast<double>(sign) * v);
      }
      plan.forward(in.data(), 1, out.data());
      for (std::size_t rep = 0; rep < layout.rep_count(); ++rep) {
        const int b = rep_band(own.kind, layout.rep(rep));
        const std::size_t d2 = static_cast<std::size_t>(layout.dim(rep)) * layout.dim(rep);
        for (std::size_t c = 0; c < d2; ++c) values[b] = std::max(values[b], std::abs(out[layout.offset(rep) + c]));
      }
    }
  }
  const double top = *std::max_element(values.begin(), values.end());
  if (top > 0)
    for (double& v : values) v /= top;
  return SpectralProfile{values};
}

// |c_k| of e^{i mu A(t)}.
std::vector<double> multiplier_spectrum(const ConjugatorBundle& b, double mu) {
  const int width = static_cast<int>(std::ceil(std::abs(mu) * b.max_abs_A)) * b.degree();
  const int n = odd_at_least(2 * (2 * width + 24 * b.degree() + 16) + 1);
  std::vector<cplx> samples(n);
  for (int j = 0; j < n; ++j) samples[j] = std::polar(1.0, mu * b.antiderivative(2 * kPi * j / n));
  const std::vector<cplx> c = circle_dft(samples);
  const int K = static_cast<int>(c.size() / 2);
  std::vector<double> mag(K + 1, 0.0);
  for (int k = -K; k <= K; ++k) mag[std::abs(k)] = std::max(mag[std::abs(k)], std::abs(c[k + K]));
  return mag;
}

// Band of e^{i mu A} content weighted by `amplitude`, above eps.
int multiplier_band(const ConjugatorBundle& b, double mu, double amplitude, double eps) {
  if (b.trivial_psi() || amplitude <= 0.0 || mu == 0.0) return 0;
  const std::vector<double> mag = multiplier_spectrum(b, mu);
  int band = 0;
  for (int k = 0; k < static_cast<int>(mag.size()); ++k)
    if (mag[k] * amplitude >= eps) band = k;
  return band;
}

// Factor-1 band that Psi adds to content whose factor-2 spectrum extends `extra2` beyond `trunc2`.
int psi_extra_band(const ConjugatorBundle& b, const Factor& f2, int trunc2_work) {
  if (b.trivial_psi() || f2.kind == GroupKind::Trivial) return 0;
  int best = 0;
  const int step = f2.kind == GroupKind::SU2 ? 1 : 2;  // doubled eigenvalue lattice step
  const int top2 = f2.kind == GroupKind::SU2 ? trunc2_work : 2 * trunc2_work;
  for (int mu2 = step; mu2 <= top2; mu2 += step) {
    const int band = f2.kind == GroupKind::SU2 ? mu2 : mu2 / 2;
    const double amp = band <= f2.trunc ? 1.0 : b.exp_profile2.at(band - f2.trunc);
    best = std::max(best, multiplier_band(b, 0.5 * mu2, amp, kSpectralTail));
  }
  return best;
}

cplx coefficient_a(const OperatorSpec& spec, double t) {
  return spec.a_var ? cplx((*spec.a_var)(t).real(), 0.0) : spec.a.value();
}

// Eigenvalue mu_r per field column.
std::vector<double> column_eigenvalues(const BlockLayout& layout) {
  std::vector<double> mu(layout.size(), 0.0);
  const GroupKind kind = layout.factor().kind;
  for (std::size_t i = 0; i < layout.rep_count(); ++i) {
    const int d = layout.dim(i);
    for (int r = 0; r < d; ++r)
      for (int s = 0; s < d; ++s) mu[layout.offset(i) + static_cast<std::size_t>(r) * d + s] = eigen_of(kind, layout.rep(i), r);
  }
  return mu;
}

double uniform_node(const FactorGrid& g, std::size_t j) { return g.kind() == GroupKind::Circle ? g.circle_node(j) : 0.0; }

// Exact L u on a grid for a band-limited table; q replaced by `q_override` when given.
GridFunction apply_operator_exact(const OperatorSpec& spec, const FourierTable& u, const ProductGrid& grid,
                                  const std::optional<cplx>& q_override) {
  const ProductGroup& g = u.group();
  FourierTable du1 = u, du2 = u;
  for (auto& [key, b] : du1.blocks()) {
    for (int m = 0; m < b.d1; ++m) {
      const cplx s1(0.0, eigen_of(g.factor1.kind, key.xi, m));
      for (int n = 0; n < b.d1; ++n)
        for (int r = 0; r < b.d2; ++r)
          for (int s = 0; s < b.d2; ++s) b.at(m, n, r, s) *= s1;
    }
  }
  for (auto& [key, b] : du2.blocks()) {
    for (int r = 0; r < b.d2; ++r) {
      const cplx s2(0.0, eigen_of(g.factor2.kind, key.eta, r));
      for (int m = 0; m < b.d1; ++m)
        for (int n = 0; n < b.d1; ++n)
          for (int s = 0; s < b.d2; ++s) b.at(m, n, r, s) *= s2;
    }
  }
  const GridFunction uu = synthesize(u, grid), x1 = synthesize(du1, grid), x2 = synthesize(du2, grid);
  GridFunction out = GridFunction::zeros(grid);
  std::optional<GridFunction> qg;
  if (!q_override && spec.q_func) qg = spec.q_func->sample(grid);
  const cplx qc = q_override ? *q_override : spec.q.value();
  const std::size_t N2 = grid.grid2.size();
  for (std::size_t i = 0; i < grid.grid1.size(); ++i) {
    const cplx a = coefficient_a(spec, uniform_node(grid.grid1, i));
    for (std::size_t j = 0; j < N2; ++j) {
      const cplx q = qg ? qg->at(i, j) : qc;
      out.at(i, j) = x1.at(i, j) + a * x2.at(i, j) + q * uu.at(i, j);
    }
  }
  return out;
}

GridFunction difference(const GridFunction& x, const GridFunction& y) {
  GridFunction d = x;
  for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] -= y.values[i];
  return d;
}

// Q from q on two circle factors with constant a: Q^ = (q^ - q0 delta) / (i(k + a l)).
FieldFunction division_Q(const OperatorSpec& spec) {
  const ProductGroup& g = spec.group;
  const FourierTable qt = double_forward(spec.q_func->sample(default_grid(g)), g);
  const cplx a = spec.a.value();
  FourierTable Qt(g);
  const double scale = std::max(1.0, plancherel_norm(qt));
  for (const auto& [key, b] : qt.blocks()) {
    if (key.xi == 0 && key.eta == 0) continue;
    const cplx v = b.at(0, 0, 0, 0);
    if (std::abs(v) <= 1e-14 * scale) continue;
    const cplx sym = cplx(0, 1) * (static_cast<double>(key.xi) + a * static_cast<double>(key.eta));
    if (std::abs(sym) < 1e-12)
      throw std::invalid_argument("q - q0 has content where k + a l = 0; no Q solves the cohomological equation");
    Qt.set(key, 0, 0, 0, 0, v / sym);
  }
  return FieldFunction::band_limited(std::move(Qt), "division");
}

}  // namespace

int SpectralProfile::band(double eps) const {
  int b = 0;
  for (int i = 0; i < static_cast<int>(values.size()); ++i)
    if (values[i] >= eps) b = i;
  return b;
}

double SpectralProfile::at(int b) const {
  if (b < 0) return 1.0;
  return b < static_cast<int>(values.size()) ? values[b] : 0.0;
}

double ConjugatorBundle::antiderivative(double t) const {
  const int K = degree();
  double s = 0;
  for (int k = 1; k <= K; ++k) s += 2.0 * (A[K + k] * std::polar(1.0, k * t)).real();
  return s;
}

ConjugatorBundle build_conjugators(const OperatorSpec& spec) {
  spec.validate();
  ConjugatorBundle b;
  b.a0 = spec.a0();
  if (spec.a_var) {
    const int K = spec.a_var->degree();
    b.A.assign(2 * K + 1, cplx(0.0));
    for (int k = -K; k <= K; ++k)
      if (k != 0) b.A[k + K] = spec.a_var->coefficient(k) / cplx(0.0, k);
    double m = 0;
    for (int j = 0; j < 1024; ++j) m = std::max(m, std::abs(b.antiderivative(2 * kPi * j / 1024)));
    b.max_abs_A = m;
  }
  b.q0 = spec.q0_value();
  if (spec.Q) {
    b.Q = spec.Q;
    b.Q_source = "given";
  } else if (spec.q_func) {
    if (spec.a_var || spec.group.factor1.kind != GroupKind::Circle || spec.group.factor2.kind != GroupKind::Circle)
      throw std::invalid_argument("function perturbation q requires Q (division only on two circle factors with constant a)");
    b.Q = division_Q(spec);
    b.Q_source = "division";
  } else {
    b.Q_source = "none";
  }
  const double mu = max_eigen(spec.group.factor2);
  const int K1 = std::max(1, spec.group.factor1.trunc);
  b.oversampling = std::max(4, static_cast<int>(std::ceil(2.0 * mu * b.max_abs_A / K1)));
  if (b.Q) {
    b.exp_profile1 = probe_exp_profile(*b.Q, spec.group, 1);
    b.exp_profile2 = probe_exp_profile(*b.Q, spec.group, 2);
    const CohomologyResiduals res = verify_cohomology(spec, b);
    if (res.Q && *res.Q > 1e-8)
      throw std::invalid_argument("Q fails (X1 + a X2) Q = q - q0: residual " + std::to_string(*res.Q));
  } else {
    b.exp_profile1 = SpectralProfile{{1.0}};
    b.exp_profile2 = SpectralProfile{{1.0}};
  }
  return b;
}

void circle_derivative(int n, std::size_t batch, const cplx* in, cplx* out) {
  if (n % 2 == 0) throw std::invalid_argument("spectral derivative needs an odd number of circle points");
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l)
      if (j != l) {
        const int d = j - l;
        D(j, l) = (d % 2 == 0 ? 0.5 : -0.5) / std::sin(kPi * d / n);
      }
  using Map = Eigen::Map<RowMatrixXcd>;
  using CMap = Eigen::Map<const RowMatrixXcd>;
  Map(out, n, static_cast<Eigen::Index>(batch)).noalias() = D * CMap(in, n, static_cast<Eigen::Index>(batch));
}

PartialCoefficientField psi_apply(const ConjugatorBundle& bundle, int sign, const PartialCoefficientField& v) {
  if (bundle.trivial_psi()) return v;
  if (v.grid1.kind() != GroupKind::Circle) throw std::invalid_argument("Psi requires a circle first factor");
  PartialCoefficientField out = v;
  const std::vector<double> mu = column_eigenvalues(v.layout2);
  const std::size_t C = v.layout2.size();
  const long long N1 = static_cast<long long>(v.grid1.size());
#pragma omp parallel for schedule(static)
  for (long long j = 0; j < N1; ++j) {
    const double A = bundle.antiderivative(v.grid1.circle_node(static_cast<std::size_t>(j)));
    cplx* row = out.node(static_cast<std::size_t>(j));
    for (std::size_t c = 0; c < C; ++c) row[c] *= std::polar(1.0, sign * mu[c] * A);
  }
  return out;
}

int psi_points(const ConjugatorBundle& bundle, const ProductGroup& group) {
  const int K1 = group.factor1.trunc;
  const int extra = multiplier_band(bundle, max_eigen(group.factor2), 1.0, kSpectralTail);
  return odd_at_least(std::max(bundle.oversampling * (2 * K1 + 1), 2 * (K1 + extra) + 1));
}

PartialCoefficientField table_field(const FourierTable& table, int n1) {
  const ProductGroup& g = table.group();
  if (g.factor1.kind != GroupKind::Circle) throw std::invalid_argument("table_field requires a circle first factor");
  const FactorPlan plan1(FactorGrid::circle(n1), g.factor1, true);
  const BlockLayout l2(g.factor2);
  const std::vector<cplx> dense = to_dense(table, plan1.layout(), l2);
  PartialCoefficientField field{plan1.grid(), l2, std::vector<cplx>(static_cast<std::size_t>(n1) * l2.size())};
  plan1.inverse(dense.data(), l2.size(), field.data.data());
  return field;
}

double conjugation_residual_psi(const OperatorSpec& spec, const ConjugatorBundle& bundle, const FourierTable& u) {
  const ProductGroup& g = u.group();
  const int n1 = psi_points(bundle, g);
  FourierTable du = u;
  for (auto& [key, b] : du.blocks())
    for (cplx& v : b.data) v *= t1_derivative_symbol(key.xi);
  const PartialCoefficientField U = table_field(u, n1), dU = table_field(du, n1);
  const std::vector<double> mu = column_eigenvalues(U.layout2);
  const std::size_t C = U.layout2.size();
  const cplx a0 = bundle.a0.value();

  PartialCoefficientField La = U;
  for (int j = 0; j < n1; ++j) {
    const cplx a = coefficient_a(spec, U.grid1.circle_node(j));
    for (std::size_t c = 0; c < C; ++c) La.node(j)[c] = dU.node(j)[c] + a * cplx(0, mu[c]) * U.node(j)[c];
  }
  const PartialCoefficientField rhs = psi_apply(bundle, 1, La);
  const PartialCoefficientField W = psi_apply(bundle, 1, U);
  PartialCoefficientField lhs = W;
  circle_derivative(n1, C, W.data.data(), lhs.data.data());
  for (int j = 0; j < n1; ++j)
    for (std::size_t c = 0; c < C; ++c) lhs.node(j)[c] += a0 * cplx(0, mu[c]) * W.node(j)[c] - rhs.node(j)[c];
  return field_norm(lhs);
}

GridFunction exp_conjugate(const GridFunction& Q, int sign, const GridFunction& u) {
  if (!(Q.grid == u.grid)) throw std::invalid_argument("Q and u live on different grids");
  GridFunction out = u;
  const double s = static_cast<double>(sign);
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= std::exp(s * Q.values[i]);
  return out;
}

ProductGroup exp_work_group(const ConjugatorBundle& bundle, const ProductGroup& group) {
  ProductGroup w = group;
  if (!bundle.Q) return w;
  w.factor1.trunc = cap_trunc(w.factor1.kind, w.factor1.trunc + bundle.exp_profile1.band(kSpectralTail));
  w.factor2.trunc = cap_trunc(w.factor2.kind, w.factor2.trunc + bundle.exp_profile2.band(kSpectralTail));
  return w;
}

GridFunction apply_operator_grid(const OperatorSpec& spec, const ProductTransform& transform, const GridFunction& u) {
  const ProductGrid& grid = transform.grid();
  if (!(u.grid == grid)) throw std::invalid_argument("grid function does not live on the transform grid");
  const std::size_t N1 = grid.grid1.size(), N2 = grid.grid2.size();
  GridFunction x1 = GridFunction::zeros(grid);
  if (grid.grid1.kind() == GroupKind::Circle)
    circle_derivative(static_cast<int>(N1), N2, u.values.data(), x1.values.data());
  GridFunction x2 = GridFunction::zeros(grid);
  if (grid.grid2.kind() != GroupKind::Trivial) {
    PartialCoefficientField field = transform.partial_forward_x2(u);
    const std::vector<double> mu = column_eigenvalues(field.layout2);
    const std::size_t C = field.layout2.size();
    for (std::size_t j = 0; j < N1; ++j)
      for (std::size_t c = 0; c < C; ++c) field.node(j)[c] *= cplx(0, mu[c]);
    x2 = transform.partial_inverse_x2(field);
  }
  std::optional<GridFunction> qg;
  if (spec.q_func) qg = spec.q_func->sample(grid);
  const cplx qc = spec.q.value();
  GridFunction out = GridFunction::zeros(grid);
  for (std::size_t i = 0; i < N1; ++i) {
    const cplx a = coefficient_a(spec, uniform_node(grid.grid1, i));
    for (std::size_t j = 0; j < N2; ++j)
      out.at(i, j) = x1.at(i, j) + a * x2.at(i, j) + (qg ? qg->at(i, j) : qc) * u.at(i, j);
  }
  return out;
}

double conjugation_residual_exp(const OperatorSpec& spec, const ConjugatorBundle& bundle, const FourierTable& u) {
  if (!bundle.Q) return 0.0;
  const ProductGroup w = exp_work_group(bundle, u.group());
  const ProductGrid grid = default_grid(w);
  const ProductTransform transform(grid, w);
  const GridFunction Q = bundle.Q->sample(grid);
  const GridFunction lhs = apply_operator_grid(spec, transform, exp_conjugate(Q, -1, transform.inverse(u)));
  const GridFunction rhs = exp_conjugate(Q, -1, apply_operator_exact(spec, u, grid, bundle.q0.value()));
  return quadrature_norm(difference(lhs, rhs));
}

CohomologyResiduals verify_cohomology(const OperatorSpec& spec, const ConjugatorBundle& bundle) {
  CohomologyResiduals res;
  if (spec.a_var) {
    const int K = std::max(bundle.degree(), spec.a_var->degree());
    for (int k = -K; k <= K; ++k) {
      if (k == 0) continue;
      const cplx Ak = std::abs(k) <= bundle.degree() ? bundle.A[k + bundle.degree()] : cplx(0.0);
      res.A = std::max(res.A, std::abs(cplx(0.0, k) * Ak - spec.a_var->coefficient(k)));
    }
  }
  if (bundle.Q) {
    OperatorSpec transport = spec;
    transport.q = ScalarConstant::rational(0);
    transport.q_func.reset();
    const ProductGrid grid = default_grid(spec.group);
    const ProductTransform transform(grid, spec.group);
    const GridFunction XQ = apply_operator_grid(transport, transform, bundle.Q->sample(grid));
    GridFunction target = spec.q_func ? spec.q_func->sample(grid) : GridFunction::zeros(grid);
    const cplx shift = (spec.q_func ? cplx(0.0) : spec.q.value()) - bundle.q0.value();
    for (cplx& v : target.values) v += shift;
    res.Q = quadrature_norm(difference(XQ, target)) / std::max(1.0, quadrature_norm(target));
  }
  return res;
}

CohomologyResiduals verify_cohomology(const OperatorSpec& spec) { return verify_cohomology(spec, build_conjugators(spec)); }

FourierTable transport(const ConjugatorBundle& bundle, const ProductTransform& transform, const GridFunction& w) {
  return transform.field_forward_x1(psi_apply(bundle, 1, transform.partial_forward_x2(w)));
}

FullSolution solve_full(const OperatorSpec& spec, const FourierTable& f, double tol) {
  return spec.constant_coefficients() ? solve_full(spec, ConjugatorBundle{}, f, tol)
                                      : solve_full(spec, build_conjugators(spec), f, tol);
}

FullSolution solve_full(const OperatorSpec& spec, const ConjugatorBundle& bundle, const FourierTable& f, double tol) {
  const ProductGroup& g = spec.group;
  if (f.group().factor1.kind != g.factor1.kind || f.group().factor2.kind != g.factor2.kind)
    throw std::invalid_argument("right-hand side lives on a different group");
  FullSolution sol;
  FullSolveReport& rep = sol.report;
  const double fnorm = plancherel_norm(f);

  if (spec.constant_coefficients()) {
    rep.constant_path = true;
    rep.Q_source = "none";
    rep.work_group = f.group();
    const ProductGrid grid = default_grid(f.group());
    rep.work_grid = grid.grid1.describe() + " x " + grid.grid2.describe();
    rep.admissibility = check_admissible(f, spec, tol);
    sol.transported_rhs = f;
    sol.transported_solution = solve_constant(spec, f, tol);
    sol.coefficients = sol.transported_solution;
    sol.u = synthesize(sol.coefficients, grid);
    rep.transported_norm = fnorm;
    rep.residual = fnorm > 0 ? residual(spec, sol.coefficients, f) / fnorm : 0.0;
    return sol;
  }

  rep.Q_source = bundle.Q_source;
  rep.oversampling = bundle.oversampling;
  const Factor& f1 = f.group().factor1;
  const Factor& f2 = f.group().factor2;
  const int e1 = bundle.Q ? bundle.exp_profile1.band(kSpectralTail) : 0;
  const int e2 = bundle.Q ? bundle.exp_profile2.band(kSpectralTail) : 0;
  const int T2w = cap_trunc(f2.kind, f2.trunc + 2 * e2);
  const int eA = psi_extra_band(bundle, f2, T2w);
  rep.extra1 = e1 + eA;
  rep.extra2 = T2w - f2.trunc;

  ProductGrid grid;
  ProductGroup work = f.group();
  work.factor2.trunc = T2w;
  grid.grid2 = FactorGrid::for_band(f2.kind, 2 * T2w);
  if (f1.kind == GroupKind::Circle) {
    const int K1w = f1.trunc + 2 * (e1 + eA);
    const int n1 = odd_at_least(std::max(2 * K1w + 1, bundle.oversampling * (2 * f1.trunc + 1)));
    grid.grid1 = FactorGrid::circle(n1);
    work.factor1.trunc = (n1 - 1) / 2;
  } else {
    grid.grid1 = FactorGrid::trivial();
  }
  rep.work_group = work;
  rep.work_grid = grid.grid1.describe() + " x " + grid.grid2.describe();
  const ProductTransform transform(grid, work);

  const GridFunction fg = transform.inverse(f);
  std::optional<GridFunction> Q;
  if (bundle.Q) Q = bundle.Q->sample(grid);
  sol.transported_rhs = transport(bundle, transform, Q ? exp_conjugate(*Q, 1, fg) : fg);
  rep.transported_norm = plancherel_norm(sol.transported_rhs);

  OperatorSpec reduced = spec.normal_form();
  reduced.group = work;
  rep.admissibility = check_admissible(sol.transported_rhs, reduced, tol);
  if (!rep.admissibility.admissible) throw NotAdmissible(rep.admissibility);
  sol.transported_solution = solve_constant(reduced, sol.transported_rhs, tol);

  const PartialCoefficientField field = psi_apply(bundle, -1, transform.field_inverse_x1(sol.transported_solution));
  GridFunction w = transform.partial_inverse_x2(field);
  sol.u = Q ? exp_conjugate(*Q, -1, w) : std::move(w);
  sol.coefficients = transform.forward(sol.u);

  const GridFunction Lu = apply_operator_grid(spec, transform, sol.u);
  const double fq = quadrature_norm(fg);
  rep.residual = fq > 0 ? quadrature_norm(difference(Lu, fg)) / fq : 0.0;
  return sol;
}

}  // namespace lgh
