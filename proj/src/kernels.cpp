#include "lgh/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lgh/su2.hpp"

namespace lgh {
namespace {

using ConstMap = Eigen::Map<const RowMatrixXcd>;
using Map = Eigen::Map<RowMatrixXcd>;

// e^{i 2 pi r / n} with the residue reduced exactly.
cplx unit_root(long long r, long long n) {
  const long long m = ((r % n) + n) % n;
  return std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n));
}

}  // namespace

cplx i_power(long long e) {
  switch (((e % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

FactorPlan::FactorPlan(FactorGrid grid, Factor factor, bool synthesis_only)
    : grid_(std::move(grid)), layout_(factor), synthesis_only_(synthesis_only) {
  if (grid_.kind() != factor.kind) throw std::invalid_argument("grid and factor kinds differ");
  if (!synthesis_only && grid_.band() < 2 * factor.trunc)
    throw std::invalid_argument("grid " + grid_.describe() + " too small for truncation " +
                                std::to_string(factor.trunc) + ": band " + std::to_string(grid_.band()) +
                                " < required " + std::to_string(2 * factor.trunc));
  const int T = factor.trunc;
  if (factor.kind == GroupKind::Circle) {
    const long long n = grid_.n_points();
    const int C = 2 * T + 1;
    circle_fwd_.resize(C, n);
    circle_inv_.resize(n, C);
    for (int c = 0; c < C; ++c) {
      const long long k = c - T;
      for (long long j = 0; j < n; ++j) {
        circle_fwd_(c, j) = unit_root(-k * j, n) / static_cast<double>(n);
        circle_inv_(j, c) = unit_root(k * j, n);
      }
    }
  } else if (factor.kind == GroupKind::SU2) {
    if (T > kMaxTwoEll) throw std::invalid_argument("two_ell_max exceeds " + std::to_string(kMaxTwoEll));
    const int Nn = 2 * T + 1;
    const long long nphi = grid_.n_phi(), npsi = grid_.n_psi();
    phi_fwd_.resize(Nn, nphi);
    phi_inv_.resize(nphi, Nn);
    for (int ni = 0; ni < Nn; ++ni) {
      const long long two_n = ni - T;
      for (long long a = 0; a < nphi; ++a) {
        // e^{i n phi_a} = e^{i 2pi (two_n a) / (2 nphi)}
        phi_fwd_(ni, a) = unit_root(-two_n * a, 2 * nphi) / static_cast<double>(nphi);
        phi_inv_(a, ni) = unit_root(two_n * a, 2 * nphi);
      }
    }
    for (int par = 0; par < 2; ++par) {
      const int first = ((T - par) % 2 == 0) ? -T : -T + 1;
      const int count = first > T ? 0 : (T - first) / 2 + 1;
      psi_fwd_[par].resize(count, npsi);
      psi_inv_[par].resize(npsi, count);
      for (int mi = 0; mi < count; ++mi) {
        const long long two_m = first + 2 * mi;
        for (long long p = 0; p < npsi; ++p) {
          // e^{i m psi_p} with psi_p = 4 pi p / npsi
          psi_fwd_[par](mi, p) = unit_root(-two_m * p, npsi) / static_cast<double>(npsi);
          psi_inv_[par](p, mi) = unit_root(two_m * p, npsi);
        }
      }
    }
    const int nt = grid_.n_theta();
    dtab_.resize(T + 1);
    for (int J = 0; J <= T; ++J) {
      const int d = J + 1;
      auto& tab = dtab_[J];
      tab.resize(static_cast<std::size_t>(d) * d * nt);
      for (int j = 0; j < nt; ++j) {
        Eigen::MatrixXd dm = wigner_d_matrix(J, grid_.theta(j));
        for (int r = 0; r < d; ++r)
          for (int c = 0; c < d; ++c) tab[(static_cast<std::size_t>(r) * d + c) * nt + j] = dm(r, c);
      }
    }
  }
}

std::size_t FactorPlan::parity_index(int two_m) const {
  const int T = layout_.factor().trunc;
  const int par = ((two_m % 2) + 2) % 2;
  const int first = ((T - par) % 2 == 0) ? -T : -T + 1;
  return static_cast<std::size_t>((two_m - first) / 2);
}

void FactorPlan::require_analysis() const {
  if (synthesis_only_) throw std::logic_error("forward transform requested from a synthesis-only plan");
}

void FactorPlan::forward(const cplx* in, std::size_t batch, cplx* out) const {
  require_analysis();
  switch (grid_.kind()) {
    case GroupKind::Trivial: std::copy(in, in + batch, out); return;
    case GroupKind::Circle: {
      ConstMap f(in, grid_.n_points(), static_cast<Eigen::Index>(batch));
      Map c(out, circle_fwd_.rows(), static_cast<Eigen::Index>(batch));
      c.noalias() = circle_fwd_ * f;
      return;
    }
    case GroupKind::SU2: su2_forward(in, batch, out); return;
  }
}

void FactorPlan::inverse(const cplx* in, std::size_t batch, cplx* out) const {
  switch (grid_.kind()) {
    case GroupKind::Trivial: std::copy(in, in + batch, out); return;
    case GroupKind::Circle: {
      ConstMap c(in, circle_inv_.cols(), static_cast<Eigen::Index>(batch));
      Map f(out, grid_.n_points(), static_cast<Eigen::Index>(batch));
      f.noalias() = circle_inv_ * c;
      return;
    }
    case GroupKind::SU2: su2_inverse(in, batch, out); return;
  }
}

void FactorPlan::su2_forward(const cplx* in, std::size_t batch, cplx* out) const {
  const int T = layout_.factor().trunc;
  const int Nn = 2 * T + 1;
  const Eigen::Index nphi = grid_.n_phi(), nt = grid_.n_theta(), npsi = grid_.n_psi();
  const Eigen::Index B = static_cast<Eigen::Index>(batch);

  // phi stage: F[n][(j, p, b)]
  RowMatrixXcd F = phi_fwd_ * ConstMap(in, nphi, nt * npsi * B);

  // psi stage: E[n][j][m (same parity as n)][b]
  const Eigen::Index rows_max = std::max(psi_fwd_[0].rows(), psi_fwd_[1].rows());
  std::vector<cplx> E(static_cast<std::size_t>(Nn) * nt * rows_max * B);
#pragma omp parallel for schedule(static)
  for (int idx = 0; idx < Nn * static_cast<int>(nt); ++idx) {
    const int ni = idx / static_cast<int>(nt), j = idx % static_cast<int>(nt);
    const int par = ((ni - T) % 2 + 2) % 2;
    const auto& tw = psi_fwd_[par];
    ConstMap slice(F.data() + (static_cast<Eigen::Index>(ni) * nt + j) * npsi * B, npsi, B);
    Map dst(E.data() + (static_cast<Eigen::Index>(ni) * nt + j) * rows_max * B, tw.rows(), B);
    dst.noalias() = tw * slice;
  }

  // theta stage
#pragma omp parallel for schedule(dynamic)
  for (int J = 0; J <= T; ++J) {
    const int d = J + 1;
    const std::size_t off = layout_.offset(static_cast<std::size_t>(J));
    const auto& tab = dtab_[J];
    for (int mi = 0; mi < d; ++mi) {
      const int two_m = 2 * mi - J;
      const std::size_t pm = parity_index(two_m);
      for (int nl = 0; nl < d; ++nl) {
        const int two_n = 2 * nl - J;
        const int ni = two_n + T;
        const cplx phase = i_power((two_n - two_m) / 2);
        cplx* dst = out + (off + static_cast<std::size_t>(mi) * d + nl) * batch;
        std::fill(dst, dst + batch, cplx(0.0));
        for (Eigen::Index j = 0; j < nt; ++j) {
          const double wd = grid_.theta_weight(static_cast<int>(j)) *
                            tab[(static_cast<std::size_t>(nl) * d + mi) * nt + j];
          const cplx* src = E.data() + ((static_cast<Eigen::Index>(ni) * nt + j) * rows_max + pm) * B;
          for (Eigen::Index b = 0; b < B; ++b) dst[b] += wd * src[b];
        }
        for (Eigen::Index b = 0; b < B; ++b) dst[b] *= phase;
      }
    }
  }
}

void FactorPlan::su2_inverse(const cplx* in, std::size_t batch, cplx* out) const {
  const int T = layout_.factor().trunc;
  const int Nn = 2 * T + 1;
  const Eigen::Index nphi = grid_.n_phi(), nt = grid_.n_theta(), npsi = grid_.n_psi();
  const Eigen::Index B = static_cast<Eigen::Index>(batch);
  const Eigen::Index rows_max = std::max(psi_inv_[0].cols(), psi_inv_[1].cols());

  // theta stage: G[n][j][m][b] = (-i)^{n-m} sum_l d_l c(l)_{mn} d^l_{nm}(theta_j)
  std::vector<cplx> G(static_cast<std::size_t>(Nn) * nt * rows_max * B, cplx(0.0));
#pragma omp parallel for schedule(dynamic)
  for (int ni = 0; ni < Nn; ++ni) {
    const int two_n = ni - T;
    for (int J = std::abs(two_n); J <= T; J += 2) {
      const int d = J + 1;
      const int nl = (two_n + J) / 2;
      const std::size_t off = layout_.offset(static_cast<std::size_t>(J));
      const auto& tab = dtab_[J];
      for (int mi = 0; mi < d; ++mi) {
        const int two_m = 2 * mi - J;
        const std::size_t pm = parity_index(two_m);
        const cplx scale = static_cast<double>(d) * i_power(-(two_n - two_m) / 2);
        const cplx* src = in + (off + static_cast<std::size_t>(mi) * d + nl) * batch;
        for (Eigen::Index j = 0; j < nt; ++j) {
          const cplx s = scale * tab[(static_cast<std::size_t>(nl) * d + mi) * nt + j];
          cplx* dst = G.data() + ((static_cast<Eigen::Index>(ni) * nt + j) * rows_max + pm) * B;
          for (Eigen::Index b = 0; b < B; ++b) dst[b] += s * src[b];
        }
      }
    }
  }

  // psi stage: H[n][(j, p, b)]
  RowMatrixXcd H(Nn, nt * npsi * B);
#pragma omp parallel for schedule(static)
  for (int idx = 0; idx < Nn * static_cast<int>(nt); ++idx) {
    const int ni = idx / static_cast<int>(nt), j = idx % static_cast<int>(nt);
    const int par = ((ni - T) % 2 + 2) % 2;
    const auto& tw = psi_inv_[par];
    ConstMap src(G.data() + (static_cast<Eigen::Index>(ni) * nt + j) * rows_max * B, tw.cols(), B);
    Map dst(H.data() + (static_cast<Eigen::Index>(ni) * nt + j) * npsi * B, npsi, B);
    dst.noalias() = tw * src;
  }

  // phi stage
  Map f(out, nphi, nt * npsi * B);
  f.noalias() = phi_inv_ * H;
}

void FactorPlan::forward_reference(const cplx* in, std::size_t batch, cplx* out) const {
  require_analysis();
  const std::size_t n = grid_.size();
  std::fill(out, out + layout_.size() * batch, cplx(0.0));
  switch (grid_.kind()) {
    case GroupKind::Trivial: std::copy(in, in + batch, out); return;
    case GroupKind::Circle:
      for (std::size_t c = 0; c < layout_.rep_count(); ++c) {
        const double k = static_cast<double>(layout_.rep(c));
        for (std::size_t j = 0; j < n; ++j) {
          const cplx e = std::polar(grid_.weight(j), -k * grid_.circle_node(j));
          for (std::size_t b = 0; b < batch; ++b) out[c * batch + b] += e * in[j * batch + b];
        }
      }
      return;
    case GroupKind::SU2:
      for (std::size_t node = 0; node < n; ++node) {
        const EulerAngles x = grid_.su2_node(node);
        const double w = grid_.weight(node);
        for (std::size_t r = 0; r < layout_.rep_count(); ++r) {
          const int J = static_cast<int>(layout_.rep(r));
          const int d = J + 1;
          const Eigen::MatrixXcd t = rep_matrix(J, x);
          for (int mi = 0; mi < d; ++mi)
            for (int nl = 0; nl < d; ++nl) {
              const cplx e = w * std::conj(t(nl, mi));
              cplx* dst = out + (layout_.offset(r) + static_cast<std::size_t>(mi) * d + nl) * batch;
              for (std::size_t b = 0; b < batch; ++b) dst[b] += e * in[node * batch + b];
            }
        }
      }
      return;
  }
}

void FactorPlan::inverse_reference(const cplx* in, std::size_t batch, cplx* out) const {
  const std::size_t n = grid_.size();
  std::fill(out, out + n * batch, cplx(0.0));
  switch (grid_.kind()) {
    case GroupKind::Trivial: std::copy(in, in + batch, out); return;
    case GroupKind::Circle:
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t c = 0; c < layout_.rep_count(); ++c) {
          const cplx e = std::polar(1.0, static_cast<double>(layout_.rep(c)) * grid_.circle_node(j));
          for (std::size_t b = 0; b < batch; ++b) out[j * batch + b] += e * in[c * batch + b];
        }
      return;
    case GroupKind::SU2:
      for (std::size_t node = 0; node < n; ++node) {
        const EulerAngles x = grid_.su2_node(node);
        for (std::size_t r = 0; r < layout_.rep_count(); ++r) {
          const int J = static_cast<int>(layout_.rep(r));
          const int d = J + 1;
          const Eigen::MatrixXcd t = rep_matrix(J, x);
          for (int mi = 0; mi < d; ++mi)
            for (int nl = 0; nl < d; ++nl) {
              const cplx e = static_cast<double>(d) * t(nl, mi);
              const cplx* src = in + (layout_.offset(r) + static_cast<std::size_t>(mi) * d + nl) * batch;
              for (std::size_t b = 0; b < batch; ++b) out[node * batch + b] += e * src[b];
            }
        }
      }
      return;
  }
}

}  // namespace lgh
