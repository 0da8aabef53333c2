#include "lgh/solver.hpp"

#include <cmath>

namespace lgh {
namespace {

template <class Fn>
void for_each_row(const OperatorSpec& spec, const FourierTable& t, Fn&& fn) {
  const SpecSymbol sym(spec);
  const ProductGroup& g = spec.group;
  for (const auto& [key, b] : t.blocks())
    for (int m = 0; m < b.d1; ++m)
      for (int r = 0; r < b.d2; ++r) {
        const Index l2 = twice_eigenvalue(g.factor1.kind, key.xi, m), m2 = twice_eigenvalue(g.factor2.kind, key.eta, r);
        fn(key, b, m, r, sym.zero(l2, m2));
      }
}

std::string describe(const AdmissibilityReport& r) {
  return "right-hand side is not admissible: " + std::to_string(r.offending.size()) +
         " entries on the singular set exceed the tolerance";
}

}  // namespace

NotAdmissible::NotAdmissible(AdmissibilityReport report)
    : std::invalid_argument(describe(report)), report_(std::move(report)) {}

AdmissibilityReport check_admissible(const FourierTable& f, const OperatorSpec& spec, double tol) {
  AdmissibilityReport rep;
  rep.tolerance = tol;
  rep.heuristic = !SpecSymbol(spec).exact();
  const double bound = tol * plancherel_norm(f);
  for_each_row(spec, f, [&](const RepPair& key, const Block& b, int m, int r, bool zero) {
    if (!zero) return;
    for (int n = 0; n < b.d1; ++n)
      for (int s = 0; s < b.d2; ++s) {
        const double v = std::abs(b.at(m, n, r, s));
        if (v > bound) rep.offending.push_back({key, m, n, r, s, v});
      }
  });
  rep.admissible = rep.offending.empty();
  return rep;
}

FourierTable project_admissible(const FourierTable& f, const OperatorSpec& spec) {
  FourierTable out = f;
  for_each_row(spec, f, [&](const RepPair& key, const Block& b, int m, int r, bool zero) {
    if (!zero) return;
    Block& dst = out.block(key);
    for (int n = 0; n < b.d1; ++n)
      for (int s = 0; s < b.d2; ++s) dst.at(m, n, r, s) = 0.0;
  });
  return out;
}

FourierTable solve_constant(const OperatorSpec& spec, const FourierTable& f, double tol) {
  if (!spec.constant_coefficients()) throw std::invalid_argument("solve_constant needs constant coefficients");
  const AdmissibilityReport rep = check_admissible(f, spec, tol);
  if (!rep.admissible) throw NotAdmissible(rep);
  const SpecSymbol sym(spec);
  const ProductGroup& g = spec.group;
  FourierTable u = f;
  std::vector<std::pair<RepPair, Block*>> blocks;
  for (auto& [key, b] : u.blocks()) blocks.emplace_back(key, &b);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const RepPair key = blocks[i].first;
    Block& b = *blocks[i].second;
    for (int m = 0; m < b.d1; ++m)
      for (int r = 0; r < b.d2; ++r) {
        const Index l2 = twice_eigenvalue(g.factor1.kind, key.xi, m), m2 = twice_eigenvalue(g.factor2.kind, key.eta, r);
        const bool zero = sym.zero(l2, m2);
        const cplx inv = zero ? cplx(0.0) : 1.0 / sym.value(l2, m2);
        for (int n = 0; n < b.d1; ++n)
          for (int s = 0; s < b.d2; ++s) b.at(m, n, r, s) = zero ? cplx(0.0) : b.at(m, n, r, s) * inv;
      }
  }
  return u;
}

double residual(const OperatorSpec& spec, const FourierTable& u, const FourierTable& f) {
  return plancherel_norm(apply_operator_spectral(spec, u) - f);
}

DecayFit smoothness_of_solution(const OperatorSpec& spec, const FourierTable& f) {
  return decay_classify(solve_constant(spec, f));
}

}  // namespace lgh
