#include "lgh/symbols.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

namespace lgh {
namespace {

namespace mp = boost::multiprecision;

constexpr long long kTranscendentalMarker = 2147483647;

std::string trim_copy(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool conj_equal(const ScalarConstant& x, const ScalarConstant& y) {
  if (x.is_exact() && y.is_exact()) return x.re == y.re && x.im == -y.im;
  return std::abs(x.value() - std::conj(y.value())) <= 1e-14 * (1 + std::abs(x.value()));
}

Index big_to_index(const BigInt& v) { return parse_index(v.str()); }

}  // namespace

cplx TrigPoly::coefficient(int k) const {
  const int K = degree();
  return std::abs(k) > K ? cplx(0.0) : coeffs[k + K].value();
}

cplx TrigPoly::operator()(double t) const {
  const int K = degree();
  cplx s = 0;
  for (int k = -K; k <= K; ++k) s += coeffs[k + K].value() * std::polar(1.0, k * t);
  return s;
}

bool TrigPoly::is_real() const {
  const int K = degree();
  for (int k = 0; k <= K; ++k)
    if (!conj_equal(coeffs[K + k], coeffs[K - k])) return false;
  return true;
}

bool TrigPoly::is_constant() const {
  const int K = degree();
  for (int k = -K; k <= K; ++k)
    if (k != 0 && !coeffs[k + K].is_zero() && coeffs[k + K].value() != cplx(0.0)) return false;
  return true;
}

std::string TrigPoly::to_string() const {
  std::string out = "trigpoly:[";
  for (std::size_t i = 0; i < coeffs.size(); ++i) out += (i ? ", " : "") + coeffs[i].to_string();
  return out + "]";
}

TrigPoly parse_trigpoly(std::string_view text) {
  std::string t = trim_copy(text);
  const std::string prefix = "trigpoly:";
  if (t.rfind(prefix, 0) != 0) throw std::invalid_argument("expected trigpoly:[...], got '" + t + "'");
  t = trim_copy(std::string_view(t).substr(prefix.size()));
  if (t.size() < 2 || t.front() != '[' || t.back() != ']')
    throw std::invalid_argument("trigpoly coefficients must be enclosed in brackets");
  t = t.substr(1, t.size() - 2);
  TrigPoly p;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= t.size(); ++i) {
    if (i < t.size() && t[i] == '(') ++depth;
    if (i < t.size() && t[i] == ')') --depth;
    if (i == t.size() || (t[i] == ',' && depth == 0)) {
      const std::string item = trim_copy(std::string_view(t).substr(start, i - start));
      if (!item.empty()) p.coeffs.push_back(parse_scalar(item));
      start = i + 1;
    }
  }
  if (p.coeffs.size() % 2 == 0)
    throw std::invalid_argument("trigpoly needs an odd number of coefficients (k = -K..K)");
  return p;
}

FieldFunction FieldFunction::analytic(Fn fn, std::string label) {
  FieldFunction f;
  f.fn_ = std::move(fn);
  f.label_ = std::move(label);
  return f;
}

FieldFunction FieldFunction::band_limited(FourierTable table, std::string label) {
  FieldFunction f;
  f.table_ = std::move(table);
  f.label_ = std::move(label);
  return f;
}

FieldFunction FieldFunction::from_samples(const GridFunction& f, const ProductGroup& kinds, std::string label) {
  auto trunc = [](const FactorGrid& g) { return g.kind() == GroupKind::Trivial ? 0 : g.band() / 2; };
  const ProductGroup group{{kinds.factor1.kind, trunc(f.grid.grid1)}, {kinds.factor2.kind, trunc(f.grid.grid2)}};
  if (f.grid.grid1.kind() != group.factor1.kind || f.grid.grid2.kind() != group.factor2.kind)
    throw std::invalid_argument("grid kinds do not match the operator factors");
  return band_limited(double_forward(f, group), std::move(label));
}

GridFunction FieldFunction::sample(const ProductGrid& grid) const {
  if (table_) return synthesize(*table_, grid);
  if (!fn_) return GridFunction::zeros(grid);
  return GridFunction::sample(grid, fn_);
}

cplx FieldFunction::mean(const ProductGroup& group) const {
  if (table_) return table_->entry({0, 0}, 0, 0, 0, 0);
  const GridFunction g = sample(default_grid(group));
  cplx s = 0;
  for (std::size_t i = 0; i < g.grid.grid1.size(); ++i)
    for (std::size_t j = 0; j < g.grid.grid2.size(); ++j) s += g.grid.weight(i, j) * g.at(i, j);
  return s;
}

ScalarConstant OperatorSpec::a0() const { return a_var ? a_var->mean() : a; }

ScalarConstant OperatorSpec::q0_value() const {
  if (q0) return *q0;
  if (!q_func) return q;
  const cplx m = q_func->mean(group);
  ScalarConstant c = ScalarConstant::floating(m.real());
  c.float_im = m.imag();
  return c;
}

OperatorSpec OperatorSpec::normal_form() const {
  OperatorSpec s;
  s.group = group;
  s.a = a0();
  s.q = q0_value();
  return s;
}

void OperatorSpec::validate() const {
  for (const Factor& f : {group.factor1, group.factor2}) {
    if (f.trunc < 0) throw std::invalid_argument("negative truncation");
    if (f.kind == GroupKind::Trivial && f.trunc != 0) throw std::invalid_argument("trivial factor must have truncation 0");
    if (f.kind == GroupKind::SU2 && f.trunc > kMaxTwoEll)
      throw std::invalid_argument("SU(2) truncation exceeds " + std::to_string(kMaxTwoEll));
  }
  if (a_var) {
    if (group.factor1.kind != GroupKind::Circle)
      throw std::invalid_argument("variable coefficient a(x1) requires the first factor to be T1");
    if (!a_var->is_real()) throw std::invalid_argument("variable coefficient a(t) must be real-valued");
  }
  if (A) {
    if (!a_var) throw std::invalid_argument("antiderivative A given without a variable coefficient");
    const int K = std::max(A->degree(), a_var->degree());
    for (int k = -K; k <= K; ++k) {
      const cplx lhs = cplx(0, k) * A->coefficient(k), rhs = k == 0 ? cplx(0.0) : a_var->coefficient(k);
      if (std::abs(lhs - rhs) > 1e-10)
        throw std::invalid_argument("A does not satisfy dA/dt = a - a0 at frequency " + std::to_string(k));
    }
  }
}

void for_each_slot(const ProductGroup& group, const std::function<void(const SymbolSlot&)>& fn) {
  const BlockLayout l1(group.factor1), l2(group.factor2);
  SymbolSlot s;
  for (std::size_t i = 0; i < l1.rep_count(); ++i)
    for (std::size_t k = 0; k < l2.rep_count(); ++k) {
      s.reps = {l1.rep(i), l2.rep(k)};
      for (int m = 0; m < l1.dim(i); ++m)
        for (int r = 0; r < l2.dim(k); ++r) {
          s.m = m;
          s.r = r;
          s.lambda2 = twice_eigenvalue(group.factor1.kind, s.reps.xi, m);
          s.mu2 = twice_eigenvalue(group.factor2.kind, s.reps.eta, r);
          fn(s);
        }
    }
}

ScalarConstant zero_test_coefficient(const ScalarConstant& a) {
  if (a.kind != ScalarKind::Liouville) return a;
  return ScalarConstant::exact(SurdSum::root(kTranscendentalMarker), SurdSum());
}

SpecSymbol::SpecSymbol(const OperatorSpec& spec)
    : form_(spec.a, spec.q), zero_form_(zero_test_coefficient(spec.a), spec.q), a_(spec.a.value()), q_(spec.q.value()) {
  if (!spec.constant_coefficients()) throw std::invalid_argument("symbol requested for a variable-coefficient operator");
}

cplx SpecSymbol::value(Index lambda2, Index mu2) const { return cplx(0, 1) * form_.value(lambda2, mu2); }

bool SpecSymbol::is_zero(Index lambda2, Index mu2) const { return zero_form_.is_zero(lambda2, mu2); }

bool SpecSymbol::is_numerically_zero(Index lambda2, Index mu2, double tol) const {
  const double lam = static_cast<double>(lambda2) / 2, mu = static_cast<double>(mu2) / 2;
  const double scale = 1 + std::abs(lam) + std::abs(a_ * mu) + std::abs(q_);
  return std::abs(form_.value(lambda2, mu2)) <= tol * scale;
}

cplx full_symbol(const OperatorSpec& spec, Index xi, int m, Index eta, int r) {
  const SpecSymbol sym(spec);
  return sym.value(twice_eigenvalue(spec.group.factor1.kind, xi, m), twice_eigenvalue(spec.group.factor2.kind, eta, r));
}

std::string_view finiteness_label(Finiteness f) {
  switch (f) {
    case Finiteness::FiniteCertified: return "finite-certified";
    case Finiteness::FiniteWithinTruncation: return "finite-within-truncation";
    case Finiteness::InfinitePattern: return "infinite-pattern-detected";
  }
  return "?";
}

ZeroStructure analyze_zero_structure(const OperatorSpec& spec) {
  ZeroStructure z;
  const ScalarConstant a = spec.a0(), q = spec.q0_value();
  if (!a.is_exact() || !q.is_exact()) {
    z.kind = ZeroStructure::Kind::Unknown;
    z.finiteness = Finiteness::FiniteWithinTruncation;
    z.reason = "float coefficients: zero structure not decidable";
    return z;
  }
  const auto rows = SymbolForm(zero_test_coefficient(a), q).zero_equations();
  const int s1 = eigen_lattice_step(spec.group.factor1.kind), s2 = eigen_lattice_step(spec.group.factor2.kind);
  const int nontrivial = (s1 != 0) + (s2 != 0);
  const bool su2 = spec.group.factor1.kind == GroupKind::SU2 || spec.group.factor2.kind == GroupKind::SU2;

  auto in_lattice = [](const BigInt& v, int step) { return step == 0 ? v == 0 : v % step == 0; };
  auto satisfies = [&rows](const BigInt& l, const BigInt& m) {
    for (const auto& row : rows)
      if (row[0] * l + row[1] * m + row[2] != 0) return false;
    return true;
  };

  const std::array<BigInt, 3>* r0 = nullptr;
  for (const auto& row : rows)
    if (row[0] != 0 || row[1] != 0) {
      r0 = &row;
      break;
    }
  const std::array<BigInt, 3>* r1 = nullptr;
  if (r0)
    for (const auto& row : rows)
      if ((*r0)[0] * row[1] - (*r0)[1] * row[0] != 0) {
        r1 = &row;
        break;
      }

  if (!r0) {
    const bool consistent = std::all_of(rows.begin(), rows.end(), [](const auto& row) { return row[2] == 0; });
    if (!consistent) {
      z.kind = ZeroStructure::Kind::Empty;
    } else if (nontrivial == 0) {
      z.kind = ZeroStructure::Kind::Finite;
      z.points.push_back({0, 0});
    } else {
      z.kind = ZeroStructure::Kind::Everything;
    }
  } else if (r1) {
    const BigInt det = (*r0)[0] * (*r1)[1] - (*r1)[0] * (*r0)[1];
    const BigInt ln = (*r0)[1] * (*r1)[2] - (*r1)[1] * (*r0)[2];
    const BigInt mn = (*r1)[0] * (*r0)[2] - (*r0)[0] * (*r1)[2];
    if (ln % det != 0 || mn % det != 0) {
      z.kind = ZeroStructure::Kind::Empty;
    } else {
      const BigInt l = ln / det, m = mn / det;
      if (in_lattice(l, s1) && in_lattice(m, s2) && satisfies(l, m)) {
        z.kind = ZeroStructure::Kind::Finite;
        z.points.push_back({big_to_index(l), big_to_index(m)});
      } else {
        z.kind = ZeroStructure::Kind::Empty;
      }
    }
  } else {
    const BigInt &a0 = (*r0)[0], &b0 = (*r0)[1], &c0 = (*r0)[2];
    bool consistent = true;
    for (const auto& row : rows)
      if (row[0] * c0 - a0 * row[2] != 0 || row[1] * c0 - b0 * row[2] != 0) consistent = false;
    const BigInt A = a0 * s1, B = b0 * s2;
    if (!consistent) {
      z.kind = ZeroStructure::Kind::Empty;
    } else if (A == 0 && B == 0) {
      if (c0 != 0)
        z.kind = ZeroStructure::Kind::Empty;
      else if (nontrivial == 0) {
        z.kind = ZeroStructure::Kind::Finite;
        z.points.push_back({0, 0});
      } else {
        z.kind = ZeroStructure::Kind::Line;
      }
    } else {
      const BigInt g = mp::gcd(mp::abs(A), mp::abs(B));
      if (c0 % g != 0) {
        z.kind = ZeroStructure::Kind::Empty;
      } else if (nontrivial >= 2) {
        z.kind = ZeroStructure::Kind::Line;
      } else {
        z.kind = ZeroStructure::Kind::Finite;
        const BigInt l = A != 0 ? BigInt(-c0 / A * s1) : BigInt(0);
        const BigInt m = B != 0 ? BigInt(-c0 / B * s2) : BigInt(0);
        z.points.push_back({big_to_index(l), big_to_index(m)});
      }
    }
  }

  switch (z.kind) {
    case ZeroStructure::Kind::Empty:
      z.finiteness = Finiteness::FiniteCertified;
      z.reason = "no eigenvalue pair solves the symbol equation";
      break;
    case ZeroStructure::Kind::Finite: {
      const auto& [l, m] = z.points.front();
      const std::string pt = "(" + index_to_string(l) + "/2, " + index_to_string(m) + "/2)";
      if (su2) {
        z.finiteness = Finiteness::InfinitePattern;
        z.reason = "unique eigenvalue solution " + pt + " recurs in every SU(2) representation of matching parity";
      } else {
        z.finiteness = Finiteness::FiniteCertified;
        z.reason = "unique eigenvalue solution " + pt;
      }
      break;
    }
    case ZeroStructure::Kind::Line:
      z.finiteness = Finiteness::InfinitePattern;
      z.reason = "eigenvalue solutions fill a lattice line";
      break;
    case ZeroStructure::Kind::Everything:
      z.finiteness = Finiteness::InfinitePattern;
      z.reason = "symbol vanishes identically";
      break;
    case ZeroStructure::Kind::Unknown: break;
  }
  return z;
}

SingularSet enumerate_singular_set(const OperatorSpec& spec) {
  if (!spec.constant_coefficients())
    throw std::invalid_argument("singular set requested for a variable-coefficient operator; use its normal form");
  const SpecSymbol sym(spec);
  SingularSet out;
  out.heuristic = !sym.exact();
  for_each_slot(spec.group, [&](const SymbolSlot& s) {
    if (sym.zero(s.lambda2, s.mu2)) out.entries.push_back({s.reps, s.m, s.r, s.lambda2, s.mu2});
  });
  const ZeroStructure z = analyze_zero_structure(spec);
  if (z.kind == ZeroStructure::Kind::Unknown) {
    const bool su2 = spec.group.factor1.kind == GroupKind::SU2 || spec.group.factor2.kind == GroupKind::SU2;
    out.finiteness = su2 && !out.entries.empty() ? Finiteness::InfinitePattern : Finiteness::FiniteWithinTruncation;
    out.reason = su2 && !out.entries.empty() ? "numerical zeros recur across SU(2) representations" : z.reason;
  } else {
    out.finiteness = z.finiteness;
    out.reason = z.reason;
  }
  return out;
}

FourierTable apply_operator_spectral(const OperatorSpec& spec, const FourierTable& u) {
  const SpecSymbol sym(spec);
  const ProductGroup& g = u.group();
  FourierTable out(g);
  for (const auto& [key, b] : u.blocks()) {
    Block& dst = out.block(key);
    for (int m = 0; m < b.d1; ++m)
      for (int r = 0; r < b.d2; ++r) {
        const Index l2 = twice_eigenvalue(g.factor1.kind, key.xi, m), m2 = twice_eigenvalue(g.factor2.kind, key.eta, r);
        const bool zero = sym.exact() && sym.is_zero(l2, m2);
        const cplx s = zero ? cplx(0.0) : sym.value(l2, m2);
        for (int n = 0; n < b.d1; ++n)
          for (int c = 0; c < b.d2; ++c) dst.at(m, n, r, c) = zero ? cplx(0.0) : s * b.at(m, n, r, c);
      }
  }
  return out;
}

}  // namespace lgh
