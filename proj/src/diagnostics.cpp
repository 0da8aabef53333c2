#include "lgh/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "lgh/fit.hpp"

namespace lgh {
namespace {

namespace mp = boost::multiprecision;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

bool is_zero(const SurdSum& s) { return s.is_zero(); }

// Smallest nonzero |g n + c| over integers n, and the n with g n + c = 0 when one exists.
struct LineMin {
  std::optional<BigFloat> min;
  std::optional<BigInt> zero_at;
};

LineMin line_min(const SurdSum& g, const SurdSum& c) {
  LineMin out;
  const BigFloat n0 = -c.approx() / g.approx();
  const BigInt base = BigInt(mp::floor(n0).convert_to<BigInt>());
  for (int d = -1; d <= 2; ++d) {
    const BigInt n = base + d;
    const SurdSum v = g * BigRational(n) + c;
    if (v.is_zero()) {
      out.zero_at = n;
      continue;
    }
    const BigFloat mag = mp::abs(v.approx());
    if (!out.min || mag < *out.min) out.min = mag;
  }
  return out;
}

BigRational rational_gcd(const BigRational& x, const BigRational& y) {
  const BigInt nx = mp::numerator(x), dx = mp::denominator(x), ny = mp::numerator(y), dy = mp::denominator(y);
  return BigRational(mp::gcd(mp::abs(nx * dy), mp::abs(ny * dx)), dx * dy);
}

double log_of(const BigInt& v) {
  return static_cast<double>(mp::log(BigFloat(mp::abs(v))).convert_to<long double>());
}

double log_of(const BigRational& v) {
  return log_of(BigInt(mp::numerator(v))) - log_of(BigInt(mp::denominator(v)));
}

// log(<xi> + <eta>) for doubled eigenvalues, exact weights where they fit in double range.
double log_shell_of(GroupKind k1, const BigInt& lam, GroupKind k2, const BigInt& mu) {
  auto weight_log = [](GroupKind kind, const BigInt& v) -> BigFloat {
    const BigFloat x = BigFloat(mp::abs(v));
    if (kind == GroupKind::Trivial) return 1;
    if (kind == GroupKind::Circle) return mp::sqrt(1 + x * x);
    return mp::sqrt(1 + x * (x + 1));
  };
  return static_cast<double>(mp::log(weight_log(k1, lam) + weight_log(k2, mu)).convert_to<long double>());
}

GapFloor no_floor(std::string why) {
  GapFloor f;
  f.lemma = std::move(why);
  return f;
}

GapFloor constant_floor(const BigFloat& value, std::string lemma) {
  GapFloor f;
  f.certified = true;
  f.C = value.convert_to<double>();
  f.M = 0.0;
  f.lemma = std::move(lemma);
  return f;
}

}  // namespace

std::string_view verdict_label(Verdict v) {
  switch (v) {
    case Verdict::YesCertified: return "yes-certified";
    case Verdict::YesEvidence: return "yes-evidence";
    case Verdict::NoCertified: return "no-certified";
    case Verdict::NoEvidence: return "no-evidence";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

bool is_yes(Verdict v) { return v == Verdict::YesCertified || v == Verdict::YesEvidence; }
bool is_certified(Verdict v) { return v == Verdict::YesCertified || v == Verdict::NoCertified; }

std::vector<LiouvilleWitness> liouville_witnesses(const OperatorSpec& spec) {
  std::vector<LiouvilleWitness> out;
  const ScalarConstant a = spec.a0(), q = spec.q0_value();
  if (a.kind != ScalarKind::Liouville || !q.is_exact() || !q.is_zero()) return out;
  if (eigen_lattice_step(spec.group.factor1.kind) == 0 || eigen_lattice_step(spec.group.factor2.kind) == 0) return out;
  const BigRational value = a.re.rational();
  const auto conv = liouville_convergents(a.depth);
  for (int j = 1; j < a.depth; ++j) {
    LiouvilleWitness w;
    w.j = j;
    w.k = -conv[j - 1].first;
    w.l = conv[j - 1].second;
    w.gap = mp::abs(BigRational(w.k) + value * w.l);
    w.log_gap = log_of(w.gap);
    w.log_shell = log_shell_of(spec.group.factor1.kind, w.k, spec.group.factor2.kind, w.l);
    w.shell = std::exp(w.log_shell);
    w.exponent = -w.log_gap / log_of(BigInt(mp::abs(w.k) + mp::abs(w.l)));
    out.push_back(w);
  }
  return out;
}

bool liouville_violation(const OperatorSpec& spec) {
  const auto w = liouville_witnesses(spec);
  return w.size() >= 2 && w.back().exponent > w.front().exponent;
}

ShellGapProfile shell_profile(const OperatorSpec& spec) {
  const OperatorSpec op = spec.constant_coefficients() ? spec : spec.normal_form();
  const SpecSymbol sym(op);
  ShellGapProfile profile;
  profile.certified = sym.exact();
  const double edge = last_complete_shell(op.group);
  std::map<std::pair<Index, Index>, GapValue> cache;
  std::map<double, ShellMinimum> minima;
  for_each_slot(op.group, [&](const SymbolSlot& s) {
    const double shell = shell_of(op.group.factor1.kind, s.reps.xi, op.group.factor2.kind, s.reps.eta);
    if (shell > edge || sym.zero(s.lambda2, s.mu2)) return;
    auto it = cache.find({s.lambda2, s.mu2});
    if (it == cache.end()) it = cache.emplace(std::make_pair(s.lambda2, s.mu2), sym.gap(s.lambda2, s.mu2)).first;
    const GapValue& g = it->second;
    if (g.exact_zero || g.magnitude == 0.0) return;
    auto [m, inserted] = minima.try_emplace(shell);
    if (inserted || g.log_magnitude < m->second.log_gap) {
      m->second = {shell, g.magnitude, g.log_magnitude, s.lambda2, s.mu2, s.reps, g.certified, false};
    }
  });
  for (const auto& [s, m] : minima) profile.shells.push_back(m);
  const double last = profile.shells.empty() ? 0.0 : profile.shells.back().shell;
  for (const LiouvilleWitness& w : liouville_witnesses(op)) {
    if (w.shell <= last + 0.5) continue;
    ShellMinimum m;
    m.shell = w.shell;
    m.log_gap = w.log_gap;
    m.gap = std::exp(w.log_gap);
    m.certified = true;
    m.witness = true;
    const BigInt l2 = 2 * w.k, m2 = 2 * w.l;
    if (mp::abs(m2) < BigInt("1000000000000000000000000000000000")) {
      m.lambda2 = parse_index(l2.str());
      m.mu2 = parse_index(m2.str());
    }
    profile.shells.push_back(m);
  }
  return profile;
}

DiophantineFit fit_diophantine(const ShellGapProfile& profile, double m_max) {
  DiophantineFit fit;
  const auto& sh = profile.shells;
  if (sh.size() < 4) {
    fit.note = "fewer than 4 populated shells";
    return fit;
  }
  std::vector<double> x, y;
  double env = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> records;
  for (const ShellMinimum& m : sh) {
    const double lx = std::log(m.shell);
    if (m.log_gap < env) {
      env = m.log_gap;
      records.push_back({lx, env});
    }
    x.push_back(lx);
    y.push_back(env);
  }
  const LineFit line = fit_line(x, y);
  fit.ok = true;
  fit.M = -line.slope;
  fit.C = std::exp(line.intercept);
  fit.r2 = line.r2;
  fit.shells_used = sh.size();

  std::vector<double> slopes;
  for (std::size_t i = 1; i < records.size(); ++i)
    slopes.push_back((records[i].second - records[i - 1].second) / (records[i].first - records[i - 1].first));
  int run = 1;
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    if (slopes[i] < -m_max) {
      fit.no_polynomial_bound = true;
      fit.note = "envelope slope " + fmt(slopes[i]) + " below -" + fmt(m_max);
    }
    run = (i > 0 && slopes[i] <= slopes[i - 1] - 0.25) ? run + 1 : 1;
    if (run >= 3 && slopes[i] < -3.0 && !fit.no_polynomial_bound) {
      fit.no_polynomial_bound = true;
      fit.note = "envelope slopes steepen without bound (last " + fmt(slopes[i]) + ")";
    }
  }
  if (!fit.no_polynomial_bound) fit.note = "envelope fit over " + std::to_string(sh.size()) + " shells";
  return fit;
}

GapFloor certified_floor(const OperatorSpec& spec) {
  const OperatorSpec op = spec.constant_coefficients() ? spec : spec.normal_form();
  const ScalarConstant a = op.a, q = op.q;
  if (!a.is_exact() || !q.is_exact()) return no_floor("float coefficients admit no certified floor");
  const int s1 = eigen_lattice_step(op.group.factor1.kind), s2 = eigen_lattice_step(op.group.factor2.kind);
  const BigRational h1(s1, 2), h2(s2, 2);
  const SurdSum alpha = s2 == 0 ? SurdSum() : a.re, gamma = s2 == 0 ? SurdSum() : a.im;
  const SurdSum& qr = q.re;
  const SurdSum& qi = q.im;

  // Real part over the first lattice with mu fixed: min nonzero |h1 x + c|.
  auto first_line = [&](const SurdSum& c) -> std::optional<BigFloat> {
    if (s1 == 0) return c.is_zero() ? std::nullopt : std::optional<BigFloat>(mp::abs(c.approx()));
    return line_min(SurdSum(h1), c).min;
  };

  if (!is_zero(gamma)) {
    const LineMin im = line_min(gamma * h2, -qr);
    std::optional<BigFloat> best = im.min;
    if (im.zero_at) {
      const auto re = first_line(alpha * (h2 * BigRational(*im.zero_at)) + qi);
      if (re && (!best || *re < *best)) best = re;
    }
    return constant_floor(best.value_or(BigFloat(1)), "imaginary part of a bounds the symbol away from zero");
  }
  if (!is_zero(qr)) return constant_floor(mp::abs(qr.approx()), "real perturbation shifts the imaginary part");
  if (a.kind == ScalarKind::Liouville && s1 != 0 && s2 != 0) {
    if (liouville_violation(op)) return no_floor("Liouville convergents violate every polynomial floor");
    return no_floor("Liouville truncation too shallow to certify either way");
  }
  if (s1 == 0 && s2 == 0) {
    if (qi.is_zero()) return constant_floor(1, "symbol vanishes identically");
    return constant_floor(mp::abs(qi.approx()), "single symbol value");
  }
  if (s2 == 0 || alpha.is_zero()) {
    const auto m = first_line(qi);
    return constant_floor(m.value_or(BigFloat(1)), "one-dimensional eigenvalue lattice");
  }
  if (s1 == 0) {
    const auto m = line_min(alpha * h2, qi).min;
    return constant_floor(m.value_or(BigFloat(1)), "one-dimensional eigenvalue lattice");
  }
  if (alpha.is_rational()) {
    const BigRational g = rational_gcd(h1, alpha.rational() * h2);
    const auto m = line_min(SurdSum(g), qi).min;
    return constant_floor(m.value_or(BigFloat(g.convert_to<BigFloat>())),
                          "rational coefficient: symbol values lie on a shifted rational lattice");
  }
  if (alpha.surds().size() == 1) {
    const long long d = alpha.surds().begin()->first;
    bool compatible = true;
    for (const auto& [e, c] : qi.surds()) compatible = compatible && e == d;
    if (compatible) {
      // Re D = P + Q sqrt(d), P = A l2 + B m2 + C, Q = E m2 + H; |P^2 - d Q^2| >= 1.
      const BigRational half(1, 2);
      const BigRational A = half, B = alpha.rational() * half, C = qi.rational();
      const BigRational E = alpha.surds().begin()->second * half;
      const BigRational H = qi.surds().count(d) ? qi.surds().at(d) : BigRational(0);
      BigInt D = 1;
      for (const BigRational& r : {A, B, C, E, H}) D = mp::lcm(D, BigInt(mp::denominator(r)));
      auto scaled = [&D](const BigRational& r) { return BigFloat(mp::abs(BigInt(mp::numerator(r) * (D / mp::denominator(r))))); };
      const BigFloat rd = mp::sqrt(BigFloat(d));
      const BigFloat K = 2 * scaled(A) + 2 * (scaled(B) + scaled(E) * rd) + scaled(C) + scaled(H) * rd;
      GapFloor f;
      f.certified = true;
      f.C = (1 / (BigFloat(D) * K)).convert_to<double>();
      f.M = 1.0;
      f.lemma = "quadratic irrational: conjugate norm bound |N| >= 1";
      return f;
    }
  }
  return no_floor("coefficient outside the certified catalogue");
}

DiagnosticsReport diagnose(const OperatorSpec& spec) {
  DiagnosticsReport r;
  r.from_normal_form = !spec.constant_coefficients();
  r.analyzed = r.from_normal_form ? spec.normal_form() : spec;
  if (r.from_normal_form) r.notes.push_back("verdicts transported from the normal form L_{a0 q0}");
  r.singular = enumerate_singular_set(r.analyzed);
  r.profile = shell_profile(r.analyzed);
  r.fit = fit_diophantine(r.profile);
  r.floor = certified_floor(r.analyzed);
  r.witnesses = liouville_witnesses(r.analyzed);
  const bool violation = liouville_violation(r.analyzed);
  const bool infinite = r.singular.finiteness == Finiteness::InfinitePattern;
  const bool finite_certified = r.singular.finiteness == Finiteness::FiniteCertified;

  Verdict evidence = Verdict::Inconclusive;
  if (r.fit.ok) evidence = r.fit.no_polynomial_bound ? Verdict::NoEvidence : Verdict::YesEvidence;

  if (violation) {
    r.gs = Verdict::NoCertified;
    r.notes.push_back("GS: Liouville convergents violate every polynomial gap bound");
  } else if (r.floor.certified) {
    r.gs = Verdict::YesCertified;
    r.notes.push_back("GS: " + r.floor.lemma);
  } else {
    r.gs = evidence;
    r.notes.push_back("GS: " + r.fit.note);
  }

  if (infinite) {
    r.gh = Verdict::NoCertified;
    r.notes.push_back("GH: singular set infinite (" + r.singular.reason + ")");
  } else if (violation) {
    r.gh = Verdict::NoCertified;
    r.notes.push_back("GH: Liouville convergents violate every polynomial gap bound");
  } else if (finite_certified && r.floor.certified) {
    r.gh = Verdict::YesCertified;
    r.notes.push_back("GH: finite singular set and " + r.floor.lemma);
  } else if (is_yes(r.gs) && !finite_certified) {
    r.gh = r.singular.entries.size() <= 1 ? Verdict::YesEvidence : Verdict::Inconclusive;
    r.notes.push_back("GH: singular set finite within the truncation only");
  } else {
    r.gh = evidence;
    r.notes.push_back("GH: " + r.fit.note);
  }
  if (r.singular.heuristic) r.notes.push_back("float coefficients: zeros detected numerically");
  if (is_yes(r.gh) && !is_yes(r.gs)) r.gs = r.gh;
  r.gh_mod_kernel = r.gs;
  return r;
}

Verdict gh_verdict(const OperatorSpec& spec) { return diagnose(spec).gh; }
Verdict gs_verdict(const OperatorSpec& spec) { return diagnose(spec).gs; }

bool verdicts_consistent(const DiagnosticsReport& r) {
  if (r.gh_mod_kernel != r.gs) return false;
  if (is_yes(r.gh) && !is_yes(r.gs)) return false;
  if (r.gh == Verdict::YesCertified && r.gs != Verdict::YesCertified) return false;
  return true;
}

KernelCounterexample build_kernel_counterexample(const OperatorSpec& spec) {
  const SingularSet n = enumerate_singular_set(spec);
  if (n.entries.empty()) throw std::invalid_argument("singular set is empty within the truncation");
  KernelCounterexample out;
  out.table = FourierTable(spec.group);
  for (const SingularSetEntry& e : n.entries) out.table.set(e.reps, e.m, 0, e.r, 0, 1.0);
  out.slots = n.entries.size();
  out.degenerate = n.finiteness != Finiteness::InfinitePattern;
  out.note = out.degenerate ? "finite singular set: the kernel element is a smooth function"
                            : "kernel element with non-decaying coefficients along the infinite singular set";
  return out;
}

NonSolvableRhs build_nonsolvable_rhs(const OperatorSpec& spec, int depth) {
  const OperatorSpec op = spec.constant_coefficients() ? spec : spec.normal_form();
  const auto witnesses = liouville_witnesses(op);
  if (!liouville_violation(op)) throw std::invalid_argument("no violating sequence: the coefficient admits a gap floor");
  NonSolvableRhs out;
  out.depth = depth;
  out.table = FourierTable(op.group);
  const bool tabulate = op.group.factor1.kind == GroupKind::Circle && op.group.factor2.kind == GroupKind::Circle;
  const BigInt limit("100000000000000000000000000000000000");
  for (const LiouvilleWitness& w : witnesses) {
    NonSolvableSlot s;
    s.witness = w;
    s.log_solution = -w.log_gap;
    s.exceeds = s.log_solution > depth * w.log_shell;
    if (!s.exceeds) continue;
    if (tabulate && mp::abs(w.l) < limit) out.table.set({parse_index(w.k.str()), parse_index(w.l.str())}, 0, 0, 0, 0, 1.0);
    out.slots.push_back(s);
  }
  if (out.slots.empty())
    throw std::invalid_argument("no convergent slot at this Liouville depth beats shell^-" + std::to_string(depth));
  return out;
}

Membership membership_M_classifier(const FourierTable& u, const OperatorSpec& spec) {
  const SingularSet n = enumerate_singular_set(spec);
  Membership out;
  FourierTable restricted(u.group());
  for (const SingularSetEntry& e : n.entries) {
    const Block* b = u.find(e.reps);
    if (!b) continue;
    for (int c = 0; c < b->d1; ++c)
      for (int s = 0; s < b->d2; ++s) {
        const cplx v = b->at(e.m, c, e.r, s);
        if (v != cplx(0.0)) restricted.set(e.reps, e.m, c, e.r, s, v);
      }
  }
  out.singular_slots = n.entries.size();
  out.decay = decay_classify(restricted);
  out.member = out.decay.classification == DecayClass::SmoothLike;
  out.note = restricted.blocks().empty() ? "vanishes on the singular set" : out.decay.note;
  return out;
}

}  // namespace lgh
