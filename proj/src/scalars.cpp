#include "lgh/scalars.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

namespace lgh {
namespace {

namespace mp = boost::multiprecision;

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

BigInt parse_big_integer(std::string_view text) {
  const std::string t = trim(text);
  std::size_t pos = (t.size() && (t[0] == '+' || t[0] == '-')) ? 1 : 0;
  if (pos == t.size()) throw std::invalid_argument("malformed integer: '" + t + "'");
  for (std::size_t i = pos; i < t.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(t[i]))) throw std::invalid_argument("malformed integer: '" + t + "'");
  BigInt v(t.substr(pos));
  return t[0] == '-' ? BigInt(-v) : v;
}

BigInt pow10(long long e) { return mp::pow(BigInt(10), static_cast<unsigned>(e)); }

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Position of the last top-level '+' or '-' that separates two terms, or npos.
std::size_t split_sign(std::string_view s) {
  int depth = 0;
  std::size_t found = std::string_view::npos;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && (c == '+' || c == '-') && i > 0 && s[i - 1] != 'e' && s[i - 1] != 'E' && s[i - 1] != '*' &&
        s[i - 1] != '/')
      found = i;
  }
  return found;
}

std::string strip_parens(std::string s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') return trim(std::string_view(s).substr(1, s.size() - 2));
  return s;
}

// Coefficient text such as "", "+", "-", "3/2", "-0.5" preceding "*sqrt(d)" or "*i".
BigRational parse_coefficient(std::string_view text) {
  std::string t = trim(text);
  if (!t.empty() && t.back() == '*') t = trim(std::string_view(t).substr(0, t.size() - 1));
  if (t.empty() || t == "+") return 1;
  if (t == "-") return -1;
  return parse_rational(t);
}

SurdSum parse_surd_term(std::string_view text) {
  const std::string t = trim(text);
  const std::size_t at = t.find("sqrt(");
  if (at == std::string::npos) return SurdSum(parse_rational(t));
  const std::size_t close = t.find(')', at);
  if (close == std::string::npos || close + 1 != t.size()) throw std::invalid_argument("malformed sqrt term: '" + t + "'");
  const BigInt d = parse_big_integer(std::string_view(t).substr(at + 5, close - at - 5));
  if (d < 1 || d > BigInt(std::numeric_limits<int>::max())) throw std::invalid_argument("sqrt argument out of range: '" + t + "'");
  return SurdSum::root(d.convert_to<long long>(), parse_coefficient(std::string_view(t).substr(0, at)));
}

// Sum of rational and sqrt terms, e.g. "1/2-3*sqrt(5)".
SurdSum parse_surd_sum(std::string_view text) {
  std::string t = strip_parens(std::string(text));
  if (t.empty()) throw std::invalid_argument("empty number");
  SurdSum acc;
  while (true) {
    const std::size_t s = split_sign(t);
    if (s == std::string::npos) {
      acc += parse_surd_term(t);
      return acc;
    }
    acc += parse_surd_term(std::string_view(t).substr(s));
    t = trim(std::string_view(t).substr(0, s));
  }
}

long double log_abs(const BigInt& x) {
  if (x == 0) return -std::numeric_limits<long double>::infinity();
  const BigInt a = mp::abs(x);
  const long long bits = static_cast<long long>(mp::msb(a));
  if (bits < 1000) return std::log(a.convert_to<long double>());
  const long long shift = bits - 64;
  const BigInt top = a >> shift;
  return std::log(top.convert_to<long double>()) + static_cast<long double>(shift) * std::log(2.0L);
}

// log(e^x + e^y)
long double log_sum(long double x, long double y) {
  if (std::isinf(x) && x < 0) return y;
  if (std::isinf(y) && y < 0) return x;
  const long double hi = std::max(x, y), lo = std::min(x, y);
  return hi + std::log1p(std::exp(lo - hi));
}

std::string surd_text(const SurdSum& s) {
  const std::string t = s.to_string();
  return s.surds().empty() || (s.rational() == 0 && s.surds().size() == 1) ? t : "(" + t + ")";
}

}  // namespace

BigInt to_big(Index v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  BigInt out = static_cast<unsigned long long>(u >> 64);
  out <<= 64;
  out += static_cast<unsigned long long>(u & ~0ull);
  return neg ? BigInt(-out) : out;
}

BigRational parse_rational(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) throw std::invalid_argument("empty number");
  const std::size_t slash = t.find('/');
  if (slash != std::string::npos) {
    const BigInt den = parse_big_integer(std::string_view(t).substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + t + "'");
    return BigRational(parse_big_integer(std::string_view(t).substr(0, slash)), den);
  }
  std::size_t pos = 0;
  bool neg = false;
  if (t[0] == '+' || t[0] == '-') {
    neg = t[0] == '-';
    pos = 1;
  }
  std::string digits;
  long long scale = 0;
  bool dot = false, any = false;
  for (; pos < t.size(); ++pos) {
    const char c = t[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any = true;
      if (dot) ++scale;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!any) throw std::invalid_argument("malformed number: '" + t + "'");
  long long exponent = 0;
  if (pos < t.size()) {
    if (t[pos] != 'e' && t[pos] != 'E') throw std::invalid_argument("malformed number: '" + t + "'");
    const std::string ex = t.substr(pos + 1);
    try {
      std::size_t used = 0;
      exponent = std::stoll(ex, &used);
      if (used != ex.size()) throw std::invalid_argument(ex);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed exponent in '" + t + "'");
    }
    if (std::abs(exponent) > 4000) throw std::invalid_argument("exponent out of range in '" + t + "'");
  }
  const std::size_t nz = digits.find_first_not_of('0');
  BigRational v{nz == std::string::npos ? BigInt(0) : BigInt(digits.substr(nz))};
  const long long net = exponent - scale;
  if (net > 0) v *= BigRational(pow10(net));
  if (net < 0) v /= BigRational(pow10(-net));
  return neg ? BigRational(-v) : v;
}

std::string rational_to_string(const BigRational& r) {
  const BigInt num = mp::numerator(r), den = mp::denominator(r);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

SurdSum SurdSum::root(long long d, const BigRational& coef) {
  if (d < 1) throw std::invalid_argument("square root of a non-positive integer");
  long long outside = 1, rest = d;
  for (long long f = 2; f * f <= rest; ++f)
    while (rest % (f * f) == 0) {
      rest /= f * f;
      outside *= f;
    }
  SurdSum s;
  const BigRational c = coef * outside;
  if (c == 0) return s;
  if (rest == 1)
    s.rational_ = c;
  else
    s.surds_[rest] = c;
  return s;
}

SurdSum& SurdSum::operator+=(const SurdSum& o) {
  rational_ += o.rational_;
  for (const auto& [d, c] : o.surds_) {
    BigRational& dst = surds_[d];
    dst += c;
    if (dst == 0) surds_.erase(d);
  }
  return *this;
}

SurdSum& SurdSum::operator-=(const SurdSum& o) { return *this += -o; }

SurdSum& SurdSum::operator*=(const BigRational& s) {
  if (s == 0) {
    rational_ = 0;
    surds_.clear();
    return *this;
  }
  rational_ *= s;
  for (auto& [d, c] : surds_) c *= s;
  return *this;
}

SurdSum SurdSum::operator-() const {
  SurdSum n = *this;
  n *= BigRational(-1);
  return n;
}

BigFloat SurdSum::approx() const {
  BigFloat v = BigFloat(mp::numerator(rational_)) / BigFloat(mp::denominator(rational_));
  for (const auto& [d, c] : surds_)
    v += BigFloat(mp::numerator(c)) / BigFloat(mp::denominator(c)) * mp::sqrt(BigFloat(d));
  return v;
}

std::string SurdSum::to_string() const {
  std::string out;
  if (rational_ != 0 || surds_.empty()) out = rational_to_string(rational_);
  for (const auto& [d, c] : surds_) {
    std::string coef = rational_to_string(c < 0 ? BigRational(-c) : c);
    std::string term = (coef == "1" ? "" : coef + "*") + "sqrt(" + std::to_string(d) + ")";
    if (out.empty())
      out = (c < 0 ? "-" : "") + term;
    else
      out += (c < 0 ? "-" : "+") + term;
  }
  return out;
}

std::string_view scalar_kind_label(ScalarKind kind) {
  switch (kind) {
    case ScalarKind::Rational: return "rational";
    case ScalarKind::Quadratic: return "quadratic";
    case ScalarKind::Liouville: return "liouville";
    case ScalarKind::Float: return "float";
    case ScalarKind::Complex: return "complex";
  }
  return "?";
}

ScalarConstant ScalarConstant::exact(const SurdSum& re, const SurdSum& im) {
  ScalarConstant c;
  c.re = re;
  c.im = im;
  if (!im.is_zero() || re.surds().size() > 1)
    c.kind = ScalarKind::Complex;
  else if (re.is_rational())
    c.kind = ScalarKind::Rational;
  else
    c.kind = ScalarKind::Quadratic;
  c.float_re = re.to_double();
  c.float_im = im.to_double();
  return c;
}

ScalarConstant ScalarConstant::rational(const BigRational& r) { return exact(SurdSum(r), SurdSum()); }

ScalarConstant ScalarConstant::quadratic(const BigRational& u, const BigRational& v, long long d) {
  if (v == 0) throw std::invalid_argument("quadratic irrational needs a nonzero sqrt coefficient");
  const SurdSum s = SurdSum(u) + SurdSum::root(d, v);
  if (s.is_rational()) throw std::invalid_argument("sqrt(" + std::to_string(d) + ") is rational");
  return exact(s, SurdSum());
}

ScalarConstant ScalarConstant::liouville(int depth) {
  if (depth < 1 || depth > kMaxLiouvilleDepth)
    throw std::invalid_argument("Liouville depth must lie in [1, " + std::to_string(kMaxLiouvilleDepth) + "]");
  ScalarConstant c = exact(SurdSum(liouville_value(depth)), SurdSum());
  c.kind = ScalarKind::Liouville;
  c.depth = depth;
  return c;
}

ScalarConstant ScalarConstant::floating(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("float constant must be finite");
  ScalarConstant c;
  c.kind = ScalarKind::Float;
  c.float_re = x;
  return c;
}

ScalarConstant ScalarConstant::complex(const BigRational& re, const BigRational& im) {
  ScalarConstant c = exact(SurdSum(re), SurdSum(im));
  c.kind = ScalarKind::Complex;
  return c;
}

bool ScalarConstant::is_zero() const {
  if (kind == ScalarKind::Float) return false;
  return re.is_zero() && im.is_zero();
}

bool ScalarConstant::is_real() const { return kind == ScalarKind::Float ? float_im == 0.0 : im.is_zero(); }

cplx ScalarConstant::value() const { return {float_re, float_im}; }

std::string ScalarConstant::to_string() const {
  switch (kind) {
    case ScalarKind::Rational: return "rational:" + rational_to_string(re.rational());
    case ScalarKind::Quadratic: {
      const auto& [d, v] = *re.surds().begin();
      std::string vs = rational_to_string(v);
      return "quadratic:" + rational_to_string(re.rational()) + (v < 0 ? "" : "+") + vs + "*sqrt(" +
             std::to_string(d) + ")";
    }
    case ScalarKind::Liouville: return "liouville:" + std::to_string(depth);
    case ScalarKind::Float: {
      std::ostringstream os;
      os.precision(17);
      os << "float:" << float_re;
      return os.str();
    }
    case ScalarKind::Complex: {
      const std::string r = surd_text(re), i = surd_text(im);
      return "complex:" + r + (i.front() == '-' ? "" : "+") + i + "*i";
    }
  }
  return "?";
}

ScalarConstant parse_scalar(std::string_view text) {
  const std::string t = trim(text);
  const std::size_t colon = t.find(':');
  const std::string kind = colon == std::string::npos ? "" : t.substr(0, colon);
  const std::string body = colon == std::string::npos ? t : trim(std::string_view(t).substr(colon + 1));
  try {
    if (kind == "rational") return ScalarConstant::rational(parse_rational(body));
    if (kind == "quadratic") {
      const SurdSum s = parse_surd_sum(body);
      if (s.surds().size() != 1) throw std::invalid_argument("expected exactly one sqrt term");
      const auto& [d, v] = *s.surds().begin();
      return ScalarConstant::quadratic(s.rational(), v, d);
    }
    if (kind == "liouville") {
      const BigInt j = parse_big_integer(body);
      if (j < 1 || j > kMaxLiouvilleDepth)
        throw std::invalid_argument("depth must lie in [1, " + std::to_string(kMaxLiouvilleDepth) + "]");
      return ScalarConstant::liouville(j.convert_to<int>());
    }
    if (kind == "float") {
      std::size_t used = 0;
      const double x = std::stod(body, &used);
      if (used != body.size()) throw std::invalid_argument("trailing characters");
      return ScalarConstant::floating(x);
    }
    if (kind == "complex" || kind.empty()) {
      std::string b = body;
      SurdSum re, im;
      if (!b.empty() && b.back() == 'i') {
        b = trim(std::string_view(b).substr(0, b.size() - 1));
        const std::size_t s = split_sign(b);
        const std::string imag = s == std::string::npos ? b : b.substr(s);
        if (s != std::string::npos) re = parse_surd_sum(b.substr(0, s));
        std::string it = trim(imag);
        if (!it.empty() && it.back() == '*') it = trim(std::string_view(it).substr(0, it.size() - 1));
        if (it.empty() || it == "+")
          im = SurdSum(1);
        else if (it == "-")
          im = SurdSum(-1);
        else if (it[0] == '+' || it[0] == '-')
          im = it[0] == '-' ? -parse_surd_sum(it.substr(1)) : parse_surd_sum(it.substr(1));
        else
          im = parse_surd_sum(it);
      } else {
        re = parse_surd_sum(b);
      }
      if (kind == "complex" && re.is_rational() && im.is_rational())
        return ScalarConstant::complex(re.rational(), im.rational());
      return ScalarConstant::exact(re, im);
    }
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("cannot parse scalar '" + t + "': " + e.what());
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("cannot parse scalar '" + t + "': value out of range");
  }
  throw std::invalid_argument("unknown scalar kind '" + kind + "' in '" + t + "'");
}

bool SymbolForm::Part::zero_form() const {
  if (A != 0 || B != 0 || C != 0) return false;
  for (const auto& [d, eh] : surd)
    if (eh.first != 0 || eh.second != 0) return false;
  return true;
}

SymbolForm::Part SymbolForm::make_part(const SurdSum& lambda_coef, const SurdSum& mu_coef, const SurdSum& constant) {
  // value = lambda_coef lambda2 / 2 + mu_coef mu2 / 2 + constant
  const BigRational half(1, 2);
  const BigRational a = lambda_coef.rational() * half, b = mu_coef.rational() * half, c = constant.rational();
  std::map<long long, std::pair<BigRational, BigRational>> s;
  for (const auto& [d, v] : mu_coef.surds()) s[d].first = v * half;
  for (const auto& [d, v] : constant.surds()) s[d].second = v;
  BigInt D = 1;
  auto fold = [&D](const BigRational& r) { D = mp::lcm(D, BigInt(mp::denominator(r))); };
  fold(a);
  fold(b);
  fold(c);
  for (const auto& [d, eh] : s) {
    fold(eh.first);
    fold(eh.second);
  }
  auto scaled = [&D](const BigRational& r) { return BigInt(mp::numerator(r) * (D / mp::denominator(r))); };
  Part p;
  p.A = scaled(a);
  p.B = scaled(b);
  p.C = scaled(c);
  p.D = D;
  for (const auto& [d, eh] : s) p.surd[d] = {scaled(eh.first), scaled(eh.second)};
  return p;
}

bool SymbolForm::part_zero(const Part& p, const BigInt& l, const BigInt& m) {
  if (p.A * l + p.B * m + p.C != 0) return false;
  for (const auto& [d, eh] : p.surd)
    if (eh.first * m + eh.second != 0) return false;
  return true;
}

std::pair<long double, int> SymbolForm::part_log(const Part& p, const BigInt& l, const BigInt& m) {
  const BigInt P = p.A * l + p.B * m + p.C;
  long double v;
  int sign;
  if (p.surd.empty()) {
    v = log_abs(P);
    sign = P.sign();
  } else if (p.surd.size() == 1) {
    const auto& [d, eh] = *p.surd.begin();
    const BigInt Q = eh.first * m + eh.second;
    const long double log_root = 0.5L * std::log(static_cast<long double>(d));
    const long double lp = log_abs(P), lq = log_abs(Q) + log_root;
    if (P.sign() * Q.sign() >= 0) {
      v = log_sum(lp, lq);
      sign = P.sign() != 0 ? P.sign() : Q.sign();
    } else {
      // |P + Q sqrt d| = |P^2 - d Q^2| / (|P| + |Q| sqrt d) avoids cancellation.
      const BigInt N = P * P - BigInt(d) * Q * Q;
      v = log_abs(N) - log_sum(lp, lq);
      sign = N.sign() * P.sign();
    }
  } else {
    BigFloat x = BigFloat(P);
    for (const auto& [d, eh] : p.surd) x += BigFloat(eh.first * m + eh.second) * mp::sqrt(BigFloat(d));
    v = mp::log(mp::abs(x)).convert_to<long double>();
    sign = x.sign();
  }
  return {v - log_abs(p.D), sign};
}

std::vector<std::array<BigInt, 3>> SymbolForm::zero_equations() const {
  std::vector<std::array<BigInt, 3>> rows;
  for (const Part* p : {&re_, &im_}) {
    if (p->A != 0 || p->B != 0 || p->C != 0) rows.push_back({p->A, p->B, p->C});
    for (const auto& [d, eh] : p->surd)
      if (eh.first != 0 || eh.second != 0) rows.push_back({BigInt(0), eh.first, eh.second});
  }
  return rows;
}

cplx SymbolForm::value(Index lambda2, Index mu2) const {
  if (!exact_) {
    const double lam = static_cast<double>(lambda2) / 2, mu = static_cast<double>(mu2) / 2;
    return lam + a_float_ * mu - cplx(0, 1) * q_float_;
  }
  const BigInt l = to_big(lambda2), m = to_big(mu2);
  auto part = [&](const Part& p) -> double {
    if (part_zero(p, l, m)) return 0.0;
    const auto [lg, sign] = part_log(p, l, m);
    return static_cast<double>(sign * std::exp(lg));
  };
  return {part(re_), part(im_)};
}

SymbolForm::SymbolForm(const ScalarConstant& a, const ScalarConstant& q)
    : exact_(a.is_exact() && q.is_exact()), a_float_(a.value()), q_float_(q.value()) {
  if (!exact_) return;
  // real: lambda + alpha mu + qi ; imaginary: gamma mu - qr
  re_ = make_part(SurdSum(1), a.re, q.im);
  im_ = make_part(SurdSum(0), a.im, -q.re);
}

bool SymbolForm::is_zero(Index lambda2, Index mu2) const {
  if (!exact_) return false;
  const BigInt l = to_big(lambda2), m = to_big(mu2);
  return part_zero(re_, l, m) && part_zero(im_, l, m);
}

GapValue SymbolForm::evaluate(Index lambda2, Index mu2) const {
  GapValue g;
  if (!exact_) {
    const double lam = static_cast<double>(lambda2) / 2, mu = static_cast<double>(mu2) / 2;
    const cplx z = lam + a_float_ * mu - cplx(0, 1) * q_float_;
    g.magnitude = std::abs(z);
    const double scale = std::abs(lam) + std::abs(a_float_ * mu) + std::abs(q_float_);
    const double radius = 4 * std::numeric_limits<double>::epsilon() * scale;
    g.lower = std::max(0.0, g.magnitude - radius);
    g.log_magnitude = g.magnitude > 0 ? std::log(g.magnitude) : -std::numeric_limits<double>::infinity();
    return g;
  }
  g.certified = true;
  const BigInt l = to_big(lambda2), m = to_big(mu2);
  const bool rz = part_zero(re_, l, m), iz = part_zero(im_, l, m);
  if (rz && iz) {
    g.exact_zero = true;
    g.log_magnitude = -std::numeric_limits<double>::infinity();
    g.exact = BigRational(0);
    return g;
  }
  const long double ninf = -std::numeric_limits<long double>::infinity();
  const long double lr = rz ? ninf : part_log(re_, l, m).first, li = iz ? ninf : part_log(im_, l, m).first;
  const long double lmag = 0.5L * log_sum(2 * lr, 2 * li);
  g.log_magnitude = static_cast<double>(lmag);
  g.magnitude = static_cast<double>(std::exp(lmag));
  g.lower = g.magnitude * (1 - 1e-14);
  auto rational_part = [&](const Part& p) -> std::optional<BigRational> {
    for (const auto& [d, eh] : p.surd)
      if (eh.first * m + eh.second != 0) return std::nullopt;
    return BigRational(BigInt(mp::abs(BigInt(p.A * l + p.B * m + p.C))), p.D);
  };
  if (iz) g.exact = rational_part(re_);
  if (rz) g.exact = rational_part(im_);
  if (g.exact) g.lower = g.magnitude * (1 - 1e-15);
  return g;
}

GapValue gap(Index lambda2, const ScalarConstant& a, Index mu2) {
  return SymbolForm(a, ScalarConstant::rational(0)).evaluate(lambda2, mu2);
}

bool is_exact_zero(const GapValue& g) { return g.certified && g.exact_zero; }

BigRational liouville_value(int depth) {
  if (depth < 1 || depth > kMaxLiouvilleDepth)
    throw std::invalid_argument("Liouville depth must lie in [1, " + std::to_string(kMaxLiouvilleDepth) + "]");
  BigRational v = 0;
  for (int j = 1; j <= depth; ++j) v += BigRational(BigInt(1), pow10(factorial(j)));
  return v;
}

std::vector<std::pair<BigInt, BigInt>> liouville_convergents(int depth) {
  if (depth < 1 || depth > kMaxLiouvilleDepth)
    throw std::invalid_argument("Liouville depth must lie in [1, " + std::to_string(kMaxLiouvilleDepth) + "]");
  std::vector<std::pair<BigInt, BigInt>> out;
  BigInt p = 0;
  long long prev = 0;
  for (int j = 1; j <= depth; ++j) {
    const long long e = factorial(j);
    p = p * pow10(e - prev) + 1;
    prev = e;
    out.emplace_back(p, pow10(e));
  }
  return out;
}

}  // namespace lgh
