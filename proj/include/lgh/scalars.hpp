#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lgh/core.hpp"

namespace lgh {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;
using BigFloat = boost::multiprecision::cpp_bin_float_50;

BigInt to_big(Index v);
BigRational parse_rational(std::string_view text);  // "p", "p/q", "-1.25", "3e-2"
std::string rational_to_string(const BigRational& r);

// Real number r + sum_d c_d sqrt(d) with rational coefficients and distinct squarefree d >= 2.
// Square roots of distinct squarefree integers are linearly independent over Q, so the
// number is zero exactly when every coefficient is zero.
class SurdSum {
 public:
  SurdSum() = default;
  SurdSum(BigRational r) : rational_(std::move(r)) {}
  SurdSum(long long r) : rational_(r) {}

  // coef * sqrt(d) for d >= 1, with square factors pulled out.
  static SurdSum root(long long d, const BigRational& coef = 1);

  const BigRational& rational() const { return rational_; }
  const std::map<long long, BigRational>& surds() const { return surds_; }
  bool is_zero() const { return rational_ == 0 && surds_.empty(); }
  bool is_rational() const { return surds_.empty(); }

  SurdSum& operator+=(const SurdSum& o);
  SurdSum& operator-=(const SurdSum& o);
  SurdSum& operator*=(const BigRational& s);
  SurdSum operator-() const;
  friend SurdSum operator+(SurdSum a, const SurdSum& b) { return a += b; }
  friend SurdSum operator-(SurdSum a, const SurdSum& b) { return a -= b; }
  friend SurdSum operator*(SurdSum a, const BigRational& s) { return a *= s; }
  bool operator==(const SurdSum& o) const { return rational_ == o.rational_ && surds_ == o.surds_; }

  BigFloat approx() const;
  double to_double() const { return approx().convert_to<double>(); }
  std::string to_string() const;

 private:
  BigRational rational_ = 0;
  std::map<long long, BigRational> surds_;
};

enum class ScalarKind { Rational, Quadratic, Liouville, Float, Complex };
std::string_view scalar_kind_label(ScalarKind kind);

// Constant coefficient or perturbation. Every kind except Float carries an exact value re + i im.
struct ScalarConstant {
  ScalarKind kind = ScalarKind::Rational;
  SurdSum re;
  SurdSum im;
  double float_re = 0.0;
  double float_im = 0.0;
  int depth = 0;  // Liouville truncation depth

  static ScalarConstant rational(const BigRational& r);
  static ScalarConstant quadratic(const BigRational& u, const BigRational& v, long long d);
  static ScalarConstant liouville(int depth);
  static ScalarConstant floating(double x);
  static ScalarConstant complex(const BigRational& re, const BigRational& im);
  // Exact value re + i im, with the kind inferred from its shape.
  static ScalarConstant exact(const SurdSum& re, const SurdSum& im);

  bool is_exact() const { return kind != ScalarKind::Float; }
  bool is_zero() const;
  bool is_real() const;
  cplx value() const;
  std::string to_string() const;
};

ScalarConstant parse_scalar(std::string_view text);

// |lambda + a mu| for doubled eigenvalues lambda2 = 2 lambda, mu2 = 2 mu.
struct GapValue {
  bool exact_zero = false;
  bool certified = false;  // false for float arithmetic
  double magnitude = 0.0;
  double log_magnitude = 0.0;  // natural log; -inf for exact zero
  double lower = 0.0;          // certified lower bound on the magnitude
  std::optional<BigRational> exact;  // set when the magnitude is rational
};

GapValue gap(Index lambda2, const ScalarConstant& a, Index mu2);
bool is_exact_zero(const GapValue& g);

// Magnitude of lambda + a mu - i q evaluated with precomputed integer coefficients.
// With a = alpha + i gamma and q = qr + i qi the real part is lambda + alpha mu + qi and the
// imaginary part is gamma mu - qr; both are stored as (A lambda2 + B mu2 + C) / D over the
// rational field plus surd terms (E_d mu2 + H_d) sqrt(d) / D.
class SymbolForm {
 public:
  SymbolForm(const ScalarConstant& a, const ScalarConstant& q);

  bool exact() const { return exact_; }
  GapValue evaluate(Index lambda2, Index mu2) const;
  bool is_zero(Index lambda2, Index mu2) const;
  // lambda + a mu - i q; accurate to double precision even under cancellation.
  cplx value(Index lambda2, Index mu2) const;
  // Integer rows (c_l, c_m, c_0): the zeros are exactly the (lambda2, mu2) solving every
  // c_l lambda2 + c_m mu2 + c_0 = 0.
  std::vector<std::array<BigInt, 3>> zero_equations() const;

 private:
  struct Part {
    BigInt A, B, C, D;
    std::map<long long, std::pair<BigInt, BigInt>> surd;  // d -> (E_d, H_d)
    bool zero_form() const;
  };
  static Part make_part(const SurdSum& lambda_coef, const SurdSum& mu_coef, const SurdSum& constant);
  static bool part_zero(const Part& p, const BigInt& l, const BigInt& m);
  static std::pair<long double, int> part_log(const Part& p, const BigInt& l, const BigInt& m);

  bool exact_ = true;
  Part re_, im_;
  cplx a_float_, q_float_;
};

// Exact Liouville truncation sum_{j<=depth} 10^{-j!}.
BigRational liouville_value(int depth);
// Convergents p_j / q_j with q_j = 10^{j!}, j = 1..depth.
std::vector<std::pair<BigInt, BigInt>> liouville_convergents(int depth);
inline constexpr int kMaxLiouvilleDepth = 8;

}  // namespace lgh
