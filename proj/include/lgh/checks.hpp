#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lgh/normal_form.hpp"

namespace lgh {

// Measured quantity compared against a pinned tolerance (pass iff value <= tolerance).
struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
  bool measured = true;  // false for yes/no expectations
};

CheckResult make_check(std::string name, double value, double tolerance, std::string detail = {});
CheckResult make_flag(std::string name, bool ok, std::string detail = {});
// "PASS name value=... tol=... [detail]".
std::string format_check(const CheckResult& c);
bool all_pass(const std::vector<CheckResult>& checks);

// Uniform random entries in [-1,1] + i[-1,1] on every slot inside the truncation.
FourierTable random_coefficients(const ProductGroup& group, std::mt19937_64& rng);

// Relative gap between the quadrature norm of the synthesized function and the Plancherel norm.
CheckResult plancherel_check(const std::string& name, const ProductGroup& group, int count, std::uint64_t seed);

// Unitarity and homomorphism of t^l for 2l <= max_two_ell at random points.
CheckResult su2_unitarity_check(int max_two_ell, int trials, std::uint64_t seed);
CheckResult su2_homomorphism_check(int max_two_ell, int trials, std::uint64_t seed);
// Orthogonality relations of matrix coefficients under the quadrature for 2l <= two_ell_max.
CheckResult su2_orthonormality_check(int two_ell_max);
// Symbol of d/dpsi against central differences of t^l.
CheckResult su2_dpsi_check(int max_two_ell, int trials, std::uint64_t seed);

// Exact gaps against |lambda + a mu| evaluated in big rationals over |lambda|, |mu| <= range (value: mismatches).
CheckResult rational_gap_oracle(const BigRational& a, int range);
// Gaps for a = sqrt 2 against |lambda^2 - 2 mu^2| / |lambda - sqrt2 mu| over |lambda|, |mu| <= range.
CheckResult sqrt2_gap_oracle(int range);

// Spectral application against the numerical flow derivative, and symbol magnitudes against gaps.
std::vector<CheckResult> symbol_checks(std::uint64_t seed);

// Spec with both truncations lowered to at most (circle_trunc, two_ell); field tables are kept.
OperatorSpec with_truncation(const OperatorSpec& spec, int circle_trunc, int two_ell);

// Largest relative residual of the Psi and exponential conjugation identities over random inputs.
// Returns max_i residual_i / ||u_i||; identities that do not apply contribute 0.
double psi_conjugation_residual(const OperatorSpec& spec, const ConjugatorBundle& bundle, int count,
                                std::mt19937_64& rng);
double exp_conjugation_residual(const OperatorSpec& spec, const ConjugatorBundle& bundle, int count,
                                std::mt19937_64& rng);

struct ManufacturedStats {
  int solves = 0;
  double residual = 0.0;  // largest ||L u - f|| / ||f||
  double mismatch = 0.0;  // largest off-singular deviation from u0, relative to ||u0||
  bool constant_path = false;
};

// Solves L u = L u0 for random u0 whose image fits the truncation of `spec`.
ManufacturedStats manufactured_solutions(const OperatorSpec& spec, int count, std::mt19937_64& rng);

}  // namespace lgh
