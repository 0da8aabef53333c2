#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lgh/symbols.hpp"

namespace lgh {

enum class Verdict { YesCertified, YesEvidence, NoCertified, NoEvidence, Inconclusive };
std::string_view verdict_label(Verdict v);
bool is_yes(Verdict v);
bool is_certified(Verdict v);

// Minimum nonzero |lambda + a mu - i q| over the slots of one shell.
struct ShellMinimum {
  double shell = 0.0;
  double gap = 0.0;
  double log_gap = 0.0;
  Index lambda2 = 0;
  Index mu2 = 0;
  RepPair reps;
  bool certified = false;
  bool witness = false;  // convergent slot outside the truncation
};

struct ShellGapProfile {
  std::vector<ShellMinimum> shells;  // ascending shell
  bool certified = true;
};

// Per-shell minima inside the truncation, plus convergent witness slots for Liouville coefficients.
ShellGapProfile shell_profile(const OperatorSpec& spec);

struct DiophantineFit {
  bool ok = false;
  double C = 0.0;
  double M = 0.0;
  double r2 = 0.0;
  std::size_t shells_used = 0;
  bool no_polynomial_bound = false;
  std::string note;
};

// Least squares of the running-minimum envelope of log(min gap) against log(shell).
DiophantineFit fit_diophantine(const ShellGapProfile& profile, double m_max = 12.0);

// Lower bound gap >= C s^{-M} from a closed-form argument, valid on every shell s.
struct GapFloor {
  bool certified = false;
  double C = 0.0;
  double M = 0.0;
  std::string lemma;
};

GapFloor certified_floor(const OperatorSpec& spec);

// Convergent slot (lambda, mu) = (-p_j, q_j) of a Liouville coefficient.
struct LiouvilleWitness {
  int j = 0;
  BigInt k;
  BigInt l;
  BigRational gap;  // exact |k + a l|
  double shell = 0.0;
  double log_gap = 0.0;
  double log_shell = 0.0;
  // Largest M with gap <= (|k| + |l|)^{-M}.
  double exponent = 0.0;
};

// Nonzero convergent slots; empty unless a is a Liouville truncation with q = 0 on two nontrivial factors.
std::vector<LiouvilleWitness> liouville_witnesses(const OperatorSpec& spec);
bool liouville_violation(const OperatorSpec& spec);

struct DiagnosticsReport {
  OperatorSpec analyzed;  // normal form for variable-coefficient specs
  bool from_normal_form = false;
  SingularSet singular;
  ShellGapProfile profile;
  DiophantineFit fit;
  GapFloor floor;
  std::vector<LiouvilleWitness> witnesses;
  Verdict gh = Verdict::Inconclusive;
  Verdict gs = Verdict::Inconclusive;
  Verdict gh_mod_kernel = Verdict::Inconclusive;
  std::vector<std::string> notes;
};

DiagnosticsReport diagnose(const OperatorSpec& spec);
Verdict gh_verdict(const OperatorSpec& spec);
Verdict gs_verdict(const OperatorSpec& spec);
// GH yes implies GS yes, and GH modulo kernel equals GS.
bool verdicts_consistent(const DiagnosticsReport& report);

struct KernelCounterexample {
  FourierTable table;
  std::size_t slots = 0;
  bool degenerate = false;  // finite singular set: the table is a smooth function
  std::string note;
};

// Entry 1 at every singular slot with the free column indices fixed to the first column.
KernelCounterexample build_kernel_counterexample(const OperatorSpec& spec);

struct NonSolvableSlot {
  LiouvilleWitness witness;
  double log_solution = 0.0;  // log |u^| = -log gap for f^ = 1
  bool exceeds = false;       // |u^| > shell^depth
};

struct NonSolvableRhs {
  FourierTable table;  // f^ = 1 at the selected slots, which may lie outside the truncation
  std::vector<NonSolvableSlot> slots;
  int depth = 0;
};

// Right-hand side whose formal solution outgrows shell^depth; rejects coefficients without violations.
NonSolvableRhs build_nonsolvable_rhs(const OperatorSpec& spec, int depth);

struct Membership {
  bool member = false;
  std::size_t singular_slots = 0;
  DecayFit decay;
  std::string note;
};

// Decay of u restricted to the singular slots.
Membership membership_M_classifier(const FourierTable& u, const OperatorSpec& spec);

}  // namespace lgh
