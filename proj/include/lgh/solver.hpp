#pragma once

#include <stdexcept>
#include <vector>

#include "lgh/symbols.hpp"

namespace lgh {

struct OffendingEntry {
  RepPair reps;
  int m = 0;
  int n = 0;
  int r = 0;
  int s = 0;
  double magnitude = 0.0;
};

struct AdmissibilityReport {
  bool admissible = true;
  std::vector<OffendingEntry> offending;
  double tolerance = 0.0;
  bool heuristic = false;  // zeros detected numerically
};

// Entries on singular slots with |f^| > tol * ||f||.
AdmissibilityReport check_admissible(const FourierTable& f, const OperatorSpec& spec, double tol = 1e-10);
// Zeroes every singular slot.
FourierTable project_admissible(const FourierTable& f, const OperatorSpec& spec);

class NotAdmissible : public std::invalid_argument {
 public:
  explicit NotAdmissible(AdmissibilityReport report);
  const AdmissibilityReport& report() const { return report_; }

 private:
  AdmissibilityReport report_;
};

// Canonical solution u^ = f^ / symbol off the singular set, 0 on it.
FourierTable solve_constant(const OperatorSpec& spec, const FourierTable& f, double tol = 1e-10);
// Plancherel norm of L u - f.
double residual(const OperatorSpec& spec, const FourierTable& u, const FourierTable& f);
DecayFit smoothness_of_solution(const OperatorSpec& spec, const FourierTable& f);

}  // namespace lgh
