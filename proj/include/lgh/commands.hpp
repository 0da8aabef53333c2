#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lgh/checks.hpp"
#include "lgh/io.hpp"

namespace lgh {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailedChecks = 1,
  kExitParseError = 2,
  kExitNotAdmissible = 3,
  kExitInconclusive = 4,
};

struct CommandResult {
  int exit_code = kExitOk;
  std::string output;
};

// Data directory: $LGH_DATA_DIR when set, else the build-time default.
std::filesystem::path data_dir();

struct FixtureCase {
  std::string name;
  std::filesystem::path spec_path;
  bool gh = false;
  bool gs = false;
  bool kernel_counterexample = false;
  bool nonsolvable_rhs = false;
  bool conjugation = false;
};

std::vector<FixtureCase> load_fixtures(const std::filesystem::path& dir);
FixtureCase find_fixture(const std::string& name);

// Truncation used for the conjugation and manufactured-solve checks of a fixture.
inline constexpr int kFixtureCircleTrunc = 3;
inline constexpr int kFixtureTwoEll = 2;

// One check per expectation of the fixture.
std::vector<CheckResult> run_fixture(const FixtureCase& fixture);

struct AnalyzeOptions {
  std::filesystem::path spec;
  TruncationOverride truncation;
  bool require_certified = false;
};

CommandResult cmd_analyze(const AnalyzeOptions& options);
// Writes the solution coefficients to `out` and reports the residual.
CommandResult cmd_solve(const std::filesystem::path& spec, const std::filesystem::path& rhs,
                        const std::filesystem::path& out);
CommandResult cmd_normal_form(const std::filesystem::path& spec, const TruncationOverride& truncation = {});
CommandResult cmd_example(const std::string& name);
CommandResult cmd_verify(const std::string& suite);

std::vector<std::string> verify_suites();

}  // namespace lgh
