#include <CLI11.hpp>

#include <iostream>

#include "lgh/commands.hpp"

using namespace lgh;

namespace {

int emit(const CommandResult& r, const std::string& out_path = {}) {
  const bool error = r.output.rfind("error:", 0) == 0;
  if (!out_path.empty() && !error) {
    try {
      write_text_file(out_path, r.output);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitFailedChecks;
    }
  } else {
    (error ? std::cerr : std::cout) << r.output;
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Global hypoellipticity and solvability diagnostics on products of compact Lie groups"};
  app.require_subcommand(1);

  AnalyzeOptions analyze;
  std::string analyze_spec, analyze_out;
  int trunc1 = -1, trunc2 = -1;
  CLI::App* a = app.add_subcommand("analyze", "Diagnose global hypoellipticity and solvability");
  a->add_option("--spec", analyze_spec, "Operator spec file")->required();
  a->add_option("--trunc1", trunc1, "Truncation of the first factor")->check(CLI::NonNegativeNumber);
  a->add_option("--trunc2", trunc2, "Truncation of the second factor")->check(CLI::NonNegativeNumber);
  a->add_option("--out", analyze_out, "Report file (stdout when omitted)");
  a->add_flag("--require-certified", analyze.require_certified, "Exit 4 unless both verdicts are certified");

  std::string solve_spec, solve_rhs, solve_out;
  CLI::App* s = app.add_subcommand("solve", "Solve L u = f");
  s->add_option("--spec", solve_spec, "Operator spec file")->required();
  s->add_option("--rhs", solve_rhs, "Right-hand side (coefficient or grid file)")->required();
  s->add_option("--out", solve_out, "Solution coefficient file")->required();

  std::string nf_spec;
  CLI::App* n = app.add_subcommand("normal-form", "Report the conjugator bundle");
  n->add_option("--spec", nf_spec, "Operator spec file")->required();
  n->add_option("--trunc1", trunc1, "Truncation of the first factor")->check(CLI::NonNegativeNumber);
  n->add_option("--trunc2", trunc2, "Truncation of the second factor")->check(CLI::NonNegativeNumber);

  std::string example;
  CLI::App* e = app.add_subcommand("example", "Run a fixture end to end");
  e->add_option("name", example, "Fixture name")->required();

  std::string suite;
  CLI::App* v = app.add_subcommand("verify", "Run an invariant suite");
  v->add_option("suite", suite, "plancherel | unitarity | symbols | conjugation | oracle-gaps")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitParseError;
  }

  TruncationOverride over;
  if (trunc1 >= 0) over.trunc1 = trunc1;
  if (trunc2 >= 0) over.trunc2 = trunc2;

  if (*a) {
    analyze.spec = analyze_spec;
    analyze.truncation = over;
    return emit(cmd_analyze(analyze), analyze_out);
  }
  if (*s) return emit(cmd_solve(solve_spec, solve_rhs, solve_out));
  if (*n) return emit(cmd_normal_form(nf_spec, over));
  if (*e) return emit(cmd_example(example));
  return emit(cmd_verify(suite));
}
