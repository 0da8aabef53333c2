#include "lgh/commands.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cstdlib>
#include <random>

#include "lgh/diagnostics.hpp"

#ifndef LGH_DATA_DIR
#define LGH_DATA_DIR "data"
#endif

namespace lgh {

namespace {

constexpr std::size_t kMaxListed = 64;
constexpr int kNonsolvableDepth = 3;

std::string num(double x) { return format_double(x); }

std::string coefficient_text(const OperatorSpec& spec) {
  return spec.a_var ? spec.a_var->to_string() : spec.a.to_string();
}

std::string perturbation_text(const OperatorSpec& spec) {
  return spec.q_func ? "field " + spec.q_func->label() : spec.q.to_string();
}

void emit_group(YAML::Emitter& e, const ProductGroup& g) {
  e << YAML::Key << "group" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "factor1" << YAML::Value << std::string(kind_label(g.factor1.kind));
  e << YAML::Key << "trunc1" << YAML::Value << g.factor1.trunc;
  e << YAML::Key << "factor2" << YAML::Value << std::string(kind_label(g.factor2.kind));
  e << YAML::Key << "trunc2" << YAML::Value << g.factor2.trunc;
  e << YAML::EndMap;
}

void emit_spec(YAML::Emitter& e, const std::filesystem::path& path, const OperatorSpec& spec) {
  e << YAML::Key << "spec" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "file" << YAML::Value << path.filename().string();
  emit_group(e, spec.group);
  e << YAML::Key << "a" << YAML::Value << coefficient_text(spec);
  e << YAML::Key << "q" << YAML::Value << perturbation_text(spec);
  if (spec.q0) e << YAML::Key << "q0" << YAML::Value << spec.q0->to_string();
  if (spec.A) e << YAML::Key << "A" << YAML::Value << spec.A->to_string();
  if (spec.Q) e << YAML::Key << "Q" << YAML::Value << spec.Q->label();
  e << YAML::EndMap;
}

void emit_verdicts(YAML::Emitter& e, const DiagnosticsReport& r) {
  e << YAML::Key << "verdicts" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "gh" << YAML::Value << std::string(verdict_label(r.gh));
  e << YAML::Key << "gs" << YAML::Value << std::string(verdict_label(r.gs));
  e << YAML::Key << "gh_mod_kernel" << YAML::Value << std::string(verdict_label(r.gh_mod_kernel));
  e << YAML::Key << "consistent" << YAML::Value << verdicts_consistent(r);
  e << YAML::EndMap;
}

void emit_offending(YAML::Emitter& e, const ProductGroup& g, const AdmissibilityReport& adm) {
  e << YAML::Key << "obstruction" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "count" << YAML::Value << adm.offending.size();
  e << YAML::Key << "tolerance" << YAML::Value << num(adm.tolerance);
  e << YAML::Key << "entries" << YAML::Value << YAML::BeginSeq;
  for (std::size_t i = 0; i < std::min(adm.offending.size(), kMaxListed); ++i) {
    const OffendingEntry& o = adm.offending[i];
    e << YAML::Flow << YAML::BeginMap;
    e << YAML::Key << "xi" << YAML::Value << index_to_string(o.reps.xi);
    e << YAML::Key << "two_m" << YAML::Value << file_two_m(g.factor1.kind, o.reps.xi, o.m);
    e << YAML::Key << "two_n" << YAML::Value << file_two_m(g.factor1.kind, o.reps.xi, o.n);
    e << YAML::Key << "eta" << YAML::Value << index_to_string(o.reps.eta);
    e << YAML::Key << "two_r" << YAML::Value << file_two_m(g.factor2.kind, o.reps.eta, o.r);
    e << YAML::Key << "two_s" << YAML::Value << file_two_m(g.factor2.kind, o.reps.eta, o.s);
    e << YAML::Key << "magnitude" << YAML::Value << num(o.magnitude);
    e << YAML::EndMap;
  }
  e << YAML::EndSeq << YAML::EndMap;
}

double max_entry(const FourierTable& t) {
  double m = 0;
  for (const auto& [key, b] : t.blocks())
    for (const cplx& v : b.data) m = std::max(m, std::abs(v));
  return m;
}

CommandResult parse_failure(const std::exception& e) { return {kExitParseError, std::string("error: ") + e.what() + "\n"}; }
CommandResult failure(const std::exception& e) { return {kExitFailedChecks, std::string("error: ") + e.what() + "\n"}; }

std::string finish(YAML::Emitter& e) { return std::string(e.c_str()) + "\n"; }

bool expectation(const YAML::Node& node, const char* key) {
  const std::string v = node[key].as<std::string>();
  if (v == "yes" || v == "true") return true;
  if (v == "no" || v == "false") return false;
  throw ParseError(std::string("expectation '") + key + "' must be yes/no or true/false");
}

}  // namespace

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("LGH_DATA_DIR"); env && *env) return env;
  return LGH_DATA_DIR;
}

std::vector<FixtureCase> load_fixtures(const std::filesystem::path& dir) {
  const std::filesystem::path file = dir / "expectations.yaml";
  std::vector<FixtureCase> out;
  try {
    const YAML::Node root = YAML::LoadFile(file.string());
    for (const YAML::Node& n : root["fixtures"]) {
      FixtureCase c;
      c.name = n["name"].as<std::string>();
      c.spec_path = dir / n["spec"].as<std::string>();
      c.gh = expectation(n, "gh");
      c.gs = expectation(n, "gs");
      c.kernel_counterexample = expectation(n, "kernel_counterexample");
      c.nonsolvable_rhs = expectation(n, "nonsolvable_rhs");
      c.conjugation = expectation(n, "conjugation");
      out.push_back(std::move(c));
    }
  } catch (const YAML::Exception& e) {
    throw ParseError(file.string() + ": " + e.what());
  }
  return out;
}

FixtureCase find_fixture(const std::string& name) {
  for (FixtureCase& c : load_fixtures(data_dir() / "fixtures"))
    if (c.name == name) return c;
  throw ParseError("unknown example '" + name + "'");
}

std::vector<CheckResult> run_fixture(const FixtureCase& fixture) {
  const std::string p = fixture.name + ": ";
  const OperatorSpec spec = read_spec_file(fixture.spec_path);
  const DiagnosticsReport r = diagnose(spec);
  std::vector<CheckResult> out;

  const Verdict want_gh = fixture.gh ? Verdict::YesCertified : Verdict::NoCertified;
  const Verdict want_gs = fixture.gs ? Verdict::YesCertified : Verdict::NoCertified;
  out.push_back(make_flag(p + "GH " + std::string(verdict_label(want_gh)), r.gh == want_gh,
                           "got " + std::string(verdict_label(r.gh))));
  out.push_back(make_flag(p + "GS " + std::string(verdict_label(want_gs)), r.gs == want_gs,
                           "got " + std::string(verdict_label(r.gs))));
  out.push_back(make_flag(p + "GH implies GS and GH mod kernel equals GS", verdicts_consistent(r)));

  std::optional<KernelCounterexample> kernel;
  try {
    kernel = build_kernel_counterexample(r.analyzed);
  } catch (const std::invalid_argument&) {
  }
  const bool genuine = kernel && !kernel->degenerate;
  if (fixture.kernel_counterexample) {
    out.push_back(make_flag(p + "kernel counterexample present", genuine));
    if (genuine) {
      const FourierTable image = apply_operator_spectral(r.analyzed, kernel->table);
      out.push_back(make_check(p + "kernel counterexample annihilated", max_entry(image), 0.0,
                               "slots=" + std::to_string(kernel->slots)));
      const DecayFit decay = decay_classify(kernel->table);
      out.push_back(make_flag(p + "kernel counterexample non-decaying", decay.classification == DecayClass::NonDecaying,
                               std::string(decay_label(decay.classification))));
    }
  } else {
    out.push_back(make_flag(p + "no kernel counterexample", !genuine));
  }

  if (fixture.nonsolvable_rhs) {
    try {
      const NonSolvableRhs rhs = build_nonsolvable_rhs(r.analyzed, kNonsolvableDepth);
      const auto exceeding = std::count_if(rhs.slots.begin(), rhs.slots.end(), [](const auto& s) { return s.exceeds; });
      out.push_back(make_flag(p + "non-solvable right-hand side outgrows shell^3",
                               !rhs.slots.empty() && exceeding == static_cast<long>(rhs.slots.size()),
                               "slots=" + std::to_string(rhs.slots.size())));
    } catch (const std::invalid_argument& e) {
      out.push_back(make_flag(p + "non-solvable right-hand side outgrows shell^3", false, e.what()));
    }
  } else {
    bool built = true;
    try {
      build_nonsolvable_rhs(r.analyzed, kNonsolvableDepth);
    } catch (const std::invalid_argument&) {
      built = false;
    }
    out.push_back(make_flag(p + "no non-solvable right-hand side", !built));
  }

  if (fixture.conjugation) {
    const OperatorSpec reduced = with_truncation(spec, kFixtureCircleTrunc, kFixtureTwoEll);
    const ConjugatorBundle bundle = build_conjugators(reduced);
    const CohomologyResiduals c = verify_cohomology(reduced, bundle);
    out.push_back(make_check(p + "antiderivative A", c.A, 1e-10));
    if (c.Q) out.push_back(make_check(p + "antiderivative Q", *c.Q, 1e-8));
    std::mt19937_64 rng(17);
    if (!bundle.trivial_psi())
      out.push_back(make_check(p + "Psi conjugation identity", psi_conjugation_residual(reduced, bundle, 2, rng), 1e-8));
    if (bundle.Q)
      out.push_back(make_check(p + "e^Q conjugation identity", exp_conjugation_residual(reduced, bundle, 2, rng), 1e-8));
    const ManufacturedStats m = manufactured_solutions(reduced, 1, rng);
    out.push_back(make_check(p + "manufactured full solve residual", m.residual, 1e-7));
    out.push_back(make_check(p + "manufactured full solve recovers u0 off the singular set", m.mismatch, 1e-8));
  }
  return out;
}

CommandResult cmd_analyze(const AnalyzeOptions& options) {
  OperatorSpec spec;
  try {
    spec = read_spec_file(options.spec, options.truncation);
  } catch (const ParseError& e) {
    return parse_failure(e);
  }
  try {
    const DiagnosticsReport r = diagnose(spec);
    YAML::Emitter e;
    e << YAML::BeginMap;
    emit_spec(e, options.spec, spec);

    e << YAML::Key << "normal_form" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "variable" << YAML::Value << r.from_normal_form;
    e << YAML::Key << "a0" << YAML::Value << r.analyzed.a.to_string();
    e << YAML::Key << "q0" << YAML::Value << r.analyzed.q.to_string();
    e << YAML::EndMap;

    emit_verdicts(e, r);

    e << YAML::Key << "singular_set" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "finiteness" << YAML::Value << std::string(finiteness_label(r.singular.finiteness));
    e << YAML::Key << "heuristic" << YAML::Value << r.singular.heuristic;
    e << YAML::Key << "reason" << YAML::Value << r.singular.reason;
    e << YAML::Key << "count" << YAML::Value << r.singular.entries.size();
    e << YAML::Key << "entries" << YAML::Value << YAML::BeginSeq;
    for (std::size_t i = 0; i < std::min(r.singular.entries.size(), kMaxListed); ++i) {
      const SingularSetEntry& s = r.singular.entries[i];
      e << YAML::Flow << YAML::BeginMap;
      e << YAML::Key << "xi" << YAML::Value << index_to_string(s.reps.xi);
      e << YAML::Key << "eta" << YAML::Value << index_to_string(s.reps.eta);
      e << YAML::Key << "two_lambda" << YAML::Value << index_to_string(s.lambda2);
      e << YAML::Key << "two_mu" << YAML::Value << index_to_string(s.mu2);
      e << YAML::EndMap;
    }
    e << YAML::EndSeq << YAML::EndMap;

    e << YAML::Key << "floor" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "certified" << YAML::Value << r.floor.certified;
    e << YAML::Key << "C" << YAML::Value << num(r.floor.C);
    e << YAML::Key << "M" << YAML::Value << num(r.floor.M);
    e << YAML::Key << "lemma" << YAML::Value << r.floor.lemma;
    e << YAML::EndMap;

    e << YAML::Key << "fit" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "ok" << YAML::Value << r.fit.ok;
    e << YAML::Key << "C" << YAML::Value << num(r.fit.C);
    e << YAML::Key << "M" << YAML::Value << num(r.fit.M);
    e << YAML::Key << "r2" << YAML::Value << num(r.fit.r2);
    e << YAML::Key << "shells_used" << YAML::Value << r.fit.shells_used;
    e << YAML::Key << "no_polynomial_bound" << YAML::Value << r.fit.no_polynomial_bound;
    e << YAML::Key << "note" << YAML::Value << r.fit.note;
    e << YAML::EndMap;

    e << YAML::Key << "liouville_witnesses" << YAML::Value << YAML::BeginSeq;
    for (const LiouvilleWitness& w : r.witnesses) {
      e << YAML::Flow << YAML::BeginMap;
      e << YAML::Key << "j" << YAML::Value << w.j;
      e << YAML::Key << "k" << YAML::Value << w.k.str();
      e << YAML::Key << "l" << YAML::Value << w.l.str();
      e << YAML::Key << "gap" << YAML::Value << rational_to_string(w.gap);
      e << YAML::Key << "log_gap" << YAML::Value << num(w.log_gap);
      e << YAML::Key << "log_shell" << YAML::Value << num(w.log_shell);
      e << YAML::Key << "exponent" << YAML::Value << num(w.exponent);
      e << YAML::EndMap;
    }
    e << YAML::EndSeq;

    e << YAML::Key << "shell_profile" << YAML::Value << YAML::BeginSeq;
    for (const ShellMinimum& s : r.profile.shells) {
      e << YAML::Flow << YAML::BeginMap;
      e << YAML::Key << "shell" << YAML::Value << num(s.shell);
      e << YAML::Key << "gap" << YAML::Value << num(s.gap);
      e << YAML::Key << "log_gap" << YAML::Value << num(s.log_gap);
      e << YAML::Key << "two_lambda" << YAML::Value << index_to_string(s.lambda2);
      e << YAML::Key << "two_mu" << YAML::Value << index_to_string(s.mu2);
      e << YAML::Key << "certified" << YAML::Value << s.certified;
      e << YAML::Key << "witness" << YAML::Value << s.witness;
      e << YAML::EndMap;
    }
    e << YAML::EndSeq;

    e << YAML::Key << "kernel_counterexample" << YAML::Value << YAML::BeginMap;
    try {
      const KernelCounterexample k = build_kernel_counterexample(r.analyzed);
      const DecayFit decay = decay_classify(k.table);
      e << YAML::Key << "present" << YAML::Value << !k.degenerate;
      e << YAML::Key << "slots" << YAML::Value << k.slots;
      e << YAML::Key << "degenerate" << YAML::Value << k.degenerate;
      e << YAML::Key << "image_max" << YAML::Value << num(max_entry(apply_operator_spectral(r.analyzed, k.table)));
      e << YAML::Key << "decay" << YAML::Value << std::string(decay_label(decay.classification));
      e << YAML::Key << "decay_slope" << YAML::Value << num(decay.slope);
      e << YAML::Key << "note" << YAML::Value << k.note;
    } catch (const std::invalid_argument& ex) {
      e << YAML::Key << "present" << YAML::Value << false;
      e << YAML::Key << "note" << YAML::Value << ex.what();
    }
    e << YAML::EndMap;

    e << YAML::Key << "nonsolvable_rhs" << YAML::Value << YAML::BeginMap;
    try {
      const NonSolvableRhs rhs = build_nonsolvable_rhs(r.analyzed, kNonsolvableDepth);
      e << YAML::Key << "present" << YAML::Value << true;
      e << YAML::Key << "depth" << YAML::Value << rhs.depth;
      e << YAML::Key << "slots" << YAML::Value << YAML::BeginSeq;
      for (const NonSolvableSlot& s : rhs.slots) {
        e << YAML::Flow << YAML::BeginMap;
        e << YAML::Key << "k" << YAML::Value << s.witness.k.str();
        e << YAML::Key << "l" << YAML::Value << s.witness.l.str();
        e << YAML::Key << "log_solution" << YAML::Value << num(s.log_solution);
        e << YAML::Key << "log_shell" << YAML::Value << num(s.witness.log_shell);
        e << YAML::Key << "exceeds" << YAML::Value << s.exceeds;
        e << YAML::EndMap;
      }
      e << YAML::EndSeq;
    } catch (const std::invalid_argument& ex) {
      e << YAML::Key << "present" << YAML::Value << false;
      e << YAML::Key << "note" << YAML::Value << ex.what();
    }
    e << YAML::EndMap;

    e << YAML::Key << "notes" << YAML::Value << YAML::BeginSeq;
    for (const std::string& n : r.notes) e << n;
    e << YAML::EndSeq;
    e << YAML::EndMap;

    const bool certified = is_certified(r.gh) && is_certified(r.gs);
    return {options.require_certified && !certified ? kExitInconclusive : kExitOk, finish(e)};
  } catch (const std::exception& ex) {
    return failure(ex);
  }
}

CommandResult cmd_solve(const std::filesystem::path& spec_path, const std::filesystem::path& rhs_path,
                        const std::filesystem::path& out) {
  OperatorSpec spec;
  FourierTable f;
  try {
    spec = read_spec_file(spec_path);
    const std::string text = read_text_file(rhs_path);
    if (has_grid_header(text)) {
      try {
        f = *FieldFunction::from_samples(parse_grid(text), spec.group, "rhs").table();
      } catch (const ParseError&) {
        throw;
      } catch (const std::exception& e) {
        throw ParseError(std::string("right-hand side: ") + e.what());
      }
    } else {
      f = parse_coef(text);
    }
    if (f.group().factor1.kind != spec.group.factor1.kind || f.group().factor2.kind != spec.group.factor2.kind)
      throw ParseError("right-hand side factors do not match the spec");
    spec.group = f.group();
  } catch (const ParseError& e) {
    return parse_failure(e);
  }

  YAML::Emitter e;
  e << YAML::BeginMap;
  emit_spec(e, spec_path, spec);
  e << YAML::Key << "rhs" << YAML::Value << rhs_path.filename().string();
  try {
    const FullSolution sol = solve_full(spec, f);
    const FullSolveReport& rep = sol.report;
    const double drop = rep.constant_path ? 0.0 : 1e-15 * max_entry(sol.coefficients);
    write_text_file(out, coef_to_string(sol.coefficients, drop));
    e << YAML::Key << "solution" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "file" << YAML::Value << out.filename().string();
    e << YAML::Key << "path" << YAML::Value << (rep.constant_path ? "constant" : "normal-form chain");
    emit_group(e, rep.work_group);
    if (!rep.constant_path) {
      e << YAML::Key << "work_grid" << YAML::Value << rep.work_grid;
      e << YAML::Key << "oversampling" << YAML::Value << rep.oversampling;
      e << YAML::Key << "extra_band1" << YAML::Value << rep.extra1;
      e << YAML::Key << "extra_band2" << YAML::Value << rep.extra2;
      e << YAML::Key << "Q_source" << YAML::Value << rep.Q_source;
      e << YAML::Key << "transported_norm" << YAML::Value << num(rep.transported_norm);
    }
    e << YAML::Key << "residual" << YAML::Value << num(rep.residual);
    e << YAML::Key << "admissible" << YAML::Value << rep.admissibility.admissible;
    e << YAML::Key << "heuristic_zeros" << YAML::Value << rep.admissibility.heuristic;
    e << YAML::EndMap << YAML::EndMap;
    return {kExitOk, finish(e)};
  } catch (const NotAdmissible& ex) {
    emit_offending(e, f.group(), ex.report());
    e << YAML::EndMap;
    return {kExitNotAdmissible, finish(e)};
  } catch (const std::exception& ex) {
    return failure(ex);
  }
}

CommandResult cmd_normal_form(const std::filesystem::path& spec_path, const TruncationOverride& truncation) {
  OperatorSpec spec;
  try {
    spec = read_spec_file(spec_path, truncation);
  } catch (const ParseError& e) {
    return parse_failure(e);
  }
  try {
    const ConjugatorBundle b = build_conjugators(spec);
    const CohomologyResiduals c = verify_cohomology(spec, b);
    const OperatorSpec reduced = with_truncation(spec, kFixtureCircleTrunc, kFixtureTwoEll);
    const ConjugatorBundle br = build_conjugators(reduced);
    std::mt19937_64 rng(7);
    const double psi = psi_conjugation_residual(reduced, br, 3, rng);
    const double ex = exp_conjugation_residual(reduced, br, 3, rng);
    const DiagnosticsReport r = diagnose(spec);

    YAML::Emitter e;
    e << YAML::BeginMap;
    emit_spec(e, spec_path, spec);
    e << YAML::Key << "bundle" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "a0" << YAML::Value << b.a0.to_string();
    e << YAML::Key << "q0" << YAML::Value << b.q0.to_string();
    e << YAML::Key << "A_degree" << YAML::Value << b.degree();
    e << YAML::Key << "A" << YAML::Value << YAML::BeginSeq;
    for (int k = -b.degree(); k <= b.degree(); ++k) {
      const cplx v = b.A[static_cast<std::size_t>(k + b.degree())];
      e << YAML::Flow << YAML::BeginMap << YAML::Key << "k" << YAML::Value << k << YAML::Key << "re" << YAML::Value
        << num(v.real()) << YAML::Key << "im" << YAML::Value << num(v.imag()) << YAML::EndMap;
    }
    e << YAML::EndSeq;
    e << YAML::Key << "max_abs_A" << YAML::Value << num(b.max_abs_A);
    e << YAML::Key << "Q_source" << YAML::Value << b.Q_source;
    e << YAML::Key << "oversampling" << YAML::Value << b.oversampling;
    e << YAML::Key << "exp_band1" << YAML::Value << b.exp_profile1.band(kSpectralTail);
    e << YAML::Key << "exp_band2" << YAML::Value << b.exp_profile2.band(kSpectralTail);
    e << YAML::EndMap;

    e << YAML::Key << "residuals" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "antiderivative_A" << YAML::Value << num(c.A);
    if (c.Q) e << YAML::Key << "antiderivative_Q" << YAML::Value << num(*c.Q);
    emit_group(e, reduced.group);
    e << YAML::Key << "inputs" << YAML::Value << 3;
    e << YAML::Key << "psi_conjugation" << YAML::Value << num(psi);
    e << YAML::Key << "exp_conjugation" << YAML::Value << num(ex);
    e << YAML::EndMap;
    emit_verdicts(e, r);
    e << YAML::EndMap;
    return {kExitOk, finish(e)};
  } catch (const std::exception& ex) {
    return failure(ex);
  }
}

CommandResult cmd_example(const std::string& name) {
  try {
    const std::vector<CheckResult> checks = run_fixture(find_fixture(name));
    std::string out;
    for (const CheckResult& c : checks) out += format_check(c) + "\n";
    return {all_pass(checks) ? kExitOk : kExitFailedChecks, out};
  } catch (const ParseError& e) {
    return parse_failure(e);
  } catch (const std::exception& e) {
    return failure(e);
  }
}

std::vector<std::string> verify_suites() { return {"plancherel", "unitarity", "symbols", "conjugation", "oracle-gaps"}; }

CommandResult cmd_verify(const std::string& suite) {
  std::vector<CheckResult> checks;
  try {
    if (suite == "plancherel") {
      checks.push_back(plancherel_check("plancherel T2", {{GroupKind::Circle, kDefaultCircleTrunc}, {GroupKind::Circle, kDefaultCircleTrunc}}, 100, 1));
      checks.push_back(plancherel_check("plancherel T1xS3", {{GroupKind::Circle, kDefaultCircleTrunc}, {GroupKind::SU2, kDefaultTwoEll}}, 100, 2));
      checks.push_back(plancherel_check("plancherel S3", {{GroupKind::Trivial, 0}, {GroupKind::SU2, kDefaultTwoEll}}, 100, 3));
    } else if (suite == "unitarity") {
      checks.push_back(su2_unitarity_check(12, 20, 1));
      checks.push_back(su2_homomorphism_check(12, 20, 2));
      checks.push_back(su2_orthonormality_check(12));
      checks.push_back(su2_dpsi_check(12, 10, 3));
    } else if (suite == "symbols") {
      checks = symbol_checks(11);
    } else if (suite == "conjugation") {
      std::mt19937_64 rng(19);
      for (const FixtureCase& fx : load_fixtures(data_dir() / "fixtures")) {
        if (!fx.conjugation) continue;
        const OperatorSpec spec = with_truncation(read_spec_file(fx.spec_path), kFixtureCircleTrunc, kFixtureTwoEll);
        const ConjugatorBundle b = build_conjugators(spec);
        const CohomologyResiduals c = verify_cohomology(spec, b);
        checks.push_back(make_check(fx.name + " antiderivative A", c.A, 1e-10));
        if (c.Q) checks.push_back(make_check(fx.name + " antiderivative Q", *c.Q, 1e-8));
        if (!b.trivial_psi())
          checks.push_back(make_check(fx.name + " Psi conjugation", psi_conjugation_residual(spec, b, 10, rng), 1e-8));
        if (b.Q) checks.push_back(make_check(fx.name + " e^Q conjugation", exp_conjugation_residual(spec, b, 10, rng), 1e-8));
      }
    } else if (suite == "oracle-gaps") {
      checks.push_back(rational_gap_oracle(BigRational(2, 3), 500));
      checks.push_back(rational_gap_oracle(BigRational(-7, 5), 500));
      checks.push_back(sqrt2_gap_oracle(200));
    } else {
      return {kExitParseError, "error: unknown suite '" + suite + "'\n"};
    }
  } catch (const ParseError& e) {
    return parse_failure(e);
  } catch (const std::exception& e) {
    return failure(e);
  }
  std::string out;
  for (const CheckResult& c : checks) out += format_check(c) + "\n";
  return {all_pass(checks) ? kExitOk : kExitFailedChecks, out};
}

}  // namespace lgh
