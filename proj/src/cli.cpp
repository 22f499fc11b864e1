#include "gpb/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "gpb/checks.hpp"
#include "gpb/serialization.hpp"

namespace gpb {

namespace {

struct RunConfig {
  std::string params;
  std::string params_b;
  std::string certificate;
  std::string out;
  std::uint64_t seed = kDefaultSeed;
  std::optional<double> tol;
  std::optional<int> samples;
  int n = 0;
  int pairs = 10;
  int probes = 5;
  bool quadrature = false;
  CatalogChoices choices;
};

struct Outcome {
  Json result;
  int code = kExitPass;
};

Json envelope(const std::string& command, const RunConfig& cfg, const Outcome& o) {
  return {{"tool", "gpb"},
          {"version", kToolVersion},
          {"command", command},
          {"seed", cfg.seed},
          {"pass", o.code == kExitPass},
          {"result", o.result}};
}

DilationParams load_params(const std::string& path, const ValidationOptions& vo) {
  if (path.empty()) throw InputError("missing --params");
  return validated(params_from_json(read_json_file(path)), vo);
}

Json checks_to_json(const std::vector<CheckResult>& results, const DilationParams& params) {
  Json out = Json::array();
  for (const auto& r : results)
    out.push_back(check_record(r.check, params, r.worst ? &*r.worst : nullptr, r.max_error, r.tolerance));
  return out;
}

/// Validation failure as a domain outcome.
Outcome invalid(const DilationParams& params) {
  return {{{"params", params_to_json(params)}, {"validation", validation_to_json(*params.validation)}}, kExitDomain};
}

ProfileOptions profile_options(const RunConfig& cfg) {
  ProfileOptions po;
  if (cfg.samples) {
    if (*cfg.samples <= 0) throw InputError("--samples must be positive");
    po.samples = *cfg.samples;
    po.grid = 12 * po.samples;
  }
  if (cfg.tol) po.match_tol = *cfg.tol;
  return po;
}

Outcome cmd_validate(const RunConfig& cfg) {
  ValidationOptions vo;
  if (cfg.tol) vo.commute_tol = *cfg.tol;
  const DilationParams params = load_params(cfg.params, vo);
  return {validation_to_json(*params.validation), params.validation->ok() ? kExitPass : kExitDomain};
}

Outcome cmd_invariants(const RunConfig& cfg) {
  const DilationParams params = load_params(cfg.params, {});
  if (!params.validation->ok()) return invalid(params);
  return {invariants_to_json(invariant_vector(params, profile_options(cfg))), kExitPass};
}

Outcome cmd_classify(const RunConfig& cfg) {
  if (cfg.params_b.empty()) throw InputError("missing --params-b");
  const DilationParams a = load_params(cfg.params, {});
  const DilationParams b = load_params(cfg.params_b, {});
  if (!a.validation->ok()) return invalid(a);
  if (!b.validation->ok()) return invalid(b);

  const ProfileOptions po = profile_options(cfg);
  const auto witness = refute_isomorphism(invariant_vector(a, po), invariant_vector(b, po));
  Json result;
  if (witness) result["witness"] = *witness;

  if (!cfg.certificate.empty()) {
    const Certificate cert = certificate_from_json(read_json_file(cfg.certificate));
    CertificateReport report;
    try {
      report = verify_certificate(a, b, cert, cfg.tol.value_or(1e-8));
    } catch (const CertificateError& e) {
      throw InputError(e.what());
    }
    result["certificate"] = certificate_report_to_json(report);
    result["verdict"] = report.ok ? "certified" : "rejected";
    return {result, report.ok ? kExitPass : kExitDomain};
  }
  result["verdict"] = witness ? "refuted" : "inconclusive";
  return {result, kExitPass};
}

Outcome cmd_catalog(const RunConfig& cfg) {
  if (cfg.n != 0 && cfg.n != 1 && cfg.n != 2) throw InputError("--n must be 1 or 2");
  const ProfileOptions po = profile_options(cfg);
  Json reports = Json::array();
  bool pass = true;
  for (int n : {1, 2}) {
    if (cfg.n != 0 && cfg.n != n) continue;
    std::vector<CatalogEntry> entries;
    try {
      entries = catalog(n, cfg.choices);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
    const SeparationReport report = separation_report(entries, po);
    Json j = separation_to_json(report);
    j["n"] = n;
    Json validation = Json::array();
    for (const auto& e : entries) validation.push_back(validation_to_json(*e.params.validation));
    j["validation"] = validation;
    pass = pass && report.inconclusive_off_diagonal() == 0;
    reports.push_back(j);
  }
  return {reports, pass ? kExitPass : kExitDomain};
}

Outcome cmd_fuzz(const RunConfig& cfg) {
  const DilationParams params = load_params(cfg.params, {});
  if (!params.validation->ok()) return invalid(params);
  GroupCheckConfig gc;
  const int count = cfg.samples.value_or(1000);
  if (count <= 0) throw InputError("--samples must be positive");
  gc.law_pairs = gc.exp_pairs = gc.embed_pairs = count;
  gc.seed = cfg.seed;
  if (cfg.tol) gc.law_tol = gc.exp_tol = gc.embed_tol = *cfg.tol;
  auto results = group_checks(params, gc);
  const auto lie = lie_checks(params);
  results.insert(results.end(), lie.begin(), lie.end());
  return {checks_to_json(results, params), all_pass(results) ? kExitPass : kExitDomain};
}

Outcome cmd_repcheck(const RunConfig& cfg) {
  const DilationParams params = load_params(cfg.params, {});
  if (!params.validation->ok()) return invalid(params);
  RepCheckConfig rc;
  rc.points = cfg.samples.value_or(200);
  if (rc.points <= 0 || cfg.pairs <= 0 || cfg.probes <= 0) throw InputError("sample counts must be positive");
  rc.pairs = cfg.pairs;
  rc.probes = cfg.probes;
  rc.seed = cfg.seed;
  if (cfg.tol) rc.tolerance = *cfg.tol;
  rc.unitarity_elements = cfg.quadrature ? 1 : 0;
  const auto results = rep_checks(params, rc);
  return {checks_to_json(results, params), all_pass(results) ? kExitPass : kExitDomain};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extensions of the Heisenberg group: validation, invariants, classification and checks", "gpb"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  RunConfig cfg;

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_option("--tol", cfg.tol, "Tolerance override");
    sub->add_option("--out", cfg.out, "Write the JSON report to this file");
  };
  auto add_params = [&cfg](CLI::App* sub) { sub->add_option("--params", cfg.params, "Parameter file")->required(); };

  CLI::App* validate = app.add_subcommand("validate", "Check commutation and the embedding conditions");
  add_params(validate);
  add_common(validate);

  CLI::App* invariants = app.add_subcommand("invariants", "Compute the isomorphism invariants");
  add_params(invariants);
  add_common(invariants);
  invariants->add_option("--samples", cfg.samples, "Pencil profile samples");

  CLI::App* classify = app.add_subcommand("classify", "Compare two parameter sets");
  add_params(classify);
  classify->add_option("--params-b", cfg.params_b, "Second parameter file")->required();
  classify->add_option("--certificate", cfg.certificate, "Certificate file {A, S}");
  classify->add_option("--samples", cfg.samples, "Pencil profile samples");
  add_common(classify);

  CLI::App* cat = app.add_subcommand("catalog", "Separation report for the n = 1, 2 classes");
  cat->add_option("--n", cfg.n, "Restrict to n = 1 or 2");
  cat->add_option("--b", cfg.choices.b, "Values of b")->delimiter(',');
  cat->add_option("--d", cfg.choices.d, "Values of d")->delimiter(',');
  cat->add_option("--a", cfg.choices.a, "Values of a")->delimiter(',');
  cat->add_option("--c", cfg.choices.c, "Values of c")->delimiter(',');
  cat->add_option("--rotation-b", cfg.choices.rotation_b, "Values of b on the rotation row")->delimiter(',');
  cat->add_option("--samples", cfg.samples, "Pencil profile samples");
  add_common(cat);

  CLI::App* fuzz = app.add_subcommand("fuzz", "Group axioms against the matrix model");
  add_params(fuzz);
  fuzz->add_option("--samples", cfg.samples, "Random pairs (default 1000)");
  add_common(fuzz);

  CLI::App* rep = app.add_subcommand("repcheck", "Representation and intertwining checks");
  add_params(rep);
  rep->add_option("--samples", cfg.samples, "Points per probe (default 200)");
  rep->add_option("--pairs", cfg.pairs, "Random element pairs");
  rep->add_option("--probes", cfg.probes, "Gaussian probes per pair");
  rep->add_flag("--quadrature", cfg.quadrature, "Also check norm preservation by quadrature");
  add_common(rep);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitInput;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string command = chosen->get_name();
  Outcome outcome;
  try {
    if (chosen == validate) outcome = cmd_validate(cfg);
    else if (chosen == invariants) outcome = cmd_invariants(cfg);
    else if (chosen == classify) outcome = cmd_classify(cfg);
    else if (chosen == cat) outcome = cmd_catalog(cfg);
    else if (chosen == fuzz) outcome = cmd_fuzz(cfg);
    else outcome = cmd_repcheck(cfg);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }

  const std::string text = envelope(command, cfg, outcome).dump(2) + "\n";
  if (cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream file(cfg.out);
    if (!file) {
      err << "input error: cannot write " << cfg.out << "\n";
      return kExitInput;
    }
    file << text;
  }
  return outcome.code;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace gpb
