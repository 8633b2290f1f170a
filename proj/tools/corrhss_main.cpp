// Copyright 2026 The corrhss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: curve, measure, delta and validate subcommands.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "corrhss/errors.hpp"
#include "corrhss/runner.hpp"

namespace {

using namespace corrhss;

struct Flags {
  std::string config;
  std::string model;
  double nu = 0, alpha = 0, s = 0, r = 0, theta_dep = 0, a = 0;
  std::string theta_sq;
  std::string n;
  std::vector<double> mu;
  double tau_max = 0, tau_step = 0, tau_star = 0;
  std::vector<std::string> basis;
  std::vector<std::string> phi;
  std::size_t random_bases = 0;
  std::size_t max_qubits = 0;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::string out;
  double perturb = 0.0;
};

void add_sweep_flags(CLI::App& app, Flags& f) {
  app.add_option("--config", f.config, "JSON config; flags given here override it");
  app.add_option("--model", f.model, "dephasing | squeezed | depolarizing | ad");
  app.add_option("--nu", f.nu, "dephasing: coupling ratio");
  app.add_option("--alpha", f.alpha, "squeezed: coupling strength");
  app.add_option("--s", f.s, "squeezed: Ohmicity (> 1)");
  app.add_option("--r", f.r, "squeezed: squeezing strength");
  app.add_option("--theta-sq", f.theta_sq, "squeezed: squeezing angle (radians or e.g. 3pi/2)");
  app.add_option("--theta-dep", f.theta_dep, "depolarizing: coupling");
  app.add_option("--a", f.a, "ad: coupling ratio");
  app.add_option("--n", f.n, "qubit counts, e.g. 2, 2-8 or 2,4");
  app.add_option("--mu", f.mu, "memory coefficients, comma separated")->delimiter(',');
  app.add_option("--tau-max", f.tau_max, "end of the tau grid");
  app.add_option("--tau-step", f.tau_step, "tau grid spacing");
  app.add_option("--tau-star", f.tau_star, "evaluation time for delta");
  app.add_option("--basis", f.basis, "standard,bell,hadamard,local,random or random:<k>")
      ->delimiter(',');
  app.add_option("--phi", f.phi, "phases, comma separated (radians or e.g. pi/2)")->delimiter(',');
  app.add_option("--random-bases", f.random_bases, "how many bases 'random' expands to");
  app.add_option("--max-qubits", f.max_qubits, "upper bound on n for delta (<= 10)");
  app.add_option("--seed", f.seed, "seed for random bases");
  app.add_option("--threads", f.threads, "worker threads");
  app.add_option("--out", f.out, "output CSV path (default: stdout)");
}

SweepSpec build_spec(const CLI::App& app, const Flags& f, const std::string& command) {
  SweepSpec spec;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw IoError("cannot read config '" + f.config + "'");
    std::stringstream text;
    text << in.rdbuf();
    spec = spec_from_json(text.str());
  }
  auto given = [&](const char* name) { return app.count(name) > 0; };
  if (given("--model")) spec.model = f.model;
  if (given("--nu")) spec.nu = f.nu;
  if (given("--alpha")) spec.alpha = f.alpha;
  if (given("--s")) spec.s = f.s;
  if (given("--r")) spec.r = f.r;
  if (given("--theta-sq")) spec.theta_sq = parse_angle(f.theta_sq);
  if (given("--theta-dep")) spec.theta_dep = f.theta_dep;
  if (given("--a")) spec.a = f.a;
  if (given("--n")) spec.n = parse_n_list(f.n);
  if (given("--mu")) spec.mu = f.mu;
  if (given("--tau-max")) spec.tau_max = f.tau_max;
  if (given("--tau-step")) spec.tau_step = f.tau_step;
  if (given("--tau-star")) spec.tau_star = f.tau_star;
  if (given("--basis")) spec.basis = f.basis;
  if (given("--phi")) {
    spec.phi.clear();
    for (const auto& p : f.phi) spec.phi.push_back(parse_angle(p));
  }
  if (given("--random-bases")) spec.random_bases = f.random_bases;
  if (given("--max-qubits")) spec.max_qubits = f.max_qubits;
  if (given("--seed")) spec.seed = f.seed;
  if (given("--threads")) spec.threads = f.threads;
  if (given("--out")) spec.out = f.out;
  if (!spec.command.empty() && spec.command != command)
    throw InvalidSpec("config is for '" + spec.command + "', not '" + command + "'");
  return spec;
}

int run_sweep(const SweepSpec& spec, Command command) {
  resolve(spec, command);  // reject bad specs before touching the output file
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!spec.out.empty()) {
    file.open(spec.out, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open '" + spec.out + "' for writing");
    out = &file;
  }
  *out << kCsvHeader << '\n';
  const RowSink sink = [&](const Row& row) { *out << csv_line(row) << '\n'; };
  switch (command) {
    case Command::curve: run_curve(spec, sink); break;
    case Command::measure: run_measure(spec, sink); break;
    case Command::delta: run_delta(spec, sink); break;
    case Command::validate: break;
  }
  out->flush();
  if (!*out) throw IoError("write failed");
  return kExitOk;
}

int run_validate_command(const Flags& f) {
  ValidateOptions options;
  options.threads = f.threads;
  options.fast_path_perturbation = f.perturb;
  const ValidationReport report = run_validate(options);
  for (const auto& c : report.checks) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << (c.binding ? "binding " : "report  ") << c.name
              << "  max_dev=" << format_number(c.max_dev);
    if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
    std::cout << '\n';
  }
  if (!f.out.empty()) {
    std::ofstream file(f.out, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open '" + f.out + "' for writing");
    file << audit_csv(report.audit);
    if (!file) throw IoError("write failed");
  }
  const bool ok = report.passed();
  std::cout << (ok ? "validation passed\n" : "validation FAILED\n");
  return ok ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corrhss: Hilbert-Schmidt speed of correlated multiqubit channels"};
  app.require_subcommand(1);
  Flags curve_flags, measure_flags, delta_flags, validate_flags;
  auto* curve = app.add_subcommand("curve", "HSS versus tau");
  auto* measure = app.add_subcommand("measure", "non-Markovianity measure versus mu");
  auto* delta = app.add_subcommand("delta", "range of variation versus qubit count");
  auto* validate = app.add_subcommand("validate", "oracle and invariant suite");
  add_sweep_flags(*curve, curve_flags);
  add_sweep_flags(*measure, measure_flags);
  add_sweep_flags(*delta, delta_flags);
  validate->add_option("--out", validate_flags.out, "audit CSV path");
  validate->add_option("--threads", validate_flags.threads, "worker threads");
  validate->add_option("--perturb-fast-path", validate_flags.perturb,
                       "testing hook: offset added to fast-path results")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidSpec;
  }

  try {
    if (*validate) return run_validate_command(validate_flags);
    if (*curve) return run_sweep(build_spec(*curve, curve_flags, "curve"), Command::curve);
    if (*measure) return run_sweep(build_spec(*measure, measure_flags, "measure"), Command::measure);
    if (*delta) return run_sweep(build_spec(*delta, delta_flags, "delta"), Command::delta);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalidSpec;
  }
  return kExitInvalidSpec;
}
