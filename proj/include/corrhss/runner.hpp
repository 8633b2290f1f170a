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

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "corrhss/hss.hpp"
#include "corrhss/oracles.hpp"
#include "corrhss/reservoirs.hpp"

namespace corrhss {

enum class Command { curve, measure, delta, validate };

/// A sweep request. Mirrors the JSON config file key for key; empty lists
/// and unset optionals take the per-command defaults listed below.
struct SweepSpec {
  std::string model = "dephasing";  // dephasing | squeezed | depolarizing | ad
  double nu = 1.0;
  double alpha = 0.5;
  double s = 4.0;
  double r = 0.5;
  double theta_sq = 0.0;
  double theta_dep = 0.5;
  double a = 4.0;

  std::vector<std::size_t> n{2};
  std::vector<double> mu{0.0};
  std::optional<double> tau_max;   // default 30 (3 for squeezed)
  std::optional<double> tau_step;  // default 0.01 (0.001 for squeezed)
  std::optional<double> tau_star;  // default 1.62 / 0.2 / 1.6 for delta
  std::vector<std::string> basis;  // "random" expands to random:0..random_bases-1
  std::vector<double> phi;         // default pi; measure uses a 24-point grid
  std::size_t random_bases = 32;
  std::size_t max_qubits = 8;      // delta scans; hard cap kMaxQubits
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::string out;                 // empty: standard output
  std::string comment;
  std::string command;             // optional; must match the subcommand when set
};

ReservoirModel make_model(const SweepSpec& spec);

/// Reads a JSON config on top of `base`; unknown keys are rejected.
SweepSpec spec_from_json(const std::string& text, SweepSpec base = {});

/// "2", "2-8" or "2,3,5".
std::vector<std::size_t> parse_n_list(const std::string& text);

/// Angle token: a number, or "pi" with optional integer multiplier and
/// divisor, e.g. "3pi/2", "pi/4", "-pi".
double parse_angle(const std::string& token);

/// Defaults filled in, lists sorted and de-duplicated, all ranges checked.
/// Throws InvalidSpec, DomainError or UnsupportedParameter.
struct ResolvedSweep {
  Command command;
  ReservoirModel model;
  std::vector<std::size_t> n;
  std::vector<double> mu;
  std::vector<double> tau_grid;
  double tau_star = 0.0;
  std::vector<BasisId> bases;
  std::vector<double> phi;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};
ResolvedSweep resolve(const SweepSpec& spec, Command command);

struct Row {
  std::string model;
  std::size_t n = 2;
  std::optional<double> mu;
  std::optional<double> tau;
  std::string basis;
  double phi = 0.0;
  std::string kind;  // hss | n_hss | delta
  double value = 0.0;
};

using RowSink = std::function<void(const Row&)>;

/// Rows are emitted in (n, mu, basis, phi, tau) order, one n block at a time.
void run_curve(const SweepSpec& spec, const RowSink& sink);
void run_measure(const SweepSpec& spec, const RowSink& sink);
void run_delta(const SweepSpec& spec, const RowSink& sink);

std::vector<Row> collect(void (*runner)(const SweepSpec&, const RowSink&), const SweepSpec& spec);

/// 12 significant digits, '.' separator, independent of the locale.
std::string format_number(double v);

inline constexpr const char* kCsvHeader = "model,n,mu,tau,basis,phi,kind,value";
std::string csv_line(const Row& row);

struct CheckResult {
  std::string name;
  bool binding = true;
  bool pass = false;
  double max_dev = 0.0;
  std::string detail;
};

struct ValidateOptions {
  std::size_t threads = 1;
  /// Added to one entry of every fast-path result; nonzero only in mutation tests.
  double fast_path_perturbation = 0.0;
  bool run_audit = true;
  bool run_equivalence = true;
  bool run_channel_checks = true;
  bool run_hss_checks = true;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  std::vector<AuditRow> audit;
  bool passed() const;
};

ValidationReport run_validate(const ValidateOptions& options = {});

std::string audit_csv(const std::vector<AuditRow>& rows);

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitInvalidSpec = 1, kExitValidation = 2, kExitIo = 3 };

}  // namespace corrhss
