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
#include <numbers>
#include <string>
#include <vector>

#include "corrhss/channels.hpp"
#include "corrhss/hss.hpp"
#include "corrhss/qmat.hpp"
#include "corrhss/reservoirs.hpp"

namespace corrhss {

enum class ModelTag { dephasing, squeezed, depolarizing, ad };
enum class ClosedFormBasis { standard, bell, hadamard };

ModelTag model_tag(const ReservoirModel& model);

/// One published two-qubit HSS expression.
struct ClosedFormId {
  ModelTag model = ModelTag::dephasing;
  ClosedFormBasis basis = ClosedFormBasis::standard;

  std::string str() const;        // e.g. "dephasing_bell"
  std::string basis_str() const;  // "standard" | "bell" | "hadamard"

  /// Every published combination, standard forms first.
  static std::vector<ClosedFormId> all();
};

/// Published expression evaluated as printed. `model` supplies the reservoir
/// parameters and must match id.model. phi is ignored by formulas without it.
/// A negative radicand yields the real part of the complex root, i.e. 0.
double hss_closed_form(const ClosedFormId& id, const ReservoirModel& model, double mu,
                       double tau, double phi);

/// The dephasing exponent exactly as printed: cos(theta) multiplies the whole
/// sinh(2r) bracket. Real only when sin(theta) = 0.
complex gamma_sv_printed(double tau, const SqueezedVacuumOhmic& params);

/// Direct adaptive quadrature of the defining integral over (0, 40 * cutoff].
double gamma_sv_quadrature(double tau, const SqueezedVacuumOhmic& params);

/// Central difference of the Hilbert-Schmidt distance between the evolved
/// states at phi +- eps, divided by 2 eps.
double finite_difference_hss(const CorrelatedChannelSpec& spec, const PhaseFamily& family,
                             double tau, double eps = 1e-6);

/// Kraus sum built by brute force: every Pauli tuple (or amplitude-damping
/// product) materialized as a dense operator with kron. n <= 4.
ComplexMatrix dense_reference_apply(const CorrelatedChannelSpec& spec, double tau,
                                    const ComplexMatrix& x);

struct AuditRow {
  std::string formula_id;
  std::string basis;
  double max_abs_dev = 0.0;
  std::size_t grid_points = 0;
  bool binding = false;
  bool pass = false;
};

struct AuditOptions {
  ColoredDephasing dephasing{1.0};
  SqueezedVacuumOhmic squeezed{0.5, 4.0, 0.5, 1.5 * std::numbers::pi};
  ColoredDepolarizing depolarizing{0.5};
  LorentzianAmplitudeDamping ad{4.0};
  double tolerance = 1e-6;
  std::size_t threads = 1;
};

/// Compares every published form against finite_difference_hss over
/// mu in {0, .25, .5, .75, 1} x 50 tau values. Standard forms at phi = pi and
/// the dephasing Bell form at phi = 0 are binding; the rest are report-only
/// over phi in {0, pi/4, pi/2, pi}. A final report-only row compares the
/// printed squeezed exponent with quadrature.
std::vector<AuditRow> formula_audit(const AuditOptions& options = {});

/// Parameters used for the given model tag in an audit.
ReservoirModel audit_model(ModelTag tag, const AuditOptions& options);

/// The 50 tau values the audit uses for a model.
std::vector<double> audit_tau_grid(ModelTag tag);

}  // namespace corrhss
