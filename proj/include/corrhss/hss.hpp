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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "corrhss/channels.hpp"
#include "corrhss/qmat.hpp"
#include "corrhss/reservoirs.hpp"

namespace corrhss {

/// Flat stretches of an HSS curve closer than this are not counted as growth.
inline constexpr double kTieEps = 1e-13;

enum class BasisKind {
  standard,
  bell,      // two qubits
  hadamard,  // two qubits
  local,     // two qubits: phase family confined to qubit 1
  random,    // Haar-distributed, seeded
};

/// Identifies a basis rotation. Ordering follows catalog order.
struct BasisId {
  BasisKind kind = BasisKind::standard;
  std::uint32_t index = 0;  // random bases only

  std::string str() const;
  /// Accepts standard | bell | hadamard | local | random:<k>.
  static BasisId parse(const std::string& text);

  friend auto operator<=>(const BasisId&, const BasisId&) = default;
};

/// splitmix64-derived seed for the k-th random basis; independent of how
/// many other bases are requested.
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t k);

/// Haar-random unitary via QR of a complex Gaussian matrix, with the phases
/// of R's diagonal folded back into Q.
ComplexMatrix haar_unitary(std::size_t dim, std::uint64_t seed);

/// Unitary whose k-th column is the k-th basis vector |psi_k>.
ComplexMatrix basis_rotation(const BasisId& id, std::size_t n, std::uint64_t seed = 0);

/// One-parameter family |psi(phi)> = (e^{i phi}|psi_1> + |psi_2> + ... + |psi_N>)/sqrt(N)
/// with |psi_k> = U|k>.
struct PhaseFamily {
  std::size_t n = 2;
  ComplexMatrix rotation;
  double phi = 0.0;
  BasisId basis;
};

PhaseFamily make_family(const BasisId& id, std::size_t n, double phi, std::uint64_t seed = 0);

DensityOperator initial_state(const PhaseFamily& family);

/// d rho / d phi, Hermitian and traceless.
ComplexMatrix phase_derivative(const PhaseFamily& family);

/// HSS of the evolved family: frobenius_hss_norm of the channel applied to
/// d rho / d phi (the channel is linear and phi-independent).
double hss_value(const CorrelatedChannelSpec& spec, const PhaseFamily& family, double tau);
double hss_value(const CorrelatedChannel& channel, const PhaseFamily& family);

struct HssCurve {
  std::vector<double> tau;
  std::vector<double> values;
};

/// tau_k = k * step for k = 0 .. round(tau_max / step).
std::vector<double> make_tau_grid(double tau_max, double step);

/// [0, 30] step 0.01, or [0, 3] step 0.001 for the squeezed-vacuum model.
std::vector<double> default_tau_grid(const ReservoirModel& model);

/// 24 equally spaced phases on [0, 2 pi).
std::vector<double> default_phi_grid(std::size_t count = 24);

HssCurve hss_curve(const CorrelatedChannelSpec& spec, const PhaseFamily& family,
                   std::span<const double> tau_grid, std::size_t threads = 1);

/// One curve per mu; single-use noise is evaluated once per tau and shared.
std::vector<HssCurve> hss_curves(const ReservoirModel& model, std::size_t n,
                                 std::span<const double> mus, const PhaseFamily& family,
                                 std::span<const double> tau_grid, std::size_t threads = 1);

struct WitnessSegments {
  std::vector<std::pair<double, double>> intervals;
};

/// Maximal runs of strict growth HSS(tau_{k+1}) > HSS(tau_k) + tie_eps,
/// reported as (tau at the start of the run, tau where growth stops).
WitnessSegments chi_segments(const HssCurve& curve, double tie_eps = kTieEps);

/// Integral of the positive part of the derivative on the piecewise-linear
/// interpolant: sum of increments larger than tie_eps.
double positive_increment_sum(std::span<const double> values, double tie_eps = kTieEps);

struct CatalogEntry {
  BasisId id;
  ComplexMatrix rotation;
};

/// standard; bell, hadamard and local when n == 2; then random:0..random_count-1.
std::vector<CatalogEntry> default_catalog(std::size_t n, std::uint64_t seed,
                                          std::size_t random_count = 32);
std::vector<CatalogEntry> make_catalog(std::span<const BasisId> ids, std::size_t n,
                                       std::uint64_t seed);

struct MeasureResult {
  double value = 0.0;
  BasisId basis;
  double phi = 0.0;
};

/// Non-Markovianity measure: max over catalog x phi grid of the positive
/// increment sum of the HSS curve. Ties keep the earliest catalog entry and
/// the smallest phi.
MeasureResult nm_measure(const CorrelatedChannelSpec& spec, std::span<const CatalogEntry> catalog,
                         std::span<const double> phi_grid, std::span<const double> tau_grid,
                         std::size_t threads = 1);

/// HSS at mu = 1 minus HSS at mu = 0, both at tau_star.
double delta_range(const ReservoirModel& model, std::size_t n, double tau_star,
                   const PhaseFamily& family);

}  // namespace corrhss
