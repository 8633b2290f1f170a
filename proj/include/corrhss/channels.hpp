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

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "corrhss/qmat.hpp"
#include "corrhss/reservoirs.hpp"

namespace corrhss {

/// Largest qubit count any channel is built for.
inline constexpr std::size_t kMaxQubits = 10;

enum class NoiseKind { pauli, amplitude_damping };

/// Noise data of a single channel use at one instant.
///
/// Pauli kind: probabilities (p0, p1, p2, p3) of sigma_0..sigma_3.
/// Amplitude-damping kind: G(tau) and the Kraus pair
/// K0 = diag(1, G), K1 = sqrt(1 - G^2) |0><1|; probs is left at (1,0,0,0).
struct SingleUseNoise {
  NoiseKind kind = NoiseKind::pauli;
  std::array<double, 4> probs{1.0, 0.0, 0.0, 0.0};
  double g = 1.0;
  ComplexMatrix k0;
  ComplexMatrix k1;
};

SingleUseNoise single_use_probs(const ReservoirModel& model, double tau);

/// Weights of the Pauli strings of a correlated channel, built from the
/// Markov chain p_{i1..in} = p_{i1} prod_k [(1-mu) p_{ik} + mu delta_{ik,ik-1}].
/// Entries are kept in lexicographic order of (i1, ..., in); tuples whose
/// probability is exactly zero are never stored.
class JointDistribution {
 public:
  struct Entry {
    PauliString string;
    double prob;
  };

  JointDistribution(std::size_t n, std::vector<Entry> entries);

  std::size_t qubits() const { return n_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }
  double total_mass() const;

  /// Weight of a tuple; 0 when it is not in the support.
  double probability(const PauliString& s) const;

 private:
  std::size_t n_;
  std::vector<Entry> entries_;
};

/// Throws DomainError for mu outside [0, 1] and ContractViolation when p is
/// not a probability vector (entries >= -1e-12, sum 1 within 1e-12).
JointDistribution joint_probs(const std::array<double, 4>& p, double mu, std::size_t n);

/// Pauli channel compiled by bit-flip pattern.
///
/// Every string with flip mask x sends |j><k| to |j^x><k^x| with sign
/// (-1)^{|(j^k) & z|}; summing the weights per x gives a Walsh transform
/// f_x(d) over d = j^k, so one application costs nnz(x) * (#flip masks)
/// instead of nnz(x) * support.
class PauliTransferTable {
 public:
  explicit PauliTransferTable(const JointDistribution& dist);

  /// Builds the table straight from the Markov chain without materializing
  /// the tuples.
  static PauliTransferTable markov_chain(const std::array<double, 4>& p, double mu,
                                         std::size_t n);

  std::size_t qubits() const { return n_; }
  std::size_t group_count() const { return groups_.size(); }

  ComplexMatrix apply(const ComplexMatrix& x) const;
  ComplexMatrix apply(std::span<const MatrixEntry> entries, std::size_t dim) const;

 private:
  struct Group {
    std::uint64_t x_mask;
    std::vector<double> walsh;  // indexed by j ^ k
  };
  PauliTransferTable(std::size_t n, std::vector<double> weights);

  std::size_t n_ = 0;
  std::vector<Group> groups_;
};

enum class ApplyPath {
  fast,      // (tuple, nonzero entry) pairs via conjugate_entry
  dense,     // each Pauli string materialized with kron
  transfer,  // PauliTransferTable
};

/// Sum over tuples of p_t P_t x P_t. Linear in x; x need not be Hermitian.
ComplexMatrix apply_pauli_channel(const JointDistribution& dist, const ComplexMatrix& x,
                                  ApplyPath path = ApplyPath::fast);

/// Two-qubit correlated amplitude damping:
/// (1-mu) sum_{ij} (K_i x K_j) x (..)^dagger + mu sum_l F_l x F_l^dagger with
/// F0 = diag(1,1,1,G), F1 = sqrt(1-G^2)|00><11|. Evaluated entrywise.
ComplexMatrix apply_corr_ad(double tau, double a, double mu, const ComplexMatrix& x);
ComplexMatrix apply_corr_ad_g(double g, double mu, const ComplexMatrix& x);

struct CorrelatedChannelSpec {
  ReservoirModel model;
  std::size_t n = 2;
  double mu = 0.0;

  /// Validates model parameters, 2 <= n <= kMaxQubits, mu in [0,1], and
  /// n == 2 for amplitude damping.
  void validate() const;
};

/// A correlated channel frozen at one time tau.
class CorrelatedChannel {
 public:
  CorrelatedChannel(const CorrelatedChannelSpec& spec, double tau);
  CorrelatedChannel(const SingleUseNoise& noise, double mu, std::size_t n);

  std::size_t qubits() const { return n_; }
  std::size_t dim() const { return std::size_t{1} << n_; }
  const SingleUseNoise& noise() const { return noise_; }

  ComplexMatrix apply(const ComplexMatrix& x) const;

 private:
  std::size_t n_;
  double mu_;
  SingleUseNoise noise_;
  std::optional<PauliTransferTable> table_;
};

/// Choi matrix sum_{jk} |j><k| (x) map(|j><k|), dimension dim^2.
ComplexMatrix choi_of(const std::function<ComplexMatrix(const ComplexMatrix&)>& map,
                      std::size_t dim);

/// Choi matrix of the channel at tau; requires n <= 3.
ComplexMatrix choi_matrix(const CorrelatedChannelSpec& spec, double tau);

}  // namespace corrhss
