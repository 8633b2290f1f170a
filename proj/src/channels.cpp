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

#include "corrhss/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "corrhss/errors.hpp"

namespace corrhss {
namespace {

constexpr double kProbFloor = -1e-12;

double clamp_probability(double p, const char* what) {
  if (p < kProbFloor) {
    throw ContractViolation(std::string(what) + ": negative probability " + std::to_string(p));
  }
  return p < 0.0 ? 0.0 : p;
}

void check_probability_vector(const std::array<double, 4>& p) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= kProbFloor)) throw ContractViolation("joint_probs: negative single-use probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw ContractViolation("joint_probs: probabilities do not sum to 1");
}

void check_mu(double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw DomainError("correlation factor mu must lie in [0, 1]");
}

double conditional(const std::array<double, 4>& p, double mu, int prev, int cur) {
  return (1.0 - mu) * p[cur] + (prev == cur ? mu : 0.0);
}

// In-place unnormalized Walsh-Hadamard transform.
void walsh_transform(std::vector<double>& v) {
  for (std::size_t len = 1; len < v.size(); len <<= 1)
    for (std::size_t i = 0; i < v.size(); i += len << 1)
      for (std::size_t j = i; j < i + len; ++j) {
        const double a = v[j];
        const double b = v[j + len];
        v[j] = a + b;
        v[j + len] = a - b;
      }
}

// Depth-first walk of the Markov chain in lexicographic order. The visitor
// receives the chosen indices and the tuple probability.
template <class Visit>
void walk_chain(const std::array<double, 4>& p, double mu, std::size_t n,
                std::vector<std::uint8_t>& prefix, double prob, Visit&& visit) {
  const std::size_t k = prefix.size();
  if (k == n) {
    visit(prefix, prob);
    return;
  }
  for (int i = 0; i < 4; ++i) {
    const double step = k == 0 ? p[i] : conditional(p, mu, prefix.back(), i);
    const double next = prob * step;
    if (next == 0.0) continue;
    prefix.push_back(static_cast<std::uint8_t>(i));
    walk_chain(p, mu, n, prefix, next, visit);
    prefix.pop_back();
  }
}

void apply_qubit_damping(ComplexMatrix& x, unsigned bit, double g) {
  const std::size_t mask = std::size_t{1} << bit;
  const double decay = 1.0 - g * g;
  const std::size_t d = x.dim();
  for (std::size_t r = 0; r < d; ++r) {
    if (r & mask) continue;
    for (std::size_t c = 0; c < d; ++c) {
      if (c & mask) continue;
      const complex excited = x(r | mask, c | mask);
      x(r, c) += decay * excited;
      x(r, c | mask) *= g;
      x(r | mask, c) *= g;
      x(r | mask, c | mask) = g * g * excited;
    }
  }
}

}  // namespace

SingleUseNoise single_use_probs(const ReservoirModel& model, double tau) {
  validate(model);
  SingleUseNoise out;
  if (const auto* m = std::get_if<ColoredDephasing>(&model)) {
    const double e = eta(tau, m->nu);
    out.probs = {0.5 * (1.0 + e), 0.0, 0.0, 0.5 * (1.0 - e)};
  } else if (const auto* m = std::get_if<SqueezedVacuumOhmic>(&model)) {
    const double e = std::exp(-gamma_sv(tau, *m));
    out.probs = {0.5 * (e + 1.0), 0.0, 0.0, 0.5 * (1.0 - e)};
  } else if (const auto* m = std::get_if<ColoredDepolarizing>(&model)) {
    const double l = lambda_depol(tau, m->theta_dep);
    // p0 = (1 + 3L)/4 and p1 = p2 = p3 = (1 - L)/4 for equal theta_i.
    out.probs = {0.25 * (1.0 + 3.0 * l), 0.25 * (1.0 - l), 0.25 * (1.0 - l), 0.25 * (1.0 - l)};
  } else {
    const auto& ad = std::get<LorentzianAmplitudeDamping>(model);
    out.kind = NoiseKind::amplitude_damping;
    out.g = g_ad(tau, ad.a);
    out.k0 = ComplexMatrix{{1.0, 0.0}, {0.0, out.g}};
    out.k1 = ComplexMatrix{{0.0, std::sqrt(std::max(0.0, 1.0 - out.g * out.g))}, {0.0, 0.0}};
    return out;
  }
  for (double& p : out.probs) p = clamp_probability(p, "single_use_probs");
  return out;
}

JointDistribution::JointDistribution(std::size_t n, std::vector<Entry> entries)
    : n_(n), entries_(std::move(entries)) {}

double JointDistribution::total_mass() const {
  double sum = 0.0;
  for (const auto& e : entries_) sum += e.prob;
  return sum;
}

double JointDistribution::probability(const PauliString& s) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), s,
                             [](const Entry& e, const PauliString& key) { return e.string < key; });
  return (it != entries_.end() && it->string == s) ? it->prob : 0.0;
}

JointDistribution joint_probs(const std::array<double, 4>& p, double mu, std::size_t n) {
  check_mu(mu);
  check_probability_vector(p);
  if (n == 0 || n > kMaxQubits) throw DimensionLimitError("joint_probs: unsupported qubit count");
  std::array<double, 4> clamped{};
  for (int i = 0; i < 4; ++i) clamped[i] = std::max(0.0, p[i]);

  std::vector<JointDistribution::Entry> entries;
  std::vector<std::uint8_t> prefix;
  prefix.reserve(n);
  walk_chain(clamped, mu, n, prefix, 1.0, [&](const std::vector<std::uint8_t>& t, double prob) {
    entries.push_back({PauliString(t), prob});
  });
  return JointDistribution(n, std::move(entries));
}

PauliTransferTable::PauliTransferTable(std::size_t n, std::vector<double> weights) : n_(n) {
  const std::size_t dim = std::size_t{1} << n;
  for (std::size_t x = 0; x < dim; ++x) {
    auto first = weights.begin() + static_cast<std::ptrdiff_t>(x * dim);
    auto last = first + static_cast<std::ptrdiff_t>(dim);
    if (std::all_of(first, last, [](double w) { return w == 0.0; })) continue;
    Group g{x, std::vector<double>(first, last)};
    walsh_transform(g.walsh);
    groups_.push_back(std::move(g));
  }
}

PauliTransferTable::PauliTransferTable(const JointDistribution& dist) : n_(dist.qubits()) {
  const std::size_t dim = std::size_t{1} << n_;
  std::vector<double> weights(dim * dim, 0.0);
  for (const auto& e : dist.entries())
    weights[e.string.x_mask() * dim + e.string.z_mask()] += e.prob;
  *this = PauliTransferTable(n_, std::move(weights));
}

PauliTransferTable PauliTransferTable::markov_chain(const std::array<double, 4>& p, double mu,
                                                   std::size_t n) {
  check_mu(mu);
  check_probability_vector(p);
  if (n == 0 || n > kMaxQubits) throw DimensionLimitError("transfer table: unsupported qubit count");
  std::array<double, 4> clamped{};
  for (int i = 0; i < 4; ++i) clamped[i] = std::max(0.0, p[i]);

  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> weights(dim * dim, 0.0);
  std::vector<std::uint8_t> prefix;
  prefix.reserve(n);
  walk_chain(clamped, mu, n, prefix, 1.0, [&](const std::vector<std::uint8_t>& t, double prob) {
    std::size_t x = 0;
    std::size_t z = 0;
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (t[k] == 1 || t[k] == 2) x |= std::size_t{1} << k;
      if (t[k] == 2 || t[k] == 3) z |= std::size_t{1} << k;
    }
    weights[x * dim + z] += prob;
  });
  return PauliTransferTable(n, std::move(weights));
}

ComplexMatrix PauliTransferTable::apply(std::span<const MatrixEntry> entries,
                                        std::size_t dim) const {
  if (dim != (std::size_t{1} << n_)) throw DomainError("transfer table: dimension mismatch");
  ComplexMatrix out(dim);
  for (const auto& e : entries) {
    const std::size_t diff = e.row ^ e.col;
    for (const auto& g : groups_) out(e.row ^ g.x_mask, e.col ^ g.x_mask) += g.walsh[diff] * e.value;
  }
  return out;
}

ComplexMatrix PauliTransferTable::apply(const ComplexMatrix& x) const {
  const auto entries = nonzero_entries(x);
  return apply(entries, x.dim());
}

ComplexMatrix apply_pauli_channel(const JointDistribution& dist, const ComplexMatrix& x,
                                  ApplyPath path) {
  const std::size_t dim = std::size_t{1} << dist.qubits();
  if (x.dim() != dim) throw DomainError("apply_pauli_channel: dimension mismatch");

  switch (path) {
    case ApplyPath::fast: {
      const auto entries = nonzero_entries(x);
      ComplexMatrix out(dim);
      for (const auto& t : dist.entries()) {
        for (const auto& e : entries) {
          const MatrixEntry img = conjugate_entry(t.string, e);
          out(img.row, img.col) += t.prob * img.value;
        }
      }
      return out;
    }
    case ApplyPath::dense: {
      ComplexMatrix out(dim);
      for (const auto& t : dist.entries()) {
        const ComplexMatrix p = t.string.to_matrix();
        out += t.prob * (p * x * p);
      }
      return out;
    }
    case ApplyPath::transfer:
      return PauliTransferTable(dist).apply(x);
  }
  throw DomainError("apply_pauli_channel: unknown path");
}

ComplexMatrix apply_corr_ad_g(double g, double mu, const ComplexMatrix& x) {
  check_mu(mu);
  if (x.dim() != 4) throw DomainError("apply_corr_ad: two-qubit (4x4) input required");

  ComplexMatrix product = x;
  apply_qubit_damping(product, 0, g);
  apply_qubit_damping(product, 1, g);

  // F0 scales row and column |11> by G; F1 moves the |11><11| weight to |00><00|.
  ComplexMatrix joint = x;
  for (std::size_t k = 0; k < 4; ++k) {
    joint(3, k) *= g;
    joint(k, 3) *= g;
  }
  joint(0, 0) += (1.0 - g * g) * x(3, 3);

  return (1.0 - mu) * product + complex(mu) * joint;
}

ComplexMatrix apply_corr_ad(double tau, double a, double mu, const ComplexMatrix& x) {
  return apply_corr_ad_g(g_ad(tau, a), mu, x);
}

void CorrelatedChannelSpec::validate() const {
  corrhss::validate(model);
  if (!(mu >= 0.0 && mu <= 1.0)) throw DomainError("correlation factor mu must lie in [0, 1]");
  if (n < 2) throw DomainError("correlated channel needs at least two qubits");
  if (n > kMaxQubits)
    throw DimensionLimitError("qubit count " + std::to_string(n) + " exceeds limit " +
                              std::to_string(kMaxQubits));
  if (!is_unital(model) && n != 2)
    throw UnsupportedParameter("correlated amplitude damping is defined for two qubits only");
}

CorrelatedChannel::CorrelatedChannel(const CorrelatedChannelSpec& spec, double tau)
    : CorrelatedChannel((spec.validate(), single_use_probs(spec.model, tau)), spec.mu, spec.n) {}

CorrelatedChannel::CorrelatedChannel(const SingleUseNoise& noise, double mu, std::size_t n)
    : n_(n), mu_(mu), noise_(noise) {
  check_mu(mu);
  if (noise_.kind == NoiseKind::pauli) {
    table_ = PauliTransferTable::markov_chain(noise_.probs, mu, n);
  } else if (n != 2) {
    throw UnsupportedParameter("correlated amplitude damping is defined for two qubits only");
  }
}

ComplexMatrix CorrelatedChannel::apply(const ComplexMatrix& x) const {
  if (x.dim() != dim()) throw DomainError("channel: dimension mismatch");
  if (table_) return table_->apply(x);
  return apply_corr_ad_g(noise_.g, mu_, x);
}

ComplexMatrix choi_of(const std::function<ComplexMatrix(const ComplexMatrix&)>& map,
                      std::size_t dim) {
  if (dim * dim > kDefaultMaxDim) throw DimensionLimitError("choi matrix too large");
  ComplexMatrix choi(dim * dim);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t k = 0; k < dim; ++k) {
      ComplexMatrix unit(dim);
      unit(j, k) = 1.0;
      const ComplexMatrix img = map(unit);
      for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b) choi(j * dim + a, k * dim + b) = img(a, b);
    }
  return choi;
}

ComplexMatrix choi_matrix(const CorrelatedChannelSpec& spec, double tau) {
  spec.validate();
  if (spec.n > 3) throw DimensionLimitError("choi_matrix: at most three qubits");
  const CorrelatedChannel channel(spec, tau);
  return choi_of([&](const ComplexMatrix& x) { return channel.apply(x); }, channel.dim());
}

}  // namespace corrhss
