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

#include "corrhss/hss.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "corrhss/errors.hpp"
#include "corrhss/parallel.hpp"

namespace corrhss {
namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform on (0, 1] from the top 53 bits.
double unit_uniform(std::mt19937_64& gen) {
  return (static_cast<double>(gen() >> 11) + 1.0) * 0x1.0p-53;
}

ComplexMatrix bell_rotation() {
  const double h = std::numbers::sqrt2 / 2.0;
  // Columns (|00>+|11>), (|00>-|11>), (|01>+|10>), (|01>-|10>), each / sqrt2.
  return ComplexMatrix{{h, h, 0, 0}, {0, 0, h, h}, {0, 0, h, -h}, {h, -h, 0, 0}};
}

ComplexMatrix hadamard_rotation() {
  // Hadamard on qubit 2 only: columns |+0>, |+1>, |-0>, |-1>.
  const ComplexMatrix h1{{1, 1}, {1, -1}};
  ComplexMatrix u = kron(h1, ComplexMatrix::identity(2));
  u *= complex(std::numbers::sqrt2 / 2.0);
  return u;
}

// Basis whose phase family stays a product state |0> (x) |chi(phi)> on qubit 1.
ComplexMatrix local_rotation() {
  const double r3 = std::sqrt(3.0);
  const double h = std::numbers::sqrt2 / 2.0;
  const complex plus[2] = {h, h};
  const complex minus[2] = {h, -h};
  complex a[2], v[2];
  for (int q = 0; q < 2; ++q) {
    a[q] = 0.5 * plus[q] + (r3 / 2.0) * minus[q];
    v[q] = (r3 / 2.0) * plus[q] - 0.5 * minus[q];
  }
  // Index = 2 * (qubit 2) + (qubit 1).
  ComplexMatrix u(4);
  for (int q = 0; q < 2; ++q) u(q, 0) = a[q];
  const complex omega = std::polar(1.0, 2.0 * kPi / 3.0);
  for (int k = 0; k < 3; ++k) {
    const complex w1 = std::pow(omega, k);
    const complex w2 = std::pow(omega, 2 * k);
    for (int q = 0; q < 2; ++q) {
      u(q, 1 + k) = v[q] / r3;
      u(2 + q, 1 + k) = (w1 * a[q] + w2 * v[q]) / r3;
    }
  }
  return u;
}

void require_two_qubits(const BasisId& id, std::size_t n) {
  if (n != 2)
    throw UnsupportedParameter("basis '" + id.str() + "' is defined for two qubits only");
}

void require_tau_grid(std::span<const double> tau_grid) {
  if (tau_grid.empty()) throw DomainError("tau grid is empty");
  for (std::size_t k = 0; k < tau_grid.size(); ++k) {
    if (!(tau_grid[k] >= 0.0) || !std::isfinite(tau_grid[k]))
      throw DomainError("tau grid entries must be finite and >= 0");
    if (k > 0 && !(tau_grid[k] > tau_grid[k - 1]))
      throw DomainError("tau grid must be strictly increasing");
  }
}

// X(phi) = e^{i phi} A + e^{-i phi} A^dagger with A = (i / sqrt(N)) u0 s^dagger,
// s = sum_{j >= 1} u_j / sqrt(N).
ComplexMatrix phase_generator(const ComplexMatrix& u) {
  const std::size_t dim = u.dim();
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(dim));
  std::vector<complex> s(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t j = 1; j < dim; ++j) s[r] += u(r, j);
  ComplexMatrix a(dim);
  const complex scale(0.0, inv_sqrt * inv_sqrt);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) a(r, c) = scale * u(r, 0) * std::conj(s[c]);
  return a;
}

std::vector<complex> family_vector(const PhaseFamily& f, double phi) {
  const std::size_t dim = f.rotation.dim();
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(dim));
  const complex lead = std::polar(inv_sqrt, phi);
  std::vector<complex> psi(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    psi[r] = lead * f.rotation(r, 0);
    for (std::size_t j = 1; j < dim; ++j) psi[r] += inv_sqrt * f.rotation(r, j);
  }
  return psi;
}

void check_family(const PhaseFamily& f) {
  if (f.rotation.dim() != (std::size_t{1} << f.n))
    throw ContractViolation("phase family rotation has the wrong dimension");
  if (!std::isfinite(f.phi)) throw DomainError("phase must be finite");
}

}  // namespace

std::string BasisId::str() const {
  switch (kind) {
    case BasisKind::standard: return "standard";
    case BasisKind::bell: return "bell";
    case BasisKind::hadamard: return "hadamard";
    case BasisKind::local: return "local";
    case BasisKind::random: return "random:" + std::to_string(index);
  }
  return "?";
}

BasisId BasisId::parse(const std::string& text) {
  if (text == "standard") return {BasisKind::standard, 0};
  if (text == "bell") return {BasisKind::bell, 0};
  if (text == "hadamard") return {BasisKind::hadamard, 0};
  if (text == "local") return {BasisKind::local, 0};
  const std::string prefix = "random:";
  if (text.rfind(prefix, 0) == 0 && text.size() > prefix.size()) {
    const std::string digits = text.substr(prefix.size());
    if (digits.find_first_not_of("0123456789") == std::string::npos && digits.size() <= 9)
      return {BasisKind::random, static_cast<std::uint32_t>(std::stoul(digits))};
  }
  throw InvalidSpec("unknown basis '" + text + "'");
}

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t k) {
  return splitmix64(splitmix64(seed) ^ (k * 0xD1B54A32D192ED03ULL + 1));
}

ComplexMatrix haar_unitary(std::size_t dim, std::uint64_t seed) {
  if (dim == 0 || dim > kDefaultMaxDim) throw DimensionLimitError("haar_unitary: bad dimension");
  std::mt19937_64 gen(seed);
  Eigen::MatrixXcd z(dim, dim);
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t r = 0; r < dim; ++r) {
      // Box-Muller; each draw yields one complex normal with variance 1.
      const double u1 = unit_uniform(gen);
      const double u2 = unit_uniform(gen);
      const double rad = std::sqrt(-std::log(u1));
      z(r, c) = std::complex<double>(rad * std::cos(2.0 * kPi * u2),
                                     rad * std::sin(2.0 * kPi * u2));
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& rr = qr.matrixQR();
  ComplexMatrix u(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    const complex d = rr(c, c);
    const complex ph = std::abs(d) > 0 ? d / std::abs(d) : complex(1.0);
    for (std::size_t r = 0; r < dim; ++r) u(r, c) = q(r, c) * ph;
  }
  return u;
}

ComplexMatrix basis_rotation(const BasisId& id, std::size_t n, std::uint64_t seed) {
  if (n < 1 || n > kMaxQubits) throw DimensionLimitError("basis_rotation: unsupported qubit count");
  switch (id.kind) {
    case BasisKind::standard: return ComplexMatrix::identity(std::size_t{1} << n);
    case BasisKind::bell: require_two_qubits(id, n); return bell_rotation();
    case BasisKind::hadamard: require_two_qubits(id, n); return hadamard_rotation();
    case BasisKind::local: require_two_qubits(id, n); return local_rotation();
    case BasisKind::random: return haar_unitary(std::size_t{1} << n, sub_seed(seed, id.index));
  }
  throw InvalidSpec("unknown basis kind");
}

PhaseFamily make_family(const BasisId& id, std::size_t n, double phi, std::uint64_t seed) {
  if (!std::isfinite(phi)) throw DomainError("phase must be finite");
  return PhaseFamily{n, basis_rotation(id, n, seed), phi, id};
}

DensityOperator initial_state(const PhaseFamily& family) {
  check_family(family);
  const auto psi = family_vector(family, family.phi);
  const std::size_t dim = psi.size();
  ComplexMatrix rho(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) rho(r, c) = psi[r] * std::conj(psi[c]);
  return DensityOperator(std::move(rho));
}

ComplexMatrix phase_derivative(const PhaseFamily& family) {
  check_family(family);
  const ComplexMatrix a = phase_generator(family.rotation);
  ComplexMatrix x = a;
  x *= std::polar(1.0, family.phi);
  const ComplexMatrix ad = a.adjoint();
  const complex back = std::polar(1.0, -family.phi);
  for (std::size_t r = 0; r < x.dim(); ++r)
    for (std::size_t c = 0; c < x.dim(); ++c) x(r, c) += back * ad(r, c);
  return x;
}

double hss_value(const CorrelatedChannel& channel, const PhaseFamily& family) {
  if (channel.qubits() != family.n)
    throw ContractViolation("channel and phase family disagree on qubit count");
  return frobenius_hss_norm(channel.apply(phase_derivative(family)));
}

double hss_value(const CorrelatedChannelSpec& spec, const PhaseFamily& family, double tau) {
  spec.validate();
  return hss_value(CorrelatedChannel(spec, tau), family);
}

std::vector<double> make_tau_grid(double tau_max, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("tau step must be > 0");
  if (!(tau_max >= 0.0) || !std::isfinite(tau_max)) throw DomainError("tau max must be >= 0");
  const double count = std::round(tau_max / step);
  if (count > 1e8) throw DomainError("tau grid too large");
  std::vector<double> grid(static_cast<std::size_t>(count) + 1);
  for (std::size_t k = 0; k < grid.size(); ++k) grid[k] = static_cast<double>(k) * step;
  return grid;
}

std::vector<double> default_tau_grid(const ReservoirModel& model) {
  if (std::holds_alternative<SqueezedVacuumOhmic>(model)) return make_tau_grid(3.0, 0.001);
  return make_tau_grid(30.0, 0.01);
}

std::vector<double> default_phi_grid(std::size_t count) {
  if (count == 0) throw DomainError("phi grid must be non-empty");
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k)
    grid[k] = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(count);
  return grid;
}

HssCurve hss_curve(const CorrelatedChannelSpec& spec, const PhaseFamily& family,
                   std::span<const double> tau_grid, std::size_t threads) {
  const double mu = spec.mu;
  auto curves = hss_curves(spec.model, spec.n, std::span<const double>(&mu, 1), family,
                           tau_grid, threads);
  return std::move(curves.front());
}

std::vector<HssCurve> hss_curves(const ReservoirModel& model, std::size_t n,
                                 std::span<const double> mus, const PhaseFamily& family,
                                 std::span<const double> tau_grid, std::size_t threads) {
  for (double mu : mus) CorrelatedChannelSpec{model, n, mu}.validate();
  if (family.n != n) throw ContractViolation("phase family has the wrong qubit count");
  require_tau_grid(tau_grid);
  const ComplexMatrix x = phase_derivative(family);
  std::vector<HssCurve> curves(mus.size());
  for (auto& c : curves) {
    c.tau.assign(tau_grid.begin(), tau_grid.end());
    c.values.assign(tau_grid.size(), 0.0);
  }
  parallel_for(tau_grid.size(), threads, [&](std::size_t k) {
    const SingleUseNoise noise = single_use_probs(model, tau_grid[k]);
    for (std::size_t m = 0; m < mus.size(); ++m) {
      const CorrelatedChannel channel(noise, mus[m], n);
      curves[m].values[k] = frobenius_hss_norm(channel.apply(x));
    }
  });
  return curves;
}

WitnessSegments chi_segments(const HssCurve& curve, double tie_eps) {
  if (curve.tau.size() != curve.values.size())
    throw ContractViolation("curve tau and value arrays differ in length");
  WitnessSegments out;
  std::size_t k = 0;
  const std::size_t m = curve.values.size();
  while (k + 1 < m) {
    if (curve.values[k + 1] - curve.values[k] > tie_eps) {
      const std::size_t start = k;
      while (k + 1 < m && curve.values[k + 1] - curve.values[k] > tie_eps) ++k;
      out.intervals.emplace_back(curve.tau[start], curve.tau[k]);
    } else {
      ++k;
    }
  }
  return out;
}

double positive_increment_sum(std::span<const double> values, double tie_eps) {
  double total = 0.0;
  for (std::size_t k = 1; k < values.size(); ++k) {
    const double d = values[k] - values[k - 1];
    if (d > tie_eps) total += d;
  }
  return total;
}

std::vector<CatalogEntry> make_catalog(std::span<const BasisId> ids, std::size_t n,
                                       std::uint64_t seed) {
  std::vector<CatalogEntry> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back({id, basis_rotation(id, n, seed)});
  return out;
}

std::vector<CatalogEntry> default_catalog(std::size_t n, std::uint64_t seed,
                                          std::size_t random_count) {
  std::vector<BasisId> ids{{BasisKind::standard, 0}};
  if (n == 2) {
    ids.push_back({BasisKind::bell, 0});
    ids.push_back({BasisKind::hadamard, 0});
    ids.push_back({BasisKind::local, 0});
  }
  for (std::size_t k = 0; k < random_count; ++k)
    ids.push_back({BasisKind::random, static_cast<std::uint32_t>(k)});
  return make_catalog(ids, n, seed);
}

MeasureResult nm_measure(const CorrelatedChannelSpec& spec, std::span<const CatalogEntry> catalog,
                         std::span<const double> phi_grid, std::span<const double> tau_grid,
                         std::size_t threads) {
  spec.validate();
  if (catalog.empty()) throw InvalidSpec("basis catalog is empty");
  if (phi_grid.empty()) throw DomainError("phi grid is empty");
  for (double phi : phi_grid)
    if (!std::isfinite(phi)) throw DomainError("phi grid entries must be finite");
  require_tau_grid(tau_grid);
  const std::size_t dim = std::size_t{1} << spec.n;
  for (const auto& c : catalog)
    if (c.rotation.dim() != dim) throw ContractViolation("catalog rotation has the wrong dimension");

  // With B = Phi(A), HSS(phi)^2 = ||B||^2 + Re(e^{2 i phi} Tr B^2): one channel
  // application per (basis, tau) covers the whole phi grid.
  std::vector<ComplexMatrix> gens;
  gens.reserve(catalog.size());
  for (const auto& c : catalog) gens.push_back(phase_generator(c.rotation));
  std::vector<complex> rot(phi_grid.size());
  for (std::size_t p = 0; p < phi_grid.size(); ++p) rot[p] = std::polar(1.0, 2.0 * phi_grid[p]);

  const std::size_t nt = tau_grid.size();
  const std::size_t nb = catalog.size();
  std::vector<double> norm2(nt * nb);
  std::vector<complex> trace_sq(nt * nb);
  parallel_for(nt, threads, [&](std::size_t k) {
    const CorrelatedChannel channel(spec, tau_grid[k]);
    for (std::size_t b = 0; b < nb; ++b) {
      const ComplexMatrix out = channel.apply(gens[b]);
      double nrm = 0.0;
      complex tr = 0.0;
      for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
          nrm += std::norm(out(r, c));
          tr += out(r, c) * out(c, r);
        }
      }
      norm2[k * nb + b] = nrm;
      trace_sq[k * nb + b] = tr;
    }
  });

  MeasureResult best{-1.0, catalog.front().id, phi_grid.front()};
  for (std::size_t b = 0; b < nb; ++b) {
    for (std::size_t p = 0; p < phi_grid.size(); ++p) {
      double total = 0.0;
      double prev = 0.0;
      for (std::size_t k = 0; k < nt; ++k) {
        const std::size_t i = k * nb + b;
        const double v = std::sqrt(std::max(0.0, norm2[i] + (rot[p] * trace_sq[i]).real()));
        if (k > 0 && v - prev > kTieEps) total += v - prev;
        prev = v;
      }
      if (total > best.value) best = {total, catalog[b].id, phi_grid[p]};
    }
  }
  return best;
}

double delta_range(const ReservoirModel& model, std::size_t n, double tau_star,
                   const PhaseFamily& family) {
  if (!is_unital(model) && n != 2)
    throw UnsupportedParameter("amplitude damping is defined for two qubits only");
  if (!(tau_star >= 0.0) || !std::isfinite(tau_star)) throw DomainError("tau_star must be >= 0");
  const double at_one = hss_value(CorrelatedChannelSpec{model, n, 1.0}, family, tau_star);
  const double at_zero = hss_value(CorrelatedChannelSpec{model, n, 0.0}, family, tau_star);
  return at_one - at_zero;
}

}  // namespace corrhss
