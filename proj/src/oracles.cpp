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

#include "corrhss/oracles.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "corrhss/errors.hpp"
#include "corrhss/parallel.hpp"

namespace corrhss {
namespace {

constexpr double kPi = std::numbers::pi;

double real_root(double radicand) { return std::sqrt(complex(radicand)).real(); }

double sq(double v) { return v * v; }

// Single-use noise recomputed from the reservoir functions, independent of
// the channels module.
std::array<double, 4> reference_probs(const ReservoirModel& model, double tau) {
  if (const auto* m = std::get_if<ColoredDephasing>(&model)) {
    const double e = eta(tau, m->nu);
    return {(1 + e) / 2, 0, 0, (1 - e) / 2};
  }
  if (const auto* m = std::get_if<SqueezedVacuumOhmic>(&model)) {
    const double e = std::exp(-gamma_sv(tau, *m));
    return {(1 + e) / 2, 0, 0, (1 - e) / 2};
  }
  const double l = lambda_depol(tau, std::get<ColoredDepolarizing>(model).theta_dep);
  return {(1 + 3 * l) / 4, (1 - l) / 4, (1 - l) / 4, (1 - l) / 4};
}

ComplexMatrix sandwich(const ComplexMatrix& k, const ComplexMatrix& x) {
  return k * x * k.adjoint();
}

}  // namespace

ModelTag model_tag(const ReservoirModel& model) {
  switch (model.index()) {
    case 0: return ModelTag::dephasing;
    case 1: return ModelTag::squeezed;
    case 2: return ModelTag::depolarizing;
    default: return ModelTag::ad;
  }
}

std::string ClosedFormId::basis_str() const {
  switch (basis) {
    case ClosedFormBasis::standard: return "standard";
    case ClosedFormBasis::bell: return "bell";
    case ClosedFormBasis::hadamard: return "hadamard";
  }
  return "?";
}

std::string ClosedFormId::str() const {
  static const char* names[] = {"dephasing", "squeezed", "depolarizing", "ad"};
  return std::string(names[static_cast<int>(model)]) + "_" + basis_str();
}

std::vector<ClosedFormId> ClosedFormId::all() {
  std::vector<ClosedFormId> out;
  for (auto b : {ClosedFormBasis::standard, ClosedFormBasis::bell, ClosedFormBasis::hadamard})
    for (auto m : {ModelTag::dephasing, ModelTag::squeezed, ModelTag::depolarizing, ModelTag::ad})
      out.push_back({m, b});
  return out;
}

double hss_closed_form(const ClosedFormId& id, const ReservoirModel& model, double mu,
                       double tau, double phi) {
  if (model_tag(model) != id.model)
    throw ContractViolation("closed form " + id.str() + " evaluated with another model");
  validate(model);
  if (!(mu >= 0.0 && mu <= 1.0)) throw DomainError("mu must lie in [0, 1]");
  const double c1 = std::cos(phi);
  const double c2 = std::cos(2 * phi);
  const double c3 = std::cos(3 * phi);
  const double c4 = std::cos(4 * phi);
  const double s1 = std::sin(phi);

  switch (id.model) {
    case ModelTag::dephasing: {
      const double e = eta(tau, std::get<ColoredDephasing>(model).nu);
      const double g = (1 - mu) * e * e + mu;
      switch (id.basis) {
        case ClosedFormBasis::standard: return 0.25 * real_root(g * g + 2 * e * e);
        case ClosedFormBasis::bell:
          return 0.25 * real_root(g * g * c1 * c1 + s1 * s1 + 2 * e * e);
        case ClosedFormBasis::hadamard:
          return 0.25 * real_root(g * g + e * e * (1 + c1 * c1) + s1 * s1);
      }
      break;
    }
    case ModelTag::squeezed: {
      const double gam = gamma_sv(tau, std::get<SqueezedVacuumOhmic>(model));
      const double e2 = std::exp(-2 * gam);
      const double e4 = std::exp(-4 * gam);
      switch (id.basis) {
        case ClosedFormBasis::standard:
          return 0.25 * real_root(sq(mu - 1) * e4 + 2 * (1 - mu * mu + mu) * e2 + mu * mu);
        case ClosedFormBasis::bell: {
          const double p2 = std::exp(2 * gam);
          const double p4 = std::exp(4 * gam);
          return e2 / 4 * real_root(c1 * c1 * sq(mu * (p2 - 1) + 1) + p4 * s1 * s1 + 2 * p2);
        }
        case ClosedFormBasis::hadamard: {
          const double r = 4 * sq(mu - 1) * e4 * (8 * c1 + 3 * c2 + 7) +
                           4 * (8 * mu * mu * c1 + 3 * (mu * mu - 1) * c2 + 7 * mu * mu + 3) +
                           e2 * ((444 - 64 * (mu - 1) * mu) * c1 - 56 * (mu - 1) * mu + 327) +
                           e2 * (-24 * (mu - 3) * (mu + 2) * c2 + 20 * c3 + c4);
          return real_root(r) / (4 * std::numbers::sqrt2 * sq(c1 + 2));
        }
      }
      break;
    }
    case ModelTag::depolarizing: {
      const double l = lambda_depol(tau, std::get<ColoredDepolarizing>(model).theta_dep);
      const double c = l * (-mu) + l + mu;
      switch (id.basis) {
        case ClosedFormBasis::standard: return 0.25 * real_root(l * l * (2 * c * c + 1));
        case ClosedFormBasis::bell: {
          const double r = (l - 1) * l * l * (mu - 1) * (l * (mu - 1) - mu - 1) * c2 +
                           3 * l * l * (c * c + 1);
          return real_root(r) / (4 * std::numbers::sqrt2);
        }
        case ClosedFormBasis::hadamard: {
          const double l2 = l * l, l3 = l2 * l, l4 = l3 * l;
          const double r = 8 * l2 * (7 * c * c + 6) * c1 + 28 * l4 * sq(mu - 1) -
                           50 * l3 * (mu - 1) * mu + l2 * (mu * (19 * mu + 6) + 28) + 3 * mu * mu +
                           l2 * (mu * (49 * mu - 6) + 30) * c1 * c1 +
                           l2 * (c * c + 1) * c1 * c1 * c1 * (c1 + 10) +
                           (40 * l4 * sq(mu - 1) - 86 * l3 * (mu - 1) * mu - 3 * mu * mu) * c1 * c1;
          return real_root(r) / (2 * std::numbers::sqrt2 * sq(c1 + 2));
        }
      }
      break;
    }
    case ModelTag::ad: {
      const double g = g_ad(tau, std::get<LorentzianAmplitudeDamping>(model).a);
      const double g2 = g * g, g3 = g2 * g, g4 = g3 * g, g6 = g4 * g2, g8 = g4 * g4;
      switch (id.basis) {
        case ClosedFormBasis::standard:
          return 0.25 * real_root((g2 + 2) * sq(g + mu - mu * g));
        case ClosedFormBasis::bell: {
          const double r = (-2 * g3 - 4 * g) * (mu - 1) * mu + 2 * mu * mu +
                           2 * g8 * sq(mu - 1) + g4 * (6 - 5 * mu) * mu +
                           g2 * (mu * (7 * mu - 8) + 4) +
                           g2 * (4 * g4 * sq(mu - 1) - 2 * g6 * sq(mu - 1)) * c2 +
                           g2 * (g2 * (-((mu - 2) * mu + 2)) - 2 * g * (mu - 1) * mu + mu * mu) * c2;
          return real_root(r) / (4 * std::numbers::sqrt2);
        }
        case ClosedFormBasis::hadamard: {
          const double r = (40 * g4 - 6 * g4) * sq(mu - 1) + g2 * (mu - 1) * (247 * mu - 327) +
                           367 * mu * mu +
                           4 * (8 * g4 * sq(mu - 1) - 222 * g * (mu - 1) * mu) * c1 +
                           4 * (g2 * (mu - 1) * (95 * mu - 111) + 8119 * mu * mu) * c1 +
                           sq(g * (-mu) + g + mu) * (144 * c2 + 20 * c3 + c4);
          return real_root(r) / (4 * std::numbers::sqrt2 * sq(c1 + 2));
        }
      }
      break;
    }
  }
  throw UnsupportedParameter("closed form not published: " + id.str());
}

complex gamma_sv_printed(double tau, const SqueezedVacuumOhmic& p) {
  validate(ReservoirModel{p});
  if (!(tau >= 0.0)) throw DomainError("tau must be >= 0");
  const double wc = SqueezedVacuumOhmic::cutoff_ratio;
  const complex e(1 - p.s, 0);
  const complex a = cpow_principal(complex(1, -wc * tau), e);
  const complex b = cpow_principal(complex(1, wc * tau), e);
  const complex c = cpow_principal(complex(1, -2 * wc * tau), e);
  return 0.5 * p.alpha *
         (std::cosh(2 * p.r) * (-a - b + 2.0) +
          std::sinh(2 * p.r) * std::cos(p.theta_sq) * (-2.0 * a + c + 1.0)) *
         gamma_fn(p.s - 1);
}

double gamma_sv_quadrature(double tau, const SqueezedVacuumOhmic& p) {
  validate(ReservoirModel{p});
  if (!(tau >= 0.0)) throw DomainError("tau must be >= 0");
  const double wc = SqueezedVacuumOhmic::cutoff_ratio;
  const double ch = std::cosh(2 * p.r);
  const double sh = std::sinh(2 * p.r);
  const double scale = p.alpha * std::pow(wc, 1 - p.s);
  auto f = [&](double w) {
    if (w <= 0.0) return 0.0;
    const double half = std::sin(0.5 * w * tau);
    return scale * std::pow(w, p.s - 2) * std::exp(-w / wc) * 2 * half * half *
           (ch - sh * std::cos(w * tau - p.theta_sq));
  };
  // Piecewise to keep each panel to a handful of oscillations.
  const double upper = 40 * wc;
  const double width = 5.0;
  double total = 0.0;
  for (double lo = 0.0; lo < upper; lo += width) {
    double err = 0.0;
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        f, lo, std::min(lo + width, upper), 12, 1e-12, &err);
  }
  return total;
}

double finite_difference_hss(const CorrelatedChannelSpec& spec, const PhaseFamily& family,
                             double tau, double eps) {
  if (!(eps >= 1e-9 && eps <= 1e-3)) throw DomainError("eps must lie in [1e-9, 1e-3]");
  spec.validate();
  const CorrelatedChannel channel(spec, tau);
  PhaseFamily plus = family, minus = family;
  plus.phi += eps;
  minus.phi -= eps;
  const ComplexMatrix a = channel.apply(initial_state(plus).matrix());
  const ComplexMatrix b = channel.apply(initial_state(minus).matrix());
  double sum = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < a.dim(); ++c) sum += std::norm(a(r, c) - b(r, c));
  return std::sqrt(0.5 * sum) / (2 * eps);
}

ComplexMatrix dense_reference_apply(const CorrelatedChannelSpec& spec, double tau,
                                    const ComplexMatrix& x) {
  spec.validate();
  if (spec.n > 4) throw DimensionLimitError("dense_reference_apply: n <= 4");
  const std::size_t dim = std::size_t{1} << spec.n;
  if (x.dim() != dim) throw ContractViolation("dense_reference_apply: input dimension mismatch");
  const double mu = spec.mu;
  ComplexMatrix out(dim);

  if (const auto* m = std::get_if<LorentzianAmplitudeDamping>(&spec.model)) {
    const double g = g_ad(tau, m->a);
    const double d = std::sqrt(std::max(0.0, 1 - g * g));
    const ComplexMatrix k[2] = {ComplexMatrix{{1, 0}, {0, g}}, ComplexMatrix{{0, d}, {0, 0}}};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        ComplexMatrix term = sandwich(kron(k[i], k[j]), x);
        term *= complex(1 - mu);
        out += term;
      }
    ComplexMatrix f0 = ComplexMatrix::identity(4);
    f0(3, 3) = g;
    ComplexMatrix f1(4);
    f1(0, 3) = d;
    ComplexMatrix corr = sandwich(f0, x);
    corr += sandwich(f1, x);
    corr *= complex(mu);
    out += corr;
    return out;
  }

  const auto p = reference_probs(spec.model, tau);
  const std::size_t tuples = std::size_t{1} << (2 * spec.n);
  std::vector<int> digits(spec.n);
  for (std::size_t t = 0; t < tuples; ++t) {
    // digits[k] acts on qubit k + 1.
    for (std::size_t k = 0; k < spec.n; ++k) digits[k] = static_cast<int>((t >> (2 * k)) & 3);
    double w = p[digits[0]];
    for (std::size_t k = 1; k < spec.n; ++k)
      w *= (1 - mu) * p[digits[k]] + (digits[k] == digits[k - 1] ? mu : 0.0);
    if (w == 0.0) continue;
    ComplexMatrix op = pauli_matrix(digits[spec.n - 1]);
    for (std::size_t k = spec.n - 1; k-- > 0;) op = kron(op, pauli_matrix(digits[k]));
    ComplexMatrix term = sandwich(op, x);
    term *= complex(w);
    out += term;
  }
  return out;
}

ReservoirModel audit_model(ModelTag tag, const AuditOptions& o) {
  switch (tag) {
    case ModelTag::dephasing: return o.dephasing;
    case ModelTag::squeezed: return o.squeezed;
    case ModelTag::depolarizing: return o.depolarizing;
    case ModelTag::ad: return o.ad;
  }
  return o.dephasing;
}

std::vector<double> audit_tau_grid(ModelTag tag) {
  const double step = tag == ModelTag::squeezed ? 0.01 : 0.1;
  std::vector<double> out(50);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = step * static_cast<double>(k);
  return out;
}

std::vector<AuditRow> formula_audit(const AuditOptions& o) {
  const auto ids = ClosedFormId::all();
  const double mus[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<AuditRow> rows(ids.size());
  parallel_for(ids.size(), o.threads, [&](std::size_t i) {
    const auto& id = ids[i];
    const ReservoirModel model = audit_model(id.model, o);
    const bool binding = id.basis == ClosedFormBasis::standard ||
                         (id.basis == ClosedFormBasis::bell && id.model == ModelTag::dephasing);
    std::vector<double> phis;
    if (id.basis == ClosedFormBasis::standard) phis = {kPi};
    else if (binding) phis = {0.0};
    else phis = {0.0, kPi / 4, kPi / 2, kPi};
    const BasisId basis = BasisId::parse(id.basis_str());
    AuditRow row{id.str(), id.basis_str(), 0.0, 0, binding, false};
    for (double phi : phis) {
      const PhaseFamily family = make_family(basis, 2, phi);
      for (double mu : mus) {
        const CorrelatedChannelSpec spec{model, 2, mu};
        for (double tau : audit_tau_grid(id.model)) {
          const double dev = std::abs(hss_closed_form(id, model, mu, tau, phi) -
                                      finite_difference_hss(spec, family, tau));
          row.max_abs_dev = std::max(row.max_abs_dev, std::isnan(dev) ? INFINITY : dev);
          ++row.grid_points;
        }
      }
    }
    row.pass = row.max_abs_dev <= o.tolerance;
    rows[i] = row;
  });

  AuditRow gamma_row{"squeezed_gamma_printed", "standard", 0.0, 0, false, false};
  for (double tau : audit_tau_grid(ModelTag::squeezed)) {
    const double dev =
        std::abs(gamma_sv_printed(tau, o.squeezed) - complex(gamma_sv_quadrature(tau, o.squeezed)));
    gamma_row.max_abs_dev = std::max(gamma_row.max_abs_dev, dev);
    ++gamma_row.grid_points;
  }
  gamma_row.pass = gamma_row.max_abs_dev <= o.tolerance;
  rows.push_back(gamma_row);
  return rows;
}

}  // namespace corrhss
