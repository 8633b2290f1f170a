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

#include "corrhss/reservoirs.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "corrhss/errors.hpp"

namespace corrhss {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Shared kernel of eta and Lambda: e^{-tau}(sin(w tau)/w + cos(w tau)) with
// w^2 = disc. Near disc = 0 both branches approach e^{-tau}(1 + tau); the
// series sin(x)/x ~ 1 - x^2/6 keeps the evaluation smooth through it.
double damped_oscillator(double tau, double disc) {
  const double decay = std::exp(-tau);
  if (disc == 0.0) return decay * (1.0 + tau);
  const double w = std::sqrt(std::abs(disc));
  const double x = w * tau;
  if (x < 1e-4) {
    // sinc / sinhc and cos / cosh by Taylor series; sign of disc selects.
    const double x2 = disc > 0 ? -x * x : x * x;
    const double sinc = 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
    const double cosv = 1.0 + x2 / 2.0 + x2 * x2 / 24.0;
    return decay * (tau * sinc + cosv);
  }
  if (disc > 0) return decay * (std::sin(x) / w + std::cos(x));
  return decay * (std::sinh(x) / w + std::cosh(x));
}

void require_tau(double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau))
    throw DomainError("time argument must be finite and >= 0, got " + std::to_string(tau));
}

}  // namespace

std::string_view model_name(const ReservoirModel& model) {
  return std::visit(
      overloaded{
          [](const ColoredDephasing&) { return std::string_view("dephasing"); },
          [](const SqueezedVacuumOhmic&) { return std::string_view("squeezed"); },
          [](const ColoredDepolarizing&) { return std::string_view("depolarizing"); },
          [](const LorentzianAmplitudeDamping&) { return std::string_view("ad"); },
      },
      model);
}

bool is_unital(const ReservoirModel& model) {
  return !std::holds_alternative<LorentzianAmplitudeDamping>(model);
}

double depolarizing_theta_max() {
  const double ratio = std::numbers::pi / std::log(3.0);
  return 0.25 * std::sqrt(1.0 + ratio * ratio);
}

void validate(const ReservoirModel& model) {
  std::visit(
      overloaded{
          [](const ColoredDephasing& m) {
            if (!(m.nu > 0.0) || !std::isfinite(m.nu))
              throw DomainError("dephasing: nu must be > 0");
          },
          [](const SqueezedVacuumOhmic& m) {
            if (!(m.alpha >= 0.0) || !std::isfinite(m.alpha))
              throw DomainError("squeezed: alpha must be >= 0");
            if (!(m.r >= 0.0) || !std::isfinite(m.r))
              throw DomainError("squeezed: r must be >= 0");
            if (!std::isfinite(m.theta_sq)) throw DomainError("squeezed: theta must be finite");
            if (!(m.s > 1.0) || !std::isfinite(m.s))
              throw UnsupportedParameter("squeezed: only super-Ohmic s > 1 is supported");
          },
          [](const ColoredDepolarizing& m) {
            if (!(m.theta_dep >= 0.0 && m.theta_dep <= depolarizing_theta_max()))
              throw DomainError("depolarizing: theta must lie in [0, " +
                                std::to_string(depolarizing_theta_max()) + "]");
          },
          [](const LorentzianAmplitudeDamping& m) {
            if (!(m.a > 0.0) || !std::isfinite(m.a))
              throw DomainError("ad: coupling ratio a must be > 0");
          },
      },
      model);
}

double eta(double tau, double nu) {
  require_tau(tau);
  return damped_oscillator(tau, 16.0 * nu * nu - 1.0);
}

double lambda_depol(double tau, double theta_dep) {
  require_tau(tau);
  const double q = 4.0 * theta_dep;
  return damped_oscillator(tau, q * q - 1.0);
}

double g_ad(double tau, double a) {
  require_tau(tau);
  // G(tau) = e^{-tau/2}(sinh(k tau)/(2k) + cosh(k tau)), k = sqrt(1 - 2a)/2.
  // In half-time units x = tau/2 this is the shared kernel with disc = 2a - 1.
  const double x = 0.5 * tau;
  return damped_oscillator(x, 2.0 * a - 1.0);
}

double gamma_fn(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw UnsupportedParameter("gamma_fn: argument must be > 0");
  return std::tgamma(x);
}

complex cpow_principal(complex z, complex w) {
  if (z == complex{}) {
    if (w.real() <= 0.0) throw DomainError("cpow_principal: 0 raised to a non-positive power");
    return 0.0;
  }
  return std::exp(w * std::log(z));
}

double gamma_sv(double tau, const SqueezedVacuumOhmic& p) {
  require_tau(tau);
  if (!(p.s > 1.0)) throw UnsupportedParameter("gamma_sv: requires s > 1");
  const double wc = SqueezedVacuumOhmic::cutoff_ratio;
  const complex expo(1.0 - p.s, 0.0);
  const complex z1 = cpow_principal(complex(1.0, -wc * tau), expo);
  const complex z2 = cpow_principal(complex(1.0, -2.0 * wc * tau), expo);
  const complex rot = std::polar(1.0, -p.theta_sq);
  // cosh(2r) part: 2 - z1 - conj(z1).
  // sinh(2r) part: cos(theta) + Re[e^{-i theta}(z2 - 2 z1)].
  const double cosh_part = 2.0 - 2.0 * z1.real();
  const double sinh_part = std::cos(p.theta_sq) + (rot * (z2 - 2.0 * z1)).real();
  return 0.5 * p.alpha * gamma_fn(p.s - 1.0) *
         (std::cosh(2.0 * p.r) * cosh_part + std::sinh(2.0 * p.r) * sinh_part);
}

}  // namespace corrhss
