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

#include <string_view>
#include <variant>

#include "corrhss/qmat.hpp"

namespace corrhss {

/// Colored pure dephasing; tau = t / (2 nu).
struct ColoredDephasing {
  double nu = 1.0;
};

/// Pure dephasing by a squeezed-vacuum bath with Ohmic-like spectral density
/// J(w) = alpha w^s wc^(1-s) exp(-w/wc); tau = w t with wc = 20 w.
struct SqueezedVacuumOhmic {
  double alpha = 0.5;
  double s = 4.0;
  double r = 0.5;
  double theta_sq = 0.0;
  static constexpr double cutoff_ratio = 20.0;
};

/// Depolarizing channel under colored noise with theta_1 = theta_2 = theta_3.
struct ColoredDepolarizing {
  double theta_dep = 0.5;
};

/// Amplitude damping by a Lorentzian reservoir; a = gamma0 / lambda, tau = lambda t.
struct LorentzianAmplitudeDamping {
  double a = 4.0;
};

using ReservoirModel = std::variant<ColoredDephasing, SqueezedVacuumOhmic,
                                    ColoredDepolarizing, LorentzianAmplitudeDamping>;

/// Short identifier used on the command line and in CSV output:
/// dephasing | squeezed | depolarizing | ad.
std::string_view model_name(const ReservoirModel& model);

/// Throws DomainError / UnsupportedParameter on out-of-range parameters.
void validate(const ReservoirModel& model);

/// True for the Pauli-type (unital) models.
bool is_unital(const ReservoirModel& model);

/// Upper end of the admissible theta range, (1/4) sqrt(1 + (pi/ln 3)^2).
/// Beyond it Lambda can drop below -1/3 and p_0 turns negative.
double depolarizing_theta_max();

/// e^{-tau} (sin(tau u)/u + cos(tau u)), u = sqrt(16 nu^2 - 1). The branch
/// switches to sinh/cosh for 16 nu^2 < 1 and to e^{-tau}(1 + tau) at the
/// degenerate point.
double eta(double tau, double nu);

/// Dephasing exponent gamma(tau) of the squeezed-vacuum model, closed form of
/// the spectral integral. Requires s > 1.
double gamma_sv(double tau, const SqueezedVacuumOhmic& params);

/// Damped oscillator Lambda(tau) with frequency sqrt((4 theta)^2 - 1).
double lambda_depol(double tau, double theta_dep);

/// Excited-state amplitude G(tau) of the Lorentzian amplitude-damping model.
double g_ad(double tau, double a);

double gamma_fn(double x);

/// z^w on the principal branch, arg z in (-pi, pi].
complex cpow_principal(complex z, complex w);

}  // namespace corrhss
