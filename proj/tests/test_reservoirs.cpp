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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "corrhss/errors.hpp"
#include "corrhss/oracles.hpp"
#include "corrhss/reservoirs.hpp"

using namespace corrhss;

namespace {

// First root above zero of tan(w t) = -w, i.e. w t = pi - atan(w).
double first_zero(double w) { return (std::numbers::pi - std::atan(w)) / w; }

}  // namespace

TEST_CASE("eta") {
  CHECK(eta(0.0, 1.0) == 1.0);
  CHECK(eta(0.0, 0.1) == 1.0);
  for (double t : {0.1, 1.0, 3.7}) CHECK(eta(t, 0.25) == doctest::Approx(std::exp(-t) * (1 + t)));
  const double z = first_zero(std::sqrt(15.0));
  CHECK(z == doctest::Approx(0.4708).epsilon(1e-4));
  CHECK(std::abs(eta(z, 1.0)) < 1e-14);
  CHECK_THROWS_AS(eta(-0.1, 1.0), DomainError);
}

TEST_CASE("lambda_depol") {
  CHECK(lambda_depol(0.0, 0.5) == 1.0);
  const double z = 2 * std::numbers::pi / (3 * std::sqrt(3.0));
  CHECK(z == doctest::Approx(1.2092).epsilon(1e-4));
  CHECK(std::abs(lambda_depol(z, 0.5)) < 1e-14);
  CHECK(lambda_depol(2.0, 0.25) == doctest::Approx(std::exp(-2.0) * 3.0));
  CHECK(depolarizing_theta_max() == doctest::Approx(0.757).epsilon(1e-3));
}

TEST_CASE("g_ad") {
  CHECK(g_ad(0.0, 4.0) == 1.0);
  const double z = 2 * first_zero(std::sqrt(7.0));
  CHECK(z == doctest::Approx(1.4606).epsilon(1e-4));
  CHECK(std::abs(g_ad(z, 4.0)) < 1e-14);
  for (double t : {0.5, 5.0, 20.0}) CHECK(g_ad(t, 1e-9) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("damped kernels stay bounded and continuous through the degenerate point") {
  for (double t = 0.0; t <= 50.0; t += 0.05) {
    for (double nu : {0.1, 0.25, 0.6, 1.0, 3.0}) CHECK(std::abs(eta(t, nu)) <= 1 + 1e-12);
    for (double th : {0.0, 0.25, 0.5, 0.75}) CHECK(std::abs(lambda_depol(t, th)) <= 1 + 1e-12);
    for (double a : {0.1, 0.5, 4.0}) CHECK(std::abs(g_ad(t, a)) <= 1 + 1e-12);
  }
  for (double t : {0.3, 1.0, 4.0}) {
    const double lim = std::exp(-t) * (1 + t);
    for (double d : {-1e-9, 1e-9}) {
      CHECK(std::abs(eta(t, 0.25 + d) - lim) <= 1e-8);
      CHECK(std::abs(lambda_depol(t, 0.25 + d) - lim) <= 1e-8);
      const double lim_g = std::exp(-t / 2) * (1 + t / 2);
      CHECK(std::abs(g_ad(t, 0.5 + d) - lim_g) <= 1e-8);
    }
  }
}

TEST_CASE("gamma_fn and cpow_principal") {
  CHECK(gamma_fn(3.0) == doctest::Approx(2.0));
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)));
  CHECK(gamma_fn(4.5) == doctest::Approx(11.6317283966).epsilon(1e-10));
  CHECK_THROWS_AS(gamma_fn(0.0), UnsupportedParameter);

  CHECK(std::abs(cpow_principal(1.0, complex(0.3, 2.0)) - 1.0) < 1e-15);
  CHECK(std::abs(cpow_principal(complex(0, 1), 2.0) - (-1.0)) < 1e-15);
  const complex z(1, 1);
  CHECK(std::abs(cpow_principal(z, -3.0) - 1.0 / (z * z * z)) < 1e-15);
}

TEST_CASE("gamma_sv closed form") {
  const SqueezedVacuumOhmic fig{0.5, 4.0, 0.5, 1.5 * std::numbers::pi};
  CHECK(gamma_sv(0.0, fig) == 0.0);

  // r = 0 reduces to alpha Gamma(s-1) (1 - Re (1 + 20 i tau)^{1-s}).
  const SqueezedVacuumOhmic plain{0.7, 3.0, 0.0, 0.4};
  for (double t : {0.01, 0.1, 0.5}) {
    const double expect =
        0.7 * gamma_fn(2.0) * (1 - cpow_principal(complex(1, 20 * t), -2.0).real());
    CHECK(gamma_sv(t, plain) == doctest::Approx(expect).epsilon(1e-13));
  }

  CHECK_THROWS_AS(gamma_sv(0.1, SqueezedVacuumOhmic{0.5, 1.0, 0.5, 0.0}), UnsupportedParameter);
}

TEST_CASE("gamma_sv agrees with quadrature of the defining integral") {
  const SqueezedVacuumOhmic params[] = {
      {0.5, 4.0, 0.5, 1.5 * std::numbers::pi}, {0.5, 4.0, 0.5, 0.0}, {0.3, 2.5, 1.0, 1.0}};
  for (const auto& p : params) {
    for (int k = 1; k <= 20; ++k) {
      const double t = 0.15 * k;
      const double quad = gamma_sv_quadrature(t, p);
      CHECK(gamma_sv(t, p) == doctest::Approx(quad).epsilon(1e-4));
    }
  }
}

TEST_CASE("printed squeezed exponent") {
  // With sin(theta) = 0 its real part is right but an imaginary residue remains.
  const SqueezedVacuumOhmic flat{0.5, 4.0, 0.5, 0.0};
  for (double t : {0.05, 0.5, 2.0})
    CHECK(gamma_sv_printed(t, flat).real() == doctest::Approx(gamma_sv(t, flat)).epsilon(1e-12));
  CHECK(std::abs(gamma_sv_printed(0.05, flat).imag()) > 0.1);

  // At the figure's theta = 3 pi / 2 the cos(theta) factor drops the whole
  // sinh(2r) term; the result is real but far from the integral.
  const SqueezedVacuumOhmic fig{0.5, 4.0, 0.5, 1.5 * std::numbers::pi};
  const complex printed = gamma_sv_printed(0.05, fig);
  CHECK(std::abs(printed.imag()) < 1e-12);
  CHECK(printed.real() == doctest::Approx(1.928851).epsilon(1e-6));
  CHECK(gamma_sv_quadrature(0.05, fig) == doctest::Approx(2.232053).epsilon(1e-6));
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(validate(ColoredDephasing{0.0}), DomainError);
  CHECK_THROWS_AS(validate(ColoredDepolarizing{0.8}), DomainError);
  CHECK_THROWS_AS(validate(LorentzianAmplitudeDamping{-1.0}), DomainError);
  CHECK_THROWS_AS(validate(SqueezedVacuumOhmic{0.5, 0.5, 0.5, 0.0}), UnsupportedParameter);
  CHECK(model_name(ReservoirModel{LorentzianAmplitudeDamping{}}) == "ad");
  CHECK_FALSE(is_unital(LorentzianAmplitudeDamping{}));
  CHECK(is_unital(ColoredDepolarizing{}));
}
