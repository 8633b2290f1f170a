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
#include "corrhss/hss.hpp"
#include "corrhss/oracles.hpp"

using namespace corrhss;

namespace {

constexpr double kPi = std::numbers::pi;

double initial_hss(std::size_t n) {
  const double dim = std::ldexp(1.0, static_cast<int>(n));
  return std::sqrt(dim - 1) / dim;
}

const ReservoirModel kModels[] = {ColoredDephasing{1.0}, SqueezedVacuumOhmic{0.5, 4, 0.5, 1.5 * kPi},
                                  ColoredDepolarizing{0.5}, LorentzianAmplitudeDamping{4.0}};
const ReservoirModel kUnital[] = {ColoredDephasing{1.0}, SqueezedVacuumOhmic{0.5, 4, 0.5, 1.5 * kPi},
                                  ColoredDepolarizing{0.5}};

}  // namespace

TEST_CASE("basis ids round-trip through text") {
  for (const char* s : {"standard", "bell", "hadamard", "local", "random:0", "random:31"})
    CHECK(BasisId::parse(s).str() == s);
  CHECK_THROWS_AS(BasisId::parse("random:"), InvalidSpec);
  CHECK_THROWS_AS(BasisId::parse("diagonal"), InvalidSpec);
  CHECK(BasisId::parse("standard") < BasisId::parse("random:0"));
}

TEST_CASE("basis rotations are unitary") {
  for (const char* s : {"standard", "bell", "hadamard", "local", "random:0", "random:5"}) {
    const auto u = basis_rotation(BasisId::parse(s), 2, 42);
    CHECK(max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(4)) <= 1e-10);
  }
  const auto u = basis_rotation(BasisId::parse("random:3"), 5, 9);
  CHECK(max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(32)) <= 1e-10);
  CHECK_THROWS_AS(basis_rotation(BasisId::parse("bell"), 3), UnsupportedParameter);
}

TEST_CASE("random bases are seeded and independent of each other") {
  const BasisId r2{BasisKind::random, 2};
  CHECK(basis_rotation(r2, 2, 1) == basis_rotation(r2, 2, 1));
  CHECK_FALSE(basis_rotation(r2, 2, 1) == basis_rotation(r2, 2, 2));
  CHECK_FALSE(basis_rotation(r2, 2, 1) == basis_rotation({BasisKind::random, 3}, 2, 1));
  CHECK(sub_seed(1, 0) != sub_seed(1, 1));
}

TEST_CASE("initial states") {
  const auto rho = initial_state(make_family({}, 2, 0.0)).matrix();
  for (complex v : rho.data()) CHECK(std::abs(v - 0.25) < 1e-15);

  for (const char* s : {"standard", "bell", "hadamard", "local", "random:1"})
    for (double phi : {0.0, 1.1, kPi}) {
      const DensityOperator d = initial_state(make_family(BasisId::parse(s), 2, phi, 3));
      CHECK(std::abs(d.matrix().trace() - 1.0) < 1e-14);
      CHECK(d.purity() == doctest::Approx(1.0).epsilon(1e-14));
    }

  // Bell family at phi = pi: (-|00>-|11> + |00>-|11> + |01>+|10> + |01>-|10>) / (2 sqrt2).
  const auto bell = initial_state(make_family({BasisKind::bell, 0}, 2, kPi)).matrix();
  const double h = std::numbers::sqrt2 / 2;
  const complex psi[4] = {0.0, h, 0.0, -h};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) CHECK(std::abs(bell(r, c) - psi[r] * std::conj(psi[c])) < 1e-15);

  // The local family is a product state with qubit 2 in |0>.
  const auto loc = initial_state(make_family({BasisKind::local, 0}, 2, 0.7)).matrix();
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      if (r >= 2 || c >= 2) CHECK(std::abs(loc(r, c)) < 1e-15);
}

TEST_CASE("phase derivative") {
  for (std::size_t n : {2u, 3u, 5u})
    for (const char* s : {"standard", "random:4"})
      for (double phi : {0.0, 0.4, 2.5}) {
        const PhaseFamily f = make_family(BasisId::parse(s), n, phi, 1);
        const ComplexMatrix x = phase_derivative(f);
        CHECK(std::abs(x.trace()) < 1e-14);
        CHECK(frobenius_hss_norm(x) == doctest::Approx(initial_hss(n)).epsilon(1e-13));
        const double eps = 1e-6;
        PhaseFamily plus = f, minus = f;
        plus.phi += eps;
        minus.phi -= eps;
        ComplexMatrix fd = initial_state(plus).matrix() - initial_state(minus).matrix();
        fd *= complex(1.0 / (2 * eps));
        CHECK(max_abs_diff(fd, x) <= 1e-9);
      }
}

TEST_CASE("hss_value anchors") {
  for (const auto& model : kModels) {
    const std::size_t n_max = is_unital(model) ? 5 : 2;
    for (std::size_t n = 2; n <= n_max; ++n)
      for (double mu : {0.0, 0.5, 1.0}) {
        const PhaseFamily f = make_family({BasisKind::random, 0}, n, 0.9, 17);
        CHECK(hss_value({model, n, mu}, f, 0.0) == doctest::Approx(initial_hss(n)).epsilon(1e-10));
      }
  }
  CHECK(initial_hss(2) == doctest::Approx(0.4330127).epsilon(1e-7));

  const PhaseFamily std2 = make_family({}, 2, kPi);
  const double z = (kPi - std::atan(std::sqrt(15.0))) / std::sqrt(15.0);
  for (double mu : {0.0, 0.3, 1.0}) {
    CHECK(hss_value({ColoredDephasing{1.0}, 2, mu}, std2, z) == doctest::Approx(mu / 4).epsilon(1e-12));
    for (double tau : {0.2, 1.0, 3.3}) {
      const double e = eta(tau, 1.0);
      const double g = (1 - mu) * e * e + mu;
      CHECK(hss_value({ColoredDephasing{1.0}, 2, mu}, std2, tau) ==
            doctest::Approx(0.25 * std::sqrt(g * g + 2 * e * e)).epsilon(1e-12));
    }
  }
}

TEST_CASE("uncorrelated multiqubit dephasing closed form") {
  const auto grid = make_tau_grid(3.0, 0.25);
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto curve = hss_curve({ColoredDephasing{1.0}, n, 0.0}, make_family({}, n, kPi), grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double e = eta(grid[k], 1.0);
      const double expect = std::sqrt(std::pow(1 + e * e, n) - 1) / std::ldexp(1.0, static_cast<int>(n));
      CHECK(std::abs(curve.values[k] - expect) <= 1e-10);
    }
  }
}

TEST_CASE("AD curve matches its closed form") {
  const auto grid = make_tau_grid(10.0, 0.1);
  const auto curve = hss_curve({LorentzianAmplitudeDamping{4.0}, 2, 0.5}, make_family({}, 2, kPi), grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double g = g_ad(grid[k], 4.0);
    const double expect = 0.25 * std::sqrt((g * g + 2) * std::pow(g + 0.5 - 0.5 * g, 2));
    CHECK(std::abs(curve.values[k] - expect) <= 1e-12);
  }
}

TEST_CASE("HSS is non-decreasing in mu for dephasing-type models") {
  const auto taus = make_tau_grid(4.9, 0.1);
  std::vector<double> mus;
  for (int k = 0; k <= 10; ++k) mus.push_back(0.1 * k);
  const PhaseFamily f = make_family({}, 2, kPi);
  for (const auto& model : {kUnital[0], kUnital[1]}) {
    const auto curves = hss_curves(model, 2, mus, f, taus);
    for (std::size_t m = 1; m < mus.size(); ++m)
      for (std::size_t k = 0; k < taus.size(); ++k)
        CHECK(curves[m].values[k] >= curves[m - 1].values[k] - 1e-12);
  }

  // Depolarizing: HSS = |Lambda| sqrt(2c^2 + 1) / 4 with c = Lambda (1 - mu) + mu,
  // monotone in mu only while Lambda >= 0. Where Lambda < 0, |c| first shrinks.
  const auto curves = hss_curves(kUnital[2], 2, mus, f, taus);
  bool saw_dip = false;
  for (std::size_t k = 0; k < taus.size(); ++k) {
    const double l = lambda_depol(taus[k], 0.5);
    for (std::size_t m = 1; m < mus.size(); ++m) {
      const double step = curves[m].values[k] - curves[m - 1].values[k];
      if (l >= 0) CHECK(step >= -1e-12);
      else if (step < -1e-12) saw_dip = true;
    }
  }
  CHECK(saw_dip);
}

TEST_CASE("basis rotation equals rotating the channel") {
  for (const auto& model : kModels)
    for (const char* s : {"bell", "hadamard", "random:2"}) {
      const PhaseFamily rotated = make_family(BasisId::parse(s), 2, 0.8, 5);
      const PhaseFamily plain = make_family({}, 2, 0.8);
      const ComplexMatrix& u = rotated.rotation;
      const double tau = 0.9;
      const CorrelatedChannel ch({model, 2, 0.4}, tau);
      // Standard-frame derivative pushed through U^dagger Phi(U . U^dagger) U.
      const ComplexMatrix x = phase_derivative(plain);
      const ComplexMatrix y = u.adjoint() * ch.apply(u * x * u.adjoint()) * u;
      CHECK(hss_value(ch, rotated) == doctest::Approx(frobenius_hss_norm(y)).epsilon(1e-12));
    }
}

TEST_CASE("chi segments") {
  HssCurve down{{0, 1, 2, 3}, {4, 3, 2, 1}};
  CHECK(chi_segments(down).intervals.empty());
  HssCurve bump{{0, 1, 2, 3, 4}, {1, 0.5, 0.7, 0.9, 0.2}};
  const auto seg = chi_segments(bump);
  REQUIRE(seg.intervals.size() == 1);
  CHECK(seg.intervals[0].first == 1.0);
  CHECK(seg.intervals[0].second == 3.0);
  HssCurve flat{{0, 1, 2}, {1, 1 + 1e-15, 1}};
  CHECK(chi_segments(flat).intervals.empty());
  CHECK(positive_increment_sum(bump.values) == doctest::Approx(0.4));

  const auto grid = make_tau_grid(30.0, 0.01);
  const PhaseFamily f = make_family({}, 2, kPi);
  for (double mu : {0.0, 0.5, 1.0}) {
    const auto s = chi_segments(hss_curve({ColoredDephasing{1.0}, 2, mu}, f, grid));
    REQUIRE_FALSE(s.intervals.empty());
    CHECK(std::abs(s.intervals[0].first - 0.4708) <= 0.01);
    CHECK(chi_segments(hss_curve({ColoredDephasing{0.2}, 2, mu}, f, grid)).intervals.empty());
  }
}

TEST_CASE("measure") {
  const auto grid = make_tau_grid(30.0, 0.01);
  const auto phis = default_phi_grid();
  const auto catalog = default_catalog(2, 0, 4);
  CHECK(catalog.size() == 8);
  for (double mu : {0.0, 0.5, 1.0})
    CHECK(nm_measure({ColoredDephasing{0.2}, 2, mu}, catalog, phis, grid).value == 0.0);

  const auto a = nm_measure({ColoredDephasing{1.0}, 2, 0.0}, catalog, phis, grid);
  const auto b = nm_measure({ColoredDephasing{1.0}, 2, 1.0}, catalog, phis, grid, 3);
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-6));

  // The phase-split evaluation agrees with direct curves.
  const PhaseFamily f{2, catalog[5].rotation, phis[7], catalog[5].id};
  const auto coarse = make_tau_grid(8.0, 0.05);
  const double direct = positive_increment_sum(hss_curve({ColoredDepolarizing{0.5}, 2, 0.3}, f, coarse).values);
  const auto single = std::vector<CatalogEntry>{catalog[5]};
  const double split = nm_measure({ColoredDepolarizing{0.5}, 2, 0.3}, single,
                                  std::vector<double>{phis[7]}, coarse).value;
  CHECK(split == doctest::Approx(direct).epsilon(1e-10));

  CHECK_THROWS(nm_measure({ColoredDephasing{1.0}, 2, 0.0}, {}, phis, grid));
}

TEST_CASE("delta range") {
  const PhaseFamily f = make_family({}, 2, kPi);
  const double e = eta(1.62, 1.0);
  const double expect = 0.25 * (std::sqrt(1 + 2 * e * e) - std::sqrt(e * e * e * e + 2 * e * e));
  CHECK(delta_range(ColoredDephasing{1.0}, 2, 1.62, f) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(expect == doctest::Approx(0.18908).epsilon(1e-4));
  for (std::size_t n = 2; n <= 6; ++n)
    for (const auto& model : kUnital)
      CHECK(std::abs(delta_range(model, n, 0.0, make_family({}, n, kPi))) <= 1e-15);
  CHECK_THROWS_AS(delta_range(LorentzianAmplitudeDamping{}, 3, 1.0, make_family({}, 3, kPi)),
                  UnsupportedParameter);
}

TEST_CASE("tau grids") {
  const auto g = make_tau_grid(30.0, 0.01);
  CHECK(g.size() == 3001);
  CHECK(g.back() == 30.0);
  CHECK(default_tau_grid(SqueezedVacuumOhmic{}).size() == 3001);
  CHECK(default_tau_grid(SqueezedVacuumOhmic{}).back() == doctest::Approx(3.0));
  CHECK_THROWS_AS(make_tau_grid(1.0, 0.0), DomainError);
  CHECK(default_phi_grid().size() == 24);
}
