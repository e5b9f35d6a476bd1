// Copyright 2026 The pmlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <numbers>

#include <json.hpp>

#include "oracles.hpp"
#include "pmlab/rng.hpp"
#include "pmlab/theory.hpp"

using namespace pmlab;
using std::numbers::pi;

namespace {
const double kLog2 = std::log(2.0);
}

TEST_CASE("minimax lower bound") {
  CHECK(minimax_lower_bound(3, 1, 1.0, 1.0, kLog2) == doctest::Approx(3.0 / 4096.0).epsilon(1e-14));
  CHECK(minimax_lower_bound(1000, 2, 1e-9, 1.0, kLog2) < 1e-10);
  CHECK_THROWS_AS(minimax_lower_bound(2, 1, 1.0, 1.0, kLog2), DomainError);
  CHECK_THROWS_AS(minimax_lower_bound(3, 1, 1.0, 0.0, kLog2), DomainError);
  CHECK_THROWS_AS(minimax_lower_bound(3, 1, 1.0, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(minimax_lower_bound(3, 1, -1.0, 1.0, kLog2), DomainError);
}

TEST_CASE("matching size and LSS upper bounds") {
  CHECK(matching_size_lower_bound(10, 1, 1.0, 1.0, 1.0, kLog2) == doctest::Approx(10.0 / 1024.0).epsilon(1e-14));
  CHECK(matching_size_lower_bound(10, 2, 1e-9, 1.0, 1.0, kLog2) < 1e-12);
  CHECK_THROWS_AS(matching_size_lower_bound(10, 1, 0.0, 1.0, 1.0, kLog2), DomainError);
  CHECK(lss_upper_bound(10, 2, 0.1, 1.0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(lss_upper_bound(10, 2, 100.0, 1.0) == 10.0);
}

TEST_CASE("high probability bounds") {
  const HpBounds b = hp_bounds(100, 1, 0.1, 1.0, kLog2);
  CHECK(b.hpLss == doctest::Approx(100.0 / 8192.0).epsilon(1e-14));
  CHECK(b.hpMatching == doctest::Approx(100.0 / 32.0 / 64.0).epsilon(1e-14));
  CHECK(b.positiveProbability == doctest::Approx(b.hpLss / 2.0).epsilon(1e-14));
  // Each is half of the expectation version with the same exponent.
  CHECK(b.hpLss == doctest::Approx(minimax_lower_bound(100, 1, 0.1, 1.0, kLog2) / 2.0).epsilon(1e-14));
  CHECK(b.hpMatching ==
        doctest::Approx(matching_size_lower_bound(100, 1, 0.1, 1.0, 1.0, kLog2) / 2.0).epsilon(1e-14));
  const HpBounds z = hp_bounds(100, 2, 1e-12, 0.5, 1.0);
  CHECK(z.hpMatching < 1e-15);

  Rng rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const double n = 3 + 1000 * u(rng), sigma = u(rng), gamma = 0.01 + 0.99 * u(rng);
    const double beta = kLog2 + u(rng);
    const std::size_t d = 1 + t % 4;
    const HpBounds h = hp_bounds(n, d, sigma, gamma, beta);
    CHECK(h.positiveProbability <= h.hpLss);
    CHECK(h.hpLss <= minimax_lower_bound(n, d, sigma, gamma, beta));
  }
}

TEST_CASE("formulas are bit-reproducible") {
  CHECK(minimax_lower_bound(77, 3, 0.2, 0.5, 1.0) == minimax_lower_bound(77, 3, 0.2, 0.5, 1.0));
  CHECK(unit_ball_volume(5) == unit_ball_volume(5));
}

TEST_CASE("unit ball volumes") {
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(unit_ball_volume(2) == doctest::Approx(pi).epsilon(1e-14));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * pi / 3.0).epsilon(1e-14));
  CHECK(unit_ball_volume(4) == doctest::Approx(pi * pi / 2.0).epsilon(1e-14));
}

TEST_CASE("tau closed forms") {
  const auto g2 = PositionSpec::isotropic_gaussian(2);
  CHECK(*tau_closed_form(g2, NoiseSpec::isotropic_gaussian(2, 1.0)) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(*tau_closed_form(g2, NoiseSpec::rademacher(2, 1.0)) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(*tau_closed_form(PositionSpec::isotropic_gaussian(3), NoiseSpec::isotropic_gaussian(3, 1.0)) ==
        doctest::Approx(2.0 / (3.0 * pi)).epsilon(1e-13));
  CHECK(*noise_moment_closed_form(NoiseSpec::isotropic_gaussian(3, 1.0)) ==
        doctest::Approx(32.0 / std::sqrt(pi)).epsilon(1e-13));
  CHECK(*expected_density_closed_form(PositionSpec::uniform_cube(2, 1.0)) == doctest::Approx(0.25));
}

TEST_CASE("tau Monte Carlo agrees with closed forms") {
  struct Case {
    PositionSpec p;
    NoiseSpec q;
  };
  const std::vector<Case> cases = {
      {PositionSpec::isotropic_gaussian(2), NoiseSpec::isotropic_gaussian(2, 1.0)},
      {PositionSpec::isotropic_gaussian(3), NoiseSpec::isotropic_gaussian(3, 1.0)},
      {PositionSpec::uniform_cube(2, 1.0), NoiseSpec::rademacher(2, 1.0)},
      {PositionSpec::standard_laplace(2), NoiseSpec::sphere_uniform(2, 1.0)},
      {PositionSpec::diagonal_gaussian({1.0, 3.0}), NoiseSpec::uniform_cube(2, 1.0)},
  };
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto want = tau_closed_form(cases[k].p, cases[k].q);
    REQUIRE(want.has_value());
    const TauEstimate e = tau_constant(cases[k].p, cases[k].q, 1 << 18, derive_seed(3, k));
    CHECK(std::abs(e.tau.value - *want) <= 5.0 * e.tau.stdError);
    CHECK(std::abs(e.tau.value - *want) <= 0.02 * *want);
  }
}

TEST_CASE("tau standard error halves when samples quadruple") {
  // SE scales as N^{-1/2}.
  const auto p = PositionSpec::isotropic_gaussian(2);
  const auto q = NoiseSpec::isotropic_gaussian(2, 1.0);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const double a = tau_constant(p, q, 1 << 16, s).tau.stdError;
    const double b = tau_constant(p, q, 1 << 17, s).tau.stdError;
    const double c = tau_constant(p, q, 1 << 18, s).tau.stdError;
    CHECK(a / b == doctest::Approx(std::sqrt(2.0)).epsilon(0.2));
    CHECK(a / c == doctest::Approx(2.0).epsilon(0.2));
  }
}

TEST_CASE("tau Monte Carlo does not depend on threads") {
  const auto p = PositionSpec::standard_laplace(3);
  const auto q = NoiseSpec::rademacher(3, 1.0);
  const TauEstimate a = tau_constant(p, q, 100000, 9, 1), b = tau_constant(p, q, 100000, 9, 3);
  CHECK(a.tau.value == b.tau.value);
  CHECK(a.tau.stdError == b.tau.stdError);
}

TEST_CASE("augmenting 2-cycle rate") {
  const auto p = PositionSpec::isotropic_gaussian(2);
  const auto q = NoiseSpec::isotropic_gaussian(2, 1.0);
  const McEstimate zero = augmenting_2cycle_rate(p, q, 0.0, 1000, 1);
  CHECK(zero.degenerate);
  CHECK(zero.value == 0.0);

  const McEstimate big = augmenting_2cycle_rate(p, q, 1e3, 1 << 16, 2);
  CHECK(big.value * 1e6 == doctest::Approx(0.5).epsilon(0.02));

  const McEstimate small = augmenting_2cycle_rate(p, q, 1e-2, 1 << 22, 3);
  CHECK(std::abs(small.value - 0.25) <= 3.0 * small.stdError);
}

TEST_CASE("high-dimensional SNR") {
  HDParams iso{{1.0, 1.0, 1.0}, {0.5, 0.5, 0.5}, 1.0, 1.0, 100.0};
  CHECK(snr_lss(iso) == doctest::Approx(3.0 / (0.5 * std::log(100.0))).epsilon(1e-14));
  CHECK(snr_lssc(iso) == doctest::Approx(snr_lss(iso)).epsilon(1e-14));

  HDParams p{{1.0, 1.0}, {1.0, 4.0}, 1.0, 1.0, std::exp(1.0)};
  CHECK(snr_lss(p) == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(snr_lssc(p) == doctest::Approx(1.25).epsilon(1e-14));

  Rng rng(4);
  std::uniform_real_distribution<double> u(0.01, 10.0);
  for (int t = 0; t < 1000; ++t) {
    HDParams h;
    const std::size_t d = 1 + t % 20;
    h.sigmaX2.resize(d);
    h.sigmaZ2.resize(d);
    for (std::size_t k = 0; k < d; ++k) {
      h.sigmaX2[k] = u(rng);
      h.sigmaZ2[k] = u(rng);
    }
    h.n = 3 + u(rng) * 100;
    CHECK(snr_lssc(h) >= snr_lss(h) * (1.0 - 1e-12));
  }

  HDParams bad = p;
  bad.sigmaZ2 = {1.0};
  CHECK_THROWS_AS(snr_lss(bad), DomainError);
  bad = p;
  bad.sigmaX2[0] = 0.0;
  CHECK_THROWS_AS(stable_ranks(bad), DomainError);
}

TEST_CASE("stable ranks") {
  HDParams id{std::vector<double>(6, 1.0), std::vector<double>(6, 1.0), 1.0, 1.0, 10.0};
  const StableRanks r = stable_ranks(id);
  CHECK(r.zx == 6.0);
  CHECK(r.x == 6.0);
  CHECK(r.zinvx == 6.0);

  HDParams spike{std::vector<double>(50, 1.0), std::vector<double>(50, 1.0), 1.0, 1.0, 10.0};
  spike.sigmaX2[0] = 50.0;
  CHECK(stable_ranks(spike).x == doctest::Approx(99.0 / 50.0).epsilon(1e-14));

  HDParams a{{1.0, 2.0, 3.0}, {4.0, 1.0, 2.0}, 1.0, 1.0, 10.0};
  HDParams b{{3.0, 1.0, 2.0}, {2.0, 4.0, 1.0}, 1.0, 1.0, 10.0};
  CHECK(stable_ranks(a).zx == stable_ranks(b).zx);
  CHECK(stable_ranks(a).x == stable_ranks(b).x);
}

TEST_CASE("gaussian q and TV bounds") {
  CHECK(gaussian_q(0.0) == 0.5);
  CHECK(gaussian_q(std::sqrt(2.0)) == doctest::Approx(0.158655253931457).epsilon(1e-12));
  double prev = 0.5;
  for (double s = 0.5; s <= 40.0; s += 0.5) {
    const double q = gaussian_q(s);
    CHECK(q < prev);
    CHECK(q > 0.0);
    // 1 - Phi loses relative accuracy in the far tail.
    if (s <= 8.0) CHECK(q == doctest::Approx(1.0 - oracle::phi(s / std::sqrt(2.0))).epsilon(1e-6));
    prev = q;
  }
  CHECK(gaussian_tv_lower(0.0) == 0.5);
  CHECK(gaussian_tv_lower(1.0) == doctest::Approx(0.18393972058572117).epsilon(1e-14));
  CHECK(gaussian_tv_lower(2.0) < gaussian_tv_lower(1.0));
  CHECK_THROWS_AS(gaussian_tv_lower(-1.0), DomainError);
}

TEST_CASE("log regime") {
  const LogRegime r = log_regime(1.0, 1.0);
  CHECK(r.gammaStar == 1.0);
  CHECK(r.alpha == doctest::Approx(2.0 - 0.5 * kLog2).epsilon(1e-14));
  CHECK(r.rate(1.0) == 0.0);
  CHECK(r.rate(0.5) > 0.0);
  CHECK(r.rate(2.0) > 0.0);
  CHECK(r.rate(1.5) < 0.5 * (r.rate(1.0) + r.rate(2.0)));
  CHECK_THROWS_AS(r.rate(0.0), DomainError);
  for (double a : {0.3, 1.0, 4.0})
    for (double s2 : {0.1, 1.0, 7.0}) {
      const LogRegime l = log_regime(a, s2);
      CHECK(l.objective(l.gammaStar) == doctest::Approx(l.alpha).epsilon(1e-12));
      CHECK(l.objective(l.gammaStar * 1.1) <= l.alpha);
      CHECK(l.objective(l.gammaStar * 0.9) <= l.alpha);
    }
  CHECK_THROWS_AS(log_regime(0.0, 1.0), DomainError);
}

TEST_CASE("theory report JSON") {
  TheoryReport rep;
  rep.name = "minimax";
  rep.value = 0.5;
  rep.inputs = {{"n", 3.0}, {"d", 1.0}};
  rep.formulaRef = "minimax";
  const auto j = nlohmann::json::parse(rep.to_json());
  CHECK(j["name"] == "minimax");
  CHECK(j["value"] == 0.5);
  CHECK(j["inputs"]["n"] == 3.0);
}
