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

#include "pmlab/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "pmlab/assignment.hpp"
#include "pmlab/cycles.hpp"
#include "pmlab/estimators.hpp"
#include "pmlab/matching.hpp"
#include "pmlab/rng.hpp"
#include "pmlab/theory.hpp"

namespace pmlab {

Graph random_graph(std::size_t vertices, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::bernoulli_distribution keep(p);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < vertices; ++i)
    for (std::size_t j = i + 1; j < vertices; ++j)
      if (keep(rng)) edges.emplace_back(i, j);
  return Graph(vertices, std::move(edges));
}

Matrix random_cost_matrix(std::size_t n, bool integral, std::uint64_t seed) {
  Rng rng(seed);
  Matrix c(n, n);
  std::uniform_int_distribution<int> ints(0, 9);
  std::uniform_real_distribution<double> reals(0.0, 10.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c(i, j) = integral ? ints(rng) : reals(rng);
  return c;
}

namespace {

void note_failure(SuiteResult& s, const std::string& what) {
  ++s.failures;
  s.passed = false;
  if (s.detail.empty()) s.detail = what;
}

SuiteResult lap_suite(std::size_t corpus, std::uint64_t seed) {
  SuiteResult s;
  s.name = "lap-vs-brute";
  for (std::size_t k = 0; k < corpus; ++k) {
    const std::size_t n = 1 + k % 8;
    const Matrix c = random_cost_matrix(n, k % 2 == 0, derive_seed(seed, k));
    const double fast = assignment_cost(c, solve_lap_min(c));
    const double slow = assignment_cost(c, solve_lap_brute(c));
    ++s.cases;
    if (fast != slow) note_failure(s, "objective mismatch at case " + std::to_string(k));
  }
  return s;
}

SuiteResult matching_suite(std::size_t corpus, std::uint64_t seed, const MatcherFn& matcher) {
  SuiteResult s;
  s.name = "matching-vs-brute";
  for (std::size_t k = 0; k < corpus; ++k) {
    const std::size_t v = 1 + k % 12;
    const double p = 0.1 + 0.8 * static_cast<double>(k % 7) / 6.0;
    const Graph g = random_graph(v, p, derive_seed(seed, k));
    const Matching m = matcher(g);
    ++s.cases;
    if (!is_matching_of(m, g)) {
      note_failure(s, "invalid matching at case " + std::to_string(k));
      continue;
    }
    if (m.size() != max_matching_brute(g).size())
      note_failure(s, "cardinality mismatch at case " + std::to_string(k));
  }
  return s;
}

SuiteResult gaug_suite(std::size_t corpus, std::uint64_t seed, const MatcherFn& matcher) {
  SuiteResult s;
  s.name = "gaug-mistake-bound";
  const double sigma2s[] = {1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1};
  for (std::size_t k = 0; k < corpus; ++k) {
    const std::size_t d = 2 + k % 2;
    const std::size_t n = (k / 2) % 2 == 0 ? 10 : 30;
    const double sigma = std::sqrt(sigma2s[(k / 4) % 6]);
    const Instance inst = sample_instance(PositionSpec::isotropic_gaussian(d),
                                          NoiseSpec::isotropic_gaussian(d, sigma), n,
                                          derive_seed(seed, k));
    const Permutation lss = estimate(inst, EstimatorKind::lss());
    const Graph g = build_gaug(inst, 1);
    const Matching m = matcher(g);
    ++s.cases;
    if (!is_matching_of(m, g)) {
      note_failure(s, "invalid matching at case " + std::to_string(k));
      continue;
    }
    if (hamming(lss, inst.pistar) < m.size())
      note_failure(s, "hamming below matching size at case " + std::to_string(k));
  }
  return s;
}

SuiteResult tau_suite(std::uint64_t samples, std::uint64_t seed) {
  SuiteResult s;
  s.name = "tau-consistency";
  struct Case {
    PositionSpec p;
    NoiseSpec q;
  };
  std::vector<Case> cases;
  for (std::size_t d : {2u, 3u}) {
    cases.push_back({PositionSpec::isotropic_gaussian(d), NoiseSpec::isotropic_gaussian(d, 1.0)});
    cases.push_back({PositionSpec::isotropic_gaussian(d), NoiseSpec::rademacher(d, 1.0)});
    cases.push_back({PositionSpec::isotropic_gaussian(d), NoiseSpec::sphere_uniform(d, 1.0)});
    cases.push_back({PositionSpec::uniform_cube(d, 1.0), NoiseSpec::isotropic_gaussian(d, 1.0)});
    cases.push_back({PositionSpec::standard_laplace(d), NoiseSpec::isotropic_gaussian(d, 1.0)});
  }
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto& c = cases[k];
    const auto exact = tau_closed_form(c.p, c.q);
    if (!exact) continue;
    const TauEstimate est = tau_constant(c.p, c.q, samples, derive_seed(seed, k));
    ++s.cases;
    // Five standard errors keeps the fixed-seed false alarm rate negligible.
    if (std::abs(est.tau.value - *exact) > 5.0 * est.tau.stdError) {
      std::ostringstream msg;
      msg << c.p.label() << "/" << c.q.label() << " d=" << c.p.dimension << ": mc "
          << est.tau.value << " vs " << *exact;
      note_failure(s, msg.str());
    }
  }
  return s;
}

}  // namespace

std::vector<SuiteResult> run_verification(const VerifyOptions& options) {
  const MatcherFn matcher = options.matcher ? options.matcher : MatcherFn(max_matching);
  const std::size_t scale = options.quick ? 1 : 2;
  return {lap_suite(200 * scale, derive_seed(options.seed, 1)),
          matching_suite(150 * scale, derive_seed(options.seed, 2), matcher),
          gaug_suite(40 * scale, derive_seed(options.seed, 3), matcher),
          tau_suite((std::uint64_t{1} << 17) * scale, derive_seed(options.seed, 4))};
}

}  // namespace pmlab
