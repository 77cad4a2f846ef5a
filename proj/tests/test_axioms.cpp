// Copyright 2026 The hindiv Authors
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
#include <random>

#include "support/axioms.hpp"

using namespace hindiv;
using namespace testing_support;

namespace {

void require_all(const std::vector<Tally>& tallies) {
  for (const auto& t : tallies) {
    INFO(t.name << ": " << t.failures << "/" << t.cases << " failed, first: " << t.first_failure);
    CHECK(t.passed());
  }
}

}  // namespace

TEST_CASE("axioms hold on random distributions") { require_all(axiom_suite(11, 2000)); }

TEST_CASE("weak and strong additivity") { require_all(additivity_suite(12, 300)); }

TEST_CASE("order limits and monotonicity") {
  std::mt19937_64 rng(13);
  const std::vector<double> grid{0, 0.5, 1, 2, 4, 16, 64, INFINITY};
  for (int n = 0; n < 500; ++n) {
    const Distribution p(random_distribution(rng, 1 + n % 60));
    const double d1 = true_diversity(p, AlphaOrder::one());
    CHECK(relative_error(true_diversity(p, AlphaOrder::from_value(1 + 1e-6)), d1) < 1e-4);
    CHECK(relative_error(true_diversity(p, AlphaOrder::from_value(1 - 1e-6)), d1) < 1e-4);
    double prev = INFINITY;
    for (double a : grid) {
      const double d = true_diversity(p, AlphaOrder::from_value(a));
      CHECK(d <= prev * (1 + 1e-12));
      prev = d;
    }
  }
}

TEST_CASE("relative diversity against the uniform baseline") {
  std::mt19937_64 rng(14);
  for (int n = 0; n < 500; ++n) {
    const std::size_t k = 1 + n % 50;
    const Distribution p(random_distribution(rng, k));
    const auto u = Distribution::uniform(k);
    for (const auto& a : axiom_orders()) {
      const double got = relative_true_diversity(p, u, a) * true_diversity(p, a);
      CHECK(relative_error(got, static_cast<double>(k)) < 1e-10);
      CHECK(relative_true_diversity(p, u, a) >= 1 - 1e-12);
      CHECK(relative_true_diversity(p, u, a) <= k * (1 + 1e-12));
    }
  }
}
