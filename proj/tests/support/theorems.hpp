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

#pragma once

// Randomized checks of the chain-rule identity between collective, mean
// individual and mean backward diversity, and of the path-splitting bound.

#include <cmath>
#include <random>
#include <vector>

#include "hindiv/netdiv.hpp"
#include "support/random_network.hpp"
#include "support/tally.hpp"

namespace testing_support {

struct TheoremResults {
  Tally identity{"chain identity"};
  Tally bound{"splitting bound"};
  Tally split_identity{"splitting identity"};
  std::size_t strict = 0;
  std::size_t equal = 0;
};

inline double start_diversity(const hindiv::Hin& h, const hindiv::MetaPath& p,
                              const hindiv::StartSpec& s) {
  using namespace hindiv;
  return measure_detail::diversity_of(s.resolve(h, p.source()).nonzeros(), AlphaOrder::one());
}

/// True when every tail vertex with positive mass under `weights` has
/// exactly one predecessor reaching it, so the tail is bijective on the
/// support.
inline bool bijective_on_support(const hindiv::Hin& h, const hindiv::MetaPath& tail,
                                 const hindiv::VertexDistribution& head_end) {
  using namespace hindiv;
  std::vector<int> hits(h.cardinality(tail.destination()), 0);
  for (const auto& [v, m] : head_end.nonzeros()) {
    const auto d = conditional_distribution(h, tail, v).nonzeros();
    if (d.size() != 1) return false;
    if (++hits[d.front().index] > 1) return false;
  }
  return true;
}

inline TheoremResults theorem_suite(std::uint64_t seed, std::size_t count, double tol = 1e-9) {
  using namespace hindiv;
  std::mt19937_64 rng(seed);
  NetworkConfig cfg;
  cfg.max_vertices = 20;
  const MeasureOptions inc{SinkPolicy::kInclude};
  const AlphaOrder one = AlphaOrder::one();
  TheoremResults out;

  for (std::size_t n = 0; n < count; ++n) {
    const auto net = random_network(rng, cfg);
    const Hin& h = net.hin;
    const MetaPath p = random_metapath(h, rng, 4);
    const StartSpec start = StartSpec::uniform();
    const std::string tag = "network " + std::to_string(n);

    const double c = collective_diversity(h, p, start, one, inc);
    const double m = mean_individual_diversity(h, p, start, one, inc);
    const double b = mean_backward_diversity(h, p, start, BackwardSemantics::kPosterior, one, inc);
    const double lhs = c * b;
    const double rhs = start_diversity(h, p, start) * m;
    out.identity.check(relative_error(lhs, rhs) <= tol, tag + ": " + show(lhs) + " vs " + show(rhs));

    if (p.length() < 2) continue;
    const std::size_t cut = std::uniform_int_distribution<std::size_t>(1, p.length() - 1)(rng);
    const MetaPath head = sub_path(p, 0, cut);
    const MetaPath tail = sub_path(p, cut, p.length());
    const VertexDistribution end = propagate(h, head, start.resolve(h, p.source()));
    const StartSpec mid = StartSpec::explicit_weights(end.to_dense(), "head");
    const double dh = collective_diversity(h, head, start, one, inc);
    const double mt = mean_individual_diversity(h, tail, mid, one, inc);
    const double bt = mean_backward_diversity(h, tail, mid, BackwardSemantics::kPosterior, one, inc);
    out.bound.check(c <= dh * mt * (1 + tol), tag + ": " + show(c) + " > " + show(dh * mt));
    out.split_identity.check(relative_error(c * bt, dh * mt) <= tol,
                             tag + ": " + show(c * bt) + " vs " + show(dh * mt));
    if (c < dh * mt * (1 - 1e-6)) ++out.strict;
    if (bijective_on_support(h, tail, end)) {
      out.bound.check(relative_error(c, dh * mt) <= tol, tag + ": bijective tail not tight");
      ++out.equal;
    }
  }
  return out;
}

}  // namespace testing_support
