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

// Library against the exact-rational enumerator on random small networks:
// propagation, projection and every measure at orders 0, 1, 2 and infinity,
// under both sink policies.

#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "hindiv/errors.hpp"
#include "hindiv/netdiv.hpp"
#include "oracle/oracle.hpp"
#include "support/random_network.hpp"
#include "support/tally.hpp"

namespace testing_support {

/// Relative tolerance for values the oracle holds as exact rationals.
inline constexpr double kRationalTolerance = 1e-13;
/// Relative tolerance for order one and for weighted geometric means.
inline constexpr double kIrrationalTolerance = 1e-12;

class OracleSuite {
 public:
  explicit OracleSuite(std::uint64_t seed) : rng_(seed) {}

  void run(std::size_t count) {
    NetworkConfig cfg;
    cfg.max_vertices = 8;
    for (std::size_t n = 0; n < count; ++n) {
      const auto net = random_network(rng_, cfg);
      const auto path = random_metapath(net.hin, rng_, 3);
      run_one(net, path, "network " + std::to_string(n));
    }
  }

  std::vector<Tally> tallies() const {
    std::vector<Tally> out;
    for (const auto& [name, t] : tallies_) out.push_back(t);
    return out;
  }

 private:
  using Q = oracle::Q;
  using Dist = oracle::Dist;

  static constexpr oracle::Order kOrders[] = {oracle::Order::kZero, oracle::Order::kOne,
                                              oracle::Order::kTwo, oracle::Order::kInf};

  static hindiv::AlphaOrder to_alpha(oracle::Order a) {
    using hindiv::AlphaOrder;
    switch (a) {
      case oracle::Order::kZero: return AlphaOrder::zero();
      case oracle::Order::kOne: return AlphaOrder::one();
      case oracle::Order::kTwo: return AlphaOrder::two();
      case oracle::Order::kInf: return AlphaOrder::infinity();
    }
    return AlphaOrder::one();
  }

  Tally& tally(const std::string& name) {
    auto it = tallies_.find(name);
    if (it == tallies_.end()) it = tallies_.emplace(name, Tally{name}).first;
    return it->second;
  }

  // Support sizes (order zero) must match bit for bit; other rational
  // values are held to kRationalTolerance.
  void compare(const std::string& measure, double got, const oracle::Value& want, bool mean,
               const std::string& where, bool count = false) {
    double tol = kIrrationalTolerance;
    if (want.exact && !mean) tol = kRationalTolerance;
    const double w = static_cast<double>(want.approx);
    const bool ok = count ? got == w : relative_error(got, w) <= tol;
    tally(measure).check(ok, where + ": got " + show(got) + ", want " + show(w));
  }

  // Either the library value matches or both sides reject the input.
  void compare_or_throw(const std::string& measure, const std::function<double()>& got,
                        const std::function<oracle::Value()>& want, bool mean,
                        const std::string& where) {
    std::optional<oracle::Value> expected;
    try {
      expected = want();
    } catch (const std::runtime_error&) {
    }
    try {
      const double g = got();
      if (!expected) {
        tally(measure).check(false, where + ": library accepted input the oracle rejects");
        return;
      }
      compare(measure, g, *expected, mean, where);
    } catch (const hindiv::Error& e) {
      tally(measure).check(!expected, where + ": unexpected " + e.what());
    }
  }

  Dist reduce(const oracle::Network& ref, std::size_t type, const Dist& d, bool exclude) const {
    return exclude ? oracle::exclude(d, ref.sink(type)) : d;
  }

  static oracle::Value relative_checked(const Dist& p, const Dist& q, oracle::Order a) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] > 0 && q[i] == 0) throw std::runtime_error("oracle: not absolutely continuous");
    }
    return oracle::relative(p, q, a);
  }

  void run_one(const RandomNetwork& net, const hindiv::MetaPath& path, const std::string& tag) {
    using namespace hindiv;
    const Hin& h = net.hin;
    const oracle::Network& ref = net.reference;
    const auto steps = to_oracle(path);
    const auto back = oracle::transpose(steps);
    const std::size_t src = path.source().value;
    const std::size_t dst = path.destination().value;
    const std::size_t n_src = ref.cardinality(src);
    const std::size_t n_dst = ref.cardinality(dst);
    const std::size_t real_src = ref.sink(src) ? n_src - 1 : n_src;

    // Uniform and random integer-weighted starts over non-sink vertices.
    Dist uniform(n_src, Q(0));
    for (std::size_t v = 0; v < real_src; ++v) uniform[v] = Q(1, static_cast<long>(real_src));
    const auto counts = random_counts(rng_, real_src);
    std::vector<double> weights(counts.begin(), counts.end());
    Dist weighted(n_src, Q(0));
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    for (std::size_t v = 0; v < real_src; ++v) weighted[v] = Q(counts[v], total);
    const StartSpec uniform_spec = StartSpec::uniform();
    const StartSpec weighted_spec = StartSpec::explicit_weights(weights, "random");

    // Propagation.
    const Dist end_u = ref.propagate(steps, uniform);
    const Dist end_w = ref.propagate(steps, weighted);
    {
      const auto got = propagate(h, path, weighted_spec.resolve(h, path.source()));
      for (std::size_t w = 0; w < n_dst; ++w) {
        const double want = static_cast<double>(oracle::to_ld(end_w[w]));
        tally("propagate").check(std::abs(got.mass(static_cast<VertexIndex>(w)) - want) <= 1e-15 + 1e-13 * want,
                                 tag + ": vertex " + std::to_string(w));
      }
    }

    // Projection counts.
    {
      const Projection proj = project(h, path);
      for (std::size_t v = 0; v < n_src; ++v) {
        const auto want = ref.path_counts(steps, v);
        bool ok = true;
        for (std::size_t w = 0; w < n_dst; ++w) {
          ok = ok && proj.counts.at(v, static_cast<VertexIndex>(w)) == want[w];
        }
        tally("project").check(ok, tag + ": row " + std::to_string(v));
      }
    }

    std::vector<Dist> ind(n_src);
    for (std::size_t v = 0; v < n_src; ++v) ind[v] = ref.propagate(steps, ref.point(src, v));
    std::vector<Dist> tr(n_dst);
    for (std::size_t w = 0; w < n_dst; ++w) tr[w] = ref.propagate(back, ref.point(dst, w));

    for (const bool exclude : {false, true}) {
      const MeasureOptions opts{exclude ? SinkPolicy::kExclude : SinkPolicy::kInclude};
      const std::string pol = exclude ? " exclude" : " include";
      const auto red_dst = [&](const Dist& d) { return reduce(ref, dst, d, exclude); };
      const auto red_src = [&](const Dist& d) { return reduce(ref, src, d, exclude); };
      for (const auto a : kOrders) {
        const AlphaOrder alpha = to_alpha(a);
        const std::string where = tag + pol + " alpha " + alpha.to_string();

        compare("collective", collective_diversity(h, path, weighted_spec, alpha, opts),
                oracle::diversity(red_dst(end_w), a), false, where,
                a == oracle::Order::kZero);

        for (std::size_t v = 0; v < n_src; ++v) {
          const auto vi = static_cast<VertexIndex>(v);
          const std::string at = where + " v " + std::to_string(v);
          compare("individual", individual_diversity(h, path, vi, alpha, opts),
                  oracle::diversity(red_dst(ind[v]), a), false, at,
                  a == oracle::Order::kZero);
          compare_or_throw(
              "projected", [&] { return projected_diversity(h, path, vi, alpha, opts); },
              [&] {
                const auto c = ref.path_counts(steps, v);
                std::uint64_t t = 0;
                for (auto x : c) t += x;
                if (t == 0) throw std::runtime_error("oracle: no paths");
                Dist d(c.size());
                for (std::size_t w = 0; w < c.size(); ++w) d[w] = Q(c[w], t);
                return oracle::diversity(red_dst(d), a);
              },
              false, at);
          compare_or_throw(
              "relative_individual",
              [&] { return relative_individual_diversity(h, path, vi, uniform_spec, alpha, opts); },
              [&] { return relative_checked(red_dst(ind[v]), red_dst(end_u), a); }, false, at);
        }

        compare_or_throw(
            "relative_collective",
            [&] {
              return relative_collective_diversity(h, path, path, weighted_spec, uniform_spec, alpha, opts);
            },
            [&] { return relative_checked(red_dst(end_w), red_dst(end_u), a); }, false, where);

        {
          std::vector<std::pair<Q, oracle::Value>> terms;
          for (std::size_t v = 0; v < n_src; ++v) {
            if (weighted[v] > 0) terms.push_back({weighted[v], oracle::diversity(red_dst(ind[v]), a)});
          }
          compare("mean_individual", mean_individual_diversity(h, path, weighted_spec, alpha, opts),
                  {std::nullopt, oracle::geometric_mean(terms)}, true, where);
        }

        for (std::size_t w = 0; w < n_dst; ++w) {
          const auto wi = static_cast<VertexIndex>(w);
          const std::string at = where + " w " + std::to_string(w);
          compare("backward_transpose", backward_diversity_transpose(h, path, wi, alpha, opts),
                  oracle::diversity(red_src(tr[w]), a), false, at,
                  a == oracle::Order::kZero);
          compare_or_throw(
              "backward_posterior",
              [&] { return backward_diversity_posterior(h, path, wi, weighted_spec, alpha, opts); },
              [&] { return oracle::diversity(red_src(ref.posterior(steps, weighted, w)), a); }, false,
              at);
        }

        const Dist end_red = red_dst(end_w);
        for (const auto s : {BackwardSemantics::kTranspose, BackwardSemantics::kPosterior}) {
          std::vector<std::pair<Q, oracle::Value>> terms;
          for (std::size_t w = 0; w < n_dst; ++w) {
            if (end_red[w] == 0) continue;
            const Dist origins = s == BackwardSemantics::kTranspose
                                     ? red_src(tr[w])
                                     : red_src(ref.posterior(steps, weighted, w));
            terms.push_back({end_red[w], oracle::diversity(origins, a)});
          }
          compare("mean_backward_" + to_string(s),
                  mean_backward_diversity(h, path, weighted_spec, s, alpha, opts),
                  {std::nullopt, oracle::geometric_mean(terms)}, true, where);
        }
      }
    }
  }

  std::mt19937_64 rng_;
  std::map<std::string, Tally> tallies_;
};

inline std::vector<Tally> oracle_suite(std::uint64_t seed, std::size_t count) {
  OracleSuite suite(seed);
  suite.run(count);
  return suite.tallies();
}

}  // namespace testing_support
