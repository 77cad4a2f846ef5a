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

#include "hindiv/errors.hpp"
#include "hindiv/walk.hpp"
#include "support/networks.hpp"
#include "support/random_network.hpp"

using namespace hindiv;
using nets::et;
using nets::vt;

namespace {

OrientedEdge fwd(std::uint32_t e) { return {EdgeTypeId{e}, Direction::kForward}; }
OrientedEdge rev(std::uint32_t e) { return {EdgeTypeId{e}, Direction::kTransposed}; }

void check_dense(const VertexDistribution& d, const std::vector<double>& want) {
  REQUIRE(d.cardinality() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    CHECK(std::abs(d.mass(static_cast<VertexIndex>(i)) - want[i]) < 1e-15);
  }
}

}  // namespace

TEST_CASE("validate_metapath") {
  const Hin h = nets::branch();
  const MetaPath p = validate_metapath(h, {fwd(0), fwd(2)});
  CHECK(p.length() == 2);
  CHECK(p.source() == vt(0));
  CHECK(p.destination() == vt(3));
  try {
    validate_metapath(h, {fwd(0), fwd(0)});
    FAIL("expected ChainingError");
  } catch (const ChainingError& e) {
    CHECK(e.step() == 1);
  }
  CHECK_THROWS_AS(validate_metapath(h, {}), DomainError);

  const Hin r = nets::recsys();
  const MetaPath round = validate_metapath(r, {fwd(0), rev(0)});
  CHECK(round.source() == vt(0));
  CHECK(round.destination() == vt(0));
}

TEST_CASE("transpose_metapath and sub_path") {
  const Hin h = nets::branch();
  const MetaPath p = validate_metapath(h, {fwd(0), fwd(2)});
  const MetaPath t = transpose_metapath(p);
  CHECK(t.steps == std::vector<OrientedEdge>{rev(2), rev(0)});
  CHECK(t.source() == p.destination());
  CHECK(transpose_metapath(t) == p);
  const MetaPath head = sub_path(p, 0, 1);
  CHECK(head.steps == std::vector<OrientedEdge>{fwd(0)});
  CHECK(head.destination() == vt(1));
  CHECK(sub_path(p, 1, 2).source() == vt(1));
  CHECK_THROWS(sub_path(p, 1, 1));
}

TEST_CASE("transition distributions of the two-type network") {
  const Hin h = nets::two_type();
  check_dense(transition_distribution(h, fwd(0), 0), {0.75, 0.25, 0});
  check_dense(transition_distribution(h, fwd(0), 1), {0, 0.5, 0.5});
  check_dense(transition_distribution(h, rev(0), 0), {1, 0});

  const Hin d = nets::make({{"A", 2}, {"B", 1}}, {{et(0), "r", vt(0), vt(1)}}, {{0, 0, 0}});
  CHECK_THROWS_AS(transition_distribution(d, fwd(0), 1), WalkabilityError);
}

TEST_CASE("propagation on the two-type network") {
  const Hin h = nets::two_type();
  const MetaPath p = validate_metapath(h, {fwd(0)});
  const auto uniform = VertexDistribution::from_dense(vt(0), {0.5, 0.5});
  check_dense(propagate(h, p, uniform), {3.0 / 8, 3.0 / 8, 2.0 / 8});
  const auto skewed = VertexDistribution::from_dense(vt(0), {0.8, 0.2});
  const auto out = propagate(h, p, skewed);
  CHECK(std::abs(out.mass(0) - 0.6) < 1e-15);
  CHECK(std::abs(out.mass(1) - 0.3) < 1e-15);
  CHECK(std::abs(out.mass(2) - 0.1) < 1e-15);

  CHECK_THROWS_AS(propagate(h, p, VertexDistribution::from_dense(vt(1), {1, 0, 0})),
                  TypeMismatchError);
  CHECK_THROWS_AS(propagate(h, p, VertexDistribution::from_dense(vt(0), {0.5, 0.4})),
                  ValidationError);
  // Point mass over a single step equals the transition distribution.
  const auto point = conditional_distribution(h, p, 0);
  CHECK(point.to_dense() == transition_distribution(h, fwd(0), 0).to_dense());
}

TEST_CASE("conditional distributions of the tag networks") {
  const Hin top = nets::tags(true);
  const MetaPath pt = validate_metapath(top, {fwd(0), fwd(1)});
  const auto d = conditional_distribution(top, pt, 0);
  CHECK(std::abs(d.mass(0) - 0.5) < 1e-15);
  for (VertexIndex v = 1; v < 4; ++v) CHECK(std::abs(d.mass(v) - 1.0 / 6) < 1e-15);

  const Hin bottom = nets::tags(false);
  const MetaPath pb = validate_metapath(bottom, {fwd(0), fwd(1)});
  check_dense(conditional_distribution(bottom, pb, 0), {0.5, 0.5});
}

TEST_CASE("sink mass through a chained walk") {
  // A -a-> B -b-> C with b1 dangling in b.
  const Hin raw = nets::make({{"A", 1}, {"B", 2}, {"C", 1}},
                                {{et(0), "a", vt(0), vt(1)}, {et(1), "b", vt(1), vt(2)}},
                                {{0, 0, 0}, {0, 0, 1}, {1, 0, 0}});
  const MetaPath p0 = validate_metapath(raw, {fwd(0), fwd(1)});
  CHECK_THROWS_AS(conditional_distribution(raw, p0, 0), WalkabilityError);
  const Hin h = add_sinks(raw);
  const MetaPath p = validate_metapath(h, {fwd(0), fwd(1)});
  const auto d = conditional_distribution(h, p, 0);
  CHECK(d.mass(*h.sink(vt(2))) == 0.5);
  CHECK(d.mass(0) == 0.5);
}

TEST_CASE("transposed steps from vertices without in-edges reach the sink") {
  const Hin raw = nets::make({{"A", 1}, {"B", 2}}, {{et(0), "r", vt(0), vt(1)}}, {{0, 0, 0}});
  const Hin h = add_sinks(raw);
  const MetaPath p = validate_metapath(h, {rev(0)});
  const auto d = conditional_distribution(h, p, 1);
  CHECK(d.mass(*h.sink(vt(0))) == 1.0);
}

TEST_CASE("projection") {
  const Hin top = nets::tags(true);
  const Projection pt = project(top, validate_metapath(top, {fwd(0), fwd(1)}));
  for (VertexIndex t = 0; t < 4; ++t) CHECK(pt.counts.at(0, t) == 1);

  const Hin bottom = nets::tags(false);
  const Projection pb = project(bottom, validate_metapath(bottom, {fwd(0), fwd(1)}));
  CHECK(pb.counts.at(0, 0) == 1);
  CHECK(pb.counts.at(0, 1) == 3);

  const Hin f3 = nets::two_type();
  const Projection single = project(f3, validate_metapath(f3, {fwd(0)}));
  CHECK(single.counts == f3.adjacency(fwd(0)));

  // 2^40 parallel edges squared overflows 64 bits.
  const Hin big = nets::make({{"A", 1}}, {{et(0), "loop", vt(0), vt(0)}},
                                {{0, 0, 0, std::uint64_t{1} << 40}});
  CHECK_THROWS_AS(project(big, validate_metapath(big, {fwd(0), fwd(0)})), OverflowError);
  CHECK_NOTHROW(project(big, validate_metapath(big, {fwd(0)})));
}

TEST_CASE("VertexDistribution representations agree") {
  const std::size_t card = kDenseCardinalityThreshold + 5;
  const auto sparse = VertexDistribution::from_entries(vt(0), card, {{3, 0.25}, {card - 1, 0.75}});
  CHECK_FALSE(sparse.is_dense());
  CHECK(sparse.mass(3) == 0.25);
  CHECK(sparse.mass(4) == 0.0);
  CHECK(sparse.total() == 1.0);
  CHECK(sparse.nonzeros().size() == 2);
  const auto dense = VertexDistribution::from_entries(vt(0), 10, {{3, 0.25}, {9, 0.75}});
  CHECK(dense.is_dense());
  CHECK(dense.nonzeros() == SparseVector{{3, 0.25}, {9, 0.75}});
  CHECK(VertexDistribution::point_mass(vt(0), card, 7).mass(7) == 1.0);
}

TEST_CASE("stochasticity, linearity and composition on random networks") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int n = 0; n < 300; ++n) {
    const auto net = testing_support::random_network(rng, {});
    const Hin& h = net.hin;
    const MetaPath path = testing_support::random_metapath(h, rng, 4);
    const std::size_t k = h.cardinality(path.source());
    const auto s1 = VertexDistribution::from_dense(path.source(),
                                                   testing_support::random_distribution(rng, k));
    const auto s2 = VertexDistribution::from_dense(path.source(),
                                                   testing_support::random_distribution(rng, k));
    const double a = unit(rng);
    std::vector<double> mix(k);
    for (std::size_t i = 0; i < k; ++i) {
      mix[i] = a * s1.mass(static_cast<VertexIndex>(i)) + (1 - a) * s2.mass(static_cast<VertexIndex>(i));
    }
    const auto d1 = propagate(h, path, s1);
    const auto d2 = propagate(h, path, s2);
    const auto dm = propagate(h, path, VertexDistribution::from_dense(path.source(), mix));
    CHECK(std::abs(d1.total() - 1) < 1e-9);
    for (VertexIndex w = 0; w < d1.cardinality(); ++w) {
      CHECK(d1.mass(w) >= 0);
      CHECK(std::abs(dm.mass(w) - (a * d1.mass(w) + (1 - a) * d2.mass(w))) < 1e-12);
    }
    if (path.length() >= 2) {
      std::uniform_int_distribution<std::size_t> split(1, path.length() - 1);
      const std::size_t i = split(rng);
      const auto mid = propagate(h, sub_path(path, 0, i), s1);
      const auto end = propagate(h, sub_path(path, i, path.length()), mid);
      for (VertexIndex w = 0; w < d1.cardinality(); ++w) {
        CHECK(std::abs(end.mass(w) - d1.mass(w)) < 1e-12);
      }
    }
  }
}
