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
#include "hindiv/hin.hpp"
#include "support/networks.hpp"
#include "support/random_network.hpp"

using namespace hindiv;
using nets::et;
using nets::vt;

namespace {

const OrientedEdge kE1{EdgeTypeId{0}, Direction::kForward};

}  // namespace

TEST_CASE("two-type network multiplicities and degrees") {
  const Hin h = nets::two_type();
  CHECK(h.edge_total(EdgeTypeId{0}) == 6);
  // 3 + 1 from the record list.
  CHECK(h.out_degree(kE1, {vt(0), 0}) == 4);
  // 1 + 1 from the record list.
  CHECK(h.in_degree(kE1, {vt(1), 1}) == 2);
  CHECK(h.multiplicity(kE1, 0, 0) == 3);
  CHECK(h.multiplicity(kE1, 1, 0) == 0);
  CHECK_THROWS_AS(h.out_degree(kE1, {vt(1), 0}), DomainError);
  CHECK_THROWS_AS(h.in_degree(kE1, {vt(0), 0}), DomainError);
  CHECK_FALSE(h.augmented());
  CHECK_FALSE(h.sink(vt(0)).has_value());
}

TEST_CASE("build_hin validation") {
  std::vector<VertexTypeDecl> types{{"V_0", 2}, {"V_1", 3}};
  std::vector<EdgeTypeDecl> edges{{et(0), "E_1", vt(0), vt(1)}};

  SUBCASE("empty edge set is valid") {
    const Hin h = build_hin(types, edges, {});
    CHECK(h.edge_total(EdgeTypeId{0}) == 0);
  }
  SUBCASE("endpoint type mismatch names the record") {
    const std::vector<EdgeRecord> r{{et(0), {vt(1), 0}, {vt(1), 1}, 1}};
    try {
      build_hin(types, edges, r);
      FAIL("expected TypeMismatchError");
    } catch (const TypeMismatchError& e) {
      CHECK(std::string(e.what()).find("record 0") != std::string::npos);
    }
  }
  SUBCASE("out of range vertex") {
    const std::vector<EdgeRecord> r{{et(0), {vt(0), 5}, {vt(1), 1}, 1}};
    CHECK_THROWS_AS(build_hin(types, edges, r), OutOfRangeError);
  }
  SUBCASE("unknown edge type") {
    const std::vector<EdgeRecord> r{{et(3), {vt(0), 0}, {vt(1), 1}, 1}};
    CHECK_THROWS_AS(build_hin(types, edges, r), OutOfRangeError);
  }
  SUBCASE("zero multiplicity") {
    const std::vector<EdgeRecord> r{{et(0), {vt(0), 0}, {vt(1), 1}, 0}};
    CHECK_THROWS_AS(build_hin(types, edges, r), ValidationError);
  }
  SUBCASE("duplicates accumulate") {
    const std::vector<EdgeRecord> r{{et(0), {vt(0), 0}, {vt(1), 1}, 1},
                                    {et(0), {vt(0), 0}, {vt(1), 1}, 1}};
    const Hin h = build_hin(types, edges, r);
    CHECK(h.multiplicity(kE1, 0, 1) == 2);
    CHECK(h.records().size() == 1);
  }
  SUBCASE("self-loop edge types are allowed") {
    std::vector<EdgeTypeDecl> loop{{et(0), "follow", vt(0), vt(0)}};
    const std::vector<EdgeRecord> r{{et(0), {vt(0), 1}, {vt(0), 1}, 1}};
    CHECK(build_hin(types, loop, r).multiplicity(kE1, 1, 1) == 1);
  }
}

TEST_CASE("transpose") {
  const Hin h = nets::two_type();
  const OrientedEdge t = transpose_edge_type(h, EdgeTypeId{0});
  CHECK(t.direction == Direction::kTransposed);
  CHECK(h.multiplicity(t, 0, 0) == 3);
  CHECK(h.source_type(t) == vt(1));
  CHECK(h.destination_type(t) == vt(0));
  for (VertexIndex v = 0; v < 3; ++v) {
    CHECK(h.out_degree(t, {vt(1), v}) == h.in_degree(kE1, {vt(1), v}));
  }
  CHECK(transpose(t) == kE1);
  CHECK(h.adjacency(transpose(t)) == h.adjacency(kE1));
}

TEST_CASE("schema") {
  const Schema s = schema(nets::branch());
  CHECK(s.vertex_types.size() == 4);
  REQUIRE(s.arcs.size() == 3);
  CHECK(s.arcs[0].name == "E_0");
  CHECK((s.arcs[0].src == vt(0) && s.arcs[0].dst == vt(1)));
  CHECK((s.arcs[1].src == vt(1) && s.arcs[1].dst == vt(2)));
  CHECK((s.arcs[2].src == vt(1) && s.arcs[2].dst == vt(3)));

  const Hin no_edges = build_hin({{"A", 2}}, {}, {});
  CHECK(schema(no_edges).vertex_types.size() == 1);
  CHECK(schema(no_edges).arcs.empty());

  const Schema f8 = schema(nets::recsys_schema());
  CHECK(f8.vertex_types.size() == 7);
  CHECK(f8.arcs.size() == 11);
  CHECK(f8.arcs.back().src == f8.arcs.back().dst);
}

TEST_CASE("add_sinks") {
  SUBCASE("dangling source vertex routes to the sink") {
    const Hin h = nets::make({{"A", 3}, {"B", 2}}, {{et(0), "r", vt(0), vt(1)}},
                                {{0, 0, 0}, {0, 1, 0}, {0, 1, 1}});
    const Hin a = add_sinks(h);
    CHECK(a.augmented());
    CHECK(a.cardinality(vt(0)) == 4);
    CHECK(a.sink(vt(1)) == 2u);
    CHECK(a.is_sink({vt(1), 2}));
    CHECK_FALSE(a.is_sink({vt(1), 1}));
    const auto& row = a.adjacency(kE1);
    REQUIRE(row.columns(2).size() == 1);
    CHECK(row.columns(2)[0] == 2);
    // Sink-to-sink edge.
    CHECK(a.multiplicity(kE1, 3, 2) == 1);
    for (VertexIndex v = 0; v < 4; ++v) CHECK(a.out_degree(kE1, {vt(0), v}) >= 1);
  }
  SUBCASE("walkable network keeps its transition probabilities") {
    const Hin h = nets::two_type();
    const Hin a = add_sinks(h);
    const auto& before = h.kernel(kE1).rows;
    const auto& after = a.kernel(kE1).rows;
    for (std::size_t v = 0; v < 2; ++v) {
      REQUIRE(before.columns(v).size() == after.columns(v).size());
      for (std::size_t i = 0; i < before.columns(v).size(); ++i) {
        CHECK(before.columns(v)[i] == after.columns(v)[i]);
        CHECK(before.values(v)[i] == after.values(v)[i]);
      }
    }
    CHECK(a.edge_total(EdgeTypeId{0}) == 7);  // one sink edge added
  }
}

TEST_CASE("degree conservation and store agreement on random networks") {
  std::mt19937_64 rng(21);
  for (int n = 0; n < 200; ++n) {
    testing_support::NetworkConfig cfg;
    cfg.augment = n % 2 == 0;
    const Hin h = testing_support::random_network(rng, cfg).hin;
    for (std::size_t e = 0; e < h.edge_type_count(); ++e) {
      const OrientedEdge f{EdgeTypeId{static_cast<std::uint32_t>(e)}, Direction::kForward};
      const OrientedEdge t = transpose(f);
      std::uint64_t out_sum = 0;
      std::uint64_t in_sum = 0;
      for (VertexIndex v = 0; v < h.cardinality(h.source_type(f)); ++v) {
        out_sum += h.out_degree(f, {h.source_type(f), v});
      }
      for (VertexIndex v = 0; v < h.cardinality(h.destination_type(f)); ++v) {
        in_sum += h.in_degree(f, {h.destination_type(f), v});
        CHECK(h.out_degree(t, {h.destination_type(f), v}) == h.in_degree(f, {h.destination_type(f), v}));
      }
      CHECK(out_sum == h.edge_total(f.edge));
      CHECK(in_sum == h.edge_total(f.edge));
      CHECK(h.adjacency(f).nonzeros() == h.adjacency(t).nonzeros());
      // Every kernel row is stochastic or empty.
      for (const auto& oe : {f, t}) {
        const auto& k = h.kernel(oe).rows;
        for (std::size_t r = 0; r < k.rows(); ++r) {
          double s = 0;
          for (double p : k.values(r)) s += p;
          if (!k.columns(r).empty()) CHECK(std::abs(s - 1) < 1e-12);
        }
      }
    }
  }
}
