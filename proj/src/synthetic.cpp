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

#include "hindiv/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "hindiv/errors.hpp"

namespace hindiv {

namespace {

std::discrete_distribution<std::uint32_t> zipf(std::size_t n, double s) {
  std::vector<double> w(n);
  for (std::size_t r = 0; r < n; ++r) w[r] = 1.0 / std::pow(static_cast<double>(r + 1), s);
  return {w.begin(), w.end()};
}

// Every source gets one edge, the remainder go to activity-weighted sources;
// destinations are drawn by popularity.
void add_edges(std::vector<EdgeRecord>& out, EdgeTypeId type, VertexTypeId src_type,
               VertexTypeId dst_type, std::size_t sources, std::size_t destinations,
               std::size_t edges, double s, std::mt19937_64& rng) {
  if (edges < sources) throw ValidationError("need at least one edge per source vertex");
  auto activity = zipf(sources, s);
  auto popularity = zipf(destinations, s);
  // Shuffle ranks so that vertex index does not encode popularity.
  std::vector<std::uint32_t> src_rank(sources);
  std::vector<std::uint32_t> dst_rank(destinations);
  for (std::size_t i = 0; i < sources; ++i) src_rank[i] = static_cast<std::uint32_t>(i);
  for (std::size_t i = 0; i < destinations; ++i) dst_rank[i] = static_cast<std::uint32_t>(i);
  std::shuffle(src_rank.begin(), src_rank.end(), rng);
  std::shuffle(dst_rank.begin(), dst_rank.end(), rng);
  for (std::size_t e = 0; e < edges; ++e) {
    const std::uint32_t u = e < sources ? static_cast<std::uint32_t>(e) : src_rank[activity(rng)];
    const std::uint32_t v = dst_rank[popularity(rng)];
    out.push_back({type, {src_type, u}, {dst_type, v}, 1});
  }
}

}  // namespace

Hin make_tripartite(const TripartiteConfig& c) {
  if (c.users == 0 || c.items == 0 || c.tags == 0) {
    throw ValidationError("tripartite network needs non-empty vertex types");
  }
  std::mt19937_64 rng(c.seed);
  const VertexTypeId user{0};
  const VertexTypeId item{1};
  const VertexTypeId tag{2};
  const auto card = [](std::size_t n) { return static_cast<VertexIndex>(n); };
  std::vector<VertexTypeDecl> types{
      {"user", card(c.users)}, {"item", card(c.items)}, {"tag", card(c.tags)}};
  std::vector<EdgeTypeDecl> edge_types{{EdgeTypeId{0}, "consumed", user, item},
                                       {EdgeTypeId{1}, "tagged", item, tag}};
  std::vector<EdgeRecord> records;
  records.reserve(c.consumed_edges + c.tagged_edges);
  add_edges(records, EdgeTypeId{0}, user, item, c.users, c.items, c.consumed_edges,
            c.zipf_exponent, rng);
  add_edges(records, EdgeTypeId{1}, item, tag, c.items, c.tags, c.tagged_edges, c.zipf_exponent,
            rng);
  return build_hin(std::move(types), std::move(edge_types), records);
}

}  // namespace hindiv
