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

// Random tripartite networks (users -consumed-> items -tagged-> tags) with
// heavy-tailed activity and popularity, for benchmarks and scale tests.

#include <cstdint>

#include "hindiv/hin.hpp"

namespace hindiv {

struct TripartiteConfig {
  std::size_t users = 1000;
  std::size_t items = 1000;
  std::size_t tags = 100;
  std::size_t consumed_edges = 10000;  // at least one per user
  std::size_t tagged_edges = 3000;     // at least one per item
  double zipf_exponent = 1.0;
  std::uint64_t seed = 1;
};

/// Vertex types "user", "item", "tag"; edge types "consumed" (user->item)
/// and "tagged" (item->tag). Every user and item has an out-edge, so the
/// result is walkable without sinks. Deterministic for a given config.
Hin make_tripartite(const TripartiteConfig& config);

}  // namespace hindiv
