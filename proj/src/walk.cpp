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

#include "hindiv/walk.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hindiv/errors.hpp"

namespace hindiv {

namespace {

std::string step_name(const Hin& h, OrientedEdge e) {
  std::string name = h.edge_type(e.edge).name;
  if (e.direction == Direction::kTransposed) name += "^T";
  return name;
}

[[noreturn]] void throw_dangling(const Hin& h, OrientedEdge e, VertexIndex v) {
  throw WalkabilityError("vertex " + std::to_string(v) + " of type '" +
                         h.vertex_type(h.source_type(e)).name + "' has no outgoing '" +
                         step_name(h, e) + "' edge; apply add_sinks to make the network walkable");
}

// Drains the marked accumulator into a sorted sparse vector and resets it.
SparseVector collect(WalkWorkspace& ws, std::size_t cardinality) {
  SparseVector out;
  out.reserve(ws.touched.size());
  if (ws.touched.size() * 8 > cardinality) {
    for (std::size_t w = 0; w < cardinality; ++w) {
      if (ws.marked[w]) out.push_back({static_cast<VertexIndex>(w), ws.accumulator[w]});
    }
  } else {
    std::sort(ws.touched.begin(), ws.touched.end());
    for (VertexIndex w : ws.touched) out.push_back({w, ws.accumulator[w]});
  }
  for (VertexIndex w : ws.touched) {
    ws.accumulator[w] = 0.0;
    ws.marked[w] = 0;
  }
  ws.touched.clear();
  return out;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("path count exceeds 64 bits");
  return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("path count exceeds 64 bits");
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// MetaPath

MetaPath validate_metapath(const Hin& h, std::vector<MetaPathStep> steps) {
  if (steps.empty()) throw DomainError("meta path must have at least one step");
  MetaPath path;
  path.types.reserve(steps.size() + 1);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const VertexTypeId src = h.source_type(steps[i]);
    if (i == 0) {
      path.types.push_back(src);
    } else if (src != path.types.back()) {
      throw ChainingError("meta path step " + std::to_string(i) + " ('" +
                              step_name(h, steps[i]) + "') starts at '" +
                              h.vertex_type(src).name + "' but the previous step ends at '" +
                              h.vertex_type(path.types.back()).name + "'",
                          i);
    }
    path.types.push_back(h.destination_type(steps[i]));
  }
  path.steps = std::move(steps);
  return path;
}

MetaPath transpose_metapath(const MetaPath& path) {
  MetaPath out;
  out.steps.reserve(path.steps.size());
  for (auto it = path.steps.rbegin(); it != path.steps.rend(); ++it) {
    out.steps.push_back(transpose(*it));
  }
  out.types.assign(path.types.rbegin(), path.types.rend());
  return out;
}

MetaPath sub_path(const MetaPath& path, std::size_t first, std::size_t last) {
  if (first >= last || last > path.steps.size()) {
    throw DomainError("sub_path: invalid step range [" + std::to_string(first) + ", " +
                      std::to_string(last) + ")");
  }
  MetaPath out;
  out.steps.assign(path.steps.begin() + first, path.steps.begin() + last);
  out.types.assign(path.types.begin() + first, path.types.begin() + last + 1);
  return out;
}

// ---------------------------------------------------------------------------
// VertexDistribution

VertexDistribution VertexDistribution::from_entries(VertexTypeId type, std::size_t cardinality,
                                                    SparseVector entries) {
  VertexDistribution d;
  d.type_ = type;
  d.cardinality_ = cardinality;
  for (const auto& e : entries) {
    if (e.index >= cardinality) throw OutOfRangeError("distribution entry index out of range");
  }
  if (cardinality < kDenseCardinalityThreshold) {
    d.dense_ = true;
    d.dense_mass_.assign(cardinality, 0.0);
    for (const auto& e : entries) d.dense_mass_[e.index] += e.mass;
  } else {
    d.dense_ = false;
    std::sort(entries.begin(), entries.end(),
              [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
    d.sparse_ = std::move(entries);
  }
  return d;
}

VertexDistribution VertexDistribution::from_dense(VertexTypeId type, std::vector<double> mass) {
  if (mass.size() < kDenseCardinalityThreshold) {
    VertexDistribution d;
    d.type_ = type;
    d.cardinality_ = mass.size();
    d.dense_mass_ = std::move(mass);
    return d;
  }
  SparseVector entries;
  for (std::size_t i = 0; i < mass.size(); ++i) {
    if (mass[i] != 0.0) entries.push_back({static_cast<VertexIndex>(i), mass[i]});
  }
  return from_entries(type, mass.size(), std::move(entries));
}

VertexDistribution VertexDistribution::point_mass(VertexTypeId type, std::size_t cardinality,
                                                  VertexIndex v) {
  return from_entries(type, cardinality, {{v, 1.0}});
}

double VertexDistribution::mass(VertexIndex v) const {
  if (v >= cardinality_) throw OutOfRangeError("vertex index out of range");
  if (dense_) return dense_mass_[v];
  const auto it = std::lower_bound(sparse_.begin(), sparse_.end(), v,
                                   [](const SparseEntry& e, VertexIndex i) { return e.index < i; });
  return (it != sparse_.end() && it->index == v) ? it->mass : 0.0;
}

double VertexDistribution::total() const {
  double sum = 0.0;
  if (dense_) {
    for (double m : dense_mass_) sum += m;
  } else {
    for (const auto& e : sparse_) sum += e.mass;
  }
  return sum;
}

SparseVector VertexDistribution::nonzeros() const {
  SparseVector out;
  if (dense_) {
    for (std::size_t i = 0; i < dense_mass_.size(); ++i) {
      if (dense_mass_[i] > 0.0) out.push_back({static_cast<VertexIndex>(i), dense_mass_[i]});
    }
  } else {
    for (const auto& e : sparse_) {
      if (e.mass > 0.0) out.push_back(e);
    }
  }
  return out;
}

std::vector<double> VertexDistribution::to_dense() const {
  if (dense_) return dense_mass_;
  std::vector<double> out(cardinality_, 0.0);
  for (const auto& e : sparse_) out[e.index] = e.mass;
  return out;
}

// ---------------------------------------------------------------------------
// Workspace and kernels

void WalkWorkspace::reserve(std::size_t cardinality) {
  if (accumulator.size() < cardinality) {
    accumulator.resize(cardinality, 0.0);
    marked.resize(cardinality, 0);
    counts.resize(cardinality, 0);
  }
}

namespace walk_kernel {

SparseVector step(const Hin& h, OrientedEdge e, std::span<const SparseEntry> frontier,
                  WalkWorkspace& ws) {
  const auto& rows = h.kernel(e).rows;
  const std::size_t card = h.cardinality(h.destination_type(e));
  ws.reserve(card);
  for (const auto& [u, m] : frontier) {
    if (m == 0.0) continue;
    const auto cols = rows.columns(u);
    if (cols.empty()) throw_dangling(h, e, u);
    const auto probs = rows.values(u);
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const VertexIndex w = cols[i];
      if (!ws.marked[w]) {
        ws.marked[w] = 1;
        ws.touched.push_back(w);
      }
      ws.accumulator[w] += m * probs[i];
    }
  }
  return collect(ws, card);
}

SparseVector propagate(const Hin& h, const MetaPath& path, SparseVector frontier,
                       WalkWorkspace& ws) {
  for (const auto& s : path.steps) frontier = step(h, s, frontier, ws);
  return frontier;
}

SparseVector pull_back(const Hin& h, OrientedEdge e, std::span<const SparseEntry> values,
                       WalkWorkspace& ws) {
  const auto& reverse = h.kernel(e).reverse;
  const std::size_t card = h.cardinality(h.source_type(e));
  ws.reserve(card);
  for (const auto& [w, b] : values) {
    if (b == 0.0) continue;
    const auto sources = reverse.columns(w);
    const auto probs = reverse.values(w);
    for (std::size_t i = 0; i < sources.size(); ++i) {
      const VertexIndex u = sources[i];
      if (!ws.marked[u]) {
        ws.marked[u] = 1;
        ws.touched.push_back(u);
      }
      ws.accumulator[u] += probs[i] * b;
    }
  }
  return collect(ws, card);
}

std::vector<std::pair<VertexIndex, std::uint64_t>> path_counts(const Hin& h,
                                                               const MetaPath& path,
                                                               VertexIndex v0,
                                                               WalkWorkspace& ws) {
  if (v0 >= h.cardinality(path.source())) throw OutOfRangeError("vertex index out of range");
  std::vector<std::pair<VertexIndex, std::uint64_t>> frontier{{v0, 1}};
  for (const auto& s : path.steps) {
    const auto& table = h.adjacency(s);
    const VertexTypeId dst_type = h.destination_type(s);
    const std::size_t card = h.cardinality(dst_type);
    ws.reserve(card);
    const auto add = [&](VertexIndex w, std::uint64_t c) {
      if (!ws.marked[w]) {
        ws.marked[w] = 1;
        ws.touched.push_back(w);
      }
      ws.counts[w] = checked_add(ws.counts[w], c);
    };
    for (const auto& [u, c] : frontier) {
      const auto cols = table.columns(u);
      if (cols.empty() && h.augmented() && s.direction == Direction::kTransposed) {
        add(*h.sink(dst_type), c);
        continue;
      }
      const auto mult = table.values(u);
      for (std::size_t i = 0; i < cols.size(); ++i) add(cols[i], checked_mul(c, mult[i]));
    }
    std::sort(ws.touched.begin(), ws.touched.end());
    frontier.clear();
    for (VertexIndex w : ws.touched) {
      frontier.emplace_back(w, ws.counts[w]);
      ws.counts[w] = 0;
      ws.marked[w] = 0;
    }
    ws.touched.clear();
  }
  return frontier;
}

std::vector<std::uint64_t> path_volumes(const Hin& h, const MetaPath& path) {
  const VertexTypeId end = path.destination();
  std::vector<std::uint64_t> tail(h.cardinality(end), 1);
  if (const auto s = h.sink(end)) tail[*s] = 0;
  for (auto it = path.steps.rbegin(); it != path.steps.rend(); ++it) {
    const auto& table = h.adjacency(*it);
    std::vector<std::uint64_t> head(table.rows(), 0);
    for (std::size_t u = 0; u < table.rows(); ++u) {
      const auto cols = table.columns(u);
      const auto mult = table.values(u);
      std::uint64_t acc = 0;
      for (std::size_t i = 0; i < cols.size(); ++i) {
        acc = checked_add(acc, checked_mul(mult[i], tail[cols[i]]));
      }
      head[u] = acc;
    }
    tail = std::move(head);
  }
  return tail;
}

}  // namespace walk_kernel

// ---------------------------------------------------------------------------
// Public walk operations

VertexDistribution transition_distribution(const Hin& h, OrientedEdge e, VertexIndex v) {
  const VertexTypeId src = h.source_type(e);
  if (v >= h.cardinality(src)) throw OutOfRangeError("vertex index out of range");
  const auto& rows = h.kernel(e).rows;
  const auto cols = rows.columns(v);
  if (cols.empty()) throw_dangling(h, e, v);
  const auto probs = rows.values(v);
  SparseVector entries;
  entries.reserve(cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) entries.push_back({cols[i], probs[i]});
  const VertexTypeId dst = h.destination_type(e);
  return VertexDistribution::from_entries(dst, h.cardinality(dst), std::move(entries));
}

VertexDistribution propagate(const Hin& h, const MetaPath& path, const VertexDistribution& start,
                             WalkWorkspace& ws) {
  if (start.type() != path.source()) {
    throw TypeMismatchError("start distribution is over '" + h.vertex_type(start.type()).name +
                            "' but the meta path starts at '" +
                            h.vertex_type(path.source()).name + "'");
  }
  if (start.cardinality() != h.cardinality(path.source())) {
    throw DimensionError("start distribution has " + std::to_string(start.cardinality()) +
                         " entries, vertex type has " +
                         std::to_string(h.cardinality(path.source())));
  }
  SparseVector frontier;
  double total = 0.0;
  if (start.is_dense()) {
    const auto dense = start.to_dense();
    for (std::size_t i = 0; i < dense.size(); ++i) {
      if (!(dense[i] >= 0.0) || !std::isfinite(dense[i])) {
        throw ValidationError("start distribution has a negative or non-finite entry");
      }
      if (dense[i] > 0.0) frontier.push_back({static_cast<VertexIndex>(i), dense[i]});
      total += dense[i];
    }
  } else {
    frontier = start.nonzeros();
    for (const auto& e : frontier) total += e.mass;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ValidationError("start distribution sums to " + std::to_string(total));
  }
  const VertexTypeId dst = path.destination();
  return VertexDistribution::from_entries(dst, h.cardinality(dst),
                                          walk_kernel::propagate(h, path, std::move(frontier), ws));
}

VertexDistribution propagate(const Hin& h, const MetaPath& path, const VertexDistribution& start) {
  WalkWorkspace ws;
  return propagate(h, path, start, ws);
}

VertexDistribution conditional_distribution(const Hin& h, const MetaPath& path, VertexIndex v0) {
  const VertexTypeId src = path.source();
  if (v0 >= h.cardinality(src)) {
    throw OutOfRangeError("vertex " + std::to_string(v0) + " is not in '" +
                          h.vertex_type(src).name + "'");
  }
  WalkWorkspace ws;
  const VertexTypeId dst = path.destination();
  return VertexDistribution::from_entries(
      dst, h.cardinality(dst), walk_kernel::propagate(h, path, {{v0, 1.0}}, ws));
}

Projection project(const Hin& h, const MetaPath& path) {
  WalkWorkspace ws;
  const std::size_t rows = h.cardinality(path.source());
  std::vector<MultiplicityTable::Entry> entries;
  for (std::size_t v = 0; v < rows; ++v) {
    for (const auto& [w, c] : walk_kernel::path_counts(h, path, static_cast<VertexIndex>(v), ws)) {
      entries.push_back({static_cast<VertexIndex>(v), w, c});
    }
  }
  return {path.source(), path.destination(),
          MultiplicityTable::from_entries(rows, std::move(entries))};
}

}  // namespace hindiv
