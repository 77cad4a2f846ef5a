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

// Meta paths and exact propagation of walk distributions through sparse
// per-edge-type transition kernels.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hindiv/hin.hpp"

namespace hindiv {

using MetaPathStep = OrientedEdge;

/// Validated, non-empty chain of oriented edge types.
struct MetaPath {
  std::vector<MetaPathStep> steps;
  /// Vertex type visited before each step and after the last one
  /// (steps.size() + 1 entries).
  std::vector<VertexTypeId> types;

  std::size_t length() const noexcept { return steps.size(); }
  VertexTypeId source() const { return types.front(); }
  VertexTypeId destination() const { return types.back(); }

  friend bool operator==(const MetaPath&, const MetaPath&) = default;
};

/// Throws DomainError on an empty list and ChainingError carrying the index
/// of the first step whose source type differs from the previous destination.
MetaPath validate_metapath(const Hin& h, std::vector<MetaPathStep> steps);

/// Steps reversed, each direction flipped.
MetaPath transpose_metapath(const MetaPath& path);

/// Restriction to steps [first, last) (0-based, half open).
MetaPath sub_path(const MetaPath& path, std::size_t first, std::size_t last);

struct SparseEntry {
  VertexIndex index;
  double mass;
  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};
using SparseVector = std::vector<SparseEntry>;

/// Types at or above this cardinality hold distributions sparsely.
inline constexpr std::size_t kDenseCardinalityThreshold = 100000;

/// Probability distribution over the vertices of one vertex type (sink
/// included on augmented networks). Dense below kDenseCardinalityThreshold,
/// sorted sparse entries above; both expose the same queries.
class VertexDistribution {
 public:
  /// Picks the representation from the cardinality. Entries sorted by index.
  static VertexDistribution from_entries(VertexTypeId type, std::size_t cardinality,
                                         SparseVector entries);
  static VertexDistribution from_dense(VertexTypeId type, std::vector<double> mass);
  static VertexDistribution point_mass(VertexTypeId type, std::size_t cardinality,
                                       VertexIndex v);

  VertexTypeId type() const noexcept { return type_; }
  std::size_t cardinality() const noexcept { return cardinality_; }
  bool is_dense() const noexcept { return dense_; }

  double mass(VertexIndex v) const;
  double total() const;
  /// Strictly positive entries in index order.
  SparseVector nonzeros() const;
  std::vector<double> to_dense() const;

 private:
  VertexTypeId type_;
  std::size_t cardinality_ = 0;
  bool dense_ = true;
  std::vector<double> dense_mass_;
  SparseVector sparse_;
};

/// Reusable scratch space for sparse propagation. One per thread.
class WalkWorkspace {
 public:
  void reserve(std::size_t cardinality);

  std::vector<double> accumulator;
  std::vector<std::uint8_t> marked;
  std::vector<VertexIndex> touched;
  std::vector<std::uint64_t> counts;
};

/// p_E(. | v). Throws WalkabilityError for a dangling vertex on a
/// non-augmented network.
VertexDistribution transition_distribution(const Hin& h, OrientedEdge e, VertexIndex v);

/// Forward propagation of `start` through every step of `path`.
VertexDistribution propagate(const Hin& h, const MetaPath& path,
                             const VertexDistribution& start);
VertexDistribution propagate(const Hin& h, const MetaPath& path,
                             const VertexDistribution& start, WalkWorkspace& ws);

/// p_{path | v0}.
VertexDistribution conditional_distribution(const Hin& h, const MetaPath& path,
                                            VertexIndex v0);

/// Low-level kernels used by measures and sweeps.
namespace walk_kernel {

/// One step of the row vector `frontier` (sorted by index) through `e`.
SparseVector step(const Hin& h, OrientedEdge e, std::span<const SparseEntry> frontier,
                  WalkWorkspace& ws);
SparseVector propagate(const Hin& h, const MetaPath& path, SparseVector frontier,
                       WalkWorkspace& ws);
/// Backward pass: returns b(u) = sum_w p(w | u) values(w) over the source
/// type of `e`, i.e. the kernel applied to a column vector.
SparseVector pull_back(const Hin& h, OrientedEdge e, std::span<const SparseEntry> values,
                       WalkWorkspace& ws);
/// Concrete-path counts from v0 to every reachable destination vertex.
/// Checked 64-bit arithmetic; throws OverflowError.
std::vector<std::pair<VertexIndex, std::uint64_t>> path_counts(const Hin& h,
                                                               const MetaPath& path,
                                                               VertexIndex v0,
                                                               WalkWorkspace& ws);
/// Total number of concrete paths starting at each source vertex, ignoring
/// paths that end on a sink. Checked 64-bit arithmetic.
std::vector<std::uint64_t> path_volumes(const Hin& h, const MetaPath& path);

}  // namespace walk_kernel

/// Path-count projection of a meta path onto a single synthetic edge type.
struct Projection {
  VertexTypeId src;
  VertexTypeId dst;
  MultiplicityTable counts;  // rows: src vertices
};

/// Materializes epsilon_{E_path}. Throws OverflowError when a count exceeds
/// 64 bits.
Projection project(const Hin& h, const MetaPath& path);

}  // namespace hindiv
