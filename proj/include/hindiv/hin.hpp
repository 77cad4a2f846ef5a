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

// Immutable heterogeneous information network: typed vertices, typed
// multi-edges aggregated into integer multiplicities, stored both
// source-major and destination-major.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hindiv {

struct VertexTypeId {
  std::uint32_t value = 0;
  friend auto operator<=>(const VertexTypeId&, const VertexTypeId&) = default;
};

struct EdgeTypeId {
  std::uint32_t value = 0;
  friend auto operator<=>(const EdgeTypeId&, const EdgeTypeId&) = default;
};

/// Position of a vertex inside its vertex type.
using VertexIndex = std::uint32_t;

struct VertexId {
  VertexTypeId type;
  VertexIndex index = 0;
  friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

struct VertexTypeDecl {
  std::string name;
  VertexIndex cardinality = 0;
};

struct EdgeTypeDecl {
  EdgeTypeId id;
  std::string name;
  VertexTypeId src;
  VertexTypeId dst;
};

struct EdgeRecord {
  EdgeTypeId type;
  VertexId src;
  VertexId dst;
  std::uint64_t multiplicity = 1;
  friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

enum class Direction : std::uint8_t { kForward, kTransposed };

/// An edge type read in one of its two directions. A transposed edge type
/// swaps source and destination and keeps every multiplicity.
struct OrientedEdge {
  EdgeTypeId edge;
  Direction direction = Direction::kForward;
  friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
};

inline OrientedEdge transpose(OrientedEdge e) {
  return {e.edge, e.direction == Direction::kForward ? Direction::kTransposed
                                                    : Direction::kForward};
}

/// Compressed rows of (column, value) pairs with columns sorted per row.
template <typename Value>
class CompressedRows {
 public:
  struct Entry {
    VertexIndex row;
    VertexIndex column;
    Value value;
  };

  CompressedRows() : offsets_(1, 0) {}

  /// Sorts the entries and sums duplicates of (row, column).
  static CompressedRows from_entries(std::size_t rows, std::vector<Entry> entries);

  std::size_t rows() const noexcept { return offsets_.size() - 1; }
  std::size_t nonzeros() const noexcept { return columns_.size(); }
  std::span<const VertexIndex> columns(std::size_t row) const noexcept {
    return {columns_.data() + offsets_[row], offsets_[row + 1] - offsets_[row]};
  }
  std::span<const Value> values(std::size_t row) const noexcept {
    return {values_.data() + offsets_[row], offsets_[row + 1] - offsets_[row]};
  }
  /// Value at (row, column), zero when absent. O(log degree).
  Value at(std::size_t row, VertexIndex column) const noexcept;

  friend bool operator==(const CompressedRows&, const CompressedRows&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<VertexIndex> columns_;
  std::vector<Value> values_;
};

using MultiplicityTable = CompressedRows<std::uint64_t>;

/// Row-stochastic transition kernel for one oriented edge type, together
/// with its column-major mirror for backward passes.
struct TransitionKernel {
  CompressedRows<double> rows;     // rows: sources, p(dst | src)
  CompressedRows<double> reverse;  // rows: destinations, same probabilities
};

/// Directed graph over vertex types with one arc per edge type.
struct Schema {
  struct Arc {
    EdgeTypeId edge;
    std::string name;
    VertexTypeId src;
    VertexTypeId dst;
  };
  std::vector<std::string> vertex_types;
  std::vector<Arc> arcs;
};

class Hin {
 public:
  std::size_t vertex_type_count() const noexcept { return vertex_types_.size(); }
  std::size_t edge_type_count() const noexcept { return edge_types_.size(); }
  const VertexTypeDecl& vertex_type(VertexTypeId t) const;
  const EdgeTypeDecl& edge_type(EdgeTypeId e) const;
  std::span<const VertexTypeDecl> vertex_types() const noexcept { return vertex_types_; }
  std::span<const EdgeTypeDecl> edge_types() const noexcept { return edge_types_; }
  VertexIndex cardinality(VertexTypeId t) const { return vertex_type(t).cardinality; }

  std::optional<VertexTypeId> find_vertex_type(std::string_view name) const;
  std::optional<EdgeTypeId> find_edge_type(std::string_view name) const;

  VertexTypeId source_type(OrientedEdge e) const;
  VertexTypeId destination_type(OrientedEdge e) const;

  /// epsilon_E(from, to) read in the orientation of `e`.
  std::uint64_t multiplicity(OrientedEdge e, VertexIndex from, VertexIndex to) const;
  /// epsilon_E(v, -). `v` must belong to the source type of `e`.
  std::uint64_t out_degree(OrientedEdge e, VertexId v) const;
  /// epsilon_E(-, v). `v` must belong to the destination type of `e`.
  std::uint64_t in_degree(OrientedEdge e, VertexId v) const;
  std::uint64_t edge_total(EdgeTypeId e) const;

  /// Multiplicities with rows indexed by the source type of `e`.
  const MultiplicityTable& adjacency(OrientedEdge e) const;
  const TransitionKernel& kernel(OrientedEdge e) const;

  /// True once add_sinks has been applied.
  bool augmented() const noexcept { return augmented_; }
  /// Index of the sink vertex of `t` on an augmented network.
  std::optional<VertexIndex> sink(VertexTypeId t) const;
  bool is_sink(VertexId v) const;

  /// Aggregated records, one per (edge type, src, dst), ordered by edge type
  /// then source then destination.
  std::vector<EdgeRecord> records() const;

 private:
  friend Hin build_hin(std::vector<VertexTypeDecl>, std::vector<EdgeTypeDecl>,
                       std::span<const EdgeRecord>);
  friend Hin add_sinks(const Hin&);

  struct EdgeStore {
    MultiplicityTable by_src;
    MultiplicityTable by_dst;
    std::vector<std::uint64_t> out_degree;
    std::vector<std::uint64_t> in_degree;
    std::uint64_t total = 0;
    TransitionKernel forward;
    TransitionKernel transposed;
  };

  void finalize();
  TransitionKernel make_kernel(const MultiplicityTable& rows,
                               std::span<const std::uint64_t> row_totals,
                               std::size_t columns,
                               std::optional<VertexIndex> empty_row_target) const;
  const EdgeStore& store(EdgeTypeId e) const;

  std::vector<VertexTypeDecl> vertex_types_;
  std::vector<EdgeTypeDecl> edge_types_;
  std::vector<EdgeStore> stores_;
  bool augmented_ = false;
};

/// Validates declarations and records and aggregates duplicate
/// (type, src, dst) records by summing multiplicities.
/// Throws OutOfRangeError, TypeMismatchError or ValidationError naming the
/// offending record.
Hin build_hin(std::vector<VertexTypeDecl> vertex_types,
              std::vector<EdgeTypeDecl> edge_types,
              std::span<const EdgeRecord> records);

/// Appends one sink vertex per vertex type, links sink(src) -> sink(dst) for
/// every edge type and routes each dangling source vertex to sink(dst).
Hin add_sinks(const Hin& h);

OrientedEdge transpose_edge_type(const Hin& h, EdgeTypeId e);

Schema schema(const Hin& h);

/// Name reserved for sink vertices.
inline constexpr std::string_view kSinkName = "\xE2\x8A\xA5";  // U+22A5

}  // namespace hindiv
