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

#include "hindiv/hin.hpp"

#include <algorithm>
#include <string>

#include "hindiv/errors.hpp"

namespace hindiv {

// ---------------------------------------------------------------------------
// CompressedRows

template <typename Value>
CompressedRows<Value> CompressedRows<Value>::from_entries(std::size_t rows,
                                                          std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.column < b.column;
  });
  CompressedRows out;
  out.offsets_.assign(rows + 1, 0);
  out.columns_.reserve(entries.size());
  out.values_.reserve(entries.size());
  std::size_t i = 0;
  while (i < entries.size()) {
    const Entry& e = entries[i];
    Value v = e.value;
    std::size_t j = i + 1;
    while (j < entries.size() && entries[j].row == e.row && entries[j].column == e.column) {
      v += entries[j].value;
      ++j;
    }
    out.columns_.push_back(e.column);
    out.values_.push_back(v);
    ++out.offsets_[e.row + 1];
    i = j;
  }
  for (std::size_t r = 0; r < rows; ++r) out.offsets_[r + 1] += out.offsets_[r];
  return out;
}

template <typename Value>
Value CompressedRows<Value>::at(std::size_t row, VertexIndex column) const noexcept {
  const auto cols = columns(row);
  const auto it = std::lower_bound(cols.begin(), cols.end(), column);
  if (it == cols.end() || *it != column) return Value{};
  return values(row)[static_cast<std::size_t>(it - cols.begin())];
}

template class CompressedRows<std::uint64_t>;
template class CompressedRows<double>;

// ---------------------------------------------------------------------------
// Hin accessors

const VertexTypeDecl& Hin::vertex_type(VertexTypeId t) const {
  if (t.value >= vertex_types_.size()) {
    throw OutOfRangeError("vertex type id " + std::to_string(t.value) + " out of range");
  }
  return vertex_types_[t.value];
}

const EdgeTypeDecl& Hin::edge_type(EdgeTypeId e) const {
  if (e.value >= edge_types_.size()) {
    throw OutOfRangeError("edge type id " + std::to_string(e.value) + " out of range");
  }
  return edge_types_[e.value];
}

const Hin::EdgeStore& Hin::store(EdgeTypeId e) const {
  edge_type(e);
  return stores_[e.value];
}

std::optional<VertexTypeId> Hin::find_vertex_type(std::string_view name) const {
  for (std::size_t i = 0; i < vertex_types_.size(); ++i) {
    if (vertex_types_[i].name == name) return VertexTypeId{static_cast<std::uint32_t>(i)};
  }
  return std::nullopt;
}

std::optional<EdgeTypeId> Hin::find_edge_type(std::string_view name) const {
  for (const auto& e : edge_types_) {
    if (e.name == name) return e.id;
  }
  return std::nullopt;
}

VertexTypeId Hin::source_type(OrientedEdge e) const {
  const auto& d = edge_type(e.edge);
  return e.direction == Direction::kForward ? d.src : d.dst;
}

VertexTypeId Hin::destination_type(OrientedEdge e) const {
  const auto& d = edge_type(e.edge);
  return e.direction == Direction::kForward ? d.dst : d.src;
}

const MultiplicityTable& Hin::adjacency(OrientedEdge e) const {
  const auto& s = store(e.edge);
  return e.direction == Direction::kForward ? s.by_src : s.by_dst;
}

const TransitionKernel& Hin::kernel(OrientedEdge e) const {
  const auto& s = store(e.edge);
  return e.direction == Direction::kForward ? s.forward : s.transposed;
}

std::uint64_t Hin::multiplicity(OrientedEdge e, VertexIndex from, VertexIndex to) const {
  const auto& table = adjacency(e);
  if (from >= table.rows() || to >= cardinality(destination_type(e))) {
    throw OutOfRangeError("vertex index out of range for edge type '" +
                          edge_type(e.edge).name + "'");
  }
  return table.at(from, to);
}

std::uint64_t Hin::out_degree(OrientedEdge e, VertexId v) const {
  const VertexTypeId src = source_type(e);
  if (v.type != src) {
    throw DomainError("vertex of type '" + vertex_type(v.type).name +
                      "' is not a source of edge type '" + edge_type(e.edge).name + "'");
  }
  if (v.index >= cardinality(src)) throw OutOfRangeError("vertex index out of range");
  const auto& s = store(e.edge);
  return e.direction == Direction::kForward ? s.out_degree[v.index] : s.in_degree[v.index];
}

std::uint64_t Hin::in_degree(OrientedEdge e, VertexId v) const {
  return out_degree(transpose(e), v);
}

std::uint64_t Hin::edge_total(EdgeTypeId e) const { return store(e).total; }

std::optional<VertexIndex> Hin::sink(VertexTypeId t) const {
  const auto& d = vertex_type(t);
  if (!augmented_) return std::nullopt;
  return d.cardinality - 1;
}

bool Hin::is_sink(VertexId v) const {
  const auto s = sink(v.type);
  return s && *s == v.index;
}

std::vector<EdgeRecord> Hin::records() const {
  std::vector<EdgeRecord> out;
  for (const auto& d : edge_types_) {
    const auto& table = stores_[d.id.value].by_src;
    for (std::size_t r = 0; r < table.rows(); ++r) {
      const auto cols = table.columns(r);
      const auto vals = table.values(r);
      for (std::size_t i = 0; i < cols.size(); ++i) {
        out.push_back({d.id, {d.src, static_cast<VertexIndex>(r)}, {d.dst, cols[i]}, vals[i]});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Construction

TransitionKernel Hin::make_kernel(const MultiplicityTable& rows,
                                  std::span<const std::uint64_t> row_totals,
                                  std::size_t columns,
                                  std::optional<VertexIndex> empty_row_target) const {
  using Rows = CompressedRows<double>;
  std::vector<Rows::Entry> forward;
  std::vector<Rows::Entry> backward;
  forward.reserve(rows.nonzeros());
  backward.reserve(rows.nonzeros());
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    const auto row = static_cast<VertexIndex>(r);
    const auto cols = rows.columns(r);
    const auto vals = rows.values(r);
    if (cols.empty()) {
      if (empty_row_target) {
        forward.push_back({row, *empty_row_target, 1.0});
        backward.push_back({*empty_row_target, row, 1.0});
      }
      continue;
    }
    const auto total = static_cast<double>(row_totals[r]);
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const double p = static_cast<double>(vals[i]) / total;
      forward.push_back({row, cols[i], p});
      backward.push_back({cols[i], row, p});
    }
  }
  return {Rows::from_entries(rows.rows(), std::move(forward)),
          Rows::from_entries(columns, std::move(backward))};
}

void Hin::finalize() {
  for (auto& s : stores_) {
    const auto& d = edge_types_[&s - stores_.data()];
    const std::size_t n_src = vertex_types_[d.src.value].cardinality;
    const std::size_t n_dst = vertex_types_[d.dst.value].cardinality;
    s.out_degree.assign(n_src, 0);
    s.in_degree.assign(n_dst, 0);
    s.total = 0;
    for (std::size_t r = 0; r < n_src; ++r) {
      for (auto v : s.by_src.values(r)) s.out_degree[r] += v;
      s.total += s.out_degree[r];
    }
    for (std::size_t r = 0; r < n_dst; ++r) {
      for (auto v : s.by_dst.values(r)) s.in_degree[r] += v;
    }
    // Forward rows are walkable after augmentation; transposed rows with no
    // in-edges fall through to the sink of the original source type.
    std::optional<VertexIndex> transposed_target;
    if (augmented_) transposed_target = static_cast<VertexIndex>(n_src - 1);
    s.forward = make_kernel(s.by_src, s.out_degree, n_dst, std::nullopt);
    s.transposed = make_kernel(s.by_dst, s.in_degree, n_src, transposed_target);
  }
}

Hin build_hin(std::vector<VertexTypeDecl> vertex_types, std::vector<EdgeTypeDecl> edge_types,
              std::span<const EdgeRecord> records) {
  Hin h;
  for (std::size_t i = 0; i < edge_types.size(); ++i) {
    auto& d = edge_types[i];
    if (d.id.value != i) {
      throw ValidationError("edge type '" + d.name + "' has id " + std::to_string(d.id.value) +
                            ", expected " + std::to_string(i));
    }
    if (d.src.value >= vertex_types.size() || d.dst.value >= vertex_types.size()) {
      throw OutOfRangeError("edge type '" + d.name + "' references an undeclared vertex type");
    }
  }
  const auto describe = [&](std::size_t i, const EdgeRecord& r) {
    return "edge record " + std::to_string(i) + " (type " + std::to_string(r.type.value) +
           ", " + std::to_string(r.src.type.value) + ":" + std::to_string(r.src.index) +
           " -> " + std::to_string(r.dst.type.value) + ":" + std::to_string(r.dst.index) + ")";
  };
  using Entries = std::vector<MultiplicityTable::Entry>;
  std::vector<Entries> by_src(edge_types.size());
  std::vector<Entries> by_dst(edge_types.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const EdgeRecord& r = records[i];
    if (r.type.value >= edge_types.size()) {
      throw OutOfRangeError(describe(i, r) + ": unknown edge type");
    }
    const auto& d = edge_types[r.type.value];
    if (r.src.type != d.src || r.dst.type != d.dst) {
      const auto name = [&](VertexTypeId t) {
        return t.value < vertex_types.size() ? vertex_types[t.value].name
                                             : "#" + std::to_string(t.value);
      };
      throw TypeMismatchError(describe(i, r) + ": edge type '" + d.name + "' links '" +
                              name(d.src) + "' -> '" + name(d.dst) + "' but the record links '" +
                              name(r.src.type) + "' -> '" + name(r.dst.type) + "'");
    }
    if (r.src.index >= vertex_types[d.src.value].cardinality ||
        r.dst.index >= vertex_types[d.dst.value].cardinality) {
      throw OutOfRangeError(describe(i, r) + ": vertex index out of range");
    }
    if (r.multiplicity == 0) {
      throw ValidationError(describe(i, r) + ": multiplicity must be at least 1");
    }
    by_src[r.type.value].push_back({r.src.index, r.dst.index, r.multiplicity});
    by_dst[r.type.value].push_back({r.dst.index, r.src.index, r.multiplicity});
  }
  h.stores_.resize(edge_types.size());
  for (std::size_t e = 0; e < edge_types.size(); ++e) {
    const auto& d = edge_types[e];
    h.stores_[e].by_src = MultiplicityTable::from_entries(vertex_types[d.src.value].cardinality,
                                                          std::move(by_src[e]));
    h.stores_[e].by_dst = MultiplicityTable::from_entries(vertex_types[d.dst.value].cardinality,
                                                          std::move(by_dst[e]));
  }
  h.vertex_types_ = std::move(vertex_types);
  h.edge_types_ = std::move(edge_types);
  h.finalize();
  return h;
}

Hin add_sinks(const Hin& h) {
  std::vector<VertexTypeDecl> types(h.vertex_types_.begin(), h.vertex_types_.end());
  for (auto& t : types) ++t.cardinality;
  std::vector<EdgeRecord> records = h.records();
  for (const auto& d : h.edge_types_) {
    const VertexIndex src_sink = types[d.src.value].cardinality - 1;
    const VertexIndex dst_sink = types[d.dst.value].cardinality - 1;
    records.push_back({d.id, {d.src, src_sink}, {d.dst, dst_sink}, 1});
    const auto& out = h.stores_[d.id.value].out_degree;
    for (std::size_t v = 0; v < out.size(); ++v) {
      if (out[v] == 0) {
        records.push_back({d.id, {d.src, static_cast<VertexIndex>(v)}, {d.dst, dst_sink}, 1});
      }
    }
  }
  std::vector<EdgeTypeDecl> edges(h.edge_types_.begin(), h.edge_types_.end());
  Hin out = build_hin(std::move(types), std::move(edges), records);
  out.augmented_ = true;
  out.finalize();
  return out;
}

OrientedEdge transpose_edge_type(const Hin& h, EdgeTypeId e) {
  h.edge_type(e);
  return {e, Direction::kTransposed};
}

Schema schema(const Hin& h) {
  Schema s;
  for (const auto& t : h.vertex_types()) s.vertex_types.push_back(t.name);
  for (const auto& e : h.edge_types()) s.arcs.push_back({e.id, e.name, e.src, e.dst});
  return s;
}

}  // namespace hindiv
