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

// Per-vertex measure sweeps. sweep_parallel spreads vertices over OpenMP
// threads; sweep_serial is the single-threaded reference it is tested
// against. Both return rows in ascending vertex order.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hindiv/netdiv.hpp"

namespace hindiv {

struct SweepRequest {
  /// One of kIndividual, kRelativeIndividual, kBackwardTranspose,
  /// kBackwardPosterior, kProjected.
  MeasureKind kind = MeasureKind::kIndividual;
  MetaPath path;
  std::vector<AlphaOrder> alphas{AlphaOrder::one()};
  /// Baseline for kRelativeIndividual, prior for kBackwardPosterior.
  StartSpec start;
  MeasureOptions options;
  /// Also sweep the sink of the swept type.
  bool include_sinks = false;
  /// Restricts the sweep to these vertices (sorted and deduplicated).
  std::optional<std::vector<VertexIndex>> vertices;
};

struct SweepRow {
  VertexIndex vertex = 0;
  std::vector<double> values;  // one per requested order
  double sink_mass = 0.0;
  /// Concrete paths through the vertex (sink-bound paths ignored).
  std::uint64_t volume = 0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepResult {
  VertexTypeId type;  // type of the swept vertices
  std::vector<SweepRow> rows;
  /// Vertices skipped because the prior never reaches them (posterior only).
  std::vector<VertexIndex> unreachable;
};

bool is_per_vertex(MeasureKind kind);

/// threads <= 0 uses the OpenMP default.
SweepResult sweep_parallel(const Hin& h, const SweepRequest& request, int threads = 0);
SweepResult sweep_serial(const Hin& h, const SweepRequest& request);

/// Expands rows into one report per (vertex, order).
std::vector<DiversityReport> to_reports(const SweepRequest& request, const SweepResult& result);

// ---------------------------------------------------------------------------
// Summaries of per-vertex values.

struct BinSpec {
  enum class Scale : std::uint8_t { kLog, kLinear };
  Scale scale = Scale::kLog;
  /// Bins per decade for kLog, total bins for kLinear.
  int bins = 20;
};

struct HistogramBin {
  double low = 0.0;
  double high = 0.0;
  std::uint64_t count = 0;
};

/// Log bins run from 10^floor(log10 min) to 10^ceil(log10 max) and need
/// positive values. The last bin is closed on the right.
std::vector<HistogramBin> histogram(std::span<const double> values, BinSpec spec);

struct CurvePoint {
  double volume_low = 0.0;
  double volume_high = 0.0;
  std::uint64_t count = 0;
  double mean = 0.0;
  double p05 = 0.0;
  double p30 = 0.0;
  double p70 = 0.0;
  double p95 = 0.0;
};

/// Diversity against volume: values grouped by log-binned volume, with the
/// mean and percentiles of each non-empty bin. Zero volumes are dropped.
std::vector<CurvePoint> volume_curve(std::span<const std::uint64_t> volumes,
                                     std::span<const double> values, int bins_per_decade = 10);

/// Linear-interpolated quantile of sorted data, q in [0, 1].
double quantile(std::span<const double> sorted, double q);

}  // namespace hindiv
