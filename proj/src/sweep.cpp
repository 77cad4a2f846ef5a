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

#include "hindiv/sweep.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include "hindiv/errors.hpp"

namespace hindiv {

namespace {

bool is_backward(MeasureKind kind) {
  return kind == MeasureKind::kBackwardTranspose || kind == MeasureKind::kBackwardPosterior;
}

// Shared, read-only state of one sweep; eval() is safe to call from many
// threads, each with its own workspace.
class Evaluator {
 public:
  Evaluator(const Hin& h, const SweepRequest& req) : h_(h), req_(req) {
    if (!is_per_vertex(req.kind)) {
      throw DomainError("measure '" + to_string(req.kind) + "' is not a per-vertex measure");
    }
    if (req.alphas.empty()) throw DomainError("no diversity order requested");
    const bool backward = is_backward(req.kind);
    swept_ = backward ? req.path.destination() : req.path.source();
    measured_ = backward ? req.path.source() : req.path.destination();
    back_ = transpose_metapath(req.path);
    volumes_ = walk_kernel::path_volumes(h, backward ? back_ : req.path);
    WalkWorkspace ws;
    if (req.kind == MeasureKind::kRelativeIndividual) {
      const auto s = req.start.resolve(h, req.path.source());
      baseline_ = measure_detail::reduce(
                      h, measured_, walk_kernel::propagate(h, req.path, s.nonzeros(), ws),
                      req.options.sinks)
                      .entries;
    }
    if (req.kind == MeasureKind::kBackwardPosterior) {
      prior_ = req.start.resolve(h, req.path.source()).nonzeros();
    }
  }

  VertexTypeId swept_type() const { return swept_; }

  std::vector<VertexIndex> vertices() const {
    std::vector<VertexIndex> out;
    const std::size_t card = h_.cardinality(swept_);
    const auto sink = h_.sink(swept_);
    if (req_.vertices) {
      out = *req_.vertices;
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      for (auto v : out) {
        if (v >= card) {
          throw OutOfRangeError("sweep vertex " + std::to_string(v) + " is not in '" +
                                h_.vertex_type(swept_).name + "'");
        }
      }
    } else {
      out.reserve(card);
      for (std::size_t v = 0; v < card; ++v) out.push_back(static_cast<VertexIndex>(v));
    }
    if (sink && !req_.include_sinks) std::erase(out, *sink);
    return out;
  }

  // nullopt when the posterior is undefined for v.
  std::optional<SweepRow> eval(VertexIndex v, WalkWorkspace& ws) const {
    using measure_detail::reduce;
    SparseVector dist;
    switch (req_.kind) {
      case MeasureKind::kIndividual:
      case MeasureKind::kRelativeIndividual:
        dist = walk_kernel::propagate(h_, req_.path, {{v, 1.0}}, ws);
        break;
      case MeasureKind::kBackwardTranspose:
        dist = walk_kernel::propagate(h_, back_, {{v, 1.0}}, ws);
        break;
      case MeasureKind::kBackwardPosterior: {
        dist = measure_detail::posterior_weights(h_, req_.path, prior_, v, ws);
        if (dist.empty()) return std::nullopt;
        kernel::CompensatedSum total;
        for (const auto& e : dist) total.add(e.mass);
        for (auto& e : dist) e.mass /= total.value();
        break;
      }
      case MeasureKind::kProjected: {
        const auto counts = walk_kernel::path_counts(h_, req_.path, v, ws);
        if (counts.empty()) {
          throw ZeroProbabilityError("no concrete path starts at vertex " + std::to_string(v));
        }
        long double total = 0.0L;
        for (const auto& [w, c] : counts) total += static_cast<long double>(c);
        dist.reserve(counts.size());
        for (const auto& [w, c] : counts) {
          dist.push_back({w, static_cast<double>(static_cast<long double>(c) / total)});
        }
        break;
      }
      default:
        break;
    }
    const auto reduced = reduce(h_, measured_, std::move(dist), req_.options.sinks);
    SweepRow row;
    row.vertex = v;
    row.sink_mass = reduced.sink_mass;
    row.volume = volumes_[v];
    row.values.reserve(req_.alphas.size());
    for (const auto& a : req_.alphas) {
      row.values.push_back(req_.kind == MeasureKind::kRelativeIndividual
                               ? measure_detail::relative_diversity_of(reduced.entries,
                                                                       baseline_, a)
                               : measure_detail::diversity_of(reduced.entries, a));
    }
    return row;
  }

 private:
  const Hin& h_;
  const SweepRequest& req_;
  VertexTypeId swept_;
  VertexTypeId measured_;
  MetaPath back_;
  std::vector<std::uint64_t> volumes_;
  SparseVector baseline_;
  SparseVector prior_;
};

SweepResult assemble(const Evaluator& ev, const std::vector<VertexIndex>& vertices,
                     std::vector<std::optional<SweepRow>>& slots) {
  SweepResult result;
  result.type = ev.swept_type();
  result.rows.reserve(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (slots[i]) {
      result.rows.push_back(std::move(*slots[i]));
    } else {
      result.unreachable.push_back(vertices[i]);
    }
  }
  return result;
}

// Lower edge of log bins covering [lo, hi] with `per_decade` bins per decade.
std::vector<double> log_edges(double lo, double hi, int per_decade) {
  const int first = static_cast<int>(std::floor(std::log10(lo)));
  int last = static_cast<int>(std::ceil(std::log10(hi)));
  if (last <= first) last = first + 1;
  const int n = (last - first) * per_decade;
  std::vector<double> edges(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    edges[i] = std::pow(10.0, first + static_cast<double>(i) / per_decade);
  }
  // Decade boundaries exactly.
  for (int d = 0; d <= last - first; ++d) edges[d * per_decade] = std::pow(10.0, first + d);
  return edges;
}

std::size_t bin_of(const std::vector<double>& edges, double x) {
  const auto it = std::upper_bound(edges.begin(), edges.end(), x);
  const auto idx = static_cast<std::size_t>(it - edges.begin());
  if (idx == 0) return 0;
  return std::min(idx - 1, edges.size() - 2);
}

}  // namespace

bool is_per_vertex(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::kIndividual:
    case MeasureKind::kRelativeIndividual:
    case MeasureKind::kBackwardTranspose:
    case MeasureKind::kBackwardPosterior:
    case MeasureKind::kProjected:
      return true;
    default:
      return false;
  }
}

SweepResult sweep_serial(const Hin& h, const SweepRequest& request) {
  const Evaluator ev(h, request);
  const auto vertices = ev.vertices();
  std::vector<std::optional<SweepRow>> slots(vertices.size());
  WalkWorkspace ws;
  for (std::size_t i = 0; i < vertices.size(); ++i) slots[i] = ev.eval(vertices[i], ws);
  return assemble(ev, vertices, slots);
}

SweepResult sweep_parallel(const Hin& h, const SweepRequest& request, int threads) {
  const Evaluator ev(h, request);
  const auto vertices = ev.vertices();
  const auto n = static_cast<std::ptrdiff_t>(vertices.size());
  std::vector<std::optional<SweepRow>> slots(vertices.size());
  std::vector<std::exception_ptr> errors(vertices.size());
  const int team = threads > 0 ? threads : omp_get_max_threads();

#pragma omp parallel num_threads(team)
  {
    WalkWorkspace ws;
#pragma omp for schedule(dynamic, 64)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      try {
        slots[i] = ev.eval(vertices[i], ws);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  }
  // Report the failure of the lowest vertex, as the serial sweep would.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return assemble(ev, vertices, slots);
}

std::vector<DiversityReport> to_reports(const SweepRequest& request, const SweepResult& result) {
  std::vector<DiversityReport> out;
  out.reserve(result.rows.size() * request.alphas.size());
  const bool point_start = request.kind == MeasureKind::kIndividual ||
                           request.kind == MeasureKind::kBackwardTranspose ||
                           request.kind == MeasureKind::kProjected;
  for (const auto& row : result.rows) {
    for (std::size_t i = 0; i < request.alphas.size(); ++i) {
      DiversityReport r;
      r.kind = request.kind;
      r.metapath = request.path;
      r.alpha = request.alphas[i];
      r.conditioning = VertexId{result.type, row.vertex};
      r.start = point_start ? StartSpec::point_mass(row.vertex) : request.start;
      r.value = row.values[i];
      r.sink_mass = row.sink_mass;
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<HistogramBin> histogram(std::span<const double> values, BinSpec spec) {
  if (spec.bins <= 0) throw DomainError("histogram needs a positive bin count");
  if (values.empty()) return {};
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError("histogram values must be finite");
  }
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  std::vector<double> edges;
  if (spec.scale == BinSpec::Scale::kLog) {
    if (*mn <= 0.0) throw DomainError("log-binned histogram needs positive values");
    edges = log_edges(*mn, *mx, spec.bins);
  } else {
    double lo = *mn;
    double hi = *mx;
    if (lo == hi) {
      lo -= 0.5;
      hi += 0.5;
    }
    edges.resize(static_cast<std::size_t>(spec.bins) + 1);
    for (int i = 0; i <= spec.bins; ++i) edges[i] = lo + (hi - lo) * i / spec.bins;
    edges.back() = hi;
  }
  std::vector<HistogramBin> bins(edges.size() - 1);
  for (std::size_t i = 0; i < bins.size(); ++i) {
    bins[i].low = edges[i];
    bins[i].high = edges[i + 1];
  }
  for (double v : values) ++bins[bin_of(edges, v)].count;
  return bins;
}

double quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw DomainError("quantile of an empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::vector<CurvePoint> volume_curve(std::span<const std::uint64_t> volumes,
                                     std::span<const double> values, int bins_per_decade) {
  if (volumes.size() != values.size()) {
    throw DimensionError("volume curve needs one value per volume");
  }
  if (bins_per_decade <= 0) throw DomainError("volume curve needs a positive bin count");
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  for (auto v : volumes) {
    if (v == 0) continue;
    lo = lo == 0 ? v : std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi == 0) return {};
  const auto edges =
      log_edges(static_cast<double>(lo), static_cast<double>(hi), bins_per_decade);
  std::vector<std::vector<double>> groups(edges.size() - 1);
  for (std::size_t i = 0; i < volumes.size(); ++i) {
    if (volumes[i] == 0) continue;
    groups[bin_of(edges, static_cast<double>(volumes[i]))].push_back(values[i]);
  }
  std::vector<CurvePoint> out;
  for (std::size_t b = 0; b < groups.size(); ++b) {
    auto& g = groups[b];
    if (g.empty()) continue;
    std::sort(g.begin(), g.end());
    kernel::CompensatedSum sum;
    for (double x : g) sum.add(x);
    CurvePoint p;
    p.volume_low = edges[b];
    p.volume_high = edges[b + 1];
    p.count = g.size();
    p.mean = sum.value() / static_cast<double>(g.size());
    p.p05 = quantile(g, 0.05);
    p.p30 = quantile(g, 0.30);
    p.p70 = quantile(g, 0.70);
    p.p95 = quantile(g, 0.95);
    out.push_back(p);
  }
  return out;
}

}  // namespace hindiv
