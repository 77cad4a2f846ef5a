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

#include "hindiv/netdiv.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "hindiv/errors.hpp"

namespace hindiv {

namespace {

constexpr std::array<std::pair<MeasureKind, std::string_view>, 9> kKindNames{{
    {MeasureKind::kCollective, "collective"},
    {MeasureKind::kIndividual, "individual"},
    {MeasureKind::kMeanIndividual, "mean_individual"},
    {MeasureKind::kRelativeIndividual, "relative_individual"},
    {MeasureKind::kRelativeCollective, "relative_collective"},
    {MeasureKind::kBackwardTranspose, "backward_transpose"},
    {MeasureKind::kBackwardPosterior, "backward_posterior"},
    {MeasureKind::kMeanBackward, "mean_backward"},
    {MeasureKind::kProjected, "projected"},
}};

void check_vertex(const Hin& h, VertexTypeId type, VertexIndex v) {
  if (v >= h.cardinality(type)) {
    throw DomainError("vertex " + std::to_string(v) + " is not in vertex type '" +
                      h.vertex_type(type).name + "' (" + std::to_string(h.cardinality(type)) +
                      " vertices)");
  }
}

DiversityReport base_report(MeasureKind kind, const MetaPath& path, const StartSpec& start) {
  DiversityReport r;
  r.kind = kind;
  r.metapath = path;
  r.start = start;
  return r;
}

// One report per order, each carrying D_alpha(entries).
std::vector<DiversityReport> reports_for(const DiversityReport& proto,
                                         const measure_detail::Reduced& reduced,
                                         std::span<const AlphaOrder> alphas) {
  std::vector<DiversityReport> out;
  out.reserve(alphas.size());
  for (const auto& a : alphas) {
    DiversityReport r = proto;
    r.alpha = a;
    r.value = measure_detail::diversity_of(reduced.entries, a);
    r.sink_mass = reduced.sink_mass;
    out.push_back(std::move(r));
  }
  return out;
}

SparseVector forward(const Hin& h, const MetaPath& path, const StartSpec& start,
                     WalkWorkspace& ws) {
  const VertexDistribution s = start.resolve(h, path.source());
  return walk_kernel::propagate(h, path, s.nonzeros(), ws);
}

SparseVector conditional(const Hin& h, const MetaPath& path, VertexIndex v0, WalkWorkspace& ws) {
  check_vertex(h, path.source(), v0);
  return walk_kernel::propagate(h, path, {{v0, 1.0}}, ws);
}

// Weighted geometric mean of per-vertex diversities, accumulated as
// sum_v w(v) * ln D(v) for each order.
class GeometricMean {
 public:
  explicit GeometricMean(std::span<const AlphaOrder> alphas) : alphas_(alphas), logs_(alphas.size()) {}

  void add(double weight, const SparseVector& entries) {
    for (std::size_t i = 0; i < alphas_.size(); ++i) {
      logs_[i].add(weight * std::log(measure_detail::diversity_of(entries, alphas_[i])));
    }
  }
  double value(std::size_t i) const { return std::exp(logs_[i].value()); }

 private:
  std::span<const AlphaOrder> alphas_;
  std::vector<kernel::CompensatedSum> logs_;
};

}  // namespace

std::string to_string(MeasureKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return std::string(name);
  }
  return "unknown";
}

std::optional<MeasureKind> parse_measure_kind(std::string_view text) {
  for (const auto& [k, name] : kKindNames) {
    if (name == text) return k;
  }
  return std::nullopt;
}

std::string to_string(BackwardSemantics s) {
  return s == BackwardSemantics::kTranspose ? "transpose" : "posterior";
}

std::optional<BackwardSemantics> parse_backward_semantics(std::string_view text) {
  if (text == "transpose") return BackwardSemantics::kTranspose;
  if (text == "posterior") return BackwardSemantics::kPosterior;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// StartSpec

StartSpec StartSpec::uniform() { return StartSpec{}; }

StartSpec StartSpec::uniform_over(std::vector<VertexIndex> subset, std::string label) {
  StartSpec s;
  s.kind = Kind::kUniformSubset;
  s.subset = std::move(subset);
  s.label = std::move(label);
  return s;
}

StartSpec StartSpec::explicit_weights(std::vector<double> weights, std::string label) {
  StartSpec s;
  s.kind = Kind::kExplicit;
  s.weights = std::move(weights);
  s.label = std::move(label);
  return s;
}

StartSpec StartSpec::point_mass(VertexIndex v) {
  StartSpec s;
  s.kind = Kind::kPoint;
  s.point = v;
  s.label = "point";
  return s;
}

VertexDistribution StartSpec::resolve(const Hin& h, VertexTypeId type) const {
  const std::size_t card = h.cardinality(type);
  const auto sink = h.sink(type);
  switch (kind) {
    case Kind::kUniform: {
      const std::size_t n = card - (sink ? 1 : 0);
      if (n == 0) throw ValidationError("vertex type '" + h.vertex_type(type).name + "' is empty");
      SparseVector entries;
      entries.reserve(n);
      const double m = 1.0 / static_cast<double>(n);
      for (std::size_t v = 0; v < n; ++v) entries.push_back({static_cast<VertexIndex>(v), m});
      return VertexDistribution::from_entries(type, card, std::move(entries));
    }
    case Kind::kUniformSubset: {
      std::vector<VertexIndex> members = subset;
      std::sort(members.begin(), members.end());
      members.erase(std::unique(members.begin(), members.end()), members.end());
      if (members.empty()) throw ValidationError("start subset is empty");
      for (auto v : members) {
        if (v >= card) throw OutOfRangeError("start subset vertex out of range");
      }
      SparseVector entries;
      const double m = 1.0 / static_cast<double>(members.size());
      for (auto v : members) entries.push_back({v, m});
      return VertexDistribution::from_entries(type, card, std::move(entries));
    }
    case Kind::kExplicit: {
      std::vector<double> w = weights;
      if (sink && w.size() + 1 == card) w.push_back(0.0);
      if (w.size() != card) {
        throw DimensionError("start weights have " + std::to_string(weights.size()) +
                             " entries, vertex type '" + h.vertex_type(type).name + "' has " +
                             std::to_string(card));
      }
      const Distribution d = Distribution::from_counts(w);
      return VertexDistribution::from_dense(type, {d.begin(), d.end()});
    }
    case Kind::kPoint:
      check_vertex(h, type, point);
      return VertexDistribution::point_mass(type, card, point);
  }
  throw DomainError("unknown start kind");
}

// ---------------------------------------------------------------------------
// Helpers

namespace measure_detail {

Reduced reduce(const Hin& h, VertexTypeId type, SparseVector entries, SinkPolicy policy) {
  Reduced out;
  std::erase_if(entries, [](const SparseEntry& e) { return !(e.mass > 0.0); });
  const auto sink = h.sink(type);
  if (sink) {
    for (const auto& e : entries) {
      if (e.index == *sink) out.sink_mass = e.mass;
    }
  }
  if (policy == SinkPolicy::kInclude || !sink || out.sink_mass == 0.0) {
    out.entries = std::move(entries);
    return out;
  }
  std::erase_if(entries, [&](const SparseEntry& e) { return e.index == *sink; });
  if (entries.empty()) {
    out.entries = {{*sink, 1.0}};
    return out;
  }
  kernel::CompensatedSum total;
  for (const auto& e : entries) total.add(e.mass);
  const double t = total.value();
  for (auto& e : entries) e.mass /= t;
  out.entries = std::move(entries);
  return out;
}

double diversity_of(const SparseVector& entries, AlphaOrder alpha) {
  if (entries.empty()) throw ZeroProbabilityError("distribution has no mass");
  std::vector<double> masses;
  masses.reserve(entries.size());
  for (const auto& e : entries) masses.push_back(e.mass);
  return kernel::true_diversity(masses, alpha);
}

double relative_diversity_of(const SparseVector& p, const SparseVector& q, AlphaOrder alpha) {
  std::vector<double> pa;
  std::vector<double> qa;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < p.size() || j < q.size()) {
    if (j == q.size() || (i < p.size() && p[i].index < q[j].index)) {
      pa.push_back(p[i++].mass);
      qa.push_back(0.0);
    } else if (i == p.size() || q[j].index < p[i].index) {
      pa.push_back(0.0);
      qa.push_back(q[j++].mass);
    } else {
      pa.push_back(p[i++].mass);
      qa.push_back(q[j++].mass);
    }
  }
  return kernel::relative_true_diversity(pa, qa, alpha);
}

SparseVector posterior_weights(const Hin& h, const MetaPath& path, const SparseVector& start,
                               VertexIndex vk, WalkWorkspace& ws) {
  SparseVector likelihood{{vk, 1.0}};
  for (auto it = path.steps.rbegin(); it != path.steps.rend(); ++it) {
    likelihood = walk_kernel::pull_back(h, *it, likelihood, ws);
  }
  SparseVector joint;
  std::size_t j = 0;
  for (const auto& s : start) {
    while (j < likelihood.size() && likelihood[j].index < s.index) ++j;
    if (j < likelihood.size() && likelihood[j].index == s.index) {
      const double w = s.mass * likelihood[j].mass;
      if (w > 0.0) joint.push_back({s.index, w});
    }
  }
  return joint;
}

}  // namespace measure_detail

using measure_detail::reduce;

// ---------------------------------------------------------------------------
// Measures

std::vector<DiversityReport> collective_diversity(const Hin& h, const MetaPath& path,
                                                  const StartSpec& start,
                                                  std::span<const AlphaOrder> alphas,
                                                  MeasureOptions opts) {
  WalkWorkspace ws;
  const auto reduced = reduce(h, path.destination(), forward(h, path, start, ws), opts.sinks);
  return reports_for(base_report(MeasureKind::kCollective, path, start), reduced, alphas);
}

std::vector<DiversityReport> individual_diversity(const Hin& h, const MetaPath& path,
                                                  VertexIndex v0,
                                                  std::span<const AlphaOrder> alphas,
                                                  MeasureOptions opts) {
  WalkWorkspace ws;
  const auto reduced = reduce(h, path.destination(), conditional(h, path, v0, ws), opts.sinks);
  auto proto = base_report(MeasureKind::kIndividual, path, StartSpec::point_mass(v0));
  proto.conditioning = VertexId{path.source(), v0};
  return reports_for(proto, reduced, alphas);
}

std::vector<DiversityReport> mean_individual_diversity(const Hin& h, const MetaPath& path,
                                                       const StartSpec& start,
                                                       std::span<const AlphaOrder> alphas,
                                                       MeasureOptions opts) {
  WalkWorkspace ws;
  const VertexDistribution s = start.resolve(h, path.source());
  GeometricMean mean(alphas);
  double sink_mass = 0.0;
  for (const auto& [v0, w] : s.nonzeros()) {
    const auto reduced =
        reduce(h, path.destination(), walk_kernel::propagate(h, path, {{v0, 1.0}}, ws), opts.sinks);
    mean.add(w, reduced.entries);
    sink_mass += w * reduced.sink_mass;
  }
  std::vector<DiversityReport> out;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    auto r = base_report(MeasureKind::kMeanIndividual, path, start);
    r.alpha = alphas[i];
    r.value = mean.value(i);
    r.sink_mass = sink_mass;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<DiversityReport> relative_individual_diversity(const Hin& h, const MetaPath& path,
                                                           VertexIndex v0,
                                                           const StartSpec& start,
                                                           std::span<const AlphaOrder> alphas,
                                                           MeasureOptions opts) {
  WalkWorkspace ws;
  const auto p = reduce(h, path.destination(), conditional(h, path, v0, ws), opts.sinks);
  const auto q = reduce(h, path.destination(), forward(h, path, start, ws), opts.sinks);
  std::vector<DiversityReport> out;
  for (const auto& a : alphas) {
    auto r = base_report(MeasureKind::kRelativeIndividual, path, start);
    r.conditioning = VertexId{path.source(), v0};
    r.alpha = a;
    r.value = measure_detail::relative_diversity_of(p.entries, q.entries, a);
    r.sink_mass = p.sink_mass;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<DiversityReport> relative_collective_diversity(
    const Hin& h, const MetaPath& path, const MetaPath& baseline_path, const StartSpec& start,
    const StartSpec& baseline_start, std::span<const AlphaOrder> alphas, MeasureOptions opts) {
  if (path.destination() != baseline_path.destination()) {
    throw TypeMismatchError("relative collective diversity needs meta paths ending at the same "
                            "vertex type ('" + h.vertex_type(path.destination()).name +
                            "' vs '" + h.vertex_type(baseline_path.destination()).name + "')");
  }
  WalkWorkspace ws;
  const auto p = reduce(h, path.destination(), forward(h, path, start, ws), opts.sinks);
  const auto q =
      reduce(h, path.destination(), forward(h, baseline_path, baseline_start, ws), opts.sinks);
  std::vector<DiversityReport> out;
  for (const auto& a : alphas) {
    auto r = base_report(MeasureKind::kRelativeCollective, path, start);
    r.baseline_metapath = baseline_path;
    r.baseline_start = baseline_start;
    r.alpha = a;
    r.value = measure_detail::relative_diversity_of(p.entries, q.entries, a);
    r.sink_mass = p.sink_mass;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<DiversityReport> backward_diversity_transpose(const Hin& h, const MetaPath& path,
                                                          VertexIndex vk,
                                                          std::span<const AlphaOrder> alphas,
                                                          MeasureOptions opts) {
  WalkWorkspace ws;
  const MetaPath back = transpose_metapath(path);
  const auto reduced = reduce(h, path.source(), conditional(h, back, vk, ws), opts.sinks);
  auto proto = base_report(MeasureKind::kBackwardTranspose, path, StartSpec::point_mass(vk));
  proto.conditioning = VertexId{path.destination(), vk};
  return reports_for(proto, reduced, alphas);
}

std::vector<DiversityReport> backward_diversity_posterior(const Hin& h, const MetaPath& path,
                                                          VertexIndex vk,
                                                          const StartSpec& start,
                                                          std::span<const AlphaOrder> alphas,
                                                          MeasureOptions opts) {
  check_vertex(h, path.destination(), vk);
  WalkWorkspace ws;
  const VertexDistribution s = start.resolve(h, path.source());
  SparseVector joint = measure_detail::posterior_weights(h, path, s.nonzeros(), vk, ws);
  if (joint.empty()) {
    throw ZeroProbabilityError("end vertex " + std::to_string(vk) + " of '" +
                               h.vertex_type(path.destination()).name +
                               "' is unreachable under the start distribution");
  }
  kernel::CompensatedSum total;
  for (const auto& e : joint) total.add(e.mass);
  for (auto& e : joint) e.mass /= total.value();
  const auto reduced = reduce(h, path.source(), std::move(joint), opts.sinks);
  auto proto = base_report(MeasureKind::kBackwardPosterior, path, start);
  proto.conditioning = VertexId{path.destination(), vk};
  return reports_for(proto, reduced, alphas);
}

std::vector<DiversityReport> mean_backward_diversity(const Hin& h, const MetaPath& path,
                                                     const StartSpec& start,
                                                     BackwardSemantics semantics,
                                                     std::span<const AlphaOrder> alphas,
                                                     MeasureOptions opts) {
  WalkWorkspace ws;
  const VertexDistribution s = start.resolve(h, path.source());
  const SparseVector start_entries = s.nonzeros();
  const auto end = reduce(h, path.destination(),
                          walk_kernel::propagate(h, path, start_entries, ws), opts.sinks);
  const MetaPath back = transpose_metapath(path);
  GeometricMean mean(alphas);
  for (const auto& [vk, w] : end.entries) {
    SparseVector origins;
    if (semantics == BackwardSemantics::kTranspose) {
      origins = walk_kernel::propagate(h, back, {{vk, 1.0}}, ws);
    } else {
      origins = measure_detail::posterior_weights(h, path, start_entries, vk, ws);
      kernel::CompensatedSum total;
      for (const auto& e : origins) total.add(e.mass);
      for (auto& e : origins) e.mass /= total.value();
    }
    mean.add(w, reduce(h, path.source(), std::move(origins), opts.sinks).entries);
  }
  std::vector<DiversityReport> out;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    auto r = base_report(MeasureKind::kMeanBackward, path, start);
    r.semantics = semantics;
    r.alpha = alphas[i];
    r.value = mean.value(i);
    r.sink_mass = end.sink_mass;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<DiversityReport> projected_diversity(const Hin& h, const MetaPath& path,
                                                 VertexIndex v0,
                                                 std::span<const AlphaOrder> alphas,
                                                 MeasureOptions opts) {
  check_vertex(h, path.source(), v0);
  WalkWorkspace ws;
  const auto counts = walk_kernel::path_counts(h, path, v0, ws);
  long double total = 0.0L;
  for (const auto& [w, c] : counts) total += static_cast<long double>(c);
  if (counts.empty()) {
    throw ZeroProbabilityError("no concrete path starts at vertex " + std::to_string(v0));
  }
  SparseVector entries;
  entries.reserve(counts.size());
  for (const auto& [w, c] : counts) {
    entries.push_back({w, static_cast<double>(static_cast<long double>(c) / total)});
  }
  const auto reduced = reduce(h, path.destination(), std::move(entries), opts.sinks);
  auto proto = base_report(MeasureKind::kProjected, path, StartSpec::point_mass(v0));
  proto.conditioning = VertexId{path.source(), v0};
  return reports_for(proto, reduced, alphas);
}

// ---------------------------------------------------------------------------
// Single-order conveniences

namespace {

double single(std::vector<DiversityReport> r) { return r.front().value; }

}  // namespace

double collective_diversity(const Hin& h, const MetaPath& path, const StartSpec& start,
                            AlphaOrder alpha, MeasureOptions opts) {
  return single(collective_diversity(h, path, start, std::span(&alpha, 1), opts));
}
double individual_diversity(const Hin& h, const MetaPath& path, VertexIndex v0,
                            AlphaOrder alpha, MeasureOptions opts) {
  return single(individual_diversity(h, path, v0, std::span(&alpha, 1), opts));
}
double mean_individual_diversity(const Hin& h, const MetaPath& path, const StartSpec& start,
                                 AlphaOrder alpha, MeasureOptions opts) {
  return single(mean_individual_diversity(h, path, start, std::span(&alpha, 1), opts));
}
double relative_individual_diversity(const Hin& h, const MetaPath& path, VertexIndex v0,
                                     const StartSpec& start, AlphaOrder alpha,
                                     MeasureOptions opts) {
  return single(relative_individual_diversity(h, path, v0, start, std::span(&alpha, 1), opts));
}
double relative_collective_diversity(const Hin& h, const MetaPath& path,
                                     const MetaPath& baseline_path, const StartSpec& start,
                                     const StartSpec& baseline_start, AlphaOrder alpha,
                                     MeasureOptions opts) {
  return single(relative_collective_diversity(h, path, baseline_path, start, baseline_start,
                                              std::span(&alpha, 1), opts));
}
double backward_diversity_transpose(const Hin& h, const MetaPath& path, VertexIndex vk,
                                    AlphaOrder alpha, MeasureOptions opts) {
  return single(backward_diversity_transpose(h, path, vk, std::span(&alpha, 1), opts));
}
double backward_diversity_posterior(const Hin& h, const MetaPath& path, VertexIndex vk,
                                    const StartSpec& start, AlphaOrder alpha,
                                    MeasureOptions opts) {
  return single(backward_diversity_posterior(h, path, vk, start, std::span(&alpha, 1), opts));
}
double mean_backward_diversity(const Hin& h, const MetaPath& path, const StartSpec& start,
                               BackwardSemantics semantics, AlphaOrder alpha,
                               MeasureOptions opts) {
  return single(mean_backward_diversity(h, path, start, semantics, std::span(&alpha, 1), opts));
}
double projected_diversity(const Hin& h, const MetaPath& path, VertexIndex v0,
                           AlphaOrder alpha, MeasureOptions opts) {
  return single(projected_diversity(h, path, v0, std::span(&alpha, 1), opts));
}

}  // namespace hindiv
