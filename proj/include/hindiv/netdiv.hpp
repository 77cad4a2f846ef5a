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

// Network diversity measures along meta paths: collective, individual,
// mean individual, relative, backward and projected diversities.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hindiv/divmath.hpp"
#include "hindiv/hin.hpp"
#include "hindiv/walk.hpp"

namespace hindiv {

enum class MeasureKind : std::uint8_t {
  kCollective,
  kIndividual,
  kMeanIndividual,
  kRelativeIndividual,
  kRelativeCollective,
  kBackwardTranspose,
  kBackwardPosterior,
  kMeanBackward,
  kProjected,
};

/// How the start vertex distribution is recovered from an end vertex.
///  kTranspose: walk the transposed meta path from the end vertex.
///  kPosterior: Bayes posterior Pr(X_0 | X_k = v_k) under the start distribution.
enum class BackwardSemantics : std::uint8_t { kTranspose, kPosterior };

/// Whether the sink entry of an augmented network counts as a vertex.
/// kExclude drops it and renormalizes the rest; its mass is still reported.
enum class SinkPolicy : std::uint8_t { kExclude, kInclude };

std::string to_string(MeasureKind kind);
std::optional<MeasureKind> parse_measure_kind(std::string_view text);
std::string to_string(BackwardSemantics s);
std::optional<BackwardSemantics> parse_backward_semantics(std::string_view text);

/// Distribution of the starting vertex X_0.
struct StartSpec {
  enum class Kind : std::uint8_t { kUniform, kUniformSubset, kExplicit, kPoint };

  Kind kind = Kind::kUniform;
  std::vector<VertexIndex> subset;  // kUniformSubset
  std::vector<double> weights;      // kExplicit, indexed by vertex (sink included)
  VertexIndex point = 0;            // kPoint
  /// Free-form description carried into reports ("uniform", "dist:file", ...).
  std::string label = "uniform";

  static StartSpec uniform();
  static StartSpec uniform_over(std::vector<VertexIndex> subset, std::string label);
  static StartSpec explicit_weights(std::vector<double> weights, std::string label);
  static StartSpec point_mass(VertexIndex v);

  /// Uniform variants never put mass on a sink. Explicit weights are
  /// normalized. Throws ValidationError / OutOfRangeError.
  VertexDistribution resolve(const Hin& h, VertexTypeId type) const;
};

struct DiversityReport {
  MeasureKind kind = MeasureKind::kCollective;
  MetaPath metapath;
  std::optional<MetaPath> baseline_metapath;  // kRelativeCollective
  AlphaOrder alpha = AlphaOrder::one();
  std::optional<VertexId> conditioning;
  StartSpec start;
  std::optional<StartSpec> baseline_start;  // kRelativeCollective
  std::optional<BackwardSemantics> semantics;  // kMeanBackward
  double value = 0.0;
  /// Mass of the measured distribution absorbed by the sink.
  double sink_mass = 0.0;
};

struct MeasureOptions {
  SinkPolicy sinks = SinkPolicy::kExclude;
};

// Every measure accepts a list of orders and returns one report per order;
// the walk is computed once.

std::vector<DiversityReport> collective_diversity(const Hin& h, const MetaPath& path,
                                                  const StartSpec& start,
                                                  std::span<const AlphaOrder> alphas,
                                                  MeasureOptions opts = {});
std::vector<DiversityReport> individual_diversity(const Hin& h, const MetaPath& path,
                                                  VertexIndex v0,
                                                  std::span<const AlphaOrder> alphas,
                                                  MeasureOptions opts = {});
std::vector<DiversityReport> mean_individual_diversity(const Hin& h, const MetaPath& path,
                                                       const StartSpec& start,
                                                       std::span<const AlphaOrder> alphas,
                                                       MeasureOptions opts = {});
std::vector<DiversityReport> relative_individual_diversity(const Hin& h, const MetaPath& path,
                                                           VertexIndex v0,
                                                           const StartSpec& start,
                                                           std::span<const AlphaOrder> alphas,
                                                           MeasureOptions opts = {});
std::vector<DiversityReport> relative_collective_diversity(
    const Hin& h, const MetaPath& path, const MetaPath& baseline_path, const StartSpec& start,
    const StartSpec& baseline_start, std::span<const AlphaOrder> alphas,
    MeasureOptions opts = {});
std::vector<DiversityReport> backward_diversity_transpose(const Hin& h, const MetaPath& path,
                                                          VertexIndex vk,
                                                          std::span<const AlphaOrder> alphas,
                                                          MeasureOptions opts = {});
std::vector<DiversityReport> backward_diversity_posterior(const Hin& h, const MetaPath& path,
                                                          VertexIndex vk,
                                                          const StartSpec& start,
                                                          std::span<const AlphaOrder> alphas,
                                                          MeasureOptions opts = {});
std::vector<DiversityReport> mean_backward_diversity(const Hin& h, const MetaPath& path,
                                                     const StartSpec& start,
                                                     BackwardSemantics semantics,
                                                     std::span<const AlphaOrder> alphas,
                                                     MeasureOptions opts = {});
std::vector<DiversityReport> projected_diversity(const Hin& h, const MetaPath& path,
                                                 VertexIndex v0,
                                                 std::span<const AlphaOrder> alphas,
                                                 MeasureOptions opts = {});

// Single-order conveniences returning the value only.

double collective_diversity(const Hin& h, const MetaPath& path, const StartSpec& start,
                            AlphaOrder alpha, MeasureOptions opts = {});
double individual_diversity(const Hin& h, const MetaPath& path, VertexIndex v0,
                            AlphaOrder alpha, MeasureOptions opts = {});
double mean_individual_diversity(const Hin& h, const MetaPath& path, const StartSpec& start,
                                 AlphaOrder alpha, MeasureOptions opts = {});
double relative_individual_diversity(const Hin& h, const MetaPath& path, VertexIndex v0,
                                     const StartSpec& start, AlphaOrder alpha,
                                     MeasureOptions opts = {});
double relative_collective_diversity(const Hin& h, const MetaPath& path,
                                     const MetaPath& baseline_path, const StartSpec& start,
                                     const StartSpec& baseline_start, AlphaOrder alpha,
                                     MeasureOptions opts = {});
double backward_diversity_transpose(const Hin& h, const MetaPath& path, VertexIndex vk,
                                    AlphaOrder alpha, MeasureOptions opts = {});
double backward_diversity_posterior(const Hin& h, const MetaPath& path, VertexIndex vk,
                                    const StartSpec& start, AlphaOrder alpha,
                                    MeasureOptions opts = {});
double mean_backward_diversity(const Hin& h, const MetaPath& path, const StartSpec& start,
                               BackwardSemantics semantics, AlphaOrder alpha,
                               MeasureOptions opts = {});
double projected_diversity(const Hin& h, const MetaPath& path, VertexIndex v0,
                           AlphaOrder alpha, MeasureOptions opts = {});

namespace measure_detail {

/// Support of a distribution after applying the sink policy: positive
/// masses (renormalized when the sink is dropped) and the absorbed mass.
struct Reduced {
  SparseVector entries;
  double sink_mass = 0.0;
};

Reduced reduce(const Hin& h, VertexTypeId type, SparseVector entries, SinkPolicy policy);

/// D_alpha over the masses of `entries`.
double diversity_of(const SparseVector& entries, AlphaOrder alpha);

/// D_alpha(p || q) for sparse p, q over the same type.
double relative_diversity_of(const SparseVector& p, const SparseVector& q, AlphaOrder alpha);

/// Unnormalized posterior weights start(v0) * p_{path|v0}(vk) over X_0.
SparseVector posterior_weights(const Hin& h, const MetaPath& path,
                               const SparseVector& start, VertexIndex vk, WalkWorkspace& ws);

}  // namespace measure_detail

}  // namespace hindiv
