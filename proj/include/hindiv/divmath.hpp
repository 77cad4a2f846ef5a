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

// True diversities (Hill numbers), relative true diversities and the classic
// concentration/diversity indices they generalize.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hindiv {

/// Tolerance on |sum(p) - 1| below which a weight vector is accepted as is.
inline constexpr double kNormalizationTolerance = 1e-9;
/// Deviation of |sum(p) - 1| beyond which a weight vector is rejected.
inline constexpr double kRenormalizationLimit = 1e-3;
/// Distance to 0, 1 or 2 under which a general order snaps to the exact tag.
inline constexpr double kAlphaSnapTolerance = 1e-9;
/// Above this many entries sums use compensated accumulation.
inline constexpr std::size_t kCompensatedSumThreshold = 1000;

/// Order of a true diversity. The orders 0, 1, 2 and infinity are carried as
/// exact tags; anything else is a finite non-negative GENERAL value.
class AlphaOrder {
 public:
  enum class Tag : std::uint8_t { kZero, kOne, kTwo, kInfinity, kGeneral };

  static AlphaOrder zero() { return AlphaOrder(Tag::kZero, 0.0); }
  static AlphaOrder one() { return AlphaOrder(Tag::kOne, 1.0); }
  static AlphaOrder two() { return AlphaOrder(Tag::kTwo, 2.0); }
  static AlphaOrder infinity();

  /// Snaps values within kAlphaSnapTolerance of 0, 1, 2 to their tags and
  /// +inf to kInfinity. Throws DomainError for negative or NaN input.
  static AlphaOrder from_value(double value);

  /// Accepts "0", "1", "2", "inf" (also "infinity", "Inf") or any
  /// non-negative decimal. Throws ParseError otherwise.
  static AlphaOrder parse(std::string_view text);

  Tag tag() const noexcept { return tag_; }
  /// Numeric order; +inf for kInfinity.
  double value() const noexcept { return value_; }
  bool is_general() const noexcept { return tag_ == Tag::kGeneral; }

  /// "0", "1", "2", "inf", or the shortest round-trip decimal.
  std::string to_string() const;

  friend bool operator==(const AlphaOrder& a, const AlphaOrder& b) noexcept {
    return a.tag_ == b.tag_ && (a.tag_ != Tag::kGeneral || a.value_ == b.value_);
  }

 private:
  AlphaOrder(Tag tag, double value) : tag_(tag), value_(value) {}

  Tag tag_;
  double value_;
};

/// Finite probability vector: non-negative weights summing to one.
class Distribution {
 public:
  /// Weights summing to 1 within kNormalizationTolerance are kept verbatim;
  /// a deviation up to kRenormalizationLimit is renormalized; larger
  /// deviations, negative/non-finite weights and empty input throw
  /// ValidationError.
  explicit Distribution(std::vector<double> weights);

  /// Normalizes arbitrary non-negative counts with a positive total.
  static Distribution from_counts(std::span<const double> counts);
  static Distribution uniform(std::size_t k);

  std::size_t size() const noexcept { return weights_.size(); }
  std::span<const double> weights() const noexcept { return weights_; }
  double operator[](std::size_t i) const { return weights_[i]; }
  auto begin() const noexcept { return weights_.begin(); }
  auto end() const noexcept { return weights_.end(); }

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  struct Trusted {};
  Distribution(Trusted, std::vector<double> weights) : weights_(std::move(weights)) {}

  std::vector<double> weights_;
};

// ---------------------------------------------------------------------------
// Distribution-level API.

double true_diversity(const Distribution& p, AlphaOrder alpha);
/// Natural-log Rényi entropy, ln D_alpha(p).
double renyi_entropy(const Distribution& p, AlphaOrder alpha);
/// D_alpha(p || q) = (sum_{q_i > 0} p_i^a q_i^(1-a))^(1/(a-1)). The orders 0,
/// 1 and infinity take the limits 1 / sum_{p_i > 0} q_i, exp(KL(p || q)) and
/// max_i p_i / q_i. Requires p_i == 0 wherever q_i == 0.
double relative_true_diversity(const Distribution& p, const Distribution& q,
                               AlphaOrder alpha);

double richness(const Distribution& p);
double shannon_entropy_base2(const Distribution& p);
/// Herfindahl-Hirschman index, sum of p_i^2.
double hhi(const Distribution& p);
double gini_simpson(const Distribution& p);
double berger_parker(const Distribution& p);
/// (1 / 2k) * sum_ij |p_i - p_j|.
double gini_coefficient(const Distribution& p);

/// prod_i values_i ^ weights_i, accumulated in log space. Entries with zero
/// weight are skipped.
double weighted_geometric_mean(std::span<const double> values,
                               const Distribution& weights);

/// (p_1/m, ..., p_k/m) repeated m times.
Distribution replicate(const Distribution& p, std::size_t m);

// ---------------------------------------------------------------------------
// Unchecked kernels over raw weight spans. Callers guarantee non-negative
// entries summing to one; zero entries are skipped. Used on sparse walk
// output where only the support is materialized.
namespace kernel {

double true_diversity(std::span<const double> p, AlphaOrder alpha);
double log_true_diversity(std::span<const double> p, AlphaOrder alpha);
/// Aligned p and q; throws AbsoluteContinuityError / DimensionError.
double relative_true_diversity(std::span<const double> p,
                               std::span<const double> q, AlphaOrder alpha);

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if ((sum_ >= 0 ? sum_ : -sum_) >= (x >= 0 ? x : -x)) {
      correction_ += (sum_ - t) + x;
    } else {
      correction_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + correction_; }

 private:
  double sum_ = 0.0;
  double correction_ = 0.0;
};

}  // namespace kernel

}  // namespace hindiv
