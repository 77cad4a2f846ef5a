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

#include "hindiv/divmath.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include "hindiv/errors.hpp"

namespace hindiv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Sums f(i) for i in [0, n), compensated above the threshold.
template <typename F>
double sum_terms(std::size_t n, F&& f) {
  if (n > kCompensatedSumThreshold) {
    kernel::CompensatedSum acc;
    for (std::size_t i = 0; i < n; ++i) acc.add(f(i));
    return acc.value();
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += f(i);
  return acc;
}

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

// ---------------------------------------------------------------------------
// AlphaOrder

AlphaOrder AlphaOrder::infinity() { return AlphaOrder(Tag::kInfinity, kInf); }

AlphaOrder AlphaOrder::from_value(double value) {
  if (std::isnan(value) || value < 0.0) {
    throw DomainError("alpha order must be non-negative, got " + shortest(value));
  }
  if (std::isinf(value)) return infinity();
  if (std::abs(value) <= kAlphaSnapTolerance) return zero();
  if (std::abs(value - 1.0) <= kAlphaSnapTolerance) return one();
  if (std::abs(value - 2.0) <= kAlphaSnapTolerance) return two();
  return AlphaOrder(Tag::kGeneral, value);
}

AlphaOrder AlphaOrder::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  if (text == "inf" || text == "Inf" || text == "INF" || text == "infinity" ||
      text == "Infinity") {
    return infinity();
  }
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last || std::isnan(value) ||
      std::isinf(value)) {
    throw ParseError("invalid alpha order '" + std::string(text) +
                     "' (expected 0, 1, 2, inf or a non-negative decimal)");
  }
  if (value < 0.0) {
    throw ParseError("alpha order must be non-negative, got '" + std::string(text) + "'");
  }
  return from_value(value);
}

std::string AlphaOrder::to_string() const {
  switch (tag_) {
    case Tag::kZero: return "0";
    case Tag::kOne: return "1";
    case Tag::kTwo: return "2";
    case Tag::kInfinity: return "inf";
    case Tag::kGeneral: break;
  }
  return shortest(value_);
}

// ---------------------------------------------------------------------------
// Distribution

Distribution::Distribution(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw ValidationError("distribution must have at least one entry");
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    const double w = weights_[i];
    if (!std::isfinite(w) || w < 0.0) {
      throw ValidationError("distribution entry " + std::to_string(i) +
                            " is negative or not finite (" + shortest(w) + ")");
    }
  }
  const double total = sum_terms(weights_.size(), [&](std::size_t i) { return weights_[i]; });
  const double deviation = std::abs(total - 1.0);
  if (deviation <= kNormalizationTolerance) return;
  if (deviation >= kRenormalizationLimit) {
    throw ValidationError("distribution sums to " + shortest(total) +
                          ", outside the renormalization limit");
  }
  for (double& w : weights_) w /= total;
}

Distribution Distribution::from_counts(std::span<const double> counts) {
  if (counts.empty()) throw ValidationError("distribution must have at least one entry");
  for (double c : counts) {
    if (!std::isfinite(c) || c < 0.0) {
      throw ValidationError("counts must be finite and non-negative");
    }
  }
  const double total = sum_terms(counts.size(), [&](std::size_t i) { return counts[i]; });
  if (!(total > 0.0)) throw ValidationError("counts sum to zero");
  std::vector<double> w(counts.begin(), counts.end());
  for (double& x : w) x /= total;
  return Distribution(Trusted{}, std::move(w));
}

Distribution Distribution::uniform(std::size_t k) {
  if (k == 0) throw ValidationError("uniform distribution needs k >= 1");
  return Distribution(Trusted{}, std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

// ---------------------------------------------------------------------------
// Kernels

namespace kernel {

double log_true_diversity(std::span<const double> p, AlphaOrder alpha) {
  const std::size_t n = p.size();
  switch (alpha.tag()) {
    case AlphaOrder::Tag::kZero: {
      const auto count = std::count_if(p.begin(), p.end(), [](double x) { return x > 0.0; });
      return std::log(static_cast<double>(count));
    }
    case AlphaOrder::Tag::kOne:
      return sum_terms(n, [&](std::size_t i) { return p[i] > 0.0 ? -p[i] * std::log(p[i]) : 0.0; });
    case AlphaOrder::Tag::kTwo:
      return -std::log(sum_terms(n, [&](std::size_t i) { return p[i] * p[i]; }));
    case AlphaOrder::Tag::kInfinity:
      return -std::log(*std::max_element(p.begin(), p.end()));
    case AlphaOrder::Tag::kGeneral: break;
  }
  const double a = alpha.value();
  const double top = *std::max_element(p.begin(), p.end());
  // sum p^a = top^a * sum (p/top)^a keeps every term in [0, 1].
  const double scaled = sum_terms(n, [&](std::size_t i) {
    return p[i] > 0.0 ? std::pow(p[i] / top, a) : 0.0;
  });
  return (a * std::log(top) + std::log(scaled)) / (1.0 - a);
}

double true_diversity(std::span<const double> p, AlphaOrder alpha) {
  switch (alpha.tag()) {
    case AlphaOrder::Tag::kZero:
      return static_cast<double>(std::count_if(p.begin(), p.end(), [](double x) { return x > 0.0; }));
    case AlphaOrder::Tag::kTwo:
      return 1.0 / sum_terms(p.size(), [&](std::size_t i) { return p[i] * p[i]; });
    case AlphaOrder::Tag::kInfinity:
      return 1.0 / *std::max_element(p.begin(), p.end());
    default:
      return std::exp(log_true_diversity(p, alpha));
  }
}

double relative_true_diversity(std::span<const double> p, std::span<const double> q,
                               AlphaOrder alpha) {
  if (p.size() != q.size()) {
    throw DimensionError("relative diversity needs equal lengths, got " +
                         std::to_string(p.size()) + " and " + std::to_string(q.size()));
  }
  const std::size_t n = p.size();
  double max_ratio = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (q[i] == 0.0) {
      if (p[i] > 0.0) {
        throw AbsoluteContinuityError("p[" + std::to_string(i) + "] = " + shortest(p[i]) +
                                      " where the baseline is zero");
      }
      continue;
    }
    if (p[i] > 0.0) max_ratio = std::max(max_ratio, p[i] / q[i]);
  }
  // The orders 0, 1 and infinity are the limits of the general form.
  switch (alpha.tag()) {
    case AlphaOrder::Tag::kZero: {
      const double covered =
          sum_terms(n, [&](std::size_t i) { return p[i] > 0.0 ? q[i] : 0.0; });
      return 1.0 / covered;
    }
    case AlphaOrder::Tag::kOne: {
      const double kl = sum_terms(n, [&](std::size_t i) {
        return (p[i] > 0.0 && q[i] > 0.0) ? p[i] * std::log(p[i] / q[i]) : 0.0;
      });
      return std::exp(kl);
    }
    case AlphaOrder::Tag::kInfinity:
      return max_ratio;
    default: break;
  }
  // sum_{q>0} p^a q^(1-a) = sum q (p/q)^a, scaled by the largest ratio.
  const double a = alpha.value();
  const double scaled = sum_terms(n, [&](std::size_t i) {
    return (p[i] > 0.0 && q[i] > 0.0) ? q[i] * std::pow(p[i] / q[i] / max_ratio, a) : 0.0;
  });
  return std::exp((a * std::log(max_ratio) + std::log(scaled)) / (a - 1.0));
}

}  // namespace kernel

// ---------------------------------------------------------------------------
// Distribution-level API

double true_diversity(const Distribution& p, AlphaOrder alpha) {
  return kernel::true_diversity(p.weights(), alpha);
}

double renyi_entropy(const Distribution& p, AlphaOrder alpha) {
  return kernel::log_true_diversity(p.weights(), alpha);
}

double relative_true_diversity(const Distribution& p, const Distribution& q, AlphaOrder alpha) {
  return kernel::relative_true_diversity(p.weights(), q.weights(), alpha);
}

double richness(const Distribution& p) { return true_diversity(p, AlphaOrder::zero()); }

double shannon_entropy_base2(const Distribution& p) {
  return renyi_entropy(p, AlphaOrder::one()) / std::log(2.0);
}

double hhi(const Distribution& p) {
  const auto w = p.weights();
  return sum_terms(w.size(), [&](std::size_t i) { return w[i] * w[i]; });
}

double gini_simpson(const Distribution& p) { return 1.0 - hhi(p); }

double berger_parker(const Distribution& p) {
  return *std::max_element(p.begin(), p.end());
}

double gini_coefficient(const Distribution& p) {
  // sum_ij |p_i - p_j| = 2 * sum_i (2i - k - 1) p_(i) over ascending order, 1-based i.
  std::vector<double> sorted(p.begin(), p.end());
  std::sort(sorted.begin(), sorted.end());
  const auto k = static_cast<double>(sorted.size());
  const double pairwise = 2.0 * sum_terms(sorted.size(), [&](std::size_t i) {
    return (2.0 * static_cast<double>(i + 1) - k - 1.0) * sorted[i];
  });
  // Rounding can leave a tiny negative sum for equal weights.
  return std::max(0.0, pairwise / (2.0 * k));
}

double weighted_geometric_mean(std::span<const double> values, const Distribution& weights) {
  if (values.size() != weights.size()) {
    throw DimensionError("weighted_geometric_mean: " + std::to_string(values.size()) +
                         " values for " + std::to_string(weights.size()) + " weights");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (weights[i] > 0.0 && !(values[i] > 0.0)) {
      throw DomainError("weighted_geometric_mean: value " + std::to_string(i) +
                        " is not positive (" + shortest(values[i]) + ")");
    }
  }
  const double log_mean = sum_terms(values.size(), [&](std::size_t i) {
    return weights[i] > 0.0 ? weights[i] * std::log(values[i]) : 0.0;
  });
  return std::exp(log_mean);
}

Distribution replicate(const Distribution& p, std::size_t m) {
  if (m == 0) throw DomainError("replicate: m must be at least 1");
  std::vector<double> out;
  out.reserve(p.size() * m);
  const auto md = static_cast<double>(m);
  for (std::size_t r = 0; r < m; ++r) {
    for (double w : p) out.push_back(w / md);
  }
  return Distribution(std::move(out));
}

}  // namespace hindiv
