// Copyright 2026 The Hatemask Authors.
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

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hatemask/common.hpp"

// Reference numerics for the two training objectives: teacher-forced
// cross-entropy and the KL term that keeps an adapted decoder close to the
// frozen one. All logarithms are natural.
namespace hatemask::objectives {

inline constexpr double kSumTolerance = 1e-9;

// One decoder step's distribution over a vocabulary. Every entry lies in
// (0, 1] and the entries sum to 1 within kSumTolerance.
class StepDistribution {
 public:
  explicit StepDistribution(std::vector<double> probabilities);

  std::span<const double> probabilities() const { return probabilities_; }
  std::size_t size() const { return probabilities_.size(); }
  double operator[](std::size_t i) const { return probabilities_[i]; }

 private:
  struct Unchecked {};
  StepDistribution(std::vector<double> probabilities, Unchecked)
      : probabilities_(std::move(probabilities)) {}
  friend StepDistribution Softmax(std::span<const double> logits);

  std::vector<double> probabilities_;
};

struct ObjectiveInput {
  std::string context_id;  // stands for the conditioning input
  std::vector<StepDistribution> step_distributions;
  std::vector<std::size_t> targets;
};

// -sum_t log P_t(target_t).
double CrossEntropy(const ObjectiveInput& input);

// sum_t sum_y new_t(y) log(new_t(y) / old_t(y)).
double KlDivergence(std::span<const StepDistribution> adapted,
                    std::span<const StepDistribution> reference);

// Weighted sum of named loss terms; terms without a weight use 1.0.
double CombinedLoss(std::span<const std::pair<std::string, double>> terms,
                    const std::map<std::string, double>& weights = {});

// Max-shifted softmax. For logit gaps beyond ~745 entries underflow to 0,
// which CrossEntropy/KlDivergence then reject.
StepDistribution Softmax(std::span<const double> logits);

using LossFn = std::function<double(std::span<const double>)>;

// Central differences against `analytic`; returns the max over components
// of |a - n| / max(|a|, |n|, 1e-12). Throws on non-finite probe losses.
double FiniteDiffCheck(const LossFn& loss, std::span<const double> logits,
                       std::span<const double> analytic, double eps);

// Logits are row-major steps x vocab.
std::vector<StepDistribution> SoftmaxRows(std::span<const double> logits, std::size_t vocab);

// d/dlogits of CrossEntropy(softmax(logits)) = p - onehot(target) per step.
std::vector<double> CrossEntropySoftmaxGradient(std::span<const double> logits,
                                                std::size_t vocab,
                                                std::span<const std::size_t> targets);

// d/dlogits of KL(softmax(logits) || reference), reference held fixed:
// p_k (log(p_k / q_k) - KL_t) per step.
std::vector<double> KlSoftmaxGradient(std::span<const double> logits, std::size_t vocab,
                                      std::span<const StepDistribution> reference);

struct GradientCheckReport {
  std::size_t trials = 0;
  double cross_entropy_max_error = 0.0;
  double kl_max_error = 0.0;
};

// Random logits drawn from SplitMix64(seed + trial), uniform in [-3, 3).
GradientCheckReport RunGradientChecks(std::uint64_t seed, std::size_t trials,
                                      std::size_t steps = 3, std::size_t vocab = 5,
                                      double eps = 1e-5);

}  // namespace hatemask::objectives
