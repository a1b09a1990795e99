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

#include "hatemask/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hatemask/rng.hpp"

namespace hatemask::objectives {

StepDistribution::StepDistribution(std::vector<double> probabilities)
    : probabilities_(std::move(probabilities)) {
  if (probabilities_.empty()) throw ValidationError("empty distribution");
  double sum = 0.0;
  for (double p : probabilities_) {
    if (!(p > 0.0 && p <= 1.0)) {
      throw ValidationError("probability " + std::to_string(p) + " outside (0, 1]");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw ValidationError("probabilities sum to " + std::to_string(sum));
  }
}

double CrossEntropy(const ObjectiveInput& input) {
  if (input.step_distributions.size() != input.targets.size()) {
    throw ValidationError("number of targets differs from number of steps");
  }
  double loss = 0.0;
  for (std::size_t t = 0; t < input.targets.size(); ++t) {
    const auto& dist = input.step_distributions[t];
    const std::size_t y = input.targets[t];
    if (y >= dist.size()) throw ValidationError("target index outside vocabulary");
    if (dist[y] <= 0.0) throw ValidationError("target has zero probability");
    loss -= std::log(dist[y]);
  }
  return loss;
}

double KlDivergence(std::span<const StepDistribution> adapted,
                    std::span<const StepDistribution> reference) {
  if (adapted.size() != reference.size()) throw ValidationError("step counts differ");
  double loss = 0.0;
  for (std::size_t t = 0; t < adapted.size(); ++t) {
    const auto& p = adapted[t];
    const auto& q = reference[t];
    if (p.size() != q.size()) throw ValidationError("vocabulary sizes differ");
    for (std::size_t y = 0; y < p.size(); ++y) {
      if (p[y] <= 0.0 || q[y] <= 0.0) throw ValidationError("zero probability mass");
      loss += p[y] * std::log(p[y] / q[y]);
    }
  }
  return loss;
}

double CombinedLoss(std::span<const std::pair<std::string, double>> terms,
                    const std::map<std::string, double>& weights) {
  double total = 0.0;
  for (const auto& [name, value] : terms) {
    auto it = weights.find(name);
    total += (it == weights.end() ? 1.0 : it->second) * value;
  }
  return total;
}

StepDistribution Softmax(std::span<const double> logits) {
  if (logits.empty()) throw ValidationError("empty logits");
  for (double x : logits) {
    if (!std::isfinite(x)) throw ValidationError("non-finite logit");
  }
  const double shift = *std::max_element(logits.begin(), logits.end());
  std::vector<double> p(logits.size());
  double z = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(logits[i] - shift);
    z += p[i];
  }
  // Entries that underflow are lifted to the smallest normal double so the
  // result stays strictly positive.
  for (double& v : p) v = std::max(v / z, std::numeric_limits<double>::min());
  return StepDistribution(std::move(p), StepDistribution::Unchecked{});
}

double FiniteDiffCheck(const LossFn& loss, std::span<const double> logits,
                       std::span<const double> analytic, double eps) {
  if (!(eps > 0.0)) throw ValidationError("eps must be positive");
  if (analytic.size() != logits.size()) throw ValidationError("gradient size mismatch");
  std::vector<double> probe(logits.begin(), logits.end());
  double worst = 0.0;
  for (std::size_t k = 0; k < probe.size(); ++k) {
    const double saved = probe[k];
    probe[k] = saved + eps;
    const double up = loss(probe);
    probe[k] = saved - eps;
    const double down = loss(probe);
    probe[k] = saved;
    if (!std::isfinite(up) || !std::isfinite(down)) {
      throw ValidationError("non-finite loss at probe " + std::to_string(k));
    }
    const double numeric = (up - down) / (2.0 * eps);
    const double denom = std::max({std::abs(analytic[k]), std::abs(numeric), 1e-12});
    worst = std::max(worst, std::abs(analytic[k] - numeric) / denom);
  }
  return worst;
}

std::vector<StepDistribution> SoftmaxRows(std::span<const double> logits, std::size_t vocab) {
  if (vocab == 0 || logits.size() % vocab != 0) throw ValidationError("logits not steps x vocab");
  std::vector<StepDistribution> rows;
  for (std::size_t off = 0; off < logits.size(); off += vocab) {
    rows.push_back(Softmax(logits.subspan(off, vocab)));
  }
  return rows;
}

std::vector<double> CrossEntropySoftmaxGradient(std::span<const double> logits,
                                                std::size_t vocab,
                                                std::span<const std::size_t> targets) {
  auto rows = SoftmaxRows(logits, vocab);
  if (rows.size() != targets.size()) throw ValidationError("number of targets differs from steps");
  std::vector<double> grad(logits.size());
  for (std::size_t t = 0; t < rows.size(); ++t) {
    for (std::size_t y = 0; y < vocab; ++y) {
      grad[t * vocab + y] = rows[t][y] - (y == targets[t] ? 1.0 : 0.0);
    }
  }
  return grad;
}

std::vector<double> KlSoftmaxGradient(std::span<const double> logits, std::size_t vocab,
                                      std::span<const StepDistribution> reference) {
  auto rows = SoftmaxRows(logits, vocab);
  if (rows.size() != reference.size()) throw ValidationError("step counts differ");
  std::vector<double> grad(logits.size());
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const auto& p = rows[t];
    const auto& q = reference[t];
    if (q.size() != vocab) throw ValidationError("vocabulary sizes differ");
    double kl_t = 0.0;
    for (std::size_t y = 0; y < vocab; ++y) kl_t += p[y] * std::log(p[y] / q[y]);
    for (std::size_t y = 0; y < vocab; ++y) {
      grad[t * vocab + y] = p[y] * (std::log(p[y] / q[y]) - kl_t);
    }
  }
  return grad;
}

GradientCheckReport RunGradientChecks(std::uint64_t seed, std::size_t trials, std::size_t steps,
                                      std::size_t vocab, double eps) {
  GradientCheckReport report;
  report.trials = trials;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    SplitMix64 rng(seed + trial);
    auto uniform = [&] {
      return -3.0 + 6.0 * static_cast<double>(rng.Next() >> 11) * 0x1.0p-53;
    };
    std::vector<double> logits(steps * vocab);
    for (double& v : logits) v = uniform();
    std::vector<std::size_t> targets(steps);
    for (auto& y : targets) y = static_cast<std::size_t>(rng.UniformBelow(vocab));
    std::vector<double> ref_logits(steps * vocab);
    for (double& v : ref_logits) v = uniform();
    const auto reference = SoftmaxRows(ref_logits, vocab);

    auto ce = [&](std::span<const double> z) {
      return CrossEntropy({"probe", SoftmaxRows(z, vocab), targets});
    };
    auto kl = [&](std::span<const double> z) {
      return KlDivergence(SoftmaxRows(z, vocab), reference);
    };
    report.cross_entropy_max_error =
        std::max(report.cross_entropy_max_error,
                 FiniteDiffCheck(ce, logits, CrossEntropySoftmaxGradient(logits, vocab, targets), eps));
    report.kl_max_error =
        std::max(report.kl_max_error,
                 FiniteDiffCheck(kl, logits, KlSoftmaxGradient(logits, vocab, reference), eps));
  }
  return report;
}

}  // namespace hatemask::objectives
