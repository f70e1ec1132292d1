// Copyright 2026 The zsl Authors.
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

#ifndef ZSL_TESTS_GRADIENT_CHECK_H_
#define ZSL_TESTS_GRADIENT_CHECK_H_

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.h"
#include "zsl/warp_loss.h"

namespace zsl::testing {

// Signs that decide which branch of the piecewise objective is active: one
// entry per (instance, class) hinge term, plus relu pre-activation signs.
// Also reports the smallest |l| seen.
inline std::vector<bool> ActivePattern(const oracle::RandomTask& task,
                                       const ProjectionModel& model,
                                       Compatibility compat, double* min_abs_l) {
  std::vector<bool> pattern;
  double smallest = INFINITY;
  const bool relu = model.activation() == Activation::kRelu;
  for (const auto& inst : task.data.items()) {
    oracle::Vec theta(inst.acoustic.values().begin(), inst.acoustic.values().end());
    if (relu) {
      const auto& p = model.params();
      oracle::Vec pre;
      if (auto* f2 = std::get_if<Fc2Params>(&p)) pre = oracle::TransposeTimes(f2->u, theta);
      if (auto* f3 = std::get_if<Fc3Params>(&p)) {
        pre = oracle::TransposeTimes(f3->u, theta);
        oracle::Vec pre2 = oracle::Times(f3->q, oracle::Map(Activation::kRelu, pre));
        pre.insert(pre.end(), pre2.begin(), pre2.end());
      }
      for (double v : pre) {
        pattern.push_back(v > 0);
        smallest = std::min(smallest, std::fabs(v));
      }
    }
    oracle::Vec out = oracle::Project(model, theta);
    double s_true = 0.0;
    for (size_t c = 0; c < task.classes.size(); ++c)
      if (task.classes.id(c) == inst.class_id)
        s_true = oracle::Score(compat, out, task.classes.vector(c));
    for (size_t c = 0; c < task.classes.size(); ++c) {
      if (task.classes.id(c) == inst.class_id) continue;
      const double l = 1.0 + oracle::Score(compat, out, task.classes.vector(c)) - s_true;
      pattern.push_back(l > 0);
      smallest = std::min(smallest, std::fabs(l));
    }
  }
  if (min_abs_l) *min_abs_l = smallest;
  return pattern;
}

struct GradientCheckResult {
  bool usable = false;   // false when the point sits at a kink
  double max_rel_error = 0.0;
};

// Central differences of WarpObjective against WarpGradient. The error of
// each parameter matrix is ||g - g_fd|| / max(||g||, ||g_fd||, 1e-12); the
// result is the worst matrix.
inline GradientCheckResult CheckGradient(const oracle::RandomTask& task,
                                         const ProjectionModel& model,
                                         const WarpConfig& config,
                                         double step = 1e-5,
                                         double kink = 1e-6) {
  GradientCheckResult result;
  double min_abs = 0.0;
  const std::vector<bool> base = ActivePattern(task, model, config.compat, &min_abs);
  if (min_abs < kink) return result;

  const ProjectionModel analytic = WarpGradient(task.data, task.classes, model, config);
  ProjectionModel probe = model;
  const auto probe_mats = probe.mutable_matrices();
  const auto grad_mats = analytic.matrices();
  for (size_t m = 0; m < probe_mats.size(); ++m) {
    double diff2 = 0.0, g2 = 0.0, fd2 = 0.0;
    for (size_t k = 0; k < probe_mats[m]->size(); ++k) {
      double& x = probe_mats[m]->data()[k];
      const double saved = x;
      x = saved + step;
      if (ActivePattern(task, probe, config.compat, nullptr) != base) return result;
      const double up = WarpObjective(task.data, task.classes, probe, config).objective;
      x = saved - step;
      if (ActivePattern(task, probe, config.compat, nullptr) != base) return result;
      const double down = WarpObjective(task.data, task.classes, probe, config).objective;
      x = saved;
      const double fd = (up - down) / (2.0 * step);
      const double g = grad_mats[m]->data()[k];
      diff2 += (g - fd) * (g - fd);
      g2 += g * g;
      fd2 += fd * fd;
    }
    const double denom = std::max({std::sqrt(g2), std::sqrt(fd2), 1e-12});
    result.max_rel_error = std::max(result.max_rel_error, std::sqrt(diff2) / denom);
  }
  result.usable = true;
  return result;
}

}  // namespace zsl::testing

#endif  // ZSL_TESTS_GRADIENT_CHECK_H_
