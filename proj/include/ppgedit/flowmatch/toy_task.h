// Copyright 2026 The ppgedit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PPGEDIT_FLOWMATCH_TOY_TASK_H_
#define PPGEDIT_FLOWMATCH_TOY_TASK_H_

#include <array>
#include <cstddef>
#include <span>

#include "ppgedit/flowmatch/cfm_loss.h"
#include "ppgedit/random.h"

namespace ppgedit::flowmatch {

// Conditional toy distribution: yields (sample, class) pairs and can label
// an arbitrary point with the class it most plausibly belongs to.
class ToyTask {
 public:
  virtual ~ToyTask() = default;
  virtual std::size_t dim() const = 0;
  virtual std::size_t num_classes() const = 0;
  virtual CfmBatch sample(std::size_t batch, Rng& rng) const = 0;
  virtual int classify(std::span<const double> x) const = 0;
};

// Isotropic Gaussians with centres evenly spaced on a circle; the class is
// the mode index. Defaults: 8 modes, radius 4, std 0.2.
class GaussianRingTask : public ToyTask {
 public:
  explicit GaussianRingTask(std::size_t modes = 8, double radius = 4.0, double stddev = 0.2);

  std::size_t dim() const override { return 2; }
  std::size_t num_classes() const override { return modes_; }
  CfmBatch sample(std::size_t batch, Rng& rng) const override;
  // Nearest mode centre.
  int classify(std::span<const double> x) const override;

  std::array<double, 2> centre(std::size_t mode) const;

 private:
  std::size_t modes_;
  double radius_;
  double stddev_;
};

}  // namespace ppgedit::flowmatch

#endif  // PPGEDIT_FLOWMATCH_TOY_TASK_H_
