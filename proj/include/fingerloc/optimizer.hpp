/*
 * Fingerloc - Wi-Fi fingerprint indoor localization toolkit.
 * Copyright 2026 the Fingerloc authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
 * implied. See the License for the specific language governing
 * permissions and limitations under the License.
 */
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fingerloc/matrix.hpp"
#include "fingerloc/network.hpp"

namespace fingerloc {

enum class OptimizerKind { ADAM, AdaGrad };

std::string to_string(OptimizerKind k);
OptimizerKind optimizer_from_string(const std::string& s);

struct OptimizerConfig {
    OptimizerKind kind = OptimizerKind::ADAM;
    double learning_rate = 0.001;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double epsilon = 1e-8;

    static OptimizerConfig adam(double lr = 0.001);
    static OptimizerConfig adagrad(double lr = 0.01);

    void validate() const;
};

/// Moment/accumulator state matching one network's parameter shapes.
/// ADAM keeps first and second moments; AdaGrad a squared-gradient
/// accumulator (always non-negative).
class OptimizerState {
public:
    OptimizerState(const OptimizerConfig& cfg, const Network& net);

    /// One update step. Layers with index < frozen_prefix are left untouched
    /// (used to freeze a pretrained encoder).
    void apply(Network& net, const Gradients& grads,
               std::size_t frozen_prefix = 0);

    const OptimizerConfig& config() const { return cfg_; }
    std::size_t step_count() const { return step_; }

private:
    OptimizerConfig cfg_;
    std::size_t step_ = 0;
    // slot0 = ADAM first moment / AdaGrad accumulator, slot1 = ADAM second.
    std::vector<Matrix> w_slot0_, w_slot1_;
    std::vector<std::vector<double>> b_slot0_, b_slot1_;
};

}  // namespace fingerloc
