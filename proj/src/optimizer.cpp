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
#include "fingerloc/optimizer.hpp"

#include <cmath>

#include "fingerloc/errors.hpp"
#include "fingerloc/kernels.hpp"

namespace fingerloc {

std::string to_string(OptimizerKind k) {
    return k == OptimizerKind::ADAM ? "adam" : "adagrad";
}

OptimizerKind optimizer_from_string(const std::string& s) {
    if (s == "adam") return OptimizerKind::ADAM;
    if (s == "adagrad") return OptimizerKind::AdaGrad;
    throw ConfigError("unknown optimizer '" + s + "'");
}

OptimizerConfig OptimizerConfig::adam(double lr) {
    return {OptimizerKind::ADAM, lr, 0.9, 0.999, 1e-8};
}

OptimizerConfig OptimizerConfig::adagrad(double lr) {
    return {OptimizerKind::AdaGrad, lr, 0.9, 0.999, 1e-8};
}

void OptimizerConfig::validate() const {
    if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be > 0");
    if (!(epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
    if (kind == OptimizerKind::ADAM) {
        if (!(adam_beta1 > 0.0 && adam_beta1 < 1.0) ||
            !(adam_beta2 > 0.0 && adam_beta2 < 1.0))
            throw ConfigError("adam betas must lie in (0,1)");
    }
}

OptimizerState::OptimizerState(const OptimizerConfig& cfg, const Network& net)
    : cfg_(cfg) {
    cfg.validate();
    const bool adam = cfg.kind == OptimizerKind::ADAM;
    for (std::size_t l = 0; l < net.layer_count(); ++l) {
        const Matrix& w = net.weights()[l];
        w_slot0_.emplace_back(w.rows(), w.cols());
        b_slot0_.emplace_back(net.biases()[l].size(), 0.0);
        if (adam) {
            w_slot1_.emplace_back(w.rows(), w.cols());
            b_slot1_.emplace_back(net.biases()[l].size(), 0.0);
        }
    }
}

void OptimizerState::apply(Network& net, const Gradients& grads,
                           std::size_t frozen_prefix) {
    if (grads.weights.size() != net.layer_count())
        throw ShapeError("optimizer: gradient/layer count mismatch");
    ++step_;
    const KernelOps& k = kernels();
    if (cfg_.kind == OptimizerKind::ADAM) {
        const double inv_bc1 =
            1.0 / (1.0 - std::pow(cfg_.adam_beta1,
                                  static_cast<double>(step_)));
        const double inv_bc2 =
            1.0 / (1.0 - std::pow(cfg_.adam_beta2,
                                  static_cast<double>(step_)));
        for (std::size_t l = frozen_prefix; l < net.layer_count(); ++l) {
            k.adam_update(net.mutable_weights()[l].data(),
                          grads.weights[l].data(), w_slot0_[l].data(),
                          w_slot1_[l].data(), grads.weights[l].size(),
                          cfg_.learning_rate, cfg_.adam_beta1, cfg_.adam_beta2,
                          cfg_.epsilon, inv_bc1, inv_bc2);
            k.adam_update(net.mutable_biases()[l].data(),
                          grads.biases[l].data(), b_slot0_[l].data(),
                          b_slot1_[l].data(), grads.biases[l].size(),
                          cfg_.learning_rate, cfg_.adam_beta1, cfg_.adam_beta2,
                          cfg_.epsilon, inv_bc1, inv_bc2);
        }
    } else {
        for (std::size_t l = frozen_prefix; l < net.layer_count(); ++l) {
            k.adagrad_update(net.mutable_weights()[l].data(),
                             grads.weights[l].data(), w_slot0_[l].data(),
                             grads.weights[l].size(), cfg_.learning_rate,
                             cfg_.epsilon);
            k.adagrad_update(net.mutable_biases()[l].data(),
                             grads.biases[l].data(), b_slot0_[l].data(),
                             grads.biases[l].size(), cfg_.learning_rate,
                             cfg_.epsilon);
        }
    }
}

}  // namespace fingerloc
