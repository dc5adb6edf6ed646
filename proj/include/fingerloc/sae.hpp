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

#include <cstdint>
#include <vector>

#include "fingerloc/network.hpp"
#include "fingerloc/train.hpp"

namespace fingerloc {

/// Stacked-autoencoder pretraining configuration. hidden_layers is the
/// symmetric encoder-bottleneck-decoder chain (e.g. 64-8-64 or
/// 128-64-32-64-128); the autoencoder itself appends an output layer of the
/// input width. The decoder's output layer uses `activation` as well.
struct SaeConfig {
    std::vector<std::size_t> hidden_layers = {64, 8, 64};
    Activation activation = Activation::ReLU;
    std::size_t epochs = 20;
    std::size_t batch_size = 10;
    OptimizerConfig optimizer = OptimizerConfig::adam();

    std::size_t bottleneck() const {
        return hidden_layers[hidden_layers.size() / 2];
    }
    /// Number of layers kept as the encoder (up to and including the
    /// bottleneck).
    std::size_t encoder_depth() const { return hidden_layers.size() / 2 + 1; }

    /// ConfigError unless hidden_layers is an odd-length palindrome with the
    /// bottleneck strictly narrower than the input.
    void validate(std::size_t input_dim) const;
};

struct SaePretrainResult {
    /// Layers up to and including the bottleneck, weights as trained.
    Network encoder;
    /// The full trained autoencoder (kept for reconstruction diagnostics).
    Network autoencoder;
    std::vector<EpochStats> history;
};

/// Trains input -> input with MSE on `features` (expected in [0,1]) and
/// extracts the encoder. `seed` drives both initialization and the epoch
/// shuffles; the run is deterministic.
SaePretrainResult pretrain_sae(const Matrix& features, const SaeConfig& cfg,
                               std::uint64_t seed);

}  // namespace fingerloc
