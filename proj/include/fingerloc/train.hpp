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
#include <functional>
#include <vector>

#include "fingerloc/matrix.hpp"
#include "fingerloc/network.hpp"
#include "fingerloc/optimizer.hpp"

namespace fingerloc {

/// Fraction of rows counted correct; NaN when no accuracy function applies
/// (e.g. autoencoder reconstruction).
using AccuracyFn =
    std::function<double(const Matrix& predictions, const Matrix& targets)>;

/// Argmax match per row; for single-column outputs, a 0.5 threshold match.
double default_accuracy(const Matrix& predictions, const Matrix& targets);

struct EpochStats {
    std::size_t epoch = 0;  // 1-based
    double train_loss = 0.0;
    double train_accuracy = 0.0;  // NaN when no accuracy fn
    double val_loss = 0.0;        // NaN when no validation set
    double val_accuracy = 0.0;
};

struct TrainOptions {
    std::size_t epochs = 0;
    std::size_t batch_size = 10;
    OptimizerConfig optimizer = OptimizerConfig::adam();
    std::uint64_t shuffle_seed = 0;
    /// Optional held-out set evaluated at each epoch end.
    const Matrix* val_inputs = nullptr;
    const Matrix* val_targets = nullptr;
    /// Accuracy for the history; null = loss only.
    AccuracyFn accuracy;
    /// Layers excluded from optimizer updates (frozen pretrained prefix).
    std::size_t frozen_prefix = 0;
    /// Row chunk for the epoch-end inference passes.
    std::size_t eval_chunk = 2048;
    std::function<void(const EpochStats&)> on_epoch;
};

/// Mini-batch training: seeded shuffle each epoch, batches of batch_size with
/// the final partial batch kept, forward/backward/step per batch. History
/// metrics are computed at epoch end in inference mode. Identical inputs and
/// seeds produce bitwise-identical weights and history.
std::vector<EpochStats> train(Network& net, const Matrix& inputs,
                              const Matrix& targets,
                              const TrainOptions& options);

/// Chunked inference-mode forward over a whole set.
Matrix predict_all(const Network& net, const Matrix& inputs,
                   std::size_t chunk = 2048);

/// Inference-mode loss (+ accuracy if fn given) over a whole set, chunked.
std::pair<double, double> evaluate(const Network& net, const Matrix& inputs,
                                   const Matrix& targets,
                                   const AccuracyFn& accuracy,
                                   std::size_t chunk = 2048);

}  // namespace fingerloc
