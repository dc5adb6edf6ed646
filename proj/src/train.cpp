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
#include "fingerloc/train.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>

#include "fingerloc/errors.hpp"

namespace fingerloc {

double default_accuracy(const Matrix& predictions, const Matrix& targets) {
    if (predictions.rows() == 0) return std::numeric_limits<double>::quiet_NaN();
    std::size_t hits = 0;
    if (predictions.cols() == 1) {
        for (std::size_t i = 0; i < predictions.rows(); ++i)
            if ((predictions(i, 0) >= 0.5) == (targets(i, 0) >= 0.5)) ++hits;
    } else {
        auto argmax = [](const double* row, std::size_t n) {
            return static_cast<std::size_t>(
                std::max_element(row, row + n) - row);
        };
        for (std::size_t i = 0; i < predictions.rows(); ++i)
            if (argmax(predictions.row(i), predictions.cols()) ==
                argmax(targets.row(i), targets.cols()))
                ++hits;
    }
    return static_cast<double>(hits) /
           static_cast<double>(predictions.rows());
}

Matrix predict_all(const Network& net, const Matrix& inputs,
                   std::size_t chunk) {
    if (chunk == 0) chunk = inputs.rows();
    Matrix out(inputs.rows(), net.spec().output_dim());
    for (std::size_t start = 0; start < inputs.rows(); start += chunk) {
        const std::size_t n = std::min(chunk, inputs.rows() - start);
        Matrix part(n, inputs.cols());
        std::memcpy(part.data(), inputs.row(start),
                    n * inputs.cols() * sizeof(double));
        Matrix res = forward(net, part);
        std::memcpy(out.row(start), res.data(),
                    n * out.cols() * sizeof(double));
    }
    return out;
}

std::pair<double, double> evaluate(const Network& net, const Matrix& inputs,
                                   const Matrix& targets,
                                   const AccuracyFn& accuracy,
                                   std::size_t chunk) {
    if (inputs.rows() == 0) throw ConfigError("evaluate: empty dataset");
    if (chunk == 0) chunk = inputs.rows();
    double loss_sum = 0.0;
    double acc_sum = 0.0;
    for (std::size_t start = 0; start < inputs.rows(); start += chunk) {
        const std::size_t n = std::min(chunk, inputs.rows() - start);
        Matrix in_part(n, inputs.cols());
        Matrix tg_part(n, targets.cols());
        std::memcpy(in_part.data(), inputs.row(start),
                    n * inputs.cols() * sizeof(double));
        std::memcpy(tg_part.data(), targets.row(start),
                    n * targets.cols() * sizeof(double));
        const Matrix pred = forward(net, in_part);
        loss_sum += loss(net, pred, tg_part) * static_cast<double>(n);
        if (accuracy)
            acc_sum += accuracy(pred, tg_part) * static_cast<double>(n);
    }
    const double total = static_cast<double>(inputs.rows());
    const double acc = accuracy
                           ? acc_sum / total
                           : std::numeric_limits<double>::quiet_NaN();
    return {loss_sum / total, acc};
}

std::vector<EpochStats> train(Network& net, const Matrix& inputs,
                              const Matrix& targets,
                              const TrainOptions& options) {
    if (inputs.rows() == 0) throw ConfigError("train: empty dataset");
    if (inputs.rows() != targets.rows())
        throw ShapeError("train: input/target row counts differ");
    if (options.batch_size == 0)
        throw ConfigError("train: batch_size must be >= 1");
    if ((options.val_inputs == nullptr) != (options.val_targets == nullptr))
        throw ConfigError("train: validation inputs and targets go together");

    std::vector<EpochStats> history;
    if (options.epochs == 0) return history;

    OptimizerState optimizer(options.optimizer, net);
    Rng shuffle_rng(options.shuffle_seed);
    Rng dropout_rng(derive_seed(options.shuffle_seed, 0x0d));

    std::vector<std::size_t> order(inputs.rows());
    std::iota(order.begin(), order.end(), 0);

    const std::size_t bs = options.batch_size;
    for (std::size_t epoch = 1; epoch <= options.epochs; ++epoch) {
        shuffle_rng.shuffle(order);
        for (std::size_t start = 0; start < order.size(); start += bs) {
            const std::size_t n = std::min(bs, order.size() - start);
            const std::span<const std::size_t> idx(order.data() + start, n);
            const Matrix bx = take_rows(inputs, idx);
            const Matrix by = take_rows(targets, idx);
            const ForwardCache cache =
                forward_cached(net, bx, /*training=*/true, &dropout_rng);
            const Gradients grads = backward(net, cache, by);
            optimizer.apply(net, grads, options.frozen_prefix);
        }

        EpochStats stats;
        stats.epoch = epoch;
        std::tie(stats.train_loss, stats.train_accuracy) = evaluate(
            net, inputs, targets, options.accuracy, options.eval_chunk);
        if (options.val_inputs) {
            std::tie(stats.val_loss, stats.val_accuracy) =
                evaluate(net, *options.val_inputs, *options.val_targets,
                         options.accuracy, options.eval_chunk);
        } else {
            stats.val_loss = std::numeric_limits<double>::quiet_NaN();
            stats.val_accuracy = std::numeric_limits<double>::quiet_NaN();
        }
        history.push_back(stats);
        if (options.on_epoch) options.on_epoch(stats);
    }
    return history;
}

}  // namespace fingerloc
