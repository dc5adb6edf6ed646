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
#include <string>
#include <vector>

#include "fingerloc/matrix.hpp"
#include "fingerloc/rng.hpp"

namespace fingerloc {

enum class Activation { ReLU, TanH, Sigmoid, Softmax, Identity };
enum class LossKind { MSE, WeightedBCE, CategoricalCE };

std::string to_string(Activation a);
std::string to_string(LossKind l);
Activation activation_from_string(const std::string& s);
LossKind loss_from_string(const std::string& s);

/// Log-loss probabilities are clipped to [kProbClip, 1 - kProbClip] so a
/// confident wrong prediction never produces -log(0).
inline constexpr double kProbClip = 1e-7;

struct LayerSpec {
    std::size_t width = 0;
    Activation activation = Activation::Identity;
    /// Inverted-dropout rate applied to this layer's *output* in training
    /// mode (survivors scaled by 1/(1-rate)). Must be 0 on the final layer.
    double dropout_rate = 0.0;
};

struct NetworkSpec {
    std::size_t input_dim = 0;
    std::vector<LayerSpec> layers;
    LossKind loss = LossKind::MSE;
    /// Per-output-unit loss weights; present exactly when loss==WeightedBCE.
    std::vector<double> output_weights;
    std::uint64_t seed = 0;

    std::size_t output_dim() const {
        return layers.empty() ? 0 : layers.back().width;
    }

    /// Throws ConfigError when the spec violates its invariants:
    /// non-empty layers, widths >= 1, Softmax only as final layer,
    /// output_weights iff WeightedBCE (matching width, all > 0), dropout in
    /// [0,1) with 0 on the final layer, and the loss/final-activation
    /// pairings (WeightedBCE->Sigmoid, CategoricalCE->Softmax,
    /// MSE->non-Softmax).
    void validate() const;
};

/// Per-layer weight and bias gradients, shaped like the network parameters.
struct Gradients {
    std::vector<Matrix> weights;
    std::vector<std::vector<double>> biases;
};

/// Activations recorded by a cached forward pass, consumed by backward().
struct ForwardCache {
    bool training = false;
    Matrix input;
    /// Pre-dropout activation of each layer.
    std::vector<Matrix> outputs;
    /// Dropout mask per layer (0 or 1/(1-rate)); empty when the layer has no
    /// dropout. masked(l) is what fed layer l+1.
    std::vector<Matrix> masks;

    const Matrix& final_output() const { return outputs.back(); }
    /// Layer l's output as consumed downstream (mask applied when present).
    Matrix masked(std::size_t layer) const;
};

class Network {
public:
    Network() = default;

    const NetworkSpec& spec() const { return spec_; }
    std::size_t layer_count() const { return spec_.layers.size(); }
    const std::vector<Matrix>& weights() const { return weights_; }
    const std::vector<std::vector<double>>& biases() const { return biases_; }
    std::vector<Matrix>& mutable_weights() { return weights_; }
    std::vector<std::vector<double>>& mutable_biases() { return biases_; }

    /// Weights are fan-shaped prev_width x width; checked on construction.
    static Network from_parts(NetworkSpec spec, std::vector<Matrix> weights,
                              std::vector<std::vector<double>> biases);

    friend Network init_network(const NetworkSpec&);

private:
    NetworkSpec spec_;
    std::vector<Matrix> weights_;  // [layer] prev_width x width
    std::vector<std::vector<double>> biases_;
};

/// Deterministic scaled-uniform init: every weight drawn from
/// U(-b, b) with b = sqrt(6/(fan_in+fan_out)); biases zero.
Network init_network(const NetworkSpec& spec);

/// Inference-mode forward (no dropout). A trained Network is immutable here;
/// concurrent calls from multiple threads are safe.
Matrix forward(const Network& net, const Matrix& batch);

/// Forward pass that records what backward() needs. In training mode dropout
/// masks are drawn from `dropout_rng` (required if any layer has a rate > 0).
ForwardCache forward_cached(const Network& net, const Matrix& batch,
                            bool training, Rng* dropout_rng = nullptr);

/// Loss of the network's configured kind. Predictions for the log losses are
/// clipped to [kProbClip, 1-kProbClip] before evaluation.
double loss(const Network& net, const Matrix& predictions,
            const Matrix& targets);

/// Analytic gradients for the cached pass. Requires a training-mode cache
/// (StateError otherwise); the cached dropout masks are reused.
Gradients backward(const Network& net, const ForwardCache& cache,
                   const Matrix& targets);

}  // namespace fingerloc
