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
#include "fingerloc/network.hpp"

#include <algorithm>
#include <cmath>

#include "fingerloc/errors.hpp"
#include "fingerloc/kernels.hpp"

namespace fingerloc {

std::string to_string(Activation a) {
    switch (a) {
        case Activation::ReLU: return "relu";
        case Activation::TanH: return "tanh";
        case Activation::Sigmoid: return "sigmoid";
        case Activation::Softmax: return "softmax";
        case Activation::Identity: return "identity";
    }
    return "?";
}

std::string to_string(LossKind l) {
    switch (l) {
        case LossKind::MSE: return "mse";
        case LossKind::WeightedBCE: return "weighted_bce";
        case LossKind::CategoricalCE: return "categorical_ce";
    }
    return "?";
}

Activation activation_from_string(const std::string& s) {
    if (s == "relu") return Activation::ReLU;
    if (s == "tanh") return Activation::TanH;
    if (s == "sigmoid") return Activation::Sigmoid;
    if (s == "softmax") return Activation::Softmax;
    if (s == "identity") return Activation::Identity;
    throw ConfigError("unknown activation '" + s + "'");
}

LossKind loss_from_string(const std::string& s) {
    if (s == "mse") return LossKind::MSE;
    if (s == "weighted_bce") return LossKind::WeightedBCE;
    if (s == "categorical_ce") return LossKind::CategoricalCE;
    throw ConfigError("unknown loss '" + s + "'");
}

void NetworkSpec::validate() const {
    if (input_dim == 0) throw ConfigError("network input_dim must be >= 1");
    if (layers.empty()) throw ConfigError("network needs at least one layer");
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const LayerSpec& ls = layers[l];
        if (ls.width == 0)
            throw ConfigError("layer " + std::to_string(l) + " width is 0");
        if (ls.activation == Activation::Softmax && l + 1 != layers.size())
            throw ConfigError("softmax is only allowed as the final layer");
        if (!(ls.dropout_rate >= 0.0 && ls.dropout_rate < 1.0))
            throw ConfigError("dropout_rate must lie in [0,1)");
    }
    if (layers.back().dropout_rate != 0.0)
        throw ConfigError("final layer must not have dropout");

    const Activation final_act = layers.back().activation;
    switch (loss) {
        case LossKind::WeightedBCE:
            if (output_weights.size() != layers.back().width)
                throw ConfigError(
                    "weighted_bce requires one output weight per final unit");
            for (double w : output_weights)
                if (!(w > 0.0))
                    throw ConfigError("output weights must be > 0");
            if (final_act != Activation::Sigmoid)
                throw ConfigError("weighted_bce requires a sigmoid output");
            break;
        case LossKind::CategoricalCE:
            if (!output_weights.empty())
                throw ConfigError(
                    "output_weights only apply to weighted_bce");
            if (final_act != Activation::Softmax)
                throw ConfigError(
                    "categorical_ce requires a softmax output");
            break;
        case LossKind::MSE:
            if (!output_weights.empty())
                throw ConfigError(
                    "output_weights only apply to weighted_bce");
            if (final_act == Activation::Softmax)
                throw ConfigError("mse with a softmax output is unsupported");
            break;
    }
}

Network init_network(const NetworkSpec& spec) {
    spec.validate();
    Network net;
    net.spec_ = spec;
    Rng rng(spec.seed);
    std::size_t fan_in = spec.input_dim;
    for (const LayerSpec& ls : spec.layers) {
        const std::size_t fan_out = ls.width;
        const double bound =
            std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
        Matrix w(fan_in, fan_out);
        for (std::size_t i = 0; i < w.size(); ++i)
            w.data()[i] = rng.uniform(-bound, bound);
        net.weights_.push_back(std::move(w));
        net.biases_.emplace_back(fan_out, 0.0);
        fan_in = fan_out;
    }
    return net;
}

Network Network::from_parts(NetworkSpec spec, std::vector<Matrix> weights,
                            std::vector<std::vector<double>> biases) {
    spec.validate();
    if (weights.size() != spec.layers.size() ||
        biases.size() != spec.layers.size())
        throw ShapeError("from_parts: one weight/bias set per layer required");
    std::size_t prev = spec.input_dim;
    for (std::size_t l = 0; l < weights.size(); ++l) {
        if (weights[l].rows() != prev ||
            weights[l].cols() != spec.layers[l].width ||
            biases[l].size() != spec.layers[l].width)
            throw ShapeError("from_parts: layer " + std::to_string(l) +
                             " shape mismatch");
        prev = spec.layers[l].width;
    }
    Network net;
    net.spec_ = std::move(spec);
    net.weights_ = std::move(weights);
    net.biases_ = std::move(biases);
    return net;
}

namespace {

void apply_activation(Activation act, Matrix& z) {
    switch (act) {
        case Activation::Identity:
            break;
        case Activation::ReLU:
            for (std::size_t i = 0; i < z.size(); ++i)
                if (z.data()[i] < 0.0) z.data()[i] = 0.0;
            break;
        case Activation::TanH:
            for (std::size_t i = 0; i < z.size(); ++i)
                z.data()[i] = std::tanh(z.data()[i]);
            break;
        case Activation::Sigmoid:
            for (std::size_t i = 0; i < z.size(); ++i)
                z.data()[i] = 1.0 / (1.0 + std::exp(-z.data()[i]));
            break;
        case Activation::Softmax:
            for (std::size_t r = 0; r < z.rows(); ++r) {
                double* row = z.row(r);
                double mx = row[0];
                for (std::size_t j = 1; j < z.cols(); ++j)
                    mx = std::max(mx, row[j]);
                double sum = 0.0;
                for (std::size_t j = 0; j < z.cols(); ++j) {
                    row[j] = std::exp(row[j] - mx);
                    sum += row[j];
                }
                for (std::size_t j = 0; j < z.cols(); ++j) row[j] /= sum;
            }
            break;
    }
}

/// d(activation)/dz expressed through the activation *output* a.
double activation_derivative(Activation act, double a) {
    switch (act) {
        case Activation::Identity: return 1.0;
        case Activation::ReLU: return a > 0.0 ? 1.0 : 0.0;
        case Activation::TanH: return 1.0 - a * a;
        case Activation::Sigmoid: return a * (1.0 - a);
        case Activation::Softmax:
            // only reachable through the fused CE path
            return 1.0;
    }
    return 1.0;
}

Matrix layer_forward(const Matrix& input, const Matrix& w,
                     const std::vector<double>& b, Activation act) {
    Matrix z(input.rows(), w.cols());
    kernels().matmul_nn(input.data(), w.data(), z.data(), input.rows(),
                        input.cols(), w.cols());
    for (std::size_t r = 0; r < z.rows(); ++r) {
        double* row = z.row(r);
        for (std::size_t j = 0; j < z.cols(); ++j) row[j] += b[j];
    }
    apply_activation(act, z);
    return z;
}

double clip_prob(double p) {
    return std::min(std::max(p, kProbClip), 1.0 - kProbClip);
}

}  // namespace

Matrix ForwardCache::masked(std::size_t layer) const {
    if (masks[layer].empty()) return outputs[layer];
    Matrix out = outputs[layer];
    for (std::size_t i = 0; i < out.size(); ++i)
        out.data()[i] *= masks[layer].data()[i];
    return out;
}

Matrix forward(const Network& net, const Matrix& batch) {
    if (batch.cols() != net.spec().input_dim)
        throw ShapeError("forward: batch has " + std::to_string(batch.cols()) +
                         " columns, network expects " +
                         std::to_string(net.spec().input_dim));
    Matrix cur = batch;
    for (std::size_t l = 0; l < net.layer_count(); ++l)
        cur = layer_forward(cur, net.weights()[l], net.biases()[l],
                            net.spec().layers[l].activation);
    return cur;
}

ForwardCache forward_cached(const Network& net, const Matrix& batch,
                            bool training, Rng* dropout_rng) {
    if (batch.cols() != net.spec().input_dim)
        throw ShapeError("forward: batch has " + std::to_string(batch.cols()) +
                         " columns, network expects " +
                         std::to_string(net.spec().input_dim));
    ForwardCache cache;
    cache.training = training;
    cache.input = batch;
    cache.outputs.reserve(net.layer_count());
    cache.masks.resize(net.layer_count());

    Matrix cur = batch;
    for (std::size_t l = 0; l < net.layer_count(); ++l) {
        const LayerSpec& ls = net.spec().layers[l];
        Matrix out = layer_forward(cur, net.weights()[l], net.biases()[l],
                                   ls.activation);
        cache.outputs.push_back(out);
        if (training && ls.dropout_rate > 0.0) {
            if (!dropout_rng)
                throw StateError(
                    "training-mode forward with dropout needs an rng");
            const double keep = 1.0 - ls.dropout_rate;
            const double scale = 1.0 / keep;
            Matrix mask(out.rows(), out.cols());
            for (std::size_t i = 0; i < mask.size(); ++i)
                mask.data()[i] = dropout_rng->uniform() < keep ? scale : 0.0;
            cache.masks[l] = mask;
            for (std::size_t i = 0; i < out.size(); ++i)
                out.data()[i] *= mask.data()[i];
        }
        cur = std::move(out);
    }
    return cache;
}

double loss(const Network& net, const Matrix& predictions,
            const Matrix& targets) {
    if (predictions.rows() != targets.rows() ||
        predictions.cols() != targets.cols())
        throw ShapeError("loss: predictions and targets differ in shape");
    if (predictions.rows() == 0) throw ShapeError("loss: empty batch");
    const std::size_t n = predictions.rows();
    const std::size_t d = predictions.cols();
    switch (net.spec().loss) {
        case LossKind::MSE:
            return kernels().sum_sq_diff(predictions.data(), targets.data(),
                                         n * d) /
                   static_cast<double>(n * d);
        case LossKind::WeightedBCE: {
            const std::vector<double>& w = net.spec().output_weights;
            double total = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double* p = predictions.row(i);
                const double* t = targets.row(i);
                for (std::size_t j = 0; j < d; ++j) {
                    const double pc = clip_prob(p[j]);
                    total += w[j] * (-t[j] * std::log(pc) -
                                     (1.0 - t[j]) * std::log(1.0 - pc));
                }
            }
            return total / static_cast<double>(n);
        }
        case LossKind::CategoricalCE: {
            double total = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double* p = predictions.row(i);
                const double* t = targets.row(i);
                for (std::size_t j = 0; j < d; ++j)
                    if (t[j] != 0.0) total -= t[j] * std::log(clip_prob(p[j]));
            }
            return total / static_cast<double>(n);
        }
    }
    throw ConfigError("unknown loss kind");
}

Gradients backward(const Network& net, const ForwardCache& cache,
                   const Matrix& targets) {
    if (!cache.training)
        throw StateError("backward requires a training-mode forward cache");
    if (cache.outputs.size() != net.layer_count())
        throw StateError("forward cache does not match this network");
    const Matrix& out = cache.final_output();
    if (out.rows() != targets.rows() || out.cols() != targets.cols())
        throw ShapeError("backward: target shape mismatch");

    const std::size_t batch = out.rows();
    const std::size_t last = net.layer_count() - 1;
    const double inv_batch = 1.0 / static_cast<double>(batch);

    // Output delta, dL/dz for the fused pairings.
    Matrix delta(out.rows(), out.cols());
    switch (net.spec().loss) {
        case LossKind::MSE: {
            const double scale = 2.0 / static_cast<double>(out.size());
            const Activation act = net.spec().layers[last].activation;
            for (std::size_t i = 0; i < out.size(); ++i) {
                const double a = out.data()[i];
                delta.data()[i] = scale * (a - targets.data()[i]) *
                                  activation_derivative(act, a);
            }
            break;
        }
        case LossKind::WeightedBCE: {
            // sigmoid + BCE: dL/dz = w_j (p - t) / batch
            const std::vector<double>& w = net.spec().output_weights;
            for (std::size_t i = 0; i < batch; ++i) {
                const double* p = out.row(i);
                const double* t = targets.row(i);
                double* dr = delta.row(i);
                for (std::size_t j = 0; j < out.cols(); ++j)
                    dr[j] = w[j] * (p[j] - t[j]) * inv_batch;
            }
            break;
        }
        case LossKind::CategoricalCE:
            // softmax + CE: dL/dz = (p - t) / batch
            for (std::size_t i = 0; i < out.size(); ++i)
                delta.data()[i] =
                    (out.data()[i] - targets.data()[i]) * inv_batch;
            break;
    }

    Gradients grads;
    grads.weights.resize(net.layer_count());
    grads.biases.resize(net.layer_count());

    const KernelOps& k = kernels();
    for (std::size_t li = net.layer_count(); li-- > 0;) {
        const Matrix feed =
            li == 0 ? cache.input : cache.masked(li - 1);

        Matrix dw(feed.cols(), delta.cols());
        k.matmul_tn(feed.data(), delta.data(), dw.data(), feed.rows(),
                    feed.cols(), delta.cols());
        grads.weights[li] = std::move(dw);

        std::vector<double> db(delta.cols(), 0.0);
        for (std::size_t i = 0; i < delta.rows(); ++i) {
            const double* dr = delta.row(i);
            for (std::size_t j = 0; j < delta.cols(); ++j) db[j] += dr[j];
        }
        grads.biases[li] = std::move(db);

        if (li == 0) break;

        // delta_{l-1} = (delta_l W_l^T) o mask o act'(a_{l-1})
        const Matrix& w = net.weights()[li];
        Matrix prev_delta(delta.rows(), w.rows());
        k.matmul_nt(delta.data(), w.data(), prev_delta.data(), delta.rows(),
                    w.cols(), w.rows());
        const Matrix& prev_out = cache.outputs[li - 1];
        const Matrix& mask = cache.masks[li - 1];
        const Activation act = net.spec().layers[li - 1].activation;
        for (std::size_t i = 0; i < prev_delta.size(); ++i) {
            double g = prev_delta.data()[i];
            if (!mask.empty()) g *= mask.data()[i];
            prev_delta.data()[i] =
                g * activation_derivative(act, prev_out.data()[i]);
        }
        delta = std::move(prev_delta);
    }
    return grads;
}

}  // namespace fingerloc
