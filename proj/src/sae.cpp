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
#include "fingerloc/sae.hpp"

#include "fingerloc/errors.hpp"

namespace fingerloc {

void SaeConfig::validate(std::size_t input_dim) const {
    if (hidden_layers.empty() || hidden_layers.size() % 2 == 0)
        throw ConfigError(
            "SAE hidden layers must be an odd-length palindrome "
            "(encoder-bottleneck-decoder)");
    for (std::size_t i = 0; i < hidden_layers.size() / 2; ++i)
        if (hidden_layers[i] != hidden_layers[hidden_layers.size() - 1 - i])
            throw ConfigError("SAE hidden layers are not palindromic");
    for (std::size_t w : hidden_layers)
        if (w == 0) throw ConfigError("SAE layer width 0");
    if (bottleneck() >= input_dim)
        throw ConfigError("SAE bottleneck (" + std::to_string(bottleneck()) +
                          ") must be narrower than the input (" +
                          std::to_string(input_dim) + ")");
    if (activation == Activation::Softmax)
        throw ConfigError("softmax is not a valid SAE activation");
    optimizer.validate();
}

SaePretrainResult pretrain_sae(const Matrix& features, const SaeConfig& cfg,
                               std::uint64_t seed) {
    cfg.validate(features.cols());

    NetworkSpec spec;
    spec.input_dim = features.cols();
    for (std::size_t w : cfg.hidden_layers)
        spec.layers.push_back({w, cfg.activation, 0.0});
    spec.layers.push_back({features.cols(), cfg.activation, 0.0});
    spec.loss = LossKind::MSE;
    spec.seed = derive_seed(seed, 0x5ae0);

    SaePretrainResult result;
    result.autoencoder = init_network(spec);

    TrainOptions options;
    options.epochs = cfg.epochs;
    options.batch_size = cfg.batch_size;
    options.optimizer = cfg.optimizer;
    options.shuffle_seed = derive_seed(seed, 0x5ae1);
    result.history = train(result.autoencoder, features, features, options);

    // encoder = prefix up to and including the bottleneck
    NetworkSpec enc_spec;
    enc_spec.input_dim = spec.input_dim;
    enc_spec.layers.assign(spec.layers.begin(),
                           spec.layers.begin() +
                               static_cast<long>(cfg.encoder_depth()));
    enc_spec.loss = LossKind::MSE;
    enc_spec.seed = spec.seed;
    std::vector<Matrix> weights(
        result.autoencoder.weights().begin(),
        result.autoencoder.weights().begin() +
            static_cast<long>(cfg.encoder_depth()));
    std::vector<std::vector<double>> biases(
        result.autoencoder.biases().begin(),
        result.autoencoder.biases().begin() +
            static_cast<long>(cfg.encoder_depth()));
    result.encoder = Network::from_parts(std::move(enc_spec),
                                         std::move(weights),
                                         std::move(biases));
    return result;
}

}  // namespace fingerloc
