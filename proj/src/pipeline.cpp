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
#include "fingerloc/pipeline.hpp"

#include <algorithm>

#include "fingerloc/errors.hpp"

namespace fingerloc {

void ClassifierConfig::validate() const {
    for (std::size_t w : hidden_layers)
        if (w == 0) throw ConfigError("classifier layer width 0");
    if (!(dropout_rate >= 0.0 && dropout_rate < 1.0))
        throw ConfigError("classifier dropout_rate must lie in [0,1)");
    if (!(building_weight > 0.0) || !(floor_weight > 0.0))
        throw ConfigError("class weights must be > 0");
    if (activation == Activation::Softmax)
        throw ConfigError("softmax is reserved for the output layer");
    if (epochs == 0) throw ConfigError("classifier epochs must be >= 1");
    optimizer.validate();
}

std::string to_string(ModelMode m) {
    switch (m) {
        case ModelMode::Hierarchical: return "hierarchical";
        case ModelMode::Flattened: return "flattened";
        case ModelMode::FloorLevel: return "floor_level";
    }
    return "?";
}

ModelMode model_mode_from_string(const std::string& s) {
    if (s == "hierarchical") return ModelMode::Hierarchical;
    if (s == "flattened") return ModelMode::Flattened;
    if (s == "floor_level") return ModelMode::FloorLevel;
    throw ConfigError("unknown model mode '" + s + "'");
}

PipelineConfig PipelineConfig::building_floor_defaults() {
    PipelineConfig cfg;
    cfg.train_ratio = 0.70;
    cfg.sae.hidden_layers = {64, 8, 64};
    cfg.sae.activation = Activation::ReLU;
    cfg.sae.epochs = 20;
    cfg.sae.batch_size = 10;
    cfg.sae.optimizer = OptimizerConfig::adam();
    cfg.classifier.hidden_layers = {};
    cfg.classifier.activation = Activation::ReLU;
    cfg.classifier.dropout_rate = 0.20;
    cfg.classifier.optimizer = OptimizerConfig::adam();
    cfg.classifier.epochs = 20;
    cfg.classifier.batch_size = 10;
    return cfg;
}

PipelineConfig PipelineConfig::floor_level_defaults() {
    PipelineConfig cfg;
    cfg.train_ratio = 0.75;
    cfg.sae.hidden_layers = {128, 64, 32, 64, 128};
    cfg.sae.activation = Activation::TanH;
    cfg.sae.epochs = 20;
    cfg.sae.batch_size = 10;
    cfg.sae.optimizer = OptimizerConfig::adam();
    cfg.classifier.hidden_layers = {64, 32};
    cfg.classifier.activation = Activation::ReLU;
    cfg.classifier.dropout_rate = 0.50;
    cfg.classifier.optimizer = OptimizerConfig::adagrad();
    cfg.classifier.epochs = 30;
    cfg.classifier.batch_size = 10;
    return cfg;
}

Network build_stacked(const Network& encoder, const ClassifierConfig& cfg,
                      const LabelCodec& codec, std::uint64_t seed) {
    cfg.validate();

    const bool hierarchical = codec.mode() == CodecMode::Hierarchical;
    NetworkSpec spec;
    spec.input_dim = encoder.spec().input_dim;
    spec.layers = encoder.spec().layers;
    // dropout sits on the bottleneck activation and each hidden layer
    spec.layers.back().dropout_rate = cfg.dropout_rate;
    for (std::size_t w : cfg.hidden_layers)
        spec.layers.push_back({w, cfg.activation, cfg.dropout_rate});
    spec.layers.push_back({codec.target_dim(),
                           hierarchical ? Activation::Sigmoid
                                        : Activation::Softmax,
                           0.0});
    if (hierarchical) {
        spec.loss = LossKind::WeightedBCE;
        spec.output_weights.assign(codec.building_count(),
                                   cfg.building_weight);
        spec.output_weights.insert(spec.output_weights.end(),
                                   codec.max_floor_count(),
                                   cfg.floor_weight);
    } else {
        spec.loss = LossKind::CategoricalCE;
    }
    spec.seed = seed;

    // fresh head layers, then carry the trained encoder weights over
    Network net = init_network(spec);
    for (std::size_t l = 0; l < encoder.layer_count(); ++l) {
        net.mutable_weights()[l] = encoder.weights()[l];
        net.mutable_biases()[l] = encoder.biases()[l];
    }
    return net;
}

namespace {

LabelCodec make_codec(const Dataset& data, ModelMode mode) {
    switch (mode) {
        case ModelMode::Hierarchical: {
            int max_b = -1, max_f = -1;
            for (std::size_t i = 0; i < data.records.size(); ++i) {
                const auto& r = data.records[i];
                if (!r.building_id || !r.floor_id)
                    throw LabelError("record " + std::to_string(i) +
                                     " lacks building/floor labels");
                max_b = std::max(max_b, *r.building_id);
                max_f = std::max(max_f, *r.floor_id);
            }
            if (max_b < 0)
                throw ConfigError("empty dataset");
            return LabelCodec::hierarchical(
                static_cast<std::size_t>(max_b) + 1,
                static_cast<std::size_t>(max_f) + 1);
        }
        case ModelMode::Flattened:
            return LabelCodec::flattened(data);
        case ModelMode::FloorLevel:
            return LabelCodec::categorical(data);
    }
    throw ConfigError("unknown model mode");
}

PipelineResult run_pipeline(const Dataset& data, const PipelineConfig& config,
                            ModelMode mode) {
    data.validate();
    if (data.size() == 0) throw ConfigError("empty dataset");
    if ((mode == ModelMode::FloorLevel) !=
        (data.kind == DatasetKind::FloorLevel))
        throw ConfigError("dataset kind does not match the pipeline mode");

    TrainedModel model;
    model.mode = mode;
    model.ap_order = data.ap_order;
    // codec covers the label space of the full dataset, not just the
    // training side, so the validation split never hits unseen classes
    model.codec = make_codec(data, mode);

    SplitIndices idx = split_indices(data.size(), config.train_ratio,
                                     derive_seed(config.seed, 0x701));
    const Dataset train_set = subset(data, idx.train);
    const Dataset val_set = subset(data, idx.validation);

    const Matrix train_x = model.normalizer.normalize(train_set);
    const Matrix val_x = model.normalizer.normalize(val_set);
    const Matrix train_y = model.codec.encode_targets(train_set);
    const Matrix val_y = model.codec.encode_targets(val_set);

    SaePretrainResult sae = pretrain_sae(train_x, config.sae,
                                         derive_seed(config.seed, 0x702));
    model.sae_history = std::move(sae.history);

    model.network = build_stacked(sae.encoder, config.classifier, model.codec,
                                  derive_seed(config.seed, 0x703));

    TrainOptions options;
    options.epochs = config.classifier.epochs;
    options.batch_size = config.classifier.batch_size;
    options.optimizer = config.classifier.optimizer;
    options.shuffle_seed = derive_seed(config.seed, 0x704);
    options.val_inputs = &val_x;
    options.val_targets = &val_y;
    // history accuracy = what evaluation reports: for hierarchical targets a
    // row only counts when building AND floor both decode correctly
    if (mode == ModelMode::Hierarchical) {
        const LabelCodec codec = model.codec;
        options.accuracy = [codec](const Matrix& pred, const Matrix& tgt) {
            std::size_t ok = 0;
            for (std::size_t i = 0; i < pred.rows(); ++i)
                ok += codec.decode_argmax_split(pred.row_span(i)) ==
                      codec.decode_argmax_split(tgt.row_span(i));
            return static_cast<double>(ok) / static_cast<double>(pred.rows());
        };
    } else {
        options.accuracy = default_accuracy;
    }
    if (config.classifier.freeze_encoder)
        options.frozen_prefix = sae.encoder.layer_count();
    model.classifier_history = train(model.network, train_x, train_y, options);

    PipelineResult result;
    result.model = std::move(model);
    result.train_indices = std::move(idx.train);
    result.validation_indices = std::move(idx.validation);
    return result;
}

}  // namespace

PipelineResult train_hierarchical(const Dataset& data,
                                  const PipelineConfig& config) {
    return run_pipeline(data, config, ModelMode::Hierarchical);
}

PipelineResult train_flattened(const Dataset& data,
                               const PipelineConfig& config) {
    return run_pipeline(data, config, ModelMode::Flattened);
}

PipelineResult train_floor_level(const Dataset& data,
                                 const PipelineConfig& config) {
    return run_pipeline(data, config, ModelMode::FloorLevel);
}

Prediction predict(const TrainedModel& model, const FingerprintRecord& scan) {
    if (scan.rss.size() != model.ap_order.size())
        throw ShapeError("scan has " + std::to_string(scan.rss.size()) +
                         " rss values, model expects " +
                         std::to_string(model.ap_order.size()));
    Matrix x(1, scan.rss.size());
    for (std::size_t j = 0; j < scan.rss.size(); ++j)
        x(0, j) = model.normalizer.normalize_value(scan.rss[j]);
    const Matrix out = forward(model.network, x);

    Prediction p;
    p.scores.assign(out.row(0), out.row(0) + out.cols());
    switch (model.codec.mode()) {
        case CodecMode::Hierarchical: {
            const auto [b, f] = model.codec.decode_argmax_split(p.scores);
            p.building_id = b;
            p.floor_id = f;
            break;
        }
        case CodecMode::Flattened: {
            const auto [b, f] = model.codec.decode_flattened(p.scores);
            p.building_id = b;
            p.floor_id = f;
            break;
        }
        case CodecMode::Categorical:
            p.location_id = model.codec.decode_categorical(p.scores);
            break;
    }
    return p;
}

Matrix predict_scores(const TrainedModel& model, const Dataset& data) {
    if (data.ap_order != model.ap_order)
        throw ShapeError("dataset AP order does not match the model");
    return predict_all(model.network, model.normalizer.normalize(data));
}

}  // namespace fingerloc
