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
#include <optional>
#include <string>
#include <vector>

#include "fingerloc/codec.hpp"
#include "fingerloc/dataset.hpp"
#include "fingerloc/normalizer.hpp"
#include "fingerloc/sae.hpp"

namespace fingerloc {

/// Classifier head stacked onto the pretrained encoder. hidden_layers lists
/// the widths between the bottleneck and the output layer (possibly none);
/// the output layer's width comes from the codec. `dropout_rate` applies to
/// the bottleneck activation and to every classifier hidden layer.
struct ClassifierConfig {
    std::vector<std::size_t> hidden_layers;
    Activation activation = Activation::ReLU;
    double dropout_rate = 0.0;
    OptimizerConfig optimizer = OptimizerConfig::adam();
    std::size_t epochs = 20;
    std::size_t batch_size = 10;
    /// Loss weights for hierarchical mode: building outputs get
    /// building_weight, floor outputs floor_weight.
    double building_weight = 1.0;
    double floor_weight = 1.0;
    /// Keep the encoder fixed during classifier training instead of
    /// fine-tuning it jointly (the default fine-tunes).
    bool freeze_encoder = false;

    void validate() const;
};

enum class ModelMode { Hierarchical, Flattened, FloorLevel };

std::string to_string(ModelMode m);
ModelMode model_mode_from_string(const std::string& s);

struct PipelineConfig {
    SaeConfig sae;
    ClassifierConfig classifier;
    double train_ratio = 0.70;
    /// Master seed; split, init, shuffle and dropout streams derive from it.
    std::uint64_t seed = 1;

    /// Building/floor classification defaults: ratio 0.70, 20 epochs,
    /// batch 10, SAE 64-8-64 ReLU + ADAM, linear classifier head with
    /// dropout 0.20 + ADAM.
    static PipelineConfig building_floor_defaults();
    /// Floor-level location defaults: ratio 0.75, batch 10, SAE
    /// 128-64-32-64-128 TanH + ADAM, classifier 64-32 ReLU with dropout
    /// 0.50 + AdaGrad, 30 classifier epochs.
    static PipelineConfig floor_level_defaults();
};

inline constexpr std::uint32_t kModelFormatVersion = 1;

struct TrainedModel {
    std::uint32_t version = kModelFormatVersion;
    ModelMode mode = ModelMode::Hierarchical;
    Normalizer normalizer;
    std::vector<std::string> ap_order;
    LabelCodec codec;
    Network network;
    std::vector<EpochStats> sae_history;
    std::vector<EpochStats> classifier_history;
};

struct Prediction {
    std::optional<int> building_id;
    std::optional<int> floor_id;
    std::optional<std::string> location_id;
    /// Raw output activations, one per codec target dimension.
    std::vector<double> scores;
};

struct PipelineResult {
    TrainedModel model;
    /// Row indices of the input dataset that formed each side of the split.
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> validation_indices;
};

/// Encoder + classifier head as one network: encoder layers (weights carried
/// over), then hidden_layers, then the codec-sized output layer — Sigmoid +
/// WeightedBCE for hierarchical codecs, Softmax + CategoricalCE otherwise.
/// `seed` initializes the new head layers.
Network build_stacked(const Network& encoder, const ClassifierConfig& cfg,
                      const LabelCodec& codec, std::uint64_t seed);

/// The paper pipelines: normalize -> split -> pretrain SAE on the training
/// side -> stack -> train the classifier. Histories and the split are
/// recorded in the result; everything is deterministic in config.seed.
PipelineResult train_hierarchical(const Dataset& data,
                                  const PipelineConfig& config);
PipelineResult train_flattened(const Dataset& data,
                               const PipelineConfig& config);
PipelineResult train_floor_level(const Dataset& data,
                                 const PipelineConfig& config);

/// Inference on one scan already aligned to model.ap_order (ShapeError
/// otherwise). Dropout-free and thread-safe.
Prediction predict(const TrainedModel& model, const FingerprintRecord& scan);

/// Batch inference: normalized features -> raw output activations.
Matrix predict_scores(const TrainedModel& model, const Dataset& data);

}  // namespace fingerloc
