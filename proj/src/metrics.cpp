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
#include "fingerloc/metrics.hpp"

#include "fingerloc/errors.hpp"

namespace fingerloc {

namespace {

void check_sizes(std::size_t predictions, std::size_t truths) {
    if (predictions != truths)
        throw ShapeError("got " + std::to_string(predictions) +
                         " predictions for " + std::to_string(truths) +
                         " truths");
    if (predictions == 0) throw ConfigError("no samples to score");
}

std::string pair_name(const std::pair<int, int>& p) {
    return std::to_string(p.first) + "-" + std::to_string(p.second);
}

}  // namespace

MetricsReport compute_metrics(
    std::span<const std::pair<int, int>> predictions,
    std::span<const std::pair<int, int>> truths) {
    check_sizes(predictions.size(), truths.size());

    MetricsReport report;
    report.sample_count = truths.size();
    std::size_t building_ok = 0, floor_ok = 0, both_ok = 0;
    for (std::size_t i = 0; i < truths.size(); ++i) {
        const bool b = predictions[i].first == truths[i].first;
        const bool f = predictions[i].second == truths[i].second;
        building_ok += b;
        floor_ok += f;
        both_ok += b && f;
        ++report.confusion[pair_name(truths[i])][pair_name(predictions[i])];
    }
    const double n = static_cast<double>(truths.size());
    report.building_accuracy = static_cast<double>(building_ok) / n;
    report.floor_accuracy = static_cast<double>(floor_ok) / n;
    report.overall_accuracy = static_cast<double>(both_ok) / n;
    return report;
}

MetricsReport compute_metrics(std::span<const std::string> predictions,
                              std::span<const std::string> truths) {
    check_sizes(predictions.size(), truths.size());

    MetricsReport report;
    report.sample_count = truths.size();
    std::size_t ok = 0;
    for (std::size_t i = 0; i < truths.size(); ++i) {
        ok += predictions[i] == truths[i];
        ++report.confusion[truths[i]][predictions[i]];
    }
    const double acc =
        static_cast<double>(ok) / static_cast<double>(truths.size());
    report.building_accuracy = acc;
    report.floor_accuracy = acc;
    report.overall_accuracy = acc;
    return report;
}

MetricsReport evaluate_model(const TrainedModel& model, const Dataset& data) {
    const Matrix scores = predict_scores(model, data);

    if (model.codec.mode() == CodecMode::Categorical) {
        std::vector<std::string> pred, truth;
        pred.reserve(scores.rows());
        truth.reserve(scores.rows());
        for (std::size_t i = 0; i < scores.rows(); ++i) {
            if (!data.records[i].location_id)
                throw LabelError("record " + std::to_string(i) +
                                 " has no location_id to score against");
            pred.push_back(model.codec.decode_categorical(scores.row_span(i)));
            truth.push_back(*data.records[i].location_id);
        }
        return compute_metrics(std::span<const std::string>(pred),
                               std::span<const std::string>(truth));
    }

    std::vector<std::pair<int, int>> pred, truth;
    pred.reserve(scores.rows());
    truth.reserve(scores.rows());
    for (std::size_t i = 0; i < scores.rows(); ++i) {
        const auto& r = data.records[i];
        if (!r.building_id || !r.floor_id)
            throw LabelError("record " + std::to_string(i) +
                             " has no building/floor labels to score against");
        pred.push_back(model.codec.mode() == CodecMode::Hierarchical
                           ? model.codec.decode_argmax_split(scores.row_span(i))
                           : model.codec.decode_flattened(scores.row_span(i)));
        truth.emplace_back(*r.building_id, *r.floor_id);
    }
    return compute_metrics(std::span<const std::pair<int, int>>(pred),
                           std::span<const std::pair<int, int>>(truth));
}

}  // namespace fingerloc
