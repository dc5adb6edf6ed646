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

#include <map>
#include <span>
#include <string>
#include <utility>

#include "fingerloc/pipeline.hpp"

namespace fingerloc {

/// Accuracy breakdown over a labeled evaluation set. For categorical
/// (floor-level) labels there is only one accuracy, mirrored into all three
/// fields so consumers can read a report without branching on mode.
struct MetricsReport {
    double building_accuracy = 0.0;
    double floor_accuracy = 0.0;
    double overall_accuracy = 0.0;
    std::size_t sample_count = 0;
    /// truth class -> predicted class -> count. Classes are
    /// "<building>-<floor>" names or location ids; counts sum to
    /// sample_count.
    std::map<std::string, std::map<std::string, std::size_t>> confusion;

    bool operator==(const MetricsReport&) const = default;
};

/// Building/floor metrics: building_accuracy counts building matches,
/// floor_accuracy floor matches, overall_accuracy both at once (so overall
/// can never exceed either marginal). ConfigError on empty input, ShapeError
/// on length mismatch.
MetricsReport compute_metrics(
    std::span<const std::pair<int, int>> predictions,
    std::span<const std::pair<int, int>> truths);

/// Location-string metrics: a single match fraction reported through all
/// three accuracy fields.
MetricsReport compute_metrics(std::span<const std::string> predictions,
                              std::span<const std::string> truths);

/// Runs the model over a labeled dataset and scores it with the codec's
/// decode. LabelError when a record lacks the labels the mode needs.
MetricsReport evaluate_model(const TrainedModel& model, const Dataset& data);

}  // namespace fingerloc
