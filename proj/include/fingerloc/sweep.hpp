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
#include <span>
#include <string>
#include <vector>

#include "fingerloc/metrics.hpp"

namespace fingerloc {

struct WeightPair {
    double building_weight = 1.0;
    double floor_weight = 1.0;

    bool operator==(const WeightPair&) const = default;
};

/// The weight grid scanned for Table-I-style reports:
/// (1,1), (2,1), (5,1), (10,1), (20,1).
std::vector<WeightPair> default_weight_grid();

/// One trained-and-scored run of the hierarchical pipeline.
struct SweepCell {
    double building_weight = 1.0;
    double floor_weight = 1.0;
    std::uint64_t seed = 0;
    MetricsReport metrics;

    bool operator==(const SweepCell&) const = default;
};

/// Per-pair aggregate over the seed set.
struct SweepSummary {
    double building_weight = 1.0;
    double floor_weight = 1.0;
    std::size_t runs = 0;
    double overall_mean = 0.0, overall_sd = 0.0;
    double building_mean = 0.0, building_sd = 0.0;
    double floor_mean = 0.0, floor_sd = 0.0;
};

struct SweepResult {
    /// One cell per (pair, seed), pair-major in input order.
    std::vector<SweepCell> cells;

    /// Mean +- sample sd per weight pair, in first-appearance order.
    std::vector<SweepSummary> summarize() const;

    bool operator==(const SweepResult&) const = default;
};

/// Trains one hierarchical model per (weight pair, seed) and scores it on
/// that run's validation split. base.classifier's weights are overridden per
/// cell and base.seed per seed, so within one seed every pair shares the
/// same split. Cells run on `jobs` worker threads (>= 1); results are
/// ordered deterministically regardless of scheduling.
SweepResult sweep_class_weights(const Dataset& data,
                                const PipelineConfig& base,
                                std::span<const WeightPair> pairs,
                                std::span<const std::uint64_t> seeds,
                                std::size_t jobs = 1);

/// Aligned text table in Table-I column order (Overall, Building, Floor),
/// one row per weight pair, values in scientific notation with 7
/// significant digits.
std::string render_report(const SweepResult& result);

/// Line-delimited JSON, one record per cell, carrying the full metrics so
/// parsing restores an equal SweepResult.
std::string sweep_to_jsonl(const SweepResult& result);
SweepResult sweep_from_jsonl(const std::string& text);

}  // namespace fingerloc
