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

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fingerloc {

/// In-memory sentinel for "AP not detected". NaN so arithmetic on it is
/// loudly wrong instead of silently plausible; compare via is_detected().
inline constexpr double kNotDetected =
    std::numeric_limits<double>::quiet_NaN();

inline bool is_detected(double rss) { return !std::isnan(rss); }

/// One Wi-Fi scan with whatever labels the source provides. Detected RSS
/// values are in dBm within [-110, 0] after ingestion.
struct FingerprintRecord {
    std::vector<double> rss;
    std::optional<int> building_id;
    std::optional<int> floor_id;
    std::optional<std::string> location_id;  // e.g. "EB306"
    std::optional<std::string> device_id;
    std::optional<std::int64_t> timestamp;   // unix seconds
};

enum class DatasetKind { BuildingFloor, FloorLevel };

std::string to_string(DatasetKind k);
DatasetKind dataset_kind_from_string(const std::string& s);

struct Dataset {
    std::vector<FingerprintRecord> records;
    std::vector<std::string> ap_order;
    DatasetKind kind = DatasetKind::BuildingFloor;

    std::size_t size() const { return records.size(); }
    std::size_t ap_count() const { return ap_order.size(); }

    /// Checks the cross-record invariants: rss length == ap_order length for
    /// every record, and the labels demanded by `kind` are present.
    /// Throws ShapeError / LabelError.
    void validate() const;
};

struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> validation;
};

/// Seeded uniform shuffle of [0, n) then prefix/suffix cut at
/// floor(n * train_ratio). Exact partition: disjoint, union = [0, n).
/// Throws ConfigError when train_ratio is outside (0, 1).
SplitIndices split_indices(std::size_t n, double train_ratio,
                           std::uint64_t seed);

/// Copies of the selected records, in the given order.
Dataset subset(const Dataset& data, std::span<const std::size_t> indices);

std::pair<Dataset, Dataset> split(const Dataset& data, double train_ratio,
                                  std::uint64_t seed);

}  // namespace fingerloc
