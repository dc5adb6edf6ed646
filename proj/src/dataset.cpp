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
#include "fingerloc/dataset.hpp"

#include <numeric>

#include "fingerloc/errors.hpp"
#include "fingerloc/rng.hpp"

namespace fingerloc {

std::string to_string(DatasetKind k) {
    return k == DatasetKind::BuildingFloor ? "building_floor" : "floor_level";
}

DatasetKind dataset_kind_from_string(const std::string& s) {
    if (s == "building_floor") return DatasetKind::BuildingFloor;
    if (s == "floor_level") return DatasetKind::FloorLevel;
    throw ConfigError("unknown dataset kind '" + s + "'");
}

void Dataset::validate() const {
    for (std::size_t i = 0; i < records.size(); ++i) {
        const FingerprintRecord& r = records[i];
        if (r.rss.size() != ap_order.size())
            throw ShapeError("record " + std::to_string(i) + " has " +
                             std::to_string(r.rss.size()) +
                             " rss values, dataset declares " +
                             std::to_string(ap_order.size()) + " aps");
        if (kind == DatasetKind::BuildingFloor) {
            if (!r.building_id || !r.floor_id)
                throw LabelError("record " + std::to_string(i) +
                                 " lacks building/floor labels");
        } else if (!r.location_id) {
            throw LabelError("record " + std::to_string(i) +
                             " lacks a location label");
        }
    }
}

SplitIndices split_indices(std::size_t n, double train_ratio,
                           std::uint64_t seed) {
    if (!(train_ratio > 0.0 && train_ratio < 1.0))
        throw ConfigError("train_ratio must lie in (0, 1)");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    rng.shuffle(order);
    const std::size_t cut =
        static_cast<std::size_t>(static_cast<double>(n) * train_ratio);
    SplitIndices out;
    out.train.assign(order.begin(), order.begin() + cut);
    out.validation.assign(order.begin() + cut, order.end());
    return out;
}

Dataset subset(const Dataset& data, std::span<const std::size_t> indices) {
    Dataset out;
    out.ap_order = data.ap_order;
    out.kind = data.kind;
    out.records.reserve(indices.size());
    for (std::size_t i : indices) out.records.push_back(data.records[i]);
    return out;
}

std::pair<Dataset, Dataset> split(const Dataset& data, double train_ratio,
                                  std::uint64_t seed) {
    const SplitIndices idx = split_indices(data.size(), train_ratio, seed);
    return {subset(data, idx.train), subset(data, idx.validation)};
}

}  // namespace fingerloc
