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

// Multi-building campus simulator for tests: produces datasets with the same
// shape and difficulty profile as the public 520-AP benchmark (3 buildings,
// 4-5 floors each, 13 (building, floor) classes) without shipping it.

#include <cstdint>
#include <string>
#include <vector>

#include "fingerloc/dataset.hpp"

namespace fingerloc::testing {

struct CampusConfig {
    /// Floors per building; 3 buildings of 4/4/5 floors = 13 classes.
    std::vector<std::size_t> floors_per_building = {4, 4, 5};
    /// APs anchored to each (building, floor); 13 x 40 = 520 features.
    std::size_t aps_per_floor = 40;
    std::size_t samples_per_floor = 1000;
    double noise_sigma = 8.0;  // dB shadowing
    std::uint64_t seed = 1;

    /// A small instance for fast unit tests (2/2/3 floors, 6 APs per floor,
    /// 60 samples per floor).
    static CampusConfig tiny();
};

/// Building/floor-labeled scans from a log-distance path-loss model with
/// per-floor attenuation, inter-building wall loss, per-device gain offsets
/// and integer-rounded RSS. Deterministic under config.seed.
fingerloc::Dataset generate_campus(const CampusConfig& config);

/// The dataset as benchmark-schema CSV text (WAP columns followed by
/// LONGITUDE..TIMESTAMP metadata columns, sentinel 100 for not-detected).
std::string campus_csv(const fingerloc::Dataset& data);

}  // namespace fingerloc::testing
