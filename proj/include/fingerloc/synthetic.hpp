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
#include <string>
#include <vector>

#include "fingerloc/dataset.hpp"

namespace fingerloc {

/// Desk-scale synthetic floor dataset: log-distance path loss with Gaussian
/// shadowing, RSS = p0 - 10*n*log10(d/d0) + N(0, sigma). Readings below
/// detection_floor become "not detected"; detected ones are clamped into
/// [-110, 0] dBm.
struct SyntheticFloorConfig {
    struct Location {
        std::string label;
        double x = 0.0;  // meters
        double y = 0.0;
    };
    struct AccessPoint {
        std::string name;
        double x = 0.0;
        double y = 0.0;
    };

    std::vector<Location> locations;
    std::vector<AccessPoint> aps;
    std::size_t samples_per_location = 600;
    double noise_sigma = 6.0;       // dB shadowing
    double p0 = -30.0;              // dBm at d0
    double path_loss_exponent = 3.0;
    double d0 = 1.0;                // meters; shorter distances clamp to d0
    double detection_floor = -100.0;
    std::uint64_t seed = 1;

    /// A 60 x 24 m office floor: 7 labeled survey points, a 40-AP ceiling
    /// grid, plus 8 distant APs (another wing) that are mostly undetectable.
    static SyntheticFloorConfig office_floor();

    /// ConfigError unless >= 2 locations, >= 1 AP, >= 1 sample, sigma >= 0,
    /// d0 > 0 and unique labels/names.
    void validate() const;
};

Dataset generate_synthetic_floor_dataset(const SyntheticFloorConfig& config);

}  // namespace fingerloc
