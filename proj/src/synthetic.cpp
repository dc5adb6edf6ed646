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
#include "fingerloc/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "fingerloc/errors.hpp"
#include "fingerloc/rng.hpp"

namespace fingerloc {

SyntheticFloorConfig SyntheticFloorConfig::office_floor() {
    SyntheticFloorConfig cfg;
    cfg.locations = {
        {"R401", 6.0, 4.0},  {"R402", 18.0, 20.0}, {"R403", 30.0, 6.0},
        {"R404", 42.0, 18.0}, {"R405", 54.0, 4.0},  {"R406", 12.0, 12.0},
        {"R407", 48.0, 10.0},
    };
    // ceiling grid, 8 x 5 over 60 x 24 m
    int id = 1;
    for (int j = 0; j < 5; ++j)
        for (int i = 0; i < 8; ++i) {
            char name[16];
            std::snprintf(name, sizeof(name), "AP%02d", id++);
            cfg.aps.push_back(
                {name, 3.75 + 7.5 * i, 2.4 + 4.8 * j});
        }
    // a far wing: usually below the detection floor from here
    for (int k = 0; k < 8; ++k) {
        char name[16];
        std::snprintf(name, sizeof(name), "AP%02d", id++);
        cfg.aps.push_back({name, 400.0 + 15.0 * k, 300.0});
    }
    return cfg;
}

void SyntheticFloorConfig::validate() const {
    if (locations.size() < 2)
        throw ConfigError("synthetic floor needs at least 2 locations");
    if (aps.empty()) throw ConfigError("synthetic floor needs at least 1 AP");
    if (samples_per_location == 0)
        throw ConfigError("samples_per_location must be >= 1");
    if (!(noise_sigma >= 0.0)) throw ConfigError("noise_sigma must be >= 0");
    if (!(d0 > 0.0)) throw ConfigError("d0 must be > 0");
    std::set<std::string> labels;
    for (const Location& loc : locations)
        if (loc.label.empty() || !labels.insert(loc.label).second)
            throw ConfigError("location labels must be unique and non-empty");
    std::set<std::string> names;
    for (const AccessPoint& ap : aps)
        if (ap.name.empty() || !names.insert(ap.name).second)
            throw ConfigError("AP names must be unique and non-empty");
}

Dataset generate_synthetic_floor_dataset(const SyntheticFloorConfig& config) {
    config.validate();
    Dataset data;
    data.kind = DatasetKind::FloorLevel;
    for (const auto& ap : config.aps) data.ap_order.push_back(ap.name);
    data.records.reserve(config.locations.size() *
                         config.samples_per_location);

    Rng rng(config.seed);
    for (const auto& loc : config.locations) {
        for (std::size_t s = 0; s < config.samples_per_location; ++s) {
            FingerprintRecord rec;
            rec.location_id = loc.label;
            rec.rss.reserve(config.aps.size());
            for (const auto& ap : config.aps) {
                const double d = std::max(
                    std::hypot(loc.x - ap.x, loc.y - ap.y), config.d0);
                const double rss = config.p0 -
                                   10.0 * config.path_loss_exponent *
                                       std::log10(d / config.d0) +
                                   rng.gaussian(0.0, config.noise_sigma);
                if (rss < config.detection_floor)
                    rec.rss.push_back(kNotDetected);
                else
                    rec.rss.push_back(std::clamp(rss, -110.0, 0.0));
            }
            data.records.push_back(std::move(rec));
        }
    }
    return data;
}

}  // namespace fingerloc
