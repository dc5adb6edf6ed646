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
#include "campus_sim.hpp"

#include <cmath>
#include <cstdio>

#include "fingerloc/rng.hpp"

namespace fingerloc::testing {

using fingerloc::Dataset;
using fingerloc::DatasetKind;
using fingerloc::FingerprintRecord;
using fingerloc::kNotDetected;
using fingerloc::Rng;

namespace {

// geometry/propagation constants for the simulated campus
constexpr double kFloorWidth = 80.0;    // m
constexpr double kFloorDepth = 40.0;    // m
constexpr double kBuildingGap = 150.0;  // m between building origins
constexpr double kFloorHeight = 4.0;    // m
constexpr double kP0 = -30.0;           // dBm at 1 m
constexpr double kPathLossExp = 2.8;
constexpr double kFloorLoss = 10.0;     // dB per floor crossed
constexpr double kWallLoss = 20.0;      // dB between buildings
constexpr double kDetectionFloor = -100.0;
constexpr std::size_t kDeviceCount = 16;

struct Ap {
    double x, y, z;
    std::size_t building, floor;
};

}  // namespace

CampusConfig CampusConfig::tiny() {
    CampusConfig cfg;
    cfg.floors_per_building = {2, 2, 3};
    cfg.aps_per_floor = 6;
    cfg.samples_per_floor = 60;
    return cfg;
}

Dataset generate_campus(const CampusConfig& config) {
    Dataset data;
    data.kind = DatasetKind::BuildingFloor;

    // APs on a per-floor ceiling grid: roughly square layout
    std::vector<Ap> aps;
    const auto grid_cols = static_cast<std::size_t>(
        std::ceil(std::sqrt(static_cast<double>(config.aps_per_floor) * 2.0)));
    for (std::size_t b = 0; b < config.floors_per_building.size(); ++b) {
        for (std::size_t f = 0; f < config.floors_per_building[b]; ++f) {
            for (std::size_t a = 0; a < config.aps_per_floor; ++a) {
                const std::size_t col = a % grid_cols;
                const std::size_t row = a / grid_cols;
                Ap ap;
                ap.x = static_cast<double>(b) * kBuildingGap +
                       kFloorWidth * (0.5 + static_cast<double>(col)) /
                           static_cast<double>(grid_cols);
                ap.y = kFloorDepth * (0.5 + static_cast<double>(row)) /
                       std::ceil(static_cast<double>(config.aps_per_floor) /
                                 static_cast<double>(grid_cols));
                ap.z = static_cast<double>(f) * kFloorHeight + 3.0;
                ap.building = b;
                ap.floor = f;
                aps.push_back(ap);
                char name[8];
                std::snprintf(name, sizeof(name), "WAP%03zu", aps.size());
                data.ap_order.emplace_back(name);
            }
        }
    }

    Rng rng(config.seed);
    std::vector<double> device_offset(kDeviceCount);
    for (double& o : device_offset) o = rng.uniform(-3.0, 3.0);

    std::int64_t timestamp = 1369900000;
    for (std::size_t b = 0; b < config.floors_per_building.size(); ++b) {
        for (std::size_t f = 0; f < config.floors_per_building[b]; ++f) {
            for (std::size_t s = 0; s < config.samples_per_floor; ++s) {
                const double px = static_cast<double>(b) * kBuildingGap +
                                  rng.uniform(0.0, kFloorWidth);
                const double py = rng.uniform(0.0, kFloorDepth);
                const double pz =
                    static_cast<double>(f) * kFloorHeight + 1.2;
                const std::size_t device = rng.below(kDeviceCount);

                FingerprintRecord rec;
                rec.building_id = static_cast<int>(b);
                rec.floor_id = static_cast<int>(f);
                rec.device_id = std::to_string(device);
                rec.timestamp = timestamp++;
                rec.rss.reserve(aps.size());
                for (const Ap& ap : aps) {
                    const double d = std::max(
                        std::sqrt((px - ap.x) * (px - ap.x) +
                                  (py - ap.y) * (py - ap.y) +
                                  (pz - ap.z) * (pz - ap.z)),
                        1.0);
                    double rss = kP0 -
                                 10.0 * kPathLossExp * std::log10(d) +
                                 device_offset[device] +
                                 rng.gaussian(0.0, config.noise_sigma);
                    if (ap.building == b)
                        rss -= kFloorLoss *
                               std::abs(static_cast<double>(f) -
                                        static_cast<double>(ap.floor));
                    else
                        rss -= kWallLoss;
                    rss = std::round(rss);  // receivers report integer dBm
                    if (rss < kDetectionFloor)
                        rec.rss.push_back(kNotDetected);
                    else
                        rec.rss.push_back(std::min(rss, 0.0));
                }
                data.records.push_back(std::move(rec));
            }
        }
    }
    return data;
}

std::string campus_csv(const Dataset& data) {
    std::string out;
    for (const std::string& ap : data.ap_order) {
        out += ap;
        out += ',';
    }
    out +=
        "LONGITUDE,LATITUDE,FLOOR,BUILDINGID,SPACEID,RELATIVEPOSITION,"
        "USERID,PHONEID,TIMESTAMP\n";
    for (const FingerprintRecord& rec : data.records) {
        for (double v : rec.rss) {
            if (fingerloc::is_detected(v))
                out += std::to_string(static_cast<int>(v));
            else
                out += "100";
            out += ',';
        }
        const int b = *rec.building_id;
        out += std::to_string(-7700.0 + 150.0 * b) + ',';
        out += "4864850.0,";
        out += std::to_string(*rec.floor_id) + ',';
        out += std::to_string(b) + ',';
        out += "101,1,1,";
        out += (rec.device_id ? *rec.device_id : "0") + ',';
        out += std::to_string(rec.timestamp ? *rec.timestamp : 0);
        out += '\n';
    }
    return out;
}

}  // namespace fingerloc::testing
