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

#include "fingerloc/dataset.hpp"
#include "fingerloc/matrix.hpp"

namespace fingerloc {

/// Affine RSS -> [0,1] feature map. NOT_DETECTED readings are first replaced
/// by not_detected_fill; the result is clipped to [0,1], so stronger signal
/// always means a larger feature and absent APs sit at the bottom.
struct Normalizer {
    double not_detected_fill = -110.0;
    double min_dbm = -110.0;
    double max_dbm = 0.0;

    /// ConfigError when max_dbm <= min_dbm.
    void validate() const;

    double normalize_value(double rss) const;

    /// Feature matrix: one row per record, one column per AP.
    Matrix normalize(const Dataset& data) const;

    bool operator==(const Normalizer&) const = default;
};

}  // namespace fingerloc
