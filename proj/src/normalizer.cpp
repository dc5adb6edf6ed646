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
#include "fingerloc/normalizer.hpp"

#include <algorithm>

#include "fingerloc/errors.hpp"

namespace fingerloc {

void Normalizer::validate() const {
    if (!(max_dbm > min_dbm))
        throw ConfigError("normalizer needs max_dbm > min_dbm");
}

double Normalizer::normalize_value(double rss) const {
    const double x = is_detected(rss) ? rss : not_detected_fill;
    const double y = (x - min_dbm) / (max_dbm - min_dbm);
    return std::clamp(y, 0.0, 1.0);
}

Matrix Normalizer::normalize(const Dataset& data) const {
    validate();
    Matrix out(data.size(), data.ap_count());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const std::vector<double>& rss = data.records[i].rss;
        double* row = out.row(i);
        for (std::size_t j = 0; j < rss.size(); ++j)
            row[j] = normalize_value(rss[j]);
    }
    return out;
}

}  // namespace fingerloc
