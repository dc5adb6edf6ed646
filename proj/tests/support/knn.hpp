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

#include <cstddef>
#include <limits>

#include "fingerloc/matrix.hpp"

namespace fingerloc::testing {

// Index of the euclidean nearest neighbour of `rows(query_row)` among the
// rows of `reference`. Ties keep the lowest index.
inline std::size_t nearest_row(const fingerloc::Matrix& reference,
                               const fingerloc::Matrix& queries,
                               std::size_t query_row) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < reference.rows(); ++r) {
        double d = 0.0;
        for (std::size_t c = 0; c < reference.cols(); ++c) {
            const double diff = reference(r, c) - queries(query_row, c);
            d += diff * diff;
        }
        if (d < best_d) {
            best_d = d;
            best = r;
        }
    }
    return best;
}

}  // namespace fingerloc::testing
