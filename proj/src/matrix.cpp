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
#include "fingerloc/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "fingerloc/errors.hpp"
#include "fingerloc/kernels.hpp"

namespace fingerloc {

void Matrix::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

bool Matrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](double x) { return std::isfinite(x); });
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeError("matmul: " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " * " +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
    }
    Matrix c(a.rows(), b.cols());
    kernels().matmul_nn(a.data(), b.data(), c.data(), a.rows(), a.cols(),
                        b.cols());
    return c;
}

Matrix take_rows(const Matrix& src, std::span<const std::size_t> indices) {
    Matrix out(indices.size(), src.cols());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] >= src.rows())
            throw ShapeError("take_rows: index out of range");
        std::memcpy(out.row(i), src.row(indices[i]),
                    src.cols() * sizeof(double));
    }
    return out;
}

}  // namespace fingerloc
