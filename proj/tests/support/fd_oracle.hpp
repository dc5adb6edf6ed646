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

// Central finite-difference gradient oracle. Independent of backward(): it
// only perturbs parameters and re-runs forward + loss.

#include <algorithm>
#include <cmath>

#include "fingerloc/network.hpp"

namespace fingerloc::testing {

inline Gradients finite_difference_gradients(Network net, const Matrix& x,
                                             const Matrix& y,
                                             double h = 1e-5) {
    auto loss_at = [&net, &x, &y]() {
        return loss(net, forward(net, x), y);
    };
    Gradients g;
    g.weights.resize(net.layer_count());
    g.biases.resize(net.layer_count());
    for (std::size_t l = 0; l < net.layer_count(); ++l) {
        Matrix& w = net.mutable_weights()[l];
        g.weights[l] = Matrix(w.rows(), w.cols());
        for (std::size_t i = 0; i < w.size(); ++i) {
            const double orig = w.data()[i];
            w.data()[i] = orig + h;
            const double lp = loss_at();
            w.data()[i] = orig - h;
            const double lm = loss_at();
            w.data()[i] = orig;
            g.weights[l].data()[i] = (lp - lm) / (2.0 * h);
        }
        std::vector<double>& b = net.mutable_biases()[l];
        g.biases[l].assign(b.size(), 0.0);
        for (std::size_t i = 0; i < b.size(); ++i) {
            const double orig = b[i];
            b[i] = orig + h;
            const double lp = loss_at();
            b[i] = orig - h;
            const double lm = loss_at();
            b[i] = orig;
            g.biases[l][i] = (lp - lm) / (2.0 * h);
        }
    }
    return g;
}

inline double relative_error(double a, double b) {
    const double denom = std::max(std::abs(a) + std::abs(b), 1e-8);
    return std::abs(a - b) / denom;
}

/// Max relative error between analytic and finite-difference gradients.
inline double max_gradient_error(const Gradients& analytic,
                                 const Gradients& fd) {
    double worst = 0.0;
    for (std::size_t l = 0; l < analytic.weights.size(); ++l) {
        for (std::size_t i = 0; i < analytic.weights[l].size(); ++i)
            worst = std::max(worst,
                             relative_error(analytic.weights[l].data()[i],
                                            fd.weights[l].data()[i]));
        for (std::size_t i = 0; i < analytic.biases[l].size(); ++i)
            worst = std::max(worst, relative_error(analytic.biases[l][i],
                                                   fd.biases[l][i]));
    }
    return worst;
}

}  // namespace fingerloc::testing
