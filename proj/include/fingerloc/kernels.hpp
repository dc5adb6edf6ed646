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
#include <string>

namespace fingerloc {

/// Data-parallel inner loops behind the network engine. The scalar table is
/// the reference; the AVX2 table must match it within rounding (FMA and
/// multi-accumulator sums reorder additions, so equality is tested with a
/// tolerance, see tests/test_kernels.cpp). All matrices are row-major double.
struct KernelOps {
    const char* name;

    /// C(m x n) = A(m x k) * B(k x n). C is overwritten.
    void (*matmul_nn)(const double* a, const double* b, double* c,
                      std::size_t m, std::size_t k, std::size_t n);

    /// C(k x n) = A(m x k)^T * B(m x n). C is overwritten.
    void (*matmul_tn)(const double* a, const double* b, double* c,
                      std::size_t m, std::size_t k, std::size_t n);

    /// C(m x k) = A(m x n) * B(k x n)^T. C is overwritten.
    void (*matmul_nt)(const double* a, const double* b, double* c,
                      std::size_t m, std::size_t n, std::size_t k);

    double (*dot)(const double* a, const double* b, std::size_t n);

    /// y += alpha * x
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);

    /// sum_i (a_i - b_i)^2
    double (*sum_sq_diff)(const double* a, const double* b, std::size_t n);

    /// In-place ADAM step on one parameter tensor. inv_bc1/inv_bc2 are the
    /// precomputed 1/(1-beta^t) bias corrections for the current step.
    void (*adam_update)(double* w, const double* g, double* m, double* v,
                        std::size_t n, double lr, double beta1, double beta2,
                        double eps, double inv_bc1, double inv_bc2);

    /// In-place AdaGrad step: acc += g^2; w -= lr * g / (sqrt(acc) + eps).
    void (*adagrad_update)(double* w, const double* g, double* acc,
                           std::size_t n, double lr, double eps);
};

const KernelOps& scalar_kernels();

/// nullptr when the build or the CPU lacks AVX2+FMA.
const KernelOps* avx2_kernels();

/// The active table. Resolved once: AVX2 when available, else scalar;
/// FINGERLOC_KERNELS=scalar|avx2 overrides (avx2 on an unsupported CPU is a
/// ConfigError).
const KernelOps& kernels();

/// Test hook: force a backend by name ("auto", "scalar", "avx2").
void set_kernel_backend(const std::string& name);

}  // namespace fingerloc
