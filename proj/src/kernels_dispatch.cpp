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
#include <atomic>
#include <cstdlib>

#include "fingerloc/errors.hpp"
#include "fingerloc/kernels.hpp"

namespace fingerloc {

const KernelOps* avx2_kernels_impl();  // kernels_avx2.cpp

namespace {

bool cpu_has_avx2_fma() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelOps* resolve(const std::string& request) {
    if (request == "scalar") return &scalar_kernels();
    if (request == "avx2") {
        const KernelOps* ops = avx2_kernels();
        if (!ops) throw ConfigError("avx2 kernels not available on this CPU");
        return ops;
    }
    if (request == "auto" || request.empty()) {
        if (const KernelOps* ops = avx2_kernels()) return ops;
        return &scalar_kernels();
    }
    throw ConfigError("unknown kernel backend '" + request +
                      "' (expected auto, scalar or avx2)");
}

std::atomic<const KernelOps*> g_active{nullptr};

}  // namespace

const KernelOps* avx2_kernels() {
    return cpu_has_avx2_fma() ? avx2_kernels_impl() : nullptr;
}

const KernelOps& kernels() {
    const KernelOps* ops = g_active.load(std::memory_order_acquire);
    if (!ops) {
        const char* env = std::getenv("FINGERLOC_KERNELS");
        ops = resolve(env ? env : "auto");
        g_active.store(ops, std::memory_order_release);
    }
    return *ops;
}

void set_kernel_backend(const std::string& name) {
    g_active.store(resolve(name), std::memory_order_release);
}

}  // namespace fingerloc
