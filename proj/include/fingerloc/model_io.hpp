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

#include <string>

#include "fingerloc/pipeline.hpp"

namespace fingerloc {

/// Versioned binary model file:
///   "FPLMODEL" | u32 version | u64 metadata length | JSON metadata |
///   raw little-endian doubles (per layer: weights row-major, then biases)
/// The JSON part describes mode, normalizer, AP order, codec, network spec
/// and training histories; weights travel as raw 64-bit doubles so a
/// save/load cycle reproduces predictions bit for bit.
void save_model(const TrainedModel& model, const std::string& path);

/// Throws IoError when unreadable, FormatError on bad magic, unsupported
/// version, or a payload that does not match the declared shapes (e.g.
/// truncation). Never returns a partial model.
TrainedModel load_model(const std::string& path);

}  // namespace fingerloc
