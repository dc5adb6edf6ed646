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

#include <stdexcept>
#include <string>

namespace fingerloc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid configuration: bad layer spec, out-of-range ratio, ...
struct ConfigError : Error {
    using Error::Error;
};

/// Incompatible matrix/vector dimensions.
struct ShapeError : Error {
    using Error::Error;
};

/// Malformed file contents (CSV, store, model file).
struct FormatError : Error {
    using Error::Error;
};

/// Label outside the codec's domain.
struct LabelError : Error {
    using Error::Error;
};

/// Operation called in the wrong order (e.g. backward without a cached
/// training-mode forward).
struct StateError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

/// A scan shares no APs with the deployed model (HTTP 422).
struct UnmappableScanError : Error {
    using Error::Error;
};

}  // namespace fingerloc
