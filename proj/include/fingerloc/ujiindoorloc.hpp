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

#include "fingerloc/dataset.hpp"

namespace fingerloc {

/// Reads a UJIIndoorLoc-format CSV: header row with WAP### columns followed
/// by metadata columns (FLOOR and BUILDINGID required; PHONEID, TIMESTAMP
/// picked up when present). RSS value 100 means "not detected"; detected
/// values are clamped into [-110, 0] dBm.
///
/// Throws IoError when the file cannot be read, FormatError (naming the
/// column, or row and column) on schema/cell problems.
Dataset parse_ujiindoorloc(const std::string& path);

}  // namespace fingerloc
