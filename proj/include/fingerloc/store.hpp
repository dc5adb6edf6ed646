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

/// Local fingerprint store: UTF-8, LF line endings. The first line is a
/// header naming the fixed columns and the AP order:
///
///   location_id,device_id,timestamp,<ap 1>,<ap 2>,...
///
/// Every following line is one record; device_id and timestamp may be empty,
/// an empty RSS cell means "not detected". Serializing a loaded store
/// reproduces it byte for byte.

/// Loads the whole store as a floor-level dataset. Header-only files yield
/// an empty dataset with the declared ap_order. Throws IoError when the file
/// is unreadable and FormatError (with the line number) on malformed
/// content, including detected RSS outside [-110, 0].
Dataset load_store(const std::string& path);

/// Appends `batch.records` to the store at `path`, creating it (with
/// batch.ap_order as header) when absent. When the batch introduces APs the
/// store has not seen, the store is rewritten under the extended AP order
/// (existing entries padded with "not detected") via a temp file + rename.
/// Detected RSS values are clamped into [-110, 0] on the way in. Returns the
/// number of records appended.
///
/// Throws ConfigError for records whose text fields would corrupt the format
/// (embedded comma/newline) and LabelError for records without location_id.
/// Concurrent appends must be serialized by the caller.
std::size_t append_store(const std::string& path, const Dataset& batch);

/// The exact byte content a store file with this dataset would have.
std::string serialize_store(const Dataset& data);

}  // namespace fingerloc
