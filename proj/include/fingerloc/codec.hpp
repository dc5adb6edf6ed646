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

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fingerloc/dataset.hpp"
#include "fingerloc/matrix.hpp"

namespace fingerloc {

enum class CodecMode { Hierarchical, Flattened, Categorical };

std::string to_string(CodecMode m);
CodecMode codec_mode_from_string(const std::string& s);

/// Translates labels to/from network target vectors.
///
/// hierarchical: building one-hot ++ floor one-hot ("001|01000" style),
///               decoded by taking the argmax of each segment separately.
/// flattened:    one class per (building, floor) pair seen in the data,
///               plain argmax decode.
/// categorical:  one class per location string, plain argmax decode.
class LabelCodec {
public:
    static LabelCodec hierarchical(std::size_t building_count,
                                   std::size_t max_floor_count);
    /// Class list = distinct (building, floor) pairs of `data`, ordered
    /// lexicographically; names are "<building>-<floor>".
    static LabelCodec flattened(const Dataset& data);
    /// Class list = distinct location_id strings of `data`, sorted.
    static LabelCodec categorical(const Dataset& data);

    CodecMode mode() const { return mode_; }
    std::size_t building_count() const { return building_count_; }
    std::size_t max_floor_count() const { return max_floor_count_; }
    std::size_t target_dim() const;
    const std::vector<std::string>& class_names() const { return classes_; }

    std::vector<double> encode_hierarchical(int building_id,
                                            int floor_id) const;
    std::pair<int, int> decode_argmax_split(
        std::span<const double> output) const;

    std::vector<double> encode_flattened(int building_id, int floor_id) const;
    std::pair<int, int> decode_flattened(std::span<const double> output) const;

    std::vector<double> encode_categorical(const std::string& location) const;
    const std::string& decode_categorical(
        std::span<const double> output) const;

    /// Encodes every record with this codec's mode; LabelError when a record
    /// lacks the needed labels or holds an unseen class.
    Matrix encode_targets(const Dataset& data) const;

    /// (building, floor) of a flattened class index; class name for
    /// categorical. Used for report rendering.
    std::pair<int, int> flattened_pair(std::size_t class_index) const;

    bool operator==(const LabelCodec&) const = default;

    // serialization support (model files)
    static LabelCodec from_parts(CodecMode mode, std::size_t building_count,
                                 std::size_t max_floor_count,
                                 std::vector<std::string> classes);

private:
    CodecMode mode_ = CodecMode::Hierarchical;
    std::size_t building_count_ = 0;
    std::size_t max_floor_count_ = 0;
    std::vector<std::string> classes_;
    // flattened: pairs_ mirrors classes_ as numeric (building, floor)
    std::vector<std::pair<int, int>> pairs_;
};

}  // namespace fingerloc
