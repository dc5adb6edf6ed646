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
#include "fingerloc/codec.hpp"

#include <algorithm>
#include <set>

#include "fingerloc/errors.hpp"

namespace fingerloc {

std::string to_string(CodecMode m) {
    switch (m) {
        case CodecMode::Hierarchical: return "hierarchical";
        case CodecMode::Flattened: return "flattened";
        case CodecMode::Categorical: return "categorical";
    }
    return "?";
}

CodecMode codec_mode_from_string(const std::string& s) {
    if (s == "hierarchical") return CodecMode::Hierarchical;
    if (s == "flattened") return CodecMode::Flattened;
    if (s == "categorical") return CodecMode::Categorical;
    throw ConfigError("unknown codec mode '" + s + "'");
}

namespace {

std::size_t argmax(std::span<const double> v) {
    // ties break toward the lowest index (max_element keeps the first max)
    return static_cast<std::size_t>(
        std::max_element(v.begin(), v.end()) - v.begin());
}

int require_label(const std::optional<int>& v, const char* what,
                  std::size_t record) {
    if (!v)
        throw LabelError("record " + std::to_string(record) + " lacks a " +
                         what + " label");
    return *v;
}

}  // namespace

LabelCodec LabelCodec::hierarchical(std::size_t building_count,
                                    std::size_t max_floor_count) {
    if (building_count == 0 || max_floor_count == 0)
        throw ConfigError("hierarchical codec needs counts >= 1");
    LabelCodec c;
    c.mode_ = CodecMode::Hierarchical;
    c.building_count_ = building_count;
    c.max_floor_count_ = max_floor_count;
    return c;
}

LabelCodec LabelCodec::flattened(const Dataset& data) {
    std::set<std::pair<int, int>> pairs;  // lexicographic (building, floor)
    for (std::size_t i = 0; i < data.records.size(); ++i) {
        const FingerprintRecord& r = data.records[i];
        pairs.emplace(require_label(r.building_id, "building", i),
                      require_label(r.floor_id, "floor", i));
    }
    if (pairs.empty())
        throw ConfigError("flattened codec needs at least one record");
    LabelCodec c;
    c.mode_ = CodecMode::Flattened;
    for (const auto& [b, f] : pairs) {
        c.pairs_.emplace_back(b, f);
        c.classes_.push_back(std::to_string(b) + "-" + std::to_string(f));
        c.building_count_ = std::max(c.building_count_,
                                     static_cast<std::size_t>(b) + 1);
        c.max_floor_count_ = std::max(c.max_floor_count_,
                                      static_cast<std::size_t>(f) + 1);
    }
    return c;
}

LabelCodec LabelCodec::categorical(const Dataset& data) {
    std::set<std::string> names;
    for (std::size_t i = 0; i < data.records.size(); ++i) {
        if (!data.records[i].location_id)
            throw LabelError("record " + std::to_string(i) +
                             " lacks a location label");
        names.insert(*data.records[i].location_id);
    }
    if (names.empty())
        throw ConfigError("categorical codec needs at least one record");
    LabelCodec c;
    c.mode_ = CodecMode::Categorical;
    c.classes_.assign(names.begin(), names.end());
    return c;
}

LabelCodec LabelCodec::from_parts(CodecMode mode, std::size_t building_count,
                                  std::size_t max_floor_count,
                                  std::vector<std::string> classes) {
    LabelCodec c;
    c.mode_ = mode;
    c.building_count_ = building_count;
    c.max_floor_count_ = max_floor_count;
    c.classes_ = std::move(classes);
    if (mode == CodecMode::Hierarchical) {
        if (building_count == 0 || max_floor_count == 0)
            throw FormatError("hierarchical codec needs counts >= 1");
    } else if (c.classes_.empty()) {
        throw FormatError("class-list codec without classes");
    }
    if (mode == CodecMode::Flattened) {
        for (const std::string& name : c.classes_) {
            const std::size_t dash = name.find('-');
            if (dash == std::string::npos)
                throw FormatError("flattened class '" + name +
                                  "' is not <building>-<floor>");
            try {
                c.pairs_.emplace_back(std::stoi(name.substr(0, dash)),
                                      std::stoi(name.substr(dash + 1)));
            } catch (const std::exception&) {
                throw FormatError("flattened class '" + name +
                                  "' is not <building>-<floor>");
            }
        }
    }
    return c;
}

std::size_t LabelCodec::target_dim() const {
    return mode_ == CodecMode::Hierarchical
               ? building_count_ + max_floor_count_
               : classes_.size();
}

std::vector<double> LabelCodec::encode_hierarchical(int building_id,
                                                    int floor_id) const {
    if (mode_ != CodecMode::Hierarchical)
        throw StateError("codec is not hierarchical");
    if (building_id < 0 ||
        static_cast<std::size_t>(building_id) >= building_count_)
        throw LabelError("building id " + std::to_string(building_id) +
                         " outside [0, " + std::to_string(building_count_) +
                         ")");
    if (floor_id < 0 ||
        static_cast<std::size_t>(floor_id) >= max_floor_count_)
        throw LabelError("floor id " + std::to_string(floor_id) +
                         " outside [0, " + std::to_string(max_floor_count_) +
                         ")");
    std::vector<double> out(target_dim(), 0.0);
    out[static_cast<std::size_t>(building_id)] = 1.0;
    out[building_count_ + static_cast<std::size_t>(floor_id)] = 1.0;
    return out;
}

std::pair<int, int> LabelCodec::decode_argmax_split(
    std::span<const double> output) const {
    if (mode_ != CodecMode::Hierarchical)
        throw StateError("codec is not hierarchical");
    if (output.size() != target_dim())
        throw ShapeError("expected " + std::to_string(target_dim()) +
                         " outputs, got " + std::to_string(output.size()));
    const auto b = argmax(output.first(building_count_));
    const auto f = argmax(output.subspan(building_count_));
    return {static_cast<int>(b), static_cast<int>(f)};
}

std::vector<double> LabelCodec::encode_flattened(int building_id,
                                                 int floor_id) const {
    if (mode_ != CodecMode::Flattened)
        throw StateError("codec is not flattened");
    const auto it = std::find(pairs_.begin(), pairs_.end(),
                              std::make_pair(building_id, floor_id));
    if (it == pairs_.end())
        throw LabelError("pair (" + std::to_string(building_id) + ", " +
                         std::to_string(floor_id) +
                         ") not present in the class list");
    std::vector<double> out(classes_.size(), 0.0);
    out[static_cast<std::size_t>(it - pairs_.begin())] = 1.0;
    return out;
}

std::pair<int, int> LabelCodec::decode_flattened(
    std::span<const double> output) const {
    if (mode_ != CodecMode::Flattened)
        throw StateError("codec is not flattened");
    if (output.size() != classes_.size())
        throw ShapeError("expected " + std::to_string(classes_.size()) +
                         " outputs, got " + std::to_string(output.size()));
    return pairs_[argmax(output)];
}

std::vector<double> LabelCodec::encode_categorical(
    const std::string& location) const {
    if (mode_ != CodecMode::Categorical)
        throw StateError("codec is not categorical");
    const auto it = std::lower_bound(classes_.begin(), classes_.end(),
                                     location);
    if (it == classes_.end() || *it != location)
        throw LabelError("location '" + location +
                         "' not present in the class list");
    std::vector<double> out(classes_.size(), 0.0);
    out[static_cast<std::size_t>(it - classes_.begin())] = 1.0;
    return out;
}

const std::string& LabelCodec::decode_categorical(
    std::span<const double> output) const {
    if (mode_ != CodecMode::Categorical)
        throw StateError("codec is not categorical");
    if (output.size() != classes_.size())
        throw ShapeError("expected " + std::to_string(classes_.size()) +
                         " outputs, got " + std::to_string(output.size()));
    return classes_[argmax(output)];
}

Matrix LabelCodec::encode_targets(const Dataset& data) const {
    Matrix out(data.size(), target_dim());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const FingerprintRecord& r = data.records[i];
        std::vector<double> t;
        switch (mode_) {
            case CodecMode::Hierarchical:
                t = encode_hierarchical(
                    require_label(r.building_id, "building", i),
                    require_label(r.floor_id, "floor", i));
                break;
            case CodecMode::Flattened:
                t = encode_flattened(
                    require_label(r.building_id, "building", i),
                    require_label(r.floor_id, "floor", i));
                break;
            case CodecMode::Categorical:
                if (!r.location_id)
                    throw LabelError("record " + std::to_string(i) +
                                     " lacks a location label");
                t = encode_categorical(*r.location_id);
                break;
        }
        std::copy(t.begin(), t.end(), out.row(i));
    }
    return out;
}

std::pair<int, int> LabelCodec::flattened_pair(std::size_t class_index) const {
    if (mode_ != CodecMode::Flattened)
        throw StateError("codec is not flattened");
    if (class_index >= pairs_.size())
        throw ShapeError("class index out of range");
    return pairs_[class_index];
}

}  // namespace fingerloc
