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
#include "fingerloc/store.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include "fingerloc/errors.hpp"

namespace fingerloc {

namespace {

constexpr const char* kFixedHeader = "location_id,device_id,timestamp";

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            cells.push_back(line.substr(start));
            return cells;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::string format_rss(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

void check_field(const std::string& value, const char* what) {
    if (value.find_first_of(",\r\n") != std::string::npos)
        throw ConfigError(std::string(what) +
                          " must not contain commas or line breaks: '" +
                          value + "'");
}

std::string record_line(const FingerprintRecord& rec) {
    std::string line = *rec.location_id;
    line += ',';
    if (rec.device_id) line += *rec.device_id;
    line += ',';
    if (rec.timestamp) line += std::to_string(*rec.timestamp);
    for (double v : rec.rss) {
        line += ',';
        if (is_detected(v)) line += format_rss(std::clamp(v, -110.0, 0.0));
    }
    line += '\n';
    return line;
}

void validate_batch(const Dataset& batch) {
    std::set<std::string> seen;
    for (const std::string& ap : batch.ap_order) {
        if (ap.empty()) throw ConfigError("empty AP identifier");
        check_field(ap, "AP identifier");
        if (!seen.insert(ap).second)
            throw ConfigError("duplicate AP identifier '" + ap + "'");
    }
    for (std::size_t i = 0; i < batch.records.size(); ++i) {
        const FingerprintRecord& rec = batch.records[i];
        if (!rec.location_id || rec.location_id->empty())
            throw LabelError("record " + std::to_string(i) +
                             " lacks a location_id");
        check_field(*rec.location_id, "location_id");
        if (rec.device_id) check_field(*rec.device_id, "device_id");
        if (rec.rss.size() != batch.ap_order.size())
            throw ShapeError("record " + std::to_string(i) + " has " +
                             std::to_string(rec.rss.size()) +
                             " rss values, batch declares " +
                             std::to_string(batch.ap_order.size()) + " aps");
    }
}

std::string header_line(const std::vector<std::string>& ap_order) {
    std::string line = kFixedHeader;
    for (const std::string& ap : ap_order) {
        line += ',';
        line += ap;
    }
    line += '\n';
    return line;
}

}  // namespace

Dataset load_store(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open store '" + path + "'");

    std::string line;
    if (!std::getline(in, line))
        throw FormatError("store '" + path + "': missing header line");
    if (line.rfind(kFixedHeader, 0) != 0)
        throw FormatError(
            "store '" + path +
            "': header must start with location_id,device_id,timestamp");

    Dataset data;
    data.kind = DatasetKind::FloorLevel;
    const std::vector<std::string> header = split_line(line);
    std::set<std::string> seen;
    for (std::size_t i = 3; i < header.size(); ++i) {
        if (header[i].empty())
            throw FormatError("store '" + path + "': empty AP name in header");
        if (!seen.insert(header[i]).second)
            throw FormatError("store '" + path + "': duplicate AP '" +
                              header[i] + "'");
        data.ap_order.push_back(header[i]);
    }

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const auto fail = [&](const std::string& why) -> FormatError {
            return FormatError("store '" + path + "' line " +
                               std::to_string(line_no) + ": " + why);
        };
        if (!line.empty() && line.back() == '\r')
            throw fail("CR line ending (store files are LF)");
        if (line.empty()) throw fail("empty line");
        const std::vector<std::string> cells = split_line(line);
        if (cells.size() != 3 + data.ap_order.size())
            throw fail("expected " +
                       std::to_string(3 + data.ap_order.size()) +
                       " fields, got " + std::to_string(cells.size()));

        FingerprintRecord rec;
        if (cells[0].empty()) throw fail("empty location_id");
        rec.location_id = cells[0];
        if (!cells[1].empty()) rec.device_id = cells[1];
        if (!cells[2].empty()) {
            std::int64_t ts = 0;
            const char* b = cells[2].data();
            const char* e = b + cells[2].size();
            auto [ptr, ec] = std::from_chars(b, e, ts);
            if (ec != std::errc{} || ptr != e)
                throw fail("bad timestamp '" + cells[2] + "'");
            rec.timestamp = ts;
        }
        rec.rss.reserve(data.ap_order.size());
        for (std::size_t i = 3; i < cells.size(); ++i) {
            if (cells[i].empty()) {
                rec.rss.push_back(kNotDetected);
                continue;
            }
            double v = 0.0;
            const char* b = cells[i].data();
            const char* e = b + cells[i].size();
            auto [ptr, ec] = std::from_chars(b, e, v);
            if (ec != std::errc{} || ptr != e)
                throw fail("bad rss '" + cells[i] + "'");
            if (v < -110.0 || v > 0.0)
                throw fail("rss " + cells[i] + " outside [-110, 0]");
            rec.rss.push_back(v);
        }
        data.records.push_back(std::move(rec));
    }
    return data;
}

std::string serialize_store(const Dataset& data) {
    std::string out = header_line(data.ap_order);
    for (const FingerprintRecord& rec : data.records)
        out += record_line(rec);
    return out;
}

std::size_t append_store(const std::string& path, const Dataset& batch) {
    validate_batch(batch);

    if (!std::filesystem::exists(path)) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot create store '" + path + "'");
        out << serialize_store(batch);
        out.flush();
        if (!out) throw IoError("write to store '" + path + "' failed");
        return batch.records.size();
    }

    Dataset existing = load_store(path);
    std::vector<std::size_t> column_map(batch.ap_order.size());
    std::vector<std::string> new_aps;
    bool extends = false;
    for (std::size_t i = 0; i < batch.ap_order.size(); ++i) {
        const auto it = std::find(existing.ap_order.begin(),
                                  existing.ap_order.end(), batch.ap_order[i]);
        if (it == existing.ap_order.end()) {
            extends = true;
            column_map[i] = existing.ap_order.size() + new_aps.size();
            new_aps.push_back(batch.ap_order[i]);
        } else {
            column_map[i] =
                static_cast<std::size_t>(it - existing.ap_order.begin());
        }
    }

    const std::size_t width = existing.ap_order.size() + new_aps.size();
    auto widen = [&](const FingerprintRecord& rec) {
        FingerprintRecord wide = rec;
        wide.rss.assign(width, kNotDetected);
        for (std::size_t i = 0; i < rec.rss.size(); ++i)
            wide.rss[column_map[i]] = rec.rss[i];
        return wide;
    };

    if (!extends) {
        // common case: append lines in place, one write per record
        std::ofstream out(path, std::ios::binary | std::ios::app);
        if (!out) throw IoError("cannot append to store '" + path + "'");
        for (const FingerprintRecord& rec : batch.records) {
            out << record_line(widen(rec));
            out.flush();
            if (!out)
                throw IoError("write to store '" + path + "' failed");
        }
        return batch.records.size();
    }

    // new APs: rewrite the whole store under the extended order
    Dataset merged;
    merged.kind = DatasetKind::FloorLevel;
    merged.ap_order = existing.ap_order;
    merged.ap_order.insert(merged.ap_order.end(), new_aps.begin(),
                           new_aps.end());
    for (FingerprintRecord& rec : existing.records) {
        rec.rss.resize(width, kNotDetected);
        merged.records.push_back(std::move(rec));
    }
    for (const FingerprintRecord& rec : batch.records)
        merged.records.push_back(widen(rec));

    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot create temp store '" + tmp + "'");
        out << serialize_store(merged);
        out.flush();
        if (!out) throw IoError("write to temp store '" + tmp + "' failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw IoError("cannot replace store '" + path + "': " + ec.message());
    return batch.records.size();
}

}  // namespace fingerloc
