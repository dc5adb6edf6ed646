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
#include "fingerloc/ujiindoorloc.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "fingerloc/errors.hpp"

namespace fingerloc {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_cell(const std::string& cell, std::size_t line_no,
                  const std::string& column) {
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw FormatError("line " + std::to_string(line_no) + ", column " +
                          column + ": non-numeric cell '" + cell + "'");
    return value;
}

constexpr double kSentinelNotDetected = 100.0;

}  // namespace

Dataset parse_ujiindoorloc(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line))
        throw FormatError("'" + path + "' is empty (header row expected)");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const std::vector<std::string> header = split_csv_line(line);
    std::vector<std::size_t> wap_cols;
    Dataset data;
    long floor_col = -1, building_col = -1, phone_col = -1, time_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string& name = header[i];
        if (name.rfind("WAP", 0) == 0) {
            wap_cols.push_back(i);
            data.ap_order.push_back(name);
        } else if (name == "FLOOR") {
            floor_col = static_cast<long>(i);
        } else if (name == "BUILDINGID") {
            building_col = static_cast<long>(i);
        } else if (name == "PHONEID") {
            phone_col = static_cast<long>(i);
        } else if (name == "TIMESTAMP") {
            time_col = static_cast<long>(i);
        }
    }
    if (wap_cols.empty())
        throw FormatError("'" + path + "' lacks WAP columns");
    if (floor_col < 0)
        throw FormatError("'" + path + "' lacks required column FLOOR");
    if (building_col < 0)
        throw FormatError("'" + path + "' lacks required column BUILDINGID");

    data.kind = DatasetKind::BuildingFloor;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw FormatError("line " + std::to_string(line_no) + ": has " +
                              std::to_string(cells.size()) +
                              " cells, header has " +
                              std::to_string(header.size()));

        FingerprintRecord rec;
        rec.rss.reserve(wap_cols.size());
        for (std::size_t w = 0; w < wap_cols.size(); ++w) {
            const double v = parse_cell(cells[wap_cols[w]], line_no,
                                        header[wap_cols[w]]);
            if (v == kSentinelNotDetected) {
                rec.rss.push_back(kNotDetected);
            } else {
                rec.rss.push_back(std::clamp(v, -110.0, 0.0));
            }
        }
        const double floor = parse_cell(cells[static_cast<std::size_t>(
                                            floor_col)],
                                        line_no, "FLOOR");
        const double building = parse_cell(
            cells[static_cast<std::size_t>(building_col)], line_no,
            "BUILDINGID");
        if (floor < 0 || building < 0)
            throw FormatError("line " + std::to_string(line_no) +
                              ": negative FLOOR/BUILDINGID");
        rec.floor_id = static_cast<int>(floor);
        rec.building_id = static_cast<int>(building);
        if (phone_col >= 0)
            rec.device_id = cells[static_cast<std::size_t>(phone_col)];
        if (time_col >= 0)
            rec.timestamp = static_cast<std::int64_t>(parse_cell(
                cells[static_cast<std::size_t>(time_col)], line_no,
                "TIMESTAMP"));
        data.records.push_back(std::move(rec));
    }
    return data;
}

}  // namespace fingerloc
