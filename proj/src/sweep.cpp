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
#include "fingerloc/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "fingerloc/errors.hpp"
#include "json.hpp"

namespace fingerloc {

using json = nlohmann::json;

std::vector<WeightPair> default_weight_grid() {
    return {{1, 1}, {2, 1}, {5, 1}, {10, 1}, {20, 1}};
}

std::vector<SweepSummary> SweepResult::summarize() const {
    std::vector<SweepSummary> rows;
    for (const SweepCell& cell : cells) {
        SweepSummary* row = nullptr;
        for (SweepSummary& r : rows)
            if (r.building_weight == cell.building_weight &&
                r.floor_weight == cell.floor_weight)
                row = &r;
        if (!row) {
            rows.push_back({cell.building_weight, cell.floor_weight});
            row = &rows.back();
        }
        ++row->runs;
        row->overall_mean += cell.metrics.overall_accuracy;
        row->building_mean += cell.metrics.building_accuracy;
        row->floor_mean += cell.metrics.floor_accuracy;
    }
    for (SweepSummary& r : rows) {
        const double n = static_cast<double>(r.runs);
        r.overall_mean /= n;
        r.building_mean /= n;
        r.floor_mean /= n;
    }
    // sample standard deviation (0 for a single run)
    for (SweepSummary& r : rows) {
        if (r.runs < 2) continue;
        double so = 0, sb = 0, sf = 0;
        for (const SweepCell& cell : cells) {
            if (cell.building_weight != r.building_weight ||
                cell.floor_weight != r.floor_weight)
                continue;
            const auto sq = [](double d) { return d * d; };
            so += sq(cell.metrics.overall_accuracy - r.overall_mean);
            sb += sq(cell.metrics.building_accuracy - r.building_mean);
            sf += sq(cell.metrics.floor_accuracy - r.floor_mean);
        }
        const double dof = static_cast<double>(r.runs - 1);
        r.overall_sd = std::sqrt(so / dof);
        r.building_sd = std::sqrt(sb / dof);
        r.floor_sd = std::sqrt(sf / dof);
    }
    return rows;
}

SweepResult sweep_class_weights(const Dataset& data,
                                const PipelineConfig& base,
                                std::span<const WeightPair> pairs,
                                std::span<const std::uint64_t> seeds,
                                std::size_t jobs) {
    if (pairs.empty()) throw ConfigError("sweep needs at least one weight pair");
    if (seeds.empty()) throw ConfigError("sweep needs at least one seed");
    if (jobs == 0) throw ConfigError("sweep needs at least one worker");

    SweepResult result;
    result.cells.resize(pairs.size() * seeds.size());

    const auto run_cell = [&](std::size_t index) {
        const WeightPair& pair = pairs[index / seeds.size()];
        const std::uint64_t seed = seeds[index % seeds.size()];
        PipelineConfig cfg = base;
        cfg.classifier.building_weight = pair.building_weight;
        cfg.classifier.floor_weight = pair.floor_weight;
        cfg.seed = seed;
        const PipelineResult trained = train_hierarchical(data, cfg);
        const Dataset val = subset(data, trained.validation_indices);
        result.cells[index] = {pair.building_weight, pair.floor_weight, seed,
                               evaluate_model(trained.model, val)};
    };

    if (jobs == 1) {
        for (std::size_t i = 0; i < result.cells.size(); ++i) run_cell(i);
        return result;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < result.cells.size();
             i = next.fetch_add(1)) {
            try {
                run_cell(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> threads;
    const std::size_t n = std::min(jobs, result.cells.size());
    threads.reserve(n);
    for (std::size_t t = 0; t < n; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
    return result;
}

namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6e", v);
    return buf;
}

std::string weights_label(double b, double f) {
    const auto fmt = [](double v) {
        // weights are small grid values; print integers without decimals
        if (v == std::floor(v) && std::abs(v) < 1e6)
            return std::to_string(static_cast<long long>(v));
        return sci(v);
    };
    return "(" + fmt(b) + ", " + fmt(f) + ")";
}

}  // namespace

std::string render_report(const SweepResult& result) {
    if (result.cells.empty()) throw ConfigError("nothing to render");
    std::ostringstream out;
    out << "Weights (b, f)  Overall                      Building          "
           "           Floor\n";
    for (const SweepSummary& row : result.summarize()) {
        std::string label = weights_label(row.building_weight,
                                          row.floor_weight);
        label.resize(16, ' ');
        out << label;
        const auto col = [&](double mean, double sd) {
            std::string cell = sci(mean);
            if (row.runs > 1) cell += " +- " + sci(sd);
            cell.resize(29, ' ');
            out << cell;
        };
        col(row.overall_mean, row.overall_sd);
        col(row.building_mean, row.building_sd);
        out << sci(row.floor_mean);
        if (row.runs > 1) out << " +- " << sci(row.floor_sd);
        out << "\n";
    }
    return out.str();
}

std::string sweep_to_jsonl(const SweepResult& result) {
    std::string out;
    for (const SweepCell& cell : result.cells) {
        json line = {
            {"building_weight", cell.building_weight},
            {"floor_weight", cell.floor_weight},
            {"seed", cell.seed},
            {"building_acc", cell.metrics.building_accuracy},
            {"floor_acc", cell.metrics.floor_accuracy},
            {"overall_acc", cell.metrics.overall_accuracy},
            {"sample_count", cell.metrics.sample_count},
            {"confusion", cell.metrics.confusion},
        };
        out += line.dump();
        out += '\n';
    }
    return out;
}

SweepResult sweep_from_jsonl(const std::string& text) {
    SweepResult result;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            const json j = json::parse(line);
            SweepCell cell;
            cell.building_weight = j.at("building_weight").get<double>();
            cell.floor_weight = j.at("floor_weight").get<double>();
            cell.seed = j.at("seed").get<std::uint64_t>();
            cell.metrics.building_accuracy =
                j.at("building_acc").get<double>();
            cell.metrics.floor_accuracy = j.at("floor_acc").get<double>();
            cell.metrics.overall_accuracy = j.at("overall_acc").get<double>();
            cell.metrics.sample_count = j.at("sample_count").get<std::size_t>();
            cell.metrics.confusion =
                j.at("confusion")
                    .get<std::map<std::string,
                                  std::map<std::string, std::size_t>>>();
            result.cells.push_back(std::move(cell));
        } catch (const json::exception& e) {
            throw FormatError("sweep results line " +
                              std::to_string(line_no) + ": " + e.what());
        }
    }
    return result;
}

}  // namespace fingerloc
