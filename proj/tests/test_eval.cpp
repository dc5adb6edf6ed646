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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <sstream>

#include "campus_sim.hpp"
#include "doctest.h"
#include "fingerloc/errors.hpp"
#include "fingerloc/metrics.hpp"
#include "fingerloc/sweep.hpp"

using namespace fingerloc;
using fingerloc::testing::CampusConfig;
using fingerloc::testing::generate_campus;

using Pairs = std::vector<std::pair<int, int>>;

namespace {

/// Short pipeline settings: sweep tests exercise plumbing, not accuracy.
PipelineConfig quick_config() {
    PipelineConfig cfg = PipelineConfig::building_floor_defaults();
    cfg.sae.epochs = 2;
    cfg.classifier.epochs = 3;
    return cfg;
}

SweepResult fake_table_result() {
    SweepResult r;
    const double overall[] = {0.8991899, 0.9226923, 0.9118912, 0.9333933,
                              0.9308931};
    const double building[] = {0.9918992, 0.9972997, 0.9936994, 0.9972997,
                               0.9963996};
    const double floor[] = {0.9057906, 0.9244924, 0.9155916, 0.9342934,
                            0.9333933};
    const double weights[] = {1, 2, 5, 10, 20};
    for (int i = 0; i < 5; ++i) {
        SweepCell cell;
        cell.building_weight = weights[i];
        cell.floor_weight = 1;
        cell.seed = 1;
        cell.metrics.overall_accuracy = overall[i];
        cell.metrics.building_accuracy = building[i];
        cell.metrics.floor_accuracy = floor[i];
        cell.metrics.sample_count = 1111;
        cell.metrics.confusion = {{"0-0", {{"0-0", 1000}, {"0-1", 111}}}};
        r.cells.push_back(std::move(cell));
    }
    return r;
}

}  // namespace

TEST_CASE("compute_metrics on building/floor pairs") {
    SUBCASE("all correct") {
        const Pairs p = {{0, 0}, {1, 2}, {2, 4}};
        const MetricsReport m = compute_metrics(p, p);
        CHECK(m.building_accuracy == 1.0);
        CHECK(m.floor_accuracy == 1.0);
        CHECK(m.overall_accuracy == 1.0);
        CHECK(m.sample_count == 3);
    }

    SUBCASE("two of four have only the floor wrong") {
        const Pairs truth = {{0, 0}, {0, 1}, {1, 2}, {2, 3}};
        const Pairs pred = {{0, 0}, {0, 2}, {1, 3}, {2, 3}};
        const MetricsReport m = compute_metrics(pred, truth);
        CHECK(m.building_accuracy == 1.0);
        CHECK(m.floor_accuracy == 0.5);
        CHECK(m.overall_accuracy == 0.5);

        // confusion counts: truth "0-1" predicted as "0-2", etc.
        CHECK(m.confusion.at("0-1").at("0-2") == 1);
        CHECK(m.confusion.at("1-2").at("1-3") == 1);
        CHECK(m.confusion.at("0-0").at("0-0") == 1);
        CHECK(m.confusion.at("2-3").at("2-3") == 1);
        std::size_t total = 0;
        for (const auto& [truth_name, row] : m.confusion)
            for (const auto& [pred_name, count] : row) total += count;
        CHECK(total == m.sample_count);
    }

    SUBCASE("mixed errors keep overall below both marginals") {
        // one row wrong in building only, one in floor only
        const Pairs truth = {{0, 0}, {1, 1}};
        const Pairs pred = {{1, 0}, {1, 2}};
        const MetricsReport m = compute_metrics(pred, truth);
        CHECK(m.building_accuracy == 0.5);
        CHECK(m.floor_accuracy == 0.5);
        CHECK(m.overall_accuracy == 0.0);
    }

    SUBCASE("random data never violates the envelope") {
        Rng rng(17);
        Pairs truth, pred;
        for (int i = 0; i < 500; ++i) {
            truth.emplace_back(int(rng.below(3)), int(rng.below(5)));
            pred.emplace_back(int(rng.below(3)), int(rng.below(5)));
        }
        const MetricsReport m = compute_metrics(pred, truth);
        CHECK(m.overall_accuracy <=
              std::min(m.building_accuracy, m.floor_accuracy));
        std::size_t total = 0;
        for (const auto& [t, row] : m.confusion)
            for (const auto& [p, count] : row) total += count;
        CHECK(total == 500);
    }

    SUBCASE("permutation invariance") {
        Rng rng(18);
        Pairs truth, pred;
        for (int i = 0; i < 100; ++i) {
            truth.emplace_back(int(rng.below(3)), int(rng.below(5)));
            pred.emplace_back(int(rng.below(3)), int(rng.below(5)));
        }
        const MetricsReport before = compute_metrics(pred, truth);
        std::vector<std::size_t> order(100);
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        rng.shuffle(order);
        Pairs truth2(100), pred2(100);
        for (std::size_t i = 0; i < order.size(); ++i) {
            truth2[i] = truth[order[i]];
            pred2[i] = pred[order[i]];
        }
        CHECK(compute_metrics(pred2, truth2) == before);
    }

    SUBCASE("errors") {
        CHECK_THROWS_AS(compute_metrics(Pairs{}, Pairs{}), ConfigError);
        CHECK_THROWS_AS(compute_metrics(Pairs{{0, 0}}, Pairs{}), ShapeError);
    }
}

TEST_CASE("compute_metrics on location strings") {
    const std::vector<std::string> truth = {"R401", "R402", "R403", "R401",
                                            "R405"};
    const std::vector<std::string> pred = {"R401", "R402", "R401", "R401",
                                           "R404"};
    const MetricsReport m = compute_metrics(pred, truth);
    CHECK(m.overall_accuracy == 0.6);
    CHECK(m.building_accuracy == 0.6);  // single label: all three coincide
    CHECK(m.floor_accuracy == 0.6);
    CHECK(m.confusion.at("R403").at("R401") == 1);
    CHECK(m.confusion.at("R405").at("R404") == 1);
    CHECK(m.confusion.at("R401").at("R401") == 2);
    CHECK_THROWS_AS(compute_metrics(std::vector<std::string>{},
                                    std::vector<std::string>{}),
                    ConfigError);
}

TEST_CASE("sweep: one cell equals a direct pipeline run") {
    const Dataset data = generate_campus(CampusConfig::tiny());
    const PipelineConfig base = quick_config();

    const WeightPair pair{10, 1};
    const std::uint64_t seed = 7;
    const SweepResult swept = sweep_class_weights(
        data, base, std::span(&pair, 1), std::span(&seed, 1));
    REQUIRE(swept.cells.size() == 1);

    PipelineConfig direct = base;
    direct.classifier.building_weight = 10;
    direct.classifier.floor_weight = 1;
    direct.seed = 7;
    const PipelineResult run = train_hierarchical(data, direct);
    const MetricsReport expect =
        evaluate_model(run.model, subset(data, run.validation_indices));

    CHECK(swept.cells[0].metrics == expect);
    CHECK(swept.cells[0].building_weight == 10.0);
    CHECK(swept.cells[0].floor_weight == 1.0);
    CHECK(swept.cells[0].seed == 7);
}

TEST_CASE("sweep grid, aggregation and concurrency") {
    const Dataset data = generate_campus(CampusConfig::tiny());
    const PipelineConfig base = quick_config();
    const std::vector<WeightPair> pairs = {{1, 1}, {10, 1}};
    const std::vector<std::uint64_t> seeds = {3, 4, 5};

    const SweepResult serial = sweep_class_weights(data, base, pairs, seeds);
    REQUIRE(serial.cells.size() == 6);

    // pair-major layout with the seed set repeated per pair
    for (std::size_t i = 0; i < serial.cells.size(); ++i) {
        CHECK(serial.cells[i].building_weight == pairs[i / 3].building_weight);
        CHECK(serial.cells[i].seed == seeds[i % 3]);
    }

    // within one seed, every pair sees the same validation split, so the
    // sample counts agree
    CHECK(serial.cells[0].metrics.sample_count ==
          serial.cells[3].metrics.sample_count);

    const std::vector<SweepSummary> rows = serial.summarize();
    REQUIRE(rows.size() == 2);
    for (std::size_t p = 0; p < 2; ++p) {
        CHECK(rows[p].runs == 3);
        double mean = 0.0;
        for (std::size_t s = 0; s < 3; ++s)
            mean += serial.cells[p * 3 + s].metrics.overall_accuracy;
        CHECK(rows[p].overall_mean == doctest::Approx(mean / 3).epsilon(1e-12));
        CHECK(rows[p].overall_sd >= 0.0);
    }

    // scheduling across workers must not change a single bit
    const SweepResult threaded =
        sweep_class_weights(data, base, pairs, seeds, 4);
    CHECK(threaded == serial);

    CHECK_THROWS_AS(
        sweep_class_weights(data, base, std::span<const WeightPair>{}, seeds),
        ConfigError);
    CHECK_THROWS_AS(sweep_class_weights(
                        data, base, pairs, std::span<const std::uint64_t>{}),
                    ConfigError);
    CHECK_THROWS_AS(sweep_class_weights(data, base, pairs, seeds, 0),
                    ConfigError);
}

TEST_CASE("default weight grid matches the published table") {
    const std::vector<WeightPair> grid = default_weight_grid();
    REQUIRE(grid.size() == 5);
    CHECK(grid[0] == WeightPair{1, 1});
    CHECK(grid[1] == WeightPair{2, 1});
    CHECK(grid[2] == WeightPair{5, 1});
    CHECK(grid[3] == WeightPair{10, 1});
    CHECK(grid[4] == WeightPair{20, 1});
}

TEST_CASE("report rendering") {
    const SweepResult result = fake_table_result();
    const std::string text = render_report(result);

    // one header plus five data rows
    CHECK(std::count(text.begin(), text.end(), '\n') == 6);
    CHECK(text.find("(1, 1)") != std::string::npos);
    CHECK(text.find("(20, 1)") != std::string::npos);

    // seven significant digits, scientific notation
    CHECK(text.find("9.333933e-01") != std::string::npos);
    CHECK(text.find("8.991899e-01") != std::string::npos);
    CHECK(text.find("9.972997e-01") != std::string::npos);

    // column order: Overall, then Building, then Floor
    const std::size_t o = text.find("Overall");
    const std::size_t b = text.find("Building");
    const std::size_t f = text.find("Floor");
    REQUIRE(o != std::string::npos);
    REQUIRE(b != std::string::npos);
    REQUIRE(f != std::string::npos);
    CHECK(o < b);
    CHECK(b < f);

    // deterministic
    CHECK(render_report(result) == text);
    CHECK_THROWS_AS(render_report(SweepResult{}), ConfigError);
}

TEST_CASE("sweep results round-trip through the line format") {
    SweepResult result = fake_table_result();
    result.cells[2].seed = 42;  // exercise a non-default seed
    const std::string jsonl = sweep_to_jsonl(result);

    // one line per cell, each a self-contained record
    CHECK(std::count(jsonl.begin(), jsonl.end(), '\n') == 5);
    CHECK(jsonl.find("\"building_weight\"") != std::string::npos);
    CHECK(jsonl.find("\"overall_acc\"") != std::string::npos);

    const SweepResult back = sweep_from_jsonl(jsonl);
    CHECK(back == result);

    // blank lines are tolerated, garbage is not
    CHECK(sweep_from_jsonl(jsonl + "\n") == result);
    CHECK_THROWS_AS(sweep_from_jsonl("{\"building_weight\": oops}"),
                    FormatError);
    CHECK_THROWS_AS(sweep_from_jsonl("{\"floor_weight\": 1.0}"), FormatError);
}
