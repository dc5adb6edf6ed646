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
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <string>

#include "campus_sim.hpp"
#include "doctest.h"
#include "fingerloc/model_io.hpp"
#include "fingerloc/store.hpp"
#include "fingerloc/sweep.hpp"
#include "httplib.h"
#include "json.hpp"
#include "temp_dir.hpp"

using namespace fingerloc;
using fingerloc::testing::read_file;
using fingerloc::testing::TempDir;
using json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

const char* cli_binary() {
    const char* bin = std::getenv("FINGERLOC_CLI");
    REQUIRE_MESSAGE(bin != nullptr,
                    "FINGERLOC_CLI must point at the fingerloc binary");
    return bin;
}

RunResult run_cli(const TempDir& dir, const std::string& args) {
    static int counter = 0;
    const std::string out_path =
        dir.file("cli_out_" + std::to_string(counter) + ".txt");
    const std::string err_path =
        dir.file("cli_err_" + std::to_string(counter) + ".txt");
    ++counter;
    const std::string cmd = std::string(cli_binary()) + " " + args + " > " +
                            out_path + " 2> " + err_path;
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_file(out_path);
    r.err = read_file(err_path);
    return r;
}

/// Flags for a floor-level training run small enough for a unit test.
const std::string kQuickFloorFlags =
    "--mode floor-level --sae-layers 16,8,16 --sae-epochs 5 --hidden 12 "
    "--optimizer adam --epochs 15 --dropout 0.2";

std::string make_synth_store(const TempDir& dir, const std::string& name) {
    const std::string path = dir.file(name);
    const RunResult r = run_cli(
        dir, "synth --out " + path + " --samples 20 --sigma 2 --seed 7");
    REQUIRE(r.exit_code == 0);
    return path;
}

std::string make_campus_csv(const TempDir& dir) {
    const auto campus = fingerloc::testing::generate_campus(
        fingerloc::testing::CampusConfig::tiny());
    return dir.write("tiny_uji.csv", fingerloc::testing::campus_csv(campus));
}

}  // namespace

TEST_CASE("synth generates a deterministic store") {
    TempDir dir;
    const std::string a = make_synth_store(dir, "a.csv");
    const std::string b = make_synth_store(dir, "b.csv");
    CHECK(read_file(a) == read_file(b));

    const Dataset data = load_store(a);
    CHECK(data.size() == 7 * 20);
    CHECK(data.ap_count() == 48);
    CHECK(data.kind == DatasetKind::FloorLevel);
}

TEST_CASE("train writes model and history; identical flags, identical bytes") {
    TempDir dir;
    const std::string store = make_synth_store(dir, "train.csv");
    const std::string m1 = dir.file("m1.fplm");
    const std::string m2 = dir.file("m2.fplm");

    const RunResult r1 = run_cli(dir, "train --data " + store + " " +
                                          kQuickFloorFlags + " --out " + m1);
    REQUIRE_MESSAGE(r1.exit_code == 0, r1.err);
    CHECK(r1.out.find("validation: accuracy") != std::string::npos);

    const RunResult r2 = run_cli(dir, "train --data " + store + " " +
                                          kQuickFloorFlags + " --out " + m2);
    REQUIRE(r2.exit_code == 0);
    CHECK(read_file(m1) == read_file(m2));

    const TrainedModel model = load_model(m1);
    CHECK(model.mode == ModelMode::FloorLevel);
    CHECK(model.classifier_history.size() == 15);

    // one JSON object per classifier epoch, numbered from 1
    const std::string history = read_file(m1 + ".history.jsonl");
    std::size_t lines = 0;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = history.find('\n', pos);
        if (next == std::string::npos) break;
        const json record = json::parse(history.substr(pos, next - pos));
        ++lines;
        CHECK(record["epoch"] == lines);
        CHECK(record.contains("train_loss"));
        CHECK(record.contains("train_acc"));
        CHECK(record.contains("val_loss"));
        CHECK(record.contains("val_acc"));
        pos = next + 1;
    }
    CHECK(lines == 15);

    // a different seed must change the model bytes
    const std::string m3 = dir.file("m3.fplm");
    const RunResult r3 =
        run_cli(dir, "train --data " + store + " " + kQuickFloorFlags +
                         " --seed 9 --out " + m3);
    REQUIRE(r3.exit_code == 0);
    CHECK(read_file(m1) != read_file(m3));
}

TEST_CASE("bare train commands echo the published defaults") {
    TempDir dir;

    SUBCASE("hierarchical") {
        const std::string csv = make_campus_csv(dir);
        const RunResult r =
            run_cli(dir, "train --data " + csv + " --mode hierarchical --out " +
                             dir.file("h.fplm"));
        REQUIRE_MESSAGE(r.exit_code == 0, r.err);
        CHECK(r.out.find("sae: 42-64-8-64-42 relu, adam lr 0.001, 20 epochs, "
                         "batch 10") != std::string::npos);
        CHECK(r.out.find("classifier: hidden none relu, dropout 0.2, adam lr "
                         "0.001, 20 epochs, batch 10, weights (10, 1)") !=
              std::string::npos);
        CHECK(r.out.find("split: 0.7, seed 1") != std::string::npos);
        CHECK(r.out.find("validation: overall") != std::string::npos);
    }

    SUBCASE("floor-level") {
        const std::string store = make_synth_store(dir, "defaults.csv");
        const RunResult r = run_cli(
            dir, "train --data " + store + " --mode floor-level --out " +
                     dir.file("f.fplm"));
        REQUIRE_MESSAGE(r.exit_code == 0, r.err);
        CHECK(r.out.find("sae: 48-128-64-32-64-128-48 tanh, adam lr 0.001, "
                         "20 epochs, batch 10") != std::string::npos);
        CHECK(r.out.find("classifier: hidden 64-32 relu, dropout 0.5, "
                         "adagrad lr 0.01, 30 epochs, batch 10") !=
              std::string::npos);
        CHECK(r.out.find("split: 0.75, seed 1") != std::string::npos);
    }
}

TEST_CASE("evaluate scores a saved model") {
    TempDir dir;
    const std::string store = make_synth_store(dir, "eval.csv");
    const std::string model = dir.file("m.fplm");
    REQUIRE(run_cli(dir, "train --data " + store + " " + kQuickFloorFlags +
                             " --out " + model)
                .exit_code == 0);

    SUBCASE("metrics file and stdout") {
        const std::string metrics = dir.file("metrics.json");
        const RunResult r = run_cli(dir, "evaluate --model " + model +
                                             " --data " + store + " --out " +
                                             metrics);
        REQUIRE_MESSAGE(r.exit_code == 0, r.err);
        CHECK(r.out.find("accuracy") != std::string::npos);
        const json parsed = json::parse(read_file(metrics));
        CHECK(parsed["sample_count"] == 140);
        CHECK(parsed["overall_accuracy"].is_number());
        CHECK(parsed["confusion"].is_object());
    }

    SUBCASE("AP layout mismatch is a diagnosed failure") {
        const std::string other = make_campus_csv(dir);
        const RunResult r = run_cli(
            dir, "evaluate --model " + model + " --data " + other);
        CHECK(r.exit_code == 1);
        CHECK(r.err.find("AP order mismatch") != std::string::npos);
        CHECK(r.err.find("48") != std::string::npos);
        CHECK(r.err.find("42") != std::string::npos);
    }

    SUBCASE("seeded trials print mean +- sd") {
        const RunResult r = run_cli(
            dir, "evaluate --data " + store + " --seeds 1,2 " +
                     kQuickFloorFlags);
        REQUIRE_MESSAGE(r.exit_code == 0, r.err);
        CHECK(r.out.find("seed 1:") != std::string::npos);
        CHECK(r.out.find("seed 2:") != std::string::npos);
        CHECK(r.out.find("mean accuracy") != std::string::npos);
        CHECK(r.out.find("+-") != std::string::npos);
    }
}

TEST_CASE("sweep renders the weight table and saves replayable results") {
    TempDir dir;
    const std::string csv = make_campus_csv(dir);
    const std::string jsonl = dir.file("sweep.jsonl");
    const std::string report = dir.file("sweep.txt");
    const RunResult r = run_cli(
        dir, "sweep --data " + csv +
                 " --weights 1:1,3:1 --seeds 1 --jobs 2 --sae-epochs 5 "
                 "--epochs 12 --out " + jsonl + " --report " + report);
    REQUIRE_MESSAGE(r.exit_code == 0, r.err);

    const std::string table = read_file(report);
    CHECK(r.out.find(table) != std::string::npos);
    const std::size_t overall = table.find("Overall");
    const std::size_t building = table.find("Building");
    const std::size_t floor = table.find("Floor");
    REQUIRE(overall != std::string::npos);
    CHECK(overall < building);
    CHECK(building < floor);
    CHECK(table.find("(1, 1)") != std::string::npos);
    CHECK(table.find("(3, 1)") != std::string::npos);

    const SweepResult replayed = sweep_from_jsonl(read_file(jsonl));
    REQUIRE(replayed.cells.size() == 2);
    CHECK(replayed.cells[0].building_weight == 1.0);
    CHECK(replayed.cells[1].building_weight == 3.0);
    CHECK(replayed.cells[0].seed == 1);
}

TEST_CASE("ingest converts the public CSV format into the store") {
    TempDir dir;
    const std::string csv = make_campus_csv(dir);
    const std::string a = dir.file("store_a.csv");
    const std::string b = dir.file("store_b.csv");
    REQUIRE(run_cli(dir, "ingest --input " + csv + " --out " + a).exit_code ==
            0);
    REQUIRE(run_cli(dir, "ingest --input " + csv + " --out " + b).exit_code ==
            0);
    CHECK(read_file(a) == read_file(b));

    const Dataset store = load_store(a);
    CHECK(store.size() == 420);
    CHECK(store.ap_count() == 42);
    CHECK(store.kind == DatasetKind::FloorLevel);
    // labels become "building-floor" pair names
    REQUIRE(store.records[0].location_id.has_value());
    const std::string& label = *store.records[0].location_id;
    CHECK(label.find('-') != std::string::npos);
    for (const FingerprintRecord& rec : store.records)
        REQUIRE(rec.location_id.has_value());
}

TEST_CASE("exit codes separate usage errors from runtime failures") {
    TempDir dir;
    const std::string store = make_synth_store(dir, "codes.csv");

    CHECK(run_cli(dir, "bogus").exit_code == 2);
    CHECK(run_cli(dir, "").exit_code == 2);
    CHECK(run_cli(dir, "train").exit_code == 2);
    CHECK(run_cli(dir, "train --data " + store + " --split 1.5").exit_code ==
          2);
    CHECK(run_cli(dir, "train --data " + dir.file("missing.csv")).exit_code ==
          1);
    CHECK(run_cli(dir, "evaluate --data " + store).exit_code == 2);
    CHECK(run_cli(dir, "serve --bind bad:port:text").exit_code == 2);
    CHECK(run_cli(dir, "--help").exit_code == 0);
    CHECK(run_cli(dir, "train --help").exit_code == 0);
    CHECK(run_cli(dir, "--version").exit_code == 0);
}

TEST_CASE("serve lifecycle under the CLI") {
    TempDir dir;
    const std::string store = make_synth_store(dir, "serve.csv");
    const std::string model = dir.file("serve.fplm");
    REQUIRE(run_cli(dir, "train --data " + store + " " + kQuickFloorFlags +
                             " --out " + model)
                .exit_code == 0);

    const int port = 38000 + static_cast<int>(::getpid() % 2000);
    const std::string pid_file = dir.file("serve.pid");
    const std::string log_file = dir.file("serve.log");
    const std::string cmd = std::string(cli_binary()) +
                            " serve --bind 127.0.0.1:" + std::to_string(port) +
                            " --model " + model + " > " + log_file +
                            " 2>&1 & echo $! > " + pid_file;
    REQUIRE(std::system(cmd.c_str()) == 0);

    bool up = false;
    for (int i = 0; i < 100 && !up; ++i) {
        httplib::Client probe("127.0.0.1", port);
        probe.set_connection_timeout(0, 200000);
        if (const auto res = probe.Get("/health"))
            up = res->status == 200;
        else
            ::usleep(100000);
    }
    CHECK(up);

    REQUIRE(std::system(("kill -TERM $(cat " + pid_file + ")").c_str()) == 0);
    bool down = false;
    for (int i = 0; i < 100 && !down; ++i) {
        httplib::Client probe("127.0.0.1", port);
        probe.set_connection_timeout(0, 200000);
        if (!probe.Get("/health"))
            down = true;
        else
            ::usleep(100000);
    }
    CHECK(down);
}
