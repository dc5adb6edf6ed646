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
#include <atomic>
#include <chrono>
#include <cmath>
#include <csignal>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "fingerloc/codec.hpp"
#include "fingerloc/dataset.hpp"
#include "fingerloc/errors.hpp"
#include "fingerloc/metrics.hpp"
#include "fingerloc/model_io.hpp"
#include "fingerloc/pipeline.hpp"
#include "fingerloc/service.hpp"
#include "fingerloc/store.hpp"
#include "fingerloc/sweep.hpp"
#include "fingerloc/synthetic.hpp"
#include "fingerloc/ujiindoorloc.hpp"
#include "json.hpp"

namespace {

using namespace fingerloc;
using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

// ---------------------------------------------------------------- parsing

std::vector<std::string> split_on(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) out.push_back(item);
    return out;
}

/// "64,8,64" -> {64, 8, 64}; "" and "none" mean an empty list.
std::vector<std::size_t> parse_size_list(const std::string& text) {
    if (text.empty() || text == "none") return {};
    std::vector<std::size_t> out;
    for (const std::string& item : split_on(text, ',')) {
        try {
            const long long v = std::stoll(item);
            if (v <= 0) throw std::invalid_argument("non-positive");
            out.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw ConfigError("bad layer width '" + item + "' in '" + text +
                              "'");
        }
    }
    return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    for (const std::string& item : split_on(text, ',')) {
        try {
            out.push_back(std::stoull(item));
        } catch (const std::exception&) {
            throw ConfigError("bad seed '" + item + "' in '" + text + "'");
        }
    }
    if (out.empty()) throw ConfigError("empty seed list");
    return out;
}

/// "1:1,3:1" -> {(1,1), (3,1)}.
std::vector<WeightPair> parse_weight_list(const std::string& text) {
    std::vector<WeightPair> out;
    for (const std::string& item : split_on(text, ',')) {
        const std::vector<std::string> parts = split_on(item, ':');
        if (parts.size() != 2)
            throw ConfigError("weight pair '" + item +
                              "' is not of the form building:floor");
        try {
            out.push_back({std::stod(parts[0]), std::stod(parts[1])});
        } catch (const std::exception&) {
            throw ConfigError("bad weight pair '" + item + "'");
        }
    }
    if (out.empty()) throw ConfigError("empty weight list");
    return out;
}

/// "127.0.0.1:8080" -> (host, port). A bare host keeps the default port.
std::pair<std::string, int> parse_bind(const std::string& text,
                                       int default_port) {
    const std::size_t colon = text.rfind(':');
    if (colon == std::string::npos) return {text, default_port};
    const std::string host = text.substr(0, colon);
    const std::string port_text = text.substr(colon + 1);
    try {
        const int port = std::stoi(port_text);
        if (port < 0 || port > 65535) throw std::out_of_range("port");
        if (host.empty()) throw std::invalid_argument("host");
        return {host, port};
    } catch (const std::exception&) {
        throw ConfigError("bad bind address '" + text +
                          "' (expected host:port)");
    }
}

ModelMode parse_mode(std::string text) {
    for (char& c : text)
        if (c == '-') c = '_';
    return model_mode_from_string(text);
}

// ------------------------------------------------------------ data access

/// Loads either format by peeking at the header: the local store starts
/// with its fixed `location_id` column, anything else is treated as a
/// UJIIndoorLoc-format CSV.
Dataset load_any(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open dataset: " + path);
    std::string header;
    std::getline(in, header);
    in.close();
    if (header.rfind("location_id,", 0) == 0) return load_store(path);
    return parse_ujiindoorloc(path);
}

std::string layers_text(const std::vector<std::size_t>& layers) {
    if (layers.empty()) return "none";
    std::string out;
    for (std::size_t i = 0; i < layers.size(); ++i) {
        if (i) out += "-";
        out += std::to_string(layers[i]);
    }
    return out;
}

// -------------------------------------------------------- training flags

struct TrainFlags {
    std::string data;
    std::string mode = "hierarchical";
    std::optional<std::string> sae_layers;
    std::optional<std::string> sae_activation;
    std::optional<std::string> sae_optimizer;
    std::optional<double> sae_lr;
    std::optional<std::size_t> sae_epochs;
    std::optional<std::string> hidden;
    std::optional<std::string> activation;
    std::optional<std::string> optimizer;
    std::optional<double> lr;
    std::optional<double> dropout;
    std::optional<std::size_t> epochs;
    std::optional<std::size_t> batch;
    std::optional<double> building_weight;
    std::optional<double> floor_weight;
    std::optional<double> split;
    bool freeze_encoder = false;
    std::uint64_t seed = 1;
};

void add_train_flags(CLI::App* cmd, TrainFlags& f, bool with_mode) {
    if (with_mode)
        cmd->add_option("--mode", f.mode,
                        "hierarchical | flattened | floor-level")
            ->default_str("hierarchical");
    cmd->add_option("--sae-layers", f.sae_layers,
                    "autoencoder hidden widths, e.g. 64,8,64");
    cmd->add_option("--sae-activation", f.sae_activation,
                    "relu | tanh | sigmoid");
    cmd->add_option("--sae-optimizer", f.sae_optimizer, "adam | adagrad");
    cmd->add_option("--sae-lr", f.sae_lr, "autoencoder learning rate");
    cmd->add_option("--sae-epochs", f.sae_epochs,
                    "autoencoder pretraining epochs");
    cmd->add_option("--hidden", f.hidden,
                    "classifier hidden widths, e.g. 64,32 ('none' for a "
                    "linear head)");
    cmd->add_option("--activation", f.activation,
                    "classifier activation: relu | tanh | sigmoid");
    cmd->add_option("--optimizer", f.optimizer,
                    "classifier optimizer: adam | adagrad");
    cmd->add_option("--lr", f.lr, "classifier learning rate");
    cmd->add_option("--dropout", f.dropout, "dropout rate in [0, 1)");
    cmd->add_option("--epochs", f.epochs, "classifier training epochs");
    cmd->add_option("--batch", f.batch, "mini-batch size (both phases)");
    cmd->add_option("--building-weight", f.building_weight,
                    "loss weight on building outputs (hierarchical)");
    cmd->add_option("--floor-weight", f.floor_weight,
                    "loss weight on floor outputs (hierarchical)");
    cmd->add_option("--split", f.split, "training fraction in (0, 1)");
    cmd->add_flag("--freeze-encoder", f.freeze_encoder,
                  "keep pretrained encoder weights fixed");
    cmd->add_option("--seed", f.seed, "master RNG seed")->default_str("1");
}

/// Mode defaults first, explicit flags on top. Hierarchical training
/// defaults to the (10, 1) class weights of the best sweep row; every other
/// value matches the mode's published parameter table.
PipelineConfig resolve_config(ModelMode mode, const TrainFlags& f) {
    PipelineConfig cfg = mode == ModelMode::FloorLevel
                             ? PipelineConfig::floor_level_defaults()
                             : PipelineConfig::building_floor_defaults();
    if (mode == ModelMode::Hierarchical) {
        cfg.classifier.building_weight = 10.0;
        cfg.classifier.floor_weight = 1.0;
    }

    if (f.sae_layers) cfg.sae.hidden_layers = parse_size_list(*f.sae_layers);
    if (f.sae_activation)
        cfg.sae.activation = activation_from_string(*f.sae_activation);
    if (f.sae_optimizer) {
        // A new optimizer kind brings its own default learning rate;
        // an explicit --sae-lr below still wins.
        cfg.sae.optimizer =
            optimizer_from_string(*f.sae_optimizer) == OptimizerKind::ADAM
                ? OptimizerConfig::adam()
                : OptimizerConfig::adagrad();
    }
    if (f.sae_lr) cfg.sae.optimizer.learning_rate = *f.sae_lr;
    if (f.sae_epochs) cfg.sae.epochs = *f.sae_epochs;

    if (f.hidden) cfg.classifier.hidden_layers = parse_size_list(*f.hidden);
    if (f.activation)
        cfg.classifier.activation = activation_from_string(*f.activation);
    if (f.optimizer) {
        cfg.classifier.optimizer =
            optimizer_from_string(*f.optimizer) == OptimizerKind::ADAM
                ? OptimizerConfig::adam()
                : OptimizerConfig::adagrad();
    }
    if (f.lr) cfg.classifier.optimizer.learning_rate = *f.lr;
    if (f.dropout) cfg.classifier.dropout_rate = *f.dropout;
    if (f.epochs) cfg.classifier.epochs = *f.epochs;
    if (f.batch) {
        cfg.sae.batch_size = *f.batch;
        cfg.classifier.batch_size = *f.batch;
    }
    if (f.building_weight) cfg.classifier.building_weight = *f.building_weight;
    if (f.floor_weight) cfg.classifier.floor_weight = *f.floor_weight;
    if (f.split) cfg.train_ratio = *f.split;
    cfg.classifier.freeze_encoder = f.freeze_encoder;
    cfg.seed = f.seed;
    return cfg;
}

PipelineResult run_training(ModelMode mode, const Dataset& data,
                            const PipelineConfig& cfg) {
    switch (mode) {
        case ModelMode::Hierarchical: return train_hierarchical(data, cfg);
        case ModelMode::Flattened: return train_flattened(data, cfg);
        case ModelMode::FloorLevel: return train_floor_level(data, cfg);
    }
    throw ConfigError("unknown model mode");
}

void print_config(std::ostream& out, ModelMode mode, std::size_t input_dim,
                  const PipelineConfig& cfg) {
    const OptimizerConfig& so = cfg.sae.optimizer;
    const OptimizerConfig& co = cfg.classifier.optimizer;
    out << "mode: " << to_string(mode) << "\n"
        << "sae: " << input_dim << "-" << layers_text(cfg.sae.hidden_layers)
        << "-" << input_dim << " " << to_string(cfg.sae.activation) << ", "
        << to_string(so.kind) << " lr " << so.learning_rate << ", "
        << cfg.sae.epochs << " epochs, batch " << cfg.sae.batch_size << "\n"
        << "classifier: hidden " << layers_text(cfg.classifier.hidden_layers)
        << " " << to_string(cfg.classifier.activation) << ", dropout "
        << cfg.classifier.dropout_rate << ", " << to_string(co.kind) << " lr "
        << co.learning_rate << ", " << cfg.classifier.epochs
        << " epochs, batch " << cfg.classifier.batch_size;
    if (mode == ModelMode::Hierarchical)
        out << ", weights (" << cfg.classifier.building_weight << ", "
            << cfg.classifier.floor_weight << ")";
    if (cfg.classifier.freeze_encoder) out << ", frozen encoder";
    out << "\nsplit: " << cfg.train_ratio << ", seed " << cfg.seed << "\n";
}

// ----------------------------------------------------------- file output

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << content;
    if (!out) throw IoError("failed writing " + path);
}

/// One JSON object per epoch. Non-finite values (the autoencoder phase has
/// no accuracy) serialize as null.
std::string history_jsonl(const std::vector<EpochStats>& history) {
    std::string out;
    for (const EpochStats& e : history) {
        json line;
        line["epoch"] = e.epoch;
        line["train_loss"] = e.train_loss;
        line["train_acc"] = e.train_accuracy;
        line["val_loss"] = e.val_loss;
        line["val_acc"] = e.val_accuracy;
        out += line.dump();
        out += '\n';
    }
    return out;
}

json metrics_json(const MetricsReport& report) {
    json j;
    j["building_accuracy"] = report.building_accuracy;
    j["floor_accuracy"] = report.floor_accuracy;
    j["overall_accuracy"] = report.overall_accuracy;
    j["sample_count"] = report.sample_count;
    json confusion = json::object();
    for (const auto& [truth, row] : report.confusion) {
        json cells = json::object();
        for (const auto& [pred, count] : row) cells[pred] = count;
        confusion[truth] = cells;
    }
    j["confusion"] = confusion;
    return j;
}

void print_metrics(std::ostream& out, const std::string& prefix,
                   ModelMode mode, const MetricsReport& report) {
    char buf[160];
    if (mode == ModelMode::FloorLevel) {
        std::snprintf(buf, sizeof buf, "%saccuracy %.6f  (%zu samples)",
                      prefix.c_str(), report.overall_accuracy,
                      report.sample_count);
    } else {
        std::snprintf(buf, sizeof buf,
                      "%soverall %.6f  building %.6f  floor %.6f  "
                      "(%zu samples)",
                      prefix.c_str(), report.overall_accuracy,
                      report.building_accuracy, report.floor_accuracy,
                      report.sample_count);
    }
    out << buf << "\n";
}

// ------------------------------------------------------------- commands

struct TrainArgs {
    TrainFlags flags;
    std::string model_out = "model.fplm";
    std::string history_out;
    std::string sae_history_out;
};

int cmd_train(const TrainArgs& args) {
    const ModelMode mode = parse_mode(args.flags.mode);
    const Dataset data = load_any(args.flags.data);
    const PipelineConfig cfg = resolve_config(mode, args.flags);

    std::cout << "loaded " << data.size() << " records, " << data.ap_count()
              << " APs (" << to_string(data.kind) << ")\n";
    print_config(std::cout, mode, data.ap_count(), cfg);

    const PipelineResult result = run_training(mode, data, cfg);
    save_model(result.model, args.model_out);

    const std::string history_path = args.history_out.empty()
                                         ? args.model_out + ".history.jsonl"
                                         : args.history_out;
    write_text(history_path, history_jsonl(result.model.classifier_history));
    if (!args.sae_history_out.empty())
        write_text(args.sae_history_out,
                   history_jsonl(result.model.sae_history));

    const MetricsReport report = evaluate_model(
        result.model, subset(data, result.validation_indices));
    std::cout << "trained on " << result.train_indices.size()
              << " records, validated on "
              << result.validation_indices.size() << "\n";
    print_metrics(std::cout, "validation: ", mode, report);
    std::cout << "model: " << args.model_out << "\n"
              << "history: " << history_path << "\n";
    return kExitOk;
}

struct EvaluateArgs {
    TrainFlags flags;
    std::string model_path;
    std::string seeds_text;
    std::string metrics_out = "metrics.json";
};

/// Side-by-side AP lists differ: say exactly where.
std::string ap_mismatch_message(const std::vector<std::string>& model_aps,
                                const std::vector<std::string>& data_aps) {
    std::string msg = "AP order mismatch: model expects " +
                      std::to_string(model_aps.size()) +
                      " APs, dataset provides " +
                      std::to_string(data_aps.size());
    const std::size_t n = std::min(model_aps.size(), data_aps.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (model_aps[i] != data_aps[i]) {
            msg += "; first difference at column " + std::to_string(i) +
                   " (model '" + model_aps[i] + "', dataset '" + data_aps[i] +
                   "')";
            break;
        }
    }
    msg += ". Evaluate needs data with the exact AP layout the model was "
           "trained on.";
    return msg;
}

int cmd_evaluate(const EvaluateArgs& args) {
    if (!args.seeds_text.empty()) {
        // Fresh trials: train once per seed and aggregate the validation
        // metrics as mean +- sample sd.
        const std::vector<std::uint64_t> seeds =
            parse_seed_list(args.seeds_text);
        const ModelMode mode = parse_mode(args.flags.mode);
        const Dataset data = load_any(args.flags.data);
        std::cout << "loaded " << data.size() << " records, "
                  << data.ap_count() << " APs (" << to_string(data.kind)
                  << ")\n";

        std::vector<MetricsReport> reports;
        for (const std::uint64_t seed : seeds) {
            TrainFlags flags = args.flags;
            flags.seed = seed;
            const PipelineConfig cfg = resolve_config(mode, flags);
            const PipelineResult result = run_training(mode, data, cfg);
            const MetricsReport report = evaluate_model(
                result.model, subset(data, result.validation_indices));
            print_metrics(std::cout, "seed " + std::to_string(seed) + ": ",
                          mode, report);
            reports.push_back(report);
        }

        const auto aggregate = [&](auto field) {
            double mean = 0.0;
            for (const MetricsReport& r : reports) mean += field(r);
            mean /= static_cast<double>(reports.size());
            double var = 0.0;
            for (const MetricsReport& r : reports) {
                const double d = field(r) - mean;
                var += d * d;
            }
            const double sd =
                reports.size() > 1
                    ? std::sqrt(var / static_cast<double>(reports.size() - 1))
                    : 0.0;
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.6f +- %.6f", mean, sd);
            return std::string(buf);
        };
        if (mode == ModelMode::FloorLevel) {
            std::cout << "mean accuracy " << aggregate([](const auto& r) {
                return r.overall_accuracy;
            }) << "\n";
        } else {
            std::cout << "mean: overall "
                      << aggregate([](const auto& r) {
                             return r.overall_accuracy;
                         })
                      << "  building "
                      << aggregate([](const auto& r) {
                             return r.building_accuracy;
                         })
                      << "  floor " << aggregate([](const auto& r) {
                             return r.floor_accuracy;
                         })
                      << "\n";
        }
        return kExitOk;
    }

    if (args.model_path.empty())
        throw ConfigError("evaluate needs --model (or --seeds for trials)");
    const TrainedModel model = load_model(args.model_path);
    const Dataset data = load_any(args.flags.data);
    if (data.records.empty()) throw ConfigError("dataset has no records");
    if (model.ap_order != data.ap_order) {
        std::cerr << "error: "
                  << ap_mismatch_message(model.ap_order, data.ap_order)
                  << "\n";
        return kExitRuntime;
    }

    const MetricsReport report = evaluate_model(model, data);
    print_metrics(std::cout, "", model.mode, report);
    write_text(args.metrics_out, metrics_json(report).dump(2) + "\n");
    std::cout << "metrics: " << args.metrics_out << "\n";
    return kExitOk;
}

struct SweepArgs {
    TrainFlags flags;
    std::string weights_text;
    std::string seeds_text = "1,2,3";
    std::size_t jobs = 1;
    std::string jsonl_out = "sweep.jsonl";
    std::string report_out = "sweep.txt";
};

int cmd_sweep(const SweepArgs& args) {
    const Dataset data = load_any(args.flags.data);
    const PipelineConfig base =
        resolve_config(ModelMode::Hierarchical, args.flags);
    const std::vector<WeightPair> pairs =
        args.weights_text.empty() ? default_weight_grid()
                                  : parse_weight_list(args.weights_text);
    const std::vector<std::uint64_t> seeds = parse_seed_list(args.seeds_text);

    std::cout << "loaded " << data.size() << " records, " << data.ap_count()
              << " APs; sweeping " << pairs.size() << " weight pairs x "
              << seeds.size() << " seeds on " << args.jobs << " worker(s)\n";

    const SweepResult result =
        sweep_class_weights(data, base, pairs, seeds, args.jobs);

    const std::string report = render_report(result);
    std::cout << report;
    write_text(args.report_out, report);
    write_text(args.jsonl_out, sweep_to_jsonl(result));
    std::cout << "report: " << args.report_out << "\nresults: "
              << args.jsonl_out << "\n";
    return kExitOk;
}

struct SynthArgs {
    std::string out = "synthetic.csv";
    std::size_t samples = 600;
    double sigma = 6.0;
    std::uint64_t seed = 1;
};

int cmd_synth(const SynthArgs& args) {
    SyntheticFloorConfig cfg = SyntheticFloorConfig::office_floor();
    cfg.samples_per_location = args.samples;
    cfg.noise_sigma = args.sigma;
    cfg.seed = args.seed;
    const Dataset data = generate_synthetic_floor_dataset(cfg);
    write_text(args.out, serialize_store(data));
    std::cout << "wrote " << data.size() << " records ("
              << cfg.locations.size() << " locations x "
              << args.samples << " samples), " << data.ap_count()
              << " APs to " << args.out << "\n";
    return kExitOk;
}

struct IngestArgs {
    std::string input;
    std::string out = "store.csv";
};

/// UJIIndoorLoc CSV -> local store. The store keys records by a single
/// location string, so building/floor labels become "b-f" pair names — the
/// flattened codec's vocabulary, losslessly recoverable.
int cmd_ingest(const IngestArgs& args) {
    Dataset data = load_any(args.input);
    if (data.kind == DatasetKind::BuildingFloor) {
        for (FingerprintRecord& r : data.records) {
            if (!r.building_id || !r.floor_id)
                throw LabelError("record without building/floor labels");
            r.location_id = std::to_string(*r.building_id) + "-" +
                            std::to_string(*r.floor_id);
        }
        data.kind = DatasetKind::FloorLevel;
    }
    data.validate();
    write_text(args.out, serialize_store(data));
    std::cout << "ingested " << data.size() << " records, " << data.ap_count()
              << " APs into " << args.out << "\n";
    return kExitOk;
}

struct ServeArgs {
    std::string bind = "127.0.0.1:8080";
    std::string model_path;
    std::string store_path;
};

std::atomic<bool> g_shutdown{false};

void handle_signal(int) { g_shutdown.store(true); }

int cmd_serve(const ServeArgs& args) {
    ServiceConfig cfg;
    std::tie(cfg.host, cfg.port) = parse_bind(args.bind, 8080);
    cfg.model_path = args.model_path;
    cfg.store_path = args.store_path;

    FingerprintServer server(cfg);
    server.start();
    std::cout << "listening on http://" << cfg.host << ":" << server.port()
              << (server.has_model() ? " (localization + collection)"
                                     : " (collection only)")
              << "\n"
              << (args.store_path.empty() ? "fingerprint store: disabled"
                                          : "fingerprint store: " +
                                                args.store_path)
              << "\n";

    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);
    while (!g_shutdown.load())
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
    std::cout << "shutting down\n";
    server.stop();
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fingerloc: Wi-Fi fingerprint indoor localization toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "fingerloc 1.0.0");

    TrainArgs train_args;
    CLI::App* train = app.add_subcommand("train", "train a model");
    train->add_option("--data", train_args.flags.data, "dataset (UJI CSV or store)")
        ->required();
    add_train_flags(train, train_args.flags, true);
    train->add_option("--out", train_args.model_out, "model file")
        ->default_str("model.fplm");
    train->add_option("--history", train_args.history_out,
                      "classifier history JSONL (default <out>.history.jsonl)");
    train->add_option("--sae-history", train_args.sae_history_out,
                      "also write autoencoder pretraining history here");

    EvaluateArgs eval_args;
    CLI::App* evaluate =
        app.add_subcommand("evaluate", "score a model or run seeded trials");
    evaluate->add_option("--data", eval_args.flags.data, "dataset")->required();
    evaluate->add_option("--model", eval_args.model_path, "trained model file");
    evaluate->add_option("--seeds", eval_args.seeds_text,
                         "train fresh trials with these seeds, e.g. 1,2,3,4,5");
    add_train_flags(evaluate, eval_args.flags, true);
    evaluate->add_option("--out", eval_args.metrics_out, "metrics JSON file")
        ->default_str("metrics.json");

    SweepArgs sweep_args;
    CLI::App* sweep =
        app.add_subcommand("sweep", "class-weight sweep (hierarchical)");
    sweep->add_option("--data", sweep_args.flags.data, "dataset")->required();
    add_train_flags(sweep, sweep_args.flags, false);
    sweep->add_option("--weights", sweep_args.weights_text,
                      "building:floor pairs, e.g. 1:1,3:1 "
                      "(default 1:1,2:1,5:1,10:1,20:1)");
    sweep->add_option("--seeds", sweep_args.seeds_text, "seed list")
        ->default_str("1,2,3");
    sweep->add_option("--jobs", sweep_args.jobs, "worker threads")
        ->default_str("1");
    sweep->add_option("--out", sweep_args.jsonl_out, "results JSONL")
        ->default_str("sweep.jsonl");
    sweep->add_option("--report", sweep_args.report_out, "rendered table")
        ->default_str("sweep.txt");

    SynthArgs synth_args;
    CLI::App* synth =
        app.add_subcommand("synth", "generate a synthetic floor dataset");
    synth->add_option("--out", synth_args.out, "store file")
        ->default_str("synthetic.csv");
    synth->add_option("--samples", synth_args.samples,
                      "samples per location")
        ->default_str("600");
    synth->add_option("--sigma", synth_args.sigma, "shadowing noise, dB")
        ->default_str("6");
    synth->add_option("--seed", synth_args.seed, "RNG seed")->default_str("1");

    IngestArgs ingest_args;
    CLI::App* ingest = app.add_subcommand(
        "ingest", "convert a UJIIndoorLoc CSV into the local store format");
    ingest->add_option("--input", ingest_args.input, "source CSV")->required();
    ingest->add_option("--out", ingest_args.out, "store file")
        ->default_str("store.csv");

    ServeArgs serve_args;
    CLI::App* serve =
        app.add_subcommand("serve", "run the HTTP fingerprinting service");
    serve->add_option("--bind", serve_args.bind, "host:port")
        ->default_str("127.0.0.1:8080");
    serve->add_option("--model", serve_args.model_path,
                      "model file (omit for collection-only)");
    serve->add_option("--store", serve_args.store_path,
                      "fingerprint store CSV (omit to disable collection)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (train->parsed()) return cmd_train(train_args);
        if (evaluate->parsed()) return cmd_evaluate(eval_args);
        if (sweep->parsed()) return cmd_sweep(sweep_args);
        if (synth->parsed()) return cmd_synth(synth_args);
        if (ingest->parsed()) return cmd_ingest(ingest_args);
        if (serve->parsed()) return cmd_serve(serve_args);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
