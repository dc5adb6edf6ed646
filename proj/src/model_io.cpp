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
#include "fingerloc/model_io.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "json.hpp"

#include "fingerloc/errors.hpp"

namespace fingerloc {

namespace {

using nlohmann::json;

constexpr char kMagic[8] = {'F', 'P', 'L', 'M', 'O', 'D', 'E', 'L'};

json history_to_json(const std::vector<EpochStats>& history) {
    json arr = json::array();
    auto num = [](double v) -> json {
        if (std::isnan(v)) return nullptr;  // JSON has no NaN
        return v;
    };
    for (const EpochStats& s : history)
        arr.push_back({{"epoch", s.epoch},
                       {"train_loss", num(s.train_loss)},
                       {"train_accuracy", num(s.train_accuracy)},
                       {"val_loss", num(s.val_loss)},
                       {"val_accuracy", num(s.val_accuracy)}});
    return arr;
}

std::vector<EpochStats> history_from_json(const json& arr) {
    std::vector<EpochStats> history;
    auto num = [](const json& v) {
        return v.is_null() ? std::numeric_limits<double>::quiet_NaN()
                           : v.get<double>();
    };
    for (const json& e : arr) {
        EpochStats s;
        s.epoch = e.at("epoch").get<std::size_t>();
        s.train_loss = num(e.at("train_loss"));
        s.train_accuracy = num(e.at("train_accuracy"));
        s.val_loss = num(e.at("val_loss"));
        s.val_accuracy = num(e.at("val_accuracy"));
        history.push_back(s);
    }
    return history;
}

template <typename T>
void append_raw(std::string& out, const T& value) {
    const char* p = reinterpret_cast<const char*>(&value);
    out.append(p, sizeof(T));
}

}  // namespace

void save_model(const TrainedModel& model, const std::string& path) {
    const NetworkSpec& spec = model.network.spec();

    json layers = json::array();
    for (const LayerSpec& ls : spec.layers)
        layers.push_back({{"width", ls.width},
                          {"activation", to_string(ls.activation)},
                          {"dropout_rate", ls.dropout_rate}});
    json meta = {
        {"mode", to_string(model.mode)},
        {"normalizer",
         {{"not_detected_fill", model.normalizer.not_detected_fill},
          {"min_dbm", model.normalizer.min_dbm},
          {"max_dbm", model.normalizer.max_dbm}}},
        {"ap_order", model.ap_order},
        {"codec",
         {{"mode", to_string(model.codec.mode())},
          {"building_count", model.codec.building_count()},
          {"max_floor_count", model.codec.max_floor_count()},
          {"classes", model.codec.class_names()}}},
        {"network",
         {{"input_dim", spec.input_dim},
          {"layers", layers},
          {"loss", to_string(spec.loss)},
          {"output_weights", spec.output_weights},
          {"seed", spec.seed}}},
        {"sae_history", history_to_json(model.sae_history)},
        {"classifier_history", history_to_json(model.classifier_history)},
    };
    const std::string meta_str = meta.dump();

    std::string blob;
    blob.reserve(20 + meta_str.size());
    blob.append(kMagic, sizeof(kMagic));
    append_raw(blob, kModelFormatVersion);
    append_raw(blob, static_cast<std::uint64_t>(meta_str.size()));
    blob += meta_str;
    for (std::size_t l = 0; l < model.network.layer_count(); ++l) {
        const Matrix& w = model.network.weights()[l];
        blob.append(reinterpret_cast<const char*>(w.data()),
                    w.size() * sizeof(double));
        const std::vector<double>& b = model.network.biases()[l];
        blob.append(reinterpret_cast<const char*>(b.data()),
                    b.size() * sizeof(double));
    }

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot create model file '" + path + "'");
    out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
    out.flush();
    if (!out) throw IoError("write to model file '" + path + "' failed");
}

TrainedModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open model file '" + path + "'");
    std::string blob{std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>()};

    const auto fail = [&](const std::string& why) -> FormatError {
        return FormatError("model file '" + path + "': " + why);
    };
    if (blob.size() < 20 ||
        std::memcmp(blob.data(), kMagic, sizeof(kMagic)) != 0)
        throw fail("not a model file (bad magic)");
    std::uint32_t version = 0;
    std::memcpy(&version, blob.data() + 8, sizeof(version));
    if (version != kModelFormatVersion)
        throw fail("unsupported format version " + std::to_string(version));
    std::uint64_t meta_len = 0;
    std::memcpy(&meta_len, blob.data() + 12, sizeof(meta_len));
    if (20 + meta_len > blob.size()) throw fail("truncated metadata");

    json meta;
    try {
        meta = json::parse(blob.begin() + 20,
                           blob.begin() + 20 + static_cast<long>(meta_len));
    } catch (const json::exception& e) {
        throw fail(std::string("bad metadata: ") + e.what());
    }

    TrainedModel model;
    try {
        model.mode = model_mode_from_string(meta.at("mode").get<std::string>());
        const json& n = meta.at("normalizer");
        model.normalizer.not_detected_fill =
            n.at("not_detected_fill").get<double>();
        model.normalizer.min_dbm = n.at("min_dbm").get<double>();
        model.normalizer.max_dbm = n.at("max_dbm").get<double>();
        model.ap_order =
            meta.at("ap_order").get<std::vector<std::string>>();
        const json& c = meta.at("codec");
        model.codec = LabelCodec::from_parts(
            codec_mode_from_string(c.at("mode").get<std::string>()),
            c.at("building_count").get<std::size_t>(),
            c.at("max_floor_count").get<std::size_t>(),
            c.at("classes").get<std::vector<std::string>>());
        model.sae_history = history_from_json(meta.at("sae_history"));
        model.classifier_history =
            history_from_json(meta.at("classifier_history"));

        const json& net = meta.at("network");
        NetworkSpec spec;
        spec.input_dim = net.at("input_dim").get<std::size_t>();
        for (const json& jl : net.at("layers"))
            spec.layers.push_back(
                {jl.at("width").get<std::size_t>(),
                 activation_from_string(
                     jl.at("activation").get<std::string>()),
                 jl.at("dropout_rate").get<double>()});
        spec.loss = loss_from_string(net.at("loss").get<std::string>());
        spec.output_weights =
            net.at("output_weights").get<std::vector<double>>();
        spec.seed = net.at("seed").get<std::uint64_t>();

        std::size_t doubles = 0;
        std::size_t prev = spec.input_dim;
        for (const LayerSpec& ls : spec.layers) {
            doubles += prev * ls.width + ls.width;
            prev = ls.width;
        }
        const std::size_t payload_at = 20 + meta_len;
        if (blob.size() - payload_at != doubles * sizeof(double))
            throw fail("weight payload is " +
                       std::to_string(blob.size() - payload_at) +
                       " bytes, expected " +
                       std::to_string(doubles * sizeof(double)));

        const char* p = blob.data() + payload_at;
        std::vector<Matrix> weights;
        std::vector<std::vector<double>> biases;
        prev = spec.input_dim;
        for (const LayerSpec& ls : spec.layers) {
            Matrix w(prev, ls.width);
            std::memcpy(w.data(), p, w.size() * sizeof(double));
            p += w.size() * sizeof(double);
            std::vector<double> b(ls.width);
            std::memcpy(b.data(), p, b.size() * sizeof(double));
            p += b.size() * sizeof(double);
            weights.push_back(std::move(w));
            biases.push_back(std::move(b));
            prev = ls.width;
        }
        model.network = Network::from_parts(std::move(spec),
                                            std::move(weights),
                                            std::move(biases));
    } catch (const json::exception& e) {
        throw fail(std::string("bad metadata: ") + e.what());
    } catch (const ConfigError& e) {
        throw fail(std::string("inconsistent metadata: ") + e.what());
    } catch (const ShapeError& e) {
        throw fail(std::string("inconsistent metadata: ") + e.what());
    }

    if (model.ap_order.size() != model.network.spec().input_dim)
        throw fail("ap_order length does not match the network input");
    if (model.codec.target_dim() != model.network.spec().output_dim())
        throw fail("codec target size does not match the network output");
    return model;
}

}  // namespace fingerloc
