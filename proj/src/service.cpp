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
#include "fingerloc/service.hpp"

#include <ctime>
#include <fstream>
#include <mutex>
#include <optional>
#include <set>
#include <unordered_map>

#include "fingerloc/errors.hpp"
#include "fingerloc/model_io.hpp"
#include "fingerloc/store.hpp"
#include "httplib.h"
#include "json.hpp"

namespace fingerloc {

using json = nlohmann::json;

MappedScan map_scan(const std::vector<ScanEntry>& scans,
                    const std::vector<std::string>& ap_order) {
    std::unordered_map<std::string, std::size_t> index;
    index.reserve(ap_order.size());
    for (std::size_t i = 0; i < ap_order.size(); ++i) index[ap_order[i]] = i;

    MappedScan mapped;
    mapped.record.rss.assign(ap_order.size(), kNotDetected);
    std::set<std::string> seen;
    std::size_t known = 0;
    for (const ScanEntry& scan : scans) {
        if (!seen.insert(scan.ap).second)
            throw FormatError("duplicate AP '" + scan.ap + "' in scan");
        const auto it = index.find(scan.ap);
        if (it == index.end()) {
            ++mapped.dropped;
            continue;
        }
        mapped.record.rss[it->second] = scan.rss;
        ++known;
    }
    if (known == 0)
        throw UnmappableScanError(
            "scan shares no access point with the model");
    return mapped;
}

namespace {

/// Pulls the "scans" array out of a request body; FormatError on anything
/// that is not a list of {"ap": string, "rss": number}.
std::vector<ScanEntry> parse_scans(const json& body) {
    if (!body.contains("scans") || !body["scans"].is_array())
        throw FormatError("body must carry a \"scans\" array");
    std::vector<ScanEntry> scans;
    scans.reserve(body["scans"].size());
    for (const json& item : body["scans"]) {
        if (!item.is_object() || !item.contains("ap") ||
            !item["ap"].is_string() || !item.contains("rss") ||
            !item["rss"].is_number())
            throw FormatError(
                "every scan needs an \"ap\" string and a numeric \"rss\"");
        scans.push_back({item["ap"].get<std::string>(),
                         item["rss"].get<double>()});
    }
    return scans;
}

json error_body(const std::string& message) {
    return json{{"error", message}};
}

void reply(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

}  // namespace

struct FingerprintServer::Impl {
    ServiceConfig config;
    std::optional<TrainedModel> model;
    httplib::Server server;
    std::thread runner;
    int bound_port = 0;
    std::mutex store_mutex;

    explicit Impl(const ServiceConfig& cfg) : config(cfg) {
        if (!config.model_path.empty()) model = load_model(config.model_path);
        route();
    }

    void route() {
        server.Get("/health", [this](const httplib::Request&,
                                     httplib::Response& res) {
            json body{{"status", "ok"}};
            if (model) {
                body["mode"] = to_string(model->mode);
                body["model_version"] = std::to_string(model->version);
            } else {
                body["mode"] = nullptr;
                body["model_version"] = nullptr;
            }
            reply(res, 200, body);
        });

        server.Post("/localize", [this](const httplib::Request& req,
                                        httplib::Response& res) {
            handle_localize(req, res);
        });

        server.Post("/fingerprints", [this](const httplib::Request& req,
                                            httplib::Response& res) {
            handle_submit(req, res);
        });

        server.Get("/fingerprints/export", [this](const httplib::Request&,
                                                  httplib::Response& res) {
            handle_export(res);
        });
    }

    void handle_localize(const httplib::Request& req,
                         httplib::Response& res) {
        if (!model) {
            reply(res, 503, error_body("no model loaded"));
            return;
        }
        json body;
        try {
            body = json::parse(req.body);
        } catch (const json::exception&) {
            reply(res, 400, error_body("body is not valid JSON"));
            return;
        }
        try {
            const MappedScan mapped =
                map_scan(parse_scans(body), model->ap_order);
            const Prediction p = predict(*model, mapped.record);

            json location;
            json scores;
            if (model->mode == ModelMode::FloorLevel) {
                location["location_id"] = *p.location_id;
                const auto& names = model->codec.class_names();
                for (std::size_t i = 0; i < names.size(); ++i)
                    scores[names[i]] = p.scores[i];
            } else if (model->mode == ModelMode::Flattened) {
                location["building_id"] = *p.building_id;
                location["floor_id"] = *p.floor_id;
                const auto& names = model->codec.class_names();
                for (std::size_t i = 0; i < names.size(); ++i)
                    scores[names[i]] = p.scores[i];
            } else {
                location["building_id"] = *p.building_id;
                location["floor_id"] = *p.floor_id;
                const std::size_t b = model->codec.building_count();
                scores["building"] = std::vector<double>(
                    p.scores.begin(), p.scores.begin() + static_cast<long>(b));
                scores["floor"] = std::vector<double>(
                    p.scores.begin() + static_cast<long>(b), p.scores.end());
            }
            reply(res, 200,
                  json{{"location", location},
                       {"scores", scores},
                       {"dropped_aps", mapped.dropped},
                       {"model_version", std::to_string(model->version)}});
        } catch (const UnmappableScanError& e) {
            reply(res, 422, error_body(e.what()));
        } catch (const FormatError& e) {
            reply(res, 400, error_body(e.what()));
        }
    }

    void handle_submit(const httplib::Request& req, httplib::Response& res) {
        if (config.store_path.empty()) {
            reply(res, 503, error_body("no fingerprint store configured"));
            return;
        }
        json body;
        try {
            body = json::parse(req.body);
        } catch (const json::exception&) {
            reply(res, 400, error_body("body is not valid JSON"));
            return;
        }
        if (!body.contains("label") || !body["label"].is_string() ||
            body["label"].get<std::string>().empty()) {
            reply(res, 400, error_body("a non-empty \"label\" is required"));
            return;
        }

        Dataset batch;
        batch.kind = DatasetKind::FloorLevel;
        FingerprintRecord record;
        record.location_id = body["label"].get<std::string>();
        if (body.contains("device") && body["device"].is_string())
            record.device_id = body["device"].get<std::string>();
        record.timestamp = static_cast<std::int64_t>(std::time(nullptr));
        try {
            const std::vector<ScanEntry> scans = parse_scans(body);
            std::set<std::string> seen;
            for (const ScanEntry& scan : scans) {
                if (!seen.insert(scan.ap).second)
                    throw FormatError("duplicate AP '" + scan.ap +
                                      "' in scan");
                batch.ap_order.push_back(scan.ap);
                record.rss.push_back(scan.rss);
            }
        } catch (const FormatError& e) {
            reply(res, 400, error_body(e.what()));
            return;
        }
        batch.records.push_back(std::move(record));

        try {
            // single-writer policy: appends are serialized here
            const std::lock_guard<std::mutex> lock(store_mutex);
            append_store(config.store_path, batch);
        } catch (const Error& e) {
            reply(res, 500, error_body(e.what()));
            return;
        }
        reply(res, 201, json{{"stored", true}});
    }

    void handle_export(httplib::Response& res) {
        std::string content;
        {
            const std::lock_guard<std::mutex> lock(store_mutex);
            std::ifstream in(config.store_path, std::ios::binary);
            if (config.store_path.empty() || !in) {
                reply(res, 404, error_body("no fingerprint store"));
                return;
            }
            content.assign(std::istreambuf_iterator<char>(in),
                           std::istreambuf_iterator<char>());
        }
        res.status = 200;
        res.set_header("Content-Disposition",
                       "attachment; filename=\"fingerprints.csv\"");
        res.set_content(content, "text/csv");
    }
};

FingerprintServer::FingerprintServer(const ServiceConfig& config)
    : impl_(std::make_unique<Impl>(config)) {}

FingerprintServer::~FingerprintServer() { stop(); }

void FingerprintServer::start() {
    Impl& impl = *impl_;
    if (impl.runner.joinable()) return;

    // Keep SO_REUSEADDR for quick restarts but drop httplib's default
    // SO_REUSEPORT: two live services must never share one port silently.
    impl.server.set_socket_options([](socket_t sock) {
        int yes = 1;
        ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR,
                     reinterpret_cast<const void*>(&yes), sizeof(yes));
    });

    if (impl.config.port == 0) {
        impl.bound_port = impl.server.bind_to_any_port(impl.config.host);
        if (impl.bound_port <= 0)
            throw IoError("cannot bind " + impl.config.host);
    } else {
        if (!impl.server.bind_to_port(impl.config.host, impl.config.port))
            throw IoError("cannot bind " + impl.config.host + ":" +
                          std::to_string(impl.config.port));
        impl.bound_port = impl.config.port;
    }
    impl.runner = std::thread([&impl] { impl.server.listen_after_bind(); });
    impl.server.wait_until_ready();
}

void FingerprintServer::stop() {
    if (!impl_) return;
    impl_->server.stop();
    if (impl_->runner.joinable()) impl_->runner.join();
}

int FingerprintServer::port() const { return impl_->bound_port; }

bool FingerprintServer::has_model() const {
    return impl_->model.has_value();
}

const TrainedModel* FingerprintServer::model() const {
    return impl_->model ? &*impl_->model : nullptr;
}

}  // namespace fingerloc
