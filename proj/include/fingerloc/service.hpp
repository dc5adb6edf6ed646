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

#include <memory>
#include <string>
#include <vector>

#include "fingerloc/pipeline.hpp"

namespace fingerloc {

/// One AP reading in a request.
struct ScanEntry {
    std::string ap;
    double rss = 0.0;
};

struct MappedScan {
    /// RSS vector aligned to the model's AP order; APs the request did not
    /// mention are "not detected".
    FingerprintRecord record;
    /// Request APs unknown to the model (dropped for localization).
    std::size_t dropped = 0;
};

/// Bridges a live scan to the trained input layout. Throws FormatError on
/// duplicate AP ids within one request and UnmappableScanError when the
/// request shares no AP with `ap_order`.
MappedScan map_scan(const std::vector<ScanEntry>& scans,
                    const std::vector<std::string>& ap_order);

/// HTTP fingerprinting service (JSON over HTTP/1.1):
///   GET  /health              -> {"status","mode","model_version"}
///   POST /localize            -> estimate for {"scans":[{"ap","rss"},...]}
///   POST /fingerprints        -> store a labeled scan
///   GET  /fingerprints/export -> the store file as an attachment
struct ServiceConfig {
    std::string host = "127.0.0.1";
    int port = 8080;  ///< 0 picks a free port (see FingerprintServer::port)
    /// Model to serve; empty starts in collection-only mode where /localize
    /// answers 503 but fingerprint submission still works.
    std::string model_path;
    /// Store that /fingerprints appends to; empty disables submission.
    std::string store_path;
};

class FingerprintServer {
public:
    /// Loads the model (if configured); throws on an unreadable model file.
    explicit FingerprintServer(const ServiceConfig& config);
    ~FingerprintServer();
    FingerprintServer(const FingerprintServer&) = delete;
    FingerprintServer& operator=(const FingerprintServer&) = delete;

    /// Binds and serves on a background thread; IoError when the address
    /// cannot be bound. Returns once the server accepts connections.
    void start();
    /// Graceful shutdown: in-flight requests complete. Idempotent.
    void stop();

    /// Actual bound port (resolves config port 0).
    int port() const;
    bool has_model() const;
    /// The served model; null in collection-only mode. Never mutated while
    /// serving.
    const TrainedModel* model() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace fingerloc
