#pragma once

#include <functional>
#include <memory>
#include <ostream>
#include <string>

#include "flora/catalog.hpp"
#include "flora/identify.hpp"

namespace flora {

struct ServiceConfig {
    std::string listen_addr = "127.0.0.1";
    int port = 8080;  // 0 = pick a free port
    std::size_t max_body_bytes = 1 << 20;
    ConfidencePolicy policy;
    // Unset provider: passthrough only ({"scores": ...} payloads).
    std::optional<ScorerConfig> scorer;
};

// HTTP identification service. POST /v1/identify accepts either
// {"scores": [[label, score], ...]} or {"image_ref": "..."} (the latter only
// when an external scorer is configured); GET /v1/health reports liveness.
class IdentifyService {
public:
    IdentifyService(const SpeciesCatalog& catalog, ServiceConfig config,
                    std::ostream* log = nullptr);
    ~IdentifyService();

    IdentifyService(const IdentifyService&) = delete;
    IdentifyService& operator=(const IdentifyService&) = delete;

    // Binds and serves on a background thread; returns the bound port.
    int start();
    // Blocking serve loop for CLI use.
    void run();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace flora
