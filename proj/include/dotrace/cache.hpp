#pragma once

#include <filesystem>
#include <json.hpp>
#include <optional>
#include <string>

namespace dotrace {

// Content cache for expensive results, one JSON file per key. Large payloads
// (spec lists) are zlib-compressed. Keys embed everything that determines the
// result: (p, m, l, modulus, subcommand, tool version).
class Cache {
public:
    Cache() = default;  // disabled
    Cache(std::filesystem::path dir, bool enabled);

    bool enabled() const { return enabled_; }
    const std::filesystem::path& dir() const { return dir_; }

    std::optional<nlohmann::json> get(const std::string& key) const;
    void put(const std::string& key, const nlohmann::json& value, bool compress = false) const;

private:
    std::filesystem::path path_for(const std::string& key, bool compressed) const;
    std::filesystem::path dir_;
    bool enabled_ = false;
};

}  // namespace dotrace
