#include "dotrace/cache.hpp"

#include <zlib.h>

#include <fstream>

#include "dotrace/errors.hpp"

namespace dotrace {

namespace {

std::string deflate_bytes(const std::string& in) {
    uLongf bound = compressBound(static_cast<uLong>(in.size()));
    std::string out(bound, '\0');
    if (compress2(reinterpret_cast<Bytef*>(out.data()), &bound,
                  reinterpret_cast<const Bytef*>(in.data()), static_cast<uLong>(in.size()),
                  6) != Z_OK)
        throw Error("cache: compression failed");
    out.resize(bound);
    return out;
}

std::string inflate_bytes(const std::string& in, std::size_t hint) {
    std::string out(std::max<std::size_t>(hint, in.size() * 4 + 64), '\0');
    while (true) {
        uLongf len = static_cast<uLongf>(out.size());
        int rc = uncompress(reinterpret_cast<Bytef*>(out.data()), &len,
                            reinterpret_cast<const Bytef*>(in.data()),
                            static_cast<uLong>(in.size()));
        if (rc == Z_OK) {
            out.resize(len);
            return out;
        }
        if (rc == Z_BUF_ERROR) {
            out.resize(out.size() * 2);
            continue;
        }
        throw Error("cache: decompression failed");
    }
}

}  // namespace

Cache::Cache(std::filesystem::path dir, bool enabled) : dir_(std::move(dir)), enabled_(enabled) {
    if (enabled_) std::filesystem::create_directories(dir_);
}

std::filesystem::path Cache::path_for(const std::string& key, bool compressed) const {
    std::string name;
    name.reserve(key.size());
    for (char c : key)
        name += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')
                    ? c
                    : '-';
    return dir_ / (name + (compressed ? ".json.z" : ".json"));
}

std::optional<nlohmann::json> Cache::get(const std::string& key) const {
    if (!enabled_) return std::nullopt;
    for (bool compressed : {false, true}) {
        auto path = path_for(key, compressed);
        std::ifstream in(path, std::ios::binary);
        if (!in) continue;
        std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        try {
            if (compressed) bytes = inflate_bytes(bytes, bytes.size() * 8);
            return nlohmann::json::parse(bytes);
        } catch (const std::exception&) {
            return std::nullopt;  // corrupt entry behaves like a miss
        }
    }
    return std::nullopt;
}

void Cache::put(const std::string& key, const nlohmann::json& value, bool compress) const {
    if (!enabled_) return;
    std::string bytes = value.dump();
    if (compress) bytes = deflate_bytes(bytes);
    auto path = path_for(key, compress);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw Error("cache: write failed at " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace dotrace
