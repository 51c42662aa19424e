#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "wlpower/io.hpp"

namespace wlpower {

inline constexpr std::string_view kToolVersion = "1.0.0";

/// Cache key text: command, canonical spec, canonical forms of the inputs,
/// and any parameters the result depends on.
inline std::string cache_key(std::string_view command, const GfwlSpec& spec, const std::vector<CanonicalForm>& forms,
                             std::string_view extra = {}) {
    std::string key(command);
    key += '|' + canonical_spec_string(spec);
    for (const auto& f : forms) key += '|' + f.hex();
    if (!extra.empty()) key += '|' + std::string(extra);
    return key;
}

/// Result cache on disk: one JSON record per key, named by a 64-bit FNV-1a
/// digest. Records embed the tool version and the full key, so digest
/// collisions and version bumps read as misses.
class ResultCache {
public:
    explicit ResultCache(std::filesystem::path dir, std::string version = std::string(kToolVersion))
        : dir_(std::move(dir)), version_(std::move(version)) {}

    const std::filesystem::path& directory() const noexcept { return dir_; }

    static std::string file_name(std::string_view key) {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char c : key) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return std::string(buf) + ".json";
    }

    /// Stored payload, or nullopt on a miss. Corrupt records are reported to
    /// `warn` and treated as misses.
    std::optional<Json> lookup(std::string_view key, std::ostream* warn = nullptr) const {
        const auto path = dir_ / file_name(key);
        std::error_code ec;
        if (!std::filesystem::exists(path, ec)) return std::nullopt;
        try {
            const Json record = Json::parse(read_text_file(path));
            if (record.at("version").get<std::string>() != version_) return std::nullopt;
            if (record.at("key").get<std::string>() != key) return std::nullopt;
            return record.at("payload");
        } catch (const std::exception& e) {
            if (warn) *warn << "warning: ignoring corrupt cache entry " << path.string() << ": " << e.what() << '\n';
            return std::nullopt;
        }
    }

    /// Writes through a temporary file and a rename so readers never see a partial record.
    void store(std::string_view key, const Json& payload) const {
        std::filesystem::create_directories(dir_);
        const auto path = dir_ / file_name(key);
        auto tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw InputError("cannot write cache entry " + tmp.string());
            out << Json{{"version", version_}, {"key", key}, {"payload", payload}}.dump() << '\n';
        }
        std::filesystem::rename(tmp, path);
    }

private:
    std::filesystem::path dir_;
    std::string version_;
};

}  // namespace wlpower
