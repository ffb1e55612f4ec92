#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "unselfie/config.hpp"

namespace unselfie {

inline constexpr const char* kToolVersion = "unselfie 0.1.0";

/// Lowercase hex SHA-256 of a byte string / of a file's contents.
std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

/// What produced an output directory: tool version, configuration hash and
/// the hash of every input file.
struct Provenance {
    std::string tool = kToolVersion;
    std::string config_hash;
    std::uint64_t seed = 0;
    /// (label, sha256) per input, in the order given.
    std::vector<std::pair<std::string, std::string>> inputs;

    /// Tab-separated lines: "tool", "config_sha256", "seed", then one "input" line per entry.
    std::string serialize() const;
    static Provenance parse(const std::string& text);

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

Provenance version_stamp(const PipelineConfig& cfg,
                         const std::vector<std::filesystem::path>& inputs);

/// Writes `<dir>/provenance.txt`.
void write_provenance(const std::filesystem::path& dir, const Provenance& p);

}  // namespace unselfie
