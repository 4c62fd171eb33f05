#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace simclust::cli {

/// Lowercase hex SHA-256 of a file's bytes. Throws IoError.
std::string sha256_file(const std::filesystem::path& path);

/// Reproduction record of one run: the effective configuration, the seed
/// and digests of every input and output file. File names are recorded
/// without directories so runs into different folders compare equal.
struct Manifest {
    std::string subcommand;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    std::uint64_t seed = 0;
    std::vector<std::filesystem::path> inputs;
    std::vector<std::filesystem::path> outputs;

    nlohmann::ordered_json to_json() const;
    void write(const std::filesystem::path& path) const;
};

}  // namespace simclust::cli
