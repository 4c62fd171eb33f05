#include "manifest.hpp"

#include <array>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include <openssl/evp.h>

#include "simclust/error.hpp"
#include "simclust/export.hpp"

namespace simclust::cli {

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for hashing: " + path.string());

    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw IoError("sha256: init failed");
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0 && EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount())) != 1)
            throw IoError("sha256: update failed");
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) throw IoError("sha256: final failed");

    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
    return hex.str();
}

nlohmann::ordered_json Manifest::to_json() const {
    nlohmann::ordered_json doc;
    doc["tool"] = "simclust";
    doc["version"] = SIMCLUST_VERSION;
    doc["subcommand"] = subcommand;
    doc["seed"] = seed;
    doc["config"] = config;
    auto files = [](const std::vector<std::filesystem::path>& paths) {
        auto list = nlohmann::ordered_json::array();
        for (const auto& p : paths) list.push_back({{"name", p.filename().string()}, {"sha256", sha256_file(p)}});
        return list;
    };
    doc["inputs"] = files(inputs);
    doc["outputs"] = files(outputs);
    return doc;
}

void Manifest::write(const std::filesystem::path& path) const {
    const auto doc = to_json();
    write_file(path, [&](std::ostream& out) { out << doc.dump(2) << '\n'; });
}

}  // namespace simclust::cli
