#include "common.hpp"

#include "phasic/core/error.hpp"
#include "phasic/data/synth.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>

namespace phasic::cli {

namespace {
std::mutex log_lock;
}

void Logger::info(std::string_view msg) const {
    if (quiet) return;
    std::lock_guard lock(log_lock);
    std::cerr << msg << '\n';
}

void Logger::warn(std::string_view msg) const {
    std::lock_guard lock(log_lock);
    std::cerr << "warning: " << msg << '\n';
}

std::string sha256_hex(std::string_view bytes) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    unsigned char out[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), out, &len) != 1) {
        throw Error("sha256: OpenSSL digest failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string s;
    s.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        s += hex[out[i] >> 4];
        s += hex[out[i] & 15];
    }
    return s;
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataIntegrityError("cannot read " + path.string());
    const std::string bytes((std::istreambuf_iterator<char>(in)), {});
    return sha256_hex(bytes);
}

std::vector<data::SampleRecord> Dataset::records() const {
    std::vector<data::SampleRecord> out;
    for (const auto& [bg, m] : manifests) out.insert(out.end(), m.records.begin(), m.records.end());
    return out;
}

std::filesystem::path manifest_path(const std::filesystem::path& dir, const std::string& background) {
    return dir / ("manifest_" + background + ".csv");
}

Dataset load_dataset(const std::filesystem::path& dir, const std::vector<std::string>& backgrounds) {
    if (!std::filesystem::is_directory(dir)) throw InvalidArgument("dataset directory " + dir.string() + " not found");
    Dataset ds;
    ds.dir = dir;
    ds.geometry = data::read_dataset_geometry(dir);
    const std::vector<std::string> wanted = backgrounds.empty() ? std::vector<std::string>{"A", "B", "C"} : backgrounds;
    for (const auto& bg : wanted) {
        const auto path = manifest_path(dir, bg);
        if (!std::filesystem::exists(path)) {
            if (backgrounds.empty()) continue;
            throw InvalidArgument("dataset " + dir.string() + " has no manifest for background " + bg);
        }
        ds.manifests[bg] = data::load_manifest(path);
    }
    if (ds.manifests.empty()) throw InvalidArgument("dataset " + dir.string() + " has no manifest_<bg>.csv");
    return ds;
}

std::vector<std::string> split_list(const std::string& list) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        const auto end = std::min(list.find(',', start), list.size());
        if (end > start) out.push_back(list.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

std::vector<std::string> parse_backgrounds(const std::string& list) {
    auto out = split_list(list);
    for (const auto& b : out) {
        if (!data::is_background(b)) throw InvalidArgument("unknown background '" + b + "' (expected A, B or C)");
    }
    return out;
}

bool directory_has_entries(const std::filesystem::path& dir) {
    return std::filesystem::is_directory(dir) && std::filesystem::directory_iterator(dir) != std::filesystem::directory_iterator();
}

}  // namespace phasic::cli
