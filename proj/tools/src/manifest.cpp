#include "manifest.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <ctime>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>

#include "logbesov/parallel.hpp"

#ifndef LOGBESOV_VERSION
#define LOGBESOV_VERSION "unknown"
#endif

namespace logbesov::cli {

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 15]);
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

RunManifest::RunManifest(std::string subcommand)
    : subcommand_(std::move(subcommand)),
      started_wall_(std::chrono::system_clock::now()),
      started_(std::chrono::steady_clock::now()) {}

void RunManifest::write_output(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::invalid_argument("cannot write '" + path + "'");
    out << content;
    out.close();
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
    record_output(path);
}

void RunManifest::record_output(const std::string& path) { outputs_.push_back(path); }

std::string RunManifest::resolve_path(const std::string& requested) const {
    if (!requested.empty()) return requested;
    if (!default_path_.empty()) return default_path_;
    if (!outputs_.empty()) return outputs_.front() + ".manifest.json";
    return "logbesov-" + subcommand_ + ".manifest.json";
}

void RunManifest::write(const std::string& path, int exit_code, const std::string& status) const {
    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
    const std::time_t tt = std::chrono::system_clock::to_time_t(started_wall_);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);

    json m;
    m["tool"] = "logbesov";
    m["version"] = LOGBESOV_VERSION;
    m["subcommand"] = subcommand_;
    m["parameters"] = parameters_;
    m["grid"] = grid_;
    m["threads"] = thread_count();
    m["started_utc"] = stamp;
    m["wall_time_s"] = elapsed;
    m["exit_code"] = exit_code;
    m["status"] = status;
    json files = json::array();
    for (const auto& p : outputs_) {
        const std::string bytes = read_file(p);
        files.push_back({{"path", p}, {"bytes", bytes.size()}, {"sha256", sha256_hex(bytes)}});
    }
    m["outputs"] = files;

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write manifest '" + path + "'");
    out << m.dump(2) << '\n';
}

}  // namespace logbesov::cli
