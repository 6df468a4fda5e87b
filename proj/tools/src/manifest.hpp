#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "config.hpp"

namespace logbesov::cli {

std::string sha256_hex(const std::string& bytes);
std::string read_file(const std::string& path);

// One per run. Data files never carry timestamps; the manifest is the only
// place the wall clock appears.
class RunManifest {
public:
    explicit RunManifest(std::string subcommand);

    json& parameters() { return parameters_; }
    json& grid() { return grid_; }
    const std::string& subcommand() const { return subcommand_; }

    // Writes `content` to `path` and records it for the digest list.
    void write_output(const std::string& path, const std::string& content);
    // Records a file written by other code (LBF writers).
    void record_output(const std::string& path);
    const std::vector<std::string>& outputs() const { return outputs_; }

    // Commands that write a family of files under one prefix name the
    // manifest after the prefix.
    void set_default_path(std::string p) { default_path_ = std::move(p); }
    // Destination: explicit path, else the default set above, else beside the
    // first output, else ./logbesov-<subcommand>.manifest.json.
    std::string resolve_path(const std::string& requested) const;
    void write(const std::string& path, int exit_code, const std::string& status) const;

private:
    std::string subcommand_;
    json parameters_ = json::object();
    json grid_ = json::object();
    std::vector<std::string> outputs_;
    std::string default_path_;
    std::chrono::system_clock::time_point started_wall_;
    std::chrono::steady_clock::time_point started_;
};

}  // namespace logbesov::cli
