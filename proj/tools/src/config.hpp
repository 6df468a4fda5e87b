#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "logbesov/inflation.hpp"

namespace logbesov::cli {

using json = nlohmann::ordered_json;

// "inf", "infinity" or a number.
double parse_exponent(const std::string& s);
// Comma-separated list of numbers or exponents.
std::vector<double> parse_list(const std::string& s);
std::vector<int> parse_int_list(const std::string& s);

// Finite numbers as JSON numbers, everything else as a string.
json jnum(double v);

// An inflate/audit job after defaults are applied. `normalized` echoes every
// effective setting so outputs are self-describing.
struct InflateJob {
    std::vector<InflationConfig> family;
    std::vector<double> sigmas;
    double q = kInf;
    std::vector<double> delta_sweep;
    int density = 6;
    double decades = 1.0;
    json normalized;
};

// Keys may be written with '-' or '_'. Recognized keys:
//   preset (desk | grid | literal), n, variant, m_range [lo, hi], m, K_A, K_B,
//   eps, delta, delta_sweep, sigma_list, q, N, R, t_rule, remainder_density,
//   remainder_decades.
// Unknown keys and malformed values throw std::invalid_argument.
InflateJob parse_inflate_config(const nlohmann::json& cfg);
nlohmann::json load_json_file(const std::string& path);

}  // namespace logbesov::cli
