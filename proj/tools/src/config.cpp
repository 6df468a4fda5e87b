#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace logbesov::cli {

double parse_exponent(const std::string& s) {
    std::string t = s;
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (t == "inf" || t == "infinity") return kInf;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    if (used != t.size()) throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(parse_exponent(item));
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    for (double v : parse_list(s)) {
        if (v != std::floor(v) || std::abs(v) > 1e9) throw std::invalid_argument("expected integers in '" + s + "'");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

json jnum(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

namespace {

std::string normalize_key(std::string k) {
    std::replace(k.begin(), k.end(), '-', '_');
    return k;
}

double as_exponent(const nlohmann::json& v, const std::string& key) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_exponent(v.get<std::string>());
    throw std::invalid_argument("'" + key + "' must be a number or \"inf\"");
}

double as_number(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number()) throw std::invalid_argument("'" + key + "' must be a number");
    return v.get<double>();
}

int as_int(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number_integer()) throw std::invalid_argument("'" + key + "' must be an integer");
    return v.get<int>();
}

std::vector<double> as_numbers(const nlohmann::json& v, const std::string& key) {
    if (v.is_number() || v.is_string()) return {as_exponent(v, key)};
    if (!v.is_array() || v.empty()) throw std::invalid_argument("'" + key + "' must be a non-empty array");
    std::vector<double> out;
    for (const auto& e : v) out.push_back(as_exponent(e, key));
    return out;
}

std::vector<int> as_ints(const nlohmann::json& v, const std::string& key) {
    if (!v.is_array() || v.empty()) throw std::invalid_argument("'" + key + "' must be a non-empty integer array");
    std::vector<int> out;
    for (const auto& e : v) out.push_back(as_int(e, key));
    return out;
}

}  // namespace

InflateJob parse_inflate_config(const nlohmann::json& raw) {
    if (!raw.is_object()) throw std::invalid_argument("config must be a JSON object");
    static const std::set<std::string> known{"preset", "n",     "variant", "m_range", "m",          "K_A",
                                             "K_B",    "eps",   "delta",   "delta_sweep", "sigma_list", "q",
                                             "N",      "R",     "t_rule",  "remainder_density", "remainder_decades"};
    std::map<std::string, nlohmann::json> c;
    for (auto it = raw.begin(); it != raw.end(); ++it) {
        const std::string k = normalize_key(it.key());
        if (!known.count(k)) throw std::invalid_argument("unknown config key '" + it.key() + "'");
        if (c.count(k)) throw std::invalid_argument("config key '" + it.key() + "' given twice");
        c[k] = it.value();
    }
    auto has = [&](const char* k) { return c.count(k) > 0; };

    const std::string preset = has("preset") ? c["preset"].get<std::string>() : "desk";
    if (preset != "desk" && preset != "grid" && preset != "literal")
        throw std::invalid_argument("preset must be desk, grid or literal");
    const Variant variant = has("variant") ? parse_variant(c["variant"].get<std::string>()) : Variant::main;
    const double eps = has("eps") ? as_number(c["eps"], "eps") : (preset == "grid" ? 0.4 : 0.125);

    int m_lo = 2, m_hi = 6;
    if (has("m_range") && has("m")) throw std::invalid_argument("give either m_range or m");
    if (has("m_range")) {
        const auto r = as_ints(c["m_range"], "m_range");
        if (r.size() != 2 || r[0] > r[1]) throw std::invalid_argument("m_range must be [lo, hi] with lo <= hi");
        m_lo = r[0];
        m_hi = r[1];
    } else if (has("m")) {
        m_lo = m_hi = as_int(c["m"], "m");
    }
    if (m_lo < 1) throw std::invalid_argument("m must be >= 1");

    InflateJob job;
    const bool explicit_sets = has("K_A") || has("K_B");
    if (explicit_sets) {
        if (!has("K_A") || !has("K_B")) throw std::invalid_argument("K_A and K_B must be given together");
        if (has("m_range")) throw std::invalid_argument("m_range and explicit K_A/K_B are exclusive");
        InflationConfig cfg = preset == "grid" ? grid_preset(eps) : InflationConfig{};
        cfg.m = has("m") ? m_lo : 1;
        cfg.K_A = as_ints(c["K_A"], "K_A");
        cfg.K_B = as_ints(c["K_B"], "K_B");
        if (preset == "literal") cfg.R = 1;
        job.family.push_back(cfg);
    } else if (preset == "grid") {
        job.family.push_back(grid_preset(eps));
    } else {
        for (int m = m_lo; m <= m_hi; ++m)
            job.family.push_back(preset == "desk" ? desk_preset(m, variant, eps) : literal_preset(m));
    }

    job.q = has("q") ? as_exponent(c["q"], "q") : kInf;
    job.sigmas = has("sigma_list") ? as_numbers(c["sigma_list"], "sigma_list")
                                   : std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0};
    if (has("delta_sweep")) job.delta_sweep = as_numbers(c["delta_sweep"], "delta_sweep");
    if (has("remainder_density")) job.density = as_int(c["remainder_density"], "remainder_density");
    if (has("remainder_decades")) job.decades = as_number(c["remainder_decades"], "remainder_decades");
    if (job.density < 2 || !(job.decades > 0.0)) throw std::invalid_argument("remainder grid settings out of range");

    for (auto& cfg : job.family) {
        cfg.variant = variant;
        cfg.eps = eps;
        if (has("n")) cfg.n = as_int(c["n"], "n");
        if (has("delta")) cfg.delta = as_number(c["delta"], "delta");
        if (has("N")) cfg.N = static_cast<std::int64_t>(as_number(c["N"], "N"));
        if (has("R")) cfg.R = static_cast<std::int64_t>(as_number(c["R"], "R"));
        if (has("t_rule")) cfg.t_rule = parse_time_rule(c["t_rule"].get<std::string>());
        cfg.q = job.q;
        cfg.sigma = job.sigmas.front();
        cfg.validate();
    }
    for (double d : job.delta_sweep)
        if (!(d > 0.0)) throw std::invalid_argument("delta_sweep entries must be positive");

    json& n = job.normalized;
    n["preset"] = preset;
    n["variant"] = variant_name(variant);
    n["n"] = job.family.front().n;
    n["eps"] = eps;
    n["q"] = jnum(job.q);
    json sig = json::array();
    for (double s : job.sigmas) sig.push_back(jnum(s));
    n["sigma_list"] = sig;
    n["delta"] = job.family.front().delta;
    n["t_rule"] = time_rule_name(job.family.front().t_rule);
    n["R"] = job.family.front().R;
    n["N"] = job.family.front().N;
    json fam = json::array();
    for (const auto& cfg : job.family) fam.push_back({{"m", cfg.m}, {"K_A", cfg.K_A}, {"K_B", cfg.K_B}});
    n["family"] = fam;
    if (!job.delta_sweep.empty()) {
        n["delta_sweep"] = job.delta_sweep;
        n["remainder_density"] = job.density;
        n["remainder_decades"] = job.decades;
    }
    return job;
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("malformed JSON in '" + path + "': " + e.what());
    }
}

}  // namespace logbesov::cli
