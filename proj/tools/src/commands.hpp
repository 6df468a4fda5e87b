#pragma once

#include <string>

#include "manifest.hpp"

namespace logbesov::cli {

// Handlers return 0 on success and 2 when a numerical failure was detected
// and reported. Validation problems are thrown as std::invalid_argument (or
// one of the library's validation exceptions) and become exit code 1.

struct FieldOptions {
    std::string kind = "taylor-green";  // taylor-green | random | random-scalar | inflation
    int n = 3;
    int N = 32;
    double L = kTwoPi;
    int kmax = 4;
    double amp = 1.0;
    unsigned long long seed = 1;
    std::string config;  // inflation kind: JSON config of a dense (grid) job
    std::string out;
    std::string info;    // summarize an existing file instead
};
int run_field(const FieldOptions& o, RunManifest& rm);

struct NormOptions {
    std::string field;
    double s = -1.0, sigma = 0.0;
    std::string p = "inf", q = "inf";
    int jmax = 0;
    std::string blocks;
    bool heat = false;
    double t0 = 1.0, gamma = 0.0;
    int density = 16;
    std::string out;
};
int run_norm(const NormOptions& o, RunManifest& rm);

struct DecomposeOptions {
    std::string field;
    std::string out_prefix;
    std::string p = "inf";
    int jmax = 0;
};
int run_lp_decompose(const DecomposeOptions& o, RunManifest& rm);

struct HeatOptions {
    std::string field;
    double t = 0.0;
    std::string out;
};
int run_heat(const HeatOptions& o, RunManifest& rm);

struct ProjectOptions {
    std::string field;
    std::string out;
};
int run_project(const ProjectOptions& o, RunManifest& rm);

struct SolveOptions {
    std::string u0;
    double T = 0.1;
    double sigma = 1.0;
    std::string q = "inf";
    std::string method = "picard";
    double tol = 1e-8;
    int maxiter = 50;
    int density = 32;
    double decades = 6.0;
    double dt = 0.0;  // rk4 step; 0 picks T / 1000
    int snapshots = 3;
    std::string out_prefix;
};
int run_solve(const SolveOptions& o, RunManifest& rm);

struct BilinearOptions {
    double sigma = 1.0;
    std::string q = "inf";
    double T = 1.0;
    int density = 16;
    double decades = 6.0;
    std::string field;  // optional: also measure on the heat flow of this field
    std::string out;
};
int run_bilinear_check(const BilinearOptions& o, RunManifest& rm);

struct IneqOptions {
    std::string lemma;
    std::string q = "inf";
    double sigma = 1.0;
    std::string family = "builtin";
    double T = 1.0;
    int density = 16;
    double decades = 6.0;
    std::string out;
};
int run_ineq_check(const IneqOptions& o, RunManifest& rm);

struct InflateOptions {
    std::string config;
    std::string out;
    std::string summary;
    // Overrides of config fields.
    std::string q, variant, sigmas, t_rule, m_range;
    double eps = 0.0;
};
int run_inflate(const InflateOptions& o, RunManifest& rm);

struct AuditOptions {
    std::string config;
    std::string out;
};
int run_audit(const AuditOptions& o, RunManifest& rm);

}  // namespace logbesov::cli
