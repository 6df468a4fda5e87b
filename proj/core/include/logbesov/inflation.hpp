#pragma once

#include <map>
#include <string>
#include <vector>

#include "logbesov/field.hpp"
#include "logbesov/navier_stokes.hpp"
#include "logbesov/sparse.hpp"

namespace logbesov {

// phi(8|xi|): 1 for |xi| <= 5/32, supported in |xi| <= 3/16.
double rho(double xi_norm);
double rho(const Vec3& xi);

struct CarrierVectors {
    std::vector<double> a, b, c;
};

// a_k = 2^k n^{-1/2}(1,...,1), b_k = 2^{k-1}(eps, 2 eps, sqrt(1 - 5 eps^2), 0, ...),
// c_k = 2^k e_1. Requires n >= 3 and 0 < eps < 1/sqrt(5).
CarrierVectors carrier_vectors(int k, int n, double eps);

enum class Variant { main, small_q, large_q };
const char* variant_name(Variant v);
Variant parse_variant(const std::string& s);

// saturating: t* = 256 eps / 4^{min K_A}, so t* |a_k|^2 is the same multiple of
// eps as in the original scaling and every carrier term of the resonant sum is
// saturated. literal: t* = eps / 4^{min K_A}.
enum class TimeRule { saturating, literal };
const char* time_rule_name(TimeRule r);
TimeRule parse_time_rule(const std::string& s);

struct InflationConfig {
    int n = 3;
    int m = 2;  // sweep label
    Variant variant = Variant::main;
    std::vector<int> K_A, K_B;
    double eps = 0.125;
    double delta = 1e-3;
    double sigma = 0.0;  // parameters of the amplitude prefactor
    double q = kInf;
    std::int64_t R = 128;  // lattice refinement, period L = 2 pi R
    std::int64_t N = 0;    // grid the spectrum must fit (0: smallest power of two that does)
    TimeRule t_rule = TimeRule::saturating;

    void validate() const;
    double L() const { return kTwoPi * static_cast<double>(R); }
};

// Desk configuration used by the scaling experiments:
//   K_B = {3i : m < i <= 2m}, K_A = {k0, ..., k0 + m - 1}, k0 = max K_B + m + 5,
// with the variants keeping a single index (k0 for small-q, 6m for large-q).
InflationConfig desk_preset(int m, Variant v = Variant::main, double eps = 0.125);
// The original index sets at scale m on a dense grid of side N (R = 1).
InflationConfig literal_preset(int m, std::int64_t N = 256);
// Small configuration whose spectrum fits a 64^3 grid, for full solves.
InflationConfig grid_preset(double eps = 0.4);

double evaluation_time(const InflationConfig& cfg);
// |K_A|^{-sigma-1/q} for main and large-q, |K_B|^{-sigma} for small-q.
double amplitude_prefactor(const InflationConfig& cfg, double sigma, double q);
// 1 - sigma - 1/q, 1/q - sigma, 1 - sigma - 2/q for the three variants.
double predicted_exponent(Variant v, double sigma, double q);

struct AuditCondition {
    std::string name;
    bool pass = true;
    double margin = 0.0;  // worst signed margin, relative to the block scale
    std::string detail;
};

struct AuditReport {
    std::vector<AuditCondition> conditions;
    bool pass = true;
    bool infeasible = false;  // spectrum does not fit the configured grid
    std::int64_t grid_N = 0;
    std::int64_t max_component = 0;
    std::vector<std::string> violations;
};

AuditReport support_audit(const InflationConfig& cfg);

class AuditFailure : public std::runtime_error {
public:
    explicit AuditFailure(const AuditReport& r);
    const AuditReport& report() const { return report_; }

private:
    AuditReport report_;
};

// Initial data with prefactor `scale` (cfg prefactor when scale < 0) as an
// exact sparse spectrum: u_1 from the bump families, u_2 = -(xi_1/xi_2) u_1.
// Bump (k, l) sits at x_1 = L (i + 1/2) / |K_B| for l the i-th element of K_B.
SparseField build_sparse_initial_data(const InflationConfig& cfg, double scale = -1.0);
// Same data on the configured dense grid.
SpectralField build_initial_data(const InflationConfig& cfg, double scale = -1.0);
// Nominal-grid x_1 positions of the bumps, one per element of K_B.
std::vector<std::int64_t> bump_positions(const InflationConfig& cfg, std::int64_t N);

struct BlockRow {
    int j = 0;
    BlockSup main, cross, pressure, projected, full;
    double surrogate = 0.0;  // m (1 - e^{-t 2^{2 kmin + 1}}) eps 2^j
};

// Unit-prefactor block sup norms of every functional over K_B at time t.
struct FunctionalSet {
    double t = 0.0;
    std::vector<BlockRow> rows;
    double recombination_defect = 0.0;  // max |main + cross - pressure - projected| / max |projected|
    bool sign_definite = true;
};

FunctionalSet evaluate_functionals(const InflationConfig& cfg, double t, double scale = 1.0);

enum class FunctionalKind { main, cross, pressure, projected, full };
// pref^2 times the K_B-restricted B^{-1,sigma}_{inf,q} norm of the chosen rows.
double restricted_value(const FunctionalSet& fs, FunctionalKind kind, double sigma, double q, double pref);

struct MainFunctional {
    double value = 0.0;
    std::vector<BlockRow> rows;
};
// Data at the cfg prefactor; values are the K_B-restricted norms at (cfg.sigma, cfg.q).
MainFunctional inflation_functional(const InflationConfig& cfg, double t);
double cross_functional(const InflationConfig& cfg, double t);
double pressure_functional(const InflationConfig& cfg, double t);

struct InitialNorms {
    std::map<int, double> u1, u2, vec;  // block sups at unit prefactor
};
InitialNorms initial_block_norms(const InflationConfig& cfg);
// B^{-1,sigma}_{inf,q} norm from unit block sups (no low-frequency content).
double norm_from_blocks(const std::map<int, double>& blocks, double sigma, double q, double pref);

struct InflationRow {
    int m = 0;
    double sigma = 0.0, q = kInf, t_star = 0.0;
    double norm_u0 = 0.0;    // first component
    double norm_u0_2 = 0.0;  // second component
    double main = 0.0, cross = 0.0, pressure = 0.0;
    double full_solution_norm = 0.0;  // K_B-restricted norm of the second Picard iterate from delta u0
    double chain_constant = 0.0;      // ||u0||_{B^{-1}_{inf 2}} / (|K_A|^{1/2-1/q-sigma} ||u0||)
    double recombination_defect = 0.0;
    double surrogate_ratio = 0.0;     // min over blocks of computed / surrogate
    bool sign_definite = true;
};

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // RMS of log residuals
    double predicted = 0.0;
};
SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct RemainderPoint {
    double delta = 0.0;
    double remainder = 0.0;
    int iterations = 0;
};

struct RemainderSweep {
    std::vector<RemainderPoint> points;
    SlopeFit fit;
    double t_star = 0.0;
};

// Solves from delta u0 with picard_solve and measures
// ||u - delta e^{t Delta}u0 - delta^2 v||_{B^{-1}_{inf 2}} at t*, v the second-order term.
RemainderSweep remainder_sweep(const InflationConfig& cfg, const std::vector<double>& deltas,
                               int density = 6, double decades = 1.0);

struct InflationReport {
    Variant variant = Variant::main;
    double q = kInf;
    std::vector<InflationRow> rows;
    std::map<double, SlopeFit> main_fit, cross_fit, pressure_fit, full_fit, norm_fit;
    std::vector<AuditReport> audits;
    RemainderSweep remainder;
    bool has_remainder = false;

    std::string to_csv() const;
};

// Everything the report needs from one configuration, independent of (sigma, q).
struct ConfigMeasurement {
    InflationConfig cfg;
    AuditReport audit;
    double t_star = 0.0;
    FunctionalSet functionals;  // unit prefactor
    InitialNorms initial;       // unit prefactor
};

// Every config must pass the audit (AuditFailure otherwise). Configs are
// measured concurrently; the result does not depend on the thread count.
std::vector<ConfigMeasurement> measure_family(const std::vector<InflationConfig>& family);
InflationReport assemble_report(const std::vector<ConfigMeasurement>& ms, const std::vector<double>& sigmas, double q);
InflationReport scaling_experiment(const std::vector<InflationConfig>& family, const std::vector<double>& sigmas,
                                   double q);

}  // namespace logbesov
