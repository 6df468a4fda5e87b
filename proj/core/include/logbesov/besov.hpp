#pragma once

#include <map>
#include <string>
#include <vector>

#include "logbesov/field.hpp"
#include "logbesov/time_grid.hpp"

namespace logbesov {

struct BesovParams {
    double s = -1.0;
    double sigma = 0.0;
    double p = kInf;
    double q = kInf;
    int jmax = 0;  // 0 selects default_jmax(grid)

    void validate() const;
};

// 1 - min(1 - 1/q, 1/q), computed with a single rounding: (q-1)/q for q >= 2,
// 1/q below. q = inf gives 1.
double sigma_q(double q);

// (sum_j (2^{js} j^sigma x_j)^q)^{1/q} over the supplied block values (sup
// when q = inf). Shared by the grid and sparse norm paths.
double weighted_block_sum(const std::map<int, double>& block_norms, double s, double sigma, double q);

struct BesovBreakdown {
    double norm = 0.0;
    double low = 0.0;                    // ||S_0 u||_p (0 for restricted norms)
    std::map<int, double> block_norms;   // ||Delta_j u||_p
    std::map<int, double> contributions; // 2^{js} j^sigma ||Delta_j u||_p
    double truncation_residual = 0.0;    // relative l2 energy beyond 5*2^{jmax-2}
    bool empty_set = false;
    int jmax = 0;
};

BesovBreakdown besov_breakdown(const SpectralField& u, const BesovParams& bp);
BesovBreakdown besov_breakdown_restricted(const SpectralField& u, const BesovParams& bp, const std::vector<int>& A);

double besov_norm(const SpectralField& u, const BesovParams& bp);
// Norm over the block set A without the low-frequency term. An empty A gives
// 0 and sets *empty_flag when provided.
double besov_norm_restricted(const SpectralField& u, const BesovParams& bp, const std::vector<int>& A,
                             bool* empty_flag = nullptr);

struct HeatCharParams {
    double t0 = 1.0;
    double gamma = 0.0;
    int density = 16;       // nodes per decade
    double t_min = 0.0;     // 0 picks 1e-4 / |xi|_max^2 (capped by t0)

    void validate(double s) const;
};

struct HeatCharBreakdown {
    double norm = 0.0;
    double endpoint = 0.0;  // ||e^{t0 Delta} u||_p
    double integral = 0.0;  // weighted L^q(dt/t) part
    TimeGrid grid;
    std::vector<double> weighted;  // t^{-s/2}|ln(t/(e t0))|^sigma ||(sqrt t |xi|)^gamma e^{t Delta} u||_p
};

HeatCharBreakdown heat_char_breakdown(const SpectralField& u, const BesovParams& bp, const HeatCharParams& hc);
double heat_char_norm(const SpectralField& u, const BesovParams& bp, const HeatCharParams& hc);

struct EmbeddingRow {
    BesovParams stronger;  // the smaller space
    BesovParams weaker;
    double norm_stronger = 0.0;
    double norm_weaker = 0.0;
    double constant = 0.0;   // norm_weaker / norm_stronger
    bool pointwise = false;  // weights ordered termwise, so constant <= 1 exactly
    bool holds = true;       // pointwise rows: constant <= 1 + 1e-12
};

// Each pair is (stronger, weaker); p must agree within a pair.
std::vector<EmbeddingRow> embedding_report(const SpectralField& u,
                                           const std::vector<std::pair<BesovParams, BesovParams>>& pairs);

}  // namespace logbesov
