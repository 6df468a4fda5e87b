#include "logbesov/besov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "logbesov/littlewood_paley.hpp"

namespace logbesov {

void BesovParams::validate() const {
    if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
    if (!(p >= 1.0)) throw std::invalid_argument("p must lie in [1, inf]");
    if (!(q >= 1.0)) throw std::invalid_argument("q must lie in [1, inf]");
    if (jmax < 0) throw std::invalid_argument("jmax must be >= 1");
}

double sigma_q(double q) {
    if (!(q >= 1.0)) throw std::invalid_argument("sigma_q requires q >= 1");
    if (std::isinf(q)) return 1.0;
    return q >= 2.0 ? (q - 1.0) / q : 1.0 / q;
}

double weighted_block_sum(const std::map<int, double>& block_norms, double s, double sigma, double q) {
    double acc = 0.0;
    for (const auto& [j, v] : block_norms) {
        const double w = std::exp2(j * s) * std::pow(static_cast<double>(j), sigma) * v;
        if (std::isinf(q)) {
            acc = std::max(acc, w);
        } else {
            acc += std::pow(w, q);
        }
    }
    return std::isinf(q) ? acc : std::pow(acc, 1.0 / q);
}

namespace {

bool all_zero(const SpectralField& f) {
    for (const auto& v : f.data())
        if (v != cplx(0.0, 0.0)) return false;
    return true;
}

double block_lp(const SpectralField& piece, double p) { return all_zero(piece) ? 0.0 : lp_norm(piece, p); }

double truncation_residual(const SpectralField& u, int jmax) {
    const GridSpec& g = u.grid();
    const double radius = 5.0 * std::ldexp(1.0, jmax - 2);
    double total = 0.0, beyond = 0.0;
    for (int c = 0; c < u.components(); ++c) {
        for (std::size_t i = 0; i < g.points(); ++i) {
            const double e = std::norm(u.at(c, i));
            total += e;
            const Vec3 x = g.xi(i);
            if (std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) > radius) beyond += e;
        }
    }
    return total > 0.0 ? std::sqrt(beyond / total) : 0.0;
}

BesovBreakdown breakdown_impl(const SpectralField& u0, const BesovParams& bp, const std::vector<int>* A) {
    bp.validate();
    const SpectralField u = to_spectral(u0);
    BesovBreakdown out;
    const int cap = default_jmax(u.grid());
    out.jmax = bp.jmax > 0 ? bp.jmax : cap;
    if (out.jmax > cap) throw std::out_of_range("jmax exceeds the grid capacity");
    std::vector<int> blocks;
    if (A != nullptr) {
        for (int j : *A) {
            if (j < 1 || j > out.jmax) throw std::out_of_range("restricted block index outside [1, jmax]");
            blocks.push_back(j);
        }
        std::sort(blocks.begin(), blocks.end());
        blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
        out.empty_set = blocks.empty();
    } else {
        for (int j = 1; j <= out.jmax; ++j) blocks.push_back(j);
        out.low = block_lp(low_pass(u), bp.p);
    }
    for (int j : blocks) {
        const double v = block_lp(lp_block(u, j), bp.p);
        out.block_norms[j] = v;
        out.contributions[j] = std::exp2(j * bp.s) * std::pow(static_cast<double>(j), bp.sigma) * v;
    }
    out.norm = out.low + weighted_block_sum(out.block_norms, bp.s, bp.sigma, bp.q);
    out.truncation_residual = truncation_residual(u, out.jmax);
    return out;
}

}  // namespace

BesovBreakdown besov_breakdown(const SpectralField& u, const BesovParams& bp) { return breakdown_impl(u, bp, nullptr); }

BesovBreakdown besov_breakdown_restricted(const SpectralField& u, const BesovParams& bp, const std::vector<int>& A) {
    return breakdown_impl(u, bp, &A);
}

double besov_norm(const SpectralField& u, const BesovParams& bp) { return besov_breakdown(u, bp).norm; }

double besov_norm_restricted(const SpectralField& u, const BesovParams& bp, const std::vector<int>& A,
                             bool* empty_flag) {
    const BesovBreakdown b = besov_breakdown_restricted(u, bp, A);
    if (empty_flag != nullptr) *empty_flag = b.empty_set;
    return b.norm;
}

// ---------------------------------------------------------------- heat characterization

void HeatCharParams::validate(double s) const {
    if (!(t0 > 0.0)) throw std::invalid_argument("t0 must be positive");
    if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
    if (!(gamma > s)) throw std::invalid_argument("gamma must exceed s");
    if (density < 2) throw std::invalid_argument("heat quadrature needs >= 2 nodes per decade");
}

HeatCharBreakdown heat_char_breakdown(const SpectralField& u0, const BesovParams& bp, const HeatCharParams& hc) {
    bp.validate();
    hc.validate(bp.s);
    const SpectralField u = to_spectral(u0);
    const GridSpec& g = u.grid();

    double kmax2 = 0.0;
    for (std::size_t i = 0; i < g.points(); ++i) {
        bool any = false;
        for (int c = 0; c < u.components(); ++c) any = any || std::abs(u.at(c, i)) > 0.0;
        if (!any) continue;
        const Vec3 x = g.xi(i);
        kmax2 = std::max(kmax2, x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    }
    double t_min = hc.t_min;
    if (t_min <= 0.0) t_min = 1e-4 / std::max(kmax2, 1.0);
    t_min = std::min(t_min, hc.t0 * 1e-2);
    const double decades = std::log10(hc.t0 / t_min);

    HeatCharBreakdown out;
    out.grid = make_time_grid(hc.t0, hc.density, std::ceil(decades * hc.density) / hc.density);
    const double s = bp.s, sigma = bp.sigma, gamma = hc.gamma;
    const double eT = std::exp(1.0) * hc.t0;

    out.weighted.resize(out.grid.size());
    for (std::size_t n = 0; n < out.grid.size(); ++n) {
        const double t = out.grid.nodes[n];
        const SpectralField v = apply_multiplier(u, [t, gamma](const Vec3& x) {
            const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
            const double smooth = gamma == 0.0 ? 1.0 : std::pow(t * r2, 0.5 * gamma);
            return cplx(smooth * std::exp(-t * r2), 0.0);
        });
        const double w = std::pow(t, -0.5 * s) * std::pow(std::abs(std::log(t / eT)), sigma);
        out.weighted[n] = w * lp_norm(v, bp.p);
    }
    const SpectralField end = apply_multiplier(u, [&](const Vec3& x) {
        return cplx(std::exp(-hc.t0 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2])), 0.0);
    });
    out.endpoint = lp_norm(end, bp.p);
    if (std::isinf(bp.q)) {
        out.integral = sampled_sup(out.grid, out.weighted, true);
    } else {
        std::vector<double> gq(out.weighted.size());
        for (std::size_t n = 0; n < gq.size(); ++n) gq[n] = std::pow(out.weighted[n], bp.q);
        out.integral = std::pow(integrate_dt_over_t(out.grid, gq, gq.size() - 1, hc.t0).value, 1.0 / bp.q);
    }
    out.norm = out.endpoint + out.integral;
    return out;
}

double heat_char_norm(const SpectralField& u, const BesovParams& bp, const HeatCharParams& hc) {
    return heat_char_breakdown(u, bp, hc).norm;
}

std::vector<EmbeddingRow> embedding_report(const SpectralField& u,
                                           const std::vector<std::pair<BesovParams, BesovParams>>& pairs) {
    std::vector<EmbeddingRow> rows;
    for (const auto& [strong, weak] : pairs) {
        if (strong.p != weak.p) throw std::invalid_argument("embedding pairs must share p");
        EmbeddingRow r;
        r.stronger = strong;
        r.weaker = weak;
        r.norm_stronger = besov_norm(u, strong);
        r.norm_weaker = besov_norm(u, weak);
        r.constant = r.norm_stronger > 0.0 ? r.norm_weaker / r.norm_stronger : 0.0;
        r.pointwise = weak.s <= strong.s && weak.sigma <= strong.sigma && weak.q >= strong.q;
        r.holds = !r.pointwise || r.constant <= 1.0 + 1e-12;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace logbesov
