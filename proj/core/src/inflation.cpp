#include "logbesov/inflation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "logbesov/besov.hpp"
#include "logbesov/littlewood_paley.hpp"
#include "logbesov/parallel.hpp"

namespace logbesov {

double rho(double xi_norm) { return phi_profile(8.0 * std::abs(xi_norm)); }

double rho(const Vec3& xi) { return rho(std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2])); }

namespace {

void check_eps(double eps) {
    if (!(eps > 0.0) || !(5.0 * eps * eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1/sqrt(5))");
}

}  // namespace

CarrierVectors carrier_vectors(int k, int n, double eps) {
    if (n < 3) throw std::invalid_argument("carrier vectors need n >= 3");
    check_eps(eps);
    CarrierVectors cv;
    const double two_k = std::ldexp(1.0, k);
    cv.a.assign(n, two_k / std::sqrt(static_cast<double>(n)));
    cv.b.assign(n, 0.0);
    cv.b[0] = 0.5 * two_k * eps;
    cv.b[1] = 0.5 * two_k * 2.0 * eps;
    cv.b[2] = 0.5 * two_k * std::sqrt(1.0 - 5.0 * eps * eps);
    cv.c.assign(n, 0.0);
    cv.c[0] = two_k;
    return cv;
}

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::main: return "main";
        case Variant::small_q: return "small-q";
        case Variant::large_q: return "large-q";
    }
    return "?";
}

Variant parse_variant(const std::string& s) {
    if (s == "main") return Variant::main;
    if (s == "small-q" || s == "small_q") return Variant::small_q;
    if (s == "large-q" || s == "large_q") return Variant::large_q;
    throw std::invalid_argument("unknown variant '" + s + "'");
}

const char* time_rule_name(TimeRule r) { return r == TimeRule::saturating ? "saturating" : "literal"; }

TimeRule parse_time_rule(const std::string& s) {
    if (s == "saturating") return TimeRule::saturating;
    if (s == "literal") return TimeRule::literal;
    throw std::invalid_argument("unknown t-rule '" + s + "'");
}

void InflationConfig::validate() const {
    if (n < 3) throw std::invalid_argument("the construction needs n >= 3");
    if (n > 3) throw std::invalid_argument("the sparse engine supports n = 3 only");
    check_eps(eps);
    if (K_A.empty() || K_B.empty()) throw std::invalid_argument("K_A and K_B must be non-empty");
    for (const auto* set : {&K_A, &K_B})
        for (std::size_t i = 0; i < set->size(); ++i) {
            if ((*set)[i] < 1) throw std::invalid_argument("indices must be positive");
            if (i > 0 && (*set)[i] <= (*set)[i - 1]) throw std::invalid_argument("index sets must be strictly increasing");
        }
    if (R < 1) throw std::invalid_argument("R must be positive");
    if (N < 0) throw std::invalid_argument("N must be nonnegative");
    if (!(q >= 1.0)) throw std::invalid_argument("q must be >= 1");
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
}

InflationConfig desk_preset(int m, Variant v, double eps) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    InflationConfig cfg;
    cfg.m = m;
    cfg.variant = v;
    cfg.eps = eps;
    std::vector<int> B;
    for (int i = m + 1; i <= 2 * m; ++i) B.push_back(3 * i);
    const int k0 = B.back() + m + 5;
    std::vector<int> A;
    for (int i = 0; i < m; ++i) A.push_back(k0 + i);
    switch (v) {
        case Variant::main: break;
        case Variant::small_q: A = {k0}; break;
        case Variant::large_q: B = {B.back()}; break;
    }
    cfg.K_A = A;
    cfg.K_B = B;
    return cfg;
}

InflationConfig literal_preset(int m, std::int64_t N) {
    InflationConfig cfg;
    cfg.m = m;
    cfg.R = 1;
    cfg.N = N;
    for (int k = 4 * m + 1; k <= 5 * m; ++k) cfg.K_A.push_back(4 * k);
    for (int k = m + 1; k <= 2 * m; ++k) cfg.K_B.push_back(4 * k);
    return cfg;
}

InflationConfig grid_preset(double eps) {
    InflationConfig cfg;
    cfg.m = 1;
    cfg.eps = eps;
    cfg.R = 1;
    cfg.N = 64;
    cfg.K_A = {4};
    cfg.K_B = {2};
    // The saturating rule would leave e^{-100} of the data at t*.
    cfg.t_rule = TimeRule::literal;
    return cfg;
}

double evaluation_time(const InflationConfig& cfg) {
    const double base = cfg.eps * std::ldexp(1.0, -2 * cfg.K_A.front());
    return cfg.t_rule == TimeRule::saturating ? 256.0 * base : base;
}

double amplitude_prefactor(const InflationConfig& cfg, double sigma, double q) {
    const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
    if (cfg.variant == Variant::small_q) return std::pow(static_cast<double>(cfg.K_B.size()), -sigma);
    return std::pow(static_cast<double>(cfg.K_A.size()), -sigma - inv_q);
}

double predicted_exponent(Variant v, double sigma, double q) {
    const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
    switch (v) {
        case Variant::main: return 1.0 - sigma - inv_q;
        case Variant::small_q: return inv_q - sigma;
        case Variant::large_q: return 1.0 - sigma - 2.0 * inv_q;
    }
    return 0.0;
}

// ---------------------------------------------------------------- geometry

namespace {

constexpr std::int64_t kMaxNominal = std::int64_t{1} << 62;

struct Geometry {
    std::int64_t half_width = 0;  // bump half-width along the first axis, lattice units
    std::vector<Cluster> clusters;
    std::int64_t max_component = 0;
};

Lattice round_lattice(const std::vector<double>& v, std::int64_t R) {
    Lattice out{};
    for (int i = 0; i < 3; ++i) out[i] = std::llroundl(static_cast<long double>(v[i]) * R);
    return out;
}

Lattice scaled(const Lattice& v, int s) { return {s * v[0], s * v[1], s * v[2]}; }

std::int64_t bump_half_width(std::int64_t R) {
    std::int64_t S = 0;
    while (rho(static_cast<double>(S + 1) / static_cast<double>(R)) > 0.0) ++S;
    return S;
}

Geometry geometry(const InflationConfig& cfg) {
    Geometry g;
    g.half_width = bump_half_width(cfg.R);
    for (int k : cfg.K_A) {
        const Lattice A = round_lattice(carrier_vectors(k, cfg.n, cfg.eps).a, cfg.R);
        for (int l : cfg.K_B) {
            const Lattice B = round_lattice(carrier_vectors(l, cfg.n, cfg.eps).b, cfg.R);
            for (int sa : {1, -1})
                for (int sb : {1, -1}) {
                    Cluster c;
                    c.center = scaled(A, sa) + scaled(B, sb);
                    c.radius = g.half_width;
                    c.k = k;
                    c.l = l;
                    c.sa = sa;
                    c.sb = sb;
                    g.clusters.push_back(c);
                    for (int i = 0; i < 3; ++i) {
                        const std::int64_t v = std::abs(c.center[i]) + (i == 0 ? g.half_width : 0);
                        g.max_component = std::max(g.max_component, v);
                    }
                }
        }
    }
    return g;
}

// min and max of |c + s e_1| / R over |s| <= S.
std::pair<double, double> segment_range(const Lattice& c, std::int64_t S, std::int64_t R) {
    auto norm_at = [&](std::int64_t s) {
        const Lattice p{c[0] + s, c[1], c[2]};
        return std::sqrt(static_cast<double>(static_cast<long double>(dot(p, p)))) / static_cast<double>(R);
    };
    const std::int64_t s_star = std::clamp(-c[0], -S, S);
    const double lo = norm_at(s_star);
    const double hi = std::max(norm_at(-S), norm_at(S));
    return {lo, hi};
}

std::int64_t nominal_grid(std::int64_t max_component) {
    std::int64_t N = 8;
    while (N < kMaxNominal && (N - 1) / 3 < max_component) N <<= 1;
    return N;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

AuditFailure::AuditFailure(const AuditReport& r)
    : std::runtime_error([&] {
          std::string s = "support audit failed:";
          for (const auto& v : r.violations) s += " [" + v + "]";
          return s;
      }()),
      report_(r) {}

AuditReport support_audit(const InflationConfig& cfg) {
    AuditReport rep;
    try {
        cfg.validate();
    } catch (const std::exception& e) {
        rep.pass = false;
        rep.violations.push_back(e.what());
        return rep;
    }
    const Geometry g = geometry(cfg);
    const std::int64_t S = g.half_width;
    const std::int64_t R = cfg.R;
    rep.max_component = g.max_component;

    // (i) every (k, l) family sits on the plateau of its own block, so the
    // families of distinct k occupy disjoint Littlewood-Paley annuli.
    {
        AuditCondition c{"(i) block annuli disjoint across k", true, kInf, ""};
        for (const auto& cl : g.clusters) {
            const auto [lo, hi] = segment_range(cl.center, S, R);
            const double scale = std::ldexp(1.0, cl.k);
            const double m = std::min(1.25 * scale - hi, lo - 0.75 * scale) / scale;
            if (m < c.margin) {
                c.margin = m;
                c.detail = "worst family k=" + std::to_string(cl.k) + " l=" + std::to_string(cl.l);
            }
        }
        c.pass = c.margin > 0.0;
        rep.conditions.push_back(c);
    }

    // (ii) low-frequency products. Same-l resonant pairs must land on the
    // plateau of block l; every other pair must avoid all K_B blocks.
    // (iv) sign structure of the main integrand on the resonant outputs.
    {
        AuditCondition c{"(ii) product frequencies in intended annuli", true, kInf, ""};
        AuditCondition s{"(iv) main integrand sign-definite per cluster", true, kInf, ""};
        const std::int64_t S2 = 2 * S;
        for (std::size_t a = 0; a < g.clusters.size(); ++a)
            for (std::size_t b = a; b < g.clusters.size(); ++b) {
                const auto& A = g.clusters[a];
                const auto& B = g.clusters[b];
                const Lattice ctr = A.center + B.center;
                const auto [lo, hi] = segment_range(ctr, S2, R);
                const bool resonant = A.k == B.k && A.sa == -B.sa && A.l == B.l && A.sb == B.sb;
                double margin = kInf;
                for (int j : cfg.K_B) {
                    const double scale = std::ldexp(1.0, j);
                    double mj;
                    if (resonant && j == A.l) {
                        mj = std::min(1.25 * scale - hi, lo - 0.75 * scale) / scale;
                    } else {
                        mj = std::max(0.625 * scale - hi, lo - 1.5 * scale) / scale;
                    }
                    margin = std::min(margin, mj);
                }
                if (margin < c.margin) {
                    c.margin = margin;
                    c.detail = std::string(resonant ? "resonant" : "non-resonant") + " pair k=" + std::to_string(A.k) +
                               "/" + std::to_string(B.k) + " l=" + std::to_string(A.l) + "/" + std::to_string(B.l);
                }
                if (resonant) {
                    const double gap = static_cast<double>(std::abs(ctr[1] - ctr[0]) - S2) /
                                       static_cast<double>(R) / std::ldexp(1.0, A.l);
                    if (gap < s.margin) {
                        s.margin = gap;
                        s.detail = "l=" + std::to_string(A.l);
                    }
                }
            }
        c.pass = c.margin > 0.0;
        s.pass = s.margin > 0.0;
        rep.conditions.push_back(c);
        rep.conditions.push_back(s);
    }

    // (iii) the input spectrum fits below the 2/3 cutoff of the grid, so the
    // quadratic products are alias-free.
    {
        AuditCondition c{"(iii) no aliasing into the dealiasing cube", true, 0.0, ""};
        if (cfg.N > 0) {
            rep.grid_N = cfg.N;
        } else {
            rep.grid_N = nominal_grid(g.max_component);
        }
        const std::int64_t cutoff = (rep.grid_N - 1) / 3;
        c.margin = static_cast<double>(cutoff - g.max_component) / static_cast<double>(std::max<std::int64_t>(cutoff, 1));
        c.pass = g.max_component <= cutoff;
        c.detail = "max |K_i| = " + std::to_string(g.max_component) + ", cutoff " + std::to_string(cutoff) + " on N = " +
                   std::to_string(rep.grid_N);
        rep.infeasible = !c.pass;
        rep.conditions.push_back(c);
    }

    for (const auto& c : rep.conditions)
        if (!c.pass) {
            rep.pass = false;
            rep.violations.push_back(c.name + ": margin " + fmt(c.margin) + " (" + c.detail + ")");
        }
    return rep;
}

// ---------------------------------------------------------------- data

std::vector<std::int64_t> bump_positions(const InflationConfig& cfg, std::int64_t N) {
    std::vector<std::int64_t> P;
    const auto nb = static_cast<int128>(cfg.K_B.size());
    for (std::size_t i = 0; i < cfg.K_B.size(); ++i)
        P.push_back(static_cast<std::int64_t>(static_cast<int128>(N) * (2 * static_cast<int128>(i) + 1) / (2 * nb)));
    return P;
}

SparseField build_sparse_initial_data(const InflationConfig& cfg, double scale) {
    const AuditReport rep = support_audit(cfg);
    if (!rep.pass) throw AuditFailure(rep);
    if (scale < 0.0) scale = amplitude_prefactor(cfg, cfg.sigma, cfg.q);

    const Geometry g = geometry(cfg);
    const std::int64_t S = g.half_width;
    SparseField f;
    f.n = cfg.n;
    f.R = cfg.R;
    f.N = rep.grid_N;
    const auto pos = bump_positions(cfg, f.N);

    // Normalize each line bump to unit peak in physical space.
    double Z = 0.0;
    for (std::int64_t s = -S; s <= S; ++s) Z += rho(static_cast<double>(s) / static_cast<double>(cfg.R));

    std::set<Lattice> seen;
    for (auto cl : g.clusters) {
        const std::size_t li = static_cast<std::size_t>(
            std::find(cfg.K_B.begin(), cfg.K_B.end(), cl.l) - cfg.K_B.begin());
        const Lattice P{pos[li], 0, 0};
        cl.begin = f.K.size();
        for (std::int64_t s = -S; s <= S; ++s) {
            const double r = rho(static_cast<double>(s) / static_cast<double>(cfg.R));
            if (r == 0.0) continue;
            const Lattice K{cl.center[0] + s, cl.center[1], cl.center[2]};
            if (!seen.insert(K).second) throw std::runtime_error("lattice rounding collision: bumps overlap");
            if (K[1] == 0) throw std::runtime_error("xi_2 vanishes on a bump");
            const cplx u1 = scale * std::ldexp(1.0, cl.k) * (r / Z) * std::conj(lattice_phase(K, P, f.N));
            const cplx u2 = -(static_cast<double>(K[0]) / static_cast<double>(K[1])) * u1;
            f.K.push_back(K);
            f.amp.push_back({u1, u2, cplx(0.0, 0.0)});
        }
        cl.end = f.K.size();
        f.clusters.push_back(cl);
    }
    return f;
}

SpectralField build_initial_data(const InflationConfig& cfg, double scale) {
    const SparseField f = build_sparse_initial_data(cfg, scale);
    if (cfg.N <= 0 || cfg.N > 512) throw std::invalid_argument("build_initial_data needs a dense grid size N <= 512");
    const GridSpec grid = make_grid(cfg.n, static_cast<int>(cfg.N), cfg.L());
    return to_grid(f, grid);
}

// ---------------------------------------------------------------- functionals

namespace {

ClusterFilter kb_filter(const InflationConfig& cfg) {
    const std::int64_t R = cfg.R;
    std::vector<int> js = cfg.K_B;
    return [R, js](const Lattice& c, std::int64_t radius) {
        const double r = std::sqrt(static_cast<double>(static_cast<long double>(dot(c, c)))) / static_cast<double>(R);
        const double rr = static_cast<double>(radius) / static_cast<double>(R);
        for (int j : js) {
            const double s = std::ldexp(1.0, j);
            if (r - rr < 1.5 * s && r + rr > 0.625 * s) return true;
        }
        return false;
    };
}

BlockSup& pick(BlockRow& row, FunctionalKind k) {
    switch (k) {
        case FunctionalKind::main: return row.main;
        case FunctionalKind::cross: return row.cross;
        case FunctionalKind::pressure: return row.pressure;
        case FunctionalKind::projected: return row.projected;
        case FunctionalKind::full: return row.full;
    }
    return row.main;
}

}  // namespace

FunctionalSet evaluate_functionals(const InflationConfig& cfg, double t, double scale) {
    if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
    const SparseField u = build_sparse_initial_data(cfg, scale);
    const auto filter = kb_filter(cfg);
    const auto centers = bump_positions(cfg, u.N);

    const SparseSpectrum s_main = duhamel_product(u, t, ProductKind::main, filter);
    const SparseSpectrum s_cross = duhamel_product(u, t, ProductKind::cross, filter);
    const SparseSpectrum s_press = duhamel_product(u, t, ProductKind::pressure, filter);
    const SparseSpectrum s_proj = duhamel_product(u, t, ProductKind::projected, filter);
    const SparseSpectrum s_full = duhamel_product(u, t, ProductKind::full, filter);

    FunctionalSet fs;
    fs.t = t;
    double defect = 0.0, ref = 0.0;
    for (const auto& [K, a] : s_proj) {
        auto get = [&](const SparseSpectrum& s) {
            auto it = s.find(K);
            return it == s.end() ? cplx(0.0, 0.0) : it->second[0];
        };
        defect = std::max(defect, std::abs(get(s_main) + get(s_cross) - get(s_press) - a[0]));
        ref = std::max(ref, std::abs(a[0]));
    }
    fs.recombination_defect = ref > 0.0 ? defect / ref : defect;

    const double kmin = cfg.K_A.front();
    const double sat = -std::expm1(-t * std::ldexp(1.0, 2 * static_cast<int>(kmin) + 1));
    for (int j : cfg.K_B) {
        BlockRow row;
        row.j = j;
        row.main = block_sup(s_main, u, j, 1, centers);
        row.cross = block_sup(s_cross, u, j, 1, centers);
        row.pressure = block_sup(s_press, u, j, 1, centers);
        row.projected = block_sup(s_proj, u, j, 1, centers);
        row.full = block_sup(s_full, u, j, 3, centers);
        row.surrogate = static_cast<double>(cfg.K_A.size()) * sat * cfg.eps * std::ldexp(1.0, j);
        fs.sign_definite = fs.sign_definite && row.main.sign_definite;
        fs.rows.push_back(row);
    }
    return fs;
}

double restricted_value(const FunctionalSet& fs, FunctionalKind kind, double sigma, double q, double pref) {
    std::map<int, double> blocks;
    for (auto row : fs.rows) blocks[row.j] = pick(row, kind).upper;
    return pref * pref * weighted_block_sum(blocks, -1.0, sigma, q);
}

MainFunctional inflation_functional(const InflationConfig& cfg, double t) {
    const double pref = amplitude_prefactor(cfg, cfg.sigma, cfg.q);
    const FunctionalSet fs = evaluate_functionals(cfg, t, pref);
    return {restricted_value(fs, FunctionalKind::main, cfg.sigma, cfg.q, 1.0), fs.rows};
}

double cross_functional(const InflationConfig& cfg, double t) {
    const double pref = amplitude_prefactor(cfg, cfg.sigma, cfg.q);
    return restricted_value(evaluate_functionals(cfg, t, pref), FunctionalKind::cross, cfg.sigma, cfg.q, 1.0);
}

double pressure_functional(const InflationConfig& cfg, double t) {
    const double pref = amplitude_prefactor(cfg, cfg.sigma, cfg.q);
    return restricted_value(evaluate_functionals(cfg, t, pref), FunctionalKind::pressure, cfg.sigma, cfg.q, 1.0);
}

InitialNorms initial_block_norms(const InflationConfig& cfg) {
    const SparseField u = build_sparse_initial_data(cfg, 1.0);
    const auto centers = bump_positions(cfg, u.N);
    SparseSpectrum s1, s2, sv;
    for (std::size_t i = 0; i < u.size(); ++i) {
        s1[u.K[i]] = {u.amp[i][0], 0.0, 0.0};
        s2[u.K[i]] = {u.amp[i][1], 0.0, 0.0};
        sv[u.K[i]] = u.amp[i];
    }
    InitialNorms out;
    for (int j : touched_blocks(sv, u.R)) {
        out.u1[j] = block_sup(s1, u, j, 1, centers).upper;
        out.u2[j] = block_sup(s2, u, j, 1, centers).upper;
        out.vec[j] = block_sup(sv, u, j, 3, centers).upper;
    }
    return out;
}

double norm_from_blocks(const std::map<int, double>& blocks, double sigma, double q, double pref) {
    return pref * weighted_block_sum(blocks, -1.0, sigma, q);
}

// ---------------------------------------------------------------- experiments

SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_loglog needs at least two points");
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::domain_error("fit_loglog needs positive data");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double dn = static_cast<double>(n);
    SlopeFit f;
    f.slope = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
    f.intercept = (sy - f.slope * sx) / dn;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (f.intercept + f.slope * lx[i]);
        ss += r * r;
    }
    f.residual = std::sqrt(ss / dn);
    return f;
}

RemainderSweep remainder_sweep(const InflationConfig& cfg, const std::vector<double>& deltas, int density,
                               double decades) {
    const SpectralField u0 = build_initial_data(cfg, 1.0);
    RemainderSweep out;
    const double T = evaluation_time(cfg);
    out.t_star = T;
    const TimeGrid times = make_time_grid(T, density, decades);
    const Trajectory h = heat_trajectory(u0, times);
    // Navier-Stokes sign: u = delta h - delta^2 B(h, h) + O(delta^3).
    const SpectralField v = -1.0 * duhamel_bilinear_all(h, h).back();
    const SpectralField hT = h.snapshots.back();
    const BesovParams bp{-1.0, 0.0, kInf, 2.0, 0};

    std::vector<double> ds, rs;
    for (double d : deltas) {
        PicardOptions opt;
        opt.density = density;
        opt.decades = decades;
        opt.maxiter = 60;
        opt.tol = 1e-9 * d * d * d;
        KatoParams kp;
        kp.sigma = 1.0;
        kp.q = kInf;
        const PicardResult res = picard_solve(d * u0, T, kp, opt);
        const SpectralField r = res.trajectory.snapshots.back() - d * hT - (d * d) * v;
        RemainderPoint p{d, besov_norm(r, bp), res.diagnostics.iterations};
        out.points.push_back(p);
        ds.push_back(d);
        rs.push_back(p.remainder);
    }
    if (ds.size() >= 2) out.fit = fit_loglog(ds, rs);
    out.fit.predicted = 3.0;
    return out;
}

std::vector<ConfigMeasurement> measure_family(const std::vector<InflationConfig>& family) {
    if (family.empty()) throw std::invalid_argument("empty configuration family");
    std::vector<ConfigMeasurement> out(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
        out[i].cfg = family[i];
        out[i].audit = support_audit(family[i]);
        if (!out[i].audit.pass) throw AuditFailure(out[i].audit);
    }
    parallel_for(
        family.size(),
        [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) {
                auto& m = out[i];
                m.t_star = evaluation_time(m.cfg);
                m.functionals = evaluate_functionals(m.cfg, m.t_star, 1.0);
                m.initial = initial_block_norms(m.cfg);
            }
        },
        1);
    return out;
}

InflationReport assemble_report(const std::vector<ConfigMeasurement>& ms, const std::vector<double>& sigmas, double q) {
    InflationReport rep;
    if (ms.empty()) throw std::invalid_argument("no measurements");
    rep.variant = ms.front().cfg.variant;
    rep.q = q;
    const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
    for (const auto& me : ms) {
        const auto& cfg = me.cfg;
        const auto& fs = me.functionals;
        const auto& in = me.initial;
        rep.audits.push_back(me.audit);
        double sur = kInf;
        for (const auto& row : fs.rows) sur = std::min(sur, row.main.upper / row.surrogate);
        for (double sigma : sigmas) {
            const double pref = amplitude_prefactor(cfg, sigma, q);
            InflationRow r;
            r.m = cfg.m;
            r.sigma = sigma;
            r.q = q;
            r.t_star = me.t_star;
            r.norm_u0 = norm_from_blocks(in.u1, sigma, q, pref);
            r.norm_u0_2 = norm_from_blocks(in.u2, sigma, q, pref);
            r.main = restricted_value(fs, FunctionalKind::main, sigma, q, pref);
            r.cross = restricted_value(fs, FunctionalKind::cross, sigma, q, pref);
            r.pressure = restricted_value(fs, FunctionalKind::pressure, sigma, q, pref);
            r.full_solution_norm = cfg.delta * cfg.delta * restricted_value(fs, FunctionalKind::full, sigma, q, pref);
            const double vec = norm_from_blocks(in.vec, sigma, q, pref);
            const double weak = norm_from_blocks(in.vec, 0.0, 2.0, pref);
            r.chain_constant = weak / (std::pow(static_cast<double>(cfg.K_A.size()), 0.5 - inv_q - sigma) * vec);
            r.recombination_defect = fs.recombination_defect;
            r.surrogate_ratio = sur;
            r.sign_definite = fs.sign_definite;
            rep.rows.push_back(r);
        }
    }

    for (double sigma : sigmas) {
        std::vector<double> m, mains, crosses, presses, fulls, norms;
        for (const auto& r : rep.rows)
            if (r.sigma == sigma) {
                m.push_back(r.m);
                mains.push_back(r.main);
                crosses.push_back(r.cross);
                presses.push_back(r.pressure);
                fulls.push_back(r.full_solution_norm);
                norms.push_back(r.norm_u0);
            }
        if (m.size() < 2) continue;
        const double pred = predicted_exponent(rep.variant, sigma, q);
        rep.main_fit[sigma] = fit_loglog(m, mains);
        rep.main_fit[sigma].predicted = pred;
        rep.cross_fit[sigma] = fit_loglog(m, crosses);
        rep.pressure_fit[sigma] = fit_loglog(m, presses);
        rep.full_fit[sigma] = fit_loglog(m, fulls);
        rep.full_fit[sigma].predicted = pred;
        rep.norm_fit[sigma] = fit_loglog(m, norms);
    }
    return rep;
}

InflationReport scaling_experiment(const std::vector<InflationConfig>& family, const std::vector<double>& sigmas,
                                   double q) {
    return assemble_report(measure_family(family), sigmas, q);
}

namespace {

std::string num(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

std::string InflationReport::to_csv() const {
    std::ostringstream os;
    os << "m,sigma,q,t_star,norm_u0,main,cross,pressure,full_solution_norm,slope_fit,slope_residual\n";
    for (const auto& r : rows) {
        // A single configuration has no slope; say so rather than print zero.
        double slope = std::numeric_limits<double>::quiet_NaN(), res = slope;
        if (auto it = main_fit.find(r.sigma); it != main_fit.end()) {
            slope = it->second.slope;
            res = it->second.residual;
        }
        os << r.m << ',' << num(r.sigma) << ',' << num(r.q) << ',' << num(r.t_star) << ',' << num(r.norm_u0) << ','
           << num(r.main) << ',' << num(r.cross) << ',' << num(r.pressure) << ',' << num(r.full_solution_norm) << ','
           << num(slope) << ',' << num(res) << '\n';
    }
    return os.str();
}

}  // namespace logbesov
