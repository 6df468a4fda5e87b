#include "logbesov/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "logbesov/littlewood_paley.hpp"

namespace logbesov {

int128 dot(const Lattice& a, const Lattice& b) {
    return static_cast<int128>(a[0]) * b[0] + static_cast<int128>(a[1]) * b[1] + static_cast<int128>(a[2]) * b[2];
}

Lattice operator+(const Lattice& a, const Lattice& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Lattice operator-(const Lattice& a) { return {-a[0], -a[1], -a[2]}; }

namespace {

double to_double(int128 v) { return static_cast<double>(static_cast<long double>(v)); }

double phys_norm2(const Lattice& K, std::int64_t R) {
    const long double r = static_cast<long double>(R);
    return static_cast<double>(static_cast<long double>(dot(K, K)) / (r * r));
}

double phys_norm(const Lattice& K, std::int64_t R) { return std::sqrt(phys_norm2(K, R)); }

// Phase 2π r / N for a residue r, with r reduced into [0, N).
cplx phase_of(int128 r, std::int64_t N) {
    r %= N;
    if (r < 0) r += N;
    const double ang = static_cast<double>(kTwoPi * (static_cast<long double>(r) / static_cast<long double>(N)));
    return {std::cos(ang), std::sin(ang)};
}

// Closed-form Duhamel weight for the ordered pair (p, q).
double pair_weight(double t, double p2, double q2, double xi2, double lambda) {
    if (lambda > 0.0) return std::exp(-t * xi2) * (-std::expm1(-t * lambda)) / lambda;
    if (lambda < 0.0) return std::exp(-t * (p2 + q2)) * (-std::expm1(t * lambda)) / (-lambda);
    return t * std::exp(-t * xi2);
}

}  // namespace

double SparseField::xi2(std::size_t i) const { return phys_norm2(K.at(i), R); }

std::int64_t SparseField::max_abs_component() const {
    std::int64_t m = 0;
    for (const auto& k : K)
        for (auto c : k) m = std::max(m, c < 0 ? -c : c);
    return m;
}

cplx lattice_phase(const Lattice& K, const Lattice& P, std::int64_t N) {
    if (N <= 0) throw std::invalid_argument("lattice_phase: N must be positive");
    return phase_of(dot(K, P), N);
}

SpectralField to_grid(const SparseField& f, const GridSpec& grid) {
    if (grid.n != f.n) throw std::invalid_argument("to_grid: dimension mismatch");
    if (std::abs(grid.L - f.L()) > 1e-12 * f.L()) throw std::invalid_argument("to_grid: grid length must be 2*pi*R");
    SpectralField out(grid, f.n, Domain::spectral);
    for (std::size_t i = 0; i < f.size(); ++i) {
        Wavevector w{};
        for (int a = 0; a < 3; ++a) {
            const auto v = f.K[i][a];
            if (a >= f.n) {
                if (v != 0) throw std::out_of_range("to_grid: mode outside the grid dimension");
                continue;
            }
            if (v > grid.N || v < -grid.N) throw std::out_of_range("to_grid: mode not representable");
            w[a] = static_cast<int>(v);
        }
        if (!grid.representable(w)) throw std::out_of_range("to_grid: mode not representable");
        const std::size_t idx = grid.index_of(w);
        for (int c = 0; c < f.n; ++c) out.at(c, idx) += f.amp[i][c];
    }
    return out;
}

const char* product_name(ProductKind k) {
    switch (k) {
        case ProductKind::main: return "main";
        case ProductKind::cross: return "cross";
        case ProductKind::pressure: return "pressure";
        case ProductKind::projected: return "projected";
        case ProductKind::full: return "full";
    }
    return "?";
}

SparseSpectrum duhamel_product(const SparseField& u, double t, ProductKind kind, const ClusterFilter& filter) {
    if (!(t > 0.0)) throw std::invalid_argument("duhamel_product: t must be positive");
    if (u.clusters.empty() && u.size() > 0) throw std::invalid_argument("duhamel_product: field carries no clusters");
    const double R = static_cast<double>(u.R);
    const cplx I(0.0, 1.0);
    SparseSpectrum out;

    for (const auto& A : u.clusters) {
        for (const auto& B : u.clusters) {
            const Lattice center = A.center + B.center;
            if (filter && !filter(center, A.radius + B.radius)) continue;
            for (std::size_t ip = A.begin; ip < A.end; ++ip) {
                const Lattice& p = u.K[ip];
                const Amp3& U = u.amp[ip];
                const double p2 = u.xi2(ip);
                for (std::size_t iq = B.begin; iq < B.end; ++iq) {
                    const Lattice& q = u.K[iq];
                    const Amp3& V = u.amp[iq];
                    const Lattice K = p + q;
                    const double q2 = u.xi2(iq);
                    const double k2 = phys_norm2(K, u.R);
                    const double lambda = -2.0 * to_double(dot(p, q)) / (R * R);
                    const double w = pair_weight(t, p2, q2, k2, lambda);
                    if (w == 0.0) continue;
                    const double x[3] = {static_cast<double>(K[0]) / R, static_cast<double>(K[1]) / R,
                                         static_cast<double>(K[2]) / R};
                    Amp3 add{};
                    switch (kind) {
                        case ProductKind::main:
                            add[0] = I * (x[0] - x[1]) * U[0] * V[0];
                            break;
                        case ProductKind::cross:
                            add[0] = I * x[1] * (U[0] + U[1]) * V[0];
                            break;
                        case ProductKind::pressure: {
                            if (k2 == 0.0) break;
                            const cplx xu = x[0] * U[0] + x[1] * U[1];
                            const cplx xv = x[0] * V[0] + x[1] * V[1];
                            add[0] = I * x[0] * xu * xv / k2;
                            break;
                        }
                        case ProductKind::projected:
                        case ProductKind::full: {
                            const cplx xv = x[0] * V[0] + x[1] * V[1] + x[2] * V[2];
                            const cplx xu = x[0] * U[0] + x[1] * U[1] + x[2] * U[2];
                            const int comps = kind == ProductKind::full ? u.n : 1;
                            for (int c = 0; c < comps; ++c) {
                                add[c] = I * xv * U[c];
                                if (k2 != 0.0) add[c] -= I * x[c] * xu * xv / k2;
                            }
                            break;
                        }
                    }
                    auto& slot = out[K];
                    for (int c = 0; c < 3; ++c) slot[c] += w * add[c];
                }
            }
        }
    }
    return out;
}

SparseSpectrum spectrum_of(const SparseField& f) {
    SparseSpectrum s;
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto& slot = s[f.K[i]];
        for (int c = 0; c < 3; ++c) slot[c] += f.amp[i][c];
    }
    return s;
}

std::vector<int> touched_blocks(const SparseSpectrum& spec, std::int64_t R) {
    std::vector<int> js;
    for (const auto& [K, a] : spec) {
        (void)a;
        const double r = phys_norm(K, R);
        if (r <= 0.0) continue;
        const int lo = std::max(1, static_cast<int>(std::floor(std::log2(r / 1.5))) - 1);
        const int hi = static_cast<int>(std::ceil(std::log2(r * 1.6))) + 1;
        for (int j = lo; j <= hi; ++j)
            if (psi_j(r, j) != 0.0) js.push_back(j);
    }
    std::sort(js.begin(), js.end());
    js.erase(std::unique(js.begin(), js.end()), js.end());
    return js;
}

namespace {

struct Group {
    std::vector<std::int64_t> offset;  // K0 - K0 of the first member
    std::vector<Amp3> amp;
};

}  // namespace

BlockSup block_sup(const SparseSpectrum& spec, const SparseField& ref, int j, int components,
                   const std::vector<std::int64_t>& centers) {
    BlockSup out;
    out.j = j;
    const std::int64_t N = ref.N;
    if (N <= 0) throw std::invalid_argument("block_sup: reference field has no nominal grid");
    components = std::clamp(components, 1, 3);

    // Restrict to the block and group along lines parallel to the first axis.
    std::map<std::pair<std::int64_t, std::int64_t>, std::vector<std::pair<std::int64_t, Amp3>>> lines;
    std::vector<std::pair<Lattice, Amp3>> modes;
    for (const auto& [K, a] : spec) {
        const double w = psi_j(phys_norm(K, ref.R), j);
        if (w == 0.0) continue;
        Amp3 b{};
        bool any = false;
        for (int c = 0; c < components; ++c) {
            b[c] = w * a[c];
            any = any || b[c] != cplx(0.0, 0.0);
        }
        if (!any) continue;
        modes.emplace_back(K, b);
        lines[{K[1], K[2]}].emplace_back(K[0], b);
    }
    out.modes = modes.size();
    out.groups = lines.size();
    if (modes.empty()) return out;

    // Demodulate each line by its first member; only offsets matter for |G|.
    std::vector<Group> groups;
    groups.reserve(lines.size());
    double spread = 0.0;
    for (const auto& [key, members] : lines) {
        (void)key;
        Group g;
        const std::int64_t k0 = members.front().first;
        for (const auto& [k, a] : members) {
            g.offset.push_back(k - k0);
            g.amp.push_back(a);
            spread = std::max(spread, std::abs(static_cast<double>(k - k0)) / static_cast<double>(ref.R));
        }
        groups.push_back(std::move(g));
    }

    auto envelope = [&](std::int64_t P1) {
        double e2 = 0.0;
        std::array<double, 3> sums{};
        for (const auto& g : groups) {
            std::array<cplx, 3> G{};
            for (std::size_t m = 0; m < g.offset.size(); ++m) {
                const cplx ph = phase_of(static_cast<int128>(g.offset[m]) * P1, N);
                for (int c = 0; c < components; ++c) G[c] += g.amp[m][c] * ph;
            }
            for (int c = 0; c < components; ++c) sums[c] += std::abs(G[c]);
        }
        for (int c = 0; c < components; ++c) e2 += sums[c] * sums[c];
        return std::sqrt(e2);
    };

    // Candidate x1 positions: a uniform sweep fine enough for the envelope
    // bandwidth, the known bump positions, then a local refinement.
    const double need = std::max(64.0, 10.0 * ref.L() * std::max(spread, 1.0 / ref.R));
    std::int64_t M = 1;
    while (static_cast<double>(M) < need && M < N) M <<= 1;
    M = std::min(M, N);
    const std::int64_t step = N / M;
    std::int64_t best_p = 0;
    double best = -1.0;
    auto consider = [&](std::int64_t P1) {
        P1 %= N;
        if (P1 < 0) P1 += N;
        const double e = envelope(P1);
        if (e > best) {
            best = e;
            best_p = P1;
        }
    };
    for (std::int64_t i = 0; i < M; ++i) consider(i * step);
    for (auto c : centers) consider(c);
    if (step > 1) {
        const std::int64_t fine = std::max<std::int64_t>(1, step / 16);
        const std::int64_t c0 = best_p;
        for (std::int64_t d = -step; d <= step; d += fine) consider(c0 + d);
    }
    out.upper = best;

    // Sign structure: at the maximizer every line must add its members in phase.
    for (const auto& g : groups) {
        for (int c = 0; c < components; ++c) {
            cplx s(0.0, 0.0);
            double abs_sum = 0.0;
            for (std::size_t m = 0; m < g.offset.size(); ++m) {
                s += g.amp[m][c] * phase_of(static_cast<int128>(g.offset[m]) * best_p, N);
                abs_sum += std::abs(g.amp[m][c]);
            }
            if (abs_sum > 0.0 && std::abs(s) < (1.0 - 1e-9) * abs_sum) out.sign_definite = false;
        }
    }

    // Exact values at nominal grid points (best_p, 0, P3).
    const std::int64_t S = std::min<std::int64_t>(N, 4096);
    const std::int64_t sstep = N / S;
    double low = 0.0;
    for (std::int64_t i = 0; i < S; ++i) {
        const Lattice P{best_p, 0, i * sstep};
        std::array<cplx, 3> f{};
        for (const auto& [K, a] : modes) {
            const cplx ph = lattice_phase(K, P, N);
            for (int c = 0; c < components; ++c) f[c] += a[c] * ph;
        }
        double v = 0.0;
        for (int c = 0; c < components; ++c) v += std::norm(f[c]);
        low = std::max(low, std::sqrt(v));
    }
    out.lower = low;
    return out;
}

}  // namespace logbesov
