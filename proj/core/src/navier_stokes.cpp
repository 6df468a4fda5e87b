#include "logbesov/navier_stokes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "logbesov/parallel.hpp"

namespace logbesov {

namespace {

double norm2(const Vec3& x) { return x[0] * x[0] + x[1] * x[1] + x[2] * x[2]; }

void require_vector(const SpectralField& u) {
    if (u.components() != u.grid().n) throw std::invalid_argument("vector field needs n components");
}

}  // namespace

SpectralField heat(const SpectralField& u, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("heat flow time must be >= 0");
    if (t == 0.0) return u;
    return apply_multiplier(to_spectral(u), [t](const Vec3& x) { return cplx(std::exp(-t * norm2(x)), 0.0); });
}

SpectralField leray(const SpectralField& u0) {
    require_vector(u0);
    const SpectralField u = to_spectral(u0);
    const GridSpec& g = u.grid();
    const int n = g.n;
    SpectralField out = u;
    parallel_for(g.points(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            const Vec3 x = g.xi(i);
            const double r2 = norm2(x);
            if (r2 == 0.0) continue;
            cplx dot(0.0, 0.0);
            for (int c = 0; c < n; ++c) dot += x[c] * u.at(c, i);
            for (int c = 0; c < n; ++c) out.at(c, i) = u.at(c, i) - x[c] * dot / r2;
        }
    });
    return out;
}

int dealias_cutoff(const GridSpec& grid) { return (grid.N - 1) / 3; }

namespace {

bool beyond_cutoff(const GridSpec& g, std::size_t i, int kc) {
    const Wavevector k = g.wavevector(i);
    for (int d = 0; d < g.n; ++d)
        if (std::abs(k[d]) > kc) return true;
    return false;
}

SpectralField dealias_flag(const SpectralField& u0, bool* flagged) {
    SpectralField u = to_spectral(u0);
    const GridSpec& g = u.grid();
    const int kc = dealias_cutoff(g);
    bool any = false;
    for (std::size_t i = 0; i < g.points(); ++i) {
        if (!beyond_cutoff(g, i, kc)) continue;
        for (int c = 0; c < u.components(); ++c) {
            if (u.at(c, i) != cplx(0.0, 0.0)) any = true;
            u.at(c, i) = 0.0;
        }
    }
    if (flagged != nullptr) *flagged = any;
    return u;
}

}  // namespace

SpectralField dealias(const SpectralField& u) { return dealias_flag(u, nullptr); }

SpectralField tensor_divergence(const SpectralField& u, const SpectralField& v, bool* underresolved) {
    require_vector(u);
    require_vector(v);
    if (u.grid() != v.grid()) throw std::invalid_argument("grid mismatch");
    bool fu = false, fv = false;
    const SpectralField pu = to_physical(dealias_flag(u, &fu));
    const SpectralField pv = to_physical(dealias_flag(v, &fv));
    if (underresolved != nullptr) *underresolved = fu || fv;
    const GridSpec& g = u.grid();
    const int n = g.n;
    const std::size_t pts = g.points();
    // Physical wavevector components, one table per axis.
    std::vector<std::vector<double>> kx(static_cast<std::size_t>(n), std::vector<double>(pts));
    for (std::size_t x = 0; x < pts; ++x) {
        const Vec3 xi = g.xi(x);
        for (int d = 0; d < n; ++d) kx[static_cast<std::size_t>(d)][x] = xi[d];
    }
    // u (x) u is symmetric, so each off-diagonal product feeds two divergences.
    const bool same = &u == &v || u.data() == v.data();
    SpectralField out(g, n, Domain::spectral);
    SpectralField prod(g, 1, Domain::physical);
    for (int i = 0; i < n; ++i) {
        for (int j = same ? i : 0; j < n; ++j) {
            const cplx* a = pu.component(i);
            const cplx* b = pv.component(j);
            cplx* p = prod.component(0);
            for (std::size_t x = 0; x < pts; ++x) p[x] = cplx(a[x].real() * b[x].real(), 0.0);
            const SpectralField ph = to_spectral(prod);
            prod.set_domain(Domain::physical);
            const cplx* h = ph.component(0);
            cplx* oi = out.component(i);
            const double* kj = kx[static_cast<std::size_t>(j)].data();
            for (std::size_t x = 0; x < pts; ++x) oi[x] += cplx(0.0, kj[x]) * h[x];
            if (same && j != i) {
                cplx* oj = out.component(j);
                const double* ki = kx[static_cast<std::size_t>(i)].data();
                for (std::size_t x = 0; x < pts; ++x) oj[x] += cplx(0.0, ki[x]) * h[x];
            }
        }
    }
    return dealias(out);
}

SpectralField nonlinear_pair(const SpectralField& u, const SpectralField& v, bool* underresolved) {
    return leray(tensor_divergence(u, v, underresolved));
}

SpectralField nonlinear(const SpectralField& u, bool* underresolved) { return nonlinear_pair(u, u, underresolved); }

const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::picard:
            return "picard";
        case Provenance::rk4:
            return "rk4";
        case Provenance::heat_only:
            return "heat-only";
    }
    return "unknown";
}

double Trajectory::divergence_defect() const {
    double worst = logbesov::divergence_defect(initial);
    for (const auto& s : snapshots) worst = std::max(worst, logbesov::divergence_defect(s));
    return worst;
}

Trajectory heat_trajectory(const SpectralField& u0, const TimeGrid& times) {
    Trajectory tr;
    tr.grid = u0.grid();
    tr.times = times;
    tr.initial = to_spectral(u0);
    tr.provenance = Provenance::heat_only;
    for (double t : times.nodes) tr.snapshots.push_back(heat(tr.initial, t));
    return tr;
}

// ---------------------------------------------------------------- Duhamel

namespace {

constexpr int kPanelStencil = 6;

// I_m(z) = int_0^1 exp(-z (1 - x)) x^m dx for m < kPanelStencil.
void exp_moments(double z, double* I) {
    if (z < 8.0) {
        for (int m = 0; m < kPanelStencil; ++m) {
            double term = 1.0 / (m + 1);
            double sum = term;
            for (int k = 0; k < 80 && std::abs(term) > 1e-18 * std::abs(sum); ++k) {
                term *= -z / (m + k + 2);
                sum += term;
            }
            I[m] = sum;
        }
        return;
    }
    // Upward recurrence I_m = (1 - m I_{m-1}) / z; stable since z > m.
    I[0] = -std::expm1(-z) / z;
    for (int m = 1; m < kPanelStencil; ++m) I[m] = (1.0 - m * I[m - 1]) / z;
}

// Monomial coefficients (in x) of the Lagrange basis through nodes x[0..m-1].
void basis_coefficients(const double* x, int m, double c[kPanelStencil][kPanelStencil]) {
    for (int i = 0; i < m; ++i) {
        double poly[kPanelStencil] = {1.0};
        int deg = 0;
        double denom = 1.0;
        for (int j = 0; j < m; ++j) {
            if (j == i) continue;
            // poly *= (x - x_j)
            for (int d = deg + 1; d >= 1; --d) poly[d] = poly[d - 1] - x[j] * poly[d];
            poly[0] = -x[j] * poly[0];
            ++deg;
            denom *= x[i] - x[j];
        }
        for (int d = 0; d < kPanelStencil; ++d) c[i][d] = d < m ? poly[d] / denom : 0.0;
    }
}

}  // namespace

std::vector<SpectralField> duhamel_bilinear_all(const Trajectory& U, const Trajectory& V) {
    if (U.grid != V.grid) throw std::invalid_argument("trajectory grid mismatch");
    if (U.times.nodes != V.times.nodes) throw std::invalid_argument("trajectory time grid mismatch");
    const GridSpec& g = U.grid;
    const std::size_t M = U.times.size();
    const int n = g.n;

    // Tensor term at tau = 0 and at every node.
    std::vector<double> taus{0.0};
    taus.insert(taus.end(), U.times.nodes.begin(), U.times.nodes.end());
    std::vector<SpectralField> Ns;
    Ns.reserve(M + 1);
    Ns.push_back(nonlinear_pair(U.initial, V.initial));
    for (std::size_t k = 0; k < M; ++k) Ns.push_back(nonlinear_pair(U.snapshots[k], V.snapshots[k]));

    // Heat factors depend on |k|^2 only; weights are computed per distinct value.
    std::vector<int> ksq_of(g.points());
    int ksq_max = 0;
    for (std::size_t i = 0; i < g.points(); ++i) {
        const Wavevector k = g.wavevector(i);
        ksq_of[i] = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        ksq_max = std::max(ksq_max, ksq_of[i]);
    }
    const double dk2 = g.dk() * g.dk();
    std::vector<double> decay(static_cast<std::size_t>(ksq_max) + 1);
    std::vector<std::array<double, kPanelStencil>> weight(decay.size());

    // Each panel [tau_p, tau_{p+1}] interpolates the tensor term by a quintic
    // through six neighbouring nodes and integrates it exactly against the
    // heat factor.
    const std::size_t npts = taus.size();
    const int m = static_cast<int>(std::min<std::size_t>(kPanelStencil, npts));
    SpectralField B(g, n, Domain::spectral);
    std::vector<SpectralField> out;
    out.reserve(M);
    for (std::size_t p = 0; p + 1 < npts; ++p) {
        const double h = taus[p + 1] - taus[p];
        std::size_t lo = p >= 2 ? p - 2 : 0;
        if (lo + static_cast<std::size_t>(m) > npts) lo = npts - static_cast<std::size_t>(m);
        double x[kPanelStencil];
        for (int j = 0; j < m; ++j) x[j] = (taus[lo + static_cast<std::size_t>(j)] - taus[p]) / h;
        double c[kPanelStencil][kPanelStencil];
        basis_coefficients(x, m, c);
        for (std::size_t q = 0; q < decay.size(); ++q) {
            const double z = dk2 * static_cast<double>(q) * h;
            double I[kPanelStencil];
            exp_moments(z, I);
            decay[q] = std::exp(-z);
            for (int i = 0; i < kPanelStencil; ++i) {
                double w = 0.0;
                if (i < m)
                    for (int d = 0; d < m; ++d) w += c[i][d] * I[d];
                weight[q][static_cast<std::size_t>(i)] = h * w;
            }
        }
        parallel_for(g.points(), [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) {
                const auto q = static_cast<std::size_t>(ksq_of[i]);
                const auto& w = weight[q];
                for (int c2 = 0; c2 < n; ++c2) {
                    cplx acc = decay[q] * B.at(c2, i);
                    for (int j = 0; j < m; ++j) acc += w[static_cast<std::size_t>(j)] * Ns[lo + static_cast<std::size_t>(j)].at(c2, i);
                    B.at(c2, i) = acc;
                }
            }
        });
        out.push_back(B);
    }
    return out;
}

SpectralField duhamel_bilinear(const Trajectory& U, const Trajectory& V, std::size_t node) {
    if (node >= U.times.size()) throw std::out_of_range("node index outside the time grid");
    return duhamel_bilinear_all(U, V)[node];
}

double xnorm_snapshots(const TimeGrid& times, const std::vector<SpectralField>& snaps, const KatoParams& kp) {
    std::vector<double> v(snaps.size());
    for (std::size_t i = 0; i < snaps.size(); ++i) v[i] = lp_norm(snaps[i], kInf);
    return k_norm(TimeSeries(times, std::move(v)), kp);
}

double xnorm(const Trajectory& U, const KatoParams& kp) { return xnorm_snapshots(U.times, U.snapshots, kp); }

// ---------------------------------------------------------------- Picard

PicardResult picard_solve(const SpectralField& u0_in, double T, const KatoParams& kp_in, const PicardOptions& opt) {
    const SpectralField u0 = to_spectral(u0_in);
    require_vector(u0);
    if (!(opt.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    KatoParams kp = kp_in;
    kp.T = T;
    kp.validate();

    const TimeGrid times = make_time_grid(T, opt.density, opt.decades);
    const Trajectory h = heat_trajectory(u0, times);

    PicardResult res;
    SolveDiagnostics& dg = res.diagnostics;
    dg.data_xnorm = xnorm(h, kp);

    Trajectory cur = h;
    cur.provenance = Provenance::picard;
    int growth = 0;
    for (int it = 1; it <= opt.maxiter; ++it) {
        const auto Bs = duhamel_bilinear_all(cur, cur);
        if (it == 1) {
            const double bx = xnorm_snapshots(times, Bs, kp);
            dg.bilinear_constant = dg.data_xnorm > 0.0 ? bx / (dg.data_xnorm * dg.data_xnorm) : 0.0;
            dg.threshold_estimate = dg.bilinear_constant > 0.0 ? 1.0 / (4.0 * dg.bilinear_constant) : kInf;
        }
        Trajectory next = cur;
        std::vector<SpectralField> diff;
        diff.reserve(times.size());
        for (std::size_t k = 0; k < times.size(); ++k) {
            next.snapshots[k] = h.snapshots[k] - Bs[k];
            diff.push_back(next.snapshots[k] - cur.snapshots[k]);
        }
        const double inc = xnorm_snapshots(times, diff, kp);
        if (!dg.increments.empty())
            dg.contraction_ratios.push_back(dg.increments.back() > 0.0 ? inc / dg.increments.back() : 0.0);
        dg.increments.push_back(inc);
        dg.iterations = it;
        cur = std::move(next);
        if (!std::isfinite(inc)) {
            dg.status = "non-finite increment";
            break;
        }
        if (inc <= opt.tol) {
            dg.converged = true;
            dg.status = "converged";
            break;
        }
        if (dg.increments.size() >= 2 && inc > dg.increments[dg.increments.size() - 2]) {
            if (++growth >= 3) {
                dg.status = "diverging: increment grew over 3 consecutive iterations";
                break;
            }
        } else {
            growth = 0;
        }
    }
    if (!dg.converged && dg.status.empty()) dg.status = "iteration limit reached";
    res.trajectory = std::move(cur);
    return res;
}

// ---------------------------------------------------------------- RK4 oracle

namespace {

SpectralField scaled_heat(const SpectralField& u, double t) { return heat(u, t); }

SpectralField rk4_step(const SpectralField& u, double dt) {
    const SpectralField k1 = -1.0 * nonlinear(u);
    const SpectralField u2 = scaled_heat(u + (0.5 * dt) * k1, 0.5 * dt);
    const SpectralField k2 = -1.0 * nonlinear(u2);
    const SpectralField u3 = scaled_heat(u, 0.5 * dt) + (0.5 * dt) * k2;
    const SpectralField k3 = -1.0 * nonlinear(u3);
    const SpectralField u4 = scaled_heat(u, dt) + dt * scaled_heat(k3, 0.5 * dt);
    const SpectralField k4 = -1.0 * nonlinear(u4);
    SpectralField acc = scaled_heat(k1, dt) + 2.0 * scaled_heat(k2 + k3, 0.5 * dt) + k4;
    return scaled_heat(u, dt) + (dt / 6.0) * acc;
}

}  // namespace

Trajectory rk4_reference(const SpectralField& u0_in, const TimeGrid& times, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
    const SpectralField u0 = to_spectral(u0_in);
    require_vector(u0);
    Trajectory tr;
    tr.grid = u0.grid();
    tr.times = times;
    tr.initial = u0;
    tr.provenance = Provenance::rk4;
    const double sup0 = lp_norm(u0, kInf);
    SpectralField u = u0;
    double t = 0.0;
    for (double target : times.nodes) {
        const double gap = target - t;
        const auto steps = static_cast<long>(std::ceil(gap / dt - 1e-12));
        const double step = steps > 0 ? gap / static_cast<double>(steps) : 0.0;
        for (long s = 0; s < steps; ++s) u = rk4_step(u, step);
        t = target;
        const double sup = lp_norm(u, kInf);
        if (!std::isfinite(sup) || (sup0 > 0.0 && sup > 1e6 * sup0))
            throw NumericalFailure("rk4_reference: blow-up detected at t = " + std::to_string(t) +
                                   ", sup norm " + std::to_string(sup));
        tr.snapshots.push_back(u);
    }
    return tr;
}

Trajectory rk4_reference(const SpectralField& u0, double T, double dt) {
    return rk4_reference(u0, make_time_grid(T, 16, 6.0), dt);
}

BilinearXReport bilinear_xnorm_report(const Trajectory& U, const Trajectory& V, const KatoParams& kp) {
    BilinearXReport r;
    r.kp = kp;
    r.guaranteed = bilinear_region(kp.sigma, kp.q, &r.region);
    r.xnorm_u = xnorm(U, kp);
    r.xnorm_v = xnorm(V, kp);
    const double denom = r.xnorm_u * r.xnorm_v;
    if (denom == 0.0) return r;
    const auto Bs = duhamel_bilinear_all(U, V);
    r.x_ratio = xnorm_snapshots(U.times, Bs, kp) / denom;
    BesovParams bp{-1.0, kp.sigma, kInf, kp.q, 0};
    double sup = 0.0;
    for (const auto& b : Bs) sup = std::max(sup, besov_norm(b, bp));
    r.besov_ratio = sup / denom;
    return r;
}

// ---------------------------------------------------------------- generators

SpectralField taylor_green(const GridSpec& g, double amp) {
    if (std::abs(g.L - kTwoPi) > 1e-12) throw std::invalid_argument("Taylor-Green data assumes L = 2π");
    // sin x1 cos x2 = sum over (±1, ±1) of -i s1/4 e^{i(s1 x1 + s2 x2)}
    SpectralField u(g, g.n, Domain::spectral);
    for (int s1 : {-1, 1}) {
        for (int s2 : {-1, 1}) {
            const std::size_t idx = g.index_of({s1, s2, 0});
            u.at(0, idx) = amp * cplx(0.0, -0.25 * s1);
            u.at(1, idx) = -amp * cplx(0.0, -0.25 * s2);
        }
    }
    return u;
}

namespace {

SpectralField random_components(const GridSpec& g, int comps, int kmax, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    SpectralField u(g, comps, Domain::spectral);
    const int kc = std::min(kmax, g.N / 2 - 1);
    for (std::size_t i = 0; i < g.points(); ++i) {
        const Wavevector k = g.wavevector(i);
        bool inside = true;
        bool zero = true;
        for (int d = 0; d < g.n; ++d) {
            if (std::abs(k[d]) > kc) inside = false;
            if (k[d] != 0) zero = false;
        }
        if (!inside || zero) continue;
        for (int c = 0; c < comps; ++c) u.at(c, i) = cplx(nd(rng), nd(rng));
    }
    // Hermitian symmetrization.
    SpectralField h = u;
    for (std::size_t i = 0; i < g.points(); ++i) {
        if (g.is_nyquist(i)) continue;
        const Wavevector k = g.wavevector(i);
        const std::size_t j = g.index_of({-k[0], -k[1], -k[2]});
        for (int c = 0; c < comps; ++c) h.at(c, i) = 0.5 * (u.at(c, i) + std::conj(u.at(c, j)));
    }
    return h;
}

}  // namespace

SpectralField random_scalar(const GridSpec& g, int kmax, double amp, unsigned long long seed) {
    SpectralField u = random_components(g, 1, kmax, seed);
    const double s = lp_norm(u, kInf);
    if (s > 0.0) u *= amp / s;
    return u;
}

SpectralField random_divfree(const GridSpec& g, int kmax, double amp, unsigned long long seed) {
    SpectralField u = leray(random_components(g, g.n, kmax, seed));
    const double s = lp_norm(u, kInf);
    if (s > 0.0) u *= amp / s;
    return u;
}

}  // namespace logbesov
