#include "logbesov/time_grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace logbesov {

double TimeGrid::log_step() const { return std::log(10.0) / density; }

TimeGrid make_time_grid(double T, int density, double decades) {
    if (!(T > 0.0)) throw std::invalid_argument("time horizon must be positive");
    if (density < 2) throw std::invalid_argument("time grid needs at least 2 nodes per decade");
    if (!(decades > 0.0)) throw std::invalid_argument("time grid needs a positive number of decades");
    TimeGrid g;
    g.T = T;
    g.density = density;
    g.decades = decades;
    const int count = static_cast<int>(std::lround(decades * density));
    g.nodes.resize(static_cast<std::size_t>(count) + 1);
    for (int i = 0; i <= count; ++i) {
        // Exact T at the last node; the rest relative to it.
        g.nodes[static_cast<std::size_t>(i)] = T * std::pow(10.0, -static_cast<double>(count - i) / density);
    }
    g.nodes.back() = T;
    return g;
}

TimeSeries::TimeSeries(TimeGrid g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid.nodes.size()) throw std::invalid_argument("series length does not match its grid");
    for (double x : values)
        if (!std::isfinite(x)) throw std::invalid_argument("time series value is not finite");
}

TimeSeries TimeSeries::sample(const TimeGrid& g, const std::function<double(double)>& f) {
    std::vector<double> v(g.nodes.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(g.nodes[i]);
    return TimeSeries(g, std::move(v));
}

namespace {

constexpr std::size_t kStencil = 6;

// Lagrange basis values at u for nodes 0..m-1.
void lagrange_basis(std::size_t m, double u, double* out) {
    for (std::size_t i = 0; i < m; ++i) {
        double v = 1.0;
        for (std::size_t j = 0; j < m; ++j)
            if (j != i) v *= (u - static_cast<double>(j)) / (static_cast<double>(i) - static_cast<double>(j));
        out[i] = v;
    }
}

// Leftmost node of the m-point stencil serving interval [k, k+1] of a series
// with nodes 0..last.
std::size_t stencil_start(std::size_t k, std::size_t m, std::size_t last) {
    const std::size_t half = (m - 1) / 2;
    std::size_t lo = k >= half ? k - half : 0;
    if (lo + m - 1 > last) lo = last + 1 - m;
    return lo;
}

}  // namespace

double TimeSeries::at(double t) const {
    const auto& x = grid.nodes;
    const std::size_t n = x.size();
    if (n == 1 || t <= x.front()) return values.front();
    if (t >= x.back()) return values.back();
    const double pos = std::log(t / x.front()) / grid.log_step();
    const auto k = static_cast<std::size_t>(std::clamp(std::floor(pos), 0.0, static_cast<double>(n - 2)));
    const std::size_t m = std::min(kStencil, n);
    const std::size_t lo = stencil_start(k, m, n - 1);
    double w[kStencil];
    lagrange_basis(m, pos - static_cast<double>(lo), w);
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) acc += w[i] * values[lo + i];
    return acc;
}

namespace {

// Weights integrating the m-point interpolant over [a, a+1] (unit spacing).
const std::array<double, kStencil>& interval_weights(std::size_t m, std::size_t a) {
    static const auto table = [] {
        std::array<std::array<std::array<double, kStencil>, kStencil>, kStencil + 1> t{};
        // 8-point Gauss-Legendre is exact for the degree <= 5 basis.
        static const double xg[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                     -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                     0.7966664774136267,  0.9602898564975363};
        static const double wg[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                     0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                     0.2223810344533745, 0.1012285362903763};
        for (std::size_t mm = 2; mm <= kStencil; ++mm) {
            for (std::size_t aa = 0; aa + 1 < mm; ++aa) {
                for (int q = 0; q < 8; ++q) {
                    double b[kStencil];
                    lagrange_basis(mm, static_cast<double>(aa) + 0.5 + 0.5 * xg[q], b);
                    for (std::size_t i = 0; i < mm; ++i) t[mm][aa][i] += 0.5 * wg[q] * b[i];
                }
            }
        }
        return t;
    }();
    return table[m][a];
}

// Integral over interval [k, k+1] (unit spacing) of the local interpolant.
double interval_integral(const std::vector<double>& g, std::size_t k, std::size_t last) {
    const std::size_t m = std::min(kStencil, last + 1);
    const std::size_t lo = stencil_start(k, m, last);
    const auto& w = interval_weights(m, k - lo);
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) acc += w[i] * g[lo + i];
    return acc;
}

struct TailModel {
    double value = 0.0;
    bool divergent = false;
};

// Continuation below the first node, see header.
TailModel tail_model(const TimeGrid& grid, const std::vector<double>& g, double T_for_log) {
    TailModel tm;
    if (g.size() < 3) return tm;
    const double g0 = g[0], g1 = g[1], g2 = g[2];
    if (!(g0 > 0.0)) return tm;
    if (!(g1 > 0.0) || !(g2 > 0.0)) return tm;
    const double e_T = std::exp(1.0) * T_for_log;
    std::array<double, 3> s{}, U{}, y{};
    for (int i = 0; i < 3; ++i) {
        s[i] = std::log(grid.nodes[static_cast<std::size_t>(i)]);
        U[i] = std::log(e_T / grid.nodes[static_cast<std::size_t>(i)]);
        y[i] = std::log(g[static_cast<std::size_t>(i)]);
    }
    // Solve y = c + a s - b ln U for (c, a, b).
    double M[3][4];
    for (int i = 0; i < 3; ++i) {
        M[i][0] = 1.0;
        M[i][1] = s[i];
        M[i][2] = -std::log(U[i]);
        M[i][3] = y[i];
    }
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int r = c + 1; r < 3; ++r)
            if (std::abs(M[r][c]) > std::abs(M[piv][c])) piv = r;
        for (int k = 0; k < 4; ++k) std::swap(M[c][k], M[piv][k]);
        if (std::abs(M[c][c]) < 1e-300) return tm;
        for (int r = 0; r < 3; ++r) {
            if (r == c) continue;
            const double f = M[r][c] / M[c][c];
            for (int k = 0; k < 4; ++k) M[r][k] -= f * M[c][k];
        }
    }
    double a = M[1][3] / M[1][1];
    double b = M[2][3] / M[2][2];
    // Noise-level exponents are snapped to the pure-log and pure-power cases.
    if (std::abs(a) < 1e-6) a = 0.0;
    if (std::abs(b) < 1e-6) b = 0.0;
    const double U0 = U[0];
    if (a < 0.0) {
        tm.divergent = true;
        return tm;
    }
    if (a == 0.0) {
        if (b > 1.0) {
            tm.value = g0 * U0 / (b - 1.0);
        } else {
            tm.divergent = true;
        }
        return tm;
    }
    // g0 * integral_0^inf exp(-a v) (1 + v/U0)^{-b} dv, with v = x/a.
    static const double xg[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                 -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                 0.7966664774136267,  0.9602898564975363};
    static const double wg[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                 0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                 0.2223810344533745, 0.1012285362903763};
    const double edges[] = {0.0, 0.5, 1.5, 3.0, 6.0, 12.0, 24.0, 48.0, 80.0};
    double sum = 0.0;
    for (int p = 0; p + 1 < 9; ++p) {
        const double lo = edges[p], hi = edges[p + 1];
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (int k = 0; k < 8; ++k) {
            const double x = mid + half * xg[k];
            sum += half * wg[k] * std::exp(-x) * std::pow(1.0 + x / (a * U0), -b);
        }
    }
    tm.value = g0 * sum / a;
    return tm;
}

}  // namespace

LogIntegral integrate_dt_over_t(const TimeGrid& grid, const std::vector<double>& g, std::size_t upto,
                                double T_for_log) {
    if (g.size() != grid.nodes.size()) throw std::invalid_argument("integrand length does not match grid");
    LogIntegral out;
    const double h = grid.log_step();
    if (upto >= g.size()) throw std::out_of_range("integration limit beyond the grid");
    double body = 0.0;
    for (std::size_t k = 0; k < upto; ++k) body += interval_integral(g, k, g.size() - 1);
    body *= h;
    const TailModel tm = tail_model(grid, g, T_for_log);
    out.tail = tm.value;
    out.value = body + tm.value;
    out.divergent = tm.divergent;
    const auto d = static_cast<std::size_t>(grid.density);
    if (upto >= 2 * d) {
        double first = 0.0, second = 0.0;
        for (std::size_t k = 0; k < d; ++k) first += 0.5 * (g[k] + g[k + 1]);
        for (std::size_t k = d; k < 2 * d; ++k) second += 0.5 * (g[k] + g[k + 1]);
        if (first > 10.0 * second && first > 0.0) out.divergent = true;
    }
    return out;
}

std::vector<double> cumulative_dt_over_t(const TimeGrid& grid, const std::vector<double>& g, double T_for_log,
                                         bool* divergent) {
    if (g.size() != grid.nodes.size()) throw std::invalid_argument("integrand length does not match grid");
    const double h = grid.log_step();
    const std::size_t last = g.size() - 1;
    const TailModel tm = tail_model(grid, g, T_for_log);
    std::vector<double> out(g.size());
    out[0] = tm.value;
    for (std::size_t k = 0; k < last; ++k) out[k + 1] = out[k] + h * interval_integral(g, k, last);
    if (divergent != nullptr) {
        bool flag = tm.divergent;
        const auto d = static_cast<std::size_t>(grid.density);
        if (last >= 2 * d) {
            const double first = out[d] - out[0];
            const double second = out[2 * d] - out[d];
            if (first > 10.0 * second && first > 0.0) flag = true;
        }
        *divergent = flag;
    }
    return out;
}

double sampled_sup(const TimeGrid& grid, const std::vector<double>& g, bool refine) {
    if (g.empty()) return 0.0;
    std::size_t arg = 0;
    for (std::size_t i = 1; i < g.size(); ++i)
        if (g[i] > g[arg]) arg = i;
    double best = g[arg];
    if (!refine || arg == 0 || arg + 1 >= g.size()) return best;
    const double a = g[arg - 1], b = g[arg], c = g[arg + 1];
    if (!(a > 0.0 && b > 0.0 && c > 0.0)) return best;
    const double la = std::log(a), lb = std::log(b), lc = std::log(c);
    const double curv = la - 2.0 * lb + lc;
    if (!(curv < 0.0)) return best;
    const double peak = lb - (la - lc) * (la - lc) / (8.0 * curv);
    (void)grid;
    return std::max(best, std::exp(peak));
}

}  // namespace logbesov
