#include "logbesov/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace logbesov {

namespace {

double glue_h(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

double vnorm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

}  // namespace

double phi_profile(double t) {
    if (t <= 1.25) return 1.0;
    if (t >= 1.5) return 0.0;
    const double s = (1.5 - t) / 0.25;
    const double a = glue_h(s);
    const double b = glue_h(1.0 - s);
    return a / (a + b);
}

double psi_j(double xi_norm, int j) {
    const double r = std::ldexp(xi_norm, -j);
    return phi_profile(r) - phi_profile(2.0 * r);
}

double psi_j(const Vec3& xi, int j) { return psi_j(vnorm(xi), j); }

int default_jmax(const GridSpec& grid) {
    const double top = grid.dk() * grid.N / 2.0;
    return static_cast<int>(std::floor(std::log2(top) + 1e-12)) - 1;
}

SpectralField low_pass(const SpectralField& u) {
    return apply_multiplier(u, [](const Vec3& xi) { return cplx(phi_profile(vnorm(xi)), 0.0); });
}

SpectralField lp_block(const SpectralField& u, int j) {
    if (j < 1) throw std::invalid_argument("block index must be >= 1");
    if (j > default_jmax(u.grid()))
        throw std::out_of_range("block " + std::to_string(j) + " extends beyond Nyquist");
    return apply_multiplier(u, [j](const Vec3& xi) { return cplx(psi_j(xi, j), 0.0); });
}

double partition_residual(const GridSpec& grid, int jmax) {
    const double radius = 5.0 * std::ldexp(1.0, jmax - 2);
    // The window is radial, so each lattice shell |k|^2 is evaluated once.
    const std::int64_t half = grid.N / 2;
    std::vector<char> seen(static_cast<std::size_t>(grid.n * half * half + 1), 0);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.points(); ++i) {
        const Wavevector k = grid.wavevector(i);
        std::int64_t m = 0;
        for (int a = 0; a < grid.n; ++a) m += static_cast<std::int64_t>(k[a]) * k[a];
        if (seen[static_cast<std::size_t>(m)]) continue;
        seen[static_cast<std::size_t>(m)] = 1;
        const double r = vnorm(grid.xi(i));
        if (r > radius) continue;
        double s = phi_profile(r);
        for (int j = 1; j <= jmax; ++j) s += psi_j(r, j);
        worst = std::max(worst, std::abs(1.0 - s));
    }
    return worst;
}

}  // namespace logbesov
