#include <doctest.h>

#include <cmath>

#include "logbesov/littlewood_paley.hpp"
#include "logbesov/navier_stokes.hpp"

using namespace logbesov;

TEST_CASE("phi plateaus and bridge") {
    CHECK(phi_profile(0.0) == 1.0);
    CHECK(phi_profile(1.0) == 1.0);
    CHECK(phi_profile(1.25) == 1.0);
    CHECK(phi_profile(1.5) == 0.0);
    CHECK(phi_profile(2.0) == 0.0);
    const double mid = phi_profile(1.375);
    CHECK(mid > 0.0);
    CHECK(mid < 1.0);
    CHECK(mid == doctest::Approx(0.5));
    CHECK(phi_profile(1.30) > phi_profile(1.45));
    double prev = 1.0;
    for (double t = 1.25; t <= 1.5; t += 1e-3) {
        CHECK(phi_profile(t) <= prev);
        prev = phi_profile(t);
    }
}

TEST_CASE("psi_j plateau and support") {
    CHECK(psi_j(36.0, 5) == 1.0);
    CHECK(psi_j(36.0, 6) == 0.0);
    for (int j = 1; j < 10; ++j) {
        CHECK(psi_j(std::ldexp(1.0, j + 1), j) == 0.0);
        CHECK(psi_j(std::ldexp(1.0, j - 1), j) == 0.0);
        CHECK(psi_j(3.0 * std::ldexp(1.0, j - 2), j) == 1.0);
        CHECK(psi_j(5.0 * std::ldexp(1.0, j - 2), j) == 1.0);
    }
}

TEST_CASE("telescoping partition identity") {
    for (double r = 0.0; r < 400.0; r += 0.37) {
        for (int J = 1; J <= 8; ++J) {
            double s = phi_profile(r);
            for (int j = 1; j <= J; ++j) s += psi_j(r, j);
            CHECK(std::abs(s - phi_profile(std::ldexp(r, -J))) <= 1e-14);
        }
    }
}

TEST_CASE("blocks and low pass") {
    const GridSpec g = make_grid(2, 128);
    const SpectralField u = synthesize(g, 1, {{{36, 0, 0}, {cplx(1.0, 0.0)}}});
    CHECK(max_abs_coeff(lp_block(u, 5) - u) == 0.0);
    CHECK(max_abs_coeff(lp_block(u, 4)) == 0.0);
    CHECK(max_abs_coeff(low_pass(u)) == 0.0);

    SpectralField c(g, 1, Domain::spectral);
    c.at(0, 0) = 2.5;
    CHECK(max_abs_coeff(low_pass(c) - c) == 0.0);
    for (int j = 1; j <= default_jmax(g); ++j) CHECK(max_abs_coeff(lp_block(c, j)) == 0.0);

    CHECK_THROWS_AS(lp_block(u, default_jmax(g) + 1), std::out_of_range);
    CHECK_THROWS_AS(lp_block(u, 0), std::invalid_argument);

    const int jmax = default_jmax(g);
    const int kmax = static_cast<int>(5.0 * std::ldexp(1.0, jmax - 2) / std::sqrt(2.0));
    const SpectralField r = random_scalar(g, kmax, 1.0, 3);
    SpectralField acc = low_pass(r);
    for (int j = 1; j <= jmax; ++j) acc += lp_block(r, j);
    CHECK(max_abs_coeff(acc - r) <= 1e-12 * max_abs_coeff(r));
}

TEST_CASE("partition residual") {
    for (int N : {32, 64, 256}) {
        const GridSpec g = make_grid(2, N);
        CHECK(default_jmax(g) == static_cast<int>(std::log2(N / 2)) - 1);
        CHECK(partition_residual(g, default_jmax(g)) <= 1e-10);
    }
    CHECK(partition_residual(make_grid(2, 32), 3) <= 1e-10);
}

TEST_CASE("block disjointness and contraction") {
    const GridSpec g = make_grid(2, 64);
    const SpectralField r = random_scalar(g, 30, 1.0, 9);
    const int jmax = default_jmax(g);
    for (int j = 1; j <= jmax; ++j)
        for (int jp = 1; jp <= jmax; ++jp)
            if (std::abs(j - jp) >= 2) CHECK(max_abs_coeff(lp_block(lp_block(r, j), jp)) == 0.0);
    double worst = 0.0;
    for (unsigned seed = 0; seed < 10; ++seed) {
        const SpectralField f = random_scalar(g, 30, 1.0, seed);
        for (double p : {2.0, kInf})
            for (int j = 1; j <= jmax; ++j) worst = std::max(worst, lp_norm(lp_block(f, j), p) / lp_norm(f, p));
    }
    MESSAGE("largest measured ||Delta_j u||_p / ||u||_p: " << worst);
    CHECK(worst <= 1.1);
}
