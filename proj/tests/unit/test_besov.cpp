#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "logbesov/besov.hpp"
#include "logbesov/littlewood_paley.hpp"
#include "logbesov/navier_stokes.hpp"

using namespace logbesov;

namespace {

SpectralField cos36() {
    return synthesize(make_grid(2, 128), 1, {{{36, 0, 0}, {cplx(1.0, 0.0)}}});
}

}  // namespace

TEST_CASE("critical exponent") {
    CHECK(sigma_q(1.0) == 1.0);
    CHECK(sigma_q(2.0) == 0.5);
    CHECK(sigma_q(4.0) == 0.75);
    CHECK(sigma_q(kInf) == 1.0);
    CHECK(sigma_q(1.5) == doctest::Approx(2.0 / 3.0));
    CHECK_THROWS_AS(sigma_q(0.5), std::invalid_argument);
}

TEST_CASE("single block closed form") {
    const SpectralField u = cos36();
    for (double q : {1.0, 2.0, 4.0, kInf}) {
        const BesovParams bp{-1.0, 1.0, kInf, q, 0};
        CHECK(besov_norm(u, bp) == doctest::Approx(0.3125).epsilon(1e-13));
        CHECK(besov_norm_restricted(u, bp, {5}) == doctest::Approx(0.3125).epsilon(1e-13));
        CHECK(besov_norm_restricted(u, bp, {2, 3}) == 0.0);
    }
    bool empty = false;
    CHECK(besov_norm_restricted(u, BesovParams{}, {}, &empty) == 0.0);
    CHECK(empty);
    CHECK(besov_norm(SpectralField(u.grid(), 1, Domain::spectral), BesovParams{}) == 0.0);
    CHECK_THROWS(besov_norm_restricted(u, BesovParams{}, {9}));
}

TEST_CASE("restricted norm over the full range") {
    const GridSpec g = make_grid(2, 64);
    const SpectralField r = random_scalar(g, 20, 1.0, 4);
    const BesovParams bp{-1.0, 0.5, kInf, 2.0, 0};
    const auto full = besov_breakdown(r, bp);
    std::vector<int> all;
    for (int j = 1; j <= full.jmax; ++j) all.push_back(j);
    CHECK(besov_norm_restricted(r, bp, all) == doctest::Approx(full.norm - full.low).epsilon(1e-12));
}

TEST_CASE("norm properties on random fields") {
    const GridSpec g = make_grid(2, 64);
    for (unsigned seed = 0; seed < 20; ++seed) {
        const SpectralField u = random_scalar(g, 20, 1.0, seed);
        const SpectralField v = random_scalar(g, 20, 0.7, seed + 1000);
        const BesovParams bp{-1.0, 0.5, kInf, 2.0, 0};
        const double nu = besov_norm(u, bp);
        CHECK(besov_norm(-3.0 * u, bp) == doctest::Approx(3.0 * nu).epsilon(1e-12));
        CHECK(besov_norm(u + v, bp) <= (nu + besov_norm(v, bp)) * (1.0 + 1e-12));
        double prev = 0.0;
        for (double s : {0.0, 0.25, 0.5, 1.0, 2.0}) {
            const double val = besov_norm(u, BesovParams{-1.0, s, 2.0, 2.0, 0});
            CHECK(val >= prev);
            prev = val;
        }
        const double q1 = besov_norm(u, BesovParams{-1.0, 1.0, kInf, 1.0, 0});
        const double q2 = besov_norm(u, BesovParams{-1.0, 1.0, kInf, 2.0, 0});
        const double qi = besov_norm(u, BesovParams{-1.0, 1.0, kInf, kInf, 0});
        CHECK(qi <= q2);
        CHECK(q2 <= q1);
    }
}

TEST_CASE("truncation residual") {
    const GridSpec g = make_grid(2, 64);
    const auto clean = besov_breakdown(random_scalar(g, 8, 1.0, 1), BesovParams{});
    CHECK(clean.truncation_residual == 0.0);
    const auto dirty = besov_breakdown(random_scalar(g, 31, 1.0, 1), BesovParams{});
    CHECK(dirty.truncation_residual > 0.0);
}

TEST_CASE("heat characterization: single mode oracle") {
    const SpectralField u = cos36();
    const BesovParams bp{-1.0, 0.0, kInf, kInf, 0};
    HeatCharParams hc;
    hc.t0 = 1.0;
    hc.gamma = 0.0;
    // sup_t sqrt(t) 2 exp(-1296 t) at t = 1/2592
    const double exact = 2.0 / std::sqrt(2.0 * 1296.0 * std::exp(1.0));
    CHECK(exact == doctest::Approx(0.02383).epsilon(1e-3));
    CHECK(heat_char_norm(u, bp, hc) == doctest::Approx(exact).epsilon(1e-4));
    CHECK(heat_char_norm(SpectralField(u.grid(), 1, Domain::spectral), bp, hc) == 0.0);
    hc.gamma = -2.0;
    CHECK_THROWS_AS(heat_char_norm(u, bp, hc), std::invalid_argument);
}

TEST_CASE("heat characterization: equivalence bracket") {
    const GridSpec g = make_grid(2, 64);
    for (const BesovParams bp : {BesovParams{-1.0, 1.0, kInf, kInf, 0}, BesovParams{-1.0, 0.5, kInf, 2.0, 0}}) {
        double lo = kInf, hi = 0.0, lo2 = kInf, hi2 = 0.0;
        for (unsigned seed = 0; seed < 20; ++seed) {
            const SpectralField u = random_scalar(g, 2 + static_cast<int>(seed), 1.0, seed);
            HeatCharParams hc;
            const double r = heat_char_norm(u, bp, hc) / besov_norm(u, bp);
            hc.density = 32;
            const double r2 = heat_char_norm(u, bp, hc) / besov_norm(u, bp);
            lo = std::min(lo, r);
            hi = std::max(hi, r);
            lo2 = std::min(lo2, r2);
            hi2 = std::max(hi2, r2);
        }
        MESSAGE("bracket [" << lo << ", " << hi << "], doubled density [" << lo2 << ", " << hi2 << "]");
        CHECK(hi / lo <= 50.0);
        CHECK(lo2 == doctest::Approx(lo).epsilon(0.1));
        CHECK(hi2 == doctest::Approx(hi).epsilon(0.1));
    }
}

TEST_CASE("embedding report") {
    const GridSpec g = make_grid(2, 64);
    const SpectralField u = random_scalar(g, 20, 1.0, 2);
    const BesovParams tau{-1.0, 1.0, kInf, 2.0, 0};
    const BesovParams sig{-1.0, 0.5, kInf, 2.0, 0};
    const BesovParams smooth{-0.5, 0.0, kInf, 2.0, 0};
    const BesovParams sumq{-1.0, 0.0, kInf, kInf, 0};
    const auto rows = embedding_report(u, {{tau, sig}, {smooth, sig}, {sig, sumq}});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].pointwise);
    CHECK(rows[0].holds);
    CHECK(rows[0].constant <= 1.0);
    for (const auto& r : rows) {
        MESSAGE("embedding constant " << r.constant);
        CHECK(std::isfinite(r.constant));
    }
}
