#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

#include "logbesov/field.hpp"
#include "logbesov/navier_stokes.hpp"
#include "logbesov/parallel.hpp"

using namespace logbesov;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("logbesov_" + name)).string();
}

double rel_diff(const SpectralField& a, const SpectralField& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        num = std::max(num, std::abs(a.data()[i] - b.data()[i]));
        den = std::max(den, std::abs(b.data()[i]));
    }
    return den > 0.0 ? num / den : num;
}

}  // namespace

TEST_CASE("grid construction and validation") {
    const GridSpec g2 = make_grid(2, 256);
    CHECK(g2.points() == 256u * 256u);
    CHECK(make_grid(3, 64).points() == 64u * 64u * 64u);
    CHECK_THROWS_AS(make_grid(1, 64), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(2, 48), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(2, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(2, 16, -1.0), std::invalid_argument);

    // FFT storage order maps back to signed wavevectors in [-N/2, N/2).
    for (std::size_t i = 0; i < make_grid(2, 16).points(); ++i) {
        const GridSpec g = make_grid(2, 16);
        const Wavevector k = g.wavevector(i);
        CHECK(k[0] >= -8);
        CHECK(k[0] < 8);
        CHECK(g.index_of(k) == i);
    }
}

TEST_CASE("synthesize adds conjugate partners") {
    const GridSpec g = make_grid(2, 32);
    const SpectralField u = synthesize(g, 1, {{{1, 0, 0}, {cplx(1.0, 0.0)}}});
    CHECK(lp_norm(u, kInf) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(hermitian_defect(u) == 0.0);
    const SpectralField z = synthesize(g, 1, {});
    CHECK(max_abs_coeff(z) == 0.0);
    CHECK_THROWS_AS(synthesize(g, 1, {{{16, 0, 0}, {cplx(1.0, 0.0)}}}), std::out_of_range);
    CHECK_THROWS_AS(synthesize(g, 1, {{{-16, 0, 0}, {cplx(1.0, 0.0)}}}), std::out_of_range);
}

TEST_CASE("transform round trip and conventions") {
    for (int N : {32, 64, 128}) {
        const GridSpec g = make_grid(2, N);
        for (unsigned seed = 0; seed < 100; ++seed) {
            const SpectralField u = random_scalar(g, N / 2 - 1, 1.0, seed);
            const SpectralField back = to_spectral(to_physical(u));
            REQUIRE(rel_diff(back, u) <= 1e-12);
        }
    }
    const GridSpec g = make_grid(2, 32);
    const SpectralField c = synthesize(g, 1, {{{1, 0, 0}, {cplx(1.0, 0.0)}}});
    const SpectralField phys = to_physical(c);
    double imag = 0.0;
    for (const auto& v : phys.data()) imag = std::max(imag, std::abs(v.imag()));
    CHECK(imag <= 1e-12);
    const SpectralField spec = to_spectral(phys);
    CHECK(std::abs(spec.at(0, g.index_of({1, 0, 0})) - cplx(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(spec.at(0, g.index_of({-1, 0, 0})) - cplx(1.0, 0.0)) < 1e-14);

    SpectralField delta(g, 1, Domain::physical);
    delta.at(0, 0) = static_cast<double>(g.points());
    const SpectralField flat = to_spectral(delta);
    for (const auto& v : flat.data()) CHECK(std::abs(v - cplx(1.0, 0.0)) < 1e-12);

    CHECK_THROWS(transform(c, Direction::to_spectral));
}

TEST_CASE("multipliers") {
    const GridSpec g = make_grid(2, 32);
    const SpectralField u = synthesize(g, 1, {{{1, 0, 0}, {cplx(1.0, 0.0)}}});
    const SpectralField id = apply_multiplier(u, [](const Vec3&) { return cplx(1.0, 0.0); });
    CHECK(rel_diff(id, u) == 0.0);
    const SpectralField h =
        apply_multiplier(u, [](const Vec3& x) { return cplx(std::exp(-(x[0] * x[0] + x[1] * x[1])), 0.0); });
    CHECK(h.at(0, g.index_of({1, 0, 0})).real() == doctest::Approx(0.3678794).epsilon(1e-7));
    // i xi_1 on 2 cos x1 gives -2 sin x1.
    const SpectralField d = to_physical(apply_multiplier(u, [](const Vec3& x) { return cplx(0.0, x[0]); }));
    for (std::size_t i = 0; i < g.points(); ++i) {
        const double x1 = g.L / g.N * static_cast<double>(i / static_cast<std::size_t>(g.N));
        CHECK(d.at(0, i).real() == doctest::Approx(-2.0 * std::sin(x1)).epsilon(1e-12).scale(1.0));
    }
    // Sequential application equals the pointwise product.
    const SpectralField r = random_scalar(g, 12, 1.0, 7);
    auto m1 = [](const Vec3& x) { return cplx(1.0 + x[0], 0.5 * x[1]); };
    auto m2 = [](const Vec3& x) { return cplx(std::cos(x[1]), 2.0); };
    const SpectralField seq = apply_multiplier(apply_multiplier(r, m1), m2);
    const SpectralField prod = apply_multiplier(r, [&](const Vec3& x) { return m2(x) * m1(x); });
    CHECK(rel_diff(seq, prod) <= 1e-15);
    CHECK_THROWS_AS(apply_multiplier(u, [](const Vec3& x) { return cplx(1.0 / x[1], 0.0); }), std::domain_error);
}

TEST_CASE("lp norms and Parseval") {
    const GridSpec g = make_grid(2, 64);
    const SpectralField s = synthesize(g, 1, {{{1, 0, 0}, {cplx(0.0, -0.5)}}});  // sin x1
    CHECK(lp_norm(s, 2.0) == doctest::Approx(std::sqrt(2.0) * kPi).epsilon(1e-12));
    CHECK(lp_norm(SpectralField(g, 1, Domain::spectral), 3.0) == 0.0);
    CHECK_THROWS_AS(lp_norm(s, 0.5), std::invalid_argument);
    for (unsigned seed = 0; seed < 10; ++seed) {
        const SpectralField r = random_scalar(g, 20, 1.0, seed);
        double e = 0.0;
        for (const auto& v : r.data()) e += std::norm(v);
        const double l2 = lp_norm(r, 2.0);
        CHECK(l2 * l2 == doctest::Approx(g.L * g.L * e).epsilon(1e-10));
    }
}

TEST_CASE("sup norm of nonnegative spectra") {
    const GridSpec g = make_grid(2, 32);
    SpectralField c(g, 1, Domain::spectral);
    c.at(0, 0) = 3.0;
    CHECK(supnorm_nonneg_spectrum(c) == 3.0);
    // Fejer-type triangular spectrum over k1 in [-4, 4].
    SpectralField f(g, 1, Domain::spectral);
    for (int k = -4; k <= 4; ++k) f.at(0, g.index_of({k, 0, 0})) = 5.0 - std::abs(k);
    const double s = supnorm_nonneg_spectrum(f);
    CHECK(s == doctest::Approx(25.0));
    CHECK(s == doctest::Approx(lp_norm(f, kInf)).epsilon(1e-8));
    SpectralField bad = f;
    bad.at(0, g.index_of({2, 0, 0})) = -1.0;
    bad.at(0, g.index_of({-2, 0, 0})) = -1.0;
    CHECK_THROWS_AS(supnorm_nonneg_spectrum(bad), std::domain_error);
    // Sup norm bound for arbitrary Hermitian spectra with nonnegative part.
    for (unsigned seed = 0; seed < 5; ++seed) {
        SpectralField r = random_scalar(g, 6, 1.0, seed);
        for (auto& v : r.data()) v = std::abs(v);
        CHECK(supnorm_nonneg_spectrum(r) >= lp_norm(r, kInf) - 1e-8);
        CHECK(supnorm_nonneg_spectrum(r) == doctest::Approx(lp_norm(r, kInf)).epsilon(1e-8));
    }
}

TEST_CASE("field files") {
    const GridSpec g = make_grid(3, 16, 3.0);
    const SpectralField u = random_divfree(g, 5, 1.0, 11);
    const std::string p = temp_path("roundtrip.lbf");
    save_field(u, p);
    const SpectralField v = load_field(p);
    CHECK(v.grid() == g);
    CHECK(v.components() == 3);
    CHECK(v.domain() == Domain::spectral);
    CHECK(std::memcmp(u.data().data(), v.data().data(), u.data().size() * sizeof(cplx)) == 0);

    const SpectralField ph = to_physical(random_scalar(make_grid(2, 16), 5, 1.0, 3));
    save_field(ph, p);
    const SpectralField ph2 = load_field(p);
    CHECK(ph2.domain() == Domain::physical);
    for (std::size_t i = 0; i < ph.points(); ++i) CHECK(ph2.at(0, i).real() == ph.at(0, i).real());

    {
        std::ofstream o(p, std::ios::binary);
        o << "NOPE and more bytes";
    }
    try {
        load_field(p);
        FAIL("expected failure");
    } catch (const FieldFileError& e) {
        CHECK(e.kind() == FieldFileError::Kind::bad_magic);
        CHECK(std::string(e.what()).find("not a field file") != std::string::npos);
    }
    save_field(u, p);
    std::filesystem::resize_file(p, std::filesystem::file_size(p) - 8);
    try {
        load_field(p);
        FAIL("expected failure");
    } catch (const FieldFileError& e) {
        CHECK(e.kind() == FieldFileError::Kind::short_payload);
        CHECK(std::string(e.what()).find("short payload") != std::string::npos);
    }
    {
        std::fstream f(p, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(4);
        const char two[4] = {2, 0, 0, 0};
        f.write(two, 4);
    }
    try {
        load_field(p);
        FAIL("expected failure");
    } catch (const FieldFileError& e) {
        CHECK(e.kind() == FieldFileError::Kind::bad_version);
    }
    std::filesystem::remove(p);
}

TEST_CASE("ordered reductions are deterministic") {
    auto f = [](std::size_t i) { return std::sin(static_cast<double>(i)) * 1e-3 + 1.0 / (1.0 + i); };
    const double a = ordered_sum(100000, f);
    const double b = ordered_sum(100000, f);
    CHECK(a == b);
    CHECK(ordered_max(1000, f) == doctest::Approx(1.0));
}

TEST_CASE("reductions agree across thread counts") {
    const GridSpec g = make_grid(2, 128);
    const SpectralField r = random_scalar(g, 40, 1.0, 5);
    set_threads(1);
    const double a = lp_norm(r, 3.0);
    set_threads(4);
    const double b = lp_norm(r, 3.0);
    set_threads(0);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
}
