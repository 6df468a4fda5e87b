#include <doctest.h>

#include <cmath>
#include <set>

#include "logbesov/inflation.hpp"
#include "logbesov/littlewood_paley.hpp"

using namespace logbesov;

namespace {

double vnorm3(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

bool condition_passes(const AuditReport& r, const std::string& prefix) {
    for (const auto& c : r.conditions)
        if (c.name.rfind(prefix, 0) == 0) return c.pass;
    FAIL("missing audit condition " << prefix);
    return false;
}

}  // namespace

TEST_CASE("bump profile") {
    CHECK(rho(0.1) == 1.0);
    CHECK(rho(5.0 / 32.0) == 1.0);
    CHECK(rho(0.25) == 0.0);
    CHECK(rho(3.0 / 16.0) == 0.0);
    double prev = 1.0;
    for (int i = 0; i <= 100; ++i) {
        const double r = 5.0 / 32.0 + (3.0 / 16.0 - 5.0 / 32.0) * i / 100.0;
        CHECK(rho(r) <= prev);
        prev = rho(r);
    }
    CHECK(rho(Vec3{0.06, 0.08, 0.0}) == 1.0);
}

TEST_CASE("carrier vectors") {
    const auto cv = carrier_vectors(3, 3, 0.125);
    for (double a : cv.a) CHECK(a == doctest::Approx(8.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(vnorm3(cv.a) == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(vnorm3(cv.c) == doctest::Approx(8.0).epsilon(1e-12));
    for (int k : {1, 5, 20, 40}) {
        const auto v = carrier_vectors(k, 4, 0.2);
        CHECK(vnorm3(v.b) / vnorm3(v.a) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(v.b[3] == 0.0);
    }
    const auto q = carrier_vectors(1, 3, 0.25);
    CHECK(q.b[0] == doctest::Approx(0.25));
    CHECK(q.b[1] == doctest::Approx(0.5));
    CHECK(q.b[2] == doctest::Approx(std::sqrt(0.6875)));
    CHECK_THROWS_AS(carrier_vectors(3, 2, 0.125), std::invalid_argument);
    CHECK_THROWS_AS(carrier_vectors(3, 3, 0.5), std::invalid_argument);
}

TEST_CASE("presets and prefactors") {
    const auto d = desk_preset(4);
    CHECK(d.K_B == std::vector<int>{15, 18, 21, 24});
    CHECK(d.K_A == std::vector<int>{33, 34, 35, 36});
    CHECK(desk_preset(4, Variant::small_q).K_A.size() == 1);
    CHECK(desk_preset(4, Variant::large_q).K_B == std::vector<int>{24});
    CHECK(amplitude_prefactor(d, 0.5, 2.0) == doctest::Approx(0.25));
    CHECK(amplitude_prefactor(desk_preset(4, Variant::small_q), 0.5, 2.0) == doctest::Approx(0.5));
    CHECK(predicted_exponent(Variant::main, 0.75, 4.0) == 0.0);
    CHECK(predicted_exponent(Variant::small_q, 0.25, 4.0) == 0.0);
    CHECK(predicted_exponent(Variant::large_q, 0.5, 4.0) == 0.0);
    CHECK(evaluation_time(d) == doctest::Approx(256.0 * 0.125 / std::ldexp(1.0, 66)));
    auto lit = d;
    lit.t_rule = TimeRule::literal;
    CHECK(evaluation_time(lit) == doctest::Approx(0.125 / std::ldexp(1.0, 66)));
    CHECK(parse_variant("small-q") == Variant::small_q);
    CHECK_THROWS_AS(parse_variant("tiny"), std::invalid_argument);
}

TEST_CASE("support audit") {
    SUBCASE("desk preset passes with positive margins") {
        for (int m = 2; m <= 6; ++m) {
            const auto r = support_audit(desk_preset(m));
            CHECK(r.pass);
            CHECK_FALSE(r.infeasible);
            for (const auto& c : r.conditions) {
                CHECK(c.pass);
                CHECK(c.margin > 0.0);
                MESSAGE("m=" << m << " " << c.name << " margin " << c.margin << " " << c.detail);
            }
        }
    }
    SUBCASE("original exponents do not fit a desk grid") {
        for (std::int64_t N : {256, 4096}) {
            const auto r = support_audit(literal_preset(1, N));
            CHECK(r.infeasible);
            CHECK_FALSE(r.pass);
            CHECK_FALSE(condition_passes(r, "(iii)"));
        }
    }
    SUBCASE("K_A one step above K_B overlaps") {
        InflationConfig c;
        c.R = 4;
        c.K_B = {3, 6};
        c.K_A = {7, 8};
        const auto r = support_audit(c);
        CHECK_FALSE(r.pass);
        // The families stay on their own plateaus; the damage shows up in the products.
        CHECK(condition_passes(r, "(i)"));
        CHECK_FALSE(condition_passes(r, "(ii)"));
        CHECK_THROWS_AS(build_sparse_initial_data(c), AuditFailure);
    }
    SUBCASE("invalid configs are reported, not thrown") {
        InflationConfig c = desk_preset(2);
        c.n = 2;
        const auto r = support_audit(c);
        CHECK_FALSE(r.pass);
        CHECK_FALSE(r.violations.empty());
    }
    SUBCASE("grid preset") {
        const auto r = support_audit(grid_preset());
        CHECK(r.pass);
        CHECK(r.grid_N == 64);
    }
}

TEST_CASE("sparse initial data") {
    const auto cfg = desk_preset(3);
    const SparseField u = build_sparse_initial_data(cfg, 1.0);
    REQUIRE(u.size() > 0);
    std::map<Lattice, Amp3> spec;
    double amax = 0.0, div = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        spec[u.K[i]] = u.amp[i];
        amax = std::max(amax, std::abs(u.amp[i][0]));
        const cplx d = static_cast<double>(u.K[i][0]) * u.amp[i][0] + static_cast<double>(u.K[i][1]) * u.amp[i][1];
        div = std::max(div, std::abs(d) / std::sqrt(static_cast<double>(static_cast<long double>(dot(u.K[i], u.K[i])))));
    }
    CHECK(div <= 1e-10 * amax);
    // Real field: every mode has its conjugate partner.
    double herm = 0.0;
    for (const auto& [K, a] : spec) {
        auto it = spec.find(-K);
        REQUIRE(it != spec.end());
        for (int c = 0; c < 3; ++c) herm = std::max(herm, std::abs(a[c] - std::conj(it->second[c])));
    }
    CHECK(herm <= 1e-12 * amax);
    // Each family sits inside 2^{k-1} < |xi| < 2^{k+1}.
    for (const auto& cl : u.clusters)
        for (std::size_t i = cl.begin; i < cl.end; ++i) {
            const double r = std::sqrt(u.xi2(i));
            CHECK(r > std::ldexp(1.0, cl.k - 1));
            CHECK(r < std::ldexp(1.0, cl.k + 1));
        }
}

TEST_CASE("grid realization of the small preset") {
    const auto cfg = grid_preset();
    const SpectralField u0 = build_initial_data(cfg, 1.0);
    CHECK(u0.grid().N == 64);
    CHECK(divergence_defect(u0) <= 1e-10);
    CHECK(hermitian_defect(u0) <= 1e-12);
    for (int c = 0; c < 3; ++c) {
        double im = 0.0;
        const SpectralField p = to_physical(u0);
        for (std::size_t i = 0; i < p.points(); ++i) im = std::max(im, std::abs(p.at(c, i).imag()));
        CHECK(im <= 1e-12);
    }
    CHECK_THROWS_AS(build_initial_data(desk_preset(2)), std::invalid_argument);
}

TEST_CASE("exact sparse Duhamel matches the grid solver") {
    const auto cfg = grid_preset();
    const double t = evaluation_time(cfg);
    const SparseField su = build_sparse_initial_data(cfg, 1.0);
    const SparseSpectrum exact = duhamel_product(su, t, ProductKind::full, nullptr);

    const SpectralField u0 = build_initial_data(cfg, 1.0);
    const TimeGrid tg = make_time_grid(t, 16, 1.0);
    const Trajectory h = heat_trajectory(u0, tg);
    const SpectralField B = duhamel_bilinear_all(h, h).back();
    const GridSpec& g = B.grid();
    const int cut = dealias_cutoff(g);
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < g.points(); ++i) {
        const Wavevector k = g.wavevector(i);
        if (std::abs(k[0]) > cut || std::abs(k[1]) > cut || std::abs(k[2]) > cut) continue;
        auto it = exact.find(Lattice{k[0], k[1], k[2]});
        for (int c = 0; c < 3; ++c) {
            const cplx e = it == exact.end() ? cplx(0.0, 0.0) : it->second[c];
            err = std::max(err, std::abs(B.at(c, i) - e));
            ref = std::max(ref, std::abs(e));
        }
    }
    MESSAGE("sparse vs grid Duhamel: " << err / ref);
    CHECK(ref > 0.0);
    CHECK(err <= 1e-6 * ref);
}

TEST_CASE("functionals: homogeneity, small-time limit, recombination") {
    const auto cfg = desk_preset(2);
    const double t = evaluation_time(cfg);
    const FunctionalSet one = evaluate_functionals(cfg, t, 1.0);
    const FunctionalSet two = evaluate_functionals(cfg, t, 1e-3);
    // Errors are measured against the main term; the cross term is a cancellation.
    const double scale_ref = restricted_value(one, FunctionalKind::main, 0.25, 4.0, 1.0);
    for (auto kind : {FunctionalKind::main, FunctionalKind::cross, FunctionalKind::pressure, FunctionalKind::full}) {
        const double a = restricted_value(one, kind, 0.25, 4.0, 1.0);
        const double b = restricted_value(two, kind, 0.25, 4.0, 1.0);
        MESSAGE("kind " << static_cast<int>(kind) << " rel " << (b - 1e-6 * a) / (1e-6 * a));
        CHECK(std::abs(b - 1e-6 * a) <= 1e-12 * 1e-6 * scale_ref);
    }
    CHECK(one.recombination_defect <= 1e-10);
    CHECK(one.sign_definite);
    for (const auto& row : one.rows) {
        CHECK(row.main.sign_definite);
        CHECK(row.main.lower <= row.main.upper * (1.0 + 1e-12));
        CHECK(row.main.lower >= 0.999 * row.main.upper);
        CHECK(row.main.groups == 2);
    }

    // Linear in t once the exponentials are far from saturation.
    std::vector<double> vals;
    for (double f : {1.0, 1e-2, 1e-4, 1e-6})
        vals.push_back(restricted_value(evaluate_functionals(cfg, f * t, 1.0), FunctionalKind::main, 0.0, kInf, 1.0));
    for (std::size_t i = 1; i < vals.size(); ++i) CHECK(vals[i] < vals[i - 1]);
    CHECK(vals[3] / vals[2] == doctest::Approx(1e-2).epsilon(1e-3));
    CHECK_THROWS_AS(evaluate_functionals(cfg, 0.0), std::invalid_argument);

    // Wrappers use the configured prefactor.
    auto c2 = cfg;
    c2.sigma = 0.5;
    c2.q = 2.0;
    const double pref = amplitude_prefactor(c2, 0.5, 2.0);
    CHECK(inflation_functional(c2, t).value ==
          doctest::Approx(restricted_value(one, FunctionalKind::main, 0.5, 2.0, pref)).epsilon(1e-12));
    CHECK(cross_functional(c2, t) ==
          doctest::Approx(restricted_value(one, FunctionalKind::cross, 0.5, 2.0, pref)).epsilon(1e-12));
}

TEST_CASE("cross term vanishes when u1 + u2 = 0") {
    const auto cfg = grid_preset();
    SparseField u = build_sparse_initial_data(cfg, 1.0);
    for (auto& a : u.amp) a[1] = -a[0];
    const auto s = duhamel_product(u, evaluation_time(cfg), ProductKind::cross, nullptr);
    double worst = 0.0;
    for (const auto& [K, a] : s) worst = std::max(worst, std::abs(a[0]));
    CHECK(worst == 0.0);
}

TEST_CASE("pressure share shrinks with eps") {
    double prev = kInf;
    for (double eps : {0.125, 0.0625, 0.03125}) {
        const auto cfg = desk_preset(2, Variant::main, eps);
        const auto fs = evaluate_functionals(cfg, evaluation_time(cfg), 1.0);
        const double r = restricted_value(fs, FunctionalKind::pressure, 0.0, kInf, 1.0) /
                         restricted_value(fs, FunctionalKind::main, 0.0, kInf, 1.0);
        MESSAGE("eps=" << eps << " pressure/main=" << r);
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("log-log fit") {
    std::vector<double> x{2, 3, 4, 5, 6}, y;
    for (double v : x) y.push_back(3.0 * std::pow(v, 0.75));
    const SlopeFit f = fit_loglog(x, y);
    CHECK(f.slope == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(std::exp(f.intercept) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(f.residual <= 1e-12);
    CHECK_THROWS_AS(fit_loglog({1.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(fit_loglog({1.0, 2.0}, {1.0, -1.0}), std::domain_error);
}

TEST_CASE("report CSV layout") {
    std::vector<InflationConfig> fam{desk_preset(2), desk_preset(3)};
    const auto rep = scaling_experiment(fam, {0.0, 0.5}, 4.0);
    const std::string csv = rep.to_csv();
    CHECK(csv.rfind("m,sigma,q,t_star,norm_u0,main,cross,pressure,full_solution_norm,slope_fit,slope_residual\n", 0) == 0);
    std::size_t lines = 0;
    for (char ch : csv) lines += ch == '\n';
    CHECK(lines == 5);
    for (const auto& r : rep.rows) {
        CHECK(std::isfinite(r.main));
        CHECK(r.main > r.cross);
        CHECK(r.main > r.pressure);
        CHECK(r.chain_constant > 0.0);
    }
    CHECK(rep.main_fit.size() == 2);
    CHECK(scaling_experiment(fam, {0.0, 0.5}, 4.0).to_csv() == csv);
}
