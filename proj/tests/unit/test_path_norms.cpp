#include <doctest.h>

#include <cmath>

#include "logbesov/path_norms.hpp"

using namespace logbesov;

namespace {

double U(double t, double T) { return std::abs(std::log(t / (std::exp(1.0) * T))); }

double max_rel(const TimeSeries& a, const std::function<double(double)>& f) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double e = f(a.grid.nodes[i]);
        worst = std::max(worst, std::abs(a.values[i] - e) / std::max(std::abs(e), 1e-300));
    }
    return worst;
}

}  // namespace

TEST_CASE("time grid layout") {
    const TimeGrid g = make_time_grid(2.0);
    CHECK(g.nodes.back() == 2.0);
    CHECK(g.t_min() <= 2.0e-6 * (1.0 + 1e-12));
    CHECK(g.density == 16);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g.nodes[i] > g.nodes[i - 1]);
    CHECK_THROWS(make_time_grid(-1.0));
    CHECK_THROWS(TimeSeries(g, std::vector<double>(3, 1.0)));
}

TEST_CASE("Kato norms: exact cancellations") {
    const TimeGrid g = make_time_grid(1.0);
    const auto f = TimeSeries::sample(g, [](double t) { return 1.0 / std::sqrt(t); });
    CHECK(kdot_norm(f, {0.0, kInf, 1.0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(k_norm(f, {0.0, kInf, 1.0}) == doctest::Approx(1.0).epsilon(1e-14));
    const auto h = TimeSeries::sample(g, [](double t) { return 1.0 / (std::sqrt(t) * U(t, 1.0)); });
    CHECK(kdot_norm(h, {1.0, kInf, 1.0}) == doctest::Approx(1.0).epsilon(1e-14));
    const auto z = TimeSeries::sample(g, [](double) { return 0.0; });
    CHECK(kdot_norm(z, {1.0, 2.0, 1.0}) == 0.0);
    CHECK(k_norm(z, {1.0, 2.0, 1.0}) == 0.0);
    CHECK_THROWS_AS(kdot_norm(f, {0.0, kInf, 2.0}), std::invalid_argument);
}

TEST_CASE("Kato norm: quadrature against a closed form") {
    // sqrt(t) * t^{1/2} on (0,1] in L^2(dt/t): int t^2 dt/t = 1/2
    const TimeGrid g = make_time_grid(1.0, 64);
    const auto f = TimeSeries::sample(g, [](double t) { return std::sqrt(t); });
    CHECK(kdot_norm(f, {0.0, 2.0, 1.0}) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-8));
    CHECK(k_norm(f, {0.0, 2.0, 1.0}) == doctest::Approx(std::sqrt(0.5) + 1.0).epsilon(1e-8));
}

TEST_CASE("Kato norm grows with sigma when the weight exceeds 1") {
    const TimeGrid g = make_time_grid(1.0);
    const auto f = TimeSeries::sample(g, [](double t) { return std::pow(t, -0.3); });
    double prev = 0.0;
    for (double s : {0.0, 0.5, 1.0, 2.0}) {
        const double v = k_norm(f, {s, 2.0, 1.0});
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("Hardy-Littlewood averages") {
    const TimeGrid g = make_time_grid(1.0);
    const auto a = hl_average(TimeSeries::sample(g, [](double t) { return std::sqrt(t); }));
    CHECK_FALSE(a.divergent);
    CHECK(max_rel(a.F, [](double t) { return 2.0 * std::sqrt(t); }) <= 1e-6);
    // |ln(t/e)|^{-2} has rapidly growing derivatives near t = T; the default
    // density resolves it to about 1e-5 and a fine grid to 1e-8.
    for (auto [d, tol] : {std::pair{16, 2e-5}, {64, 1e-8}}) {
        const TimeGrid gd = make_time_grid(1.0, d);
        const auto b = hl_average(TimeSeries::sample(gd, [](double t) { return std::pow(U(t, 1.0), -2.0); }));
        CHECK_FALSE(b.divergent);
        CHECK(max_rel(b.F, [](double t) { return 1.0 / U(t, 1.0); }) <= tol);
        const auto c = hl_average_logdamped(TimeSeries::sample(gd, [](double t) { return 1.0 / U(t, 1.0); }));
        CHECK(max_rel(c.F, [](double t) { return 1.0 / U(t, 1.0); }) <= tol);
    }
    const auto z = hl_average(TimeSeries::sample(g, [](double) { return 0.0; }));
    for (double v : z.F.values) CHECK(v == 0.0);
    const auto d = hl_average(TimeSeries::sample(g, [](double t) { return std::pow(t, -0.2); }));
    CHECK(d.divergent);
    const auto e = hl_average(TimeSeries::sample(g, [](double t) { return 1.0 / U(t, 1.0); }));
    CHECK(e.divergent);
}

TEST_CASE("scalar bilinear operator") {
    const TimeGrid g = make_time_grid(1.0);
    const auto one = TimeSeries::sample(g, [](double) { return 1.0; });
    const auto b = scalar_bilinear(one, one);
    CHECK(max_rel(b.value, [](double t) { return 2.0 * std::sqrt(t); }) <= 1e-8);
    const auto z = TimeSeries::sample(g, [](double) { return 0.0; });
    for (double v : scalar_bilinear(one, z).value.values) CHECK(v == 0.0);

    // f g = tau^{-1/2}: Beta(1/2,1/2) = pi. The constant continuation below
    // the first node costs about sqrt(t_min / t), so use many decades.
    const TimeGrid wide = make_time_grid(1.0, 16, 16.0);
    const auto f = TimeSeries::sample(wide, [](double t) { return std::pow(t, -0.25); });
    const auto p = scalar_bilinear(f, f);
    CHECK_FALSE(p.non_integrable);
    for (std::size_t i = wide.size() - 6 * 16; i < wide.size(); ++i)
        CHECK(p.value.values[i] == doctest::Approx(kPi).epsilon(1e-4));

    const auto sing = TimeSeries::sample(g, [](double t) { return 1.0 / t; });
    CHECK(scalar_bilinear(sing, one).non_integrable);
}

TEST_CASE("scalar bilinear operator is bilinear") {
    const TimeGrid g = make_time_grid(1.0);
    const auto fam = builtin_bilinear_family(g);
    const auto& f1 = fam[0].first;
    const auto& f2 = fam[1].first;
    const auto& h = fam[2].second;
    std::vector<double> sum(f1.values.size()), scaled(f1.values.size());
    for (std::size_t i = 0; i < sum.size(); ++i) {
        sum[i] = f1.values[i] + f2.values[i];
        scaled[i] = 3.5 * f1.values[i];
    }
    const auto b1 = scalar_bilinear(f1, h).value.values;
    const auto b2 = scalar_bilinear(f2, h).value.values;
    const auto bs = scalar_bilinear(TimeSeries(g, sum), h).value.values;
    const auto bk = scalar_bilinear(TimeSeries(g, scaled), h).value.values;
    for (std::size_t i = 0; i < sum.size(); ++i) {
        CHECK(std::abs(bs[i] - b1[i] - b2[i]) <= 1e-12 * std::abs(bs[i]));
        CHECK(std::abs(bk[i] - 3.5 * b1[i]) <= 1e-12 * std::abs(bk[i]));
    }
}

TEST_CASE("quadrature self-convergence under density doubling") {
    const TimeGrid g = make_time_grid(1.0, 16);
    const TimeGrid g2 = make_time_grid(1.0, 32);
    auto smooth = [](double t) { return std::sqrt(t) * (1.0 + 0.3 * std::sin(std::log(t))); };
    const auto f = TimeSeries::sample(g, smooth);
    const auto f2 = TimeSeries::sample(g2, smooth);
    const auto b = scalar_bilinear(f, f).value;
    const auto b2 = scalar_bilinear(f2, f2).value;
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(b.values[i] == doctest::Approx(b2.values[2 * i]).epsilon(1e-6));
    for (double q : {1.0, 2.0, 4.0}) {
        const KatoParams kp{1.0, q, 1.0};
        CHECK(k_norm(f, kp) == doctest::Approx(k_norm(f2, kp)).epsilon(1e-6));
    }
    const auto F = hl_average(f).F;
    const auto F2 = hl_average(f2).F;
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(F.values[i] == doctest::Approx(F2.values[2 * i]).epsilon(1e-6));
}

TEST_CASE("bilinear region") {
    std::string label;
    CHECK(bilinear_region(1.0, 1.0, &label));
    CHECK(bilinear_region(0.5, 2.0));
    CHECK(bilinear_region(0.75, 2.0));
    CHECK_FALSE(bilinear_region(0.5, 3.0, &label));
    CHECK(label.find("outside") != std::string::npos);
    CHECK_FALSE(bilinear_region(0.25, 2.0));
}

TEST_CASE("bilinear constant report") {
    const TimeGrid g = make_time_grid(1.0);
    const auto z = TimeSeries::sample(g, [](double) { return 0.0; });
    const auto r0 = bilinear_constant_report({{z, z}}, {1.0, kInf, 1.0});
    CHECK(r0.max_ratio == 0.0);
    std::vector<std::pair<TimeSeries, TimeSeries>> fam;
    for (double beta : {1.0, 1.5, 2.0, 3.0}) {
        auto f = TimeSeries::sample(g, [=](double t) { return std::pow(t, -0.5) * std::pow(U(t, 1.0), -beta); });
        fam.emplace_back(f, f);
    }
    for (const KatoParams kp : {KatoParams{1.0, kInf, 1.0}, KatoParams{0.5, 2.0, 1.0}}) {
        const auto r = bilinear_constant_report(fam, kp);
        MESSAGE("power-log family max ratio at sigma=" << kp.sigma << " q=" << kp.q << ": " << r.max_ratio);
        CHECK(r.guaranteed);
        CHECK(std::isfinite(r.max_ratio));
        CHECK(r.max_ratio > 0.0);
    }
}

TEST_CASE("inequality suites on the builtin family") {
    const TimeGrid g = make_time_grid(1.0);
    const auto fam = builtin_family(g);
    REQUIRE(fam.size() == 50);
    for (double q : {2.0, 4.0, kInf}) {
        const auto r = check_hardy_log(fam, q);
        MESSAGE("log Hardy q=" << q << " max ratio " << r.max_ratio);
        CHECK(r.violations == 0);
    }
    for (double q : {1.0, 2.0, kInf}) {
        const auto r = check_hardy_logdamped(fam, q);
        MESSAGE("log-damped Hardy q=" << q << " max ratio " << r.max_ratio);
        CHECK(r.violations == 0);
    }
    const auto bf = builtin_bilinear_family(g);
    for (auto [s, q] : {std::pair{1.0, 1.0}, {1.0, kInf}, {0.5, 2.0}, {0.75, 2.0}}) {
        const auto r = check_bilinear(bf, s, q);
        MESSAGE("bilinear sigma=" << s << " q=" << q << " max ratio " << r.max_ratio);
        CHECK(r.violations == 0);
    }
}
