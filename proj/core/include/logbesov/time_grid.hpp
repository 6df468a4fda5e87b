#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace logbesov {

// Log-spaced nodes t_min = T*10^{-decades} ... T, `density` nodes per decade.
struct TimeGrid {
    double T = 1.0;
    int density = 16;
    double decades = 6.0;
    std::vector<double> nodes;

    std::size_t size() const { return nodes.size(); }
    double t_min() const { return nodes.front(); }
    // Uniform spacing in ln t.
    double log_step() const;
};

TimeGrid make_time_grid(double T, int density = 16, double decades = 6.0);

struct TimeSeries {
    TimeGrid grid;
    std::vector<double> values;

    TimeSeries() = default;
    TimeSeries(TimeGrid g, std::vector<double> v);
    static TimeSeries sample(const TimeGrid& g, const std::function<double(double)>& f);

    // Six-point Lagrange interpolation in ln t; constant continuation
    // outside [t_min, T]. Linear in the data.
    double at(double t) const;
};

// Result of an integral over (0, t] against dt/t.
struct LogIntegral {
    double value = 0.0;
    double tail = 0.0;       // modelled contribution of (0, t_min)
    bool divergent = false;  // advisory flag, see integrate_dt_over_t
};

// Integral of g over (0, t_n] against dt/t for nonnegative samples g on a
// log grid. Each interval between nodes integrates the six-point Lagrange
// interpolant in ln t (stencils shift inward at the ends). Below the first
// node the samples are continued by the model A t^a |ln(t/(eT))|^{-b} fitted through the three smallest nodes; a
// non-integrable model (a = 0, b <= 1, or a < 0) gives no tail and sets
// `divergent`. The same flag is raised when the smallest decade contributes
// more than ten times the next one.
LogIntegral integrate_dt_over_t(const TimeGrid& grid, const std::vector<double>& g, std::size_t upto,
                                double T_for_log);

// Running integrals: out[i] = integral over (0, nodes[i]] (same rule and
// same tail model; used for the cumulative Hardy-type transforms).
std::vector<double> cumulative_dt_over_t(const TimeGrid& grid, const std::vector<double>& g, double T_for_log,
                                         bool* divergent = nullptr);

// Maximum of nonnegative samples, refined by a parabola through the peak and
// its neighbours in (ln t, ln g) when refine is set.
double sampled_sup(const TimeGrid& grid, const std::vector<double>& g, bool refine);

}  // namespace logbesov
