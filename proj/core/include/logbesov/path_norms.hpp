#pragma once

#include <string>
#include <utility>
#include <vector>

#include "logbesov/field.hpp"
#include "logbesov/time_grid.hpp"

namespace logbesov {

struct KatoParams {
    double sigma = 1.0;
    double q = kInf;
    double T = 1.0;

    void validate() const;
};

// || sqrt(t) |ln(t/(eT))|^sigma f ||_{L^q(dt/t)} on the series' grid.
double kdot_norm(const TimeSeries& f, const KatoParams& kp);
// kdot at (sigma, q) plus kdot at (sigma, inf); the single sup norm at q = inf.
double k_norm(const TimeSeries& f, const KatoParams& kp);

struct CumulativeSeries {
    TimeSeries F;
    bool divergent = false;
};

// F(t) = int_0^t f dtau/tau
CumulativeSeries hl_average(const TimeSeries& f);
// F(t) = int_0^t |ln(tau/(eT))|^{-1} f dtau/tau
CumulativeSeries hl_average_logdamped(const TimeSeries& f);

struct BilinearSeries {
    TimeSeries value;
    bool non_integrable = false;  // product grows like tau^{-1} or faster at the first nodes
};

// B(f,g)(t) = int_0^t (t - tau)^{-1/2} f g dtau at every node.
BilinearSeries scalar_bilinear(const TimeSeries& f, const TimeSeries& g);

// Whether (sigma, q) lies in the region where the bilinear bound is proved:
// (a) sigma >= 1, or (b) 1/2 <= sigma < 1 and 1/sigma <= q <= 1/(1 - sigma).
bool bilinear_region(double sigma, double q, std::string* label = nullptr);

struct BilinearReport {
    KatoParams kp;
    bool guaranteed = false;
    std::string region;
    std::vector<double> ratios;
    double max_ratio = 0.0;
};

BilinearReport bilinear_constant_report(const std::vector<std::pair<TimeSeries, TimeSeries>>& family,
                                        const KatoParams& kp);

// Weighted Hardy-type inequalities on nonnegative series.
struct InequalityRow {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    bool divergent = false;
};

struct InequalityReport {
    std::string lemma;  // "2.3", "2.4" or "2.5"
    double q = 0.0;
    double sigma = 0.0;
    std::vector<InequalityRow> rows;
    double max_ratio = 0.0;
    double declared_constant = 0.0;  // bound a violation is judged against
    int violations = 0;
};

// (int |ln|^{q-1} |F|^q dt/t)^{1/q} <= C (int |ln|^{q-1} |f|^{q/2} dt/t)^{2/q},
// F = int_0^t f dtau/tau, q in [2, inf]; q = inf compares sup |ln||F| with
// sup |ln|^2 |f|.
InequalityReport check_hardy_log(const std::vector<TimeSeries>& family, double q);
// || |ln| F ||_{L^q(dt/t)} <= C || |ln| f ||_{L^q(dt/t)}, F the log-damped average.
InequalityReport check_hardy_logdamped(const std::vector<TimeSeries>& family, double q);
// ||B(f,g)||_K <= C ||f||_K ||g||_K on the family.
InequalityReport check_bilinear(const std::vector<std::pair<TimeSeries, TimeSeries>>& family, double sigma,
                                double q);

// Fifty deterministic nonnegative profiles of the form
// t^a |ln(t/(eT))|^{-b} (1 + mu sin(omega ln t)) plus a log-normal bump.
std::vector<TimeSeries> builtin_family(const TimeGrid& grid);
// The same profiles multiplied by t^{-1/2}, paired for the bilinear check.
std::vector<std::pair<TimeSeries, TimeSeries>> builtin_bilinear_family(const TimeGrid& grid);

}  // namespace logbesov
