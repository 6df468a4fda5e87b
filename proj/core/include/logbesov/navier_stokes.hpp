#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "logbesov/besov.hpp"
#include "logbesov/field.hpp"
#include "logbesov/path_norms.hpp"
#include "logbesov/time_grid.hpp"

namespace logbesov {

SpectralField heat(const SpectralField& u, double t);

// Per-mode projection delta_ij - xi_i xi_j / |xi|^2; the zero mode passes through.
SpectralField leray(const SpectralField& u);

// Largest |k_i| kept by the 2/3 rule: floor((N - 1) / 3).
int dealias_cutoff(const GridSpec& grid);
SpectralField dealias(const SpectralField& u);

// div(u (x) v) with (u (x) v)_ij = u_i v_j, products formed in physical space
// from 2/3-truncated inputs. `underresolved` reports input content beyond the
// cutoff (which is discarded).
SpectralField tensor_divergence(const SpectralField& u, const SpectralField& v, bool* underresolved = nullptr);
// P div(u (x) v)
SpectralField nonlinear_pair(const SpectralField& u, const SpectralField& v, bool* underresolved = nullptr);
SpectralField nonlinear(const SpectralField& u, bool* underresolved = nullptr);

enum class Provenance { picard, rk4, heat_only };
const char* provenance_name(Provenance p);

// Snapshots at the nodes of `times`, plus the state at t = 0.
struct Trajectory {
    GridSpec grid;
    TimeGrid times;
    SpectralField initial;
    std::vector<SpectralField> snapshots;
    Provenance provenance = Provenance::heat_only;

    const SpectralField& at_node(std::size_t i) const { return snapshots.at(i); }
    // Worst divergence_defect over all snapshots.
    double divergence_defect() const;
};

Trajectory heat_trajectory(const SpectralField& u0, const TimeGrid& times);

// B(u,v)(t) = int_0^t e^{(t-tau)Delta} P div(u (x) v)(tau) dtau at every node.
// Panels run between consecutive nodes (the first from t = 0). On each panel
// the tensor term is the quintic through six neighbouring nodes and the heat
// factor is integrated exactly against it.
std::vector<SpectralField> duhamel_bilinear_all(const Trajectory& U, const Trajectory& V);
SpectralField duhamel_bilinear(const Trajectory& U, const Trajectory& V, std::size_t node);

// sup_t / L^q(dt/t) Kato norm of t -> ||u(t)||_inf.
double xnorm(const Trajectory& U, const KatoParams& kp);
double xnorm_snapshots(const TimeGrid& times, const std::vector<SpectralField>& snaps, const KatoParams& kp);

struct SolveDiagnostics {
    std::vector<double> increments;          // X_T norm of u^{(m+1)} - u^{(m)}
    std::vector<double> contraction_ratios;  // consecutive increment ratios
    double data_xnorm = 0.0;                 // ||e^{t Delta} u0||_X
    double bilinear_constant = 0.0;          // ||B(h,h)||_X / ||h||_X^2 for the heat trajectory h
    double threshold_estimate = 0.0;         // 1 / (4 C) from the measured constant
    bool converged = false;
    int iterations = 0;
    std::string status;
};

struct PicardResult {
    Trajectory trajectory;
    SolveDiagnostics diagnostics;
};

struct PicardOptions {
    double tol = 1e-10;
    int maxiter = 50;
    int density = 32;       // time nodes per decade
    double decades = 6.0;
};

// Iterates u <- e^{t Delta} u0 - B(u, u): the Navier-Stokes sign of the
// Duhamel term with B as defined above.
PicardResult picard_solve(const SpectralField& u0, double T, const KatoParams& kp, const PicardOptions& opt);

class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Integrating-factor RK4 on u' = -P div(u (x) u) with exact heat factors.
// Output at the nodes of `times`; each inter-node gap is split into equal
// steps no longer than dt.
Trajectory rk4_reference(const SpectralField& u0, const TimeGrid& times, double dt);
Trajectory rk4_reference(const SpectralField& u0, double T, double dt);

struct BilinearXReport {
    KatoParams kp;
    bool guaranteed = false;
    std::string region;
    double x_ratio = 0.0;      // ||B(U,V)||_X / (||U||_X ||V||_X)
    double besov_ratio = 0.0;  // sup_t ||B(U,V)(t)||_{B^{-1,sigma}_{inf q}} / (||U||_X ||V||_X)
    double xnorm_u = 0.0;
    double xnorm_v = 0.0;
};

BilinearXReport bilinear_xnorm_report(const Trajectory& U, const Trajectory& V, const KatoParams& kp);

// Field generators used by tests, the CLI and benchmarks.
// Taylor-Green (sin x1 cos x2, -cos x1 sin x2[, 0]) scaled by amp; requires L = 2π.
SpectralField taylor_green(const GridSpec& grid, double amp = 1.0);
// Divergence-free random field with |k|_inf <= kmax, unit-variance Gaussian
// coefficients scaled so that ||u||_inf ~ amp. Zero mean.
SpectralField random_divfree(const GridSpec& grid, int kmax, double amp, unsigned long long seed);
// Real random scalar field with |k|_inf <= kmax.
SpectralField random_scalar(const GridSpec& grid, int kmax, double amp, unsigned long long seed);

}  // namespace logbesov
