#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "logbesov/field.hpp"

namespace logbesov {

// Exact arithmetic on band-limited fields whose spectra are a few thousand
// lattice points spread over frequencies far beyond any allocatable grid.
//
// Lattice convention: the torus has period L = 2πR, so a lattice vector K
// (int64) is the physical wavevector K / R. Positions are points P of a
// nominal N-point grid (x = L P / N), and phases K.x = 2π (K.P mod N) / N are
// reduced in 128-bit integer arithmetic.

using Lattice = std::array<std::int64_t, 3>;
using Amp3 = std::array<cplx, 3>;
using int128 = __int128;

int128 dot(const Lattice& a, const Lattice& b);
Lattice operator+(const Lattice& a, const Lattice& b);
Lattice operator-(const Lattice& a);

// A run of modes sharing a centre: one bump of the construction.
struct Cluster {
    Lattice center{};
    std::int64_t radius = 0;  // lattice units, Euclidean
    std::size_t begin = 0, end = 0;
    int k = 0, l = 0;          // family labels (block index of the carrier and of the offset)
    int sa = 0, sb = 0;        // signs of a_k and b_l in the centre
};

struct SparseField {
    int n = 3;
    std::int64_t R = 1;
    std::int64_t N = 0;  // nominal grid used for phases and sampled evaluation
    std::vector<Lattice> K;
    std::vector<Amp3> amp;
    std::vector<Cluster> clusters;

    std::size_t size() const { return K.size(); }
    double L() const { return kTwoPi * static_cast<double>(R); }
    // Physical |xi|^2 of mode i.
    double xi2(std::size_t i) const;
    std::int64_t max_abs_component() const;
};

// Realizes the field on a dense grid (grid.L must equal 2πR and all modes
// must be representable); throws std::out_of_range otherwise.
SpectralField to_grid(const SparseField& f, const GridSpec& grid);

// Phase 2π (K.P mod N)/N as a unit complex number.
cplx lattice_phase(const Lattice& K, const Lattice& P, std::int64_t N);

// Output of an exact Duhamel product, keyed by lattice vector (ordered, so
// iteration is deterministic).
using SparseSpectrum = std::map<Lattice, Amp3>;

enum class ProductKind {
    main,       // (d1 - d2)(u1 u1)
    cross,      // d2[(u1 + u2) u1]
    pressure,   // d1 sum_{a,b<=2} (da db / Delta)(u_a u_b)
    projected,  // first component of P div(u (x) u)
    full,       // every component of P div(u (x) u)
};
const char* product_name(ProductKind k);

// Accepts or rejects an output cluster (centre, radius) before any mode pair
// is formed.
using ClusterFilter = std::function<bool(const Lattice& center, std::int64_t radius)>;

// int_0^t e^{(t-tau)Delta} Op[e^{tau Delta} u, e^{tau Delta} u] dtau with every
// mode pair integrated in closed form:
// e^{-t|xi|^2} (1 - e^{-t Lambda}) / Lambda, Lambda = |p|^2 + |q|^2 - |p+q|^2.
// Only cluster pairs accepted by `filter` contribute. Scalar kinds fill
// component 0.
SparseSpectrum duhamel_product(const SparseField& u, double t, ProductKind kind, const ClusterFilter& filter);

struct BlockSup {
    int j = 0;
    double upper = 0.0;    // envelope max over line groups; the sup norm on the torus for a single line pair
    double lower = 0.0;    // exact evaluation at sampled nominal grid points
    bool sign_definite = true;  // each line group has single-signed demodulated amplitudes
    std::size_t modes = 0;
    std::size_t groups = 0;
};

// Sup norm of Delta_j applied to a sparse spectrum. `centers` lists known
// bump positions (nominal grid points along x1) used as candidate maximizers.
BlockSup block_sup(const SparseSpectrum& spec, const SparseField& ref, int j, int components,
                   const std::vector<std::int64_t>& centers);

// Spectrum of a SparseField as a map (all components).
SparseSpectrum spectrum_of(const SparseField& f);

// Blocks j whose psi_j is nonzero somewhere on the spectrum.
std::vector<int> touched_blocks(const SparseSpectrum& spec, std::int64_t R);

}  // namespace logbesov
