#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace logbesov {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Integer lattice wavevector; entries beyond the grid dimension are zero.
using Wavevector = std::array<int, 3>;
// Physical wavevector 2πk/L.
using Vec3 = std::array<double, 3>;

struct GridSpec {
    int n = 2;
    int N = 8;
    double L = kTwoPi;

    std::size_t points() const;
    double dk() const { return kTwoPi / L; }

    // Storage uses FFT order along every axis (index i <-> k = i for i < N/2,
    // k = i - N otherwise) with axis 0 slowest.
    Wavevector wavevector(std::size_t idx) const;
    Vec3 xi(std::size_t idx) const;
    bool representable(const Wavevector& k) const;
    std::size_t index_of(const Wavevector& k) const;
    // True when any component sits on the unpaired row k_i = -N/2.
    bool is_nyquist(std::size_t idx) const;

    bool operator==(const GridSpec& o) const { return n == o.n && N == o.N && L == o.L; }
    bool operator!=(const GridSpec& o) const { return !(*this == o); }
};

GridSpec make_grid(int n, int N, double L = kTwoPi);

enum class Domain { physical, spectral };
enum class Direction { to_physical, to_spectral };

// A real field on the torus with c components, stored either as grid samples
// (physical, imaginary parts carried along for diagnostics) or as Fourier
// coefficients normalized so that u(x) = sum_k coeff(k) exp(i 2πk.x/L).
class SpectralField {
public:
    SpectralField() = default;
    SpectralField(const GridSpec& grid, int components, Domain domain);

    const GridSpec& grid() const { return grid_; }
    int components() const { return components_; }
    Domain domain() const { return domain_; }
    std::size_t points() const { return grid_.points(); }

    cplx* component(int c) { return data_.data() + static_cast<std::size_t>(c) * points(); }
    const cplx* component(int c) const { return data_.data() + static_cast<std::size_t>(c) * points(); }
    cplx& at(int c, std::size_t idx) { return component(c)[idx]; }
    const cplx& at(int c, std::size_t idx) const { return component(c)[idx]; }

    std::vector<cplx>& data() { return data_; }
    const std::vector<cplx>& data() const { return data_; }

    void set_domain(Domain d) { domain_ = d; }

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double a);

private:
    GridSpec grid_{};
    int components_ = 0;
    Domain domain_ = Domain::spectral;
    std::vector<cplx> data_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

struct Mode {
    Wavevector k{};
    std::vector<cplx> amplitude;  // one entry per component
};

// Adds each mode and its conjugate partner; the zero mode keeps its real part.
SpectralField synthesize(const GridSpec& grid, int components, const std::vector<Mode>& modes);

SpectralField transform(const SpectralField& f, Direction dir);
SpectralField to_physical(const SpectralField& f);
SpectralField to_spectral(const SpectralField& f);

using ScalarSymbol = std::function<cplx(const Vec3& xi)>;
// Writes a c-by-c row-major matrix for the given physical wavevector.
using MatrixSymbol = std::function<void(const Vec3& xi, cplx* out)>;

SpectralField apply_multiplier(const SpectralField& f, const ScalarSymbol& m);
SpectralField apply_matrix_multiplier(const SpectralField& f, const MatrixSymbol& m);

// Grid L^p norm of the pointwise Euclidean norm over components.
double lp_norm(const SpectralField& f, double p);

// Sum of coefficients of a field whose spectrum is real and nonnegative; this
// is the value at the origin and equals the sup norm.
double supnorm_nonneg_spectrum(const SpectralField& f, double tol = 1e-12);

// Largest |coeff(k) - conj(coeff(-k))| over the field, relative to its max modulus.
double hermitian_defect(const SpectralField& f);
// max_k |xi . u(k)| / max_k |u(k)|
double divergence_defect(const SpectralField& f);
double max_abs_coeff(const SpectralField& f);

// LBF file I/O.
class FieldFileError : public std::runtime_error {
public:
    enum class Kind { io, bad_magic, bad_version, bad_header, short_payload };
    FieldFileError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

void save_field(const SpectralField& f, const std::string& path);
SpectralField load_field(const std::string& path);

// Deterministic sum of fn(i) over [0, n): fixed block partition independent of
// the thread count, blocks combined in index order.
double ordered_sum(std::size_t n, const std::function<double(std::size_t)>& fn);
double ordered_max(std::size_t n, const std::function<double(std::size_t)>& fn);

}  // namespace logbesov
