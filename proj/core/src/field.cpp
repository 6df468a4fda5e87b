#include "logbesov/field.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cstring>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "logbesov/parallel.hpp"

namespace logbesov {

// ---------------------------------------------------------------- grid

std::size_t GridSpec::points() const {
    std::size_t p = 1;
    for (int d = 0; d < n; ++d) p *= static_cast<std::size_t>(N);
    return p;
}

Wavevector GridSpec::wavevector(std::size_t idx) const {
    Wavevector k{0, 0, 0};
    for (int d = n - 1; d >= 0; --d) {
        const int i = static_cast<int>(idx % static_cast<std::size_t>(N));
        idx /= static_cast<std::size_t>(N);
        k[d] = i < N / 2 ? i : i - N;
    }
    return k;
}

Vec3 GridSpec::xi(std::size_t idx) const {
    const Wavevector k = wavevector(idx);
    const double s = dk();
    return {s * k[0], s * k[1], s * k[2]};
}

bool GridSpec::representable(const Wavevector& k) const {
    for (int d = 0; d < n; ++d)
        if (k[d] < -N / 2 || k[d] >= N / 2) return false;
    for (int d = n; d < 3; ++d)
        if (k[d] != 0) return false;
    return true;
}

std::size_t GridSpec::index_of(const Wavevector& k) const {
    if (!representable(k)) throw std::out_of_range("wavevector not representable on grid");
    std::size_t idx = 0;
    for (int d = 0; d < n; ++d) {
        const int i = k[d] < 0 ? k[d] + N : k[d];
        idx = idx * static_cast<std::size_t>(N) + static_cast<std::size_t>(i);
    }
    return idx;
}

bool GridSpec::is_nyquist(std::size_t idx) const {
    for (int d = n - 1; d >= 0; --d) {
        if (static_cast<int>(idx % static_cast<std::size_t>(N)) == N / 2) return true;
        idx /= static_cast<std::size_t>(N);
    }
    return false;
}

GridSpec make_grid(int n, int N, double L) {
    if (n != 2 && n != 3) throw std::invalid_argument("unsupported dimension " + std::to_string(n));
    if (N < 8 || (N & (N - 1)) != 0)
        throw std::invalid_argument("N must be a power of two >= 8, got " + std::to_string(N));
    if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("period L must be positive");
    return GridSpec{n, N, L};
}

// ---------------------------------------------------------------- field

SpectralField::SpectralField(const GridSpec& grid, int components, Domain domain)
    : grid_(grid), components_(components), domain_(domain) {
    if (components < 1) throw std::invalid_argument("component count must be >= 1");
    data_.assign(static_cast<std::size_t>(components) * grid.points(), cplx(0.0, 0.0));
}

namespace {

void check_compatible(const SpectralField& a, const SpectralField& b) {
    if (a.grid() != b.grid() || a.components() != b.components() || a.domain() != b.domain())
        throw std::invalid_argument("field shape mismatch");
}

}  // namespace

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    check_compatible(*this, o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    check_compatible(*this, o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double a) {
    for (auto& v : data_) v *= a;
    return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

SpectralField synthesize(const GridSpec& grid, int components, const std::vector<Mode>& modes) {
    SpectralField f(grid, components, Domain::spectral);
    for (const auto& m : modes) {
        if (static_cast<int>(m.amplitude.size()) != components)
            throw std::invalid_argument("mode amplitude count does not match component count");
        Wavevector neg{-m.k[0], -m.k[1], -m.k[2]};
        for (int d = 0; d < grid.n; ++d) {
            if (m.k[d] <= -grid.N / 2 || m.k[d] >= grid.N / 2)
                throw std::out_of_range("wavevector at or beyond Nyquist");
        }
        const std::size_t ip = grid.index_of(m.k);
        const std::size_t in = grid.index_of(neg);
        for (int c = 0; c < components; ++c) {
            if (ip == in) {
                f.at(c, ip) += cplx(m.amplitude[c].real(), 0.0);
            } else {
                f.at(c, ip) += m.amplitude[c];
                f.at(c, in) += std::conj(m.amplitude[c]);
            }
        }
    }
    return f;
}

// ---------------------------------------------------------------- transforms

namespace {

struct PlanKey {
    int n, N, sign;
    bool operator<(const PlanKey& o) const {
        return std::tie(n, N, sign) < std::tie(o.n, o.N, o.sign);
    }
};

std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

fftw_plan get_plan(int n, int N, int sign) {
    static std::map<PlanKey, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex());
    PlanKey key{n, N, sign};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::size_t pts = 1;
    for (int d = 0; d < n; ++d) pts *= static_cast<std::size_t>(N);
    auto* buf = fftw_alloc_complex(pts);
    int dims[3] = {N, N, N};
    fftw_plan p = fftw_plan_dft(n, dims, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    if (p == nullptr) throw std::runtime_error("FFTW plan creation failed");
    cache.emplace(key, p);
    return p;
}

}  // namespace

SpectralField transform(const SpectralField& f, Direction dir) {
    const bool to_phys = dir == Direction::to_physical;
    if (to_phys && f.domain() != Domain::spectral)
        throw std::invalid_argument("transform to physical requires a spectral field");
    if (!to_phys && f.domain() != Domain::physical)
        throw std::invalid_argument("transform to spectral requires a physical field");
    SpectralField out = f;
    const GridSpec& g = f.grid();
    fftw_plan plan = get_plan(g.n, g.N, to_phys ? FFTW_BACKWARD : FFTW_FORWARD);
    const double scale = to_phys ? 1.0 : 1.0 / static_cast<double>(g.points());
    for (int c = 0; c < f.components(); ++c) {
        auto* p = reinterpret_cast<fftw_complex*>(out.component(c));
        fftw_execute_dft(plan, p, p);
        if (!to_phys) {
            cplx* v = out.component(c);
            for (std::size_t i = 0; i < g.points(); ++i) v[i] *= scale;
        }
    }
    out.set_domain(to_phys ? Domain::physical : Domain::spectral);
    return out;
}

SpectralField to_physical(const SpectralField& f) {
    return f.domain() == Domain::physical ? f : transform(f, Direction::to_physical);
}

SpectralField to_spectral(const SpectralField& f) {
    return f.domain() == Domain::spectral ? f : transform(f, Direction::to_spectral);
}

// ---------------------------------------------------------------- multipliers

SpectralField apply_multiplier(const SpectralField& f, const ScalarSymbol& m) {
    if (f.domain() != Domain::spectral) throw std::invalid_argument("multiplier requires a spectral field");
    SpectralField out = f;
    const GridSpec& g = f.grid();
    const int c = f.components();
    std::vector<int> bad(1, 0);
    parallel_for(g.points(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            const cplx s = m(g.xi(i));
            if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
                bad[0] = 1;
                continue;
            }
            for (int k = 0; k < c; ++k) out.at(k, i) *= s;
        }
    });
    if (bad[0] != 0) throw std::domain_error("multiplier is not finite on a representable wavevector");
    return out;
}

SpectralField apply_matrix_multiplier(const SpectralField& f, const MatrixSymbol& m) {
    if (f.domain() != Domain::spectral) throw std::invalid_argument("multiplier requires a spectral field");
    const GridSpec& g = f.grid();
    const int c = f.components();
    SpectralField out(g, c, Domain::spectral);
    std::vector<int> bad(1, 0);
    parallel_for(g.points(), [&](std::size_t b, std::size_t e) {
        std::vector<cplx> mat(static_cast<std::size_t>(c * c));
        for (std::size_t i = b; i < e; ++i) {
            m(g.xi(i), mat.data());
            for (int r = 0; r < c; ++r) {
                cplx acc(0.0, 0.0);
                for (int s = 0; s < c; ++s) {
                    const cplx v = mat[static_cast<std::size_t>(r * c + s)];
                    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) bad[0] = 1;
                    acc += v * f.at(s, i);
                }
                out.at(r, i) = acc;
            }
        }
    });
    if (bad[0] != 0) throw std::domain_error("multiplier is not finite on a representable wavevector");
    return out;
}

// ---------------------------------------------------------------- reductions

namespace {
constexpr std::size_t kReduceBlocks = 64;

template <typename Op>
double blocked_reduce(std::size_t n, const std::function<double(std::size_t)>& fn, Op op) {
    std::vector<double> partial(kReduceBlocks, 0.0);
    const std::size_t chunk = (n + kReduceBlocks - 1) / kReduceBlocks;
    parallel_for(
        kReduceBlocks,
        [&](std::size_t b, std::size_t e) {
            for (std::size_t blk = b; blk < e; ++blk) {
                double s = 0.0;
                const std::size_t lo = std::min(n, blk * chunk);
                const std::size_t hi = std::min(n, lo + chunk);
                for (std::size_t i = lo; i < hi; ++i) s = op(s, fn(i));
                partial[blk] = s;
            }
        },
        n >= 16384 ? 1 : kReduceBlocks + 1);
    double total = 0.0;
    for (double v : partial) total = op(total, v);
    return total;
}

}  // namespace

double ordered_sum(std::size_t n, const std::function<double(std::size_t)>& fn) {
    return blocked_reduce(n, fn, [](double a, double b) { return a + b; });
}

double ordered_max(std::size_t n, const std::function<double(std::size_t)>& fn) {
    return blocked_reduce(n, fn, [](double a, double b) { return std::max(a, b); });
}

double lp_norm(const SpectralField& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm requires p >= 1");
    const SpectralField u = to_physical(f);
    const int c = u.components();
    auto mag2 = [&](std::size_t i) {
        double s = 0.0;
        for (int k = 0; k < c; ++k) {
            const double v = u.at(k, i).real();
            s += v * v;
        }
        return s;
    };
    const std::size_t pts = u.points();
    if (std::isinf(p)) return std::sqrt(ordered_max(pts, mag2));
    const double cell = std::pow(u.grid().L / u.grid().N, u.grid().n);
    double sum;
    if (p == 2.0) {
        sum = ordered_sum(pts, mag2);
    } else {
        sum = ordered_sum(pts, [&](std::size_t i) { return std::pow(mag2(i), 0.5 * p); });
    }
    return std::pow(cell * sum, 1.0 / p);
}

double supnorm_nonneg_spectrum(const SpectralField& f, double tol) {
    if (f.domain() != Domain::spectral) throw std::invalid_argument("supnorm_nonneg_spectrum requires a spectral field");
    // Per component the coefficient sum is the value at the origin; for
    // vectors the Euclidean norm of those values bounds |u(x)| everywhere.
    double e = 0.0;
    for (int c = 0; c < f.components(); ++c) {
        double s = 0.0;
        for (std::size_t i = 0; i < f.points(); ++i) {
            const cplx v = f.at(c, i);
            if (v.real() < -tol || std::abs(v.imag()) > tol) {
                const Wavevector k = f.grid().wavevector(i);
                std::ostringstream os;
                os << "spectrum not real nonnegative at component " << c << " wavevector (" << k[0] << ","
                   << k[1] << "," << k[2] << ")";
                throw std::domain_error(os.str());
            }
            s += v.real();
        }
        e += s * s;
    }
    return std::sqrt(e);
}

double max_abs_coeff(const SpectralField& f) {
    double m = 0.0;
    for (const auto& v : f.data()) m = std::max(m, std::abs(v));
    return m;
}

double hermitian_defect(const SpectralField& f) {
    const GridSpec& g = f.grid();
    double worst = 0.0;
    for (int c = 0; c < f.components(); ++c) {
        for (std::size_t i = 0; i < g.points(); ++i) {
            if (g.is_nyquist(i)) continue;
            const Wavevector k = g.wavevector(i);
            const std::size_t j = g.index_of({-k[0], -k[1], -k[2]});
            worst = std::max(worst, std::abs(f.at(c, i) - std::conj(f.at(c, j))));
        }
    }
    const double m = max_abs_coeff(f);
    return m > 0.0 ? worst / m : 0.0;
}

double divergence_defect(const SpectralField& f) {
    if (f.domain() != Domain::spectral) throw std::invalid_argument("divergence_defect requires a spectral field");
    const GridSpec& g = f.grid();
    const int c = std::min(f.components(), g.n);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.points(); ++i) {
        const Vec3 xi = g.xi(i);
        cplx d(0.0, 0.0);
        for (int k = 0; k < c; ++k) d += xi[k] * f.at(k, i);
        worst = std::max(worst, std::abs(d));
    }
    const double m = max_abs_coeff(f);
    return m > 0.0 ? worst / m : 0.0;
}

// ---------------------------------------------------------------- LBF files

namespace {

constexpr char kMagic[4] = {'L', 'B', 'F', '1'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::string& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
}

void put_f64(std::string& buf, double d) {
    const auto v = std::bit_cast<std::uint64_t>(d);
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
}

std::uint32_t get_u32(const unsigned char* p) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
    return v;
}

double get_f64(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return std::bit_cast<double>(v);
}

// Maps a file position (lexicographic, per-axis wavevector order -N/2..N/2-1
// for spectral data, grid order for physical data) to the storage index.
std::size_t file_to_storage(const GridSpec& g, std::size_t pos, bool spectral) {
    if (!spectral) return pos;
    std::size_t idx = 0;
    std::size_t stride = 1;
    for (int d = g.n - 1; d >= 0; --d) {
        const std::size_t m = pos % static_cast<std::size_t>(g.N);
        pos /= static_cast<std::size_t>(g.N);
        const std::size_t s = (m + static_cast<std::size_t>(g.N / 2)) % static_cast<std::size_t>(g.N);
        idx += s * stride;
        stride *= static_cast<std::size_t>(g.N);
    }
    return idx;
}

}  // namespace

void save_field(const SpectralField& f, const std::string& path) {
    const GridSpec& g = f.grid();
    const bool spectral = f.domain() == Domain::spectral;
    std::string buf(kMagic, 4);
    put_u32(buf, kVersion);
    put_u32(buf, static_cast<std::uint32_t>(g.n));
    for (int d = 0; d < g.n; ++d) put_u32(buf, static_cast<std::uint32_t>(g.N));
    put_u32(buf, static_cast<std::uint32_t>(f.components()));
    put_u32(buf, spectral ? 1u : 0u);
    put_f64(buf, g.L);
    buf.reserve(buf.size() + f.data().size() * (spectral ? 16 : 8));
    for (int c = 0; c < f.components(); ++c) {
        for (std::size_t pos = 0; pos < g.points(); ++pos) {
            const cplx v = f.at(c, file_to_storage(g, pos, spectral));
            put_f64(buf, v.real());
            if (spectral) put_f64(buf, v.imag());
        }
    }
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw FieldFileError(FieldFileError::Kind::io, "cannot open " + path + " for writing");
    os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!os) throw FieldFileError(FieldFileError::Kind::io, "write failed for " + path);
}

SpectralField load_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw FieldFileError(FieldFileError::Kind::io, "cannot open " + path);
    std::string bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    const std::size_t size = bytes.size();
    if (size < 4 || std::memcmp(p, kMagic, 4) != 0)
        throw FieldFileError(FieldFileError::Kind::bad_magic, "not a field file");
    std::size_t off = 4;
    auto need = [&](std::size_t k) {
        if (off + k > size) throw FieldFileError(FieldFileError::Kind::bad_header, "truncated header");
    };
    need(8);
    const std::uint32_t version = get_u32(p + off);
    off += 4;
    if (version != kVersion)
        throw FieldFileError(FieldFileError::Kind::bad_version, "unsupported field file version " + std::to_string(version));
    const std::uint32_t n = get_u32(p + off);
    off += 4;
    if (n != 2 && n != 3) throw FieldFileError(FieldFileError::Kind::bad_header, "bad dimension in header");
    need(4 * n + 16);
    std::uint32_t N = get_u32(p + off);
    for (std::uint32_t d = 0; d < n; ++d) {
        if (get_u32(p + off) != N) throw FieldFileError(FieldFileError::Kind::bad_header, "non-uniform grid in header");
        off += 4;
    }
    const std::uint32_t c = get_u32(p + off);
    off += 4;
    const std::uint32_t tag = get_u32(p + off);
    off += 4;
    const double L = get_f64(p + off);
    off += 8;
    if (tag > 1 || c == 0) throw FieldFileError(FieldFileError::Kind::bad_header, "bad header fields");
    GridSpec g;
    try {
        g = make_grid(static_cast<int>(n), static_cast<int>(N), L);
    } catch (const std::invalid_argument& e) {
        throw FieldFileError(FieldFileError::Kind::bad_header, e.what());
    }
    const bool spectral = tag == 1;
    const std::size_t entry = spectral ? 16 : 8;
    if (size - off < static_cast<std::size_t>(c) * g.points() * entry)
        throw FieldFileError(FieldFileError::Kind::short_payload, "short payload");
    SpectralField f(g, static_cast<int>(c), spectral ? Domain::spectral : Domain::physical);
    for (std::uint32_t k = 0; k < c; ++k) {
        for (std::size_t pos = 0; pos < g.points(); ++pos) {
            const double re = get_f64(p + off);
            off += 8;
            double im = 0.0;
            if (spectral) {
                im = get_f64(p + off);
                off += 8;
            }
            f.at(static_cast<int>(k), file_to_storage(g, pos, spectral)) = cplx(re, im);
        }
    }
    return f;
}

}  // namespace logbesov
