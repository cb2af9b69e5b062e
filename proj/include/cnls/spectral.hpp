// Fourier-side representation of 2π-periodic functions.
//
// A SpectralField stores normalized coefficients c_n over the symmetric band
// n ∈ [-M, M], with u(x) = Σ_n c_n e^{inx}. Physical-space work happens on
// uniform grids x_j = 2πj/P through FFTW; the mapping between the symmetric
// band and FFT bin layout stays internal to synthesize/analyze.
//
// Products of band-limited fields are evaluated on zero-padded grids: a
// degree-d product of band-M fields needs P ≥ d·M + B + 1 for its
// coefficients on [-B, B] to be alias-free.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

#include <fftw3.h>

#include "cnls/errors.hpp"

namespace cnls {

using Complex = std::complex<double>;

inline double bracket(std::int64_t n) {
    return std::sqrt(1.0 + static_cast<double>(n) * static_cast<double>(n));
}

class SpectralField {
public:
    SpectralField() : band_(0), coeffs_(1, Complex{0.0, 0.0}) {}

    explicit SpectralField(int band_limit)
        : band_(band_limit), coeffs_(2 * static_cast<std::size_t>(band_limit) + 1) {
        if (band_limit < 0) throw InvalidArgument("band_limit must be nonnegative");
    }

    int band() const noexcept { return band_; }
    std::size_t size() const noexcept { return coeffs_.size(); }

    // n ∈ [-band, band]
    Complex& c(int n) { return coeffs_[static_cast<std::size_t>(n + band_)]; }
    const Complex& c(int n) const { return coeffs_[static_cast<std::size_t>(n + band_)]; }

    // 0 outside the band; valid for any n
    Complex at(int n) const {
        if (n < -band_ || n > band_) return Complex{0.0, 0.0};
        return coeffs_[static_cast<std::size_t>(n + band_)];
    }

    const std::vector<Complex>& raw() const noexcept { return coeffs_; }
    std::vector<Complex>& raw() noexcept { return coeffs_; }

    bool all_finite() const {
        for (const auto& z : coeffs_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

    double l2_norm() const {
        double s = 0.0;
        for (const auto& z : coeffs_) s += std::norm(z);
        return std::sqrt(s);
    }

    SpectralField& operator*=(Complex a) {
        for (auto& z : coeffs_) z *= a;
        return *this;
    }

    friend SpectralField operator-(const SpectralField& a, const SpectralField& b) {
        if (a.band_ != b.band_) throw InvalidArgument("band mismatch in field subtraction");
        SpectralField out(a.band_);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            out.coeffs_[i] = a.coeffs_[i] - b.coeffs_[i];
        return out;
    }

private:
    int band_;
    std::vector<Complex> coeffs_;
};

struct PhysicalSamples {
    std::vector<Complex> values;  // values[j] = u(2πj/P)

    std::size_t grid_size() const noexcept { return values.size(); }
};

namespace detail {

// FFTW plans are cached per size; planning is serialized (the FFTW planner is
// not thread-safe) while execution through fftw_execute_dft on distinct
// buffers is. FFTW_ESTIMATE keeps planning deterministic.
class FftPlans {
public:
    static FftPlans& instance() {
        static FftPlans plans;
        return plans;
    }

    void forward(std::vector<Complex>& in, std::vector<Complex>& out) {
        execute(in, out, FFTW_FORWARD);
    }

    void backward(std::vector<Complex>& in, std::vector<Complex>& out) {
        execute(in, out, FFTW_BACKWARD);
    }

private:
    FftPlans() = default;
    ~FftPlans() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }
    FftPlans(const FftPlans&) = delete;

    void execute(std::vector<Complex>& in, std::vector<Complex>& out, int sign) {
        const std::size_t n = in.size();
        out.resize(n);
        fftw_plan plan;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto key = std::make_pair(n, sign);
            auto it = plans_.find(key);
            if (it == plans_.end()) {
                // Dummy buffers just for planning; UNALIGNED lets the plan run
                // on arbitrary caller vectors via fftw_execute_dft.
                std::vector<Complex> a(n), b(n);
                plan = fftw_plan_dft_1d(static_cast<int>(n),
                                        reinterpret_cast<fftw_complex*>(a.data()),
                                        reinterpret_cast<fftw_complex*>(b.data()),
                                        sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
                plans_.emplace(key, plan);
            } else {
                plan = it->second;
            }
        }
        fftw_execute_dft(plan,
                         reinterpret_cast<fftw_complex*>(in.data()),
                         reinterpret_cast<fftw_complex*>(out.data()));
    }

    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

}  // namespace detail

// Smallest 2^a·3^b·5^c·7^d ≥ n (sizes FFTW handles at full speed).
inline std::size_t next_fast_size(std::size_t n) {
    if (n <= 1) return 1;
    for (std::size_t candidate = n;; ++candidate) {
        std::size_t m = candidate;
        for (std::size_t p : {2u, 3u, 5u, 7u})
            while (m % p == 0) m /= p;
        if (m == 1) return candidate;
    }
}

// Grid large enough that a degree-`degree` product of band-M factors (plus an
// optional extra factor of band `extra_band`) has alias-free coefficients on
// [-extract_band, extract_band].
inline std::size_t dealias_grid_size(int band, int degree, int extract_band,
                                     int extra_band = 0) {
    const std::size_t need = static_cast<std::size_t>(degree) * band + extra_band +
                             extract_band + 1;
    return next_fast_size(need);
}

inline PhysicalSamples synthesize(const SpectralField& field, std::size_t grid_size) {
    const int M = field.band();
    if (grid_size < 2 * static_cast<std::size_t>(M) + 1)
        throw InvalidArgument("synthesize: grid_size " + std::to_string(grid_size) +
                              " too small for band " + std::to_string(M));
    std::vector<Complex> bins(grid_size, Complex{0.0, 0.0});
    for (int n = -M; n <= M; ++n) {
        const std::size_t k = static_cast<std::size_t>((n % static_cast<int>(grid_size) +
                                                        static_cast<int>(grid_size)) %
                                                       static_cast<int>(grid_size));
        bins[k] += field.c(n);
    }
    PhysicalSamples out;
    detail::FftPlans::instance().backward(bins, out.values);
    return out;
}

inline SpectralField analyze(const PhysicalSamples& samples, int band_limit) {
    const std::size_t P = samples.grid_size();
    if (P < 2 * static_cast<std::size_t>(band_limit) + 1)
        throw InvalidArgument("analyze: band " + std::to_string(band_limit) +
                              " too large for grid " + std::to_string(P));
    std::vector<Complex> in = samples.values;
    std::vector<Complex> bins;
    detail::FftPlans::instance().forward(in, bins);
    SpectralField field(band_limit);
    const double scale = 1.0 / static_cast<double>(P);
    for (int n = -band_limit; n <= band_limit; ++n) {
        const std::size_t k = static_cast<std::size_t>(
            (n % static_cast<int>(P) + static_cast<int>(P)) % static_cast<int>(P));
        field.c(n) = bins[k] * scale;
    }
    return field;
}

inline double sobolev_norm(const SpectralField& field, double s) {
    double sum = 0.0;
    const int M = field.band();
    for (int n = -M; n <= M; ++n)
        sum += std::pow(1.0 + static_cast<double>(n) * n, s) * std::norm(field.c(n));
    return std::sqrt(sum);
}

inline bool is_dyadic(int n) { return n >= 1 && (n & (n - 1)) == 0; }

// Dyadic block of a frequency: the power of two N_j with N_j ≤ |n| < 2N_j,
// and block 1 for n = 0.
inline int dyadic_block_of(std::int64_t n) {
    std::uint64_t a = static_cast<std::uint64_t>(n < 0 ? -n : n);
    if (a <= 1) return 1;
    int block = 1;
    while ((static_cast<std::uint64_t>(block) << 1) <= a) block <<= 1;
    return block;
}

// Keeps exactly the coefficients with block N_j ≤ |n| < 2N_j (block 1 keeps
// n ∈ {-1, 0, 1}); the blocks partition the frequency axis.
inline SpectralField lp_project(const SpectralField& field, int block) {
    if (!is_dyadic(block)) throw InvalidArgument("lp_project: block must be dyadic");
    SpectralField out(field.band());
    for (int n = -field.band(); n <= field.band(); ++n)
        if (dyadic_block_of(n) == block) out.c(n) = field.c(n);
    return out;
}

// ∫ u v̄ dx = 2π Σ c_n(u) conj(c_n(v)) for band-limited u, v.
inline Complex inner_product(const SpectralField& u, const SpectralField& v) {
    const int M = std::min(u.band(), v.band());
    Complex s{0.0, 0.0};
    for (int n = -M; n <= M; ++n) s += u.at(n) * std::conj(v.at(n));
    return 2.0 * M_PI * s;
}

}  // namespace cnls
