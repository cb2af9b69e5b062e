// Multilinear functionals over the zero-sum frequency hyperplanes.
//
// λ_r(M_r; f₁, …, f_r) = Σ_{n₁+⋯+n_r=0} M_r(n) Π_j f̂_j(n_j), with conjugate
// slots entering through the view f̂(n) = conj(c_{-n}). The production λ₄
// evaluator iterates the three narrowest slots and solves the fourth from
// the constraint (O(M³), deterministic chunked reduction). The reference
// scans enumerate full index boxes and test the constraint; they share no
// loop structure with the production paths and exist as oracles.

#pragma once

#include <array>
#include <cstdint>

#include "cnls/parallel.hpp"
#include "cnls/spectral.hpp"

namespace cnls {

// Dense view of one λ-slot: value(n) already includes the conjugate flip,
// so downstream loops are plain array reads.
class SlotArray {
public:
    SlotArray(const SpectralField& f, bool conjugate_view) : band_(f.band()), values_(f.size()) {
        for (int n = -band_; n <= band_; ++n)
            values_[static_cast<std::size_t>(n + band_)] =
                conjugate_view ? std::conj(f.c(-n)) : f.c(n);
    }

    int band() const noexcept { return band_; }

    Complex operator()(int n) const {
        if (n < -band_ || n > band_) return Complex{0.0, 0.0};
        return values_[static_cast<std::size_t>(n + band_)];
    }

private:
    int band_;
    std::vector<Complex> values_;
};

inline SlotArray u_slot(const SpectralField& f) { return SlotArray(f, false); }
inline SlotArray ubar_slot(const SpectralField& f) { return SlotArray(f, true); }

// Σ over Γ₄ with per-slot fields. The widest slot is solved from the
// constraint, so collapsed three-index slots (band up to 3M) stay O(M³).
template <typename M4>
Complex lambda4_general(M4&& mult, const SlotArray& s1, const SlotArray& s2,
                        const SlotArray& s3, const SlotArray& s4) {
    const std::array<const SlotArray*, 4> slots{&s1, &s2, &s3, &s4};
    int wide = 0;
    for (int i = 1; i < 4; ++i)
        if (slots[static_cast<std::size_t>(i)]->band() > slots[static_cast<std::size_t>(wide)]->band())
            wide = i;
    std::array<int, 3> free{};
    for (int i = 0, j = 0; i < 4; ++i)
        if (i != wide) free[static_cast<std::size_t>(j++)] = i;

    const int b0 = slots[static_cast<std::size_t>(free[0])]->band();
    const int b1 = slots[static_cast<std::size_t>(free[1])]->band();
    const int b2 = slots[static_cast<std::size_t>(free[2])]->band();
    const int bw = slots[static_cast<std::size_t>(wide)]->band();
    const std::size_t items = static_cast<std::size_t>(2 * b0 + 1);

    auto scan = [&](std::size_t begin, std::size_t end) {
        Complex acc{0.0, 0.0};
        std::array<int, 4> n{};
        for (std::size_t i = begin; i < end; ++i) {
            n[static_cast<std::size_t>(free[0])] = static_cast<int>(i) - b0;
            const Complex f0 =
                (*slots[static_cast<std::size_t>(free[0])])(n[static_cast<std::size_t>(free[0])]);
            if (f0 == Complex{0.0, 0.0}) continue;
            for (int a = -b1; a <= b1; ++a) {
                n[static_cast<std::size_t>(free[1])] = a;
                const Complex f1 = (*slots[static_cast<std::size_t>(free[1])])(a);
                if (f1 == Complex{0.0, 0.0}) continue;
                const Complex f01 = f0 * f1;
                for (int b = -b2; b <= b2; ++b) {
                    n[static_cast<std::size_t>(free[2])] = b;
                    const int rest = -(n[static_cast<std::size_t>(free[0])] + a + b);
                    if (rest < -bw || rest > bw) continue;
                    n[static_cast<std::size_t>(wide)] = rest;
                    const auto m = mult(n[0], n[1], n[2], n[3]);
                    if (m == decltype(m){}) continue;
                    acc += m * f01 * (*slots[static_cast<std::size_t>(free[2])])(b) *
                           (*slots[static_cast<std::size_t>(wide)])(rest);
                }
            }
        }
        return acc;
    };

    return chunked_reduce<Complex>(items, Complex{0.0, 0.0}, scan,
                                   [](Complex acc, Complex z) { return acc + z; });
}

// λ₄(M₄; u) = λ₄(M₄; u, ū, u, ū).
template <typename M4>
Complex lambda4(M4&& mult, const SpectralField& u) {
    SlotArray a = u_slot(u), b = ubar_slot(u);
    return lambda4_general(mult, a, b, a, b);
}

// O(M⁴) oracle: enumerate the full index box and test the constraint.
template <typename M4>
Complex lambda4_reference_scan(M4&& mult, const SlotArray& s1, const SlotArray& s2,
                               const SlotArray& s3, const SlotArray& s4) {
    Complex acc{0.0, 0.0};
    for (int n1 = -s1.band(); n1 <= s1.band(); ++n1)
        for (int n2 = -s2.band(); n2 <= s2.band(); ++n2)
            for (int n3 = -s3.band(); n3 <= s3.band(); ++n3)
                for (int n4 = -s4.band(); n4 <= s4.band(); ++n4) {
                    if (n1 + n2 + n3 + n4 != 0) continue;
                    acc += mult(n1, n2, n3, n4) * s1(n1) * s2(n2) * s3(n3) * s4(n4);
                }
    return acc;
}

template <typename M4>
Complex lambda4_reference_scan(M4&& mult, const SpectralField& u) {
    SlotArray a = u_slot(u), b = ubar_slot(u);
    return lambda4_reference_scan(mult, a, b, a, b);
}

// O(M⁵) oracle over Γ₆, gated to tiny bands.
template <typename M6>
Complex lambda6_reference_scan(M6&& mult, const SpectralField& u, int max_band = 6) {
    const int M = u.band();
    if (M > max_band)
        throw InvalidArgument("lambda6_reference_scan is an oracle gated to band ≤ " +
                              std::to_string(max_band));
    SlotArray a = u_slot(u), b = ubar_slot(u);
    Complex acc{0.0, 0.0};
    for (int n1 = -M; n1 <= M; ++n1)
        for (int n2 = -M; n2 <= M; ++n2)
            for (int n3 = -M; n3 <= M; ++n3)
                for (int n4 = -M; n4 <= M; ++n4)
                    for (int n5 = -M; n5 <= M; ++n5) {
                        const int n6 = -(n1 + n2 + n3 + n4 + n5);
                        if (n6 < -M || n6 > M) continue;
                        acc += mult(n1, n2, n3, n4, n5, n6) * a(n1) * b(n2) * a(n3) *
                               b(n4) * a(n5) * b(n6);
                    }
    return acc;
}

// Coefficients of a pointwise product of slot-viewed fields on [-out_band,
// out_band], evaluated on a zero-padded grid (alias-free by construction).
struct ProductFactor {
    const SpectralField* field;
    bool conjugate;
};

inline SpectralField product_coeffs(const std::vector<ProductFactor>& factors, int out_band) {
    int band_sum = 0;
    for (const auto& f : factors) band_sum += f.field->band();
    const std::size_t P = next_fast_size(static_cast<std::size_t>(band_sum + out_band + 1));

    std::vector<Complex> prod(P, Complex{1.0, 0.0});
    for (const auto& f : factors) {
        PhysicalSamples s = synthesize(*f.field, P);
        if (f.conjugate)
            for (std::size_t j = 0; j < P; ++j) prod[j] *= std::conj(s.values[j]);
        else
            for (std::size_t j = 0; j < P; ++j) prod[j] *= s.values[j];
    }
    PhysicalSamples ps;
    ps.values = std::move(prod);
    return analyze(ps, out_band);
}

// |u|² on [-out_band, out_band].
inline SpectralField abs2_coeffs(const SpectralField& u, int out_band) {
    return product_coeffs({{&u, false}, {&u, true}}, out_band);
}

}  // namespace cnls
