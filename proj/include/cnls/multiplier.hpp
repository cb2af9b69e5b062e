// The frequency-smoothing multiplier θ, the operator D it generates, the
// correction multipliers Ψ (Hartree) and Ψ₂ (external potential), the exact
// resonance factorization on Γ₄, brute-force certification of the pointwise
// Ψ bound, and the Γ₆ resonance probe that exhibits why no such bound exists
// for the quintic hierarchy.
//
// Ψ here is the raw quotient: the real assembly constant multiplying it in
// the modified energy lives in DerivedConstants (see energy.hpp) so that
// certification stays convention-free.

#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "cnls/parallel.hpp"
#include "cnls/spectral.hpp"

namespace cnls {

struct SmoothingParams {
    double s;
    double threshold;  // the paper-facing N > 1

    SmoothingParams(double s_, double threshold_) : s(s_), threshold(threshold_) {
        if (!(s >= 1.0)) throw InvalidArgument("SmoothingParams: require s >= 1");
        if (!(threshold > 1.0)) throw InvalidArgument("SmoothingParams: require N > 1");
    }
};

// θ(n) = (|n|/N)^s for |n| ≥ N, else 1. Even, ≥ 1, nondecreasing in |n|;
// the branches agree at |n| = N.
inline double theta_abs(const SmoothingParams& p, double abs_n) {
    if (abs_n <= p.threshold) return 1.0;
    return std::pow(abs_n / p.threshold, p.s);
}

inline double theta(const SmoothingParams& p, std::int64_t n) {
    return theta_abs(p, static_cast<double>(n < 0 ? -n : n));
}

inline SpectralField apply_D(const SmoothingParams& p, const SpectralField& field) {
    SpectralField out(field.band());
    for (int n = -field.band(); n <= field.band(); ++n)
        out.c(n) = theta(p, n) * field.c(n);
    return out;
}

// Precomputed θ(n)² over [-extent, extent]; the hot loops index this instead
// of calling pow.
class ThetaSqTable {
public:
    ThetaSqTable(const SmoothingParams& p, int extent) : extent_(extent), values_(2 * extent + 1) {
        for (int n = -extent; n <= extent; ++n) {
            const double t = theta(p, n);
            values_[static_cast<std::size_t>(n + extent)] = t * t;
        }
    }

    double operator()(int n) const { return values_[static_cast<std::size_t>(n + extent_)]; }
    int extent() const noexcept { return extent_; }

private:
    int extent_;
    std::vector<double> values_;
};

// Real, even table of V̂(n); zero beyond its extent (V is the band-limited
// function the table defines).
class VhatTable {
public:
    VhatTable() = default;

    // V̂ ≡ value on |n| ≤ extent (extent-truncated delta for value = 1).
    static VhatTable constant(double value, int extent) {
        VhatTable t;
        t.extent_ = extent;
        t.values_.assign(2 * static_cast<std::size_t>(extent) + 1, value);
        t.validate();
        return t;
    }

    static VhatTable from_values(int extent, std::vector<double> values) {
        if (values.size() != 2 * static_cast<std::size_t>(extent) + 1)
            throw InvalidArgument("VhatTable: values length must be 2*extent+1");
        VhatTable t;
        t.extent_ = extent;
        t.values_ = std::move(values);
        t.validate();
        return t;
    }

    double operator()(std::int64_t n) const {
        const std::int64_t a = n < 0 ? -n : n;
        if (a > extent_) return 0.0;
        return values_[static_cast<std::size_t>(n + extent_)];
    }

    int extent() const noexcept { return extent_; }

    double max_abs() const {
        double m = 0.0;
        for (double v : values_) m = std::max(m, std::abs(v));
        return m;
    }

private:
    void validate() const {
        const double v0 = (*this)(0);
        if (!(v0 >= 0.0)) throw InvalidArgument("VhatTable: V̂(0) must be nonnegative");
        for (int n = 1; n <= extent_; ++n) {
            if ((*this)(n) != (*this)(-n))
                throw InvalidArgument("VhatTable: V̂ must be even");
            if (std::abs((*this)(n)) > v0 + 1e-15 * std::max(1.0, v0))
                throw InvalidArgument("VhatTable: require |V̂(n)| ≤ V̂(0)");
        }
    }

    int extent_ = 0;
    std::vector<double> values_{0.0};
};

// n₁²−n₂²+n₃²−n₄² on Γ₄, computed and cross-checked in exact integer
// arithmetic against the factored form 2(n₁+n₂)(n₁+n₄).
inline std::int64_t resonance_factor(const std::array<std::int64_t, 4>& q) {
    if (q[0] + q[1] + q[2] + q[3] != 0)
        throw InvalidArgument("resonance_factor: tuple not on Γ₄");
    const std::int64_t direct = q[0] * q[0] - q[1] * q[1] + q[2] * q[2] - q[3] * q[3];
    const std::int64_t factored = 2 * (q[0] + q[1]) * (q[0] + q[3]);
    if (direct != factored)
        throw std::logic_error("resonance factorization identity violated");
    return direct;
}

// Raw Ψ quotient: [θ₁²−θ₂²+θ₃²−θ₄²]·V̂(n₃+n₄) / (n₁²−n₂²+n₃²−n₄²) off the
// resonant set, 0 on it. Resonance is detected in exact integer arithmetic.
inline double psi_hartree(const SmoothingParams& p, const VhatTable& v_hat,
                          const std::array<std::int64_t, 4>& q) {
    const std::int64_t den = 2 * (q[0] + q[1]) * (q[0] + q[3]);
    if (den == 0) return 0.0;
    const double t1 = theta(p, q[0]);
    const double t2 = theta(p, q[1]);
    const double t3 = theta(p, q[2]);
    const double t4 = theta(p, q[3]);
    const double num = t1 * t1 - t2 * t2 + t3 * t3 - t4 * t4;
    return num * v_hat(q[2] + q[3]) / static_cast<double>(den);
}

inline double psi_potential(const SmoothingParams& p, const std::array<std::int64_t, 4>& q) {
    const std::int64_t den = 2 * (q[0] + q[1]) * (q[0] + q[3]);
    if (den == 0) return 0.0;
    const double t1 = theta(p, q[0]);
    const double t2 = theta(p, q[1]);
    const double t3 = theta(p, q[2]);
    const double t4 = theta(p, q[3]);
    return (t1 * t1 - t2 * t2 + t3 * t3 - t4 * t4) / static_cast<double>(den);
}

struct BoundReport {
    double sup_ratio = 0.0;
    std::array<std::int64_t, 4> witness{0, 0, 0, 0};
    std::uint64_t configs_checked = 0;
    int band = 0;
    double s = 0.0;
    double threshold = 0.0;
};

// Enumerates Γ₄ ∩ [-M, M]⁴ and certifies |Ψ| ≤ ratio · majorant with
// majorant = θ(N₁*)θ(N₂*)N₃*N₄* / (N₁*)², the N_j* being the dyadic blocks
// of the sorted |n_j|. A finite sup over the band certifies the pointwise
// bound there; ties resolve to the lexicographically smallest witness, so
// the report is independent of the worker count.
inline BoundReport certify_psi_bound(const SmoothingParams& p, const VhatTable& v_hat,
                                     int band, int max_band = 1024) {
    if (band < p.threshold)
        throw InvalidArgument("certify_psi_bound: require band M ≥ threshold N");
    if (band > max_band) {
        const double cost = static_cast<double>(band) * band * band;
        throw InvalidArgument(
            "certify_psi_bound: band " + std::to_string(band) + " exceeds limit " +
            std::to_string(max_band) + " (enumeration cost ~" + std::to_string(cost) +
            " tuples, O(M³))");
    }

    struct Best {
        double ratio = 0.0;
        std::array<std::int64_t, 4> witness{0, 0, 0, 0};
        std::uint64_t count = 0;
    };

    const int M = band;
    const std::size_t items = static_cast<std::size_t>(2 * M + 1);

    auto scan = [&](std::size_t begin, std::size_t end) {
        Best best;
        for (std::size_t i1 = begin; i1 < end; ++i1) {
            const std::int64_t n1 = static_cast<std::int64_t>(i1) - M;
            for (std::int64_t n2 = -M; n2 <= M; ++n2) {
                for (std::int64_t n3 = -M; n3 <= M; ++n3) {
                    const std::int64_t n4 = -(n1 + n2 + n3);
                    if (n4 < -M || n4 > M) continue;
                    ++best.count;
                    const std::array<std::int64_t, 4> q{n1, n2, n3, n4};
                    const double psi = psi_hartree(p, v_hat, q);
                    if (psi == 0.0) continue;

                    std::array<std::int64_t, 4> a{std::abs(n1), std::abs(n2),
                                                  std::abs(n3), std::abs(n4)};
                    std::sort(a.begin(), a.end(), std::greater<>());
                    const double b1 = dyadic_block_of(a[0]);
                    const double b2 = dyadic_block_of(a[1]);
                    const double b3 = dyadic_block_of(a[2]);
                    const double b4 = dyadic_block_of(a[3]);
                    const double majorant =
                        theta_abs(p, b1) * theta_abs(p, b2) * b3 * b4 / (b1 * b1);
                    const double ratio = std::abs(psi) / majorant;
                    if (ratio > best.ratio ||
                        (ratio == best.ratio && ratio > 0.0 && q < best.witness)) {
                        best.ratio = ratio;
                        best.witness = q;
                    }
                }
            }
        }
        return best;
    };

    Best total = chunked_reduce<Best>(
        items, Best{}, scan,
        [](Best acc, const Best& b) {
            acc.count += b.count;
            if (b.ratio > acc.ratio ||
                (b.ratio == acc.ratio && b.ratio > 0.0 && b.witness < acc.witness)) {
                acc.ratio = b.ratio;
                acc.witness = b.witness;
            }
            return acc;
        });

    BoundReport report;
    report.sup_ratio = total.ratio;
    report.witness = total.witness;
    report.configs_checked = total.count;
    report.band = band;
    report.s = p.s;
    report.threshold = p.threshold;
    return report;
}

enum class ResonanceClass {
    nonresonant,
    resonant_zero_numerator,
    resonant_nonzero_numerator,
};

inline const char* to_string(ResonanceClass c) {
    switch (c) {
        case ResonanceClass::nonresonant: return "nonresonant";
        case ResonanceClass::resonant_zero_numerator: return "resonant-zero-numerator";
        case ResonanceClass::resonant_nonzero_numerator: return "resonant-nonzero-numerator";
    }
    return "?";
}

struct ResonanceProbe {
    std::array<std::int64_t, 6> tuple{};
    std::int64_t denominator = 0;  // Σ (-1)^{j+1} n_j², exact
    double numerator = 0.0;        // Σ (-1)^{j+1} θ(n_j)²
    ResonanceClass classification = ResonanceClass::nonresonant;
};

// Evaluates the scaled 6-tuple scale·base at threshold N = 1 (so θ(n) = |n|^s
// for n ≠ 0). The stored tuple carries the conjugate-slot signs, so it sums
// to zero as written while denominator and numerator take alternating signs.
inline ResonanceProbe probe_gamma6(const std::array<std::int64_t, 6>& base,
                                   std::int64_t scale, double s) {
    if (scale <= 0) throw InvalidArgument("probe_gamma6: scale must be positive");
    std::int64_t sum = 0;
    for (auto n : base) sum += n;
    if (sum != 0)
        throw InvalidArgument("probe_gamma6: base tuple is not on the zero-sum hyperplane");

    ResonanceProbe probe;
    std::int64_t den = 0;
    double num = 0.0;
    double num_scale = 0.0;
    for (int j = 0; j < 6; ++j) {
        const std::int64_t n = base[static_cast<std::size_t>(j)] * scale;
        probe.tuple[static_cast<std::size_t>(j)] = n;
        const std::int64_t sgn = (j % 2 == 0) ? 1 : -1;
        den += sgn * n * n;
        const double a = static_cast<double>(n < 0 ? -n : n);
        const double th = (a <= 1.0) ? 1.0 : std::pow(a, s);
        num += static_cast<double>(sgn) * th * th;
        num_scale += th * th;
    }
    probe.denominator = den;
    probe.numerator = num;
    if (den != 0) {
        probe.classification = ResonanceClass::nonresonant;
    } else if (std::abs(num) <= 1e-9 * std::max(1.0, num_scale)) {
        probe.classification = ResonanceClass::resonant_zero_numerator;
    } else {
        probe.classification = ResonanceClass::resonant_nonzero_numerator;
    }
    return probe;
}

}  // namespace cnls
