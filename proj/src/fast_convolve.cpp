#include <utility>
#include <vector>

#include "cluspost/convolution.hpp"
#include "cluspost/fixed_point.hpp"

namespace cluspost {

namespace {

// f with f(X) - c*|X|. Multiplying every cluster term by e^{-c} per item
// compresses the dynamic range; a k-partition's product changes by the
// constant e^{-c n}, which the caller adds back per output mask.
SubsetTable rescale_per_item(const SubsetTable& t, double c) {
    SubsetTable out(t.n());
    for (Mask x = 0; x <= t.universe(); ++x) {
        if (t[x] != kLogZero) out[x] = t[x] - c * popcount(x);
    }
    return out;
}

double max_singleton(const SubsetTable& t) {
    double c = kLogZero;
    for (int i = 0; i < t.n(); ++i) c = std::max(c, t[Mask{1} << i]);
    return c == kLogZero ? 0.0 : c;
}

// Splits a fixed-point table by subset cardinality and zeta-transforms each
// rank slice.
std::vector<std::vector<mpz_class>> ranked_zeta(const FixedPointTable& t) {
    const int n = t.n;
    const std::size_t count = std::size_t{1} << n;
    std::vector<std::vector<mpz_class>> ranks(n + 1);
    for (int r = 0; r <= n; ++r) ranks[r].assign(count, mpz_class(0));
    for (std::size_t x = 0; x < count; ++x) {
        if (t.entries[x] != 0) ranks[popcount(static_cast<Mask>(x))][x] = t.entries[x];
    }
    for (int r = 0; r <= n; ++r) {
        for (int d = 0; d < n; ++d) {
            const std::size_t bit = std::size_t{1} << d;
            for (std::size_t s = 0; s < count; ++s) {
                if (s & bit) ranks[r][s] += ranks[r][s ^ bit];
            }
        }
    }
    return ranks;
}

}  // namespace

SubsetTable fast_convolve_exact(const SubsetTable& f, const SubsetTable& g, long scale_bits) {
    require_same_ground_set(f, g, "fast_convolve_exact");
    if (scale_bits < 1) throw DomainError("fast_convolve_exact: scale_bits must be >= 1");
    const int n = f.n();
    const std::size_t count = std::size_t{1} << n;

    const double c = max_singleton(f);
    const FixedPointTable ff = to_fixed_point(rescale_per_item(f, c), scale_bits);
    const FixedPointTable gf = to_fixed_point(rescale_per_item(g, c), scale_bits);

    SubsetTable result(n);

    // Output at X carries the product of two 2^scale_bits scales, both
    // shifts, and the undone per-item rescaling.
    const double log_scale = 2.0 * static_cast<double>(scale_bits) * 0.6931471805599453094;
    const double base = ff.shift + gf.shift - log_scale;

    const auto fhat = ranked_zeta(ff);
    const auto ghat = ranked_zeta(gf);

    // Pointwise rank convolution, one output rank at a time, then invert.
    std::vector<mpz_class> acc(count);
    mpz_class term;
    for (int j = 0; j <= n; ++j) {
        for (std::size_t x = 0; x < count; ++x) acc[x] = 0;
        for (int r = 0; r <= j; ++r) {
            const auto& fr = fhat[r];
            const auto& gr = ghat[j - r];
            for (std::size_t x = 0; x < count; ++x) {
                if (fr[x] != 0 && gr[x] != 0) {
                    mpz_mul(term.get_mpz_t(), fr[x].get_mpz_t(), gr[x].get_mpz_t());
                    acc[x] += term;
                }
            }
        }
        // Moebius inversion; reading off rank |X| = j recovers the honest
        // disjoint-split convolution at those masks.
        for (int d = 0; d < n; ++d) {
            const std::size_t bit = std::size_t{1} << d;
            for (std::size_t s = 0; s < count; ++s) {
                if (s & bit) acc[s] -= acc[s ^ bit];
            }
        }
        for (std::size_t x = 0; x < count; ++x) {
            if (popcount(static_cast<Mask>(x)) == j && acc[x] != 0) {
                result[x] = log_mpz(acc[x]) + base + c * j;
            }
        }
    }
    return result;
}

}  // namespace cluspost
