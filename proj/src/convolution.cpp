#include "cluspost/convolution.hpp"

#include <cstdint>

namespace cluspost {

SubsetTable direct_convolve(const SubsetTable& f, const SubsetTable& g) {
    require_same_ground_set(f, g, "direct_convolve");
    const int n = f.n();
    SubsetTable result(n);
    const std::int64_t count = std::int64_t{1} << n;

#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t xi = 0; xi < count; ++xi) {
        const Mask x = static_cast<Mask>(xi);
        LogAccumulator acc;
        for_each_submask(x, [&](Mask a) { acc.add(f[a] + g[x ^ a]); });
        result[x] = acc.value();
    }
    return result;
}

MaxConvolution max_convolve(const SubsetTable& f, const SubsetTable& g, bool record_argmax) {
    require_same_ground_set(f, g, "max_convolve");
    const int n = f.n();
    MaxConvolution out{SubsetTable(n), {}};
    if (record_argmax) out.argmax.assign(std::size_t{1} << n, 0u);
    const std::int64_t count = std::int64_t{1} << n;

#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t xi = 0; xi < count; ++xi) {
        const Mask x = static_cast<Mask>(xi);
        double best = kLogZero;
        Mask best_b = 0;
        // The argmax table records the submask assigned to g. Ascending
        // enumeration + strict improvement keeps the smallest such submask
        // on ties.
        for_each_submask(x, [&](Mask b) {
            const double term = f[x ^ b] + g[b];
            if (term > best) {
                best = term;
                best_b = b;
            }
        });
        out.values[x] = best;
        if (record_argmax) out.argmax[x] = best_b;
    }
    return out;
}

std::vector<double> iterate_convolutions(const SubsetTable& f, int k_max,
                                         const ConvolutionConsumer& consumer,
                                         const ConvolveOptions& options) {
    if (k_max < 1 || k_max > f.n()) throw DomainError("iterate_convolutions: k_max out of range [1, n]");
    const Mask universe = f.universe();

    std::vector<double> at_universe;
    at_universe.reserve(k_max);

    SubsetTable current = f;  // f^(1)
    at_universe.push_back(current[universe]);
    if (consumer) consumer(1, current);

    for (int k = 2; k <= k_max; ++k) {
        SubsetTable next = (options.engine == Engine::FastExact)
                               ? fast_convolve_exact(f, current, options.scale_bits)
                               : direct_convolve(f, current);
        current = std::move(next);
        at_universe.push_back(current[universe]);
        if (consumer) consumer(k, current);
    }
    return at_universe;
}

}  // namespace cluspost
