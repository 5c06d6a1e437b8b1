#include "cluspost/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "cluspost/errors.hpp"

namespace cluspost {

double Rng::uniform() {
    // 53 random bits into [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::normal(double mean, double sd) {
    if (have_spare_) {
        have_spare_ = false;
        return mean + sd * spare_;
    }
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return mean + sd * r * std::cos(2.0 * M_PI * u2);
}

double Rng::gamma(double shape, double rate) {
    // Marsaglia-Tsang; the shape < 1 case boosts via the shape + 1 draw.
    if (shape < 1.0) {
        const double u = uniform();
        return gamma(shape + 1.0, rate) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
        double x = normal(0.0, 1.0);
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
    }
}

double Rng::beta(double a, double b) {
    const double x = gamma(a, 1.0);
    const double y = gamma(b, 1.0);
    return x / (x + y);
}

int Rng::uniform_int(int bound) {
    // rejection keeps the draw unbiased
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % bound;
    std::uint64_t v = gen_();
    while (v >= limit) v = gen_();
    return static_cast<int>(v % bound);
}

namespace {

std::vector<int> random_assignment(Rng& rng, int n, int k) {
    // uniform over assignments, rejected until every cluster is nonempty
    std::vector<int> a(n);
    while (true) {
        Mask seen = 0;
        for (int i = 0; i < n; ++i) {
            a[i] = rng.uniform_int(k);
            seen |= Mask{1} << a[i];
        }
        if (popcount(seen) == k) return a;
    }
}

std::vector<Mask> clusters_from_assignment(const std::vector<int>& a, int k) {
    std::vector<Mask> clusters(k, 0);
    for (int i = 0; i < static_cast<int>(a.size()); ++i) clusters[a[i]] |= Mask{1} << i;
    // canonical order: by smallest member
    std::sort(clusters.begin(), clusters.end(), [](Mask x, Mask y) { return low_bit(x) < low_bit(y); });
    return clusters;
}

SyntheticData generate_continuous(Rng& rng, int n, int k, int D, const std::vector<int>& assignment) {
    const GammaNormalHyper h{};  // alpha = beta = tau = 1, mu = 0
    SyntheticData out;
    out.data.n = n;
    out.data.D = D;
    out.data.kind = DataKind::Continuous;
    out.data.values.resize(static_cast<std::size_t>(n) * D);

    // Cluster precision r ~ Gamma(alpha, beta), mean m ~ N(mu, 1/(tau r)),
    // then y ~ N(m, 1/r).
    std::vector<double> means(static_cast<std::size_t>(k) * D);
    std::vector<double> sds(static_cast<std::size_t>(k) * D);
    for (int j = 0; j < k; ++j) {
        for (int d = 0; d < D; ++d) {
            const double r = rng.gamma(h.alpha, h.beta);
            const double m = rng.normal(h.mu, 1.0 / std::sqrt(h.tau * r));
            means[static_cast<std::size_t>(j) * D + d] = m;
            sds[static_cast<std::size_t>(j) * D + d] = 1.0 / std::sqrt(r);
        }
    }
    for (int i = 0; i < n; ++i) {
        const int j = assignment[i];
        for (int d = 0; d < D; ++d) {
            out.data.values[static_cast<std::size_t>(i) * D + d] =
                rng.normal(means[static_cast<std::size_t>(j) * D + d], sds[static_cast<std::size_t>(j) * D + d]);
        }
    }
    out.generating_clusters = clusters_from_assignment(assignment, k);
    return out;
}

SyntheticData generate_binary(Rng& rng, int n, int k, int D, const std::vector<int>& assignment) {
    const BetaBinomialHyper h{};  // alpha = beta = 1
    SyntheticData out;
    out.data.n = n;
    out.data.D = D;
    out.data.kind = DataKind::Binary;
    out.data.values.resize(static_cast<std::size_t>(n) * D);

    std::vector<double> means(static_cast<std::size_t>(k) * D);
    for (int j = 0; j < k; ++j)
        for (int d = 0; d < D; ++d) means[static_cast<std::size_t>(j) * D + d] = rng.beta(h.alpha, h.beta);

    for (int i = 0; i < n; ++i) {
        const int j = assignment[i];
        for (int d = 0; d < D; ++d) {
            const double m = means[static_cast<std::size_t>(j) * D + d];
            out.data.values[static_cast<std::size_t>(i) * D + d] = (rng.uniform() < m) ? 1.0 : 0.0;
        }
    }
    out.generating_clusters = clusters_from_assignment(assignment, k);
    return out;
}

}  // namespace

SyntheticData generate_synthetic(const SyntheticSpec& spec) {
    Rng rng(spec.seed);
    if (spec.experiment == "normal-18") {
        // three clusters of six consecutive items
        std::vector<int> assignment(18);
        for (int i = 0; i < 18; ++i) assignment[i] = i / 6;
        return generate_continuous(rng, 18, 3, 2, assignment);
    }
    if (spec.experiment == "binary-20") {
        return generate_binary(rng, 20, 5, 30, random_assignment(rng, 20, 5));
    }
    if (spec.experiment == "custom") {
        if (spec.n < 1 || spec.n > kMaxItems || spec.k < 1 || spec.k > spec.n || spec.D < 1)
            throw DataError("generate_synthetic: custom spec needs 1 <= k <= n <= 26 and D >= 1");
        const auto assignment = random_assignment(rng, spec.n, spec.k);
        return (spec.kind == DataKind::Binary) ? generate_binary(rng, spec.n, spec.k, spec.D, assignment)
                                               : generate_continuous(rng, spec.n, spec.k, spec.D, assignment);
    }
    throw DataError("generate_synthetic: unknown experiment '" + spec.experiment +
                    "' (expected normal-18, binary-20, or custom)");
}

}  // namespace cluspost
