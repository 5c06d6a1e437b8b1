#include "cluspost/likelihood.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include "cluspost/combinatorics.hpp"
#include "cluspost/priors.hpp"

namespace cluspost {

void Dataset::validate() const {
    if (n < 1 || n > kMaxItems) throw DataError("Dataset: n out of range [1, " + std::to_string(kMaxItems) + "]");
    if (D < 1) throw DataError("Dataset: need at least one feature");
    if (values.size() != static_cast<std::size_t>(n) * D) throw DataError("Dataset: value matrix size mismatch");
    if (kind == DataKind::Binary) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i] != 0.0 && values[i] != 1.0)
                throw DataError("Dataset: binary data must contain only 0/1, found " + std::to_string(values[i]) +
                                " at item " + std::to_string(i / D + 1) + ", feature " + std::to_string(i % D + 1));
        }
    }
}

double beta_binomial_log_ml(int c, int s, const BetaBinomialHyper& h) {
    if (c < 0 || s < 0 || s > c) throw DomainError("beta_binomial_log_ml: need 0 <= s <= c");
    if (!(h.alpha > 0.0) || !(h.beta > 0.0)) throw DomainError("beta_binomial_log_ml: hyperparameters must be positive");
    if (c == 0) return 0.0;
    return log_gamma(h.alpha + s) + log_gamma(h.beta + c - s) + log_gamma(h.alpha + h.beta) -
           log_gamma(h.alpha + h.beta + c) - log_gamma(h.alpha) - log_gamma(h.beta);
}

double gamma_normal_log_ml(int c, double s, double q, const GammaNormalHyper& h) {
    if (c < 0) throw DomainError("gamma_normal_log_ml: cluster size must be nonnegative");
    if (!(h.alpha > 0.0) || !(h.beta > 0.0) || !(h.tau > 0.0))
        throw DomainError("gamma_normal_log_ml: alpha, beta, tau must be positive");
    if (c == 0) return 0.0;

    double centered = q - s * s / c;
    if (centered < -1e-6 * (std::abs(q) + 1.0))
        throw DomainError("gamma_normal_log_ml: q < s^2/c violates Cauchy-Schwarz");
    if (centered < 0.0) centered = 0.0;

    const double alpha_c = h.alpha + 0.5 * c;
    const double tau_c = h.tau + c;
    const double dev = s - c * h.mu;
    const double beta_c = h.beta + 0.5 * centered + h.tau * dev * dev / (2.0 * c * tau_c);
    if (!(beta_c > 0.0)) throw std::logic_error("gamma_normal_log_ml: nonpositive beta_c from valid input");

    constexpr double kLog2Pi = 1.8378770664093454836;
    return log_gamma(alpha_c) - log_gamma(h.alpha) + h.alpha * std::log(h.beta) - alpha_c * std::log(beta_c) +
           0.5 * (std::log(h.tau) - std::log(tau_c)) - 0.5 * c * kLog2Pi;
}

namespace {

// Binary pass: one feature at a time, counting ones by lowest-set-bit
// recursion and scoring through a (c, s) lookup table shared by features.
void add_binary_feature_terms(SubsetTable& f, const Dataset& data, const BetaBinomialHyper& h) {
    const int n = data.n;
    const std::size_t count = std::size_t{1} << n;

    std::vector<std::vector<double>> ml(n + 1);
    for (int c = 0; c <= n; ++c) {
        ml[c].resize(c + 1);
        for (int s = 0; s <= c; ++s) ml[c][s] = beta_binomial_log_ml(c, s, h);
    }

    std::vector<std::uint8_t> ones(count);
    for (int d = 0; d < data.D; ++d) {
        ones[0] = 0;
        for (std::size_t x = 1; x < count; ++x) {
            const int i = low_bit_index(static_cast<Mask>(x));
            ones[x] = static_cast<std::uint8_t>(ones[x ^ (std::size_t{1} << i)] + (data.at(i, d) != 0.0 ? 1 : 0));
        }
        for (std::size_t x = 1; x < count; ++x) {
            f[static_cast<Mask>(x)] += ml[popcount(static_cast<Mask>(x))][ones[x]];
        }
    }
}

// Continuous pass: Welford-style running mean and centered sum of squares
// over the lattice, so q - s^2/c never suffers cancellation.
void add_continuous_feature_terms(SubsetTable& f, const Dataset& data, const GammaNormalHyper& h) {
    const int n = data.n;
    const std::size_t count = std::size_t{1} << n;
    constexpr double kLog2Pi = 1.8378770664093454836;

    // Everything that depends only on cluster size.
    std::vector<double> size_part(n + 1, 0.0);
    for (int c = 1; c <= n; ++c) {
        size_part[c] = log_gamma(h.alpha + 0.5 * c) - log_gamma(h.alpha) + h.alpha * std::log(h.beta) +
                       0.5 * (std::log(h.tau) - std::log(h.tau + c)) - 0.5 * c * kLog2Pi;
    }

    std::vector<double> mean(count, 0.0);
    std::vector<double> m2(count, 0.0);
    for (int d = 0; d < data.D; ++d) {
        for (std::size_t x = 1; x < count; ++x) {
            const int i = low_bit_index(static_cast<Mask>(x));
            const std::size_t prev = x ^ (std::size_t{1} << i);
            const int c = popcount(static_cast<Mask>(x));
            const double y = data.at(i, d);
            const double delta = y - mean[prev];
            mean[x] = mean[prev] + delta / c;
            m2[x] = m2[prev] + delta * (y - mean[x]);
        }
        for (std::size_t x = 1; x < count; ++x) {
            const int c = popcount(static_cast<Mask>(x));
            const double dev = mean[x] - h.mu;
            const double beta_c = h.beta + 0.5 * m2[x] + 0.5 * h.tau * c * dev * dev / (h.tau + c);
            f[static_cast<Mask>(x)] += size_part[c] - (h.alpha + 0.5 * c) * std::log(beta_c);
        }
    }
}

}  // namespace

SubsetTable build_f_table(const Dataset& data, const ModelSpec& model, const PriorSpec& prior) {
    data.validate();
    prior.validate();
    if (model.kind() != data.kind) throw DataError("build_f_table: model family does not match the dataset kind");

    SubsetTable f(data.n);  // empty set stays at exact zero
    const std::size_t count = std::size_t{1} << data.n;

    std::vector<double> prior_part(data.n + 1, 0.0);
    for (int c = 1; c <= data.n; ++c) prior_part[c] = log_f_prior(c, prior);
    for (std::size_t x = 1; x < count; ++x) f[static_cast<Mask>(x)] = prior_part[popcount(static_cast<Mask>(x))];

    if (data.kind == DataKind::Binary) {
        add_binary_feature_terms(f, data, std::get<BetaBinomialHyper>(model.hyper));
    } else {
        add_continuous_feature_terms(f, data, std::get<GammaNormalHyper>(model.hyper));
    }
    return f;
}

}  // namespace cluspost
