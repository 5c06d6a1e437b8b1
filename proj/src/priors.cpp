#include "cluspost/priors.hpp"

#include <cmath>
#include <vector>

#include "cluspost/errors.hpp"

namespace cluspost {

void PriorSpec::validate() const {
    if (variant == PriorVariant::DirichletProcess && !(theta > 0.0))
        throw DomainError("PriorSpec: theta must be positive for the Dirichlet-process prior");
}

double log_f_prior(int cluster_size, const PriorSpec& prior) {
    if (cluster_size < 1) throw DomainError("log_f_prior: cluster size must be >= 1");
    if (prior.variant == PriorVariant::DirichletProcess)
        return log_gamma(static_cast<double>(cluster_size));  // (|S|-1)!
    return 0.0;
}

double log_weight(int k, int n, const PriorSpec& prior, const LogNumberTable& tables) {
    if (k < 1 || k > n) throw DomainError("log_weight: k out of range [1, n]");
    switch (prior.variant) {
        case PriorVariant::UniformOnPartitions:
            // w_k = 1 / (k! B_n)
            return -log_factorial(k) - tables.log_bell(n);
        case PriorVariant::UniformOnK:
            // w_k = 1 / (k! n S(n,k)), so that p(k) = 1/n
            return -log_factorial(k) - std::log(static_cast<double>(n)) - tables.log_stirling2(n, k);
        case PriorVariant::DirichletProcess: {
            // w_k = theta^k Gamma(theta) / (Gamma(theta+n) k!); the theta^k
            // factor makes the prior normalize for every theta.
            double w = log_gamma(prior.theta) - log_gamma(prior.theta + n) - log_factorial(k);
            if (!prior.dp_drop_theta_power) w += k * std::log(prior.theta);
            return w;
        }
    }
    throw DomainError("log_weight: unknown prior variant");
}

std::vector<double> prior_marginal_k(int n, const PriorSpec& prior, const LogNumberTable& tables) {
    // p(k) proportional to w_k * (number of ordered k-partitions weighted by
    // f_prior) = w_k k! S(n,k) for flat f_prior, and w_k k! c(n,k) for the
    // Dirichlet-process cluster factor Gamma(|S|).
    std::vector<double> logs(n);
    for (int k = 1; k <= n; ++k) {
        const double counting = (prior.variant == PriorVariant::DirichletProcess)
                                    ? tables.log_stirling1(n, k)
                                    : tables.log_stirling2(n, k);
        logs[k - 1] = log_weight(k, n, prior, tables) + log_factorial(k) + counting;
    }
    const double total = log_sum(logs);
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k) out[k] = std::exp(logs[k] - total);
    return out;
}

std::string to_string(PriorVariant v) {
    switch (v) {
        case PriorVariant::UniformOnK: return "uniform-k";
        case PriorVariant::UniformOnPartitions: return "uniform-partitions";
        case PriorVariant::DirichletProcess: return "dp";
    }
    return "?";
}

}  // namespace cluspost
