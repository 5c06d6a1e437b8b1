#pragma once

#include <string>

#include "cluspost/combinatorics.hpp"
#include "cluspost/logspace.hpp"

namespace cluspost {

enum class PriorVariant { UniformOnK, UniformOnPartitions, DirichletProcess };

// Partition prior expressed as an (f_prior, w_k) pair. The uniform variants
// take f_prior == 1; the Dirichlet-process prior takes f_prior(S) =
// Gamma(|S|) with cardinality weights involving theta.
struct PriorSpec {
    PriorVariant variant = PriorVariant::UniformOnK;
    double theta = 1.0;  // Dirichlet process only
    // When set, the DP weights drop the theta^k factor. That form appears in
    // some published displays but does not normalize for theta != 1; the two
    // coincide at theta = 1.
    bool dp_drop_theta_power = false;

    void validate() const;
};

// log f_prior for a cluster of the given size (>= 1).
double log_f_prior(int cluster_size, const PriorSpec& prior);

// log w_k for 1 <= k <= n.
double log_weight(int k, int n, const PriorSpec& prior, const LogNumberTable& tables);

// Closed-form prior marginal p(k) for k = 1..n, normalized over k.
std::vector<double> prior_marginal_k(int n, const PriorSpec& prior, const LogNumberTable& tables);

std::string to_string(PriorVariant v);

}  // namespace cluspost
