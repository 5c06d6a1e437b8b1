#pragma once

#include <variant>
#include <vector>

#include "cluspost/subset_table.hpp"

namespace cluspost {

enum class DataKind { Binary, Continuous };

// Row-major n x D feature matrix. Items are labeled 1..n in user-facing I/O.
struct Dataset {
    int n = 0;
    int D = 0;
    DataKind kind = DataKind::Binary;
    std::vector<double> values;  // n * D, no missing entries

    double at(int item, int feature) const { return values[static_cast<std::size_t>(item) * D + feature]; }

    void validate() const;
};

struct BetaBinomialHyper {
    double alpha = 1.0;
    double beta = 1.0;
};

struct GammaNormalHyper {
    double alpha = 1.0;
    double beta = 1.0;
    double mu = 0.0;
    double tau = 1.0;
};

// Likelihood family plus hyperparameters; must match the dataset kind.
struct ModelSpec {
    std::variant<BetaBinomialHyper, GammaNormalHyper> hyper = BetaBinomialHyper{};

    DataKind kind() const {
        return std::holds_alternative<BetaBinomialHyper>(hyper) ? DataKind::Binary : DataKind::Continuous;
    }
};

// Per-cluster, per-feature sufficient statistics: item count c, value sum s,
// and (continuous only) squared-value sum q. Additive over disjoint clusters.
struct ClusterStats {
    int c = 0;
    double s = 0.0;
    double q = 0.0;
};

// log marginal likelihood of one binary feature observed in a cluster with
// c items and s ones:
//   Gamma(a+s) Gamma(b+c-s) Gamma(a+b) / (Gamma(a+b+c) Gamma(a) Gamma(b)).
double beta_binomial_log_ml(int c, int s, const BetaBinomialHyper& h);

// log marginal likelihood of one continuous feature observed in a cluster
// with stats (c, s, q), under the normal model with gamma-normal prior.
double gamma_normal_log_ml(int c, double s, double q, const GammaNormalHyper& h);

struct PriorSpec;  // priors.hpp

// Builds the full model table: f(X) = log f_prior(X) + sum_d log ml_d(X)
// for nonempty X, and exact zero at the empty set. Sufficient statistics are
// accumulated by lowest-set-bit recursion over the subset lattice, one
// feature at a time, for O(D 2^n) total work and O(2^n) scratch.
SubsetTable build_f_table(const Dataset& data, const ModelSpec& model, const PriorSpec& prior);

}  // namespace cluspost
