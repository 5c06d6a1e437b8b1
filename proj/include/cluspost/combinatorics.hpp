#pragma once

#include <vector>

#include "cluspost/errors.hpp"

namespace cluspost {

// log Gamma(x) for x > 0.
double log_gamma(double x);

// log k! for k >= 0.
double log_factorial(int k);

// Log-domain special numbers for cluster-count priors and counting checks:
// Stirling numbers of the second kind S(n,k), unsigned Stirling numbers of
// the first kind c(n,k), and Bell numbers B_n. Built once by log-sum-exp
// recurrences, then immutable and freely shared.
class LogNumberTable {
public:
    explicit LogNumberTable(int n_max);

    int n_max() const { return n_max_; }

    // log S(n,k): unordered k-partitions of n items. 1 <= k <= n <= n_max.
    double log_stirling2(int n, int k) const;

    // log c(n,k): sum over k-partitions of prod (|S_j| - 1)!.
    double log_stirling1(int n, int k) const;

    // log B_n = log sum_k S(n,k).
    double log_bell(int n) const;

private:
    void check_range(int n, int k) const;

    int n_max_;
    std::vector<std::vector<double>> stirling2_;  // [n][k], k = 0..n
    std::vector<std::vector<double>> stirling1_;
    std::vector<double> bell_;
};

}  // namespace cluspost
