#include "cluspost/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cluspost/errors.hpp"

namespace cluspost::oracle {

namespace {

// Compensated accumulation keeps the linear-domain sums exact enough for
// 1e-10 comparisons even over tens of millions of partitions.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

void enumerate_impl(int n, int item, int used, std::vector<int>& assignment,
                    const std::function<void(std::span<const int>)>& visitor, std::uint64_t& count) {
    if (item == n) {
        ++count;
        visitor(std::span<const int>(assignment.data(), assignment.size()));
        return;
    }
    for (int cluster = 0; cluster <= used; ++cluster) {
        assignment[item] = cluster;
        enumerate_impl(n, item + 1, used + (cluster == used ? 1 : 0), assignment, visitor, count);
    }
}

}  // namespace

std::uint64_t enumerate(int n, const std::function<void(std::span<const int>)>& visitor) {
    if (n < 1) throw DomainError("oracle::enumerate: need at least one item");
    if (n > kMaxEnumerationItems)
        throw DomainError("oracle::enumerate: refusing n=" + std::to_string(n) + " > " +
                          std::to_string(kMaxEnumerationItems) +
                          "; B_14 ~ 1.9e8 partitions crosses the time budget of the reference path");
    std::vector<int> assignment(n, 0);
    std::uint64_t count = 0;
    assignment[0] = 0;
    enumerate_impl(n, 1, 1, assignment, visitor, count);
    return count;
}

BruteResult brute_posteriors(const SubsetTable& f, const PriorSpec& prior, const LogNumberTable& tables) {
    const int n = f.n();
    if (n < 1) throw DomainError("oracle::brute_posteriors: need at least one item");
    prior.validate();

    std::vector<double> logw(n + 1);
    std::vector<double> log_kfact(n + 1);
    for (int k = 1; k <= n; ++k) {
        logw[k] = log_weight(k, n, prior, tables);
        log_kfact[k] = log_factorial(k);
    }

    std::vector<Mask> clusters(n);
    const auto partition_log_weight = [&](std::span<const int> a) {
        int k = 0;
        for (int i = 0; i < n; ++i) {
            const int c = a[i];
            if (c == k) clusters[k++] = 0;
            clusters[c] |= Mask{1} << i;
        }
        double lw = log_kfact[k] + logw[k];
        for (int j = 0; j < k; ++j) lw += f[clusters[j]];
        return std::pair<double, int>(lw, k);
    };

    // Pass 1: reference scale and the per-k maximizers (first in enumeration
    // order, i.e. lexicographically smallest growth string).
    double ref = kLogZero;
    std::vector<double> best_by_k(n + 1, kLogZero);
    std::vector<std::vector<int>> best_assignment_by_k(n + 1);
    enumerate(n, [&](std::span<const int> a) {
        const auto [lw, k] = partition_log_weight(a);
        if (lw > ref) ref = lw;
        if (lw > best_by_k[k]) {
            best_by_k[k] = lw;
            best_assignment_by_k[k].assign(a.begin(), a.end());
        }
    });
    if (is_log_zero(ref))
        throw EvidenceZeroError("oracle::brute_posteriors: zero evidence over all partitions");

    // Pass 2: linear accumulation relative to the reference scale.
    KahanSum evidence;
    std::vector<KahanSum> by_k(n + 1);
    std::vector<KahanSum> pair_mass(static_cast<std::size_t>(n) * n);
    enumerate(n, [&](std::span<const int> a) {
        const auto [lw, k] = partition_log_weight(a);
        if (is_log_zero(lw)) return;
        const double w = std::exp(lw - ref);
        evidence.add(w);
        by_k[k].add(w);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (a[i] == a[j]) pair_mass[static_cast<std::size_t>(i) * n + j].add(w);
            }
        }
    });

    BruteResult out;
    out.summary.n = n;
    out.summary.log_evidence = ref + std::log(evidence.sum);
    out.summary.posterior_k.resize(n);
    for (int k = 1; k <= n; ++k) out.summary.posterior_k[k - 1] = by_k[k].sum / evidence.sum;
    out.summary.prior_k = prior_marginal_k(n, prior, tables);

    out.cooc.n = n;
    out.cooc.entries.assign(static_cast<std::size_t>(n) * n, 1.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double p = pair_mass[static_cast<std::size_t>(i) * n + j].sum / evidence.sum;
            out.cooc.at(i, j) = p;
            out.cooc.at(j, i) = p;
        }
    }

    // Growth strings index clusters by first appearance, so the cluster
    // lists are already sorted by smallest member.
    out.modes_by_k.resize(n);
    for (int k = 1; k <= n; ++k) {
        Partition& p = out.modes_by_k[k - 1];
        p.k = k;
        p.log_posterior = is_log_zero(best_by_k[k]) ? kLogZero : best_by_k[k] - out.summary.log_evidence;
        if (best_assignment_by_k[k].empty()) continue;
        p.clusters.assign(k, 0);
        for (int i = 0; i < n; ++i) p.clusters[best_assignment_by_k[k][i]] |= Mask{1} << i;
    }
    out.mode = out.modes_by_k[global_mode_index(out.modes_by_k)];
    return out;
}

double partition_log_weight(const std::vector<Mask>& clusters, const SubsetTable& f, const PriorSpec& prior,
                            const LogNumberTable& tables) {
    const int k = static_cast<int>(clusters.size());
    if (k < 1) throw DomainError("partition_log_weight: empty partition");
    Mask seen = 0;
    double lw = log_factorial(k) + log_weight(k, f.n(), prior, tables);
    for (Mask cluster : clusters) {
        if (cluster == 0 || (seen & cluster) != 0)
            throw DomainError("partition_log_weight: clusters must be disjoint and nonempty");
        seen |= cluster;
        lw += f[cluster];
    }
    if (seen != f.universe()) throw DomainError("partition_log_weight: clusters must cover the ground set");
    return lw;
}

BruteResult brute_posteriors(const Dataset& data, const ModelSpec& model, const PriorSpec& prior,
                             const LogNumberTable& tables) {
    if (data.n > kMaxEnumerationItems)
        throw DomainError("oracle::brute_posteriors: n=" + std::to_string(data.n) + " exceeds the enumeration cap " +
                          std::to_string(kMaxEnumerationItems));
    return brute_posteriors(build_f_table(data, model, prior), prior, tables);
}

}  // namespace cluspost::oracle
