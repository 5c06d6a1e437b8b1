#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "cluspost/engine.hpp"
#include "cluspost/likelihood.hpp"

namespace cluspost::oracle {

// Hard enumeration cap: B_13 is ~2.8e7 partitions; B_14 (~1.9e8) crosses the
// time budget for a reference path and is refused.
inline constexpr int kMaxEnumerationItems = 13;

// Visits every unordered partition of {0..n-1} exactly once, in lexicographic
// restricted-growth-string order. The visitor receives the assignment array
// a_0..a_{n-1} with a_0 = 0 and a_{i+1} <= 1 + max(a_0..a_i). Returns the
// number of partitions visited, i.e. the Bell number B_n.
std::uint64_t enumerate(int n, const std::function<void(std::span<const int>)>& visitor);

struct BruteResult {
    PosteriorSummary summary;
    CooccurrenceMatrix cooc;
    Partition mode;                     // global mode, canonical form
    std::vector<Partition> modes_by_k;  // best partition per cardinality
};

// Every output by direct summation over all unordered partitions: each
// k-partition S contributes weight k! w_k prod_j exp(f(S_j)). Single-threaded
// reference path, determinism over speed.
BruteResult brute_posteriors(const SubsetTable& f, const PriorSpec& prior, const LogNumberTable& tables);

// Convenience overload that builds the model table first.
BruteResult brute_posteriors(const Dataset& data, const ModelSpec& model, const PriorSpec& prior,
                             const LogNumberTable& tables);

// Unnormalized log posterior k! w_k prod_j f(S_j) of one unordered
// partition. Lets callers check a reported mode against the enumerated
// optimum without relying on a tie-break convention: distinct partitions tie
// exactly whenever items have identical feature rows.
double partition_log_weight(const std::vector<Mask>& clusters, const SubsetTable& f, const PriorSpec& prior,
                            const LogNumberTable& tables);

}  // namespace cluspost::oracle
