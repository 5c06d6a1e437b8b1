#pragma once

#include <vector>

#include "cluspost/convolution.hpp"
#include "cluspost/priors.hpp"

namespace cluspost {

// Exact posterior over the number of clusters, plus the model evidence.
struct PosteriorSummary {
    int n = 0;
    double log_evidence = 0.0;          // log p(y)
    std::vector<double> posterior_k;    // p(k | y), k = 1..n
    std::vector<double> prior_k;        // implied prior marginal, for reporting
};

// Symmetric matrix of posterior probabilities that items i and j share a
// cluster; unit diagonal.
struct CooccurrenceMatrix {
    int n = 0;
    std::vector<double> entries;  // row-major n x n

    double at(int i, int j) const { return entries[static_cast<std::size_t>(i) * n + j]; }
    double& at(int i, int j) { return entries[static_cast<std::size_t>(i) * n + j]; }
};

// An unordered partition: disjoint nonempty clusters covering the ground
// set, sorted by smallest member, with its log posterior probability.
struct Partition {
    std::vector<Mask> clusters;
    int k = 0;
    double log_posterior = 0.0;
};

// p(k | y) by iterated self-convolution of the model table:
// u_k = log w_k + f^(k)(U), evidence = logsumexp_k u_k.
PosteriorSummary posterior_k(const SubsetTable& f, const PriorSpec& prior, const LogNumberTable& tables,
                             const ConvolveOptions& options = {});

// Full pairwise co-occurrence matrix. The per-k convolution tables are
// folded on the fly into the aggregate
//   g(S) = logsumexp_k [ log k + log w_k + f^(k-1)(U \ S) ],
// with f^(0) the convolution identity, so only O(2^n) state is retained;
// p(C_ij | y) then sums f(S) + g(S) over the supersets S of {i, j}.
CooccurrenceMatrix cooccurrence(const SubsetTable& f, const PriorSpec& prior, const LogNumberTable& tables,
                                const ConvolveOptions& options = {});

// Maximum-posterior k-partition for every k = 1..n, by max-product
// convolution with argmax backtracking. The reported probability is for the
// unordered partition, i.e. includes the k! ordering multiplicity.
std::vector<Partition> mode_partitions(const SubsetTable& f, const PriorSpec& prior, const LogNumberTable& tables,
                                       const ConvolveOptions& options = {});

// Index of the global mode within a mode_partitions result.
std::size_t global_mode_index(const std::vector<Partition>& modes);

// One shared convolution pass feeding all requested outputs; what the CLI
// runs so posterior_k and cooccurrence do not repeat the O(n 3^n) work.
struct AnalysisRequest {
    bool want_posterior_k = true;
    bool want_cooccurrence = true;
    bool want_modes = true;
};

struct AnalysisResult {
    PosteriorSummary summary;
    CooccurrenceMatrix cooc;          // empty unless requested
    std::vector<Partition> modes;     // empty unless requested
};

AnalysisResult analyze(const SubsetTable& f, const PriorSpec& prior, const LogNumberTable& tables,
                       const AnalysisRequest& request = {}, const ConvolveOptions& options = {});

// Canonical form: clusters ordered by smallest member.
void canonicalize(Partition& p);

}  // namespace cluspost
