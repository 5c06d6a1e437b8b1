#include "cluspost/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "cluspost/errors.hpp"

namespace cluspost {

namespace {

void require_valid_model_table(const SubsetTable& f, const char* op) {
    if (f.n() < 1) throw DomainError(std::string(op) + ": need at least one item");
    if (!is_log_zero(f[0])) throw DomainError(std::string(op) + ": model table must be zero at the empty set");
}

struct ConvolutionPass {
    std::vector<double> fk_at_universe;  // f^(k)(U), k = 1..n
    std::vector<double> aggregate;       // g(S); empty unless requested
};

// One sweep of f^(1)..f^(n). When the co-occurrence aggregate is requested,
// each table is folded into g(S) as soon as it exists: the table for f^(k-1)
// contributes the cardinality-k term log k + log w_k + f^(k-1)(U \ S).
ConvolutionPass run_convolution_pass(const SubsetTable& f, const PriorSpec& prior, const LogNumberTable& tables,
                                     bool want_aggregate, const ConvolveOptions& options) {
    const int n = f.n();
    const Mask universe = f.universe();

    std::vector<double> logw(n + 1);
    for (int k = 1; k <= n; ++k) logw[k] = log_weight(k, n, prior, tables);

    ConvolutionPass pass;
    ConvolutionConsumer consumer;
    if (want_aggregate) {
        pass.aggregate.assign(std::size_t{1} << n, kLogZero);
        // k = 1 uses f^(0), the convolution identity: only S = U survives.
        pass.aggregate[universe] = logw[1];
        consumer = [&](int j, const SubsetTable& fj) {
            if (j >= n) return;  // f^(n) is never a complement table
            const double add = std::log(static_cast<double>(j + 1)) + logw[j + 1];
            auto& agg = pass.aggregate;
            const std::int64_t count = std::int64_t{1} << n;
#pragma omp parallel for schedule(static)
            for (std::int64_t s = 0; s < count; ++s) {
                const double term = add + fj[universe ^ static_cast<Mask>(s)];
                agg[s] = log_add(agg[s], term);
            }
        };
    }
    pass.fk_at_universe = iterate_convolutions(f, n, consumer, options);
    return pass;
}

PosteriorSummary summarize(const std::vector<double>& fk_at_universe, int n, const PriorSpec& prior,
                           const LogNumberTable& tables) {
    std::vector<double> u(n);
    for (int k = 1; k <= n; ++k) u[k - 1] = log_weight(k, n, prior, tables) + fk_at_universe[k - 1];

    const double log_evidence = log_sum(u);
    if (is_log_zero(log_evidence))
        throw EvidenceZeroError("posterior_k: zero evidence; every cluster count has probability zero");

    PosteriorSummary out;
    out.n = n;
    out.log_evidence = log_evidence;
    out.posterior_k.resize(n);
    for (int k = 0; k < n; ++k) out.posterior_k[k] = std::exp(u[k] - log_evidence);
    out.prior_k = prior_marginal_k(n, prior, tables);
    return out;
}

CooccurrenceMatrix pair_probabilities(const SubsetTable& f, const std::vector<double>& aggregate,
                                      double log_evidence) {
    const int n = f.n();
    const Mask universe = f.universe();

    CooccurrenceMatrix m;
    m.n = n;
    m.entries.assign(static_cast<std::size_t>(n) * n, 1.0);

    const std::int64_t pair_count = std::int64_t{n} * (n - 1) / 2;
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t p = 0; p < pair_count; ++p) {
        // unrank p -> (i, j), i < j
        int i = 0;
        std::int64_t rest = p;
        while (rest >= n - 1 - i) {
            rest -= n - 1 - i;
            ++i;
        }
        const int j = i + 1 + static_cast<int>(rest);

        const Mask pair = (Mask{1} << i) | (Mask{1} << j);
        const Mask free_items = universe ^ pair;
        LogAccumulator acc;
        for_each_submask(free_items, [&](Mask r) {
            const Mask s = pair | r;
            acc.add(f[s] + aggregate[s]);
        });
        const double prob = std::exp(acc.value() - log_evidence);
        m.at(i, j) = prob;
        m.at(j, i) = prob;
    }
    return m;
}

std::vector<Partition> modes_from_max_pass(const SubsetTable& f, const PriorSpec& prior,
                                           const LogNumberTable& tables, double log_evidence) {
    const int n = f.n();
    const Mask universe = f.universe();

    // m^(k) = max_convolve(f, m^(k-1)); keep each level's argmax table for
    // backtracking. Level k = 1 is f itself (cluster = whole remaining set).
    std::vector<std::vector<Mask>> argmax(n + 1);
    std::vector<double> best_at_universe(n + 1, kLogZero);
    best_at_universe[1] = f[universe];

    SubsetTable current = f;
    for (int k = 2; k <= n; ++k) {
        MaxConvolution step = max_convolve(f, current, /*record_argmax=*/true);
        current = std::move(step.values);
        argmax[k] = std::move(step.argmax);
        best_at_universe[k] = current[universe];
    }

    std::vector<Partition> modes;
    modes.reserve(n);
    for (int k = 1; k <= n; ++k) {
        Partition part;
        part.k = k;
        if (is_log_zero(best_at_universe[k])) {
            part.log_posterior = kLogZero;  // no k-partition has positive mass
            modes.push_back(std::move(part));
            continue;
        }
        part.log_posterior =
            log_factorial(k) + log_weight(k, n, prior, tables) + best_at_universe[k] - log_evidence;

        // The recorded submask at each level is the part covered by the
        // previous max table; the complement is the cluster peeled off.
        Mask remaining = universe;
        for (int level = k; level >= 2; --level) {
            const Mask rest = argmax[level][remaining];
            part.clusters.push_back(remaining ^ rest);
            remaining = rest;
        }
        part.clusters.push_back(remaining);
        canonicalize(part);
        modes.push_back(std::move(part));
    }
    return modes;
}

}  // namespace

void canonicalize(Partition& p) {
    std::sort(p.clusters.begin(), p.clusters.end(),
              [](Mask a, Mask b) { return low_bit(a) < low_bit(b); });
    p.k = static_cast<int>(p.clusters.size());
}

std::size_t global_mode_index(const std::vector<Partition>& modes) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < modes.size(); ++i) {
        if (modes[i].log_posterior > modes[best].log_posterior) best = i;
    }
    return best;
}

PosteriorSummary posterior_k(const SubsetTable& f, const PriorSpec& prior, const LogNumberTable& tables,
                             const ConvolveOptions& options) {
    require_valid_model_table(f, "posterior_k");
    prior.validate();
    const auto pass = run_convolution_pass(f, prior, tables, /*want_aggregate=*/false, options);
    return summarize(pass.fk_at_universe, f.n(), prior, tables);
}

CooccurrenceMatrix cooccurrence(const SubsetTable& f, const PriorSpec& prior, const LogNumberTable& tables,
                                const ConvolveOptions& options) {
    require_valid_model_table(f, "cooccurrence");
    prior.validate();
    const auto pass = run_convolution_pass(f, prior, tables, /*want_aggregate=*/true, options);
    const auto summary = summarize(pass.fk_at_universe, f.n(), prior, tables);
    return pair_probabilities(f, pass.aggregate, summary.log_evidence);
}

std::vector<Partition> mode_partitions(const SubsetTable& f, const PriorSpec& prior, const LogNumberTable& tables,
                                       const ConvolveOptions& options) {
    require_valid_model_table(f, "mode_partitions");
    prior.validate();
    const auto pass = run_convolution_pass(f, prior, tables, /*want_aggregate=*/false, options);
    const auto summary = summarize(pass.fk_at_universe, f.n(), prior, tables);
    return modes_from_max_pass(f, prior, tables, summary.log_evidence);
}

AnalysisResult analyze(const SubsetTable& f, const PriorSpec& prior, const LogNumberTable& tables,
                       const AnalysisRequest& request, const ConvolveOptions& options) {
    require_valid_model_table(f, "analyze");
    prior.validate();

    AnalysisResult out;
    const auto pass = run_convolution_pass(f, prior, tables, request.want_cooccurrence, options);
    out.summary = summarize(pass.fk_at_universe, f.n(), prior, tables);
    if (request.want_cooccurrence)
        out.cooc = pair_probabilities(f, pass.aggregate, out.summary.log_evidence);
    if (request.want_modes)
        out.modes = modes_from_max_pass(f, prior, tables, out.summary.log_evidence);
    return out;
}

}  // namespace cluspost
