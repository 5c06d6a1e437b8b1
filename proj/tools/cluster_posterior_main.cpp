#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cluspost/dataset_io.hpp"
#include "cluspost/engine.hpp"
#include "cluspost/errors.hpp"
#include "cluspost/oracle.hpp"
#include "cluspost/results_io.hpp"
#include "cluspost/synthetic.hpp"

namespace {

using namespace cluspost;

struct CommonOptions {
    std::string data_path;
    std::string model = "binary";
    bool header = false;
    double alpha = 1.0, beta = 1.0, mu = 0.0, tau = 1.0;
    std::string prior = "uniform-k";
    double theta = 1.0;
    bool dp_drop_theta_power = false;
    std::string engine = "direct";
    long scale_bits = 96;
    int threads = 1;
};

void add_common_options(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--data", opt.data_path, "CSV feature matrix; rows are items, columns are features")
        ->required();
    cmd->add_option("--model", opt.model, "Likelihood family")
        ->check(CLI::IsMember({"binary", "normal"}))
        ->required();
    cmd->add_flag("--header", opt.header, "Skip the first CSV row");
    cmd->add_option("--alpha", opt.alpha, "Hyperparameter alpha (default 1)");
    cmd->add_option("--beta", opt.beta, "Hyperparameter beta (default 1)");
    cmd->add_option("--mu", opt.mu, "Hyperparameter mu, normal model only (default 0)");
    cmd->add_option("--tau", opt.tau, "Hyperparameter tau, normal model only (default 1)");
    cmd->add_option("--prior", opt.prior, "Partition prior (default uniform-k)")
        ->check(CLI::IsMember({"uniform-k", "uniform-partitions", "dp"}));
    cmd->add_option("--theta", opt.theta, "Dirichlet-process weight parameter (default 1)");
    cmd->add_flag("--dp-no-theta-power", opt.dp_drop_theta_power,
                  "Drop the theta^k factor from DP cardinality weights (non-normalizing form)");
    cmd->add_option("--engine", opt.engine, "Convolution engine (default direct)")
        ->check(CLI::IsMember({"direct", "fast-exact"}));
    cmd->add_option("--scale-bits", opt.scale_bits, "Fixed-point fractional bits for fast-exact (default 96)");
    cmd->add_option("--threads", opt.threads, "Worker threads (default 1)")->check(CLI::PositiveNumber);
}

ModelSpec model_from(const CommonOptions& opt) {
    ModelSpec spec;
    if (opt.model == "binary") {
        spec.hyper = BetaBinomialHyper{opt.alpha, opt.beta};
    } else {
        spec.hyper = GammaNormalHyper{opt.alpha, opt.beta, opt.mu, opt.tau};
    }
    return spec;
}

PriorSpec prior_from(const CommonOptions& opt) {
    PriorSpec prior;
    if (opt.prior == "uniform-k") prior.variant = PriorVariant::UniformOnK;
    if (opt.prior == "uniform-partitions") prior.variant = PriorVariant::UniformOnPartitions;
    if (opt.prior == "dp") prior.variant = PriorVariant::DirichletProcess;
    prior.theta = opt.theta;
    prior.dp_drop_theta_power = opt.dp_drop_theta_power;
    prior.validate();
    return prior;
}

ConvolveOptions convolve_from(const CommonOptions& opt) {
    ConvolveOptions c;
    c.engine = (opt.engine == "fast-exact") ? Engine::FastExact : Engine::Direct;
    c.scale_bits = opt.scale_bits;
    return c;
}

void apply_threads(int threads) {
#ifdef _OPENMP
    omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

int do_run(const CommonOptions& opt, const std::vector<std::string>& outputs, const std::string& out_path,
           const std::string& format, bool timing) {
    apply_threads(opt.threads);
    const DataKind kind = (opt.model == "binary") ? DataKind::Binary : DataKind::Continuous;
    const Dataset data = load_csv(opt.data_path, kind, opt.header);
    const ModelSpec model = model_from(opt);
    const PriorSpec prior = prior_from(opt);
    const LogNumberTable tables(std::max(data.n, 2));

    AnalysisRequest request{false, false, false};
    for (const auto& name : outputs) {
        if (name == "posterior-k") request.want_posterior_k = true;
        else if (name == "cooccurrence") request.want_cooccurrence = true;
        else if (name == "modes") request.want_modes = true;
        else throw DataError("run: unknown output '" + name + "'");
    }

    const auto t0 = std::chrono::steady_clock::now();
    const SubsetTable f = build_f_table(data, model, prior);
    const AnalysisResult result = analyze(f, prior, tables, request, convolve_from(opt));
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    ResultDocument doc;
    doc.n = data.n;
    doc.model = opt.model;
    doc.prior = prior;
    doc.summary = request.want_posterior_k ? &result.summary : nullptr;
    doc.cooc = request.want_cooccurrence ? &result.cooc : nullptr;
    doc.modes = request.want_modes ? &result.modes : nullptr;
    doc.engine_variant = opt.engine;
    doc.threads = opt.threads;
    doc.wall_time_s = timing ? seconds : -1.0;

    if (format == "json") {
        emit_json(doc, out_path);
    } else {
        emit_csv(doc, out_path);
    }

    std::fprintf(stderr, "n=%d model=%s prior=%s engine=%s: log evidence %.6f, %.3fs\n", data.n, opt.model.c_str(),
                 opt.prior.c_str(), opt.engine.c_str(), result.summary.log_evidence, seconds);
    return 0;
}

int do_generate(const SyntheticSpec& spec, const std::string& out_path) {
    const SyntheticData generated = generate_synthetic(spec);
    write_csv(generated.data, out_path);

    // sidecar metadata: the generating partition, 1-based
    std::string meta = "{\n  \"experiment\": \"" + spec.experiment + "\",\n  \"seed\": " +
                       std::to_string(spec.seed) + ",\n  \"n\": " + std::to_string(generated.data.n) +
                       ",\n  \"D\": " + std::to_string(generated.data.D) + ",\n  \"kind\": \"" +
                       (generated.data.kind == DataKind::Binary ? "binary" : "continuous") +
                       "\",\n  \"generating_clusters\": [";
    for (std::size_t j = 0; j < generated.generating_clusters.size(); ++j) {
        if (j) meta += ',';
        meta += '[';
        const auto items = mask_to_items(generated.generating_clusters[j]);
        for (std::size_t t = 0; t < items.size(); ++t) {
            if (t) meta += ',';
            meta += std::to_string(items[t]);
        }
        meta += ']';
    }
    meta += "]\n}\n";

    std::ofstream metafile(out_path + ".meta.json", std::ios::binary);
    if (!metafile) throw DataError("generate: cannot write metadata next to '" + out_path + "'");
    metafile << meta;

    std::fprintf(stderr, "wrote %d x %d %s matrix to %s (+ .meta.json)\n", generated.data.n, generated.data.D,
                 generated.data.kind == DataKind::Binary ? "binary" : "continuous", out_path.c_str());
    return 0;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

int do_verify(const CommonOptions& opt, double perturbation) {
    apply_threads(opt.threads);
    const DataKind kind = (opt.model == "binary") ? DataKind::Binary : DataKind::Continuous;
    const Dataset data = load_csv(opt.data_path, kind, opt.header);
    if (data.n > oracle::kMaxEnumerationItems)
        throw DataError("verify: n=" + std::to_string(data.n) + " exceeds the enumeration cap of " +
                        std::to_string(oracle::kMaxEnumerationItems));

    const ModelSpec model = model_from(opt);
    const PriorSpec prior = prior_from(opt);
    const LogNumberTable tables(std::max(data.n, 2));
    const SubsetTable f = build_f_table(data, model, prior);

    SubsetTable f_engine = f;
    f_engine[f_engine.universe()] += perturbation;  // test hook, zero in normal use

    const AnalysisResult engine_result = analyze(f_engine, prior, tables, AnalysisRequest{}, convolve_from(opt));
    const oracle::BruteResult reference = oracle::brute_posteriors(f, prior, tables);

    constexpr double kTolerance = 1e-9;
    const double dk = max_abs_diff(engine_result.summary.posterior_k, reference.summary.posterior_k);
    const double dc = max_abs_diff(engine_result.cooc.entries, reference.cooc.entries);
    const double dle = std::abs(engine_result.summary.log_evidence - reference.summary.log_evidence);

    // value-based mode checks: distinct partitions tie exactly when items
    // share feature rows, and the two paths break ties differently
    bool modes_match = true;
    double dm = 0.0;
    for (int k = 1; k <= data.n; ++k) {
        const Partition& engine_mode = engine_result.modes[k - 1];
        const Partition& brute_mode = reference.modes_by_k[k - 1];
        dm = std::max(dm, std::abs(std::exp(engine_mode.log_posterior) - std::exp(brute_mode.log_posterior)));
        if (engine_mode.clusters.empty()) {
            modes_match = modes_match && brute_mode.clusters.empty();
            continue;
        }
        const double rescored = oracle::partition_log_weight(engine_mode.clusters, f, prior, tables) -
                                reference.summary.log_evidence;
        if (std::abs(rescored - brute_mode.log_posterior) >= kTolerance) modes_match = false;
    }

    std::printf("verify n=%d: |d posterior_k| = %.3e, |d cooccurrence| = %.3e, |d log_evidence| = %.3e, "
                "|d mode prob| = %.3e, k-modes %s\n",
                data.n, dk, dc, dle, dm, modes_match ? "attain the enumerated optima" : "MISMATCH");
    const bool ok = dk <= kTolerance && dc <= kTolerance && dle <= kTolerance && dm <= kTolerance && modes_match;
    std::printf("verify: %s\n", ok ? "engine and enumeration agree" : "DISAGREEMENT beyond 1e-9");
    return ok ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Bayesian clustering posteriors over up to ~22 items via subset convolution"};
    app.require_subcommand(1);

    CommonOptions run_opt;
    std::vector<std::string> outputs{"posterior-k", "cooccurrence", "modes"};
    std::string out_path, format = "json";
    bool timing = false;
    CLI::App* run_cmd = app.add_subcommand("run", "Compute posterior summaries for a dataset");
    add_common_options(run_cmd, run_opt);
    run_cmd->add_option("--outputs", outputs, "Any of posterior-k, cooccurrence, modes")->delimiter(',');
    run_cmd->add_option("--out", out_path, "Output path (JSON) or base path (CSV)")->required();
    run_cmd->add_option("--format", format, "Output format (default json)")->check(CLI::IsMember({"json", "csv"}));
    run_cmd->add_flag("--timing", timing, "Include wall time in the JSON engine metadata");

    SyntheticSpec gen_spec;
    std::string gen_out, gen_kind = "binary";
    CLI::App* gen_cmd = app.add_subcommand("generate", "Generate a synthetic dataset from the model prior");
    gen_cmd->add_option("--experiment", gen_spec.experiment, "normal-18, binary-20, or custom")->required();
    gen_cmd->add_option("--seed", gen_spec.seed, "RNG seed")->required();
    gen_cmd->add_option("--out", gen_out, "CSV output path")->required();
    gen_cmd->add_option("--n", gen_spec.n, "custom: item count");
    gen_cmd->add_option("--k", gen_spec.k, "custom: cluster count");
    gen_cmd->add_option("--D", gen_spec.D, "custom: feature count");
    gen_cmd->add_option("--kind", gen_kind, "custom: binary or continuous")
        ->check(CLI::IsMember({"binary", "continuous"}));

    CommonOptions verify_opt;
    double perturbation = 0.0;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "Cross-check the engine against exhaustive enumeration (n <= 13)");
    add_common_options(verify_cmd, verify_opt);
    verify_cmd->add_option("--engine-perturbation", perturbation, "")->group("");  // fault-injection test hook

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run_cmd->parsed()) return do_run(run_opt, outputs, out_path, format, timing);
        if (gen_cmd->parsed()) {
            gen_spec.kind = (gen_kind == "binary") ? DataKind::Binary : DataKind::Continuous;
            return do_generate(gen_spec, gen_out);
        }
        if (verify_cmd->parsed()) return do_verify(verify_opt, perturbation);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 2;
}
