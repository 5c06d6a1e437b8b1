#include "cluspost/results_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "cluspost/errors.hpp"

namespace cluspost {

namespace {

std::string num(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.12g", v);
    return buffer;
}

void append_array(std::string& out, const std::vector<double>& values) {
    out += '[';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += num(values[i]);
    }
    out += ']';
}

void append_clusters(std::string& out, const std::vector<Mask>& clusters) {
    out += '[';
    for (std::size_t j = 0; j < clusters.size(); ++j) {
        if (j) out += ',';
        out += '[';
        const auto items = mask_to_items(clusters[j]);
        for (std::size_t t = 0; t < items.size(); ++t) {
            if (t) out += ',';
            out += std::to_string(items[t]);
        }
        out += ']';
    }
    out += ']';
}

void write_file(const std::string& text, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("emit_results: cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw DataError("emit_results: write to '" + path + "' failed");
}

}  // namespace

std::string render_json(const ResultDocument& doc) {
    std::string out;
    out.reserve(4096);
    out += "{\n";
    out += "  \"n\": " + std::to_string(doc.n) + ",\n";
    out += "  \"model\": \"" + doc.model + "\",\n";
    out += "  \"prior\": \"" + to_string(doc.prior.variant) + "\",\n";
    if (doc.prior.variant == PriorVariant::DirichletProcess)
        out += "  \"theta\": " + num(doc.prior.theta) + ",\n";

    if (doc.summary != nullptr) {
        out += "  \"log_evidence\": " + num(doc.summary->log_evidence) + ",\n";
        out += "  \"posterior_k\": ";
        append_array(out, doc.summary->posterior_k);
        out += ",\n  \"prior_k\": ";
        append_array(out, doc.summary->prior_k);
        out += ",\n";
    }

    if (doc.cooc != nullptr) {
        out += "  \"cooccurrence\": [\n";
        for (int i = 0; i < doc.cooc->n; ++i) {
            out += "    ";
            std::vector<double> row(doc.cooc->entries.begin() + static_cast<std::size_t>(i) * doc.cooc->n,
                                    doc.cooc->entries.begin() + static_cast<std::size_t>(i + 1) * doc.cooc->n);
            append_array(out, row);
            out += (i + 1 < doc.cooc->n) ? ",\n" : "\n";
        }
        out += "  ],\n";
    }

    if (doc.modes != nullptr) {
        out += "  \"modes\": [\n";
        for (std::size_t m = 0; m < doc.modes->size(); ++m) {
            const Partition& p = (*doc.modes)[m];
            out += "    {\"k\": " + std::to_string(p.k) + ", \"posterior_prob\": " + num(std::exp(p.log_posterior)) +
                   ", \"clusters\": ";
            append_clusters(out, p.clusters);
            out += '}';
            out += (m + 1 < doc.modes->size()) ? ",\n" : "\n";
        }
        out += "  ],\n";
        out += "  \"global_mode_k\": " + std::to_string((*doc.modes)[global_mode_index(*doc.modes)].k) + ",\n";
    }

    // thread count and timing stay out of the default document so results
    // are byte-identical across runs and worker counts
    out += "  \"engine\": {\"variant\": \"" + doc.engine_variant + "\"";
    if (doc.wall_time_s >= 0.0) out += ", \"wall_time_s\": " + num(doc.wall_time_s);
    out += "}\n}\n";
    return out;
}

void emit_json(const ResultDocument& doc, const std::string& path) { write_file(render_json(doc), path); }

void emit_csv(const ResultDocument& doc, const std::string& base_path) {
    if (doc.summary != nullptr) {
        std::string text = "k,prior,posterior\n";
        for (int k = 1; k <= doc.n; ++k) {
            text += std::to_string(k) + ',' + num(doc.summary->prior_k[k - 1]) + ',' +
                    num(doc.summary->posterior_k[k - 1]) + '\n';
        }
        text += "log_evidence," + num(doc.summary->log_evidence) + ",\n";
        write_file(text, base_path + ".posterior_k.csv");
    }
    if (doc.cooc != nullptr) {
        std::string text;
        for (int i = 0; i < doc.cooc->n; ++i) {
            for (int j = 0; j < doc.cooc->n; ++j) {
                text += num(doc.cooc->at(i, j));
                text += (j + 1 == doc.cooc->n) ? '\n' : ',';
            }
        }
        write_file(text, base_path + ".cooccurrence.csv");
    }
    if (doc.modes != nullptr) {
        std::string text = "k,posterior_prob,clusters\n";
        for (const Partition& p : *doc.modes) {
            text += std::to_string(p.k) + ',' + num(std::exp(p.log_posterior)) + ',';
            for (std::size_t j = 0; j < p.clusters.size(); ++j) {
                if (j) text += '|';
                const auto items = mask_to_items(p.clusters[j]);
                for (std::size_t t = 0; t < items.size(); ++t) {
                    if (t) text += ' ';
                    text += std::to_string(items[t]);
                }
            }
            text += '\n';
        }
        write_file(text, base_path + ".modes.csv");
    }
}

}  // namespace cluspost
