#pragma once

#include <string>
#include <vector>

#include "cluspost/engine.hpp"

namespace cluspost {

// Everything one run produces, plus the metadata that goes with it.
// Optional sections are null when not requested.
struct ResultDocument {
    int n = 0;
    std::string model;  // "binary" | "normal"
    PriorSpec prior;
    const PosteriorSummary* summary = nullptr;
    const CooccurrenceMatrix* cooc = nullptr;
    const std::vector<Partition>* modes = nullptr;
    std::string engine_variant = "direct";
    int threads = 1;
    double wall_time_s = -1.0;  // emitted only when nonnegative
};

// Deterministic JSON rendering; probabilities carry 12 significant digits.
// Field order and formatting are fixed so identical results give identical
// bytes.
std::string render_json(const ResultDocument& doc);

void emit_json(const ResultDocument& doc, const std::string& path);

// CSV alternative: one file per output next to the base path
// (<base>.posterior_k.csv, <base>.cooccurrence.csv, <base>.modes.csv).
void emit_csv(const ResultDocument& doc, const std::string& base_path);

}  // namespace cluspost
