#pragma once

#include <string>

#include "cluspost/likelihood.hpp"

namespace cluspost {

// Parses a CSV feature matrix: rows are items, columns are features.
// Ragged rows, non-numeric cells, and empty cells raise DataError with the
// 1-based row/column location. With kind == Binary, every value must be 0
// or 1.
Dataset load_csv(const std::string& path, DataKind kind, bool skip_header = false);

// Full-precision CSV so that a write/load round trip reproduces the matrix
// bit-exactly.
void write_csv(const Dataset& data, const std::string& path);

}  // namespace cluspost
