#include "cluspost/dataset_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "cluspost/errors.hpp"

namespace cluspost {

namespace {

std::string location(std::size_t row, std::size_t col) {
    return "row " + std::to_string(row) + ", column " + std::to_string(col);
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
    // trim surrounding whitespace
    const auto begin = cell.find_first_not_of(" \t\r");
    if (begin == std::string::npos) throw DataError("load_csv: missing value at " + location(row, col));
    const auto end = cell.find_last_not_of(" \t\r");
    const std::string token = cell.substr(begin, end - begin + 1);

    errno = 0;
    char* tail = nullptr;
    const double value = std::strtod(token.c_str(), &tail);
    if (tail != token.c_str() + token.size() || errno != 0)
        throw DataError("load_csv: non-numeric cell '" + token + "' at " + location(row, col));
    return value;
}

}  // namespace

Dataset load_csv(const std::string& path, DataKind kind, bool skip_header) {
    std::ifstream in(path);
    if (!in) throw DataError("load_csv: cannot open '" + path + "'");

    Dataset data;
    data.kind = kind;
    std::size_t expected_cols = 0;
    std::size_t row = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++row;
        if (row == 1 && skip_header) continue;
        if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;  // trailing newline

        std::stringstream cells(line);
        std::string cell;
        std::size_t col = 0;
        while (std::getline(cells, cell, ',')) {
            ++col;
            data.values.push_back(parse_cell(cell, row, col));
        }
        if (!line.empty() && line.back() == ',')
            throw DataError("load_csv: missing value at " + location(row, col + 1));
        if (col == 0) throw DataError("load_csv: empty row " + std::to_string(row));
        if (expected_cols == 0) {
            expected_cols = col;
        } else if (col != expected_cols) {
            throw DataError("load_csv: ragged row " + std::to_string(row) + " has " + std::to_string(col) +
                            " cells, expected " + std::to_string(expected_cols));
        }
        ++data.n;
    }
    if (data.n == 0) throw DataError("load_csv: no data rows in '" + path + "'");
    data.D = static_cast<int>(expected_cols);
    data.validate();
    return data;
}

void write_csv(const Dataset& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("write_csv: cannot open '" + path + "' for writing");
    char buffer[64];
    for (int i = 0; i < data.n; ++i) {
        for (int d = 0; d < data.D; ++d) {
            std::snprintf(buffer, sizeof(buffer), "%.17g", data.at(i, d));
            out << buffer;
            out << (d + 1 == data.D ? '\n' : ',');
        }
    }
    if (!out) throw DataError("write_csv: write to '" + path + "' failed");
}

}  // namespace cluspost
