#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cluspost/errors.hpp"
#include "cluspost/logspace.hpp"
#include "cluspost/mask.hpp"

namespace cluspost {

// A complete map from every subset of the ground set to a log-domain value:
// a dense array of 2^n doubles indexed by mask. This is the universal
// currency of the engine; tables are treated as immutable once built.
class SubsetTable {
public:
    explicit SubsetTable(int n, double fill = kLogZero) : n_(check_n(n)), values_(std::size_t{1} << n, fill) {}

    SubsetTable(int n, std::vector<double> values) : n_(check_n(n)), values_(std::move(values)) {
        if (values_.size() != (std::size_t{1} << n_))
            throw DimensionError("SubsetTable: value vector must have exactly 2^n entries");
    }

    int n() const { return n_; }
    std::size_t size() const { return values_.size(); }
    Mask universe() const { return full_mask(n_); }

    double operator[](Mask m) const { return values_[m]; }
    double& operator[](Mask m) { return values_[m]; }

    const std::vector<double>& values() const { return values_; }

    // Convolution identity: log 1 at the empty set, zero elsewhere.
    static SubsetTable delta_empty(int n) {
        SubsetTable t(n);
        t[0] = 0.0;
        return t;
    }

    // value on every nonempty subset, exact zero at the empty set.
    static SubsetTable constant_nonempty(int n, double value) {
        SubsetTable t(n, value);
        t[0] = kLogZero;
        return t;
    }

private:
    static int check_n(int n) {
        if (n < 0 || n > kMaxItems) throw DimensionError("SubsetTable: n out of range [0, 26]");
        return n;
    }

    int n_;
    std::vector<double> values_;
};

inline void require_same_ground_set(const SubsetTable& f, const SubsetTable& g, const char* op) {
    if (f.n() != g.n()) throw DimensionError(std::string(op) + ": tables have different ground-set sizes");
}

}  // namespace cluspost
