#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace cluspost {

// A subset of the ground set {0, ..., n-1}; bit i set <=> item i in the subset.
// Item indices are 0-based internally and 1-based in all user-facing I/O.
using Mask = std::uint32_t;

// Hard cap on the ground-set size: a table of 2^26 doubles is 512 MiB.
inline constexpr int kMaxItems = 26;

inline int popcount(Mask m) { return std::popcount(m); }

inline Mask full_mask(int n) { return (n == 0) ? 0u : ((Mask{1} << n) - 1u); }

inline bool contains(Mask m, int item) { return (m >> item) & 1u; }

// Lowest set bit as a mask; undefined for m == 0.
inline Mask low_bit(Mask m) { return m & (0u - m); }

inline int low_bit_index(Mask m) { return std::countr_zero(m); }

// Visits every submask of x in ascending numeric order, including 0 and x.
// The fixed order makes accumulations over splits bit-reproducible.
template <typename F>
inline void for_each_submask(Mask x, F&& f) {
    Mask s = 0;
    while (true) {
        f(s);
        if (s == x) break;
        s = (s - x) & x;
    }
}

// 1-based item list, ascending.
inline std::vector<int> mask_to_items(Mask m) {
    std::vector<int> items;
    while (m != 0) {
        items.push_back(low_bit_index(m) + 1);
        m &= m - 1;
    }
    return items;
}

}  // namespace cluspost
