#pragma once

#include <gmpxx.h>

#include <vector>

#include "cluspost/subset_table.hpp"

namespace cluspost {

// Linear-domain image of a SubsetTable in arbitrary-precision fixed point:
// entries[X] = round(exp(table[X] - shift) * 2^scale_bits). The conversion
// is exact up to one quantization of at most 2^-(scale_bits+1) absolute in
// the shifted linear domain; everything downstream is exact integer work.
struct FixedPointTable {
    int n = 0;
    long scale_bits = 0;
    double shift = 0.0;  // log-domain shift removed before scaling
    std::vector<mpz_class> entries;

    Mask universe() const { return full_mask(n); }
};

// round(x * 2^bits) computed exactly from the double representation; x >= 0.
mpz_class scale_to_integer(double x, long bits);

// log of a positive big integer, accurate to a few ulp across any magnitude.
double log_mpz(const mpz_class& z);

// Quantizes a log-domain table; shift is the table maximum.
// Throws PrecisionError when scale_bits cannot cover the span between the
// maximum and the smallest finite entry (some entry would quantize to zero),
// naming the number of fractional bits that would suffice.
FixedPointTable to_fixed_point(const SubsetTable& table, long scale_bits);

// In-place subset-sum transform: entries[X] <- sum over A subseteq X of
// entries[A], by the standard n-pass dynamic program. Exact for any signs.
void zeta_transform(FixedPointTable& table);

// Exact inverse of zeta_transform.
void mobius_transform(FixedPointTable& table);

}  // namespace cluspost
