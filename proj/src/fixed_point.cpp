#include "cluspost/fixed_point.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cluspost {

namespace {
// lgamma-style split of ln 2 so that exponent * kLn2Hi is exact for
// exponents below 2^20; keeps log_mpz at a few ulp for huge integers.
constexpr double kLn2Hi = 6.93147180369123816490e-01;
constexpr double kLn2Lo = 1.90821492927058770002e-10;
}  // namespace

mpz_class scale_to_integer(double x, long bits) {
    if (x == 0.0) return mpz_class(0);
    int e = 0;
    const double m = std::frexp(x, &e);  // x = m * 2^e, 0.5 <= m < 1
    const auto mant = static_cast<unsigned long>(std::ldexp(m, 53));
    mpz_class z(mant);
    const long sh = static_cast<long>(e) - 53 + bits;
    if (sh >= 0) return z << static_cast<unsigned long>(sh);
    // round to nearest (half up; x is nonnegative)
    z += mpz_class(1) << static_cast<unsigned long>(-sh - 1);
    z >>= static_cast<unsigned long>(-sh);
    return z;
}

double log_mpz(const mpz_class& z) {
    long e2 = 0;
    const double d = mpz_get_d_2exp(&e2, z.get_mpz_t());
    const double e = static_cast<double>(e2);
    return e * kLn2Hi + (e * kLn2Lo + std::log(d));
}

FixedPointTable to_fixed_point(const SubsetTable& table, long scale_bits) {
    if (scale_bits < 1) throw DomainError("to_fixed_point: scale_bits must be >= 1");

    double top = kLogZero;
    double bottom = std::numeric_limits<double>::infinity();
    for (Mask x = 0; x <= table.universe(); ++x) {
        const double v = table[x];
        if (v == kLogZero) continue;
        top = std::max(top, v);
        bottom = std::min(bottom, v);
    }

    FixedPointTable out;
    out.n = table.n();
    out.scale_bits = scale_bits;
    out.entries.assign(table.size(), mpz_class(0));
    if (top == kLogZero) {
        out.shift = 0.0;
        return out;  // all-zero table
    }
    out.shift = top;

    const double span_bits = (top - bottom) / kLn2Hi;
    const long required = static_cast<long>(std::ceil(span_bits)) + 1;
    if (required > 1024)
        throw PrecisionError(
            "to_fixed_point: rescaled table spans " + std::to_string(required) +
                " bits, beyond the double-exponential conversion limit",
            required);
    if (scale_bits < required)
        throw PrecisionError("to_fixed_point: scale_bits=" + std::to_string(scale_bits) +
                                 " cannot represent the table's dynamic range; need >= " +
                                 std::to_string(required) + " bits",
                             required);

    for (Mask x = 0; x <= table.universe(); ++x) {
        const double v = table[x];
        if (v == kLogZero) continue;
        out.entries[x] = scale_to_integer(std::exp(v - top), scale_bits);
    }
    return out;
}

void zeta_transform(FixedPointTable& table) {
    const std::size_t count = std::size_t{1} << table.n;
    for (int d = 0; d < table.n; ++d) {
        const Mask bit = Mask{1} << d;
        for (std::size_t s = 0; s < count; ++s) {
            if (s & bit) table.entries[s] += table.entries[s ^ bit];
        }
    }
}

void mobius_transform(FixedPointTable& table) {
    const std::size_t count = std::size_t{1} << table.n;
    for (int d = 0; d < table.n; ++d) {
        const Mask bit = Mask{1} << d;
        for (std::size_t s = 0; s < count; ++s) {
            if (s & bit) table.entries[s] -= table.entries[s ^ bit];
        }
    }
}

}  // namespace cluspost
