#pragma once

#include <cmath>
#include <limits>
#include <span>

namespace cluspost {

// A LogValue is the natural log of a nonnegative quantity, stored as a plain
// double. -inf encodes exact zero; NaN never appears. Multiplication of the
// encoded quantities is addition of logs, addition is log-sum-exp.
using LogValue = double;

inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

inline bool is_log_zero(double x) { return x == kLogZero; }

// log(exp(a) + exp(b)), safe at -inf.
inline double log_add(double a, double b) {
    if (a < b) std::swap(a, b);
    if (b == kLogZero) return a;  // covers a == b == -inf
    return a + std::log1p(std::exp(b - a));
}

// Streaming log-sum-exp with a running maximum. Terms more than kDropout
// below the running maximum are skipped: they change the sum by less than
// 2^n * exp(-kDropout) relative, far below every tolerance in use, and the
// skip depends only on values, so results stay bit-reproducible.
class LogAccumulator {
public:
    static constexpr double kDropout = 60.0;

    void add(double term) {
        if (term == kLogZero) return;
        if (term <= max_) {
            if (term > max_ - kDropout) sum_ += std::exp(term - max_);
        } else {
            sum_ = sum_ * std::exp(max_ - term) + 1.0;
            max_ = term;
        }
    }

    double value() const {
        if (max_ == kLogZero) return kLogZero;
        return max_ + std::log(sum_);
    }

private:
    double max_ = kLogZero;
    double sum_ = 0.0;
};

// Two-pass log-sum-exp over a span; exact summation order, no dropout.
inline double log_sum(std::span<const double> terms) {
    double m = kLogZero;
    for (double t : terms) m = (t > m) ? t : m;
    if (m == kLogZero) return kLogZero;
    double s = 0.0;
    for (double t : terms) {
        if (t != kLogZero) s += std::exp(t - m);
    }
    return m + std::log(s);
}

}  // namespace cluspost
