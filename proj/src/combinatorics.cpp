#include "cluspost/combinatorics.hpp"

#include <cmath>
#include <string>

#include "cluspost/logspace.hpp"

namespace cluspost {

double log_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
    return std::lgamma(x);
}

double log_factorial(int k) {
    if (k < 0) throw DomainError("log_factorial: argument must be nonnegative");
    return std::lgamma(static_cast<double>(k) + 1.0);
}

LogNumberTable::LogNumberTable(int n_max) : n_max_(n_max) {
    if (n_max < 1 || n_max > 64) throw DomainError("LogNumberTable: n_max out of range [1, 64]");

    stirling2_.assign(n_max + 1, {});
    stirling1_.assign(n_max + 1, {});
    bell_.assign(n_max + 1, kLogZero);

    // S(n,k) = k S(n-1,k) + S(n-1,k-1),  c(n,k) = (n-1) c(n-1,k) + c(n-1,k-1),
    // with S(0,0) = c(0,0) = 1 and zero outside the triangle.
    stirling2_[0] = {0.0};
    stirling1_[0] = {0.0};
    bell_[0] = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        stirling2_[n].assign(n + 1, kLogZero);
        stirling1_[n].assign(n + 1, kLogZero);
        for (int k = 1; k <= n; ++k) {
            const double s_stay = (k <= n - 1) ? std::log(double(k)) + stirling2_[n - 1][k] : kLogZero;
            const double s_new = stirling2_[n - 1][k - 1];
            stirling2_[n][k] = log_add(s_stay, s_new);

            const double c_stay = (k <= n - 1) ? std::log(double(n - 1)) + stirling1_[n - 1][k] : kLogZero;
            const double c_new = stirling1_[n - 1][k - 1];
            stirling1_[n][k] = log_add(c_stay, c_new);
        }
        LogAccumulator row;
        for (int k = 1; k <= n; ++k) row.add(stirling2_[n][k]);
        bell_[n] = row.value();
    }

    // Build-time sanity: sum_k c(n,k) = n!, S(n,1) = S(n,n) = 1.
    for (int n = 1; n <= n_max; ++n) {
        LogAccumulator row;
        for (int k = 1; k <= n; ++k) row.add(stirling1_[n][k]);
        const double err = std::abs(row.value() - log_factorial(n));
        if (err > 1e-10 * (1.0 + std::abs(log_factorial(n))))
            throw DomainError("LogNumberTable: first-kind row sum failed n! check at n=" + std::to_string(n));
        if (std::abs(stirling2_[n][1]) > 1e-12 || std::abs(stirling2_[n][n]) > 1e-12)
            throw DomainError("LogNumberTable: S(n,1) or S(n,n) differs from 1 at n=" + std::to_string(n));
    }
}

void LogNumberTable::check_range(int n, int k) const {
    if (n < 1 || n > n_max_ || k < 1 || k > n)
        throw DomainError("LogNumberTable: (n,k) outside the stored triangle");
}

double LogNumberTable::log_stirling2(int n, int k) const {
    check_range(n, k);
    return stirling2_[n][k];
}

double LogNumberTable::log_stirling1(int n, int k) const {
    check_range(n, k);
    return stirling1_[n][k];
}

double LogNumberTable::log_bell(int n) const {
    if (n < 1 || n > n_max_) throw DomainError("LogNumberTable: n outside the stored range");
    return bell_[n];
}

}  // namespace cluspost
