#include <doctest.h>

#include <cmath>
#include <random>

#include "cluspost/likelihood.hpp"
#include "cluspost/priors.hpp"
#include "support/test_util.hpp"

using namespace cluspost;

namespace {

Dataset seeded_binary(int n, int D, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    Dataset d;
    d.n = n;
    d.D = D;
    d.kind = DataKind::Binary;
    d.values.resize(static_cast<std::size_t>(n) * D);
    for (auto& v : d.values) v = static_cast<double>(gen() & 1u);
    return d;
}

Dataset seeded_continuous(int n, int D, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    Dataset d;
    d.n = n;
    d.D = D;
    d.kind = DataKind::Continuous;
    d.values.resize(static_cast<std::size_t>(n) * D);
    for (auto& v : d.values) v = 4.0 * testutil::uniform01(gen) - 2.0;
    return d;
}

// from-scratch statistics for one subset, the oracle for the lattice fill
double recompute_f(const Dataset& d, const ModelSpec& model, const PriorSpec& prior, Mask x) {
    if (x == 0) return kLogZero;
    double total = log_f_prior(popcount(x), prior);
    for (int feat = 0; feat < d.D; ++feat) {
        int c = 0;
        double s = 0.0, q = 0.0;
        for (int i = 0; i < d.n; ++i) {
            if (!contains(x, i)) continue;
            ++c;
            s += d.at(i, feat);
            q += d.at(i, feat) * d.at(i, feat);
        }
        if (d.kind == DataKind::Binary) {
            total += beta_binomial_log_ml(c, static_cast<int>(s), std::get<BetaBinomialHyper>(model.hyper));
        } else {
            total += gamma_normal_log_ml(c, s, q, std::get<GammaNormalHyper>(model.hyper));
        }
    }
    return total;
}

}  // namespace

TEST_CASE("beta-binomial closed-form values") {
    const BetaBinomialHyper h{1.0, 1.0};
    CHECK(beta_binomial_log_ml(0, 0, h) == 0.0);
    CHECK(beta_binomial_log_ml(1, 1, h) == doctest::Approx(std::log(0.5)).epsilon(1e-14));
    CHECK(beta_binomial_log_ml(2, 2, h) == doctest::Approx(std::log(1.0 / 3.0)).epsilon(1e-14));

    CHECK_THROWS_AS(beta_binomial_log_ml(2, 3, h), DomainError);
    CHECK_THROWS_AS(beta_binomial_log_ml(-1, 0, h), DomainError);
    CHECK_THROWS_AS(beta_binomial_log_ml(1, 1, BetaBinomialHyper{0.0, 1.0}), DomainError);
}

TEST_CASE("beta-binomial marginals sum to one over all datasets of size c") {
    for (const auto& h : {BetaBinomialHyper{1.0, 1.0}, BetaBinomialHyper{0.5, 2.5}}) {
        for (int c = 1; c <= 12; ++c) {
            double total = 0.0;
            double log_binom = 0.0;  // log C(c, s), updated incrementally
            for (int s = 0; s <= c; ++s) {
                if (s > 0) log_binom += std::log(double(c - s + 1)) - std::log(double(s));
                total += std::exp(log_binom + beta_binomial_log_ml(c, s, h));
            }
            CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("gamma-normal closed-form values and symmetry") {
    const GammaNormalHyper h{1.0, 1.0, 0.0, 1.0};
    CHECK(gamma_normal_log_ml(0, 0.0, 0.0, h) == 0.0);
    CHECK(gamma_normal_log_ml(1, 0.0, 0.0, h) == doctest::Approx(std::log(0.25)).epsilon(1e-14));

    // mu = 0: flipping the sign of the data leaves the value unchanged
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 20; ++trial) {
        const int c = 1 + static_cast<int>(gen() % 6);
        double s = 0.0, q = 0.0;
        for (int i = 0; i < c; ++i) {
            const double y = 3.0 * testutil::uniform01(gen) - 1.5;
            s += y;
            q += y * y;
        }
        CHECK(gamma_normal_log_ml(c, s, q, h) == doctest::Approx(gamma_normal_log_ml(c, -s, q, h)).epsilon(1e-13));
    }

    CHECK_THROWS_AS(gamma_normal_log_ml(-1, 0.0, 0.0, h), DomainError);
    CHECK_THROWS_AS(gamma_normal_log_ml(2, 2.0, 0.5, h), DomainError);  // q < s^2/c
    CHECK_THROWS_AS(gamma_normal_log_ml(1, 0.0, 0.0, GammaNormalHyper{1.0, -1.0, 0.0, 1.0}), DomainError);
}

TEST_CASE("single binary item: f({1}) composes the c=1 marginal") {
    Dataset d;
    d.n = 1;
    d.D = 1;
    d.kind = DataKind::Binary;
    d.values = {1.0};
    const ModelSpec model{BetaBinomialHyper{1.0, 1.0}};
    const PriorSpec prior{PriorVariant::UniformOnK};
    const SubsetTable f = build_f_table(d, model, prior);
    CHECK(f[0] == kLogZero);
    CHECK(f[1] == doctest::Approx(std::log(0.5)).epsilon(1e-14));
}

TEST_CASE("lattice fill equals per-subset recomputation on random subsets") {
    const ModelSpec bin_model{BetaBinomialHyper{1.0, 1.0}};
    const ModelSpec cont_model{GammaNormalHyper{1.0, 1.0, 0.0, 1.0}};
    const PriorSpec prior{PriorVariant::DirichletProcess, 1.0};

    const Dataset bin = seeded_binary(10, 3, 99);
    const Dataset cont = seeded_continuous(10, 3, 98);
    const SubsetTable f_bin = build_f_table(bin, bin_model, prior);
    const SubsetTable f_cont = build_f_table(cont, cont_model, prior);
    CHECK(f_bin[0] == kLogZero);
    CHECK(f_cont[0] == kLogZero);

    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 100; ++trial) {
        const Mask x = static_cast<Mask>(gen() & f_bin.universe());
        if (x == 0) continue;
        CHECK(f_bin[x] == doctest::Approx(recompute_f(bin, bin_model, prior, x)).epsilon(1e-12));
        CHECK(f_cont[x] == doctest::Approx(recompute_f(cont, cont_model, prior, x)).epsilon(1e-12));
    }
}

TEST_CASE("feature blocks add: table over D1 + D2 features splits into parts") {
    const ModelSpec model{GammaNormalHyper{1.0, 1.0, 0.0, 1.0}};
    const PriorSpec prior{PriorVariant::UniformOnK};

    const Dataset both = seeded_continuous(8, 4, 55);
    Dataset first = both, second = both;
    first.D = 2;
    second.D = 2;
    first.values.clear();
    second.values.clear();
    for (int i = 0; i < both.n; ++i) {
        for (int d = 0; d < 4; ++d) {
            (d < 2 ? first : second).values.push_back(both.at(i, d));
        }
    }

    const SubsetTable f_both = build_f_table(both, model, prior);
    const SubsetTable f1 = build_f_table(first, model, prior);
    const SubsetTable f2 = build_f_table(second, model, prior);
    for (Mask x = 1; x <= f_both.universe(); ++x) {
        // prior part appears in every table; subtract one copy
        const double split_sum = f1[x] + f2[x] - log_f_prior(popcount(x), prior);
        CHECK(f_both[x] - split_sum == doctest::Approx(0.0).epsilon(1e-10));
    }
}

TEST_CASE("cluster statistics add over disjoint sets") {
    const Dataset d = seeded_continuous(12, 2, 77);
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 50; ++trial) {
        const Mask a = static_cast<Mask>(gen()) & full_mask(12);
        const Mask b = static_cast<Mask>(gen()) & full_mask(12) & ~a;
        for (int feat = 0; feat < d.D; ++feat) {
            ClusterStats sa, sb, sunion;
            for (int i = 0; i < d.n; ++i) {
                ClusterStats* target = contains(a, i) ? &sa : (contains(b, i) ? &sb : nullptr);
                if (target == nullptr) continue;
                target->c += 1;
                target->s += d.at(i, feat);
                target->q += d.at(i, feat) * d.at(i, feat);
                sunion.c += 1;
                sunion.s += d.at(i, feat);
                sunion.q += d.at(i, feat) * d.at(i, feat);
            }
            CHECK(sunion.c == sa.c + sb.c);
            CHECK(sunion.s == doctest::Approx(sa.s + sb.s).epsilon(1e-12));
            CHECK(sunion.q == doctest::Approx(sa.q + sb.q).epsilon(1e-12));
        }
    }
}

TEST_CASE("dataset and model mismatches are refused") {
    Dataset d;
    d.n = 2;
    d.D = 1;
    d.kind = DataKind::Binary;
    d.values = {0.0, 2.0};
    CHECK_THROWS_AS(d.validate(), DataError);

    d.values = {0.0, 1.0};
    const ModelSpec wrong{GammaNormalHyper{}};
    CHECK_THROWS_AS(build_f_table(d, wrong, PriorSpec{}), DataError);

    Dataset too_big;
    too_big.n = 27;
    too_big.D = 1;
    too_big.values.assign(27, 0.0);
    CHECK_THROWS_AS(too_big.validate(), DataError);
}
