#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cluspost/likelihood.hpp"
#include "cluspost/mask.hpp"

namespace cluspost {

// Samplers built from raw mt19937_64 draws with explicit transforms, so a
// seed pins the dataset independently of the standard library's
// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform();                       // [0, 1)
    double normal(double mean, double sd);  // Box-Muller, one draw per call
    double gamma(double shape, double rate);
    double beta(double a, double b);
    int uniform_int(int bound);  // 0 .. bound-1

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

struct SyntheticSpec {
    std::string experiment;  // "normal-18", "binary-20", or "custom"
    std::uint64_t seed = 1;
    // custom only:
    int n = 0;
    int k = 0;
    int D = 0;
    DataKind kind = DataKind::Binary;
};

struct SyntheticData {
    Dataset data;
    std::vector<Mask> generating_clusters;  // canonical order
};

// Deterministic synthetic datasets drawn from the model's own prior:
//   normal-18: 18 items, 3 clusters of 6, bivariate normal features with
//              cluster parameters from the gamma-normal prior (1, 1, 0, 1);
//   binary-20: 20 items, 30 binary features, a random 5-partition, cluster
//              means from Beta(1, 1);
//   custom:    n items, k clusters, D features of the requested kind.
SyntheticData generate_synthetic(const SyntheticSpec& spec);

}  // namespace cluspost
