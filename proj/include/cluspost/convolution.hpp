#pragma once

#include <functional>
#include <vector>

#include "cluspost/subset_table.hpp"

namespace cluspost {

enum class Engine { Direct, FastExact };

struct ConvolveOptions {
    Engine engine = Engine::Direct;
    long scale_bits = 96;  // fixed-point fractional bits for the exact fast path
};

// Sum-product subset convolution by direct enumeration of splits:
//   result(X) = log sum_{A subseteq X} exp(f(A) + g(X\A)).
// Submasks are visited in ascending numeric order per output mask, so results
// are bit-reproducible and independent of thread count. Theta(3^n) terms.
SubsetTable direct_convolve(const SubsetTable& f, const SubsetTable& g);

// Sum-product subset convolution via ranked zeta/Moebius transforms over
// arbitrary-precision fixed-point integers. All intermediate arithmetic is
// exact; the result differs from direct_convolve only by the one-time input
// quantization. O(n^2 2^n) big-integer operations.
// Throws PrecisionError when scale_bits cannot represent the dynamic range
// of the rescaled inputs.
SubsetTable fast_convolve_exact(const SubsetTable& f, const SubsetTable& g, long scale_bits = 96);

// Max-product convolution: result(X) = max over splits A + B = X of
// f(A) + g(B). With record_argmax set, argmax[X] is the submask B assigned
// to g in the maximizing split, ties broken toward the smallest mask value.
struct MaxConvolution {
    SubsetTable values;
    std::vector<Mask> argmax;  // empty unless recorded
};
MaxConvolution max_convolve(const SubsetTable& f, const SubsetTable& g, bool record_argmax);

// Iterated self-convolution: produces f^(k) = f * ... * f (k copies) for
// k = 1..k_max and returns the scalars f^(k)(U). At most two full tables are
// held at any point; consumer(k, f^(k)) is invoked after each step so
// downstream accumulators need not store all k tables.
using ConvolutionConsumer = std::function<void(int k, const SubsetTable& fk)>;
std::vector<double> iterate_convolutions(const SubsetTable& f, int k_max,
                                         const ConvolutionConsumer& consumer = nullptr,
                                         const ConvolveOptions& options = {});

}  // namespace cluspost
