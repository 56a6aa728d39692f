#ifndef SALEM_CONVOLUTION_HPP
#define SALEM_CONVOLUTION_HPP

#include <cstdint>
#include <vector>

#include "salem/types.hpp"

namespace salem {

// Exact r-fold discrete self-convolution of the indicator of `points`
// (nonnegative integers): g(z) = #{(y_1..y_r) : sum y_i = z}, indexed from
// z = r*min(points). Transform-based with a certified rounding budget,
// schoolbook fallback when the budget fails or sizes are tiny.
struct SelfConvolution {
  uint64_t offset = 0;          // z value of index 0
  std::vector<int64_t> counts;  // g(offset + i)
};

SelfConvolution self_convolve(const std::vector<uint64_t>& points, int r);

// sum_z g(z) * g(z - shift), exact.
BigInt correlation(const SelfConvolution& g, int64_t shift);

// Central value and integer samples of the n-fold self-convolution of the
// indicator of [-1/2, 1/2), computed from the piecewise-polynomial cardinal
// form in exact rational arithmetic. n must be even and >= 2.
BigRat bspline_central(int order2r, int64_t m);

}  // namespace salem

#endif
