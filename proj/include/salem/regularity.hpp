#ifndef SALEM_REGULARITY_HPP
#define SALEM_REGULARITY_HPP

#include <cstdint>
#include <vector>

#include "salem/tree.hpp"
#include "salem/types.hpp"

namespace salem {

struct IntervalQuery {
  BigRat center;
  BigRat halfwidth;

  BigRat lo() const { return center - halfwidth; }
  BigRat hi() const { return center + halfwidth; }
  BigRat width() const { return 2 * halfwidth; }
};

// Exact mu_N(I): full cells contribute 1/T_N, straddled cells the linear
// fraction of the uniform density.
BigRat measure_of_interval(const CantorTree& tree, int level, const IntervalQuery& I);

// Exact limit mass of a grid-aligned interval: both endpoints must be on the
// Psi(N)-grid of some built level. Independent of the aligned level used.
BigRat limit_measure_of_interval(const CantorTree& tree, const IntervalQuery& I);

// Same, evaluated at a specific built level whose grid must contain both
// endpoints.
BigRat limit_measure_at_level(const CantorTree& tree, const IntervalQuery& I, int level);

// Least built level whose grid contains both endpoints, or -1.
int aligned_level(const CantorTree& tree, const IntervalQuery& I);

struct RegularitySample {
  int scale = 0;              // N with |I| in [2/Psi(N+1), 2/Psi(N))
  BigRat center;
  BigRat halfwidth;
  BigRat mass;
  double ratioLower = 0.0;    // mass / lower envelope
  double ratioUpper = 0.0;    // mass / upper envelope
  bool eCentered = false;
  bool containedCellOk = false;  // level-(N+1) ancestor cell inside I
};

struct RegularityReport {
  Variant variant = Variant::Dyadic;
  int delta = 0;              // proxy-depth margin used for centers
  double bandLower = 0.0;     // min ratioLower over E-centered samples
  double bandUpper = 0.0;     // max ratioUpper over all samples
  std::vector<RegularitySample> samples;
};

// Envelope pair for the variant at interval length w (w < 1/2).
double envelope_upper(const BranchingSchedule& s, double width);
double envelope_lower(const BranchingSchedule& s, double width);

// Samples intervals centered at depth-(N+delta) nodes across the scales
// [startLevel+1, depth], with the margin delta chosen so the center proxy
// error is at most |I|/64. Masses are exact; ratios use the variant
// envelopes. Arbitrary-center samples exercise the upper bound only.
RegularityReport regularity_scan(const CantorTree& tree, int depth, int samples_per_scale);

}  // namespace salem

#endif
