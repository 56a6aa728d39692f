#include "salem/regularity.hpp"

#include <algorithm>
#include <cmath>

namespace salem {

namespace {

BigInt floor_rat(const BigRat& x) {
  BigInt q = boost::multiprecision::numerator(x) / boost::multiprecision::denominator(x);
  if (BigRat(q) > x) --q;  // fix toward negative infinity
  return q;
}

bool is_integer(const BigRat& x) {
  return boost::multiprecision::denominator(x) == 1;
}

}  // namespace

BigRat measure_of_interval(const CantorTree& tree, int level, const IntervalQuery& I) {
  if (!(I.halfwidth > 0)) throw ConfigError("halfwidth must be positive");
  const uint64_t q = tree.grid(level);
  const auto& nums = tree.at(level).numerators;
  const BigRat lo = I.lo() * BigInt(q);
  const BigRat hi = I.hi() * BigInt(q);
  if (hi <= 0 || lo >= BigRat(BigInt(q))) return BigRat(0);
  // Cells meeting (lo, hi): numerators in (lo-1, hi).
  const BigInt first_b = floor_rat(lo);  // cell containing lo (or just below)
  const uint64_t first = first_b < 0 ? 0 : first_b.convert_to<uint64_t>();
  auto it = std::lower_bound(nums.begin(), nums.end(), first);
  BigRat acc(0);
  const BigInt& total = tree.schedule.T[level];
  for (; it != nums.end() && BigRat(BigInt(*it)) < hi; ++it) {
    const BigRat a(BigInt(*it));
    const BigRat cell_lo = a > lo ? a : lo;
    const BigRat cell_hi = (a + 1) < hi ? BigRat(a + 1) : hi;
    if (cell_hi > cell_lo) acc += (cell_hi - cell_lo) / total;
  }
  return acc;
}

int aligned_level(const CantorTree& tree, const IntervalQuery& I) {
  for (int level = 0; level <= tree.depth(); ++level) {
    const BigInt q = tree.schedule.Psi[level];
    if (is_integer(I.lo() * q) && is_integer(I.hi() * q)) return level;
  }
  return -1;
}

BigRat limit_measure_of_interval(const CantorTree& tree, const IntervalQuery& I) {
  const int level = aligned_level(tree, I);
  if (level < 0)
    throw ConfigError(
        "endpoints not grid-aligned at any built level; use measure_of_interval with a depth");
  return limit_measure_at_level(tree, I, level);
}

BigRat limit_measure_at_level(const CantorTree& tree, const IntervalQuery& I, int level) {
  const uint64_t q = tree.grid(level);
  const BigRat lo = I.lo() * BigInt(q);
  const BigRat hi = I.hi() * BigInt(q);
  if (!is_integer(lo) || !is_integer(hi))
    throw ConfigError("endpoints not aligned at level " + std::to_string(level));
  const auto& nums = tree.at(level).numerators;
  // Count cells [a, a+1] contained in the interval.
  BigInt count = 0;
  auto it = std::lower_bound(nums.begin(), nums.end(),
                             lo <= 0 ? 0 : floor_rat(lo).convert_to<uint64_t>());
  for (; it != nums.end(); ++it) {
    const BigRat a(BigInt(*it));
    if (a < lo) continue;
    if (a + 1 > hi) break;
    ++count;
  }
  return BigRat(count, tree.schedule.T[level]);
}

double envelope_upper(const BranchingSchedule& s, double width) {
  const double w_alpha = std::pow(width, s.alpha);
  switch (s.variant) {
    case Variant::Dyadic:
    case Variant::General:
      return w_alpha / std::log(1.0 / width);
    case Variant::Flat:
    case Variant::GeneralSecond:
      return w_alpha;
  }
  return w_alpha;
}

double envelope_lower(const BranchingSchedule& s, double width) {
  const double w_alpha = std::pow(width, s.alpha);
  switch (s.variant) {
    case Variant::Dyadic:
      return w_alpha / std::log(1.0 / width);
    case Variant::Flat:
      return w_alpha;
    case Variant::General:
      return w_alpha / ((double)(*s.phi)((long double)(1.0 / width)) * std::log(1.0 / width));
    case Variant::GeneralSecond:
      return w_alpha / (double)(*s.phi)((long double)(1.0 / width));
  }
  return w_alpha;
}

namespace {

// Margin making the center proxy error at most |I|/64:
// Psi(N+delta)/Psi(N+1) >= 32 for every scanned scale.
int proxy_margin(const BranchingSchedule& s, int min_scale, int max_scale) {
  int delta = 2;
  for (;; ++delta) {
    bool ok = true;
    for (int n = min_scale; n <= max_scale && ok; ++n) {
      if (n + delta > s.levels) {
        ok = false;
        break;
      }
      if (s.Psi[n + delta] < 32 * s.Psi[n + 1]) ok = false;
    }
    if (ok) return delta;
    if (delta > s.levels) throw ConfigError("schedule too short for the proxy margin");
  }
}

}  // namespace

RegularityReport regularity_scan(const CantorTree& tree, int depth, int samples_per_scale) {
  const BranchingSchedule& s = tree.schedule;
  RegularityReport rep;
  rep.variant = s.variant;
  const int max_scale = depth;
  rep.delta = proxy_margin(s, s.startLevel + 1, max_scale);
  if (max_scale + rep.delta > tree.depth())
    throw ConfigError("tree too shallow: need depth " + std::to_string(max_scale + rep.delta));

  double band_lower = std::numeric_limits<double>::infinity();
  double band_upper = 0.0;
  for (int scale = s.startLevel + 1; scale <= max_scale; ++scale) {
    const int deep = scale + rep.delta;
    const auto& deep_nodes = tree.at(deep).numerators;
    const auto& next_nodes = tree.at(scale + 1).numerators;
    const BigInt q_next = s.Psi[scale + 1];
    const BigInt q_deep = s.Psi[deep];
    const int64_t psi_next = s.psi[scale + 1];
    // Halfwidths spanning [1/Psi(N+1), 1/Psi(N)) as exact multiples of the
    // fine cell: multipliers 1, (psi+3)/4, (psi+1)/2, (4psi-1)/4, all < psi.
    const std::vector<BigRat> halfwidths = {
        BigRat(1, q_next), BigRat(psi_next + 3, 4 * q_next),
        BigRat(psi_next + 1, 2 * q_next), BigRat(4 * psi_next - 1, 4 * q_next)};
    const int centers = std::max(1, samples_per_scale / (int)halfwidths.size());
    for (int ci = 0; ci < centers; ++ci) {
      const size_t idx = deep_nodes.size() <= 1
                             ? 0
                             : (size_t)((__int128)ci * (deep_nodes.size() - 1) /
                                        std::max(1, centers - 1));
      const BigRat center(BigInt(deep_nodes[idx]), q_deep);
      for (const BigRat& h : halfwidths) {
        RegularitySample sample;
        sample.scale = scale;
        sample.center = center;
        sample.halfwidth = h;
        sample.eCentered = true;
        IntervalQuery I{center, h};
        sample.mass = measure_of_interval(tree, tree.depth(), I);
        const double width = to_double(I.width());
        sample.ratioLower = to_double(sample.mass) / envelope_lower(s, width);
        sample.ratioUpper = to_double(sample.mass) / envelope_upper(s, width);
        // One contained cell: the level-(N+1) ancestor of the center node.
        const uint64_t ancestor =
            deep_nodes[idx] / (q_deep / q_next).convert_to<uint64_t>();
        const BigRat cell_lo(BigInt(ancestor), q_next);
        const BigRat cell_hi(BigInt(ancestor) + 1, q_next);
        sample.containedCellOk =
            std::binary_search(next_nodes.begin(), next_nodes.end(), ancestor) &&
            cell_lo >= I.lo() && cell_hi <= I.hi() &&
            sample.mass * s.T[scale + 1] >= 1;
        band_lower = std::min(band_lower, sample.ratioLower);
        band_upper = std::max(band_upper, sample.ratioUpper);
        rep.samples.push_back(std::move(sample));
      }
    }
    // Arbitrary centers: upper bound holds for every interval.
    for (int ai = 1; ai <= 3; ++ai) {
      RegularitySample sample;
      sample.scale = scale;
      sample.center = BigRat(2 * ai - 1, 2 * ai);  // scattered in (0,1)
      sample.halfwidth = BigRat(1, q_next);
      sample.eCentered = false;
      IntervalQuery I{sample.center, sample.halfwidth};
      sample.mass = measure_of_interval(tree, tree.depth(), I);
      const double width = to_double(I.width());
      sample.ratioLower = 0.0;
      sample.ratioUpper = to_double(sample.mass) / envelope_upper(s, width);
      band_upper = std::max(band_upper, sample.ratioUpper);
      rep.samples.push_back(std::move(sample));
    }
  }
  rep.bandLower = band_lower;
  rep.bandUpper = band_upper;
  return rep;
}

}  // namespace salem
