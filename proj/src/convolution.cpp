#include "salem/convolution.hpp"

#include <algorithm>
#include <cmath>

#include "salem/dft.hpp"

namespace salem {

namespace {

std::vector<int64_t> schoolbook_convolve(const std::vector<int64_t>& a,
                                         const std::vector<int64_t>& b) {
  std::vector<int64_t> out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

size_t next_fft_size(size_t n) {
  // Smooth sizes 2^a * 3^b * 5^c.
  size_t best = 1;
  while (best < n) best <<= 1;
  for (size_t f2 = 1; f2 < 2 * n; f2 <<= 1) {
    for (size_t f3 = f2; f3 < 2 * n; f3 *= 3) {
      for (size_t f5 = f3; f5 < 2 * n; f5 *= 5) {
        if (f5 >= n) best = std::min(best, f5);
      }
    }
  }
  return best;
}

// One linear convolution of integer sequences via real transforms, with a
// rounding budget certifying integer reconstruction.
std::vector<int64_t> fft_convolve(const std::vector<int64_t>& a,
                                  const std::vector<int64_t>& b) {
  const size_t out_n = a.size() + b.size() - 1;
  if (out_n <= 4096 || a.size() <= 8 || b.size() <= 8) return schoolbook_convolve(a, b);

  double norm_a = 0.0, norm_b = 0.0;
  for (int64_t x : a) norm_a += std::abs((double)x);
  for (int64_t x : b) norm_b += std::abs((double)x);
  const size_t n = next_fft_size(out_n);
  const double budget =
      norm_a * norm_b * (3.0 * std::log2((double)n) + 32.0) * std::ldexp(1.0, -53);
  if (budget > 0.25) return schoolbook_convolve(a, b);

  std::vector<double> fa(n, 0.0), fb(n, 0.0);
  for (size_t i = 0; i < a.size(); ++i) fa[i] = (double)a[i];
  for (size_t i = 0; i < b.size(); ++i) fb[i] = (double)b[i];
  auto sa = real_fft(fa);
  const auto sb = real_fft(fb);
  for (size_t i = 0; i < sa.size(); ++i) sa[i] *= sb[i];
  const auto raw = real_ifft(sa, n);
  std::vector<int64_t> out(out_n);
  for (size_t i = 0; i < out_n; ++i) {
    const double r = std::nearbyint(raw[i]);
    if (std::abs(raw[i] - r) > 0.25)
      throw InvariantError("convolution rounding residual exceeded the budget");
    out[i] = (int64_t)r;
  }
  return out;
}

}  // namespace

SelfConvolution self_convolve(const std::vector<uint64_t>& points, int r) {
  if (points.empty()) throw ConfigError("empty point set");
  if (r < 1) throw ConfigError("r must be >= 1");
  const uint64_t mn = *std::min_element(points.begin(), points.end());
  const uint64_t mx = *std::max_element(points.begin(), points.end());
  std::vector<int64_t> ind(mx - mn + 1, 0);
  for (uint64_t p : points) {
    if (ind[p - mn]) throw ConfigError("duplicate point");
    ind[p - mn] = 1;
  }
  std::vector<int64_t> acc = ind;
  for (int i = 1; i < r; ++i) acc = fft_convolve(acc, ind);
  SelfConvolution g;
  g.offset = (uint64_t)r * mn;
  g.counts = std::move(acc);
  return g;
}

BigInt correlation(const SelfConvolution& g, int64_t shift) {
  // sum_z g(z) g(z - shift); only the overlap of supports contributes.
  BigInt acc = 0;
  const int64_t n = (int64_t)g.counts.size();
  unsigned __int128 run = 0;
  for (int64_t i = 0; i < n; ++i) {
    const int64_t j = i - shift;
    if (j < 0 || j >= n) continue;
    run += (unsigned __int128)(uint64_t)g.counts[i] * (uint64_t)g.counts[j];
    if (run > (((unsigned __int128)1) << 120)) {
      acc += BigInt((uint64_t)(run >> 64)) << 64;
      acc += BigInt((uint64_t)run);
      run = 0;
    }
  }
  acc += BigInt((uint64_t)(run >> 64)) << 64;
  acc += BigInt((uint64_t)run);
  return acc;
}

BigRat bspline_central(int order2r, int64_t m) {
  if (order2r < 2 || order2r % 2 != 0) throw ConfigError("order must be even and >= 2");
  const unsigned n = (unsigned)order2r;
  const int64_t r = order2r / 2;
  if (m <= -r || m >= r) return BigRat(0);
  // n-fold self-convolution of the centered unit indicator at integer m:
  // (1/(n-1)!) sum_k (-1)^k C(n,k) (m + n/2 - k)_+^{n-1}.
  BigInt num = 0;
  for (int64_t k = 0; k <= m + r - 1; ++k) {
    const BigInt term = binomial_big(n, (unsigned)k) * pow_big(BigInt(m + r - k), n - 1);
    if (k % 2 == 0)
      num += term;
    else
      num -= term;
  }
  return BigRat(num, factorial_big(n - 1));
}

}  // namespace salem
