#include "salem/dft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace salem {

namespace {
// FFTW planning is not thread-safe.
std::mutex g_fftw_mutex;
}  // namespace

HalfSpectrum dense_indicator_spectrum(const std::vector<uint64_t>& values, uint64_t length) {
  if (length == 0 || length > kMaxDenseLength)
    throw InvariantError("dense transform length " + std::to_string(length) +
                         " outside supported range");
  std::vector<double> data(length, 0.0);
  for (uint64_t v : values) {
    if (v >= length) throw InvariantError("indicator value out of range");
    data[v] += 1.0;
  }
  std::vector<Complex> half = real_fft(data);
  return HalfSpectrum(std::move(half), length);
}

std::vector<Complex> real_fft(const std::vector<double>& data) {
  const size_t n = data.size();
  std::vector<Complex> out(n / 2 + 1);
  {
    std::lock_guard<std::mutex> lock(g_fftw_mutex);
    fftw_plan plan = fftw_plan_dft_r2c_1d((int)n, const_cast<double*>(data.data()),
                                          reinterpret_cast<fftw_complex*>(out.data()),
                                          FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }
  return out;
}

std::vector<double> real_ifft(const std::vector<Complex>& half, size_t n) {
  std::vector<double> out(n);
  std::vector<Complex> tmp(half);
  {
    std::lock_guard<std::mutex> lock(g_fftw_mutex);
    fftw_plan plan = fftw_plan_dft_c2r_1d((int)n, reinterpret_cast<fftw_complex*>(tmp.data()),
                                          out.data(), FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }
  const double scale = 1.0 / (double)n;
  for (double& x : out) x *= scale;
  return out;
}

Complex geometric_phase_sum(uint64_t k, uint64_t length, uint64_t count) {
  k %= length;
  if (k == 0) return Complex((double)count, 0.0);
  // sum_{j<count} w^j with w = e^{-2 pi i k / length}
  const double angle = -2.0 * M_PI * (double)k / (double)length;
  const double half = 0.5 * angle;
  const double denom = std::sin(half);
  // k in (0, length) keeps the denominator away from zero.
  const double num = std::sin(0.5 * angle * (double)count);
  const double mag = num / denom;
  const double rot = half * (double)(count - 1);
  return Complex(mag * std::cos(rot), mag * std::sin(rot));
}

Complex exp_sum(const std::vector<uint64_t>& numerators, uint64_t denominator, double xi) {
  // Split xi into integer and fractional parts; the integer part reduces
  // exactly mod the denominator, the fractional part stays small.
  double xi_int_d;
  const double xi_frac = std::modf(xi, &xi_int_d);
  const bool neg = xi_int_d < 0;
  const uint64_t xi_int = (uint64_t)std::llabs((long long)xi_int_d);
  Complex acc(0.0, 0.0);
  for (uint64_t n : numerators) {
    const uint64_t m = (uint64_t)(((unsigned __int128)(n % denominator) * (xi_int % denominator)) %
                                  denominator);
    long double phase = -2.0L * M_PIl *
                        ((neg ? -(long double)m : (long double)m) / (long double)denominator +
                         (long double)n * (long double)xi_frac / (long double)denominator);
    phase = std::fmod(phase, 2.0L * M_PIl);
    acc += Complex((double)std::cos(phase), (double)std::sin(phase));
  }
  return acc;
}

}  // namespace salem
