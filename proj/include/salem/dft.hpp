#ifndef SALEM_DFT_HPP
#define SALEM_DFT_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "salem/types.hpp"

namespace salem {

// Half spectrum of a real indicator vector: bins 0..n/2 of
// S(k) = sum_j x_j e^{-2 pi i j k / n}. Negative/reflected bins follow by
// conjugate symmetry.
class HalfSpectrum {
 public:
  HalfSpectrum() = default;
  HalfSpectrum(std::vector<Complex> bins, uint64_t length)
      : bins_(std::move(bins)), length_(length) {}

  uint64_t length() const { return length_; }

  Complex at(uint64_t k) const {
    k %= length_;
    const uint64_t half = length_ / 2;
    if (k <= half) return bins_[k];
    return std::conj(bins_[length_ - k]);
  }

  const std::vector<Complex>& bins() const { return bins_; }

 private:
  std::vector<Complex> bins_;
  uint64_t length_ = 0;
};

// Largest transform length the dense verification is allowed to allocate.
constexpr uint64_t kMaxDenseLength = uint64_t(1) << 26;

// Dense transform of the indicator of `values` (each < length, each counted
// once) over the cyclic group of order `length`.
HalfSpectrum dense_indicator_spectrum(const std::vector<uint64_t>& values, uint64_t length);

// Dense transform of an arbitrary real vector (used by the exact integer
// convolutions).
std::vector<Complex> real_fft(const std::vector<double>& data);
std::vector<double> real_ifft(const std::vector<Complex>& half, size_t n);

// sum_{j<count} e^{-2 pi i j k / length}, closed form.
Complex geometric_phase_sum(uint64_t k, uint64_t length, uint64_t count);

// Direct exponential sum over numerators/denominator at a real frequency.
// Uses exact modular reduction for the integer part of xi.
Complex exp_sum(const std::vector<uint64_t>& numerators, uint64_t denominator,
                double xi);

}  // namespace salem

#endif
