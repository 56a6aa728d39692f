#ifndef SALEM_FOURIER_HPP
#define SALEM_FOURIER_HPP

#include <cstdint>
#include <vector>

#include "salem/tree.hpp"
#include "salem/types.hpp"

namespace salem {

// Fourier transform of the normalized unit-cell density: K(u) =
// e^{-pi i u} sin(pi u)/(pi u), K(0) = 1.
Complex unit_cell_factor(double u);

// View of one tree level as the uniform probability measure on its cells.
class StepMeasure {
 public:
  StepMeasure(const CantorTree& tree, int level);

  int level() const { return level_; }
  const CantorTree& tree() const { return *tree_; }
  uint64_t grid() const;
  const BigInt& count() const;  // T_N

  BigRat total_mass() const;  // exactly 1

  Complex fourier(double xi) const;
  std::vector<Complex> fourier_dense(uint64_t kmax) const;  // k = 0..kmax

  // Exact cumulative distribution at a rational point.
  BigRat cdf(const BigRat& x) const;

 private:
  const CantorTree* tree_;
  int level_;
};

enum class DecayEnvelope { PurePower, PowerSqrtLog };

struct DecayReport {
  DecayEnvelope envelope = DecayEnvelope::PurePower;
  double exponent = 0.0;  // alpha/2 or beta/2
  int level = 0;
  uint64_t seed = 0;
  uint64_t kmin = 1;
  std::vector<std::pair<uint64_t, double>> perK;  // (k, |mu_hat|)
  double supConstant = 0.0;

  double envelope_at(uint64_t k) const;
  double recompute_sup() const;
};

DecayEnvelope variant_envelope(Variant v);
double variant_decay_exponent(const BranchingSchedule& s);

// |mu_hat_N(k)| for k in [kmin(envelope), kmax] via one dense transform.
DecayReport decay_profile(const StepMeasure& m, uint64_t kmax);

// Upper bound for |mu_hat(k) - mu_hat_N(k)| from the per-level acceptance
// thresholds, with a geometric closure term past the schedule end.
double tail_certificate(const BranchingSchedule& s, int level, int64_t k);

// Level-N nodes descending from the level-l progression.
std::vector<uint64_t> restricted_nodes(const CantorTree& tree, int l, int n);

// Fourier transform of the indicator-restricted measure f_l mu_N.
Complex restricted_fourier(const CantorTree& tree, int l, int n, double xi);

// mu_N(F_l) = tau_1..tau_l / t_1..t_l, exact.
BigRat restricted_mass(const BranchingSchedule& s, int l);

}  // namespace salem

#endif
