#include "salem/fourier.hpp"

#include <algorithm>
#include <cmath>

namespace salem {

Complex unit_cell_factor(double u) {
  double sinc;
  const double pu = M_PI * u;
  if (std::abs(u) < 1e-8)
    sinc = 1.0 - pu * pu / 6.0;
  else
    sinc = std::sin(pu) / pu;
  return Complex(std::cos(pu), -std::sin(pu)) * sinc;
}

StepMeasure::StepMeasure(const CantorTree& tree, int level) : tree_(&tree), level_(level) {
  if (level < 0 || level > tree.depth()) throw ConfigError("level not built");
}

uint64_t StepMeasure::grid() const { return tree_->grid(level_); }

const BigInt& StepMeasure::count() const { return tree_->schedule.T[level_]; }

BigRat StepMeasure::total_mass() const {
  return BigRat(BigInt(tree_->at(level_).numerators.size()), count());
}

Complex StepMeasure::fourier(double xi) const {
  const uint64_t q = grid();
  const Complex s = exp_sum(tree_->at(level_).numerators, q, xi);
  return s * unit_cell_factor(xi / (double)q) / to_double(count());
}

std::vector<Complex> StepMeasure::fourier_dense(uint64_t kmax) const {
  const uint64_t q = grid();
  if (kmax > q / 2)
    throw ConfigError("dense coefficients limited to half the period");
  const HalfSpectrum spec = dense_indicator_spectrum(tree_->at(level_).numerators, q);
  const double inv_t = 1.0 / to_double(count());
  std::vector<Complex> out(kmax + 1);
  for (uint64_t k = 0; k <= kmax; ++k)
    out[k] = spec.bins()[k] * unit_cell_factor((double)k / (double)q) * inv_t;
  return out;
}

BigRat StepMeasure::cdf(const BigRat& x) const {
  if (x <= 0) return BigRat(0);
  if (x >= 1) return BigRat(1);
  const uint64_t q = grid();
  const auto& nums = tree_->at(level_).numerators;
  const BigRat scaled = x * BigInt(q);  // in (0, q)
  const BigInt fl = boost::multiprecision::numerator(scaled) /
                    boost::multiprecision::denominator(scaled);
  const uint64_t floor_u = fl.convert_to<uint64_t>();
  // A cell [a, a+1)/q lies entirely below x iff a < scaled and a != floor
  // when scaled is fractional; both cases reduce to a < floor_u ... plus the
  // straddled cell handled separately.
  const uint64_t full =
      (uint64_t)(std::lower_bound(nums.begin(), nums.end(), floor_u) - nums.begin());
  BigRat mass(BigInt(full), count());
  if (BigRat(fl) != scaled && std::binary_search(nums.begin(), nums.end(), floor_u))
    mass += (scaled - BigRat(fl)) / count();
  return mass;
}

DecayEnvelope variant_envelope(Variant v) {
  return v == Variant::Flat ? DecayEnvelope::PowerSqrtLog : DecayEnvelope::PurePower;
}

double variant_decay_exponent(const BranchingSchedule& s) {
  return is_general(s.variant) ? s.beta / 2.0 : s.alpha / 2.0;
}

double DecayReport::envelope_at(uint64_t k) const {
  const double kd = (double)k;
  double env = std::pow(kd, -exponent);
  if (envelope == DecayEnvelope::PowerSqrtLog) env *= std::sqrt(std::log(kd));
  return env;
}

double DecayReport::recompute_sup() const {
  double sup = 0.0;
  for (const auto& [k, v] : perK) sup = std::max(sup, v / envelope_at(k));
  return sup;
}

DecayReport decay_profile(const StepMeasure& m, uint64_t kmax) {
  DecayReport rep;
  const BranchingSchedule& s = m.tree().schedule;
  rep.envelope = variant_envelope(s.variant);
  rep.exponent = variant_decay_exponent(s);
  rep.level = m.level();
  rep.seed = m.tree().seed;
  rep.kmin = rep.envelope == DecayEnvelope::PowerSqrtLog ? 2 : 1;
  const auto coef = m.fourier_dense(kmax);
  for (uint64_t k = rep.kmin; k <= kmax; ++k) rep.perK.emplace_back(k, std::abs(coef[k]));
  rep.supConstant = rep.recompute_sup();
  return rep;
}

double tail_certificate(const BranchingSchedule& s, int level, int64_t k) {
  if (k == 0) throw ConfigError("tail certificate needs k != 0");
  const double kabs = std::abs((double)k);
  auto level_bound = [&](int n) { return s.threshold(n) + s.correction(n); };
  double acc = 0.0;
  for (int n = level + 1; n <= s.levels; ++n) {
    const double psi_n = std::exp((double)log_big(s.Psi[n]));
    acc += std::min(1.0, psi_n / kabs) * level_bound(n);
  }
  // Geometric closure past the schedule end.
  const double last = level_bound(s.levels);
  const double prev = level_bound(s.levels - 1);
  const double rho = last / prev;
  if (!(rho < 1.0))
    throw InvariantError("per-level bounds not decreasing; no geometric closure");
  acc += last * rho / (1.0 - rho);
  return acc;
}

std::vector<uint64_t> restricted_nodes(const CantorTree& tree, int l, int n) {
  const BranchingSchedule& s = tree.schedule;
  if (!is_general(s.variant)) throw ConfigError("restriction needs an embedded progression");
  if (!(s.startLevel < l && l < n && n <= tree.depth()))
    throw ConfigError("need startLevel < l < N <= depth");
  const BigInt ratio_big = s.Psi[n] / s.Psi[l];
  const uint64_t ratio = ratio_big.convert_to<uint64_t>();
  const auto& prog = tree.at(l).progression;
  std::vector<uint64_t> out;
  for (uint64_t x : tree.at(n).numerators) {
    if (std::binary_search(prog.begin(), prog.end(), x / ratio)) out.push_back(x);
  }
  return out;
}

Complex restricted_fourier(const CantorTree& tree, int l, int n, double xi) {
  const auto nodes = restricted_nodes(tree, l, n);
  const uint64_t q = tree.grid(n);
  const Complex s = exp_sum(nodes, q, xi);
  return s * unit_cell_factor(xi / (double)q) / to_double(tree.schedule.T[n]);
}

BigRat restricted_mass(const BranchingSchedule& s, int l) {
  return BigRat(s.tau_product_int(l), s.T[l]);
}

}  // namespace salem
