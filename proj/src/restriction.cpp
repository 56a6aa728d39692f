#include "salem/restriction.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace salem {

double q_critical(double alpha, double beta) {
  if (!(0.0 < beta && beta <= alpha && alpha < 1.0))
    throw ConfigError("need 0 < beta <= alpha < 1");
  return 2.0 + 4.0 * (1.0 - alpha) / beta;
}

double growth_exponent(double alpha, double beta, double q) {
  return 1.0 - alpha * q / 2.0 + (alpha - beta / 2.0) * (q / 2.0 - 1.0);
}

BigInt additive_energy(const EnergyInstance& inst) {
  const size_t n = inst.points.size();
  if (n == 0) throw ConfigError("empty point set");
  const int r = inst.r;
  double tuples = std::pow((double)n, 2.0 * r);
  if (tuples > 1e8)
    throw ConfigError("instance too large for enumeration; use the convolution route");
  // Odometer over 2r indices.
  std::vector<size_t> idx(2 * r, 0);
  BigInt count = 0;
  for (;;) {
    int64_t lhs = 0, rhs = 0;
    for (int j = 0; j < r; ++j) lhs += (int64_t)inst.points[idx[j]];
    for (int j = r; j < 2 * r; ++j) rhs += (int64_t)inst.points[idx[j]];
    if (lhs == rhs) ++count;
    int pos = 2 * r - 1;
    while (pos >= 0 && ++idx[pos] == n) idx[pos--] = 0;
    if (pos < 0) break;
  }
  return count;
}

BigInt energy_via_convolution(const EnergyInstance& inst) {
  return correlation(self_convolve(inst.points, inst.r), 0);
}

BigInt sumset_enumerate(const std::vector<uint64_t>& points, int r) {
  std::set<uint64_t> sums = {0};
  for (int i = 0; i < r; ++i) {
    std::set<uint64_t> next;
    for (uint64_t s : sums)
      for (uint64_t p : points) next.insert(s + p);
    sums = std::move(next);
  }
  return BigInt(sums.size());
}

namespace {

void require_levels(const BranchingSchedule& s, int l, int n) {
  if (!is_general(s.variant)) throw ConfigError("restriction needs an embedded progression");
  if (!(s.startLevel < l)) throw ConfigError("l must exceed the start level");
  if (!(l < n)) throw ConfigError("need l < N");
  if (n > s.levels) throw ConfigError("N exceeds the schedule");
}

}  // namespace

BigInt sumset_bound(const BranchingSchedule& s, int l, int n, int r) {
  require_levels(s, l, n);
  return pow_big(BigInt(r), (unsigned)(l + 1)) * s.tau_product_int(l) * (s.Psi[n] / s.Psi[l]);
}

BigRat energy_lower_bound(const BranchingSchedule& s, int l, int n, int r) {
  require_levels(s, l, n);
  const BigInt tau_l = s.tau_product_int(l);
  const BigInt points = tau_l * (s.T[n] / s.T[l]);  // #(restricted nodes at level N)
  return BigRat(pow_big(points, (unsigned)(2 * r)) * s.Psi[l],
                pow_big(BigInt(r), (unsigned)(l + 1)) * tau_l * s.Psi[n]);
}

BigRat salem_norm_exact(const CantorTree& tree, int l, int n, int r) {
  const BranchingSchedule& s = tree.schedule;
  require_levels(s, l, n);
  const auto nodes = restricted_nodes(tree, l, n);
  const SelfConvolution g = self_convolve(nodes, r);
  BigRat acc(0);
  for (int64_t m = -(r - 1); m <= r - 1; ++m)
    acc += BigRat(correlation(g, m)) * bspline_central(2 * r, m);
  return acc * BigRat(s.Psi[n], pow_big(s.T[n], (unsigned)(2 * r)));
}

double power_law_tail(double c_dec, double beta, double q, double xi) {
  const double p = q * beta / 2.0;
  if (!(p > 1.0)) return std::numeric_limits<double>::infinity();
  return 2.0 * std::pow(c_dec, q) * std::pow(xi, 1.0 - p) / (p - 1.0);
}

QuadratureResult salem_norm_quadrature(const CantorTree& tree, int l, int n, double q,
                                       double xi_request) {
  const BranchingSchedule& s = tree.schedule;
  require_levels(s, l, n);
  if (!(q >= 2.0)) throw ConfigError("q must be >= 2");
  const auto nodes = restricted_nodes(tree, l, n);
  const uint64_t grid = tree.grid(n);
  const double inv_t = 1.0 / to_double(s.T[n]);
  const bool even_q = std::abs(q - std::round(q)) < 1e-12 && ((int64_t)std::round(q)) % 2 == 0;

  // One full period is both necessary for the periodization tail and enough
  // for the even-q exactness; honor larger requests by periods.
  uint64_t periods = 1;
  if (xi_request > (double)grid) periods = (uint64_t)std::ceil(xi_request / (double)grid);
  const double xi_eff = (double)(periods * grid);

  // Sampling rate beyond the integrand bandwidth (q cycles per unit).
  const uint64_t ovs = (uint64_t)std::max<int64_t>(16, 4 * ((int64_t)std::ceil(q / 2.0) + 1));
  const uint64_t len = ovs * periods * grid;
  if (len > (uint64_t(1) << 27)) throw ConfigError("quadrature grid too large");

  std::vector<double> ind((size_t)len, 0.0);
  for (uint64_t v : nodes) ind[v] = 1.0;
  const auto spec = real_fft(ind);
  ind.clear();
  ind.shrink_to_fit();

  const double h = 1.0 / (double)ovs;
  const uint64_t half = len / 2;
  const double qd = q;
  auto sinc_mag = [](double u) {
    const double pu = M_PI * u;
    return u == 0.0 ? 1.0 : std::abs(std::sin(pu) / pu);
  };
  // Trapezoid and Simpson sums over the len+1 sample points of [0, xi_eff];
  // the endpoint j = len sits on a zero of the cell factor.
  long double sum_trap = 0.0L, sum_simp = 0.0L;
  long double period_power = 0.0L;  // sum over one period of |S|^q
  double c_dec = 0.0;
  const double beta_half = s.beta / 2.0;
  auto accumulate = [&](uint64_t j, double f) {
    const double wt = (j == 0 || j == len) ? 0.5 : 1.0;
    const double ws = (j == 0 || j == len) ? (1.0 / 3.0) : (j % 2 == 1 ? 4.0 / 3.0 : 2.0 / 3.0);
    sum_trap += (long double)(wt * f);
    sum_simp += (long double)(ws * f);
  };
  for (uint64_t j = 0; j <= half; ++j) {
    const double mag = std::abs(spec[j]);
    const double xi1 = (double)j * h;
    const double u1 = xi1 / (double)grid;
    const double a1 = mag * sinc_mag(u1) * inv_t;
    accumulate(j, std::pow(a1, qd));
    if (xi1 >= 2.0) c_dec = std::max(c_dec, a1 * std::pow(xi1, beta_half));
    const uint64_t jm = len - j;  // mirrored bin, same |S|
    if (jm != j && jm != len) {
      const double xi2 = (double)jm * h;
      const double a2 = mag * sinc_mag(xi2 / (double)grid) * inv_t;
      accumulate(jm, std::pow(a2, qd));
      if (xi2 >= 2.0) c_dec = std::max(c_dec, a2 * std::pow(xi2, beta_half));
    }
    const int copies = (j == 0 || (len % 2 == 0 && j == half)) ? 1 : 2;
    period_power += (long double)copies * (long double)std::pow(mag, qd);
  }
  QuadratureResult res;
  res.xi = xi_eff;
  res.decayConstant = c_dec;
  res.value = (double)(2.0L * sum_trap * (long double)h);
  res.errorEstimate = std::abs((double)(2.0L * (sum_trap - sum_simp) * (long double)h));

  // Tail beyond xi_eff.
  const double power_tail = power_law_tail(c_dec, s.beta, q, xi_eff);
  double periodization_tail = std::numeric_limits<double>::infinity();
  if (even_q) {
    // Each further period contributes at most (pi p)^-q times the period
    // power of |S|^q, by |sinc(u)| <= 1/(pi u); for even q the sampled period
    // power equals the period integral exactly.
    const long double period_integral =
        period_power * (long double)h / (long double)periods;
    long double zeta = 0.0L;
    for (int p = (int)periods; p < (int)periods + 100000; ++p)
      zeta += std::pow((long double)M_PI * p, -(long double)q);
    periodization_tail =
        (double)(2.0L * zeta * period_integral * std::pow((long double)inv_t, (long double)q));
  }
  res.tailBound = std::min(power_tail, periodization_tail);
  if (!std::isfinite(res.tailBound)) {
    res.tailDivergent = true;
    res.tailBound = std::numeric_limits<double>::infinity();
  }
  return res;
}

SharpnessCertificate quotient_certificate(const CantorTree& tree, int l, double q, int r) {
  const BranchingSchedule& s = tree.schedule;
  if (!is_general(s.variant)) throw ConfigError("certificates need an embedded progression");
  if (!(l > s.startLevel)) throw ConfigError("l must exceed the start level");
  if (l > tree.depth()) throw ConfigError("l beyond the built depth");
  if (!(q >= 2.0)) throw ConfigError("q must be >= 2");
  if (!(q < 2.0 * r)) throw ConfigError("q must be below 2r");
  if (!((double)r > 1.0 / s.beta)) throw ConfigError("r must exceed 1/beta");
  if (!(2.0 * r > q_critical(s.alpha, s.beta)))
    throw ConfigError("2r must exceed the critical exponent");

  SharpnessCertificate cert;
  cert.l = l;
  cert.r = r;
  cert.q = q;
  const int n = std::min(tree.depth(), l + 3);
  cert.sumsetBound = sumset_bound(s, l, n, r);
  cert.energyLower = energy_lower_bound(s, l, n, r);
  const BigRat c_r = bspline_central(2 * r, 0);
  const BigInt tau_l = s.tau_product_int(l);
  cert.norm2rLower = c_r * BigRat(s.Psi[l] * pow_big(tau_l, (unsigned)(2 * r - 1)),
                                  pow_big(BigInt(r), (unsigned)(l + 1)) *
                                      pow_big(s.T[l], (unsigned)(2 * r)));
  cert.massF = restricted_mass(s, l);
  const long double log_ql =
      (1.0L / (long double)q) *
          (log_rat(c_r) + log_big(s.Psi[l]) + ((long double)q - 1.0L) * log_big(tau_l) -
           (long double)(l + 1) * std::log((long double)r) -
           (long double)q * log_big(s.T[l])) -
      0.5L * log_rat(cert.massF);
  cert.quotientLower = (double)std::exp(log_ql);
  cert.growthExponent = growth_exponent(s.alpha, s.beta, q);
  cert.compensated =
      (double)(log_ql -
               ((long double)cert.growthExponent / (long double)q) * log_big(s.Psi[l]) +
               ((long double)(l + 1) / (long double)q) * std::log((long double)r));
  return cert;
}

std::vector<SharpnessCertificate> sharpness_sweep(const CantorTree& tree, double q, int r,
                                                  int l_max) {
  std::vector<SharpnessCertificate> out;
  for (int l = tree.schedule.startLevel + 1; l <= l_max; ++l)
    out.push_back(quotient_certificate(tree, l, q, r));
  return out;
}

}  // namespace salem
