#ifndef SALEM_RESTRICTION_HPP
#define SALEM_RESTRICTION_HPP

#include <cstdint>
#include <vector>

#include "salem/convolution.hpp"
#include "salem/fourier.hpp"
#include "salem/tree.hpp"
#include "salem/types.hpp"

namespace salem {

// Critical exponent 2 + 4(1-alpha)/beta of the extension estimate.
double q_critical(double alpha, double beta);

// Growth exponent 1 - alpha*q/2 + (alpha - beta/2)(q/2 - 1); positive exactly
// below the critical q.
double growth_exponent(double alpha, double beta, double q);

struct EnergyInstance {
  std::vector<uint64_t> points;  // sorted numerators
  int r = 1;
};

// Number of 2r-tuples with equal half sums, by direct enumeration.
// Guarded at 1e8 tuples; larger instances go through the convolution route.
BigInt additive_energy(const EnergyInstance& inst);

// Same count as the l2 norm of the r-fold self-convolution, exact.
BigInt energy_via_convolution(const EnergyInstance& inst);

// Exact cardinality of the r-fold sum set, by enumeration (small instances).
BigInt sumset_enumerate(const std::vector<uint64_t>& points, int r);

// r^{l+1} tau_1..tau_l Psi(N)/Psi(l): digit-representation bound on the sum
// set of the restricted nodes.
BigInt sumset_bound(const BranchingSchedule& s, int l, int n, int r);

// (tau_1..tau_l t_{l+1}..t_N)^{2r} Psi(l) / (r^{l+1} tau_1..tau_l Psi(N)).
BigRat energy_lower_bound(const BranchingSchedule& s, int l, int n, int r);

// Exact 2r-th power of the L^{2r} norm of the transform of the restricted
// measure: (Psi(N)/T_N^{2r}) sum_{|m|<r} corr(m) B_{2r}(m), where corr counts
// signed-sum coincidences of the restricted nodes.
BigRat salem_norm_exact(const CantorTree& tree, int l, int n, int r);

struct QuadratureResult {
  double value = 0.0;      // integral of |transform|^q over |xi| <= Xi
  double tailBound = 0.0;  // certified bound for the remainder
  double errorEstimate = 0.0;
  double decayConstant = 0.0;  // measured sup of |transform| * |xi|^{beta/2}
  double xi = 0.0;             // integration half-range actually used
  bool tailDivergent = false;  // q*beta/2 <= 1 and no even-q certificate
};

// Numerical L^q norm (q-th power) of the restricted transform: uniform
// sampling at a rate beyond the integrand bandwidth (evaluated by one padded
// transform), trapezoid weights, and a certified tail. For even q the period
// sum makes the quadrature exact up to the tail; generic q uses the measured
// power-law envelope.
QuadratureResult salem_norm_quadrature(const CantorTree& tree, int l, int n, double q,
                                       double xi_request = 0.0);

// Power-law tail integral 2 * C^q * Xi^{1-q*beta/2} / (q*beta/2 - 1).
double power_law_tail(double c_dec, double beta, double q, double xi);

struct SharpnessCertificate {
  int l = 0;
  int r = 0;
  double q = 0.0;
  BigInt sumsetBound;
  BigRat energyLower;
  BigRat norm2rLower;
  BigRat massF;
  double quotientLower = 0.0;
  double growthExponent = 0.0;
  // log quotient - (e(q)/q) log Psi(l) + ((l+1)/q) log r; bounded in l when
  // the products track their targets.
  double compensated = 0.0;
};

// Assembles the certificate chain at one level from schedule quantities.
SharpnessCertificate quotient_certificate(const CantorTree& tree, int l, double q, int r);

// Certificates for l = startLevel+1 .. l_max.
std::vector<SharpnessCertificate> sharpness_sweep(const CantorTree& tree, double q, int r,
                                                  int l_max);

}  // namespace salem

#endif
