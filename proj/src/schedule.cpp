#include "salem/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace salem {

namespace {

constexpr long double kLn2 = 0.6931471805599453094L;

long double log_theta(int64_t t, int64_t psi, double alpha) {
  return std::log((long double)t) - (long double)alpha * std::log((long double)psi);
}

long double log_vartheta(int64_t tau, int64_t psi, double alpha, double beta) {
  return std::log((long double)tau) +
         ((long double)beta / 2.0L - (long double)alpha) * std::log((long double)psi);
}

// Admissible integer minimizing |running + log_step(x) - target|, ties toward
// the smaller integer.
int64_t greedy_pick(int64_t lo, int64_t hi, long double running, long double target,
                    long double log_scale) {
  // log_step(x) = log x + log_scale
  int64_t best = lo;
  long double best_err = std::abs(running + std::log((long double)lo) + log_scale - target);
  for (int64_t x = lo + 1; x <= hi; ++x) {
    const long double err =
        std::abs(running + std::log((long double)x) + log_scale - target);
    if (err < best_err - 1e-18L) {
      best = x;
      best_err = err;
    }
  }
  return best;
}

int64_t psi_of_level(const PhiSpec& phi, int level) {
  // Branching alphabet: ceil(sqrt(phi(2^N))) + 2.
  const long double value = phi(std::exp2((long double)level));
  const long double root = std::sqrt(value);
  long double c = std::ceil(root);
  // Guard the ceiling against representation error at near-integer roots.
  if (c - root > 1.0L - 1e-12L && std::abs(root - std::round(root)) < 1e-12L * root)
    c = std::round(root);
  return (int64_t)c + 2;
}

void finish_products(BranchingSchedule& s) {
  const int n = s.levels;
  s.Psi.assign(n + 2, BigInt(1));
  s.T.assign(n + 1, BigInt(1));
  for (int i = 1; i <= n + 1; ++i) s.Psi[i] = s.Psi[i - 1] * s.psi[i];
  for (int i = 1; i <= n; ++i) s.T[i] = s.T[i - 1] * s.t[i];
  s.theta.assign(n + 1, 0.0);
  s.vartheta.assign(n + 1, 0.0);
  for (int i = 1; i <= n; ++i) {
    s.theta[i] = (double)std::exp(log_theta(s.t[i], s.psi[i], s.alpha));
    if (s.tau[i] > 0)
      s.vartheta[i] = (double)std::exp(log_vartheta(s.tau[i], s.psi[i], s.alpha, s.beta));
  }
  int m = 0;
  while (m + 1 <= n && s.t[m + 1] == 1 && (s.tau[m + 1] <= 1)) ++m;
  s.bandStart = m;
}

}  // namespace

long double BranchingSchedule::theta_target_log(int level) const {
  switch (variant) {
    case Variant::Dyadic:
      return std::log((long double)(level + 3) * kLn2);
    case Variant::Flat:
      return 0.0L;
    case Variant::General:
      return (long double)alpha * std::log((long double)psi[level + 1]) +
             std::log(kLn2 * 3.0L + log_big(Psi[level + 1]));
    case Variant::GeneralSecond:
      return (long double)alpha * std::log((long double)psi[level + 1]);
  }
  return 0.0L;
}

long double BranchingSchedule::vartheta_target_log(int level) const {
  // Progression products track the ambient ones level by level.
  return theta_product_log(level);
}

long double BranchingSchedule::theta_product_log(int level) const {
  long double acc = 0.0L;
  for (int i = 1; i <= level; ++i) acc += log_theta(t[i], psi[i], alpha);
  return acc;
}

long double BranchingSchedule::vartheta_product_log(int level) const {
  long double acc = 0.0L;
  for (int i = 1; i <= level; ++i) {
    if (tau[i] <= 0) throw InvariantError("vartheta product undefined without progressions");
    acc += log_vartheta(tau[i], psi[i], alpha, beta);
  }
  return acc;
}

long double BranchingSchedule::theta_offset(int level) const {
  return theta_product_log(level) - theta_target_log(level);
}

double BranchingSchedule::threshold(int level) const {
  const long double logT = log_big(T[level - 1]);
  const long double log8Psi = kLn2 * 3.0L + log_big(Psi[level]);
  return (double)(4.0L * std::exp(-0.5L * logT) * std::sqrt(log8Psi));
}

double BranchingSchedule::correction(int level) const {
  if (!is_general(variant)) return 0.0;
  BigRat ratio(6 * tau_product_int(level), T[level]);
  return to_double(ratio);
}

bool BranchingSchedule::bernstein_feasible(int level) const {
  const long double lhs = 4.0L * (kLn2 * 3.0L + log_big_upper(Psi[level]));
  const BigInt& t_prev = T[level - 1];
  // T outgrows any representable 4*log(8*Psi) long before conversion
  // precision matters.
  if (t_prev > (BigInt(1) << 200)) return true;
  const long double rhs = (long double)t_prev.convert_to<double>() * (1.0L - 1e-15L);
  return lhs <= rhs;
}

BigInt BranchingSchedule::tau_product_int(int level) const {
  BigInt r = 1;
  for (int i = 1; i <= level; ++i) {
    if (tau[i] <= 0) throw InvariantError("tau product undefined without progressions");
    r *= tau[i];
  }
  return r;
}

BigRat BranchingSchedule::tau_product(int level) const {
  return BigRat(tau_product_int(level));
}

void BranchingSchedule::validate() const {
  const int n = levels;
  if ((int)psi.size() < n + 2 || (int)t.size() < n + 1 || (int)tau.size() < n + 1 ||
      (int)Psi.size() < n + 2 || (int)T.size() < n + 1)
    throw InvariantError("schedule arrays truncated");
  BigInt p = 1, tt = 1;
  for (int i = 1; i <= n + 1; ++i) {
    p *= psi[i];
    if (p != Psi[i]) throw InvariantError("Psi mismatch at level " + std::to_string(i));
  }
  for (int i = 1; i <= n; ++i) {
    tt *= t[i];
    if (tt != T[i]) throw InvariantError("T mismatch at level " + std::to_string(i));
  }
  for (int i = 1; i <= n; ++i) {
    if (is_general(variant)) {
      if (psi[i] < 3) throw InvariantError("psi < 3 at level " + std::to_string(i));
      if (!(1 <= tau[i] && tau[i] <= t[i] && t[i] <= psi[i] - 2))
        throw InvariantError("ordering tau <= t <= psi-2 violated at level " + std::to_string(i));
    } else {
      if (psi[i] != 2 || (t[i] != 1 && t[i] != 2))
        throw InvariantError("dyadic schedule shape violated at level " + std::to_string(i));
    }
    const double th = std::exp((double)log_theta(t[i], psi[i], alpha));
    if (std::abs(th - theta[i]) > 1e-9 * th)
      throw InvariantError("theta mismatch at level " + std::to_string(i));
  }
  if (phi && phi->family == PhiSpec::Family::LogPower) {
    for (int i = 2; i <= n + 1; ++i)
      if (psi[i] < psi[i - 1]) throw InvariantError("psi not nondecreasing");
  }
  for (int i = startLevel + 1; i <= n; ++i) {
    if (!bernstein_feasible(i))
      throw InvariantError("feasibility fails at level " + std::to_string(i));
  }
  // Running product stays in a certified band of the target once it first
  // reaches it; before that it climbs at the maximal admissible rate.
  const long double band = (1.0L + (long double)alpha) * kLn2;
  long double max_step = 0.0L;
  for (int i = 2; i <= n; ++i)
    max_step = std::max(max_step, std::abs(theta_target_log(i) - theta_target_log(i - 1)));
  int cross = 0;
  for (int i = 1; i <= n && !cross; ++i)
    if (std::abs(theta_offset(i)) <= band) cross = i;
  if (cross) {
    for (int i = cross; i <= n; ++i) {
      if (std::abs(theta_offset(i)) > band + max_step + 1e-9L)
        throw InvariantError("theta tracking band violated at level " + std::to_string(i));
    }
  }
}

uint64_t BranchingSchedule::hash() const {
  const std::string j = to_json();
  return fnv1a64(j.data(), j.size());
}

namespace {

BranchingSchedule build_dyadic_like(Variant variant, double alpha, int n_max) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must be in (0,1)");
  if (n_max < 4) throw ConfigError("N_max must be at least 4");
  BranchingSchedule s;
  s.variant = variant;
  s.alpha = alpha;
  s.beta = alpha;
  s.levels = n_max;
  s.psi.assign(n_max + 2, 2);
  s.psi[0] = 0;
  s.t.assign(n_max + 1, 1);
  s.tau.assign(n_max + 1, 0);
  long double running = 0.0L;
  for (int level = 1; level <= n_max; ++level) {
    int64_t pick = 1;
    if (level <= 2) {
      // First two levels stay unbranched so the seed set can sit strictly
      // inside (0,1).
      pick = 1;
    } else {
      long double target;
      if (variant == Variant::Dyadic)
        target = std::log((long double)(level + 3) * kLn2);
      else
        target = 0.0L;
      pick = greedy_pick(1, 2, running, target, -(long double)alpha * kLn2);
    }
    s.t[level] = pick;
    running += log_theta(pick, 2, alpha);
  }
  finish_products(s);
  s.startLevel = min_start_level(s);
  return s;
}

}  // namespace

BranchingSchedule build_dyadic_schedule(double alpha, int n_max) {
  return build_dyadic_like(Variant::Dyadic, alpha, n_max);
}

BranchingSchedule build_flat_schedule(double alpha, int n_max) {
  return build_dyadic_like(Variant::Flat, alpha, n_max);
}

BranchingSchedule build_general_schedule(double alpha, double beta, const PhiSpec& phi,
                                         bool second_part, int n_max) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must be in (0,1)");
  if (!(beta > 0.0 && beta <= alpha)) throw ConfigError("beta must be in (0, alpha]");
  if (second_part && !(beta < alpha))
    throw ConfigError("second-part variant requires beta < alpha");
  if (n_max < 4) throw ConfigError("N_max must be at least 4");
  phi.validate();

  BranchingSchedule s;
  s.variant = second_part ? Variant::GeneralSecond : Variant::General;
  s.alpha = alpha;
  s.beta = beta;
  s.phi = phi;
  s.levels = n_max;
  s.psi.assign(n_max + 2, 0);
  s.t.assign(n_max + 1, 1);
  s.tau.assign(n_max + 1, 1);
  for (int i = 1; i <= n_max + 1; ++i) {
    s.psi[i] = psi_of_level(phi, i);
    if (s.psi[i] < 3)
      throw InfeasibleError("branching number below 3 at level " + std::to_string(i) +
                            "; phi grows too slowly for an isolated progression");
  }
  // Products of psi are independent of t, so targets are available upfront.
  s.Psi.assign(n_max + 2, BigInt(1));
  for (int i = 1; i <= n_max + 1; ++i) s.Psi[i] = s.Psi[i - 1] * s.psi[i];

  long double run_theta = 0.0L, run_vartheta = 0.0L;
  for (int level = 1; level <= n_max; ++level) {
    const int64_t psiN = s.psi[level];
    const long double theta_target =
        second_part ? (long double)alpha * std::log((long double)s.psi[level + 1])
                    : (long double)alpha * std::log((long double)s.psi[level + 1]) +
                          std::log(kLn2 * 3.0L + log_big(s.Psi[level + 1]));
    const int64_t tmax = psiN - 2;
    const int64_t tpick = greedy_pick(1, tmax, run_theta, theta_target,
                                      -(long double)alpha * std::log((long double)psiN));
    s.t[level] = tpick;
    run_theta += log_theta(tpick, psiN, alpha);

    // Progression branching tracks the ambient product at the beta/2 scale.
    const long double vt_scale =
        ((long double)beta / 2.0L - (long double)alpha) * std::log((long double)psiN);
    const int64_t taupick = greedy_pick(1, tpick, run_vartheta, run_theta, vt_scale);
    s.tau[level] = taupick;
    run_vartheta += log_vartheta(taupick, psiN, alpha, beta);
  }
  finish_products(s);
  s.startLevel = min_start_level(s);
  return s;
}

int min_start_level(const BranchingSchedule& s) {
  int last_bad = 0;
  for (int level = 2; level <= s.levels; ++level) {
    if (!s.bernstein_feasible(level)) last_bad = level;
  }
  const int n0 = std::max(2, last_bad);
  if (n0 >= s.levels)
    throw InfeasibleError("feasibility fails through level " + std::to_string(last_bad) +
                          "; increase N_max");
  return n0;
}

double rounding_drift_log(double alpha, uint64_t L) {
  if (L < 1) throw ConfigError("L must be >= 1");
  long double acc = 0.0L;
  for (uint64_t n = 1; n <= L; ++n) {
    const long double v = std::exp((long double)alpha * std::log((long double)n));
    long double c = std::ceil(v);
    const long double nearest = std::round(v);
    if (std::abs(v - nearest) <= 1e-10L * v) c = nearest;
    acc += std::log(c) - (long double)alpha * std::log((long double)n);
  }
  return (double)acc;
}

}  // namespace salem
