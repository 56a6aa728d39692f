#ifndef SALEM_SCHEDULE_HPP
#define SALEM_SCHEDULE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "salem/phi.hpp"
#include "salem/types.hpp"

namespace salem {

// Per-level branching parameters for one construction variant. Arrays are
// 1-indexed (index 0 is a placeholder) and immutable once built; safe to
// share across threads.
struct BranchingSchedule {
  Variant variant = Variant::Dyadic;
  double alpha = 0.5;
  double beta = 0.5;  // == alpha for dyadic/flat
  std::optional<PhiSpec> phi;
  int levels = 0;  // N_max

  std::vector<int64_t> psi;       // branching alphabet size per level (+1 lookahead entry)
  std::vector<BigInt> Psi;        // running product of psi
  std::vector<int64_t> t;         // selected children per node
  std::vector<int64_t> tau;       // progression children per node (0 sentinel)
  std::vector<double> theta;      // t_N * psi(N)^-alpha
  std::vector<double> vartheta;   // tau_N * psi(N)^(beta/2-alpha)
  std::vector<BigInt> T;          // running product of t
  int bandStart = 0;              // M: last level of the forced t=tau=1 prefix
  int startLevel = 0;             // N0: deterministic seed depth

  // Variant tracking targets, in log space.
  long double theta_target_log(int level) const;     // target for log(theta_1..theta_N)
  long double vartheta_target_log(int level) const;  // target for log(vartheta_1..vartheta_N)
  long double theta_product_log(int level) const;
  long double vartheta_product_log(int level) const;

  // Running-product offset from the target at a level.
  long double theta_offset(int level) const;

  // Exponential-sum acceptance threshold 4*T_{N-1}^{-1/2}*log^{1/2}(8*Psi(N)).
  double threshold(int level) const;
  // Progression modification allowance 6*tau_1..tau_N/(t_1..t_N); 0 without
  // progressions.
  double correction(int level) const;

  bool bernstein_feasible(int level) const;  // 4*log(8*Psi(N)) <= T_{N-1}

  BigRat tau_product(int level) const;   // tau_1..tau_N as exact integer ratio over 1
  BigInt tau_product_int(int level) const;

  // Recomputes products and asserts every structural invariant; throws
  // InvariantError with a description on failure.
  void validate() const;

  uint64_t hash() const;
  std::string to_json() const;
  static BranchingSchedule from_json(const std::string& text);
};

// Dyadic schedule with running product tracking log(2^N * 8).
BranchingSchedule build_dyadic_schedule(double alpha, int n_max);

// Dyadic schedule with running product tracking 1.
BranchingSchedule build_flat_schedule(double alpha, int n_max);

// Growing-branching schedule with embedded progression parameters.
BranchingSchedule build_general_schedule(double alpha, double beta, const PhiSpec& phi,
                                         bool second_part, int n_max);

// Least N0 with the feasibility inequality holding on (N0, N_max]; >= 2.
// Throws InfeasibleError naming the level when none exists.
int min_start_level(const BranchingSchedule& s);

// log of prod_{N<=L} ceil(N^alpha)/N^alpha; the accumulated rounding of an
// integerized power schedule.
double rounding_drift_log(double alpha, uint64_t L);

}  // namespace salem

#endif
