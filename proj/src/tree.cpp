#include "salem/tree.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "salem/rng.hpp"

namespace salem {

namespace {

uint64_t to_u64_checked(const BigInt& v, const char* what) {
  if (v < 0 || v > BigInt(std::numeric_limits<uint64_t>::max()))
    throw InvariantError(std::string(what) + " does not fit in 64 bits");
  return v.convert_to<uint64_t>();
}

bool contains_sorted(const std::vector<uint64_t>& v, uint64_t x) {
  return std::binary_search(v.begin(), v.end(), x);
}

// Digit selection for one progression parent: splice the protected digits in,
// evict the largest unprotected ones, and keep the guard digits 0 and tau+1
// out so the progression cells have empty neighbors.
std::vector<int64_t> isolate_digits(std::vector<int64_t> digits, int64_t t, int64_t tau,
                                    int64_t psi) {
  std::set<int64_t> s(digits.begin(), digits.end());
  for (int64_t d = 1; d <= tau; ++d) s.insert(d);
  auto is_protected = [&](int64_t d) { return d >= 1 && d <= tau; };
  while ((int64_t)s.size() > t) {
    auto it = s.rbegin();
    while (it != s.rend() && is_protected(*it)) ++it;
    if (it == s.rend()) throw InvariantError("cannot restore cardinality: tau > t");
    s.erase(std::next(it).base());
  }
  for (int64_t guard : {int64_t(0), tau + 1}) {
    if (s.count(guard)) {
      s.erase(guard);
      int64_t repl = -1;
      for (int64_t d = psi - 1; d > tau + 1; --d) {
        if (!s.count(d)) {
          repl = d;
          break;
        }
      }
      if (repl < 0) throw InvariantError("no free digit outside the guarded range");
      s.insert(repl);
    }
  }
  if ((int64_t)s.size() != t) throw InvariantError("digit set cardinality broken");
  return std::vector<int64_t>(s.begin(), s.end());
}

// sup over one period of the normalized chi-sum, from the dense child and
// parent spectra.
double chi_sup_dense(const HalfSpectrum& child, const HalfSpectrum& parent, int64_t psi,
                     int64_t t, double inv_t_prev) {
  const uint64_t n = child.length();
  const uint64_t half = n / 2;
  const double inv_t = 1.0 / (double)t;
  const double inv_psi = 1.0 / (double)psi;
  double sup = 0.0;
  for (uint64_t k = 0; k <= half; ++k) {
    const Complex d = geometric_phase_sum(k, n, (uint64_t)psi);
    const Complex chi = child.bins()[k] * inv_t - d * parent.at(k) * inv_psi;
    sup = std::max(sup, std::abs(chi));
  }
  return sup * inv_t_prev;
}

std::vector<uint64_t> candidate_numerators(const std::vector<uint64_t>& parents,
                                           const std::vector<uint32_t>& xdraws, int64_t psi,
                                           int64_t t) {
  std::vector<uint64_t> out;
  out.reserve(parents.size() * (size_t)t);
  for (size_t i = 0; i < parents.size(); ++i) {
    const uint64_t base = parents[i] * (uint64_t)psi;
    if (t == psi) {
      for (int64_t d = 0; d < psi; ++d) out.push_back(base + (uint64_t)d);
      continue;
    }
    // Digits x, x+1, ..., x+t-1 mod psi, emitted in increasing order.
    const int64_t x = xdraws[i];
    if (x + t <= psi) {
      for (int64_t j = 0; j < t; ++j) out.push_back(base + (uint64_t)(x + j));
    } else {
      const int64_t wrap = x + t - psi;
      for (int64_t d = 0; d < wrap; ++d) out.push_back(base + (uint64_t)d);
      for (int64_t d = x; d < psi; ++d) out.push_back(base + (uint64_t)d);
    }
  }
  return out;
}

struct LevelBuildResult {
  std::vector<uint64_t> numerators;
  std::vector<uint64_t> progression;
};

// Applies the progression modification to the candidate sets of the given
// parents and assembles the final sorted level.
LevelBuildResult splice_progression(const std::vector<uint64_t>& parents,
                                    const std::vector<uint64_t>& parent_progression,
                                    const std::vector<uint64_t>& candidates, int64_t psi,
                                    int64_t t, int64_t tau) {
  LevelBuildResult r;
  r.numerators.reserve(candidates.size());
  r.progression.reserve(parent_progression.size() * (size_t)std::max<int64_t>(tau, 0));
  size_t ci = 0;
  for (size_t i = 0; i < parents.size(); ++i) {
    const uint64_t base = parents[i] * (uint64_t)psi;
    const bool in_prog =
        !parent_progression.empty() && contains_sorted(parent_progression, parents[i]);
    if (!in_prog) {
      for (int64_t j = 0; j < t; ++j) r.numerators.push_back(candidates[ci + j]);
    } else {
      std::vector<int64_t> digits(t);
      for (int64_t j = 0; j < t; ++j) digits[j] = (int64_t)(candidates[ci + j] - base);
      const std::vector<int64_t> fixed = isolate_digits(std::move(digits), t, tau, psi);
      for (int64_t d : fixed) r.numerators.push_back(base + (uint64_t)d);
      for (int64_t d = 1; d <= tau; ++d) r.progression.push_back(base + (uint64_t)d);
    }
    ci += (size_t)t;
  }
  return r;
}

}  // namespace

uint64_t CantorTree::grid(int level) const {
  return to_u64_checked(schedule.Psi[level], "Psi");
}

const LevelNodes& CantorTree::at(int level) const {
  if (level < 0 || level > depth()) throw InvariantError("level out of range");
  return levels[level];
}

CantorTree seed_levels(const BranchingSchedule& s, uint64_t seed, int attempt_cap) {
  s.validate();
  CantorTree tree;
  tree.schedule = s;
  tree.seed = seed;
  tree.attemptCap = attempt_cap;
  const bool general = is_general(s.variant);

  LevelNodes root;
  root.level = 0;
  root.numerators = {0};
  if (general) root.progression = {0};
  tree.levels.push_back(std::move(root));

  bool left_done = false, right_done = false;
  for (int level = 1; level <= s.startLevel; ++level) {
    const int64_t psi = s.psi[level];
    const int64_t t = s.t[level];
    const int64_t tau = general ? s.tau[level] : 0;
    const LevelNodes& prev = tree.levels.back();
    LevelNodes cur;
    cur.level = level;
    for (size_t i = 0; i < prev.numerators.size(); ++i) {
      const uint64_t parent = prev.numerators[i];
      const uint64_t base = parent * (uint64_t)psi;
      const bool leftmost = (i == 0);
      const bool rightmost = (i + 1 == prev.numerators.size());
      const bool in_prog =
          general && contains_sorted(prev.progression, parent);
      std::vector<int64_t> digits;
      if (in_prog) {
        for (int64_t d = 1; d <= tau; ++d) digits.push_back(d);
        for (int64_t d = tau + 2; d < psi && (int64_t)digits.size() < t; ++d) digits.push_back(d);
        if ((int64_t)digits.size() != t)
          throw InfeasibleError("seed level " + std::to_string(level) +
                                ": not enough digits outside the guarded range");
        if (leftmost) left_done = true;
        if (rightmost && digits.back() <= psi - 2) right_done = true;
      } else if (leftmost && !left_done && t <= psi - 1) {
        for (int64_t d = 1; d <= t; ++d) digits.push_back(d);
        left_done = true;
        if (rightmost && digits.back() <= psi - 2) right_done = true;
      } else {
        for (int64_t d = 0; d < t; ++d) digits.push_back(d);
        if (rightmost && t - 1 <= psi - 2) right_done = true;
      }
      for (int64_t d : digits) cur.numerators.push_back(base + (uint64_t)d);
      if (in_prog)
        for (int64_t d = 1; d <= tau; ++d) cur.progression.push_back(base + (uint64_t)d);
    }
    tree.levels.push_back(std::move(cur));
  }

  const LevelNodes& top = tree.levels.back();
  if (!left_done || !right_done || top.numerators.front() < 1 ||
      BigInt(top.numerators.back()) + 1 >= s.Psi[s.startLevel])
    throw InvariantError("seed levels not strictly inside (0,1)");
  return tree;
}

void extend_level(CantorTree& tree) {
  const BranchingSchedule& s = tree.schedule;
  const int level = tree.depth() + 1;
  if (level > s.levels) throw ConfigError("level exceeds the schedule range");
  if (level <= s.startLevel) throw ConfigError("seed levels are built deterministically");
  const int64_t psi = s.psi[level];
  const int64_t t = s.t[level];
  const bool general = is_general(s.variant);
  const int64_t tau = general ? s.tau[level] : 0;
  const uint64_t grid = to_u64_checked(s.Psi[level], "Psi");
  const LevelNodes& prev = tree.levels.back();
  const double inv_t_prev = 1.0 / to_double(s.T[level - 1]);

  VerificationRecord rec;
  rec.level = level;
  rec.threshold = s.threshold(level);
  rec.correction = s.correction(level);

  LevelNodes cur;
  cur.level = level;

  if (t == psi) {
    // Full branching: every term of the chi-sum vanishes identically.
    rec.attempts = 1;
    rec.supRandomPart = 0.0;
    rec.supModifiedPart = 0.0;
    cur.numerators = candidate_numerators(prev.numerators, {}, psi, t);
  } else {
    if (grid > kMaxDenseLength)
      throw InvariantError("level " + std::to_string(level) +
                           ": period too large for dense verification");
    const HalfSpectrum parent_spec = dense_indicator_spectrum(prev.numerators, grid / psi);
    bool accepted = false;
    std::vector<uint32_t> xdraws(prev.numerators.size());
    std::vector<uint64_t> candidates;
    for (int attempt = 1; attempt <= tree.attemptCap; ++attempt) {
      SplitMix64 rng = SplitMix64::stream(tree.seed, (uint64_t)level, (uint64_t)attempt);
      for (auto& x : xdraws) x = (uint32_t)rng.bounded((uint64_t)psi);
      candidates = candidate_numerators(prev.numerators, xdraws, psi, t);
      const HalfSpectrum child_spec = dense_indicator_spectrum(candidates, grid);
      const double sup = chi_sup_dense(child_spec, parent_spec, psi, t, inv_t_prev);
      rec.attempts = attempt;
      rec.supRandomPart = sup;
      if (sup <= rec.threshold) {
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw AttemptCapError("level " + std::to_string(level) + ", seed " +
                            std::to_string(tree.seed) + ": attempt cap " +
                            std::to_string(tree.attemptCap) + " exhausted");
    cur.xdraws = xdraws;
    if (general) {
      LevelBuildResult built =
          splice_progression(prev.numerators, prev.progression, candidates, psi, t, tau);
      cur.numerators = std::move(built.numerators);
      cur.progression = std::move(built.progression);
      const HalfSpectrum final_spec = dense_indicator_spectrum(cur.numerators, grid);
      rec.supModifiedPart = chi_sup_dense(final_spec, parent_spec, psi, t, inv_t_prev);
    } else {
      cur.numerators = std::move(candidates);
      rec.supModifiedPart = rec.supRandomPart;
    }
  }

  if (rec.supModifiedPart > rec.threshold + rec.correction + 1e-9)
    throw InvariantError("modified sum exceeded its allowance at level " +
                         std::to_string(level));
  tree.levels.push_back(std::move(cur));
  tree.verification.push_back(rec);
}

CantorTree build_tree(const BranchingSchedule& s, uint64_t seed, int depth, int attempt_cap) {
  if (depth > s.levels) throw ConfigError("depth exceeds the schedule range");
  CantorTree tree = seed_levels(s, seed, attempt_cap);
  while (tree.depth() < depth) extend_level(tree);
  return tree;
}

Complex chi_sum_direct(const CantorTree& tree, int level, int64_t k) {
  const BranchingSchedule& s = tree.schedule;
  const uint64_t grid = tree.grid(level);
  const int64_t psi = s.psi[level];
  const int64_t t = s.t[level];
  const uint64_t kk = (uint64_t)(((k % (int64_t)grid) + (int64_t)grid) % (int64_t)grid);
  const Complex child = exp_sum(tree.at(level).numerators, grid, (double)k);
  const Complex parent = exp_sum(tree.at(level - 1).numerators, grid / psi, (double)k);
  const Complex d = geometric_phase_sum(kk, grid, (uint64_t)psi);
  const double inv_t_prev = 1.0 / to_double(s.T[level - 1]);
  return (child / (double)t - d * parent / (double)psi) * inv_t_prev;
}

bool verify_periodicity(const CantorTree& tree, int level, int samples, uint64_t check_seed) {
  const uint64_t grid = tree.grid(level);
  SplitMix64 rng(check_seed);
  for (int i = 0; i < samples; ++i) {
    const int64_t span = (int64_t)(10 * grid);
    int64_t k = (int64_t)rng.bounded((uint64_t)(2 * span + 1)) - span;
    if (k >= 0 && k < (int64_t)grid) k += (int64_t)grid;
    const int64_t reduced = ((k % (int64_t)grid) + (int64_t)grid) % (int64_t)grid;
    const Complex a = chi_sum_direct(tree, level, k);
    const Complex b = chi_sum_direct(tree, level, reduced);
    if (std::abs(a - b) > 1e-9) return false;
  }
  return true;
}

void reverify_level(const CantorTree& tree, int level, double tol) {
  const BranchingSchedule& s = tree.schedule;
  if (level <= s.startLevel) return;
  const VerificationRecord* rec = nullptr;
  for (const auto& r : tree.verification)
    if (r.level == level) rec = &r;
  if (!rec) throw InvariantError("missing verification record");
  const int64_t psi = s.psi[level];
  const int64_t t = s.t[level];
  if (t == psi) {
    if (rec->supRandomPart != 0.0) throw InvariantError("trivial level with nonzero sup");
    return;
  }
  const uint64_t grid = tree.grid(level);
  const LevelNodes& prev = tree.at(level - 1);
  const LevelNodes& cur = tree.at(level);
  const double inv_t_prev = 1.0 / to_double(s.T[level - 1]);
  const HalfSpectrum parent_spec = dense_indicator_spectrum(prev.numerators, grid / psi);
  const auto candidates = candidate_numerators(prev.numerators, cur.xdraws, psi, t);
  const HalfSpectrum cand_spec = dense_indicator_spectrum(candidates, grid);
  const double sup = chi_sup_dense(cand_spec, parent_spec, psi, t, inv_t_prev);
  if (std::abs(sup - rec->supRandomPart) > tol)
    throw InvariantError("recomputed random sup deviates from the record");
  if (sup > rec->threshold)
    throw InvariantError("recomputed random sup exceeds the threshold");
  const HalfSpectrum final_spec = dense_indicator_spectrum(cur.numerators, grid);
  const double sup_mod = chi_sup_dense(final_spec, parent_spec, psi, t, inv_t_prev);
  if (std::abs(sup_mod - rec->supModifiedPart) > tol)
    throw InvariantError("recomputed modified sup deviates from the record");
  if (sup_mod > rec->threshold + rec->correction + 1e-9)
    throw InvariantError("recomputed modified sup exceeds its allowance");
}

void check_tree_invariants(const CantorTree& tree, bool recompute_transforms) {
  const BranchingSchedule& s = tree.schedule;
  if (tree.levels.empty() || tree.levels[0].numerators != std::vector<uint64_t>{0})
    throw InvariantError("root level must be {0}");
  const bool general = is_general(s.variant);
  for (int level = 1; level <= tree.depth(); ++level) {
    const LevelNodes& cur = tree.at(level);
    const LevelNodes& prev = tree.at(level - 1);
    if (cur.level != level) throw InvariantError("levels not contiguous");
    if (BigInt(cur.numerators.size()) != s.T[level])
      throw InvariantError("cardinality != T at level " + std::to_string(level));
    if (!std::is_sorted(cur.numerators.begin(), cur.numerators.end()))
      throw InvariantError("numerators unsorted");
    const int64_t psi = s.psi[level];
    uint64_t last = 0;
    for (size_t i = 0; i < cur.numerators.size(); ++i) {
      const uint64_t n = cur.numerators[i];
      if (i && n == last) throw InvariantError("duplicate numerator");
      last = n;
      if (!contains_sorted(prev.numerators, n / (uint64_t)psi))
        throw InvariantError("orphan node at level " + std::to_string(level));
    }
    if (BigInt(cur.numerators.back()) >= s.Psi[level])
      throw InvariantError("numerator out of range");
    if (general) {
      const int64_t tau = s.tau[level];
      if (BigInt(cur.progression.size()) != s.tau_product_int(level))
        throw InvariantError("progression cardinality mismatch");
      std::vector<uint64_t> expect;
      for (uint64_t p : prev.progression)
        for (int64_t d = 1; d <= tau; ++d) expect.push_back(p * (uint64_t)psi + (uint64_t)d);
      if (expect != cur.progression)
        throw InvariantError("progression recursion mismatch at level " + std::to_string(level));
      for (uint64_t x : cur.progression)
        if (!contains_sorted(cur.numerators, x))
          throw InvariantError("progression node missing from the level");
      for (uint64_t p : prev.progression) {
        if (contains_sorted(cur.numerators, p * (uint64_t)psi))
          throw InvariantError("guard digit 0 present under a progression parent");
        if (contains_sorted(cur.numerators, p * (uint64_t)psi + (uint64_t)(tau + 1)))
          throw InvariantError("guard digit tau+1 present under a progression parent");
      }
    }
  }
  // Containment at the seed depth.
  if (tree.depth() >= s.startLevel) {
    const LevelNodes& top = tree.at(s.startLevel);
    if (top.numerators.front() < 1 || BigInt(top.numerators.back()) + 1 >= s.Psi[s.startLevel])
      throw InvariantError("seed depth not strictly inside (0,1)");
  }
  for (const auto& rec : tree.verification) {
    if (rec.supRandomPart > rec.threshold)
      throw InvariantError("record violates the acceptance inequality");
    if (rec.supModifiedPart > rec.threshold + rec.correction + 1e-9)
      throw InvariantError("record violates the modified allowance");
  }
  if (recompute_transforms) {
    for (int level = s.startLevel + 1; level <= tree.depth(); ++level)
      reverify_level(tree, level);
  }
}

}  // namespace salem
