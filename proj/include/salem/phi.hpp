#ifndef SALEM_PHI_HPP
#define SALEM_PHI_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace salem {

// Slowly growing gauge driving the branching numbers of the general
// constructions. Must be nondecreasing, positive, and satisfy the doubling
// condition phi(2t) <= phi(t) + C on the queried range.
struct PhiSpec {
  enum class Family { LogPower, ConstantPlusLogLog, UserTable };

  Family family = Family::LogPower;
  double epsilon = 1.0;                                // phi(t) = (log t)^epsilon
  double constant = 1.0;                               // phi(t) = c + log log t
  std::vector<std::pair<double, double>> table;        // (t, phi(t)), nondecreasing

  // Evaluates phi(t) for t >= 2 in extended precision.
  long double operator()(long double t) const;

  // Throws ConfigError on an invalid specification.
  void validate() const;

  // Checks the doubling increment phi(2t)-phi(t) over a finite query set and
  // returns the largest increment seen.
  long double max_doubling_increment(const std::vector<long double>& ts) const;

  // Parses "log:EPS", "loglog:C", or "table:t1=v1,t2=v2,...".
  static PhiSpec parse(const std::string& descriptor);
  std::string descriptor() const;
};

}  // namespace salem

#endif
