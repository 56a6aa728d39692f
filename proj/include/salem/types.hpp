#ifndef SALEM_TYPES_HPP
#define SALEM_TYPES_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace salem {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

enum class Variant {
  Dyadic,        // endpoint Fourier decay, log-corrected regularity
  Flat,          // log-corrected decay, clean two-sided regularity
  General,       // growing branching with embedded progressions
  GeneralSecond  // variant with pure-power regularity targets (beta < alpha)
};

const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name);
inline bool is_general(Variant v) {
  return v == Variant::General || v == Variant::GeneralSecond;
}

// Error taxonomy mirrors the CLI/C-API exit codes.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct AttemptCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// log of a positive big integer in long double, exact mantissa + exponent
// split so the result is accurate to ~1 ulp even for thousands of bits.
long double log_big(const BigInt& v);

// log with a one-sided relative bias, for inequalities that must err on the
// stated side.
long double log_big_upper(const BigInt& v);
long double log_big_lower(const BigInt& v);

double to_double(const BigInt& v);
double to_double(const BigRat& v);
long double log_rat(const BigRat& v);

std::string to_string(const BigInt& v);
BigInt bigint_from_string(const std::string& s);

BigInt pow_big(const BigInt& base, unsigned exp);
BigInt binomial_big(unsigned n, unsigned k);
BigInt factorial_big(unsigned n);

uint64_t fnv1a64(const void* data, size_t n, uint64_t h = 1469598103934665603ull);

}  // namespace salem

#endif
