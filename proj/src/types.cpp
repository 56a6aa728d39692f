#include "salem/types.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace salem {

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::Dyadic: return "thm2";
    case Variant::Flat: return "thm3";
    case Variant::General: return "thm1";
    case Variant::GeneralSecond: return "thm1-second-part";
  }
  return "?";
}

Variant variant_from_name(const std::string& name) {
  if (name == "thm2") return Variant::Dyadic;
  if (name == "thm3") return Variant::Flat;
  if (name == "thm1") return Variant::General;
  if (name == "thm1-second-part" || name == "thm1-second") return Variant::GeneralSecond;
  throw ConfigError("unknown variant: " + name);
}

long double log_big(const BigInt& v) {
  if (v <= 0) throw std::domain_error("log_big: nonpositive argument");
  const size_t bits = boost::multiprecision::msb(v) + 1;
  if (bits <= 62) return std::log((long double)(uint64_t)v);
  // Keep the top 62 bits as the mantissa, account for the shift exactly.
  const size_t shift = bits - 62;
  const BigInt top = v >> shift;
  return std::log((long double)(uint64_t)top) + (long double)shift * 0.6931471805599453094L;
}

long double log_big_upper(const BigInt& v) {
  long double x = log_big(v);
  return x + std::abs(x) * 1e-15L + 1e-18L;
}

long double log_big_lower(const BigInt& v) {
  long double x = log_big(v);
  return x - std::abs(x) * 1e-15L - 1e-18L;
}

double to_double(const BigInt& v) { return v.convert_to<double>(); }
double to_double(const BigRat& v) { return v.convert_to<double>(); }

long double log_rat(const BigRat& v) {
  if (v <= 0) throw std::domain_error("log_rat: nonpositive argument");
  return log_big(boost::multiprecision::numerator(v)) -
         log_big(boost::multiprecision::denominator(v));
}

std::string to_string(const BigInt& v) { return v.str(); }

BigInt bigint_from_string(const std::string& s) { return BigInt(s); }

BigInt pow_big(const BigInt& base, unsigned exp) {
  return boost::multiprecision::pow(base, exp);
}

BigInt binomial_big(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

BigInt factorial_big(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

uint64_t fnv1a64(const void* data, size_t n, uint64_t h) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace salem
