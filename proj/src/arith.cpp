#include "sievedyn/arith.hpp"

#include <cmath>

#include <gmp.h>

#include "sievedyn/errors.hpp"

namespace sievedyn {

double ratio_to_double(const BigInt& num, const BigInt& den) {
  if (den == 0) throw ValidationError("ratio_to_double: zero denominator");
  if (num == 0) return 0.0;
  long num_exp = 0;
  long den_exp = 0;
  const double num_m = mpz_get_d_2exp(&num_exp, num.backend().data());
  const double den_m = mpz_get_d_2exp(&den_exp, den.backend().data());
  return std::ldexp(num_m / den_m, static_cast<int>(num_exp - den_exp));
}

double to_double(const Rational& q) {
  return ratio_to_double(boost::multiprecision::numerator(q),
                         boost::multiprecision::denominator(q));
}

std::string to_string(const Rational& q) {
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + den.str();
}

std::uint64_t to_u64(const BigInt& v, const char* what) {
  if (v < 0 || v > BigInt(UINT64_MAX)) {
    throw BoundError(std::string(what) + " exceeds 64-bit range: " + v.str());
  }
  return static_cast<std::uint64_t>(v);
}

}  // namespace sievedyn
