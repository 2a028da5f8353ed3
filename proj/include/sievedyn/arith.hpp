#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace sievedyn {

/// Unbounded integer used for spans, primorials and generator values.
using BigInt = boost::multiprecision::mpz_int;
/// Exact rational used by the population model.
using Rational = boost::multiprecision::mpq_rational;

/// num/den as a double without forming the (possibly huge) canonical rational.
/// Works for operands far outside the double exponent range.
double ratio_to_double(const BigInt& num, const BigInt& den);

double to_double(const Rational& q);

/// "n" for integers, "n/d" otherwise.
std::string to_string(const Rational& q);

/// Narrows a BigInt to uint64, throwing BoundError when it does not fit.
std::uint64_t to_u64(const BigInt& v, const char* what);

}  // namespace sievedyn
