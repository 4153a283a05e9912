#ifndef SALAB_RATIONAL_H_
#define SALAB_RATIONAL_H_

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace salab {

using Rational = mpq_class;
using BigInt = mpz_class;

// Accepts "a", "-a", "a/b"; the result is canonicalized.
Rational parse_rational(std::string_view text);

// Canonical "num/den" text, or just "num" for integers.
std::string to_string(const Rational& q);

// Exact binary expansion of a finite double.
Rational exact_from_double(double x);

Rational pow(const Rational& base, long exponent);
BigInt pow(const BigInt& base, unsigned long exponent);
BigInt binomial(unsigned long n, unsigned long r);

// Bits in |num| plus bits in den; zero costs one bit.
long bit_length(const Rational& q);

}  // namespace salab

#endif  // SALAB_RATIONAL_H_
