#pragma once

#include <gmpxx.h>

#include <string>

namespace renorm {

/// Arbitrary-precision rational, the coefficient field everywhere.
using Rat = mpq_class;
using Int = mpz_class;

std::string rat_to_string(const Rat& q);

/// base^exp for integer exp (negative allowed, base must be nonzero then).
Rat rat_pow(const Rat& base, long exp);

Rat factorial(unsigned n);

}  // namespace renorm
