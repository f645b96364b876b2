#pragma once

#include <gmpxx.h>

#include <string>

#include "jacobi/errors.hpp"

namespace jacobi {

// Exact rational scalar. mpq_class already maintains the canonical form
// (positive denominator, reduced fraction) after every operation.
using Rat = mpq_class;

// Parses "p/q", plain integers, decimal ("0.25", "-1.5") and scientific
// ("6e-3", "1.5e2") notation into an exact rational. A leading U+2212 minus
// sign is accepted as "-". Throws ParseError on malformed input or zero
// denominator.
Rat rat_from_string(const std::string& text);

// Canonical serialization: "p/q", or just "p" when the denominator is 1.
std::string rat_to_string(const Rat& value);

// Canonicalized construction from a numerator/denominator pair. (The
// mpq_class two-argument constructor does NOT reduce, and GMP arithmetic
// assumes reduced operands.)
inline Rat make_rat(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// value^exponent, exponent may be negative provided value != 0.
Rat rat_pow(const Rat& value, long exponent);

// 2^exponent for signed exponents.
Rat rat_pow2(long exponent);

int rat_sign(const Rat& value);
Rat rat_abs(const Rat& value);
const Rat& rat_min(const Rat& a, const Rat& b);
const Rat& rat_max(const Rat& a, const Rat& b);

// True when value = m/2^k for some integers m, k (denominator a power of 2).
bool rat_is_dyadic(const Rat& value);

}  // namespace jacobi
