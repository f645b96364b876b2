#pragma once

#include <vector>

#include "jacobi/polynomial.hpp"

namespace jacobi {

// Sturm-sequence isolation of all real roots. Returns disjoint enclosures
// in ascending order, one per real root; every enclosure has exact dyadic
// endpoints, and roots landing exactly on a probe point come back as point
// intervals. Non-point enclosures have endpoints with opposite signs of p.
// Throws NonSquarefree when gcd(p, p') is non-constant (multiple roots
// signal corrupted data upstream).
std::vector<DyadicInterval> isolate_real_roots(const RatPoly& p);

// Shrinks a bracketing enclosure by exact-sign bisection until
// width <= 2^(-bits) * max(1, |midpoint|). Point inputs at a root pass
// through unchanged. Output is contained in the input and still brackets
// the root. Throws NoSignChange when the endpoint signs agree.
DyadicInterval refine_root(const RatPoly& p, const DyadicInterval& enclosure, unsigned bits);

}  // namespace jacobi
