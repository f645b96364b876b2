#pragma once

#include <mpfr.h>

#include <string>

#include "jacobi/rational.hpp"

namespace jacobi {

// Three-valued outcome of an interval-certified comparison, plus a gating
// value for statements whose hypotheses do not apply to the given data.
enum class Verdict { PASS, FAIL, INDETERMINATE, NOT_APPLICABLE };

std::string verdict_to_string(Verdict v);

// Validated interval with dyadic-rational endpoints backed by MPFR.
// Lower endpoints always round down and upper endpoints round up, so the
// result of every operation encloses the exact set {x op y : x in X, y in Y}.
// Endpoints are exact dyadic rationals and convert losslessly to Rat.
class DyadicInterval {
public:
    DyadicInterval();  // [0, 0]

    // Outward enclosure of a rational value / rational endpoints at the
    // given working precision.
    DyadicInterval(const Rat& value, mpfr_prec_t prec);
    DyadicInterval(const Rat& lo, const Rat& hi, mpfr_prec_t prec);

    // Exact conversions; arguments must be dyadic rationals (power-of-two
    // denominators). Throws DomainError otherwise.
    static DyadicInterval exact_point(const Rat& value);
    static DyadicInterval exact(const Rat& lo, const Rat& hi);

    DyadicInterval(const DyadicInterval& other);
    DyadicInterval(DyadicInterval&& other) noexcept;
    DyadicInterval& operator=(const DyadicInterval& other);
    DyadicInterval& operator=(DyadicInterval&& other) noexcept;
    ~DyadicInterval();

    mpfr_prec_t precision() const { return prec_; }

    Rat lo() const;  // exact
    Rat hi() const;  // exact
    Rat width() const { return hi() - lo(); }
    Rat midpoint() const { return (lo() + hi()) / 2; }
    // width / max(1, |midpoint|)
    Rat relative_width() const;

    bool is_point() const;
    bool contains(const Rat& x) const;
    bool contains(const DyadicInterval& other) const;
    bool intersects(const DyadicInterval& other) const;
    bool contains_zero() const;
    bool strictly_positive() const;
    bool strictly_negative() const;

    DyadicInterval operator-() const;
    DyadicInterval operator+(const DyadicInterval& rhs) const;
    DyadicInterval operator-(const DyadicInterval& rhs) const;
    DyadicInterval operator*(const DyadicInterval& rhs) const;
    // Throws DomainError when rhs contains zero.
    DyadicInterval operator/(const DyadicInterval& rhs) const;
    DyadicInterval square() const;
    DyadicInterval inverse() const;

    static DyadicInterval hull(const DyadicInterval& a, const DyadicInterval& b);

    // Endpoint serialization "m*2^e" with odd (minimal) mantissa; zero is
    // "0*2^0".
    std::string lo_string() const;
    std::string hi_string() const;
    static DyadicInterval from_strings(const std::string& lo, const std::string& hi);

private:
    DyadicInterval(mpfr_prec_t prec, int /*tag*/);  // uninitialized-value ctor

    mpfr_t lo_;
    mpfr_t hi_;
    mpfr_prec_t prec_;
};

// Certified comparisons. For the strict form: PASS iff lhs.hi < rhs.lo,
// FAIL iff lhs.lo > rhs.hi, INDETERMINATE when the enclosures touch or
// overlap. The non-strict form passes on lhs.hi <= rhs.lo.
Verdict certified_less(const DyadicInterval& lhs, const DyadicInterval& rhs);
Verdict certified_leq(const DyadicInterval& lhs, const DyadicInterval& rhs);

}  // namespace jacobi
