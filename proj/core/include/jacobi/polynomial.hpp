#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "jacobi/dyadic.hpp"
#include "jacobi/rational.hpp"

namespace jacobi {

// Dense univariate polynomial over exact rationals, coefficients ascending
// by degree. The zero polynomial has an empty coefficient list and degree -1.
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rat> coeffs);
    static RatPoly constant(const Rat& c);
    static RatPoly monomial(const Rat& c, std::size_t degree);
    // x - root and root - x as degree-1 building blocks.
    static RatPoly linear_x_minus(const Rat& root);
    static RatPoly linear_minus_x(const Rat& root);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rat>& coeffs() const { return coeffs_; }
    // Coefficient of x^i, zero beyond the degree.
    Rat coeff(std::size_t i) const;
    Rat leading() const;

    RatPoly operator+(const RatPoly& rhs) const;
    RatPoly operator-(const RatPoly& rhs) const;
    RatPoly operator-() const;
    RatPoly operator*(const RatPoly& rhs) const;
    RatPoly operator*(const Rat& scalar) const;
    bool operator==(const RatPoly& rhs) const { return coeffs_ == rhs.coeffs_; }

    Rat eval(const Rat& x) const;
    // Horner evaluation with outward rounding; coefficients enter as point
    // enclosures at the argument's precision.
    DyadicInterval eval_interval(const DyadicInterval& x) const;

    RatPoly derivative() const;

    // Exact Euclidean division: *this = quotient * divisor + remainder with
    // deg(remainder) < deg(divisor). Throws DomainError on zero divisor.
    std::pair<RatPoly, RatPoly> divmod(const RatPoly& divisor) const;

    // Monic greatest common divisor (1 for coprime inputs).
    static RatPoly gcd(RatPoly a, RatPoly b);

    // p / gcd(p, p'): same roots, all simple.
    RatPoly squarefree_part() const;

    std::string to_string() const;  // human-readable, for diagnostics

private:
    void trim();

    std::vector<Rat> coeffs_;
};

}  // namespace jacobi
