#pragma once

// Internal helpers shared by the certificate builders: a quantity tracked
// both as a validated enclosure and, when every input to it was exact, as an
// exact rational. Exactness propagates through the arithmetic, so rows over
// original (rational) data get exact verdicts while rows touching refined
// poles/weights fall back to interval certification.

#include <optional>
#include <string>
#include <utility>

#include "jacobi/errors.hpp"
#include "jacobi/report.hpp"

namespace jacobi {
namespace rows {

struct Val {
    DyadicInterval iv;
    std::optional<Rat> exact;
};

inline Val from_rat(const Rat& r, mpfr_prec_t prec) { return {DyadicInterval(r, prec), r}; }

inline Val from_interval(const DyadicInterval& iv, const std::optional<Rat>& exact) {
    if (exact) return {iv, *exact};
    if (iv.is_point()) return {iv, iv.lo()};
    return {iv, std::nullopt};
}

inline Val vadd(const Val& a, const Val& b, mpfr_prec_t prec) {
    if (a.exact && b.exact) return from_rat(*a.exact + *b.exact, prec);
    return {a.iv + b.iv, std::nullopt};
}

inline Val vsub(const Val& a, const Val& b, mpfr_prec_t prec) {
    if (a.exact && b.exact) return from_rat(*a.exact - *b.exact, prec);
    return {a.iv - b.iv, std::nullopt};
}

inline Val vmul(const Val& a, const Val& b, mpfr_prec_t prec) {
    if (a.exact && b.exact) return from_rat(*a.exact * *b.exact, prec);
    return {a.iv * b.iv, std::nullopt};
}

inline Val vdiv(const Val& a, const Val& b, mpfr_prec_t prec) {
    if (a.exact && b.exact) {
        if (*b.exact == 0) throw DomainError("division by zero in certificate arithmetic");
        return from_rat(*a.exact / *b.exact, prec);
    }
    return {a.iv / b.iv, std::nullopt};
}

inline Val vsquare(const Val& a, mpfr_prec_t prec) {
    if (a.exact) return from_rat(*a.exact * *a.exact, prec);
    return {a.iv.square(), std::nullopt};
}

// a^e for integer e; interval path requires a strictly positive enclosure
// for negative exponents.
inline Val vpow(const Val& a, long e, mpfr_prec_t prec) {
    if (a.exact) return from_rat(rat_pow(*a.exact, e), prec);
    if (e == 0) return from_rat(Rat(1), prec);
    DyadicInterval base = e > 0 ? a.iv : a.iv.inverse();
    long n = e > 0 ? e : -e;
    DyadicInterval acc = base;
    for (long i = 1; i < n; ++i) acc = acc * base;
    return {acc, std::nullopt};
}

// max(a, b): endpoint-wise for intervals.
inline Val vmax(const Val& a, const Val& b, mpfr_prec_t prec) {
    if (a.exact && b.exact) return from_rat(rat_max(*a.exact, *b.exact), prec);
    Rat lo = rat_max(a.iv.lo(), b.iv.lo());
    Rat hi = rat_max(a.iv.hi(), b.iv.hi());
    // Endpoints of existing enclosures are dyadic, so this stays exact.
    return {DyadicInterval::exact(lo, hi), std::nullopt};
}

inline void add_row(Report& report, const std::string& id, long level, long index,
                    const Val& lhs, const Val& rhs, bool strict, mpfr_prec_t bits) {
    if (lhs.exact && rhs.exact) {
        report.rows.push_back(exact_row(id, level, index, *lhs.exact, *rhs.exact, strict, bits,
                                        report));
    } else {
        report.rows.push_back(interval_row(id, level, index, lhs.iv, rhs.iv, strict));
    }
}

// Builds the sides lazily; a DomainError (typically a zero or
// zero-straddling divisor from degenerate data) downgrades the row to
// NOT_APPLICABLE instead of aborting the certificate.
template <typename MakeSides>
void add_row_guarded(Report& report, const std::string& id, long level, long index,
                     MakeSides&& make_sides, bool strict, mpfr_prec_t bits) {
    try {
        auto [lhs, rhs] = make_sides();
        add_row(report, id, level, index, lhs, rhs, strict, bits);
    } catch (const DomainError&) {
        report.rows.push_back(
            not_applicable_row(id, level, index, DyadicInterval(), DyadicInterval()));
        report.warnings.push_back("row not applicable (undefined ratio on degenerate data): " +
                                  id + " at level " + std::to_string(level) + ", index " +
                                  std::to_string(index));
    }
}

inline void add_gate(Report& report, const std::string& id, long level, const Rat& lhs,
                     const Rat& rhs, mpfr_prec_t bits) {
    report.rows.push_back(exact_row(id, level, 0, lhs, rhs, /*strict=*/true, bits, report));
}

}  // namespace rows
}  // namespace jacobi
