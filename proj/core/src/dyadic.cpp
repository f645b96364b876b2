#include "jacobi/dyadic.hpp"

#include <algorithm>
#include <utility>

namespace jacobi {

namespace {

constexpr mpfr_prec_t kDefaultPrec = 64;

// Exact dyadic value of an MPFR number as a rational.
Rat mpfr_to_rat(const mpfr_t x) {
    if (mpfr_zero_p(x)) return Rat(0);
    if (!mpfr_number_p(x)) throw DomainError("non-finite interval endpoint");
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
    Rat r(m);
    if (e >= 0) {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e));
        r *= Rat(p);
    } else {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(-e));
        r /= Rat(p);
    }
    return r;
}

// Minimal MPFR precision that can hold the dyadic rational exactly.
mpfr_prec_t exact_prec_for(const Rat& v) {
    if (v == 0) return kDefaultPrec;
    mpz_class num = v.get_num();
    std::size_t bits = mpz_sizeinbase(num.get_mpz_t(), 2);
    return std::max<mpfr_prec_t>(static_cast<mpfr_prec_t>(bits), MPFR_PREC_MIN);
}

void set_from_rat(mpfr_t dst, const Rat& v, mpfr_rnd_t rnd) {
    mpfr_set_q(dst, v.get_mpq_t(), rnd);
}

}  // namespace

std::string verdict_to_string(Verdict v) {
    switch (v) {
        case Verdict::PASS: return "PASS";
        case Verdict::FAIL: return "FAIL";
        case Verdict::INDETERMINATE: return "INDETERMINATE";
        case Verdict::NOT_APPLICABLE: return "NOT_APPLICABLE";
    }
    return "INDETERMINATE";
}

DyadicInterval::DyadicInterval(mpfr_prec_t prec, int) : prec_(std::max<mpfr_prec_t>(prec, MPFR_PREC_MIN)) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
}

DyadicInterval::DyadicInterval() : DyadicInterval(kDefaultPrec, 0) {
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

DyadicInterval::DyadicInterval(const Rat& value, mpfr_prec_t prec) : DyadicInterval(prec, 0) {
    set_from_rat(lo_, value, MPFR_RNDD);
    set_from_rat(hi_, value, MPFR_RNDU);
}

DyadicInterval::DyadicInterval(const Rat& lo, const Rat& hi, mpfr_prec_t prec) : DyadicInterval(prec, 0) {
    if (lo > hi) throw DomainError("interval endpoints out of order");
    set_from_rat(lo_, lo, MPFR_RNDD);
    set_from_rat(hi_, hi, MPFR_RNDU);
}

DyadicInterval DyadicInterval::exact_point(const Rat& value) {
    if (!rat_is_dyadic(value)) throw DomainError("exact_point requires a dyadic rational");
    DyadicInterval r(exact_prec_for(value), 0);
    set_from_rat(r.lo_, value, MPFR_RNDN);
    set_from_rat(r.hi_, value, MPFR_RNDN);
    return r;
}

DyadicInterval DyadicInterval::exact(const Rat& lo, const Rat& hi) {
    if (!rat_is_dyadic(lo) || !rat_is_dyadic(hi))
        throw DomainError("exact endpoints must be dyadic rationals");
    if (lo > hi) throw DomainError("interval endpoints out of order");
    DyadicInterval r(std::max(exact_prec_for(lo), exact_prec_for(hi)), 0);
    set_from_rat(r.lo_, lo, MPFR_RNDN);
    set_from_rat(r.hi_, hi, MPFR_RNDN);
    return r;
}

DyadicInterval::DyadicInterval(const DyadicInterval& other) : DyadicInterval(other.prec_, 0) {
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

DyadicInterval::DyadicInterval(DyadicInterval&& other) noexcept : prec_(other.prec_) {
    mpfr_init2(lo_, MPFR_PREC_MIN);
    mpfr_init2(hi_, MPFR_PREC_MIN);
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
}

DyadicInterval& DyadicInterval::operator=(const DyadicInterval& other) {
    if (this != &other) {
        mpfr_set_prec(lo_, other.prec_);
        mpfr_set_prec(hi_, other.prec_);
        prec_ = other.prec_;
        mpfr_set(lo_, other.lo_, MPFR_RNDD);
        mpfr_set(hi_, other.hi_, MPFR_RNDU);
    }
    return *this;
}

DyadicInterval& DyadicInterval::operator=(DyadicInterval&& other) noexcept {
    if (this != &other) {
        mpfr_swap(lo_, other.lo_);
        mpfr_swap(hi_, other.hi_);
        std::swap(prec_, other.prec_);
    }
    return *this;
}

DyadicInterval::~DyadicInterval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Rat DyadicInterval::lo() const { return mpfr_to_rat(lo_); }
Rat DyadicInterval::hi() const { return mpfr_to_rat(hi_); }

Rat DyadicInterval::relative_width() const {
    Rat scale = rat_max(Rat(1), rat_abs(midpoint()));
    return width() / scale;
}

bool DyadicInterval::is_point() const { return mpfr_equal_p(lo_, hi_); }

bool DyadicInterval::contains(const Rat& x) const {
    return mpfr_cmp_q(lo_, x.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, x.get_mpq_t()) >= 0;
}

bool DyadicInterval::contains(const DyadicInterval& other) const {
    return mpfr_lessequal_p(lo_, other.lo_) && mpfr_lessequal_p(other.hi_, hi_);
}

bool DyadicInterval::intersects(const DyadicInterval& other) const {
    return mpfr_lessequal_p(lo_, other.hi_) && mpfr_lessequal_p(other.lo_, hi_);
}

bool DyadicInterval::contains_zero() const {
    return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool DyadicInterval::strictly_positive() const { return mpfr_sgn(lo_) > 0; }
bool DyadicInterval::strictly_negative() const { return mpfr_sgn(hi_) < 0; }

DyadicInterval DyadicInterval::operator-() const {
    DyadicInterval r(prec_, 0);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

DyadicInterval DyadicInterval::operator+(const DyadicInterval& rhs) const {
    DyadicInterval r(std::max(prec_, rhs.prec_), 0);
    mpfr_add(r.lo_, lo_, rhs.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, rhs.hi_, MPFR_RNDU);
    return r;
}

DyadicInterval DyadicInterval::operator-(const DyadicInterval& rhs) const {
    DyadicInterval r(std::max(prec_, rhs.prec_), 0);
    mpfr_sub(r.lo_, lo_, rhs.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, rhs.lo_, MPFR_RNDU);
    return r;
}

DyadicInterval DyadicInterval::operator*(const DyadicInterval& rhs) const {
    DyadicInterval r(std::max(prec_, rhs.prec_), 0);
    const mpfr_srcptr xs[2] = {lo_, hi_};
    const mpfr_srcptr ys[2] = {rhs.lo_, rhs.hi_};
    mpfr_t prod;
    mpfr_init2(prod, r.prec_);
    bool first = true;
    for (const auto& x : xs) {
        for (const auto& y : ys) {
            mpfr_mul(prod, x, y, MPFR_RNDD);
            if (first || mpfr_less_p(prod, r.lo_)) mpfr_set(r.lo_, prod, MPFR_RNDD);
            mpfr_mul(prod, x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(prod, r.hi_)) mpfr_set(r.hi_, prod, MPFR_RNDU);
            first = false;
        }
    }
    mpfr_clear(prod);
    return r;
}

DyadicInterval DyadicInterval::operator/(const DyadicInterval& rhs) const {
    return *this * rhs.inverse();
}

DyadicInterval DyadicInterval::square() const {
    DyadicInterval r(prec_, 0);
    if (mpfr_sgn(lo_) >= 0) {
        mpfr_sqr(r.lo_, lo_, MPFR_RNDD);
        mpfr_sqr(r.hi_, hi_, MPFR_RNDU);
    } else if (mpfr_sgn(hi_) <= 0) {
        mpfr_sqr(r.lo_, hi_, MPFR_RNDD);
        mpfr_sqr(r.hi_, lo_, MPFR_RNDU);
    } else {
        mpfr_set_zero(r.lo_, 1);
        mpfr_t a, b;
        mpfr_init2(a, prec_);
        mpfr_init2(b, prec_);
        mpfr_sqr(a, lo_, MPFR_RNDU);
        mpfr_sqr(b, hi_, MPFR_RNDU);
        mpfr_max(r.hi_, a, b, MPFR_RNDU);
        mpfr_clear(a);
        mpfr_clear(b);
    }
    return r;
}

DyadicInterval DyadicInterval::inverse() const {
    if (contains_zero()) throw DomainError("division by an interval containing zero");
    DyadicInterval r(prec_, 0);
    mpfr_ui_div(r.lo_, 1, hi_, MPFR_RNDD);
    mpfr_ui_div(r.hi_, 1, lo_, MPFR_RNDU);
    return r;
}

DyadicInterval DyadicInterval::hull(const DyadicInterval& a, const DyadicInterval& b) {
    DyadicInterval r(std::max(a.prec_, b.prec_), 0);
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

namespace {

std::string endpoint_to_string(const Rat& v) {
    if (v == 0) return "0*2^0";
    mpz_class num = v.get_num();
    mpz_class den = v.get_den();
    // den = 2^k because endpoints are dyadic.
    long k = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 1;
    long shift = static_cast<long>(mpz_scan1(num.get_mpz_t(), 0));
    mpz_class m = num >> static_cast<unsigned long>(shift);
    long e = shift - k;
    return m.get_str() + "*2^" + std::to_string(e);
}

Rat endpoint_from_string(const std::string& s) {
    auto pos = s.find("*2^");
    if (pos == std::string::npos) throw ParseError("dyadic endpoint must look like 'm*2^e': '" + s + "'");
    Rat m = rat_from_string(s.substr(0, pos));
    if (m.get_den() != 1) throw ParseError("dyadic mantissa must be an integer: '" + s + "'");
    Rat e = rat_from_string(s.substr(pos + 3));
    if (e.get_den() != 1 || !e.get_num().fits_slong_p())
        throw ParseError("dyadic exponent out of range: '" + s + "'");
    return m * rat_pow2(e.get_num().get_si());
}

}  // namespace

std::string DyadicInterval::lo_string() const { return endpoint_to_string(lo()); }
std::string DyadicInterval::hi_string() const { return endpoint_to_string(hi()); }

DyadicInterval DyadicInterval::from_strings(const std::string& lo, const std::string& hi) {
    return exact(endpoint_from_string(lo), endpoint_from_string(hi));
}

Verdict certified_less(const DyadicInterval& lhs, const DyadicInterval& rhs) {
    if (lhs.hi() < rhs.lo()) return Verdict::PASS;
    if (lhs.lo() > rhs.hi()) return Verdict::FAIL;
    return Verdict::INDETERMINATE;
}

Verdict certified_leq(const DyadicInterval& lhs, const DyadicInterval& rhs) {
    if (lhs.hi() <= rhs.lo()) return Verdict::PASS;
    if (lhs.lo() > rhs.hi()) return Verdict::FAIL;
    return Verdict::INDETERMINATE;
}

}  // namespace jacobi
