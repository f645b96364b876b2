#include "jacobi/rational.hpp"

#include <cctype>
#include <cstddef>

namespace jacobi {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

// Parses an optionally signed integer written in decimal digits.
mpz_class parse_integer(const std::string& s, const std::string& original) {
    std::string body = s;
    bool negative = false;
    if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
        negative = body[0] == '-';
        body = body.substr(1);
    }
    if (!all_digits(body)) throw ParseError("not a rational: '" + original + "'");
    mpz_class z(body, 10);
    if (negative) z = -z;
    return z;
}

}  // namespace

Rat rat_from_string(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (std::size_t i = 0; i < text.size();) {
        // U+2212 (minus sign) in UTF-8 is E2 88 92; accept it as '-'.
        if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
            static_cast<unsigned char>(text[i + 1]) == 0x88 &&
            static_cast<unsigned char>(text[i + 2]) == 0x92) {
            s += '-';
            i += 3;
            continue;
        }
        if (!std::isspace(static_cast<unsigned char>(text[i]))) s += text[i];
        ++i;
    }
    if (s.empty()) throw ParseError("empty rational literal");

    if (auto slash = s.find('/'); slash != std::string::npos) {
        mpz_class num = parse_integer(s.substr(0, slash), text);
        mpz_class den = parse_integer(s.substr(slash + 1), text);
        if (den == 0) throw ParseError("zero denominator: '" + text + "'");
        Rat r(num, den);
        r.canonicalize();
        return r;
    }

    std::string mantissa = s;
    long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
        mantissa = s.substr(0, e);
        mpz_class ez = parse_integer(s.substr(e + 1), text);
        if (!ez.fits_slong_p()) throw ParseError("exponent out of range: '" + text + "'");
        exp10 = ez.get_si();
    }

    long frac_digits = 0;
    if (auto dot = mantissa.find('.'); dot != std::string::npos) {
        std::string frac = mantissa.substr(dot + 1);
        if (!all_digits(frac) && !frac.empty())
            throw ParseError("not a rational: '" + text + "'");
        frac_digits = static_cast<long>(frac.size());
        mantissa = mantissa.substr(0, dot) + frac;
        if (mantissa.empty() || mantissa == "+" || mantissa == "-")
            throw ParseError("not a rational: '" + text + "'");
    }

    mpz_class m = parse_integer(mantissa, text);
    long net = exp10 - frac_digits;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(net < 0 ? -net : net));
    Rat r = net >= 0 ? Rat(m * pow10) : Rat(m, pow10);
    r.canonicalize();
    return r;
}

std::string rat_to_string(const Rat& value) {
    Rat v = value;
    v.canonicalize();  // defensive: callers may hand us raw two-arg constructions
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

Rat rat_pow(const Rat& value, long exponent) {
    if (exponent == 0) return Rat(1);
    if (value == 0 && exponent < 0) throw DomainError("0 raised to a negative power");
    unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), value.get_num().get_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), value.get_den().get_mpz_t(), e);
    Rat r = exponent > 0 ? Rat(num, den) : Rat(den, num);
    r.canonicalize();
    return r;
}

Rat rat_pow2(long exponent) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    return exponent >= 0 ? Rat(p) : Rat(1, p);
}

int rat_sign(const Rat& value) { return sgn(value); }

Rat rat_abs(const Rat& value) { return abs(value); }

const Rat& rat_min(const Rat& a, const Rat& b) { return a <= b ? a : b; }

const Rat& rat_max(const Rat& a, const Rat& b) { return a >= b ? a : b; }

bool rat_is_dyadic(const Rat& value) {
    mpz_class den = value.get_den();
    // A canonical denominator is a power of two iff den & (den-1) == 0.
    mpz_class t = den & (den - 1);
    return t == 0;
}

}  // namespace jacobi
