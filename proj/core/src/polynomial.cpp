#include "jacobi/polynomial.hpp"

#include <algorithm>

#include "jacobi/errors.hpp"

namespace jacobi {

RatPoly::RatPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void RatPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

RatPoly RatPoly::constant(const Rat& c) { return RatPoly(std::vector<Rat>{c}); }

RatPoly RatPoly::monomial(const Rat& c, std::size_t degree) {
    std::vector<Rat> v(degree + 1, Rat(0));
    v[degree] = c;
    return RatPoly(std::move(v));
}

RatPoly RatPoly::linear_x_minus(const Rat& root) {
    return RatPoly(std::vector<Rat>{-root, Rat(1)});
}

RatPoly RatPoly::linear_minus_x(const Rat& root) {
    return RatPoly(std::vector<Rat>{root, Rat(-1)});
}

Rat RatPoly::coeff(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : Rat(0);
}

Rat RatPoly::leading() const { return coeffs_.empty() ? Rat(0) : coeffs_.back(); }

RatPoly RatPoly::operator+(const RatPoly& rhs) const {
    std::vector<Rat> v(std::max(coeffs_.size(), rhs.coeffs_.size()), Rat(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] += coeffs_[i];
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) v[i] += rhs.coeffs_[i];
    return RatPoly(std::move(v));
}

RatPoly RatPoly::operator-(const RatPoly& rhs) const { return *this + (-rhs); }

RatPoly RatPoly::operator-() const {
    std::vector<Rat> v(coeffs_);
    for (auto& c : v) c = -c;
    return RatPoly(std::move(v));
}

RatPoly RatPoly::operator*(const RatPoly& rhs) const {
    if (is_zero() || rhs.is_zero()) return RatPoly();
    std::vector<Rat> v(coeffs_.size() + rhs.coeffs_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * rhs.coeffs_[j];
    return RatPoly(std::move(v));
}

RatPoly RatPoly::operator*(const Rat& scalar) const {
    std::vector<Rat> v(coeffs_);
    for (auto& c : v) c *= scalar;
    return RatPoly(std::move(v));
}

Rat RatPoly::eval(const Rat& x) const {
    Rat acc(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
}

DyadicInterval RatPoly::eval_interval(const DyadicInterval& x) const {
    DyadicInterval acc(Rat(0), x.precision());
    for (std::size_t i = coeffs_.size(); i-- > 0;)
        acc = acc * x + DyadicInterval(coeffs_[i], x.precision());
    return acc;
}

RatPoly RatPoly::derivative() const {
    if (coeffs_.size() <= 1) return RatPoly();
    std::vector<Rat> v(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * Rat(static_cast<long>(i));
    return RatPoly(std::move(v));
}

std::pair<RatPoly, RatPoly> RatPoly::divmod(const RatPoly& divisor) const {
    if (divisor.is_zero()) throw DomainError("polynomial division by zero");
    RatPoly rem = *this;
    int dd = divisor.degree();
    if (rem.degree() < dd) return {RatPoly(), rem};
    std::vector<Rat> q(static_cast<std::size_t>(rem.degree() - dd) + 1, Rat(0));
    const Rat& lead = divisor.coeffs_.back();
    while (!rem.is_zero() && rem.degree() >= dd) {
        std::size_t shift = static_cast<std::size_t>(rem.degree() - dd);
        Rat factor = rem.coeffs_.back() / lead;
        q[shift] = factor;
        for (std::size_t i = 0; i < divisor.coeffs_.size(); ++i)
            rem.coeffs_[shift + i] -= factor * divisor.coeffs_[i];
        rem.trim();
    }
    return {RatPoly(std::move(q)), rem};
}

RatPoly RatPoly::gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        RatPoly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a * (Rat(1) / a.leading());  // monic normalization
}

RatPoly RatPoly::squarefree_part() const {
    if (degree() <= 0) return *this;
    RatPoly g = gcd(*this, derivative());
    if (g.degree() == 0) return *this;
    return divmod(g).first;
}

std::string RatPoly::to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        if (coeffs_[i] == 0) continue;
        if (!s.empty()) s += " + ";
        s += rat_to_string(coeffs_[i]);
        if (i >= 1) s += "*z";
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
}

}  // namespace jacobi
