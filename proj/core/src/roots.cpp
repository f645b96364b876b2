#include "jacobi/roots.hpp"

#include <algorithm>

#include "jacobi/errors.hpp"

namespace jacobi {

namespace {

// Sturm chain: s0 = p, s1 = p', s_{k+1} = -rem(s_{k-1}, s_k).
std::vector<RatPoly> sturm_chain(const RatPoly& p) {
    std::vector<RatPoly> chain;
    chain.push_back(p);
    chain.push_back(p.derivative());
    while (!chain.back().is_zero() && chain.back().degree() >= 0) {
        const RatPoly& a = chain[chain.size() - 2];
        const RatPoly& b = chain.back();
        if (b.degree() == 0) break;
        RatPoly r = a.divmod(b).second;
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    return chain;
}

// Number of sign changes of the chain evaluated exactly at x (zeros skipped).
int sign_variations(const std::vector<RatPoly>& chain, const Rat& x) {
    int count = 0;
    int prev = 0;
    for (const RatPoly& s : chain) {
        int sg = rat_sign(s.eval(x));
        if (sg == 0) continue;
        if (prev != 0 && sg != prev) ++count;
        prev = sg;
    }
    return count;
}

// Smallest power of two B with every real root of p inside (-B, B)
// (Cauchy bound 1 + max |a_i/a_n| rounded up).
Rat cauchy_power_of_two(const RatPoly& p) {
    Rat lead = rat_abs(p.leading());
    Rat m(0);
    for (int i = 0; i < p.degree(); ++i)
        m = rat_max(m, rat_abs(p.coeff(static_cast<std::size_t>(i))) / lead);
    Rat bound = 1 + m;
    Rat b(2);
    while (b < bound) b *= 2;
    return b;
}

struct Isolator {
    const RatPoly& p;
    std::vector<RatPoly> chain;
    std::vector<DyadicInterval> out;

    int var(const Rat& x) { return sign_variations(chain, x); }

    // Emits isolating intervals for all roots in (a, b), in ascending order.
    // Preconditions: a < b dyadic, p(a) != 0, p(b) != 0, count = var(a) - var(b).
    // Tightens a single-root bracket by a few exact-sign bisection steps so
    // that roots sitting exactly on dyadic probe points collapse to point
    // intervals (e.g. the root of z - 2).
    void polish_and_emit(Rat a, Rat b) {
        int sa = rat_sign(p.eval(a));
        for (int step = 0; step < 12; ++step) {
            Rat mid = (a + b) / 2;
            if (b - a <= rat_max(Rat(1), rat_abs(mid)) / 256) break;
            int sm = rat_sign(p.eval(mid));
            if (sm == 0) {
                out.push_back(DyadicInterval::exact_point(mid));
                return;
            }
            if (sm == sa) {
                a = mid;
            } else {
                b = mid;
            }
        }
        out.push_back(DyadicInterval::exact(a, b));
    }

    void isolate(const Rat& a, const Rat& b, int count, int va, int vb) {
        if (count <= 0) return;
        if (count == 1) {
            polish_and_emit(a, b);
            return;
        }
        Rat mid = (a + b) / 2;
        if (rat_sign(p.eval(mid)) == 0) {
            // mid is an exact dyadic root: emit it as a point and shrink the
            // flanks until they contain no further root of the middle gap.
            Rat eps = (b - a) / 4;
            while (true) {
                Rat left = mid - eps;
                Rat right = mid + eps;
                if (rat_sign(p.eval(left)) != 0 && rat_sign(p.eval(right)) != 0) {
                    int vl = var(left);
                    int vr = var(right);
                    if (vl - vr == 1) {
                        isolate(a, left, va - vl, va, vl);
                        out.push_back(DyadicInterval::exact_point(mid));
                        isolate(right, b, vr - vb, vr, vb);
                        return;
                    }
                }
                eps /= 2;
            }
        }
        int vm = var(mid);
        isolate(a, mid, va - vm, va, vm);
        isolate(mid, b, vm - vb, vm, vb);
    }
};

int endpoint_sign(const RatPoly& p, const Rat& x) { return rat_sign(p.eval(x)); }

}  // namespace

std::vector<DyadicInterval> isolate_real_roots(const RatPoly& p) {
    if (p.is_zero()) throw NonSquarefree("zero polynomial");
    if (p.degree() >= 1) {
        RatPoly g = RatPoly::gcd(p, p.derivative());
        if (g.degree() > 0) throw NonSquarefree("gcd(p, p') has degree " + std::to_string(g.degree()));
    }
    if (p.degree() <= 0) return {};

    Rat b = cauchy_power_of_two(p);
    Rat a = -b;
    Isolator iso{p, sturm_chain(p), {}};
    int va = iso.var(a);
    int vb = iso.var(b);
    iso.isolate(a, b, va - vb, va, vb);
    return std::move(iso.out);
}

DyadicInterval refine_root(const RatPoly& p, const DyadicInterval& enclosure, unsigned bits) {
    Rat a = enclosure.lo();
    Rat b = enclosure.hi();
    if (a == b) {
        if (endpoint_sign(p, a) == 0) return enclosure;
        throw NoSignChange("point enclosure does not sit on a root");
    }
    int sa = endpoint_sign(p, a);
    int sb = endpoint_sign(p, b);
    if (sa == 0) return DyadicInterval::exact_point(a);
    if (sb == 0) return DyadicInterval::exact_point(b);
    if (sa == sb) throw NoSignChange("endpoint signs agree");

    const Rat tol = rat_pow2(-static_cast<long>(bits));
    while (true) {
        Rat mid = (a + b) / 2;
        if (b - a <= tol * rat_max(Rat(1), rat_abs(mid))) break;
        int sm = endpoint_sign(p, mid);
        if (sm == 0) return DyadicInterval::exact_point(mid);
        if (sm == sa) {
            a = mid;
        } else {
            b = mid;
        }
    }
    return DyadicInterval::exact(a, b);
}

}  // namespace jacobi
