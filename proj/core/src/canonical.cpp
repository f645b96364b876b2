#include "jacobi/canonical.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "jacobi/dyadic.hpp"
#include "jacobi/errors.hpp"
#include "jacobi/forward.hpp"
#include "jacobi/roots.hpp"
#include "row_support.hpp"

namespace jacobi {

namespace {

struct NeedsMoreBits {
    std::string what;
};

Rat dot(const HamiltonianInterval& a, const HamiltonianInterval& b) {
    return a.ex * b.ex + a.ey * b.ey;
}

// <perp(a), b> with perp(x, y) = (-y, x).
Rat perp_dot(const HamiltonianInterval& a, const HamiltonianInterval& b) {
    return a.ex * b.ey - a.ey * b.ex;
}

Rat norm_sq(const HamiltonianInterval& a) { return a.ex * a.ex + a.ey * a.ey; }

// delta_k^2 between consecutive directions, recomputed from the stored
// (scale-invariant) coordinates.
Rat overlap_sq(const HamiltonianInterval& a, const HamiltonianInterval& b) {
    const Rat c = perp_dot(a, b);
    if (c == 0) throw ParallelDirections("consecutive directions are parallel");
    return c * c / (norm_sq(a) * norm_sq(b));
}

// r_j = <e_j, e_{j+1}>/<perp(e_j), e_{j+1}>.
Rat direction_ratio(const HamiltonianInterval& a, const HamiltonianInterval& b) {
    const Rat c = perp_dot(a, b);
    if (c == 0) throw ParallelDirections("consecutive directions are parallel");
    return dot(a, b) / c;
}

void require_horizontal_start(const Hamiltonian& H) {
    if (H.intervals.empty() || H.intervals.front().ey != 0 || H.intervals.front().ex == 0)
        throw DomainError("first direction must be horizontal (proportional to (1,0))");
}

// Shared part of the open/closed translations: q_1..q_{K-1} and
// rho_1^2..rho_{K-2}^2 from the paper-side formulas.
void translate_interior(const Hamiltonian& H, std::vector<Rat>& diag, std::vector<Rat>& off,
                        std::vector<Rat>& ratio) {
    const std::size_t K = H.size();
    if (K < 2) throw DomainError("translation needs at least two intervals");
    require_horizontal_start(H);
    const auto& iv = H.intervals;
    ratio.resize(K - 1);
    for (std::size_t j = 0; j + 1 < K; ++j) ratio[j] = direction_ratio(iv[j], iv[j + 1]);
    diag.resize(K - 1);
    diag[0] = ratio[0] / iv[0].l;
    for (std::size_t j = 1; j + 1 < K; ++j) diag[j] = (ratio[j] + ratio[j - 1]) / iv[j].l;
    off.resize(K - 2);
    for (std::size_t j = 0; j + 2 < K; ++j)
        off[j] = Rat(1) / (iv[j].l * iv[j + 1].l * overlap_sq(iv[j], iv[j + 1]));
}

}  // namespace

Hamiltonian::Hamiltonian(const std::vector<Rat>& lengths,
                         const std::vector<std::pair<Rat, Rat>>& directions) {
    if (lengths.size() != directions.size())
        throw DomainError("need one direction per interval length");
    intervals.reserve(lengths.size());
    for (std::size_t k = 0; k < lengths.size(); ++k) {
        if (!(lengths[k] > 0)) throw DomainError("interval lengths must be positive");
        const auto& [ex, ey] = directions[k];
        if (ex == 0 && ey == 0) throw DomainError("directions must be nonzero");
        intervals.push_back({lengths[k], ex, ey, Rat(1)});
    }
    for (std::size_t k = 0; k + 1 < intervals.size(); ++k)
        intervals[k].delta_sq = overlap_sq(intervals[k], intervals[k + 1]);
}

JacobiMatrix hamiltonian_to_jacobi(const Hamiltonian& H) {
    std::vector<Rat> diag, off, ratio;
    translate_interior(H, diag, off, ratio);
    return JacobiMatrix(std::move(diag), std::move(off));
}

JacobiMatrix hamiltonian_to_jacobi_closed(const Hamiltonian& H) {
    std::vector<Rat> diag, off, ratio;
    translate_interior(H, diag, off, ratio);
    const std::size_t K = H.size();
    const HamiltonianInterval& last = H.intervals[K - 1];
    if (last.ey == 0)
        throw DomainError("no K x K closure for a horizontal final direction");
    diag.push_back((ratio[K - 2] - last.ex / last.ey) / last.l);
    off.push_back(Rat(1) /
                  (H.intervals[K - 2].l * last.l * overlap_sq(H.intervals[K - 2], last)));
    return JacobiMatrix(std::move(diag), std::move(off));
}

Hamiltonian jacobi_to_hamiltonian(const JacobiMatrix& J, const Rat& l1) {
    if (!(l1 > 0)) throw DomainError("first interval length must be positive");
    const std::size_t N = J.size();
    std::vector<Rat> lengths;
    std::vector<std::pair<Rat, Rat>> dirs;
    lengths.reserve(N + 1);
    dirs.reserve(N + 1);
    lengths.push_back(l1);
    dirs.emplace_back(Rat(1), Rat(0));
    Rat ex(1), ey(0);
    Rat l = l1;
    Rat r = J.diag[0] * l1;
    for (std::size_t j = 0;; ++j) {
        // e_{j+2} = -(r_{j+1} e_{j+1} + perp(e_{j+1})), perp(x, y) = (-y, x).
        Rat nex = -(r * ex - ey);
        Rat ney = -(r * ey + ex);
        dirs.emplace_back(nex, ney);
        const Rat dsq = Rat(1) / (1 + r * r);
        if (!(dsq > 0) || dsq > 1) throw DegenerateRatio("overlap escaped (0,1]");
        if (j + 1 == N) break;
        const Rat lnext = Rat(1) / (J.offdiag_sq[j] * l * dsq);
        lengths.push_back(lnext);
        r = J.diag[j + 1] * lnext - r;
        ex = nex;
        ey = ney;
        l = lnext;
    }
    lengths.push_back(Rat(1));
    Hamiltonian H(lengths, dirs);
    H.terminal_length_free = true;
    return H;
}

MonodromyPolys monodromy(const Hamiltonian& H) {
    MonodromyPolys M{RatPoly::constant(Rat(1)), RatPoly::constant(Rat(0)),
                     RatPoly::constant(Rat(0)), RatPoly::constant(Rat(1))};
    for (const HamiltonianInterval& iv : H.intervals) {
        const Rat n = norm_sq(iv);
        if (n == 0) throw DomainError("directions must be nonzero");
        if (!(iv.l > 0)) throw DomainError("interval lengths must be positive");
        // S^{-1} e e^T / <e,e> = [[xy, y^2], [-x^2, -xy]] / (x^2 + y^2).
        const Rat a = iv.l * iv.ex * iv.ey / n;
        const Rat b = iv.l * iv.ey * iv.ey / n;
        const Rat c = -(iv.l * iv.ex * iv.ex / n);
        const RatPoly F11 = RatPoly::constant(Rat(1)) + RatPoly::monomial(a, 1);
        const RatPoly F12 = RatPoly::monomial(b, 1);
        const RatPoly F21 = RatPoly::monomial(c, 1);
        const RatPoly F22 = RatPoly::constant(Rat(1)) - RatPoly::monomial(a, 1);
        RatPoly A = F11 * M.A + F12 * M.B;
        RatPoly C = F11 * M.C + F12 * M.D;
        RatPoly B = F21 * M.A + F22 * M.B;
        RatPoly D = F21 * M.C + F22 * M.D;
        M.A = std::move(A);
        M.B = std::move(B);
        M.C = std::move(C);
        M.D = std::move(D);
    }
    if (!(M.A * M.D - M.C * M.B == RatPoly::constant(Rat(1))))
        throw Error("internal: monodromy determinant is not identically one");
    return M;
}

namespace {

MonodromyMeasures extract_measures(const MonodromyPolys& M, mpfr_prec_t work) {
    std::vector<DyadicInterval> roots;
    for (const DyadicInterval& enc : isolate_real_roots(M.A))
        roots.push_back(refine_root(M.A, enc, static_cast<unsigned>(work)));
    if (roots.size() != static_cast<std::size_t>(M.A.degree()))
        throw DomainError("A must have a full set of simple real roots");
    const RatPoly Ap = M.A.derivative();

    MonodromyMeasures out;
    bool all_exact = true;
    Rat p_exact;
    DyadicInterval p_sum;
    for (const DyadicInterval& t : roots) {
        EnclosureAtom ma, na;
        ma.t = na.t = t;
        if (t.is_point()) {
            const Rat t0 = t.lo();
            if (t0 == 0)
                throw DomainError("pole at the origin has no partial-fraction representation");
            const Rat ap = Ap.eval(t0);
            const Rat m = -M.C.eval(t0) / ap;
            const Rat v = M.B.eval(t0) / ap;
            if (m <= 0) throw DomainError("spectral residue at an exact pole is not positive");
            if (v <= 0)
                throw DomainError("de Branges residue at an exact pole is not positive");
            ma.t_exact = na.t_exact = t0;
            ma.m_exact = m;
            na.m_exact = v;
            ma.m = DyadicInterval(m, work);
            na.m = DyadicInterval(v, work);
            p_exact -= v / (t0 * (1 + t0 * t0));
        } else {
            all_exact = false;
            const DyadicInterval ap = Ap.eval_interval(t);
            if (ap.contains_zero())
                throw NeedsMoreBits{"derivative enclosure touches zero at a pole"};
            const DyadicInterval m = -(M.C.eval_interval(t) / ap);
            const DyadicInterval v = M.B.eval_interval(t) / ap;
            if (!m.strictly_positive())
                throw NeedsMoreBits{"spectral residue not certified positive"};
            if (!v.strictly_positive())
                throw NeedsMoreBits{"de Branges residue not certified positive"};
            if (t.contains_zero())
                throw NeedsMoreBits{"pole enclosure touches the origin"};
            ma.m = m;
            na.m = v;
            const DyadicInterval one(Rat(1), work);
            p_sum = p_sum - v / (t * (one + t.square()));
        }
        out.mu.push_back(std::move(ma));
        out.nu.push_back(std::move(na));
    }
    for (std::size_t k = 0; k + 1 < out.mu.size(); ++k) {
        if (certified_less(out.mu[k].t, out.mu[k + 1].t) != Verdict::PASS)
            throw NeedsMoreBits{"pole ordering not certified"};
    }
    if (all_exact) {
        out.p = DyadicInterval(p_exact, work);
    } else {
        // Exact contributions enter the interval total at working precision.
        out.p = p_sum + DyadicInterval(p_exact, work);
    }
    return out;
}

}  // namespace

MonodromyMeasures measures_from_monodromy(const MonodromyPolys& M, mpfr_prec_t bits) {
    if (M.A.degree() == 0) throw NoSpectrum("A is constant; the chain carries no spectrum");
    if (M.A.squarefree_part().degree() != M.A.degree())
        throw NonSquarefreeA("A has repeated roots");
    mpfr_prec_t work = bits < 16 ? 16 : bits;
    const int max_doublings = 4;
    for (int attempt = 0;; ++attempt) {
        try {
            return extract_measures(M, work);
        } catch (const NeedsMoreBits& n) {
            if (attempt == max_doublings)
                throw PrecisionExhausted(n.what + " after precision escalation");
            work *= 2;
        }
    }
}

namespace {

using rows::add_gate;
using rows::add_row;
using rows::add_row_guarded;
using rows::from_interval;
using rows::from_rat;
using rows::Val;
using rows::vmul;
using rows::vsquare;

void add_window_gates(Report& report, const LacunarityParams& params, mpfr_prec_t work,
                      mpfr_prec_t prec) {
    add_gate(report, "gate_lambda_gt_1000", 0, Rat(1000), params.lambda, work);
    add_gate(report, "gate_kappa_gt_100", 0, Rat(100), params.kappa, work);
    add_row_guarded(
        report, "gate_theta_window_lower", 0, 0,
        [&] {
            return std::pair(rows::vdiv(from_rat(Rat(10), prec), from_rat(params.lambda, prec),
                                        prec),
                             from_rat(params.theta, prec));
        },
        true, work);
    add_gate(report, "gate_theta_window_upper", 0, params.theta, make_rat(1, 100), work);
}

// The two-sided window on the first overlap, certified through its square
// plus the sign of the unnormalized overlap (prefix distinguishes the
// hypothesis role from the conclusion role).
void add_delta1_window(Report& report, const Hamiltonian& H, const std::string& prefix,
                       mpfr_prec_t work, mpfr_prec_t prec) {
    const Rat overlap_signed = -perp_dot(H.intervals[0], H.intervals[1]);
    add_row(report, prefix + "delta1_sign", 0, 1, from_rat(Rat(0), prec),
            from_rat(overlap_signed, prec), true, work);
    const Rat d1sq = overlap_sq(H.intervals[0], H.intervals[1]);
    add_row(report, prefix + "delta1_window_lower", 0, 1, from_rat(make_rat(1, 1002001), prec),
            from_rat(d1sq, prec), true, work);
    add_row(report, prefix + "delta1_window_upper", 0, 1, from_rat(d1sq, prec),
            from_rat(make_rat(1, 1000000), prec), true, work);
}

}  // namespace

Report theorem14_check(const DiscreteMeasure& mu, const LacunarityParams& params,
                       mpfr_prec_t bits) {
    const mpfr_prec_t work = bits < 16 ? 16 : bits;
    const mpfr_prec_t prec = work + 64;
    Report report;
    add_window_gates(report, params, work, prec);

    // Hypotheses: the measure is completely lacunary with the given triple.
    const auto& atoms = mu.atoms();
    const std::size_t N = atoms.size();
    for (std::size_t k = 0; k < N; ++k)
        add_row(report, "hyp_support_positive", 0, static_cast<long>(k) + 1,
                from_rat(Rat(0), prec), from_rat(atoms[k].t, prec), true, work);
    for (std::size_t k = 0; k + 1 < N; ++k) {
        const long idx = static_cast<long>(k) + 1;
        add_row(report, "hyp_position_ratio", 0, idx,
                from_rat(params.lambda * atoms[k].t, prec), from_rat(atoms[k + 1].t, prec),
                true, work);
        add_row(report, "hyp_mass_ratio", 0, idx,
                from_rat(params.kappa * atoms[k].m * atoms[k + 1].t, prec),
                from_rat(atoms[k + 1].m * atoms[k].t, prec), true, work);
        add_row(report, "hyp_decay_ratio", 0, idx,
                from_rat(atoms[k + 1].m * atoms[k].t * atoms[k].t, prec),
                from_rat(params.theta * atoms[k].m * atoms[k + 1].t * atoms[k + 1].t, prec),
                true, work);
    }
    if (report.any_fail())
        report.warnings.push_back("hypotheses not satisfied; conclusions evaluated anyway");

    // Pipeline: exact inverse run, then the chain with l_1 = 1000/q_1.
    InverseResult inv = inverse_spectral(mu, work);
    const Rat& q1 = inv.jacobi.diag[0];
    if (q1 == 0) throw DomainError("first length 1000/q_1 undefined: q_1 = 0");
    Hamiltonian H = jacobi_to_hamiltonian(inv.jacobi, Rat(1000) / q1);

    add_delta1_window(report, H, "", work, prec);

    // Per-pair conclusions on overlaps delta_1..delta_{K-1} (all positive by
    // construction, so the squared comparisons carry the sign-free content).
    const std::size_t K = H.size();
    for (std::size_t n = 0; n + 2 < K; ++n) {
        const long idx = static_cast<long>(n) + 1;
        const Rat da = overlap_sq(H.intervals[n], H.intervals[n + 1]);
        const Rat db = overlap_sq(H.intervals[n + 1], H.intervals[n + 2]);
        const Rat& la = H.intervals[n].l;
        const Rat& lb = H.intervals[n + 1].l;
        add_row_guarded(
            report, "overlap_ratio", 0, idx,
            [&] {
                if (!(params.kappa > 0)) throw DomainError("squared form needs kappa > 0");
                return std::pair(from_rat(params.kappa * params.kappa * db, prec),
                                 from_rat(Rat(100) * da, prec));
            },
            true, work);
        add_row_guarded(
            report, "length_overlap_growth", 0, idx,
            [&] {
                if (!(params.lambda > 0)) throw DomainError("squared form needs lambda > 0");
                return std::pair(from_rat(params.lambda * params.lambda * la * la * da, prec),
                                 from_rat(Rat(100) * lb * lb * db, prec));
            },
            true, work);
        add_row_guarded(
            report, "length_decay_growth", 0, idx,
            [&] {
                if (!(params.theta > 0)) throw DomainError("cross-multiplied form needs theta > 0");
                return std::pair(from_rat(la * da, prec),
                                 from_rat(Rat(1000) * params.theta * lb * db, prec));
            },
            true, work);
    }
    return report;
}

Report theorem15_check(const Hamiltonian& H, const LacunarityParams& params, mpfr_prec_t bits) {
    const std::size_t K = H.size();
    if (K < 2) throw DomainError("chain needs at least two intervals");
    require_horizontal_start(H);
    const JacobiMatrix J = hamiltonian_to_jacobi(H);

    mpfr_prec_t work = bits < 16 ? 16 : bits;
    const int max_doublings = 4;
    for (int attempt = 0;; ++attempt) {
        Report report;
        const mpfr_prec_t prec = work + 64;
        add_window_gates(report, params, work, prec);

        // Chain-side hypotheses: overlap signs, the first-overlap window and
        // the three 100-fold ratio growths per consecutive overlap pair.
        for (std::size_t n = 0; n + 1 < K; ++n)
            add_row(report, "hyp_overlap_sign", 0, static_cast<long>(n) + 1,
                    from_rat(Rat(0), prec),
                    from_rat(-perp_dot(H.intervals[n], H.intervals[n + 1]), prec), true, work);
        add_delta1_window(report, H, "hyp_", work, prec);
        for (std::size_t n = 0; n + 2 < K; ++n) {
            const long idx = static_cast<long>(n) + 1;
            const Rat da = overlap_sq(H.intervals[n], H.intervals[n + 1]);
            const Rat db = overlap_sq(H.intervals[n + 1], H.intervals[n + 2]);
            const Rat& la = H.intervals[n].l;
            const Rat& lb = H.intervals[n + 1].l;
            add_row_guarded(
                report, "hyp_overlap_ratio", 0, idx,
                [&] {
                    if (!(params.kappa > 0)) throw DomainError("squared form needs kappa > 0");
                    return std::pair(
                        from_rat(Rat(10000) * params.kappa * params.kappa * db, prec),
                        from_rat(da, prec));
                },
                true, work);
            add_row_guarded(
                report, "hyp_length_overlap_growth", 0, idx,
                [&] {
                    if (!(params.lambda > 0))
                        throw DomainError("squared form needs lambda > 0");
                    return std::pair(
                        from_rat(Rat(10000) * params.lambda * params.lambda * la * la * da,
                                 prec),
                        from_rat(lb * lb * db, prec));
                },
                true, work);
            add_row_guarded(
                report, "hyp_length_decay_growth", 0, idx,
                [&] {
                    if (!(params.theta > 0))
                        throw DomainError("cross-multiplied form needs theta > 0");
                    return std::pair(from_rat(Rat(100) * la * da, prec),
                                     from_rat(params.theta * lb * db, prec));
                },
                true, work);
        }
        if (report.any_fail())
            report.warnings.push_back("hypotheses not satisfied; conclusions evaluated anyway");

        // Conclusion: the translated matrix's spectral measure is completely
        // lacunary with the same triple.
        ForwardResult fr = spectral_measure(J, work);
        const std::size_t N = fr.measure_enclosures.size();
        std::vector<Val> t(N), mass(N);
        bool positive_support = true;
        for (std::size_t n = 0; n < N; ++n) {
            t[n] = from_interval(fr.measure_enclosures[n].t, fr.measure_enclosures[n].t_exact);
            mass[n] =
                from_interval(fr.measure_enclosures[n].m, fr.measure_enclosures[n].m_exact);
            positive_support = positive_support &&
                               (t[n].exact ? *t[n].exact > 0 : t[n].iv.strictly_positive());
        }
        if (!positive_support && N >= 2)
            report.warnings.push_back(
                "support not certified positive; lacunarity rows not applicable");
        for (std::size_t k = 0; k + 1 < N; ++k) {
            const long idx = static_cast<long>(k) + 1;
            if (!positive_support) {
                report.rows.push_back(not_applicable_row("lacunary_position", 0, idx,
                                                         DyadicInterval(), DyadicInterval()));
                report.rows.push_back(not_applicable_row("lacunary_mass_ratio", 0, idx,
                                                         DyadicInterval(), DyadicInterval()));
                report.rows.push_back(not_applicable_row("lacunary_decay", 0, idx,
                                                         DyadicInterval(), DyadicInterval()));
                continue;
            }
            add_row(report, "lacunary_position", 0, idx,
                    vmul(from_rat(params.lambda, prec), t[k], prec), t[k + 1], true, work);
            add_row(report, "lacunary_mass_ratio", 0, idx,
                    vmul(from_rat(params.kappa, prec), vmul(mass[k], t[k + 1], prec), prec),
                    vmul(mass[k + 1], t[k], prec), true, work);
            add_row(report, "lacunary_decay", 0, idx,
                    vmul(mass[k + 1], vsquare(t[k], prec), prec),
                    vmul(from_rat(params.theta, prec),
                         vmul(mass[k], vsquare(t[k + 1], prec), prec), prec),
                    true, work);
        }
        if (report.any_refinable_indeterminate() && attempt < max_doublings) {
            work *= 2;
            continue;
        }
        return report;
    }
}

}  // namespace jacobi
