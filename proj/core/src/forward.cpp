#include "jacobi/forward.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "jacobi/errors.hpp"
#include "row_support.hpp"

namespace jacobi {

using namespace rows;

namespace {

// fs[n-1] = the level-n function of the bottom-up assembly, n = 1..N:
// fs[N-1] = 1/(q_N - z) and -1/fs[n-1] = z - q_n + rho_n^2 fs[n]. The signs
// below keep every level canonical (den = prod (t_k - z)) with unit mass.
std::vector<RationalHerglotz> assembly_levels(const JacobiMatrix& J) {
    const std::size_t N = J.size();
    std::vector<RationalHerglotz> fs(N);
    fs[N - 1] =
        RationalHerglotz{RatPoly::constant(Rat(1)), RatPoly::linear_minus_x(J.diag[N - 1])};
    for (std::size_t i = N - 1; i-- > 0;) {
        fs[i] = RationalHerglotz{fs[i + 1].den,
                                 RatPoly::linear_minus_x(J.diag[i]) * fs[i + 1].den -
                                     fs[i + 1].num * J.offdiag_sq[i]};
    }
    return fs;
}

}  // namespace

RationalHerglotz assemble_herglotz(const JacobiMatrix& J) {
    return assembly_levels(J).front();
}

RatPoly characteristic_polynomial(const JacobiMatrix& J) {
    RatPoly prev = RatPoly::constant(Rat(1));
    RatPoly cur = RatPoly::linear_minus_x(J.diag[0]);
    for (std::size_t k = 1; k < J.size(); ++k) {
        RatPoly next = RatPoly::linear_minus_x(J.diag[k]) * cur - prev * J.offdiag_sq[k - 1];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

ForwardResult spectral_measure(const JacobiMatrix& J, mpfr_prec_t bits) {
    ForwardResult out;
    out.herglotz = assemble_herglotz(J);
    out.measure_enclosures = measure_enclosure_from_herglotz(out.herglotz, bits);
    return out;
}

Report theorem13_check(const JacobiMatrix& J, const LacunarityParams& params, mpfr_prec_t bits) {
    if (!(params.lambda > 10000))
        throw EmptyParameterWindow(
            "the admissible theta window (10/lambda, 1/1000) is empty unless lambda > 10^4");

    const std::size_t N = J.size();
    const int max_doublings = 4;
    mpfr_prec_t work = bits < 16 ? 16 : bits;
    for (int attempt = 0;; ++attempt) {
        Report report;
        const mpfr_prec_t prec = work + 64;

        add_gate(report, "gate_lambda_gt_1000", 0, Rat(1000), params.lambda, work);
        add_gate(report, "gate_kappa_gt_100", 0, Rat(100), params.kappa, work);
        add_row_guarded(
            report, "gate_theta_window_lower", 0, 0,
            [&] {
                return std::pair(vdiv(from_rat(Rat(10), prec), from_rat(params.lambda, prec),
                                      prec),
                                 from_rat(params.theta, prec));
            },
            true, work);
        add_gate(report, "gate_theta_window_upper", 0, params.theta, make_rat(1, 1000), work);

        // Hypothesis rows, exact: diagonal decay and the two-sided coupling
        // window, per adjacent pair.
        for (std::size_t n = 0; n + 1 < N; ++n) {
            const long idx = static_cast<long>(n) + 1;
            add_row(report, "hyp_diag_ratio", 0, idx,
                    from_rat(3 * params.lambda * J.diag[n + 1], prec), from_rat(J.diag[n], prec),
                    true, work);
            add_row_guarded(
                report, "hyp_coupling_lower", 0, idx,
                [&] {
                    Val lhs = vdiv(from_rat(20 * J.diag[n + 1] * J.diag[n + 1], prec),
                                   from_rat(params.theta, prec), prec);
                    return std::pair(lhs, from_rat(J.offdiag_sq[n], prec));
                },
                true, work);
            add_row_guarded(
                report, "hyp_coupling_upper", 0, idx,
                [&] {
                    Val rhs = vdiv(from_rat(J.diag[n] * J.diag[n + 1], prec),
                                   from_rat(20 * params.kappa, prec), prec);
                    return std::pair(from_rat(J.offdiag_sq[n], prec), rhs);
                },
                true, work);
        }
        if (report.any_fail())
            report.warnings.push_back(
                "hypotheses not satisfied; conclusions evaluated anyway");

        // Conclusions on the reconstructed spectral data. Poles ascend, so
        // the n-th pole pairs with the (N-n+1)-th diagonal entry.
        ForwardResult fr = spectral_measure(J, work);
        std::vector<Val> t(N), mass(N);
        bool positive_support = true;
        for (std::size_t n = 0; n < N; ++n) {
            t[n] = from_interval(fr.measure_enclosures[n].t, fr.measure_enclosures[n].t_exact);
            mass[n] = from_interval(fr.measure_enclosures[n].m, fr.measure_enclosures[n].m_exact);
            positive_support =
                positive_support &&
                (t[n].exact ? *t[n].exact > 0 : t[n].iv.strictly_positive());
        }
        for (std::size_t n = 0; n < N; ++n) {
            const long idx = static_cast<long>(n) + 1;
            const Rat& qrev = J.diag[N - 1 - n];
            add_row_guarded(
                report, "pole_bracket_lower", 0, idx,
                [&] {
                    Val lhs = vmul(vsub(from_rat(Rat(1), prec),
                                        vdiv(from_rat(Rat(1), prec),
                                             from_rat(params.kappa, prec), prec),
                                        prec),
                                   from_rat(qrev, prec), prec);
                    return std::pair(lhs, t[n]);
                },
                true, work);
            add_row_guarded(
                report, "pole_bracket_upper", 0, idx,
                [&] {
                    Val rhs = vmul(vadd(from_rat(Rat(1), prec),
                                        vdiv(from_rat(Rat(1), prec),
                                             from_rat(params.lambda, prec), prec),
                                        prec),
                                   from_rat(qrev, prec), prec);
                    return std::pair(t[n], rhs);
                },
                true, work);
        }

        // Completely-lacunary conclusion: position ratio, mass-over-position
        // growth and decay, cross-multiplied (valid on certified positive
        // support).
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
                    vmul(from_rat(params.kappa, prec),
                         vmul(mass[k], t[k + 1], prec), prec),
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

Report statement41_certify(const JacobiMatrix& J, const LacunarityParams& params,
                           mpfr_prec_t bits) {
    const std::size_t N = J.size();
    if (N < 2) {
        Report report;
        report.warnings.push_back("no reversed step for a single diagonal entry");
        return report;
    }

    const std::vector<RationalHerglotz> fs = assembly_levels(J);
    const int max_doublings = 4;
    mpfr_prec_t work = bits < 16 ? 16 : bits;
    for (int attempt = 0;; ++attempt) {
        Report report;
        const mpfr_prec_t prec = work + 64;

        add_gate(report, "gate_kappa_gt_10", 0, Rat(10), params.kappa, work);
        add_gate(report, "gate_theta_positive", 0, Rat(0), params.theta, work);
        add_gate(report, "gate_theta_lt_1", 0, params.theta, Rat(1), work);
        add_gate(report, "gate_lambda_gt_1", 0, Rat(1), params.lambda, work);
        const bool gates_pass = report.all_pass();
        if (!gates_pass)
            report.warnings.push_back(
                "parameter gates not satisfied; statement rows not applicable");

        std::vector<EnclosureMeasure> pw(N);
        for (std::size_t i = 0; i < N; ++i)
            pw[i] = measure_enclosure_from_herglotz(fs[i], work);

        // One certificate block per assembly step, from the bottom (level
        // N-1 assembles the two lowest entries) to the full matrix (level 1).
        for (std::size_t n = N - 1; n >= 1; --n) {
            const long lvl = static_cast<long>(n);
            const EnclosureMeasure& sa = pw[n];
            const EnclosureMeasure& ta = pw[n - 1];
            const Rat& b = J.diag[n - 1];
            const Rat& rho2 = J.offdiag_sq[n - 1];
            const std::size_t cnt = sa.size();
            const long top_index = static_cast<long>(cnt) + 1;  // the level's atom count

            std::vector<Val> s(cnt), w(cnt);
            for (std::size_t k = 0; k < cnt; ++k) {
                s[k] = from_interval(sa[k].t, sa[k].t_exact);
                w[k] = vmul(from_rat(rho2, prec), from_interval(sa[k].m, sa[k].m_exact), prec);
            }
            std::vector<Val> t(ta.size());
            for (std::size_t k = 0; k < ta.size(); ++k)
                t[k] = from_interval(ta[k].t, ta[k].t_exact);

            // Standing hypotheses for this step.
            const std::size_t hyp_begin = report.rows.size();
            add_row(report, "hyp_top_gap", lvl, 0,
                    vmul(from_rat(params.lambda, prec), s[cnt - 1], prec), from_rat(b, prec),
                    true, work);
            for (std::size_t k = 0; k + 1 < cnt; ++k) {
                const long idx = static_cast<long>(k) + 1;
                add_row(report, "hyp_pole_lacunary", lvl, idx,
                        vmul(from_rat(params.lambda, prec), s[k], prec), s[k + 1], true, work);
                add_row_guarded(
                    report, "hyp_weight_ratio", lvl, idx,
                    [&] {
                        Val lhs = vmul(from_rat(params.kappa, prec),
                                       vdiv(s[k + 1], s[k], prec), prec);
                        return std::pair(lhs, vdiv(w[k + 1], w[k], prec));
                    },
                    true, work);
                add_row_guarded(
                    report, "hyp_weight_decay", lvl, idx,
                    [&] {
                        Val lhs = vdiv(w[k + 1], vsquare(s[k + 1], prec), prec);
                        Val rhs = vmul(from_rat(params.theta, prec),
                                       vdiv(w[k], vsquare(s[k], prec), prec), prec);
                        return std::pair(lhs, rhs);
                    },
                    true, work);
            }
            // Total weight equals rho^2 exactly (the reversed step's weights
            // sum to the coupling), so the window rows stay exact in the
            // parameters and the top pole.
            add_row_guarded(
                report, "hyp_weight_total_lower", lvl, 0,
                [&] {
                    Val lhs = vmul(vdiv(from_rat(Rat(10), prec), from_rat(params.theta, prec),
                                        prec),
                                   vsquare(s[cnt - 1], prec), prec);
                    return std::pair(lhs, from_rat(rho2, prec));
                },
                true, work);
            add_row_guarded(
                report, "hyp_weight_total_upper", lvl, 0,
                [&] {
                    Val rhs = vmul(vdiv(from_rat(b, prec), from_rat(10 * params.kappa, prec),
                                        prec),
                                   s[cnt - 1], prec);
                    return std::pair(from_rat(rho2, prec), rhs);
                },
                true, work);

            bool hyps_ok = gates_pass;
            for (std::size_t r = hyp_begin; r < report.rows.size(); ++r)
                hyps_ok = hyps_ok && report.rows[r].verdict == Verdict::PASS;

            if (!hyps_ok) {
                report.warnings.push_back("standing hypotheses not certified at level " +
                                          std::to_string(n) +
                                          "; localization rows not applicable");
                for (std::size_t k = 0; k < cnt; ++k) {
                    const long idx = static_cast<long>(k) + 1;
                    report.rows.push_back(not_applicable_row("offset_lower", lvl, idx,
                                                             DyadicInterval(), DyadicInterval()));
                    report.rows.push_back(not_applicable_row("offset_upper", lvl, idx,
                                                             DyadicInterval(), DyadicInterval()));
                    report.rows.push_back(not_applicable_row("offset_decay", lvl, idx,
                                                             DyadicInterval(), DyadicInterval()));
                }
                report.rows.push_back(not_applicable_row("top_entry_lower", lvl, top_index,
                                                         DyadicInterval(), DyadicInterval()));
                report.rows.push_back(not_applicable_row("top_entry_upper", lvl, top_index,
                                                         DyadicInterval(), DyadicInterval()));
                continue;
            }

            const Val bval = from_rat(b, prec);
            for (std::size_t k = 0; k < cnt; ++k) {
                const long idx = static_cast<long>(k) + 1;
                Val gap = vsub(s[k], t[k], prec);
                Val wb = vdiv(w[k], bval, prec);
                add_row(report, "offset_lower", lvl, idx,
                        vmul(from_rat(1 - 2 / params.kappa, prec), wb, prec), gap, true, work);
                add_row(report, "offset_upper", lvl, idx, gap,
                        vmul(from_rat(1 + 2 / params.lambda + 2 / params.kappa, prec), wb, prec),
                        true, work);
                // Decay corollary: the offset is below kappa^(k - N_level)/5
                // of the pole itself.
                const long expo = idx - top_index;
                add_row(report, "offset_decay", lvl, idx, gap,
                        vmul(from_rat(rat_pow(params.kappa, expo) / 5, prec), s[k], prec), true,
                        work);
            }
            add_row(report, "top_entry_lower", lvl, top_index, bval, t[cnt], true, work);
            add_row(report, "top_entry_upper", lvl, top_index, t[cnt],
                    vmul(from_rat(1 + 1 / (params.lambda * params.kappa), prec), bval, prec),
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
