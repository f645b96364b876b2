#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "jacobi/errors.hpp"
#include "jacobi/stieltjes.hpp"
#include "row_support.hpp"

namespace jacobi {

using namespace rows;

StepCertificate certify_step(const EnclosureMeasure& before, const StepDecomposition& step,
                             const LacunarityParams& params, long level, mpfr_prec_t bits,
                             const MassRatioHypothesis* hypothesis) {
    const std::size_t m = before.size();
    if (m < 2) throw TooFewAtoms("certifying a step needs at least two atoms");
    if (step.poles.size() + 1 != m)
        throw DomainError("step does not match the measure it came from");

    const mpfr_prec_t prec = (bits < 16 ? 16 : bits) + 64;
    StepCertificate cert;
    cert.level = level;
    Report& report = cert.report;

    // Parameter gates for the step statements. Violations warn but do not
    // suppress the statement rows, which are certified on their own.
    add_gate(report, "gate_kappa_gt_10", level, Rat(10), params.kappa, bits);
    add_gate(report, "gate_theta_lt_1_10", level, params.theta, make_rat(1, 10), bits);
    add_gate(report, "gate_lambda_gt_1", level, Rat(1), params.lambda, bits);
    for (const CheckRow& row : report.rows) {
        if (row.verdict != Verdict::PASS) {
            report.warnings.push_back("parameter gate not satisfied at level " +
                                      std::to_string(level) +
                                      "; statement rows are still certified as stated");
            break;
        }
    }
    const bool kappa_usable = params.kappa > 1;
    const bool lambda_usable = params.lambda > 0;

    std::vector<Val> t(m), mass(m);
    for (std::size_t k = 0; k < m; ++k) {
        t[k] = from_interval(before[k].t, before[k].t_exact);
        mass[k] = from_interval(before[k].m, before[k].m_exact);
    }
    std::vector<Val> s(m - 1), w(m - 1);
    for (std::size_t n = 0; n + 1 < m; ++n) {
        s[n] = from_interval(step.poles[n], std::nullopt);
        w[n] = from_interval(step.weights[n], std::nullopt);
    }

    // Partial masses M_j of the level measure.
    Val running = from_rat(Rat(0), prec);
    std::vector<Val> msum(m + 1);
    msum[0] = running;
    for (std::size_t j = 0; j < m; ++j) {
        running = vadd(running, mass[j], prec);
        msum[j + 1] = running;
        cert.msums.push_back(running.iv);
    }

    const Val lambda = from_rat(params.lambda, prec);
    const Val kappa = from_rat(params.kappa, prec);
    const Val theta = from_rat(params.theta, prec);

    // Per-pair hypothesis rows (1-based pair index n).
    for (std::size_t n = 1; n < m; ++n) {
        const Val& t_lo = t[n - 1];
        const Val& t_hi = t[n];
        const Val& m_lo = mass[n - 1];
        const Val& m_hi = mass[n];

        add_row(report, "hyp_position_ratio", level, static_cast<long>(n),
                vmul(lambda, t_lo, prec), t_hi, /*strict=*/true, bits);

        // Cross-multiplied form factor * mu_n * t_{n+1}^e < mu_{n+1} * t_n^e
        // avoids dividing by positions (which may legitimately be zero).
        Rat factor = hypothesis ? hypothesis->factor : params.kappa;
        long exponent = hypothesis
                            ? hypothesis->exponent_base +
                                  hypothesis->exponent_slope * static_cast<long>(n)
                            : 1;
        add_row_guarded(
            report, "hyp_mass_ratio", level, static_cast<long>(n),
            [&] {
                return std::make_pair(
                    vmul(from_rat(factor, prec),
                         vmul(m_lo, vpow(t_hi, exponent, prec), prec), prec),
                    vmul(m_hi, vpow(t_lo, exponent, prec), prec));
            },
            /*strict=*/true, bits);

        if (!hypothesis) {
            add_row(report, "hyp_decay_ratio", level, static_cast<long>(n),
                    vmul(m_hi, vsquare(t_lo, prec), prec),
                    vmul(theta, vmul(m_lo, vsquare(t_hi, prec), prec), prec), /*strict=*/true,
                    bits);
        } else if (hypothesis->upper_factor) {
            // Cross-multiplied upper family mu_{n+1} t_n^u < F mu_n t_{n+1}^u.
            const Rat upper = *hypothesis->upper_factor;
            long u = hypothesis->upper_exponent_base +
                     hypothesis->upper_exponent_slope * static_cast<long>(n);
            add_row_guarded(
                report, "hyp_decay_ratio", level, static_cast<long>(n),
                [&] {
                    return std::make_pair(
                        vmul(m_hi, vpow(t_lo, u, prec), prec),
                        vmul(from_rat(upper, prec),
                             vmul(m_lo, vpow(t_hi, u, prec), prec), prec));
                },
                /*strict=*/true, bits);
        }
    }

    // Pole-offset brackets, closed endpoints.
    for (std::size_t n = 1; n < m; ++n) {
        const Val& tn = t[n - 1];
        const Val& mn = mass[n - 1];
        Val gap = vsub(s[n - 1], tn, prec);

        Val tail = from_rat(Rat(0), prec);  // sum_{k > n} mu_k/(t_k - t_n)
        for (std::size_t k = n; k < m; ++k)
            tail = vadd(tail, vdiv(mass[k], vsub(t[k], tn, prec), prec), prec);

        Val denom_lo = vadd(vdiv(mn, vsub(t[n], tn, prec), prec), tail, prec);
        Val lower = vdiv(mn, denom_lo, prec);
        if (m == 2 && !(lower.exact && gap.exact)) {
            // With a single other atom the pole equation is linear and the
            // lower bound is attained exactly, so the closed endpoint decides
            // the row even though enclosures of one common value must overlap.
            if (!lower.iv.intersects(gap.iv))
                throw Error("enclosures of identical quantities fail to intersect: "
                            "pole_offset_lower at level " + std::to_string(level));
            CheckRow row;
            row.statement_id = "pole_offset_lower";
            row.level = level;
            row.index = static_cast<long>(n);
            row.lhs = lower.iv;
            row.rhs = gap.iv;
            row.verdict = Verdict::PASS;
            row.decided_exactly = true;
            report.rows.push_back(row);
            report.warnings.push_back(
                "boundary equality accepted by closed endpoint: pole_offset_lower (level " +
                std::to_string(level) + ", index " + std::to_string(n) + ")");
        } else {
            add_row(report, "pole_offset_lower", level, static_cast<long>(n), lower, gap,
                    /*strict=*/false, bits);
        }

        Val denom_hi = tail;
        if (n >= 2)
            denom_hi = vsub(denom_hi, vdiv(msum[n - 1], vsub(tn, t[n - 2], prec), prec), prec);
        bool positive = denom_hi.exact ? (*denom_hi.exact > 0) : denom_hi.iv.strictly_positive();
        if (positive) {
            add_row(report, "pole_offset_upper", level, static_cast<long>(n), gap,
                    vdiv(mn, denom_hi, prec), /*strict=*/false, bits);
        } else {
            report.rows.push_back(not_applicable_row("pole_offset_upper", level,
                                                     static_cast<long>(n), gap.iv, denom_hi.iv));
            report.warnings.push_back(
                "pole_offset_upper denominator not certified positive at level " +
                std::to_string(level) + ", index " + std::to_string(n));
        }
    }

    // Relative pole growth: s_n < (1 + (kappa-1)^{-(m-n)}) t_n.
    for (std::size_t n = 1; n < m; ++n) {
        if (!kappa_usable) {
            report.rows.push_back(not_applicable_row("pole_relative_growth", level,
                                                     static_cast<long>(n), s[n - 1].iv,
                                                     t[n - 1].iv));
            continue;
        }
        Rat bound = Rat(1) + rat_pow(params.kappa - 1, -static_cast<long>(m - n));
        add_row(report, "pole_relative_growth", level, static_cast<long>(n), s[n - 1],
                vmul(from_rat(bound, prec), t[n - 1], prec), /*strict=*/true, bits);
    }

    // Pair rows over consecutive poles.
    for (std::size_t n = 1; n + 1 < m; ++n) {
        Val gap_lo = vsub(s[n - 1], t[n - 1], prec);
        Val gap_hi = vsub(s[n], t[n], prec);

        if (lambda_usable) {
            Val damping = vdiv(vmul(mass[n], from_rat(params.lambda - 1, prec), prec),
                               vmul(mass[n - 1], lambda, prec), prec);
            add_row(report, "gap_ratio_lower", level, static_cast<long>(n),
                    vmul(damping, gap_lo, prec), gap_hi, /*strict=*/true, bits);
            add_row(report, "gap_lacunary_growth", level, static_cast<long>(n),
                    vmul(lambda, gap_lo, prec), gap_hi, /*strict=*/true, bits);
            add_row(report, "pole_lacunary_growth", level, static_cast<long>(n),
                    vmul(lambda, s[n - 1], prec), s[n], /*strict=*/true, bits);
        } else {
            report.rows.push_back(not_applicable_row("gap_ratio_lower", level,
                                                     static_cast<long>(n), gap_lo.iv, gap_hi.iv));
            report.rows.push_back(not_applicable_row("gap_lacunary_growth", level,
                                                     static_cast<long>(n), gap_lo.iv, gap_hi.iv));
            report.rows.push_back(not_applicable_row("pole_lacunary_growth", level,
                                                     static_cast<long>(n), s[n - 1].iv, s[n].iv));
        }

        if (!hypothesis) {
            add_row(report, "weight_ratio_monotone", level, static_cast<long>(n),
                    vmul(mass[n], w[n - 1], prec), vmul(mass[n - 1], w[n], prec), /*strict=*/true,
                    bits);
        } else if (kappa_usable && lambda_usable) {
            // Damped form for the steep-growth regime: the weight ratio may
            // drop below the mass ratio by at most (1 + d_n)^2.
            const long back = static_cast<long>(m) - static_cast<long>(n) - 1;
            const Rat d = 4 * back *
                          std::max(rat_pow(params.lambda, -back),
                                   Rat(Rat(1) / (rat_pow(params.kappa, back - 1) *
                                                 params.lambda)));
            add_row(report, "weight_ratio_damped", level, static_cast<long>(n),
                    vmul(mass[n], w[n - 1], prec),
                    vmul(from_rat(rat_pow(Rat(1) + d, 2), prec),
                         vmul(mass[n - 1], w[n], prec), prec),
                    /*strict=*/true, bits);
        } else {
            report.rows.push_back(not_applicable_row("weight_ratio_damped", level,
                                                     static_cast<long>(n), w[n - 1].iv, w[n].iv));
        }

        if (!hypothesis && kappa_usable && lambda_usable) {
            Rat eps = 5 * rat_pow(params.kappa - 1,
                                  static_cast<long>(n) - static_cast<long>(m));
            cert.eps.push_back(eps);
            Val theta_tilde =
                vmax(vdiv(vmul(mass[n], vsquare(t[n - 1], prec), prec),
                          vmul(mass[n - 1], vsquare(t[n], prec), prec), prec),
                     from_rat(Rat(1) / params.lambda, prec), prec);
            Val slack = from_rat(rat_pow(Rat(1) + eps, 3), prec);
            add_row(report, "weight_decay_step", level, static_cast<long>(n),
                    vmul(w[n], vsquare(s[n - 1], prec), prec),
                    vmul(slack, vmul(theta_tilde, vmul(w[n - 1], vsquare(s[n], prec), prec), prec),
                         prec),
                    /*strict=*/true, bits);
        } else if (hypothesis && kappa_usable) {
            // Exact decay ratio, no floor: cross-multiplied so zero or
            // negative positions cannot divide.
            Rat eps = 5 * rat_pow(params.kappa - 1,
                                  1 + static_cast<long>(n) - static_cast<long>(m));
            cert.eps.push_back(eps);
            Val slack = from_rat(rat_pow(Rat(1) + eps, 3), prec);
            add_row(report, "weight_decay_step", level, static_cast<long>(n),
                    vmul(vmul(w[n], vsquare(s[n - 1], prec), prec),
                         vmul(mass[n - 1], vsquare(t[n], prec), prec), prec),
                    vmul(slack,
                         vmul(vmul(mass[n], vsquare(t[n - 1], prec), prec),
                              vmul(w[n - 1], vsquare(s[n], prec), prec), prec),
                         prec),
                    /*strict=*/true, bits);
        } else {
            report.rows.push_back(not_applicable_row("weight_decay_step", level,
                                                     static_cast<long>(n), w[n].iv, w[n - 1].iv));
        }
    }

    if (!kappa_usable || !lambda_usable)
        report.warnings.push_back("parameters outside the usable range (kappa <= 1 or "
                                  "lambda <= 0); growth rows marked NOT_APPLICABLE");
    return cert;
}

Report lemma22_envelope(const DiscreteMeasure& mu, const std::vector<StepDecomposition>& steps,
                        const LacunarityParams& params, mpfr_prec_t bits) {
    const std::size_t n_atoms = mu.size();
    if (steps.size() + 1 != n_atoms)
        throw DomainError("step list does not match the measure (need one step per level)");

    const mpfr_prec_t prec = (bits < 16 ? 16 : bits) + 64;
    Report report;
    report.title = "pole envelope and per-level ratio certification";

    DiscreteMeasure norm = normalize(mu);
    const Rat envelope = Rat(1) + Rat(3) / params.kappa;
    const Rat five_theta = 5 * params.theta;
    const Val lambda = from_rat(params.lambda, prec);

    for (std::size_t l = 1; l <= steps.size(); ++l) {
        const EnclosureMeasure& atoms = steps[l - 1].next_measure_enclosure;
        const std::size_t m = atoms.size();

        // Envelope rows against the original positions.
        for (std::size_t k = 0; k < m; ++k) {
            Val level_t = from_interval(atoms[k].t, atoms[k].t_exact);
            Val orig_t = from_rat(norm.atom(k).t, prec);
            add_row(report, "pole_envelope_lower", static_cast<long>(l),
                    static_cast<long>(k + 1), orig_t, level_t, /*strict=*/true, bits);
            add_row(report, "pole_envelope_upper", static_cast<long>(l),
                    static_cast<long>(k + 1), level_t,
                    vmul(from_rat(envelope, prec), orig_t, prec), /*strict=*/true, bits);
        }

        // Ratio rows for pairs below the top (k <= m - 2).
        for (std::size_t k = 1; k + 1 < m; ++k) {
            Val t_lo = from_interval(atoms[k - 1].t, atoms[k - 1].t_exact);
            Val t_hi = from_interval(atoms[k].t, atoms[k].t_exact);
            Val m_lo = from_interval(atoms[k - 1].m, atoms[k - 1].m_exact);
            Val m_hi = from_interval(atoms[k].m, atoms[k].m_exact);

            add_row(report, "level_position_lacunary", static_cast<long>(l),
                    static_cast<long>(k), vmul(lambda, t_lo, prec), t_hi, /*strict=*/true, bits);

            // Mass ratios never fall below the original measure's.
            Val orig_lo = from_rat(norm.atom(k - 1).m, prec);
            Val orig_hi = from_rat(norm.atom(k).m, prec);
            add_row(report, "level_mass_ratio_monotone", static_cast<long>(l),
                    static_cast<long>(k), vmul(orig_hi, m_lo, prec), vmul(orig_lo, m_hi, prec),
                    /*strict=*/true, bits);

            add_row(report, "level_decay_bound", static_cast<long>(l), static_cast<long>(k),
                    vmul(m_hi, vsquare(t_lo, prec), prec),
                    vmul(from_rat(five_theta, prec), vmul(m_lo, vsquare(t_hi, prec), prec), prec),
                    /*strict=*/true, bits);
        }
    }
    return report;
}

}  // namespace jacobi
