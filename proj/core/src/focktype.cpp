#include "jacobi/focktype.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jacobi/errors.hpp"
#include "jacobi/stieltjes.hpp"
#include "row_support.hpp"

namespace jacobi {

namespace {

using rows::Val;
using rows::add_gate;
using rows::add_row;
using rows::from_interval;
using rows::from_rat;
using rows::vmul;
using rows::vpow;

// Extremal constants the atoms satisfy in the pure-mass-ratio families:
// lambda = min r_{k+1}/r_k, kappa = min m_{k+1}/m_k, theta = max
// m_{k+1} r_k^2 / (m_k r_{k+1}^2).
LacunarityParams extremal_ratio_params(const DiscreteMeasure& nu) {
    if (nu.size() < 2) throw TooFewAtoms("need at least two atoms to extract ratio constants");
    if (!(nu.atom(0).t > 0)) throw NeedsPositiveSupport("ratio constants need positive support");
    LacunarityParams out{Rat(0), Rat(0), Rat(0)};
    for (std::size_t k = 0; k + 1 < nu.size(); ++k) {
        const Atom& lo = nu.atom(k);
        const Atom& hi = nu.atom(k + 1);
        const Rat pos = Rat(hi.t / lo.t);
        const Rat mass = Rat(hi.m / lo.m);
        const Rat decay = Rat((hi.m * lo.t * lo.t) / (lo.m * hi.t * hi.t));
        if (k == 0 || pos < out.lambda) out.lambda = pos;
        if (k == 0 || mass < out.kappa) out.kappa = mass;
        if (k == 0 || decay > out.theta) out.theta = decay;
    }
    return out;
}

}  // namespace

FockData sigma_from_nu(const DiscreteMeasure& nu, std::size_t N) {
    if (N == 0) throw DomainError("truncation must keep at least one atom");
    if (nu.size() < N)
        throw TooFewAtoms("only " + std::to_string(nu.size()) + " atoms available for truncation " +
                          std::to_string(N));
    if (!(nu.atom(0).t > 0)) throw DomainError("support must be positive");

    std::vector<Atom> kept(nu.atoms().begin(), nu.atoms().begin() + static_cast<long>(N));
    std::vector<Rat> u(N);
    Rat total(0);
    for (std::size_t k = 0; k < N; ++k) {
        Rat prod(1);
        for (std::size_t l = 0; l < N; ++l) {
            if (l == k) continue;
            const Rat factor = Rat(1) - Rat(kept[k].t / kept[l].t);
            prod *= factor * factor;
        }
        u[k] = Rat((kept[k].t * kept[k].t) / (kept[k].m * prod));
        total += u[k];
    }
    const Rat c = Rat(Rat(1) / total);

    std::vector<Atom> satoms(N);
    for (std::size_t k = 0; k < N; ++k) satoms[k] = {kept[k].t, Rat(c * u[k])};
    return FockData{DiscreteMeasure(std::move(kept)), N, DiscreteMeasure(std::move(satoms)), c};
}

TransformedData change_of_variables(const FockData& fd) {
    TransformedData td;
    td.alpha.reserve(fd.truncation);
    td.tau.reserve(fd.truncation);
    for (const Atom& a : fd.sigma.atoms()) {
        td.tau.push_back(Rat(Rat(1) / a.t));
        td.alpha.push_back(Rat(a.m / a.t));
    }
    return td;
}

DiscreteMeasure reversed_measure(const TransformedData& td) {
    const std::size_t n = td.tau.size();
    std::vector<Atom> atoms(n);
    for (std::size_t k = 0; k < n; ++k) atoms[k] = {td.tau[n - 1 - k], td.alpha[n - 1 - k]};
    return DiscreteMeasure(std::move(atoms));
}

Report theorem11_check(const DiscreteMeasure& nu, const LacunarityParams& params, std::size_t N,
                       mpfr_prec_t bits) {
    if (N < 4) throw DomainError("entry windows need truncation at least 4");
    if (nu.size() < N)
        throw TooFewAtoms("only " + std::to_string(nu.size()) + " atoms available for truncation " +
                          std::to_string(N));
    if (!(nu.atom(0).t > 0)) throw DomainError("support must be positive");

    const Rat million(1000000);
    if (!(params.lambda > million) || !(params.kappa > million) ||
        !(params.theta < Rat(Rat(1) / million)))
        throw HypothesesUnsatisfied(
            "parameter window requires lambda > 10^6, kappa > 10^6 and theta < 10^-6");
    for (std::size_t k = 0; k + 1 < nu.size(); ++k) {
        const Atom& lo = nu.atom(k);
        const Atom& hi = nu.atom(k + 1);
        const std::string at = " at pair " + std::to_string(k + 1);
        if (!(hi.t > params.lambda * lo.t))
            throw HypothesesUnsatisfied("position ratio below lambda" + at);
        if (!(hi.m > params.kappa * lo.m))
            throw HypothesesUnsatisfied("mass growth below kappa" + at);
        if (!(hi.m * lo.t * lo.t < params.theta * lo.m * hi.t * hi.t))
            throw HypothesesUnsatisfied("decay ratio above theta" + at);
    }

    const mpfr_prec_t work = bits < 16 ? 16 : bits;
    const mpfr_prec_t prec = work + 64;
    Report report;
    report.title = "Jacobi entry windows for the induced spectral weights";

    add_gate(report, "gate_lambda_gt_million", 0, million, params.lambda, work);
    add_gate(report, "gate_kappa_gt_million", 0, million, params.kappa, work);
    add_gate(report, "gate_theta_lt_millionth", 0, params.theta, Rat(Rat(1) / million), work);
    for (std::size_t k = 0; k + 1 < nu.size(); ++k) {
        const Atom& lo = nu.atom(k);
        const Atom& hi = nu.atom(k + 1);
        const long idx = static_cast<long>(k) + 1;
        add_row(report, "hyp_position_ratio", 0, idx, from_rat(Rat(params.lambda * lo.t), prec),
                from_rat(hi.t, prec), true, work);
        add_row(report, "hyp_mass_growth", 0, idx, from_rat(Rat(params.kappa * lo.m), prec),
                from_rat(hi.m, prec), true, work);
        add_row(report, "hyp_decay_ratio", 0, idx, from_rat(Rat(hi.m * lo.t * lo.t), prec),
                from_rat(Rat(params.theta * lo.m * hi.t * hi.t), prec), true, work);
    }

    const FockData fd = sigma_from_nu(nu, N);
    const InverseResult inv = inverse_spectral(fd.sigma, work);

    const Rat diag_margin = Rat(Rat(100) / params.kappa);
    const Rat coupling_margin = Rat(Rat(1000) / params.kappa + Rat(1000) / params.lambda);
    for (std::size_t n = 1; n + 2 <= N; ++n) {
        const Atom& cur = nu.atom(n - 1);
        const Atom& nxt = nu.atom(n);
        const Rat carry = Rat(cur.m / nxt.m);  // nu_n / nu_{n+1}
        const Rat diag_center = cur.t + carry * nxt.t;
        const Rat coupling_center = Rat(carry * nxt.t * nxt.t);
        const Rat q = inv.jacobi.diag[n - 1];
        const Rat rho_sq = inv.jacobi.offdiag_sq[n - 1];
        const long idx = static_cast<long>(n);
        add_row(report, "diag_window_lower", 0, idx,
                from_rat(Rat((Rat(1) - diag_margin) * diag_center), prec), from_rat(q, prec), true,
                work);
        add_row(report, "diag_window_upper", 0, idx, from_rat(q, prec),
                from_rat(Rat((Rat(1) + diag_margin) * diag_center), prec), true, work);
        add_row(report, "coupling_window_lower", 0, idx,
                from_rat(Rat((Rat(1) - coupling_margin) * coupling_center), prec),
                from_rat(rho_sq, prec), true, work);
        add_row(report, "coupling_window_upper", 0, idx, from_rat(rho_sq, prec),
                from_rat(Rat((Rat(1) + coupling_margin) * coupling_center), prec), true, work);
    }

    // Stability of the certified entries under keeping one more atom: each
    // entry with n <= N - 3 must move by a relative amount below 2^-20.
    if (nu.size() >= N + 1) {
        const FockData fd_ext = sigma_from_nu(nu, N + 1);
        const InverseResult inv_ext = inverse_spectral(fd_ext.sigma, work);
        const Rat scale(1048576);  // 2^20
        for (std::size_t n = 1; n + 3 <= N; ++n) {
            const long idx = static_cast<long>(n);
            const Rat dq = abs(inv_ext.jacobi.diag[n - 1] - inv.jacobi.diag[n - 1]);
            add_row(report, "truncation_stability_diag", 0, idx, from_rat(Rat(dq * scale), prec),
                    from_rat(inv.jacobi.diag[n - 1], prec), true, work);
            const Rat dr = abs(inv_ext.jacobi.offdiag_sq[n - 1] - inv.jacobi.offdiag_sq[n - 1]);
            add_row(report, "truncation_stability_coupling", 0, idx,
                    from_rat(Rat(dr * scale), prec), from_rat(inv.jacobi.offdiag_sq[n - 1], prec),
                    true, work);
        }
    } else {
        report.warnings.push_back(
            "no spare atom beyond the truncation; stability rows not applicable");
        for (std::size_t n = 1; n + 3 <= N; ++n) {
            const long idx = static_cast<long>(n);
            report.rows.push_back(not_applicable_row("truncation_stability_diag", 0, idx,
                                                     DyadicInterval(), DyadicInterval()));
            report.rows.push_back(not_applicable_row("truncation_stability_coupling", 0, idx,
                                                     DyadicInterval(), DyadicInterval()));
        }
    }
    return report;
}

Report corollary52_check(const FockData& fd, mpfr_prec_t bits, const LacunarityParams* params) {
    const std::size_t N = fd.truncation;
    if (N < 3) throw TooFewAtoms("shape windows need at least three kept atoms");

    LacunarityParams use{Rat(0), Rat(0), Rat(0)};
    if (params) {
        use = *params;
    } else {
        // Extremal data constants, shaved toward the strict side so that
        // hypothesis rows stay strict on data attaining the extremes.
        use = extremal_ratio_params(fd.nu);
        const Rat shave = make_rat(1023, 1024);
        use.lambda = Rat(use.lambda * shave);
        use.kappa = Rat(use.kappa * shave);
        use.theta = Rat(use.theta / shave);
    }

    const DiscreteMeasure rev = reversed_measure(change_of_variables(fd));

    // Transformed mass-ratio family: mu_{n+1}/mu_n lies between
    // (1 - 10/lambda) kappa g^(2(N-n)-1) and (1 + 10/lambda) theta g^(2(N-n)+1).
    MassRatioHypothesis hyp;
    hyp.factor = Rat((Rat(1) - Rat(10) / use.lambda) * use.kappa);
    hyp.exponent_base = 2 * static_cast<long>(N) - 1;
    hyp.exponent_slope = -2;
    hyp.upper_factor = Rat((Rat(1) + Rat(10) / use.lambda) * use.theta);
    hyp.upper_exponent_base = 2 * static_cast<long>(N) + 1;
    hyp.upper_exponent_slope = -2;

    const int max_doublings = 4;
    mpfr_prec_t work = bits < 16 ? 16 : bits;
    for (int attempt = 0;; ++attempt) {
        Report report;
        const mpfr_prec_t prec = work + 64;
        report.title = "weight-ratio shape windows across transformed steps";

        add_gate(report, "gate_lambda_gt_1000", 0, Rat(1000), use.lambda, work);
        add_gate(report, "gate_kappa_gt_1000", 0, Rat(1000), use.kappa, work);
        add_gate(report, "gate_theta_lt_1", 0, use.theta, Rat(1), work);
        if (!report.all_pass())
            report.warnings.push_back("parameter gates not satisfied; windows evaluated anyway");

        const InverseResult inv = inverse_spectral(rev, work);
        const StepCertificate base =
            certify_step(inv.level_measures[0], inv.steps[0], use, 0, work, &hyp);
        report.merge(base.report);

        // Level 1 in the transformed variables: the pole/weight data of the
        // reversed problem maps back through r = 1/s exactly and through the
        // mass proxy w/s^3, which equals the level-1 mass up to one common
        // factor, so every ratio below is exact in it. Transformed index n
        // (1-based, increasing position) reads pole index count - n, and all
        // windows are cross-multiplied so only products of
        // certified-positive quantities appear.
        {
            const StepDecomposition& step = inv.steps[0];
            const std::size_t count = step.poles.size();
            std::vector<Val> s(count), w(count);
            for (std::size_t n = 1; n <= count; ++n) {
                s[n - 1] = from_interval(step.poles[count - n], std::nullopt);
                w[n - 1] = from_interval(step.weights[count - n], std::nullopt);
            }
            const Val zero = from_rat(Rat(0), prec);
            for (std::size_t n = 1; n <= count; ++n) {
                const long idx = static_cast<long>(n);
                add_row(report, "reconstructed_position_positive", 1, idx, zero, s[n - 1], true,
                        work);
                add_row(report, "reconstructed_weight_positive", 1, idx, zero, w[n - 1], true,
                        work);
            }
            for (std::size_t n = 1; n < count; ++n) {
                const long idx = static_cast<long>(n);
                const long e = static_cast<long>(n);
                // s_a encloses the pole for transformed index n, s_b the one
                // for n + 1; note s_b < s_a since r is increasing.
                const Val& s_a = s[n - 1];
                const Val& s_b = s[n];
                const Val& w_a = w[n - 1];
                const Val& w_b = w[n];

                add_row(report, "transformed_position_lacunary", 1, idx,
                        vmul(from_rat(use.lambda, prec), s_b, prec), s_a, true, work);

                // Uniform window (kappa/10) g^(2n-2) < ratio < 10 theta g^(2n)
                // with g = s_a/s_b and ratio = w_a s_b^3 / (w_b s_a^3).
                add_row(report, "weight_ratio_shape_lower", 1, idx,
                        vmul(from_rat(Rat(use.kappa / 10), prec),
                             vmul(w_b, vpow(s_a, 2 * e + 1, prec), prec), prec),
                        vmul(w_a, vpow(s_b, 2 * e + 1, prec), prec), true, work);
                add_row(report, "weight_ratio_shape_upper", 1, idx,
                        vmul(w_a, vpow(s_b, 2 * e + 3, prec), prec),
                        vmul(from_rat(Rat(10 * use.theta), prec),
                             vmul(w_b, vpow(s_a, 2 * e + 3, prec), prec), prec),
                        true, work);

                const Rat kpow = rat_pow(use.kappa, e);

                // Refined window with constants shrinking like kappa^-n.
                const Rat refined_lo = Rat((Rat(1) - Rat(20 * e * e) / kpow) * use.kappa);
                const Rat refined_hi = Rat((Rat(1) + Rat(20 * e) / kpow) * use.theta);
                add_row(report, "weight_ratio_shape_refined_lower", 1, idx,
                        vmul(from_rat(refined_lo, prec),
                             vmul(w_b, vpow(s_a, 2 * e + 1, prec), prec), prec),
                        vmul(w_a, vpow(s_b, 2 * e + 1, prec), prec), true, work);
                add_row(report, "weight_ratio_shape_refined_upper", 1, idx,
                        vmul(w_a, vpow(s_b, 2 * e + 3, prec), prec),
                        vmul(from_rat(refined_hi, prec),
                             vmul(w_b, vpow(s_a, 2 * e + 3, prec), prec), prec),
                        true, work);

                // One-step prediction: the level-1 ratio sits in a
                // kappa^-n-thin window around the exact level-0 quantity
                // sigma_{n+1} r_{n+1}^2 / (sigma_{n+2} r_{n+2}^2).
                const Atom& top = fd.sigma.atom(n);
                const Atom& bot = fd.sigma.atom(n + 1);
                const Rat center = Rat((top.m * top.t * top.t) / (bot.m * bot.t * bot.t));
                const Rat step_lo = Rat((Rat(1) - Rat(20 * e) / kpow) * center);
                const Rat step_hi = Rat((Rat(1) + Rat(20) / kpow) * center);
                add_row(report, "weight_ratio_step_window_lower", 1, idx,
                        vmul(from_rat(step_lo, prec), vmul(w_b, vpow(s_a, 3, prec), prec), prec),
                        vmul(w_a, vpow(s_b, 3, prec), prec), true, work);
                add_row(report, "weight_ratio_step_window_upper", 1, idx,
                        vmul(w_a, vpow(s_b, 3, prec), prec),
                        vmul(from_rat(step_hi, prec), vmul(w_b, vpow(s_a, 3, prec), prec), prec),
                        true, work);
            }
        }

        // Level 2: the reciprocal bridge is exact only across one step, so
        // the second-level data comes from the Stieltjes algorithm run
        // directly on the constructed measure; poles are the level-2
        // positions in increasing order and weights carry the level-2
        // masses up to one common factor.
        {
            const InverseResult sinv = inverse_spectral(fd.sigma, work);
            const StepDecomposition& step = sinv.steps[1];
            const std::size_t count = step.poles.size();
            const Val zero = from_rat(Rat(0), prec);
            std::vector<Val> p(count), m(count);
            for (std::size_t n = 0; n < count; ++n) {
                p[n] = from_interval(step.poles[n], std::nullopt);
                m[n] = from_interval(step.weights[n], std::nullopt);
                const long idx = static_cast<long>(n) + 1;
                add_row(report, "reconstructed_position_positive", 2, idx, zero, p[n], true, work);
                add_row(report, "reconstructed_weight_positive", 2, idx, zero, m[n], true, work);
            }
            for (std::size_t n = 1; n < count; ++n) {
                const long idx = static_cast<long>(n);
                const long e = static_cast<long>(n);
                const Val& r_lo = p[n - 1];
                const Val& r_hi = p[n];

                add_row(report, "transformed_position_lacunary", 2, idx,
                        vmul(from_rat(use.lambda, prec), r_lo, prec), r_hi, true, work);

                // (kappa/10) (r_hi/r_lo)^(2n-2) < m_n/m_{n+1} < 10 theta
                // (r_hi/r_lo)^(2n), cross-multiplied.
                add_row(report, "weight_ratio_shape_lower", 2, idx,
                        vmul(from_rat(Rat(use.kappa / 10), prec),
                             vmul(m[n], vpow(r_hi, 2 * e - 2, prec), prec), prec),
                        vmul(m[n - 1], vpow(r_lo, 2 * e - 2, prec), prec), true, work);
                add_row(report, "weight_ratio_shape_upper", 2, idx,
                        vmul(m[n - 1], vpow(r_lo, 2 * e, prec), prec),
                        vmul(from_rat(Rat(10 * use.theta), prec),
                             vmul(m[n], vpow(r_hi, 2 * e, prec), prec), prec),
                        true, work);
            }
        }

        if (report.any_refinable_indeterminate()) {
            if (attempt < max_doublings) {
                work *= 2;
                continue;
            }
            throw PrecisionExhausted("shape windows stayed undecided after doubling up to " +
                                     std::to_string(work) + " bits");
        }
        return report;
    }
}

}  // namespace jacobi
