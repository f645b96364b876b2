#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "jacobi/measure.hpp"
#include "jacobi/polynomial.hpp"
#include "jacobi/report.hpp"

namespace jacobi {

// Symmetric tridiagonal matrix: diagonal q_1..q_N, off-diagonal rho_1..rho_{N-1}.
// Off-diagonal entries are stored squared because rho_k^2 is rational whenever
// the spectral data is rational while rho_k itself generally is not.
struct JacobiMatrix {
    std::vector<Rat> diag;
    std::vector<Rat> offdiag_sq;

    JacobiMatrix() = default;
    // Validates: diag nonempty, offdiag_sq one entry shorter, all entries > 0.
    JacobiMatrix(std::vector<Rat> diag_in, std::vector<Rat> offdiag_sq_in);

    std::size_t size() const { return diag.size(); }
    bool operator==(const JacobiMatrix& other) const {
        return diag == other.diag && offdiag_sq == other.offdiag_sq;
    }
};

// f(z) = sum mu_k / (t_k - z) as an exact rational function num/den with
// deg num = deg den - 1. The canonical representation keeps den's leading
// coefficient equal to (-1)^deg(den), i.e. den = prod (t_k - z); unit-mass
// measures then have num/den -> -1/z at infinity.
struct RationalHerglotz {
    RatPoly num;
    RatPoly den;

    Rat eval(const Rat& z) const;  // exact; z must not be a root of den
};

RationalHerglotz measure_to_herglotz(const DiscreteMeasure& mu);

// One continued-fraction step: -1/f(z) = (z - q) + rho_sq * f_next(z),
// computed by exact polynomial division. The quotient is monic exactly when
// f carries unit mass, which is therefore required; rho_sq is fixed so that
// f_next again carries unit mass.
struct RationalStep {
    Rat q;
    Rat rho_sq;
    RationalHerglotz f_next;
};

// Throws DegreeTooSmall when deg den == 1 (terminal atom: the caller reads
// the last diagonal entry off den's root), DomainError when f is not in
// unit-mass form.
RationalStep stieltjes_step_rational(const RationalHerglotz& f);

// Atom of a measure known through validated enclosures. When a coordinate is
// known exactly (original data, or a pole that landed on a rational probe)
// the exact value is carried along so certificates can use exact comparisons.
struct EnclosureAtom {
    DyadicInterval t;
    DyadicInterval m;
    std::optional<Rat> t_exact;
    std::optional<Rat> m_exact;
};
using EnclosureMeasure = std::vector<EnclosureAtom>;

// One step of the algorithm seen through the pole/weight lens:
//   -(sum mu_k/(t_k - z))^{-1} = z - b + sum w_k/(s_k - z),
// where s_1 < ... < s_{N-1} interlace the t_k and the weights satisfy
// 1/w_n = sum_k mu_k/(t_k - s_n)^2. Conventions: the input measure is taken
// in unit-mass form (the operation normalizes internally), so b = sum mu_k t_k
// equals the diagonal entry produced by the rational path, and the w_k are
// unnormalized with sum w_k = rho_sq; the next level's unit-mass measure is
// {(s_k, w_k/rho_sq)}.
struct StepDecomposition {
    Rat b;
    Rat rho_sq;
    std::vector<DyadicInterval> poles;
    std::vector<DyadicInterval> weights;
    EnclosureMeasure next_measure_enclosure;
};

// Validated decomposition of one step. Poles are isolated inside the gaps
// (t_n, t_{n+1}), seeded with the certified pole-offset bracket (closed
// endpoints) whenever the measure's extracted parameters admit it, and
// refined to relative width 2^(-bits); weights come from interval evaluation
// of the reciprocal-sum identity. Throws TooFewAtoms when N < 2 and
// PrecisionExhausted when the internal consistency checks (interlacing,
// enclosure of rho_sq by sum w_k) keep failing after the escalation budget.
StepDecomposition pole_weight_decompose(const DiscreteMeasure& mu, mpfr_prec_t bits);

// Optional override for the per-step mass-ratio hypothesis rows
//   mu_{n+1}/mu_n > factor * (t_{n+1}/t_n)^(e_n),  e_n = exponent_base +
// exponent_slope * n (n = 1-based pair index). The default hypothesis uses
// factor = kappa with e_n = 1. When upper_factor is set, the decay
// hypothesis row is also replaced by
//   mu_{n+1}/mu_n < upper_factor * (t_{n+1}/t_n)^(u_n),
//   u_n = upper_exponent_base + upper_exponent_slope * n
// (the default decay row uses factor = theta with u_n = 2); when it is not
// set but a hypothesis override is supplied, no decay row is emitted.
//
// Supplying an override also switches the weight rows to their damped
// forms, which are the ones that hold in the steep-mass-growth regime the
// override is meant for: the weight-ratio row gains the slack
// (1 + d_n)^2 with d_n = 4 max((m-n-1)/lambda^(m-n-1),
// (m-n-1)/(kappa^(m-n-2) lambda)), and the decay-step row uses the exact
// ratio theta_n = mu_{n+1} t_n^2/(mu_n t_{n+1}^2) (no floor at 1/lambda)
// with slack exponent eps_n = 5 (kappa-1)^(1+n-m).
struct MassRatioHypothesis {
    Rat factor;
    long exponent_base = 1;
    long exponent_slope = 0;
    std::optional<Rat> upper_factor;
    long upper_exponent_base = 2;
    long upper_exponent_slope = 0;
};

// Everything certified about a single step: parameter gates, per-pair
// hypothesis rows, pole-offset brackets (closed endpoints), the relative
// pole-growth bound, gap/pole growth rows, weight-ratio rows and the damped
// decay-step bound with its slack sequence eps_n = 5(kappa-1)^(n-m).
// msums stores the running partial masses M_j of the level measure.
struct StepCertificate {
    long level = 0;
    std::vector<DyadicInterval> msums;
    std::vector<Rat> eps;
    Report report;
};

StepCertificate certify_step(const EnclosureMeasure& before, const StepDecomposition& step,
                             const LacunarityParams& params, long level = 0,
                             mpfr_prec_t bits = 128,
                             const MassRatioHypothesis* hypothesis = nullptr);

// Full run of the algorithm on a measure: exact rational path (the Jacobi
// matrix and every level's rational Herglotz function) plus the validated
// pole/weight path, level by level, with optional per-step certificates.
struct InverseResult {
    JacobiMatrix jacobi;
    std::vector<RationalHerglotz> levels;        // f at levels 0..N-1, exact
    std::vector<EnclosureMeasure> level_measures;  // measures at levels 0..N-1
    std::vector<StepDecomposition> steps;        // N-1 entries
    std::vector<StepCertificate> certificates;   // N-1 entries when certify
};

// The measure is normalized internally. When certify is set, params supplies
// the straightness thresholds (extracted from the measure itself when null).
// The enclosure path reruns at doubled precision (up to four doublings) while
// internal consistency checks fail or certificate rows stay refinably
// INDETERMINATE; persistent check failures raise PrecisionExhausted.
InverseResult inverse_spectral(const DiscreteMeasure& mu, mpfr_prec_t bits = 128,
                               bool certify = false,
                               const LacunarityParams* params = nullptr);

// Same algorithm driven by an exact rational Herglotz function instead of a
// rational atom list. This is the faithful carrier for measures whose atoms
// are algebraic (e.g. a reconstructed spectral measure): the exact path
// recovers the Jacobi entries as rationals, and level-0 enclosure atoms come
// from validated root isolation of den plus residue evaluation. The function
// is rescaled internally to total mass one. Certification requires explicit
// params (there is no rational atom list to extract them from; DomainError).
InverseResult inverse_spectral(const RationalHerglotz& f, mpfr_prec_t bits = 128,
                               bool certify = false,
                               const LacunarityParams* params = nullptr);

// Validated atom enclosures of the measure represented by an exact rational
// Herglotz function: positions are the isolated, refined roots of den
// (exact rational roots stay exact points) and masses are the residues
// -num(t)/den'(t), evaluated exactly at exact points and by interval
// arithmetic otherwise. Checks: full real simple spectrum, positive masses,
// total mass enclosing one; precision escalates internally (up to four
// doublings) before PrecisionExhausted.
EnclosureMeasure measure_enclosure_from_herglotz(const RationalHerglotz& f,
                                                 mpfr_prec_t bits = 128);

// Entry-window certification for the inverse problem on a completely
// lacunary measure: after extracting the Jacobi entries exactly, certifies
//   (1 - 1/lambda) t_{N-n+1} < q_n < (1 + 3/kappa) t_{N-n+1}   (n = 1..N)
//   (1/10) theta^{-1} t_{N-n}^2 < rho_n^2 < 10 kappa^{-1} t_{N-n+1} t_{N-n}
// (n = 1..N-1), all as exact rational comparisons. Parameter gates
// (lambda > 1000, kappa > 20, 10/lambda < theta < 1/100) and the three
// lacunarity hypotheses are reported first; violations warn but the
// conclusion rows are still evaluated. Two closed-form conventions: a
// declared theta at or below the window floor 10/lambda is a stronger
// decay hypothesis, so the floor row is replaced by a warning; and the
// per-pair decay record is certified non-strictly (<=), the form the
// quantitative conclusions consume, with equality flagged by a warning.
Report theorem12_check(const DiscreteMeasure& mu, const LacunarityParams& params,
                       mpfr_prec_t bits = 128);

// Envelope certification across a full run: at every later level l >= 1 the
// k-th pole stays in (t_k, (1 + 3/kappa) t_k) relative to the original
// positions, and per-level pair ratios keep lacunarity (position ratio above
// lambda, mass ratios monotone against the original, decay ratio below
// 5 theta) for pairs k <= m - 2 at each level.
Report lemma22_envelope(const DiscreteMeasure& mu, const std::vector<StepDecomposition>& steps,
                        const LacunarityParams& params, mpfr_prec_t bits = 128);

// One row of the top-atom sensitivity experiment: the base measure gets an
// extra atom at t_top with unit (pre-normalization) mass, and the first
// Stieltjes step is decomposed. Exact columns come from the rational path;
// s_top/w_top columns are validated enclosures for the largest pole s_{N-1}
// and its weight. lower_bound certifies s_{N-1}/t_N > (sum of base masses)/
// (total mass); root_identity checks that w_{N-1} * sum mu_k/(t_k - s)^2
// encloses 1.
struct TailRow {
    Rat t_top;
    Rat q2;
    Rat q2_over_t_top;
    Rat q2_over_t_prev;
    DyadicInterval s_top_over_t_top;
    DyadicInterval w_top_over_t_top_sq;
    Verdict lower_bound = Verdict::INDETERMINATE;
    Verdict root_identity = Verdict::INDETERMINATE;
};

// t_top_values must be strictly increasing and exceed the base's top
// position (DomainError otherwise).
std::vector<TailRow> tail_sensitivity_experiment(const DiscreteMeasure& base,
                                                 const std::vector<Rat>& t_top_values,
                                                 mpfr_prec_t bits = 128);

}  // namespace jacobi
