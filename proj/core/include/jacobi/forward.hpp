#pragma once

#include "jacobi/report.hpp"
#include "jacobi/stieltjes.hpp"

namespace jacobi {

// Reconstructed spectral data of a Jacobi matrix: validated atom enclosures
// (positions = isolated roots of den, masses = residues) plus the exact
// rational resolvent diagonal f(z) = <(J - z)^-1 e_1, e_1>.
struct ForwardResult {
    EnclosureMeasure measure_enclosures;
    RationalHerglotz herglotz;
};

// Exact continued-fraction assembly of f from the bottom entry upwards:
// f_N = 1/(q_N - z), then -1/f_n = z - q_n + rho_n^2 f_{n+1}. The result is
// canonical (den = prod (t_k - z), total mass one) with deg den = N and
// deg num = N - 1 by construction.
RationalHerglotz assemble_herglotz(const JacobiMatrix& J);

// det(J - z) by the leading-principal-minor recurrence
// D_k = (q_k - z) D_{k-1} - rho_{k-1}^2 D_{k-2}. An independent exact route
// to the denominator: the assembly above recurses from the trailing corner,
// this one from the leading corner; the two polynomials must agree exactly.
RatPoly characteristic_polynomial(const JacobiMatrix& J);

// The direct spectral problem. Escalates working precision internally;
// PrecisionExhausted when the residue/total-mass checks cannot be certified.
ForwardResult spectral_measure(const JacobiMatrix& J, mpfr_prec_t bits = 128);

// Checks the reversed-direction theorem on a concrete matrix: hypothesis rows
// q_n > 3 lambda q_{n+1} and 20/theta q_{n+1}^2 < rho_n^2 < q_n q_{n+1}/
// (20 kappa) (exact); conclusion rows (1 - 1/kappa) q_{N-n+1} < t_n <
// (1 + 1/lambda) q_{N-n+1} on the reconstructed pole enclosures, plus the
// three completely-lacunary ratio conditions on the enclosure measure.
// Failed hypotheses are listed and conclusions still evaluated, with a
// warning. The admissible theta window (10/lambda, 1/1000) is empty unless
// lambda > 10^4: EmptyParameterWindow instead of proceeding.
Report theorem13_check(const JacobiMatrix& J, const LacunarityParams& params,
                       mpfr_prec_t bits = 128);

// Certifies the one-step root-localization bounds along the bottom-up
// assembly. For the step assembling level n from level n+1 the data are
// b = q_n, the previous level's poles s and scaled weights w = rho_n^2 *
// (residues), and the new level's poles t. Standing hypotheses (top gap
// lambda s_top < b, pole lacunarity, weight growth/decay ratios, total
// weight window) are checked first at every level; when they certify, the
// localization rows (1 - 2/kappa) w_k/b < s_k - t_k < (1 + 2/lambda +
// 2/kappa) w_k/b, the top-entry bracket b < t_top < (1 + 1/(lambda kappa)) b
// and the decay corollary s_k - t_k < (1/5) kappa^(k-N_level) s_k are
// certified; otherwise those rows are recorded NOT_APPLICABLE.
Report statement41_certify(const JacobiMatrix& J, const LacunarityParams& params,
                           mpfr_prec_t bits = 128);

}  // namespace jacobi
