#pragma once

#include <cstddef>
#include <vector>

#include <mpfr.h>

#include "jacobi/measure.hpp"
#include "jacobi/rational.hpp"
#include "jacobi/report.hpp"

namespace jacobi {

// Spectral data built from reproducing-kernel weights: given atoms
// (r_k, nu_k) with 0 < r_1 < r_2 < ..., the induced measure places
//
//   sigma_k = c * r_k^2 / (nu_k * prod_{l <= N, l != k} (1 - r_k/r_l)^2)
//
// at r_k, with c > 0 chosen so the sigma_k sum to one. The product is
// truncated at the same N as the kept support.
struct FockData {
    DiscreteMeasure nu;      // the first N input atoms (r_k, nu_k)
    std::size_t truncation;  // N
    DiscreteMeasure sigma;   // N atoms (r_k, sigma_k) of unit total mass
    Rat c;                   // normalizing constant
};

// Reciprocal-variable form of the same data: tau_k = 1/r_k (decreasing in
// k) and alpha_k = sigma_k/r_k, linked by the exact identity
//
//   sum_k sigma_k/(r_k - z) = zeta * sum_k alpha_k/(zeta - tau_k),  zeta = 1/z.
struct TransformedData {
    std::vector<Rat> alpha;
    std::vector<Rat> tau;
};

// Exact rational construction of sigma from the first N atoms of nu.
// Requires N >= 1 (DomainError), nu.size() >= N (TooFewAtoms), and positive
// support (DomainError).
FockData sigma_from_nu(const DiscreteMeasure& nu, std::size_t N);

// Exact componentwise change to reciprocal variables.
TransformedData change_of_variables(const FockData& fd);

// The transformed data read as a measure with increasing support: atom k
// (1-based) is (tau_{N-k+1}, alpha_{N-k+1}).
DiscreteMeasure reversed_measure(const TransformedData& td);

// Certifies two-sided windows for the Jacobi entries of the measure built
// by sigma_from_nu(nu, N): for 1-based n <= N - 2,
//
//   (1 - 100/kappa) * (r_n + (nu_n/nu_{n+1}) r_{n+1}) < q_n
//                   < (1 + 100/kappa) * (r_n + (nu_n/nu_{n+1}) r_{n+1}),
//   (1 - 1000/kappa - 1000/lambda) * (nu_n/nu_{n+1}) r_{n+1}^2 < rho_n^2
//                   < (1 + 1000/kappa + 1000/lambda) * (nu_n/nu_{n+1}) r_{n+1}^2.
//
// All comparisons are exact rational. The declared hypotheses are verified
// exactly up front on every provided atom pair (r_{k+1} > lambda r_k,
// nu_{k+1} > kappa nu_k, nu_{k+1} r_k^2 < theta nu_k r_{k+1}^2 with
// lambda, kappa > 10^6 and theta < 10^-6); any violation throws
// HypothesesUnsatisfied. When an (N+1)-th atom is available the entries are
// re-derived at truncation N + 1 and rows certify that each entry with
// n <= N - 3 moved by a relative amount below 2^-20; without a spare atom
// those rows are NOT_APPLICABLE. Requires N >= 4 (DomainError) and
// nu.size() >= N (TooFewAtoms).
Report theorem11_check(const DiscreteMeasure& nu, const LacunarityParams& params,
                       std::size_t N, mpfr_prec_t bits = 128);

// Certifies the shape of the weight ratios across reciprocal-variable
// continued-fraction steps. When `params` is null the constants are
// extracted from fd.nu as the extremal ratios the data satisfies
// (lambda = min r_{k+1}/r_k, kappa = min nu_{k+1}/nu_k, theta = max
// nu_{k+1} r_k^2/(nu_k r_{k+1}^2)), shaved by 2^-10 toward the strict side
// so that the strict hypothesis rows remain certifiable on data attaining
// the extremes. The first step runs on the reversed transformed measure and
// maps back through r^(1) = 1/s and the mass proxy w/s^3 (exact in ratios);
// the second-level data comes from the Stieltjes algorithm applied directly
// to the constructed measure, because the reciprocal bridge is exact only
// across one step. Rows:
//
//   level 0: the step certificate with the transformed mass-ratio
//     hypothesis family mu_{n+1}/mu_n in
//     ((1 - 10/lambda) kappa * g^(2(N-n)-1), (1 + 10/lambda) theta * g^(2(N-n)+1)),
//     g = t_{n+1}/t_n;
//   levels 1 and 2: reconstructed_position_positive /
//     reconstructed_weight_positive (cross-multiplication guards),
//     transformed_position_lacunary (r^(l)_{n+1} > lambda r^(l)_n), and the
//     uniform shape window
//     (kappa/10) g^(2n-2) < sigma^(l)_n/sigma^(l)_{n+1} < 10 theta g^(2n),
//     g = r^(l)_{n+1}/r^(l)_n, as weight_ratio_shape_lower/upper;
//   level 1 only: the one-step prediction window
//     (1 -+ {20n, 20}/kappa^n) * sigma_{n+1} r_{n+1}^2/(sigma_{n+2} r_{n+2}^2)
//     as weight_ratio_step_window_lower/upper, and the refined parameter
//     window ((1 - 20n^2/kappa^n) kappa g^(2n-2), (1 + 20n/kappa^n) theta g^(2n))
//     as weight_ratio_shape_refined_lower/upper.
//
// Escalates working precision by doubling (at most four times) while
// refinable rows stay undecided; PrecisionExhausted if they persist.
// Requires truncation >= 3 (TooFewAtoms).
Report corollary52_check(const FockData& fd, mpfr_prec_t bits = 128,
                         const LacunarityParams* params = nullptr);

}  // namespace jacobi
