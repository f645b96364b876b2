#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "jacobi/measure.hpp"
#include "jacobi/polynomial.hpp"
#include "jacobi/report.hpp"
#include "jacobi/stieltjes.hpp"

namespace jacobi {

// One indivisible piece of a rank-one canonical-system Hamiltonian:
// H = <., e> e on an interval of length l. Directions are stored
// UNNORMALIZED as exact rational pairs; every quantity the translation
// needs is a scale-invariant ratio in e, so the unit normalization (which
// would force irrational coordinates) is never materialized. delta_sq is
// the squared overlap with the NEXT piece's direction,
//   delta_k = -<perp(e_k), e_{k+1}> / (|e_k| |e_{k+1}|),
// where the quarter turn is fixed once as perp(x, y) = (-y, x); the final
// piece has no successor and carries the sentinel value 1. The squared
// overlap is rational even though delta_k itself generally is not.
struct HamiltonianInterval {
    Rat l;
    Rat ex;
    Rat ey;
    Rat delta_sq;
};

// A finite chain of indivisible intervals. Consecutive directions must be
// non-parallel (the translation degenerates otherwise), which places every
// overlap in (0, 1].
struct Hamiltonian {
    std::vector<HamiltonianInterval> intervals;
    // The translation from a Jacobi matrix determines every length except
    // the final one, which is emitted as 1 and flagged here.
    bool terminal_length_free = false;
    // Recorded quarter-turn convention for the overlap sign.
    static constexpr const char* orientation = "ccw";

    Hamiltonian() = default;
    // Validates lengths (> 0) and directions (nonzero), fills delta_sq from
    // consecutive directions. Throws DomainError on size mismatch or bad
    // entries, ParallelDirections when consecutive directions are parallel.
    Hamiltonian(const std::vector<Rat>& lengths,
                const std::vector<std::pair<Rat, Rat>>& directions);

    std::size_t size() const { return intervals.size(); }
};

// Scale-invariant translation of a K-interval chain (K >= 2, first
// direction horizontal, i.e. proportional to (1, 0)) into the
// (K-1) x (K-1) Jacobi matrix it generates:
//   q_j = (1/l_j) ( <e_j, e_{j+1}>/<perp(e_j), e_{j+1}>
//                 + <e_{j-1}, e_j>/<perp(e_{j-1}), e_j> ),
// where the second (boundary) term for j = 1 vanishes for horizontal e_1,
// and rho_j^2 = 1/(l_j l_{j+1} delta_j^2). The final interval's length only
// enters the coupling rho_{K-1}, which lies outside the output matrix, so
// chains whose terminal length is a free choice translate exactly. Overlaps
// are recomputed from the stored directions. Throws DomainError (K < 2 or
// non-horizontal first direction), ParallelDirections.
JacobiMatrix hamiltonian_to_jacobi(const Hamiltonian& H);

// The K x K closure of the same chain: hamiltonian_to_jacobi extended by
// the boundary diagonal entry
//   q_K = (1/l_K) ( <e_{K-1}, e_K>/<perp(e_{K-1}), e_K> - e_K^x/e_K^y )
// and the final coupling rho_{K-1}^2 = 1/(l_{K-1} l_K delta_{K-1}^2).
// This is the matrix whose spectral measure the monodromy data C/A carries
// (with total mass 1/l_1 instead of 1): the boundary term closes the chain
// against the condition that the first component of the solution vanish at
// the right endpoint. Throws DomainError when the final direction is
// horizontal (then deg A < K and no K x K closure exists).
JacobiMatrix hamiltonian_to_jacobi_closed(const Hamiltonian& H);

// Inverts the translation: builds the (N+1)-interval chain generating a
// given N x N Jacobi matrix, from e_1 = (1, 0) and a chosen first length
// l1 > 0. The running ratio r_j = <e_j, e_{j+1}>/<perp(e_j), e_{j+1}>
// satisfies r_1 = q_1 l_1 and r_{j+1} = q_{j+1} l_{j+1} - r_j; each next
// direction is e_{j+1} = -(r_j e_j + perp(e_j)), which makes the overlap
// both positive and equal to 1/sqrt(1 + r_j^2) (so delta_j^2 =
// 1/(1 + r_j^2) exactly); each next length is l_{j+1} = 1/(rho_j^2 l_j
// delta_j^2). The terminal length is not determined by the matrix and is
// emitted as 1 with terminal_length_free set. Feeding the result back
// through hamiltonian_to_jacobi reproduces the matrix exactly. Throws
// DomainError (l1 <= 0), DegenerateRatio if a computed overlap leaves
// (0, 1].
Hamiltonian jacobi_to_hamiltonian(const JacobiMatrix& J, const Rat& l1);

// Entries of the monodromy matrix M(L, z) of the chain, stacked as
//   M = [[A, C], [B, D]].
struct MonodromyPolys {
    RatPoly A;
    RatPoly B;
    RatPoly C;
    RatPoly D;
};

// Ordered product (first interval applied first) of the per-interval
// propagators exp(z l S^{-1} e e^T / <e,e>) = I + z l S^{-1} e e^T / <e,e>
// with S = [[0,-1],[1,0]]; the closed form is exact because S^{-1} e e^T
// squares to zero. A(0) = D(0) = 1, B(0) = C(0) = 0, and AD - CB == 1 as an
// exact polynomial identity (verified on every call). The empty chain gives
// the identity.
MonodromyPolys monodromy(const Hamiltonian& H);

// Both spectral data families carried by a monodromy matrix, over the
// shared poles at the roots of A: mu is the measure represented by C/A
// (for a chain its total mass is 1/l_1; it is NOT renormalized here), and
// (nu, p) represent -B/A = p + sum nu_k (1/(r_k - z) - r_k/(r_k^2 + 1)).
struct MonodromyMeasures {
    EnclosureMeasure mu;
    EnclosureMeasure nu;
    DyadicInterval p;
};

// Validated extraction. Poles are the isolated, refined roots of A (exact
// rational roots stay exact points); residues are -C(t)/A'(t) for mu and
// B(t)/A'(t) for nu, certified positive; p comes from evaluating the
// partial-fraction representation at z = 0, where -B(0)/A(0) = 0. Throws
// NoSpectrum (deg A = 0), NonSquarefreeA (repeated roots), DomainError
// (complex roots, a pole at the origin, or a nonpositive exact residue),
// PrecisionExhausted when certification keeps failing after the escalation
// budget.
MonodromyMeasures measures_from_monodromy(const MonodromyPolys& M, mpfr_prec_t bits = 128);

// Certifies the chain-side conclusions for a completely lacunary measure.
// Pipeline: inverse_spectral, then jacobi_to_hamiltonian with the first
// length fixed to 1000/q_1. Gates: lambda > 1000, kappa > 100,
// 10/lambda < theta < 1/100. Hypothesis rows restate complete lacunarity
// of mu; conclusion rows certify 1/1001 < delta_1 < 1/1000 (exactly, via
// delta_1^2 plus the sign of the unnormalized overlap) and, per consecutive
// overlap pair, delta_n/delta_{n+1} > kappa/10, (l_{n+1} delta_{n+1})/
// (l_n delta_n) > lambda/10 and (l_{n+1} delta_{n+1}^2)/(l_n delta_n^2) >
// theta^{-1}/1000, all as squared or cross-multiplied exact-rational
// comparisons (constructed overlaps are positive by the sign convention,
// so squaring preserves direction). Throws DomainError when q_1 = 0 or the
// derived first length is not positive.
Report theorem14_check(const DiscreteMeasure& mu, const LacunarityParams& params,
                       mpfr_prec_t bits = 128);

// The reverse direction: hypothesis rows on the chain itself (same window
// gates; overlap signs; 1/1001 < delta_1 < 1/1000; per pair
// delta_n/delta_{n+1} > 100 kappa, (l_{n+1} delta_{n+1})/(l_n delta_n) >
// 100 lambda, (l_{n+1} delta_{n+1}^2)/(l_n delta_n^2) > 100/theta), then
// the conclusion that the spectral measure of hamiltonian_to_jacobi(H) is
// completely lacunary with the given parameters, certified on validated
// atom enclosures (NOT_APPLICABLE when the support cannot be certified
// positive). Violated hypotheses keep their FAIL verdicts and the
// conclusions are still evaluated, with a warning.
Report theorem15_check(const Hamiltonian& H, const LacunarityParams& params,
                       mpfr_prec_t bits = 128);

}  // namespace jacobi
