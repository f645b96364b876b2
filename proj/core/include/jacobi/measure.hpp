#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "jacobi/rational.hpp"

namespace jacobi {

struct Atom {
    Rat t;  // position
    Rat m;  // mass
    bool operator==(const Atom& other) const { return t == other.t && m == other.m; }
};

// Finitely many point masses at strictly increasing positions, all masses
// positive. Also reused for the de Branges data (r_k, nu_k) and the
// Fock-type data (r_k, sigma_k).
class DiscreteMeasure {
public:
    explicit DiscreteMeasure(std::vector<Atom> atoms);

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    const Atom& atom(std::size_t k) const { return atoms_[k]; }  // 0-based
    const Rat& total_mass() const { return total_mass_; }
    bool operator==(const DiscreteMeasure& other) const { return atoms_ == other.atoms_; }

private:
    std::vector<Atom> atoms_;
    Rat total_mass_;
};

// Parameter triple (lambda, kappa, theta) of the three lacunarity
// inequalities. The admissible window is lambda > 1, kappa > 1,
// 0 < theta < 1; extraction below returns extremal ratios that may fall
// outside that window, which simply means no admissible triple exists.
struct LacunarityParams {
    Rat lambda;
    Rat kappa;
    Rat theta;
};

// Scales masses so the total is 1; positions unchanged.
DiscreteMeasure normalize(const DiscreteMeasure& mu);

// Extremal admissible parameters:
//   lambda = min_k t_{k+1}/t_k
//   kappa  = min_k (m_{k+1} t_k)/(m_k t_{k+1})
//   theta  = max_k (m_{k+1} t_k^2)/(m_k t_{k+1}^2)
// Throws NeedsPositiveSupport unless all t_k > 0, TooFewAtoms when N < 2.
LacunarityParams lacunarity_params(const DiscreteMeasure& mu);

// True iff all three strict inequalities hold with the GIVEN parameters for
// every consecutive pair:
//   t_{k+1} > lambda t_k,  m_{k+1}/t_{k+1} > kappa m_k/t_k,
//   m_{k+1}/t_{k+1}^2 < theta m_k/t_k^2.
// Boundary equality counts as false. A single atom is vacuously lacunary.
bool is_completely_lacunary(const DiscreteMeasure& mu, const LacunarityParams& params);

// Minimal C with sum_{k<n} nu_k + r_n^2 sum_{k>n} nu_k/r_k^2 <= C nu_n for
// every n, computed exactly. Zero for a single atom.
Rat small_space_constant(const DiscreteMeasure& nu);

// Deterministic test family: t_k = t1 * t_ratio^(k-1), m_k proportional to
// m_ratio^(k-1), normalized. seed == 0 gives the exact geometric family;
// a nonzero seed perturbs each consecutive ratio multiplicatively by a
// factor in [1, 1 + 1/64] drawn from SplitMix64, keeping families
// non-degenerate but reproducible.
DiscreteMeasure generate_lacunary(std::size_t n_atoms, const Rat& t_ratio, const Rat& m_ratio,
                                  const Rat& t1, std::uint64_t seed);

}  // namespace jacobi
