#include "jacobi/measure.hpp"

#include "jacobi/errors.hpp"

namespace jacobi {

namespace {

// SplitMix64 with the standard constants; documented so generated fixtures
// are reproducible from the seed alone.
struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    // Uniform rational in [1, 1 + 1/64] with resolution 2^-22.
    Rat unit_factor() {
        unsigned long k = static_cast<unsigned long>(next() % 65537ULL);
        Rat f(1);
        f += Rat(static_cast<long>(k), 64L * 65536L);
        f.canonicalize();
        return f;
    }
};

void require_positive_support(const DiscreteMeasure& mu) {
    for (const Atom& a : mu.atoms())
        if (a.t <= 0) throw NeedsPositiveSupport("position " + rat_to_string(a.t) + " is not positive");
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)), total_mass_(0) {
    if (atoms_.empty()) throw TooFewAtoms("a measure needs at least one atom");
    for (std::size_t k = 0; k < atoms_.size(); ++k) {
        if (atoms_[k].m <= 0)
            throw DomainError("mass " + rat_to_string(atoms_[k].m) + " at index " + std::to_string(k) +
                              " is not positive");
        if (k > 0 && !(atoms_[k - 1].t < atoms_[k].t))
            throw DomainError("positions must be strictly increasing");
        total_mass_ += atoms_[k].m;
    }
}

DiscreteMeasure normalize(const DiscreteMeasure& mu) {
    std::vector<Atom> atoms = mu.atoms();
    const Rat& total = mu.total_mass();
    for (Atom& a : atoms) a.m /= total;
    return DiscreteMeasure(std::move(atoms));
}

LacunarityParams lacunarity_params(const DiscreteMeasure& mu) {
    if (mu.size() < 2) throw TooFewAtoms("lacunarity parameters need at least two atoms");
    require_positive_support(mu);
    LacunarityParams p{Rat(0), Rat(0), Rat(0)};
    for (std::size_t k = 0; k + 1 < mu.size(); ++k) {
        const Atom& a = mu.atom(k);
        const Atom& b = mu.atom(k + 1);
        Rat lambda = b.t / a.t;
        Rat kappa = (b.m * a.t) / (a.m * b.t);
        Rat theta = (b.m * a.t * a.t) / (a.m * b.t * b.t);
        if (k == 0 || lambda < p.lambda) p.lambda = lambda;
        if (k == 0 || kappa < p.kappa) p.kappa = kappa;
        if (k == 0 || theta > p.theta) p.theta = theta;
    }
    return p;
}

bool is_completely_lacunary(const DiscreteMeasure& mu, const LacunarityParams& params) {
    require_positive_support(mu);
    for (std::size_t k = 0; k + 1 < mu.size(); ++k) {
        const Atom& a = mu.atom(k);
        const Atom& b = mu.atom(k + 1);
        if (!(b.t > params.lambda * a.t)) return false;
        if (!(b.m * a.t > params.kappa * a.m * b.t)) return false;
        if (!(b.m * a.t * a.t < params.theta * a.m * b.t * b.t)) return false;
    }
    return true;
}

Rat small_space_constant(const DiscreteMeasure& nu) {
    require_positive_support(nu);
    const std::size_t n = nu.size();
    // prefix[i] = sum_{k<i} nu_k ; suffix[i] = sum_{k>i} nu_k/r_k^2
    std::vector<Rat> prefix(n, Rat(0)), suffix(n, Rat(0));
    for (std::size_t i = 1; i < n; ++i) prefix[i] = prefix[i - 1] + nu.atom(i - 1).m;
    for (std::size_t i = n; i-- > 1;) {
        const Atom& a = nu.atom(i);
        suffix[i - 1] = suffix[i] + a.m / (a.t * a.t);
    }
    Rat best(0);
    for (std::size_t i = 0; i < n; ++i) {
        const Atom& a = nu.atom(i);
        Rat c = (prefix[i] + a.t * a.t * suffix[i]) / a.m;
        if (c > best) best = c;
    }
    return best;
}

DiscreteMeasure generate_lacunary(std::size_t n_atoms, const Rat& t_ratio, const Rat& m_ratio,
                                  const Rat& t1, std::uint64_t seed) {
    if (n_atoms < 1) throw DomainError("n_atoms must be at least 1");
    if (!(t_ratio > 1)) throw DomainError("t_ratio must exceed 1");
    if (!(m_ratio > 0)) throw DomainError("m_ratio must be positive");
    if (!(t1 > 0)) throw DomainError("t1 must be positive");

    SplitMix64 rng{seed};
    std::vector<Atom> atoms;
    Rat t = t1;
    Rat m(1);
    atoms.push_back({t, m});
    for (std::size_t k = 1; k < n_atoms; ++k) {
        Rat ft(1), fm(1);
        if (seed != 0) {
            ft = rng.unit_factor();
            fm = rng.unit_factor();
        }
        t = t * t_ratio * ft;
        m = m * m_ratio * fm;
        atoms.push_back({t, m});
    }
    return normalize(DiscreteMeasure(std::move(atoms)));
}

}  // namespace jacobi
