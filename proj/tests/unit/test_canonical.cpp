#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "jacobi/canonical.hpp"
#include "jacobi/errors.hpp"
#include "jacobi/forward.hpp"
#include "jacobi/stieltjes.hpp"

using jacobi::Atom;
using jacobi::CheckRow;
using jacobi::DiscreteMeasure;
using jacobi::DyadicInterval;
using jacobi::Hamiltonian;
using jacobi::JacobiMatrix;
using jacobi::LacunarityParams;
using jacobi::make_rat;
using jacobi::MonodromyMeasures;
using jacobi::MonodromyPolys;
using jacobi::Rat;
using jacobi::rat_from_string;
using jacobi::RatPoly;
using jacobi::Report;
using jacobi::Verdict;

namespace {

struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

JacobiMatrix random_jacobi(SplitMix64& rng, std::size_t n) {
    std::vector<Rat> diag, off;
    for (std::size_t k = 0; k < n; ++k)
        diag.push_back(Rat(static_cast<long>(k) + 1) + make_rat(rng.range(-16, 16), 64));
    for (std::size_t k = 0; k + 1 < n; ++k) off.push_back(make_rat(rng.range(16, 256), 64));
    return JacobiMatrix(std::move(diag), std::move(off));
}

// A chain with nonzero, pairwise non-parallel consecutive directions.
Hamiltonian random_chain(SplitMix64& rng, std::size_t k_intervals) {
    std::vector<Rat> lengths;
    std::vector<std::pair<Rat, Rat>> dirs;
    dirs.emplace_back(Rat(1), Rat(0));
    lengths.push_back(make_rat(rng.range(1, 12), 4));
    for (std::size_t k = 1; k < k_intervals; ++k) {
        lengths.push_back(make_rat(rng.range(1, 12), 4));
        Rat ex = make_rat(rng.range(-8, 8), 3);
        Rat ey = make_rat(rng.range(1, 8), 3) * (rng.range(0, 1) ? 1 : -1);
        // ey != 0 keeps every direction non-horizontal, hence non-parallel to
        // the previous one whenever the previous was horizontal; for two
        // generic directions parallelism means ex * prev_ey == ey * prev_ex.
        const auto& [px, py] = dirs.back();
        if (ex * py == ey * px) ex += 1;
        dirs.emplace_back(ex, ey);
    }
    return Hamiltonian(lengths, dirs);
}

std::vector<const CheckRow*> rows_with_id(const Report& report, const std::string& id) {
    std::vector<const CheckRow*> out;
    for (const CheckRow& row : report.rows)
        if (row.statement_id == id) out.push_back(&row);
    return out;
}

bool all_pass_exact(const std::vector<const CheckRow*>& rows) {
    for (const CheckRow* row : rows)
        if (row->verdict != Verdict::PASS || !row->decided_exactly) return false;
    return !rows.empty();
}

bool has_warning_containing(const Report& report, const std::string& needle) {
    for (const std::string& w : report.warnings)
        if (w.find(needle) != std::string::npos) return true;
    return false;
}

// The two-interval reference chain: unit lengths, e_1 horizontal and e_2
// diagonal, overlap 1/sqrt(2).
Hamiltonian reference_chain() {
    return Hamiltonian({Rat(1), Rat(1)}, {{Rat(1), Rat(0)}, {Rat(-1), Rat(-1)}});
}

}  // namespace

TEST_CASE("chain construction computes overlaps and validates input") {
    Hamiltonian H = reference_chain();
    REQUIRE(H.size() == 2);
    CHECK(H.intervals[0].delta_sq == make_rat(1, 2));
    CHECK(H.intervals[1].delta_sq == Rat(1));  // sentinel: no successor
    CHECK_FALSE(H.terminal_length_free);

    CHECK_THROWS_AS(Hamiltonian({Rat(1)}, {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}),
                    jacobi::DomainError);
    CHECK_THROWS_AS(Hamiltonian({Rat(0), Rat(1)}, {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}),
                    jacobi::DomainError);
    CHECK_THROWS_AS(Hamiltonian({Rat(1), Rat(1)}, {{Rat(1), Rat(0)}, {Rat(0), Rat(0)}}),
                    jacobi::DomainError);
    CHECK_THROWS_AS(Hamiltonian({Rat(1), Rat(1)}, {{Rat(1), Rat(0)}, {Rat(-3), Rat(0)}}),
                    jacobi::ParallelDirections);
}

TEST_CASE("two-interval chains translate to the expected matrices") {
    Hamiltonian H = reference_chain();
    JacobiMatrix open = hamiltonian_to_jacobi(H);
    REQUIRE(open.size() == 1);
    CHECK(open.diag[0] == Rat(1));

    JacobiMatrix closed = hamiltonian_to_jacobi_closed(H);
    REQUIRE(closed.size() == 2);
    CHECK(closed.diag[0] == Rat(1));
    CHECK(closed.diag[1] == Rat(0));
    CHECK(closed.offdiag_sq[0] == Rat(2));

    // Asymmetric lengths change both the diagonal and the coupling.
    Hamiltonian H2({Rat(1), Rat(2)}, {{Rat(1), Rat(0)}, {Rat(-2), Rat(-1)}});
    CHECK(H2.intervals[0].delta_sq == make_rat(1, 5));
    JacobiMatrix closed2 = hamiltonian_to_jacobi_closed(H2);
    CHECK(closed2.diag[0] == Rat(2));
    CHECK(closed2.diag[1] == Rat(0));
    CHECK(closed2.offdiag_sq[0] == make_rat(5, 2));

    // Contract violations.
    CHECK_THROWS_AS(hamiltonian_to_jacobi(Hamiltonian({Rat(1)}, {{Rat(1), Rat(0)}})),
                    jacobi::DomainError);
    CHECK_THROWS_AS(
        hamiltonian_to_jacobi(Hamiltonian({Rat(1), Rat(1)}, {{Rat(1), Rat(1)}, {Rat(1), Rat(0)}})),
        jacobi::DomainError);
    // The closure needs a non-horizontal final direction.
    CHECK_THROWS_AS(hamiltonian_to_jacobi_closed(
                        Hamiltonian({Rat(1), Rat(1), Rat(1)},
                                    {{Rat(1), Rat(0)}, {Rat(1), Rat(1)}, {Rat(1), Rat(0)}})),
                    jacobi::DomainError);
}

TEST_CASE("translation and monodromy are scale-invariant in the directions") {
    JacobiMatrix J({Rat(2), Rat(2)}, {Rat(1)});
    Hamiltonian H = jacobi_to_hamiltonian(J, Rat(500));
    JacobiMatrix base = hamiltonian_to_jacobi(H);
    MonodromyPolys baseM = monodromy(H);

    for (const Rat& c : {Rat(7), Rat(-3), make_rat(2, 9)}) {
        Hamiltonian scaled = H;
        scaled.intervals[1].ex *= c;
        scaled.intervals[1].ey *= c;
        CHECK(hamiltonian_to_jacobi(scaled) == base);
        MonodromyPolys M = monodromy(scaled);
        CHECK(M.A == baseM.A);
        CHECK(M.B == baseM.B);
        CHECK(M.C == baseM.C);
        CHECK(M.D == baseM.D);
    }
}

TEST_CASE("matrix to chain and back is the identity") {
    // Reference arithmetic: r_1 = q_1 l_1 = 1000 makes the first overlap
    // squared exactly 1/(1 + 1000^2).
    JacobiMatrix J({Rat(2), Rat(2)}, {Rat(1)});
    Hamiltonian H = jacobi_to_hamiltonian(J, Rat(500));
    REQUIRE(H.size() == 3);
    CHECK(H.terminal_length_free);
    CHECK(H.intervals[0].delta_sq == make_rat(1, 1000001));
    CHECK(H.intervals[1].l == make_rat(1000001, 500));
    CHECK(H.intervals[2].l == Rat(1));
    CHECK(hamiltonian_to_jacobi(H) == J);

    CHECK_THROWS_AS(jacobi_to_hamiltonian(J, Rat(0)), jacobi::DomainError);
    CHECK_THROWS_AS(jacobi_to_hamiltonian(J, Rat(-2)), jacobi::DomainError);

    SplitMix64 rng(2026);
    for (int rep = 0; rep < 8; ++rep) {
        const std::size_t n = static_cast<std::size_t>(rng.range(1, 7));
        JacobiMatrix R = random_jacobi(rng, n);
        for (const Rat& l1 : {Rat(1), make_rat(3, 7)}) {
            Hamiltonian C = jacobi_to_hamiltonian(R, l1);
            REQUIRE(C.size() == n + 1);
            CHECK(C.intervals[0].ex == Rat(1));
            CHECK(C.intervals[0].ey == Rat(0));
            CHECK(hamiltonian_to_jacobi(C) == R);
            // Construction keeps every overlap positive under the recorded
            // quarter-turn convention and inside (0, 1].
            for (std::size_t k = 0; k + 1 < C.size(); ++k) {
                const auto& a = C.intervals[k];
                const auto& b = C.intervals[k + 1];
                CHECK(a.ex * b.ey - a.ey * b.ex < 0);
                CHECK(a.delta_sq > 0);
                CHECK(a.delta_sq <= 1);
            }
        }
    }
}

TEST_CASE("monodromy entries: degenerate products and the determinant identity") {
    MonodromyPolys empty = monodromy(Hamiltonian{});
    CHECK(empty.A == RatPoly::constant(Rat(1)));
    CHECK(empty.B == RatPoly::constant(Rat(0)));
    CHECK(empty.C == RatPoly::constant(Rat(0)));
    CHECK(empty.D == RatPoly::constant(Rat(1)));

    // One horizontal interval: a single linear off-diagonal entry.
    MonodromyPolys single = monodromy(Hamiltonian({Rat(1)}, {{Rat(1), Rat(0)}}));
    CHECK(single.A == RatPoly::constant(Rat(1)));
    CHECK(single.C == RatPoly::constant(Rat(0)));
    CHECK(single.D == RatPoly::constant(Rat(1)));
    CHECK(single.B == RatPoly::monomial(Rat(-1), 1));

    MonodromyPolys M = monodromy(reference_chain());
    REQUIRE(M.A.degree() == 2);
    CHECK(M.A.coeff(0) == Rat(1));
    CHECK(M.A.coeff(1) == make_rat(1, 2));
    CHECK(M.A.coeff(2) == make_rat(-1, 2));
    CHECK(M.C == RatPoly::monomial(make_rat(1, 2), 1));
    CHECK(M.B.coeff(0) == Rat(0));
    CHECK(M.B.coeff(1) == make_rat(-3, 2));
    CHECK(M.B.coeff(2) == make_rat(1, 2));

    SplitMix64 rng(77);
    for (int rep = 0; rep < 10; ++rep) {
        Hamiltonian C = random_chain(rng, static_cast<std::size_t>(rng.range(2, 6)));
        MonodromyPolys R = monodromy(C);
        CHECK(R.A * R.D - R.C * R.B == RatPoly::constant(Rat(1)));
        CHECK(R.A.eval(Rat(0)) == Rat(1));
        CHECK(R.D.eval(Rat(0)) == Rat(1));
        CHECK(R.B.eval(Rat(0)) == Rat(0));
        CHECK(R.C.eval(Rat(0)) == Rat(0));
    }
}

TEST_CASE("spectral data extraction from the monodromy matrix") {
    MonodromyMeasures mm = measures_from_monodromy(monodromy(reference_chain()), 128);
    REQUIRE(mm.mu.size() == 2);
    // Rational roots stay exact: atoms (-1, 1/3) and (2, 2/3).
    REQUIRE(mm.mu[0].t_exact.has_value());
    CHECK(*mm.mu[0].t_exact == Rat(-1));
    CHECK(*mm.mu[0].m_exact == make_rat(1, 3));
    CHECK(*mm.mu[1].t_exact == Rat(2));
    CHECK(*mm.mu[1].m_exact == make_rat(2, 3));
    CHECK(*mm.nu[0].m_exact == make_rat(4, 3));
    CHECK(*mm.nu[1].m_exact == make_rat(2, 3));
    CHECK(mm.p.contains(make_rat(3, 5)));

    // C(0) = 0 forces the zero first inverse moment of the extracted measure.
    Rat inv_moment;
    for (const auto& a : mm.mu) inv_moment += *a.m_exact / *a.t_exact;
    CHECK(inv_moment == Rat(0));

    // Degenerate inputs.
    CHECK_THROWS_AS(
        measures_from_monodromy(monodromy(Hamiltonian({Rat(1)}, {{Rat(1), Rat(0)}})), 64),
        jacobi::NoSpectrum);
    MonodromyPolys repeated{RatPoly::linear_x_minus(Rat(1)) * RatPoly::linear_x_minus(Rat(1)),
                            RatPoly::monomial(Rat(-1), 1), RatPoly::monomial(Rat(1), 1),
                            RatPoly::constant(Rat(1))};
    CHECK_THROWS_AS(measures_from_monodromy(repeated, 64), jacobi::NonSquarefreeA);
    MonodromyPolys complex_roots{
        RatPoly::constant(Rat(1)) + RatPoly::monomial(Rat(1), 2),
        RatPoly::monomial(Rat(-1), 1), RatPoly::monomial(Rat(1), 1),
        RatPoly::constant(Rat(1))};
    CHECK_THROWS_AS(measures_from_monodromy(complex_roots, 64), jacobi::DomainError);
}

TEST_CASE("monodromy measures match the assembled spectral measure") {
    SplitMix64 rng(404);
    for (int rep = 0; rep < 4; ++rep) {
        const std::size_t n = static_cast<std::size_t>(rng.range(2, 5));
        JacobiMatrix J = random_jacobi(rng, n);
        const Rat l1 = make_rat(rng.range(1, 6), 2);
        Hamiltonian H = jacobi_to_hamiltonian(J, l1);
        JacobiMatrix closed = hamiltonian_to_jacobi_closed(H);

        // The closure extends the translated matrix without disturbing it.
        REQUIRE(closed.size() == H.size());
        for (std::size_t k = 0; k < n; ++k) CHECK(closed.diag[k] == J.diag[k]);
        for (std::size_t k = 0; k + 1 < n; ++k) CHECK(closed.offdiag_sq[k] == J.offdiag_sq[k]);

        MonodromyPolys M = monodromy(H);
        jacobi::ForwardResult fr = jacobi::spectral_measure(closed, 128);

        // Exact cross-module identity: C/A equals the assembled ratio up to
        // the total-mass factor 1/l_1.
        CHECK(M.C * fr.herglotz.den * l1 == fr.herglotz.num * M.A);

        // Atom-by-atom enclosure agreement after matching normalizations.
        MonodromyMeasures mm = measures_from_monodromy(M, 128);
        REQUIRE(mm.mu.size() == fr.measure_enclosures.size());
        const DyadicInterval scale(Rat(1) / l1, 128);
        for (std::size_t k = 0; k < mm.mu.size(); ++k) {
            CHECK(mm.mu[k].t.intersects(fr.measure_enclosures[k].t));
            CHECK(mm.mu[k].m.intersects(fr.measure_enclosures[k].m * scale));
        }
    }
}

TEST_CASE("chain conclusions certify on a lacunary measure") {
    DiscreteMeasure mu =
        jacobi::generate_lacunary(5, rat_from_string("1e5"), rat_from_string("2e7"), Rat(1), 0);
    const LacunarityParams params{rat_from_string("1e4"), Rat(150), rat_from_string("3e-3")};
    Report rep = theorem14_check(mu, params, 128);
    CHECK(rep.exit_code() == 0);
    CHECK_FALSE(rep.any_fail());
    CHECK_FALSE(rep.any_indeterminate());
    CHECK(rep.warnings.empty());

    CHECK(all_pass_exact(rows_with_id(rep, "delta1_sign")));
    CHECK(all_pass_exact(rows_with_id(rep, "delta1_window_lower")));
    CHECK(all_pass_exact(rows_with_id(rep, "delta1_window_upper")));
    CHECK(rows_with_id(rep, "hyp_support_positive").size() == 5);
    CHECK(rows_with_id(rep, "hyp_position_ratio").size() == 4);
    CHECK(rows_with_id(rep, "hyp_mass_ratio").size() == 4);
    CHECK(rows_with_id(rep, "hyp_decay_ratio").size() == 4);
    CHECK(all_pass_exact(rows_with_id(rep, "overlap_ratio")));
    CHECK(rows_with_id(rep, "overlap_ratio").size() == 4);
    CHECK(all_pass_exact(rows_with_id(rep, "length_overlap_growth")));
    CHECK(all_pass_exact(rows_with_id(rep, "length_decay_growth")));

    // A symmetric two-atom measure has q_1 = 0: no default first length.
    DiscreteMeasure sym{{Atom{Rat(-1), make_rat(1, 2)}, Atom{Rat(1), make_rat(1, 2)}}};
    CHECK_THROWS_AS(theorem14_check(sym, params, 64), jacobi::DomainError);

    // Out-of-window parameters on a weakly lacunary measure: hypothesis rows
    // fail, conclusions are still evaluated.
    DiscreteMeasure weak{{Atom{Rat(1), make_rat(1, 2)}, Atom{Rat(3), make_rat(1, 2)}}};
    Report bad = theorem14_check(weak, params, 64);
    CHECK(bad.any_fail());
    CHECK(bad.exit_code() == 1);
    CHECK(has_warning_containing(bad, "conclusions evaluated anyway"));
    CHECK_FALSE(rows_with_id(bad, "overlap_ratio").empty());
}

TEST_CASE("chain hypotheses imply a lacunary spectral measure") {
    DiscreteMeasure mu =
        jacobi::generate_lacunary(5, rat_from_string("2e13"), rat_from_string("4e18"), Rat(1), 0);
    jacobi::InverseResult inv = jacobi::inverse_spectral(mu, 128);
    Hamiltonian H = jacobi_to_hamiltonian(inv.jacobi, Rat(1000) / inv.jacobi.diag[0]);
    const LacunarityParams params{rat_from_string("1e4"), Rat(101), rat_from_string("2e-3")};

    Report rep = theorem15_check(H, params, 128);
    CHECK(rep.exit_code() == 0);
    CHECK_FALSE(rep.any_fail());
    CHECK_FALSE(rep.any_indeterminate());
    CHECK(rows_with_id(rep, "hyp_overlap_sign").size() == 5);
    CHECK(all_pass_exact(rows_with_id(rep, "hyp_delta1_window_lower")));
    CHECK(all_pass_exact(rows_with_id(rep, "hyp_delta1_window_upper")));
    CHECK(rows_with_id(rep, "hyp_overlap_ratio").size() == 4);
    CHECK(rows_with_id(rep, "hyp_length_overlap_growth").size() == 4);
    CHECK(rows_with_id(rep, "hyp_length_decay_growth").size() == 4);
    CHECK(rows_with_id(rep, "lacunary_position").size() == 4);
    CHECK(rows_with_id(rep, "lacunary_mass_ratio").size() == 4);
    CHECK(rows_with_id(rep, "lacunary_decay").size() == 4);

    // A short chain without the growth hypotheses: failures are listed, the
    // conclusion rows still run on the (positive) reconstructed support.
    Hamiltonian small = jacobi_to_hamiltonian(JacobiMatrix({Rat(2), Rat(2)}, {Rat(1)}), Rat(500));
    Report bad = theorem15_check(small, params, 128);
    CHECK(bad.any_fail());
    CHECK(has_warning_containing(bad, "conclusions evaluated anyway"));
    CHECK_FALSE(rows_with_id(bad, "lacunary_position").empty());

    CHECK_THROWS_AS(theorem15_check(Hamiltonian({Rat(1)}, {{Rat(1), Rat(0)}}), params, 64),
                    jacobi::DomainError);
    CHECK_THROWS_AS(
        theorem15_check(Hamiltonian({Rat(1), Rat(1)}, {{Rat(1), Rat(1)}, {Rat(1), Rat(0)}}),
                        params, 64),
        jacobi::DomainError);
}

TEST_CASE("the derived first length pins the first overlap window") {
    SplitMix64 rng(11);
    for (int rep = 0; rep < 4; ++rep) {
        DiscreteMeasure mu = jacobi::generate_lacunary(
            static_cast<std::size_t>(rng.range(2, 6)), Rat(2000), Rat(90000), Rat(1),
            rng.next());
        jacobi::InverseResult inv = jacobi::inverse_spectral(mu, 96);
        Hamiltonian H = jacobi_to_hamiltonian(inv.jacobi, Rat(1000) / inv.jacobi.diag[0]);
        CHECK(H.intervals[0].delta_sq == make_rat(1, 1000001));
        CHECK(H.intervals[0].delta_sq > make_rat(1, 1002001));
        CHECK(H.intervals[0].delta_sq < make_rat(1, 1000000));
    }
}
