#include <string>
#include <vector>

#include "doctest.h"
#include "jacobi/errors.hpp"
#include "jacobi/report.hpp"
#include "jacobi/stieltjes.hpp"

using jacobi::Atom;
using jacobi::CheckRow;
using jacobi::DiscreteMeasure;
using jacobi::DyadicInterval;
using jacobi::InverseResult;
using jacobi::LacunarityParams;
using jacobi::make_rat;
using jacobi::MassRatioHypothesis;
using jacobi::Rat;
using jacobi::Report;
using jacobi::StepCertificate;
using jacobi::Verdict;

namespace {

bool has_warning_containing(const Report& report, const std::string& needle) {
    for (const std::string& w : report.warnings)
        if (w.find(needle) != std::string::npos) return true;
    return false;
}

std::vector<const CheckRow*> rows_with_id(const Report& report, const std::string& id) {
    std::vector<const CheckRow*> out;
    for (const CheckRow& row : report.rows)
        if (row.statement_id == id) out.push_back(&row);
    return out;
}

}  // namespace

TEST_CASE("exact rows decide and display separation") {
    Report report;
    CheckRow pass = jacobi::exact_row("demo", 0, 1, Rat(1), Rat(2), true, 64, report);
    CHECK(pass.verdict == Verdict::PASS);
    CHECK(pass.decided_exactly);
    CHECK(pass.lhs.hi() < pass.rhs.lo());

    CheckRow fail = jacobi::exact_row("demo", 0, 2, make_rat(2, 3), make_rat(1, 3), true, 64,
                                      report);
    CHECK(fail.verdict == Verdict::FAIL);
    CHECK(fail.lhs.lo() > fail.rhs.hi());

    // Nearly equal values must still separate.
    Rat close = Rat(1) + jacobi::rat_pow2(-200);
    CheckRow tight = jacobi::exact_row("demo", 0, 3, Rat(1), close, true, 16, report);
    CHECK(tight.verdict == Verdict::PASS);
    CHECK(tight.lhs.hi() < tight.rhs.lo());
    CHECK(report.warnings.empty());

    CheckRow eq_strict = jacobi::exact_row("demo", 0, 4, make_rat(1, 3), make_rat(1, 3), true, 64,
                                           report);
    CHECK(eq_strict.verdict == Verdict::INDETERMINATE);
    CHECK(has_warning_containing(report, "exact equality"));

    CheckRow eq_loose = jacobi::exact_row("demo", 0, 5, make_rat(1, 3), make_rat(1, 3), false, 64,
                                          report);
    CHECK(eq_loose.verdict == Verdict::PASS);
    CHECK(has_warning_containing(report, "boundary equality"));
}

TEST_CASE("report bookkeeping and CSV shape") {
    Report report;
    report.rows.push_back(jacobi::exact_row("alpha", 0, 1, Rat(1), Rat(6), true, 64, report));
    CHECK(report.exit_code() == 0);
    CHECK(report.all_pass());

    report.rows.push_back(jacobi::interval_row(
        "beta", 1, 2, DyadicInterval(Rat(0), Rat(2), 64), DyadicInterval(Rat(1), Rat(3), 64),
        true));
    CHECK(report.rows.back().verdict == Verdict::INDETERMINATE);
    CHECK(report.exit_code() == 2);
    CHECK(report.any_refinable_indeterminate());

    report.rows.push_back(jacobi::exact_row("gamma", 2, 3, Rat(5), Rat(4), true, 64, report));
    CHECK(report.exit_code() == 1);

    std::string csv = jacobi::report_to_csv(report);
    CHECK(csv.find("statement_id,level,index,lhs_lo,lhs_hi,rhs_lo,rhs_hi,verdict\n") == 0);
    CHECK(csv.find("alpha,0,1,1*2^0,1*2^0,3*2^1,3*2^1,PASS\n") != std::string::npos);
    CHECK(csv.find("beta,1,2,") != std::string::npos);
    CHECK(csv.find(",INDETERMINATE\n") != std::string::npos);
    CHECK(csv.find("gamma,2,3,") != std::string::npos);

    Report other;
    other.warnings.push_back("note");
    other.rows.push_back(jacobi::not_applicable_row("delta", 0, 0, DyadicInterval(),
                                                    DyadicInterval()));
    report.merge(other);
    CHECK(report.rows.size() == 4);
    CHECK(report.warnings.size() == 1);
    // NOT_APPLICABLE rows do not block a clean exit.
    Report gated;
    gated.rows.push_back(other.rows.back());
    CHECK(gated.exit_code() == 0);
}

TEST_CASE("full certified run on the lacunary fixture passes everything") {
    DiscreteMeasure mu = jacobi::generate_lacunary(5, Rat(10000), Rat(600000), Rat(1), 0);
    LacunarityParams params{Rat(1001), Rat(21), make_rat(7, 1000)};
    InverseResult inv = jacobi::inverse_spectral(mu, 128, true, &params);
    REQUIRE(inv.certificates.size() == 4);

    for (const StepCertificate& cert : inv.certificates) {
        CHECK_FALSE(cert.report.any_fail());
        CHECK_FALSE(cert.report.any_indeterminate());
    }

    // Slack sequence at the original level: 5 (kappa-1)^(n-m) with m = 5.
    const StepCertificate& first = inv.certificates.front();
    REQUIRE(first.eps.size() == 3);
    CHECK(first.eps[0] == make_rat(1, 32000));  // 5 * 20^-4
    CHECK(first.eps[1] == make_rat(1, 1600));
    CHECK(first.eps[2] == make_rat(1, 80));

    // Partial masses end at the full (unit) mass.
    REQUIRE(first.msums.size() == 5);
    CHECK(first.msums.back().contains(Rat(1)));

    // Statement rows exist at every level with the expected multiplicity.
    for (std::size_t l = 0; l < inv.certificates.size(); ++l) {
        const Report& rep = inv.certificates[l].report;
        std::size_t m = 5 - l;
        CHECK(rows_with_id(rep, "hyp_position_ratio").size() == m - 1);
        CHECK(rows_with_id(rep, "pole_offset_lower").size() == m - 1);
        CHECK(rows_with_id(rep, "pole_relative_growth").size() == m - 1);
        if (m >= 3) {
            CHECK(rows_with_id(rep, "weight_decay_step").size() == m - 2);
            CHECK(rows_with_id(rep, "gap_lacunary_growth").size() == m - 2);
        }
    }

    // Envelope certification across the whole run.
    Report envelope = jacobi::lemma22_envelope(mu, inv.steps, params, 128);
    CHECK_FALSE(envelope.any_fail());
    CHECK_FALSE(envelope.any_indeterminate());
    CHECK(rows_with_id(envelope, "pole_envelope_lower").size() == 4 + 3 + 2 + 1);
    CHECK(rows_with_id(envelope, "level_position_lacunary").size() == 2 + 1 + 0 + 0);
}

TEST_CASE("non-lacunary data is certifiably rejected") {
    DiscreteMeasure mu{{Atom{Rat(1), make_rat(1, 2)}, Atom{Rat(2), make_rat(1, 2)}}};
    LacunarityParams params{Rat(3), Rat(3), make_rat(1, 2)};
    InverseResult inv = jacobi::inverse_spectral(mu, 64, true, &params);
    REQUIRE(inv.certificates.size() == 1);
    const Report& rep = inv.certificates[0].report;
    CHECK(rep.any_fail());
    CHECK(rep.exit_code() == 1);
    auto position_rows = rows_with_id(rep, "hyp_position_ratio");
    REQUIRE(position_rows.size() == 1);
    CHECK(position_rows[0]->verdict == Verdict::FAIL);  // 3 * 1 > 2
}

TEST_CASE("closed-endpoint bracket accepts the boundary case") {
    DiscreteMeasure mu{{Atom{Rat(0), make_rat(1, 4)}, Atom{Rat(4), make_rat(3, 4)}}};
    LacunarityParams params{Rat(2), Rat(12), make_rat(1, 20)};
    InverseResult inv = jacobi::inverse_spectral(mu, 64, true, &params);
    REQUIRE(inv.certificates.size() == 1);
    const Report& rep = inv.certificates[0].report;

    auto lower = rows_with_id(rep, "pole_offset_lower");
    REQUIRE(lower.size() == 1);
    CHECK(lower[0]->verdict == Verdict::PASS);
    CHECK(lower[0]->decided_exactly);
    CHECK(has_warning_containing(rep, "boundary equality"));

    auto upper = rows_with_id(rep, "pole_offset_upper");
    REQUIRE(upper.size() == 1);
    CHECK(upper[0]->verdict == Verdict::PASS);  // gap 1 <= 4/3
}

TEST_CASE("mass-ratio hypothesis form is parameterizable") {
    DiscreteMeasure mu = jacobi::generate_lacunary(4, Rat(1000), Rat(50000), Rat(1), 0);
    LacunarityParams params{Rat(900), Rat(40), make_rat(1, 15)};
    InverseResult inv = jacobi::inverse_spectral(mu, 96);

    StepCertificate plain = jacobi::certify_step(inv.level_measures[0], inv.steps[0], params, 0,
                                                 96);
    for (const CheckRow* row : rows_with_id(plain.report, "hyp_mass_ratio"))
        CHECK(row->verdict == Verdict::PASS);  // 50000/1000 = 50 > 40

    // Steeper demanded growth: factor * (t ratio)^2 = 40 * 10^6 > actual 5*10^4.
    MassRatioHypothesis steep{Rat(40), 2, 0, std::nullopt, 2, 0};
    StepCertificate hard = jacobi::certify_step(inv.level_measures[0], inv.steps[0], params, 0,
                                                96, &steep);
    for (const CheckRow* row : rows_with_id(hard.report, "hyp_mass_ratio"))
        CHECK(row->verdict == Verdict::FAIL);
}

TEST_CASE("envelope report is vacuous but well-formed for two atoms") {
    DiscreteMeasure mu{{Atom{Rat(1), make_rat(1, 3)}, Atom{Rat(50), make_rat(2, 3)}}};
    LacunarityParams params{Rat(10), Rat(20), make_rat(1, 10)};
    InverseResult inv = jacobi::inverse_spectral(mu, 64);
    Report rep = jacobi::lemma22_envelope(mu, inv.steps, params, 64);
    CHECK(rows_with_id(rep, "pole_envelope_lower").size() == 1);
    CHECK(rows_with_id(rep, "pole_envelope_upper").size() == 1);
    CHECK(rows_with_id(rep, "level_position_lacunary").empty());
    CHECK(rows_with_id(rep, "level_mass_ratio_monotone").empty());
    CHECK(rows_with_id(rep, "level_decay_bound").empty());

    CHECK_THROWS_AS(jacobi::lemma22_envelope(mu, {}, params, 64), jacobi::DomainError);
}
