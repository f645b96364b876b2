#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "jacobi/dyadic.hpp"
#include "jacobi/rational.hpp"

namespace jacobi {

// One certified inequality instance. The claim is always read left to
// right: lhs < rhs (or lhs <= rhs for rows produced by a non-strict
// builder). Enclosures are stored so a PASS row shows lhs_hi < rhs_lo and a
// FAIL row shows lhs_lo > rhs_hi whenever the comparison was decided from
// intervals; rows decided by exact rational comparison refine their
// enclosures until the same separation is visible, except for documented
// boundary-equality rows where the enclosures necessarily touch.
struct CheckRow {
    std::string statement_id;
    long level = 0;  // Stieltjes step the row belongs to (0 = original measure)
    long index = 0;  // 1-based atom/pair index within the level, 0 for gates
    DyadicInterval lhs;
    DyadicInterval rhs;
    Verdict verdict = Verdict::INDETERMINATE;
    // True when the verdict came from an exact rational comparison (or a
    // gating decision) and cannot improve with more working precision.
    bool decided_exactly = false;
};

struct Report {
    std::string title;
    std::vector<std::pair<std::string, std::string>> header;  // key/value metadata
    std::vector<std::string> warnings;
    std::vector<CheckRow> rows;

    bool all_pass() const;           // no FAIL and no INDETERMINATE
    bool any_fail() const;
    bool any_indeterminate() const;
    // True when some INDETERMINATE row might still be decided by rerunning
    // the producing computation at higher precision.
    bool any_refinable_indeterminate() const;
    // 0 = no FAIL/INDETERMINATE, 1 = certified FAIL present, 2 = undecided
    // rows remain. NOT_APPLICABLE rows are gating records and do not block 0.
    int exit_code() const;
    void merge(const Report& other);  // appends rows and warnings
};

// Row whose two sides are known exactly. The verdict is decided by exact
// rational comparison; enclosures are tightened (starting from `bits`) until
// they reproduce the verdict on their own. Exact equality is PASS for the
// non-strict form (with a boundary note) and INDETERMINATE for the strict
// form (a strict claim cannot be decided at a boundary); both push a warning
// onto the report.
CheckRow exact_row(const std::string& statement_id, long level, long index, const Rat& lhs,
                   const Rat& rhs, bool strict, mpfr_prec_t bits, Report& report);

// Row decided from the given enclosures via certified_less/certified_leq.
CheckRow interval_row(const std::string& statement_id, long level, long index,
                      const DyadicInterval& lhs, const DyadicInterval& rhs, bool strict);

// Gating record: the statement does not apply to this datum.
CheckRow not_applicable_row(const std::string& statement_id, long level, long index,
                            const DyadicInterval& lhs, const DyadicInterval& rhs);

// Plot-ready CSV: fixed column set, dyadic endpoint strings, no floats.
// Columns: statement_id,level,index,lhs_lo,lhs_hi,rhs_lo,rhs_hi,verdict.
std::string report_to_csv(const Report& report);

// Writes content to path, throwing jacobi::Error on failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace jacobi
