#include "jacobi/report.hpp"

#include <fstream>
#include <sstream>

#include "jacobi/errors.hpp"

namespace jacobi {

bool Report::all_pass() const { return !any_fail() && !any_indeterminate(); }

bool Report::any_fail() const {
    for (const CheckRow& row : rows) {
        if (row.verdict == Verdict::FAIL) return true;
    }
    return false;
}

bool Report::any_indeterminate() const {
    for (const CheckRow& row : rows) {
        if (row.verdict == Verdict::INDETERMINATE) return true;
    }
    return false;
}

bool Report::any_refinable_indeterminate() const {
    for (const CheckRow& row : rows) {
        if (row.verdict == Verdict::INDETERMINATE && !row.decided_exactly) return true;
    }
    return false;
}

int Report::exit_code() const {
    if (any_fail()) return 1;
    if (any_indeterminate()) return 2;
    return 0;
}

void Report::merge(const Report& other) {
    warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
    rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

namespace {

std::string row_location(const std::string& statement_id, long level, long index) {
    std::ostringstream out;
    out << statement_id << " (level " << level << ", index " << index << ")";
    return out.str();
}

}  // namespace

CheckRow exact_row(const std::string& statement_id, long level, long index, const Rat& lhs,
                   const Rat& rhs, bool strict, mpfr_prec_t bits, Report& report) {
    CheckRow row;
    row.statement_id = statement_id;
    row.level = level;
    row.index = index;
    row.decided_exactly = true;

    if (lhs == rhs) {
        row.lhs = DyadicInterval(lhs, bits);
        row.rhs = DyadicInterval(rhs, bits);
        if (strict) {
            row.verdict = Verdict::INDETERMINATE;
            report.warnings.push_back("exact equality on strict comparison: " +
                                      row_location(statement_id, level, index));
        } else {
            row.verdict = Verdict::PASS;
            report.warnings.push_back("boundary equality accepted by closed endpoint: " +
                                      row_location(statement_id, level, index));
        }
        return row;
    }

    row.verdict = lhs < rhs ? Verdict::PASS : Verdict::FAIL;
    // Tighten the stored enclosures until they decide the comparison on
    // their own; distinct rationals always separate at finite precision.
    mpfr_prec_t prec = bits < 16 ? 16 : bits;
    for (;;) {
        row.lhs = DyadicInterval(lhs, prec);
        row.rhs = DyadicInterval(rhs, prec);
        Verdict from_intervals = certified_less(row.lhs, row.rhs);
        if (from_intervals == row.verdict) return row;
        prec *= 2;
    }
}

CheckRow interval_row(const std::string& statement_id, long level, long index,
                      const DyadicInterval& lhs, const DyadicInterval& rhs, bool strict) {
    CheckRow row;
    row.statement_id = statement_id;
    row.level = level;
    row.index = index;
    row.lhs = lhs;
    row.rhs = rhs;
    row.verdict = strict ? certified_less(lhs, rhs) : certified_leq(lhs, rhs);
    return row;
}

CheckRow not_applicable_row(const std::string& statement_id, long level, long index,
                            const DyadicInterval& lhs, const DyadicInterval& rhs) {
    CheckRow row;
    row.statement_id = statement_id;
    row.level = level;
    row.index = index;
    row.lhs = lhs;
    row.rhs = rhs;
    row.verdict = Verdict::NOT_APPLICABLE;
    row.decided_exactly = true;
    return row;
}

std::string report_to_csv(const Report& report) {
    std::ostringstream out;
    out << "statement_id,level,index,lhs_lo,lhs_hi,rhs_lo,rhs_hi,verdict\n";
    for (const CheckRow& row : report.rows) {
        out << row.statement_id << ',' << row.level << ',' << row.index << ','
            << row.lhs.lo_string() << ',' << row.lhs.hi_string() << ',' << row.rhs.lo_string()
            << ',' << row.rhs.hi_string() << ',' << verdict_to_string(row.verdict) << '\n';
    }
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path);
    out << content;
    if (!out) throw Error("write failed: " + path);
}

}  // namespace jacobi
