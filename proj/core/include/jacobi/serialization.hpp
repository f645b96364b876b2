#pragma once

#include <string>

#include "jacobi/canonical.hpp"
#include "jacobi/focktype.hpp"
#include "jacobi/measure.hpp"
#include "jacobi/report.hpp"
#include "jacobi/stieltjes.hpp"

namespace jacobi {

// Exact JSON text for the domain types. Numbers never appear as floats:
// rationals serialize as "p/q" strings (denominator omitted when it is 1)
// and dyadic-interval endpoints as "m*2^e" strings. Emission is
// deterministic -- fixed key order, two-space indentation, one trailing
// newline -- so equal values produce byte-identical files. Parsers accept
// the emitted layout, ignore unknown keys, and throw ParseError on malformed
// text or malformed numbers; structurally valid input describing an invalid
// object (e.g. decreasing support) surfaces the domain type's own error.

// {"atoms": [{"t": "p/q", "m": "p/q"}, ...]}
std::string measure_to_json(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_json(const std::string& text);

// {"q": ["p/q", ...], "rho_sq": ["p/q", ...]}
std::string jacobi_to_json(const JacobiMatrix& J);
JacobiMatrix jacobi_from_json(const std::string& text);

// {"intervals": [{"l": "p/q", "e": ["p/q", "p/q"], "delta_sq": "p/q"}, ...],
//  "orientation": "ccw", "terminal_length_free": bool}. Parsing rebuilds the
// chain from lengths and directions (which recomputes every overlap), then
// checks the stored delta_sq values against the recomputed ones; a mismatch
// is a ParseError because the file contradicts itself. The orientation key
// must be "ccw", the recorded quarter-turn convention.
std::string hamiltonian_to_json(const Hamiltonian& H);
Hamiltonian hamiltonian_from_json(const std::string& text);

// The constructed spectral data: {"atoms": [...], "c": "p/q",
//  "truncation": N}. The atoms block is exactly the measure layout, so the
// emitted file doubles as input wherever a plain measure is expected.
std::string fock_to_json(const FockData& fd);

// {"title": ..., "header": {...}, "warnings": [...], "rows": [...],
//  "exit_code": n}; each row mirrors the CSV columns
// statement_id,level,index,lhs_lo,lhs_hi,rhs_lo,rhs_hi,verdict.
std::string report_to_json(const Report& report);

}  // namespace jacobi
