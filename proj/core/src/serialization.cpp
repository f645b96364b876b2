#include "jacobi/serialization.hpp"

#include <cstddef>
#include <exception>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "jacobi/errors.hpp"

namespace jacobi {

namespace {

using Json = nlohmann::ordered_json;

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

const Json& member(const Json& node, const char* key) {
    auto it = node.find(key);
    if (!node.is_object() || it == node.end())
        throw ParseError(std::string("missing key \"") + key + "\"");
    return *it;
}

Rat rat_member(const Json& node, const char* key) {
    const Json& value = member(node, key);
    if (!value.is_string())
        throw ParseError(std::string("key \"") + key + "\" must hold a rational string");
    return rat_from_string(value.get<std::string>());
}

std::vector<Rat> rat_array(const Json& node, const char* key) {
    const Json& value = member(node, key);
    if (!value.is_array())
        throw ParseError(std::string("key \"") + key + "\" must hold an array");
    std::vector<Rat> out;
    out.reserve(value.size());
    for (const Json& entry : value) {
        if (!entry.is_string())
            throw ParseError(std::string("entries of \"") + key + "\" must be rational strings");
        out.push_back(rat_from_string(entry.get<std::string>()));
    }
    return out;
}

Json atoms_to_json(const DiscreteMeasure& mu) {
    Json atoms = Json::array();
    for (const Atom& a : mu.atoms()) {
        Json entry;
        entry["t"] = rat_to_string(a.t);
        entry["m"] = rat_to_string(a.m);
        atoms.push_back(std::move(entry));
    }
    return atoms;
}

}  // namespace

std::string measure_to_json(const DiscreteMeasure& mu) {
    Json j;
    j["atoms"] = atoms_to_json(mu);
    return dump(j);
}

DiscreteMeasure measure_from_json(const std::string& text) {
    const Json j = parse_text(text);
    const Json& atoms = member(j, "atoms");
    if (!atoms.is_array()) throw ParseError("key \"atoms\" must hold an array");
    std::vector<Atom> parsed;
    parsed.reserve(atoms.size());
    for (const Json& entry : atoms) parsed.push_back({rat_member(entry, "t"), rat_member(entry, "m")});
    return DiscreteMeasure(parsed);
}

std::string jacobi_to_json(const JacobiMatrix& J) {
    Json j;
    Json q = Json::array();
    for (const Rat& v : J.diag) q.push_back(rat_to_string(v));
    Json rho = Json::array();
    for (const Rat& v : J.offdiag_sq) rho.push_back(rat_to_string(v));
    j["q"] = std::move(q);
    j["rho_sq"] = std::move(rho);
    return dump(j);
}

JacobiMatrix jacobi_from_json(const std::string& text) {
    const Json j = parse_text(text);
    return JacobiMatrix(rat_array(j, "q"), rat_array(j, "rho_sq"));
}

std::string hamiltonian_to_json(const Hamiltonian& H) {
    Json j;
    Json intervals = Json::array();
    for (const HamiltonianInterval& piece : H.intervals) {
        Json entry;
        entry["l"] = rat_to_string(piece.l);
        entry["e"] = Json::array({rat_to_string(piece.ex), rat_to_string(piece.ey)});
        entry["delta_sq"] = rat_to_string(piece.delta_sq);
        intervals.push_back(std::move(entry));
    }
    j["intervals"] = std::move(intervals);
    j["orientation"] = Hamiltonian::orientation;
    j["terminal_length_free"] = H.terminal_length_free;
    return dump(j);
}

Hamiltonian hamiltonian_from_json(const std::string& text) {
    const Json j = parse_text(text);
    const Json& orientation = member(j, "orientation");
    if (!orientation.is_string() || orientation.get<std::string>() != Hamiltonian::orientation)
        throw ParseError("orientation must be \"ccw\"");
    const Json& intervals = member(j, "intervals");
    if (!intervals.is_array()) throw ParseError("key \"intervals\" must hold an array");

    std::vector<Rat> lengths;
    std::vector<std::pair<Rat, Rat>> directions;
    std::vector<std::pair<bool, Rat>> stored_overlaps;  // (present, value)
    for (const Json& entry : intervals) {
        lengths.push_back(rat_member(entry, "l"));
        const Json& e = member(entry, "e");
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
            throw ParseError("key \"e\" must hold two rational strings");
        directions.emplace_back(rat_from_string(e[0].get<std::string>()),
                                rat_from_string(e[1].get<std::string>()));
        if (entry.is_object() && entry.contains("delta_sq"))
            stored_overlaps.emplace_back(true, rat_member(entry, "delta_sq"));
        else
            stored_overlaps.emplace_back(false, Rat(0));
    }

    Hamiltonian H(lengths, directions);
    for (std::size_t k = 0; k < stored_overlaps.size(); ++k) {
        if (!stored_overlaps[k].first) continue;
        if (stored_overlaps[k].second != H.intervals[k].delta_sq)
            throw ParseError("stored delta_sq disagrees with the stored directions");
    }
    if (j.is_object() && j.contains("terminal_length_free")) {
        const Json& flag = *j.find("terminal_length_free");
        if (!flag.is_boolean()) throw ParseError("terminal_length_free must be a boolean");
        H.terminal_length_free = flag.get<bool>();
    }
    return H;
}

std::string fock_to_json(const FockData& fd) {
    Json j;
    j["atoms"] = atoms_to_json(fd.sigma);
    j["c"] = rat_to_string(fd.c);
    j["truncation"] = fd.truncation;
    return dump(j);
}

std::string report_to_json(const Report& report) {
    Json j;
    j["title"] = report.title;
    Json header = Json::object();
    for (const auto& [key, value] : report.header) header[key] = value;
    j["header"] = std::move(header);
    Json warnings = Json::array();
    for (const std::string& w : report.warnings) warnings.push_back(w);
    j["warnings"] = std::move(warnings);
    Json rows = Json::array();
    for (const CheckRow& row : report.rows) {
        Json entry;
        entry["statement_id"] = row.statement_id;
        entry["level"] = row.level;
        entry["index"] = row.index;
        entry["lhs_lo"] = row.lhs.lo_string();
        entry["lhs_hi"] = row.lhs.hi_string();
        entry["rhs_lo"] = row.rhs.lo_string();
        entry["rhs_hi"] = row.rhs.hi_string();
        entry["verdict"] = verdict_to_string(row.verdict);
        rows.push_back(std::move(entry));
    }
    j["rows"] = std::move(rows);
    j["exit_code"] = report.exit_code();
    return dump(j);
}

}  // namespace jacobi
