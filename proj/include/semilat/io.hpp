#pragma once

#include "semilat/errors.hpp"
#include "semilat/extensions.hpp"
#include "semilat/lattice.hpp"
#include "semilat/lowering.hpp"
#include "semilat/poset.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace semilat {

// Lattice / poset text format:
//
//   # comment
//   n=4
//   names=0,a,b,1        (optional)
//   0 1
//   1 3
//
// One "lower upper" pair per line. Pairs may be any order relations; the
// cover relation is recomputed. Element 0 need not be the bottom.

struct OrderFile {
    Poset order;
    std::vector<std::string> names;  // empty when the file has none
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

inline std::size_t parse_count(const std::string& s, std::size_t line, const char* what) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw ParseError(line, std::string("expected a non-negative integer for ") + what + ", got '" + s + "'");
    try {
        return std::stoull(s);
    } catch (const std::out_of_range&) {
        throw ParseError(line, std::string(what) + " out of range");
    }
}

}  // namespace detail

inline OrderFile parse_order(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    std::size_t n = 0;
    bool have_header = false;
    OrderFile out;
    std::vector<CoverPair> pairs;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = detail::trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        if (!have_header) {
            if (line.rfind("n=", 0) != 0) throw ParseError(line_no, "expected header 'n=<count>'");
            n = detail::parse_count(detail::trim(line.substr(2)), line_no, "element count");
            if (n == 0) throw ParseError(line_no, "element count must be positive");
            have_header = true;
            continue;
        }
        if (line.rfind("names=", 0) == 0) {
            if (!out.names.empty() || !pairs.empty()) throw ParseError(line_no, "names must directly follow the header");
            std::istringstream parts(line.substr(6));
            std::string name;
            while (std::getline(parts, name, ',')) out.names.push_back(detail::trim(name));
            if (out.names.size() != n)
                throw ParseError(line_no, "expected " + std::to_string(n) + " names, got " +
                                              std::to_string(out.names.size()));
            for (const auto& nm : out.names)
                if (nm.empty()) throw ParseError(line_no, "empty element name");
            continue;
        }
        std::istringstream fields(line);
        std::string a, b, extra;
        if (!(fields >> a >> b) || (fields >> extra)) throw ParseError(line_no, "expected two indices");
        const std::size_t lo = detail::parse_count(a, line_no, "lower index");
        const std::size_t hi = detail::parse_count(b, line_no, "upper index");
        if (lo >= n || hi >= n) throw ParseError(line_no, "index out of range for n=" + std::to_string(n));
        if (lo == hi) throw ParseError(line_no, "an element cannot cover itself");
        pairs.emplace_back(lo, hi);
    }
    if (!have_header) throw ParseError(line_no == 0 ? 1 : line_no, "missing header 'n=<count>'");
    try {
        out.order = poset_from_covers(n, pairs);
    } catch (const CycleError& err) {
        throw ParseError(line_no, std::string("pairs do not form a partial order: ") + err.what());
    }
    return out;
}

inline Poset parse_poset(const std::string& text) { return parse_order(text).order; }

struct LatticeFile {
    FiniteLattice lattice;
    std::vector<std::string> names;
};

/// Throws ParseError for malformed text and NotALatticeError for a valid order that is not a lattice.
inline LatticeFile parse_lattice_file(const std::string& text) {
    OrderFile f = parse_order(text);
    return {lattice_from_poset(std::move(f.order)), std::move(f.names)};
}

inline FiniteLattice parse_lattice(const std::string& text) { return parse_lattice_file(text).lattice; }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

/// Canonical form: header, optional names, covers sorted by (lower, upper).
inline std::string emit_order(const Poset& p, const std::vector<std::string>& names = {}) {
    std::ostringstream out;
    out << "n=" << p.size() << '\n';
    if (!names.empty()) {
        out << "names=";
        for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
        out << '\n';
    }
    auto covers = p.covers();
    std::sort(covers.begin(), covers.end());
    for (const auto& [lo, hi] : covers) out << lo << ' ' << hi << '\n';
    return out.str();
}

inline std::string emit_lattice(const FiniteLattice& l, const std::vector<std::string>& names = {}) {
    return emit_order(l.order(), names);
}

struct Highlight {
    std::string label;
    Subset elements;
    std::string style;  // DOT node attributes, e.g. "style=filled,fillcolor=lightblue"
};

/// Hasse diagram, bottom to top, one rank row per height. A node takes the
/// style of the first highlight containing it.
inline std::string emit_dot(const FiniteLattice& l, const std::vector<Highlight>& highlights = {},
                            const std::vector<std::string>& names = {}) {
    std::ostringstream out;
    out << "digraph lattice {\n  rankdir=BT;\n  node [shape=circle];\n";
    for (const auto& hl : highlights) out << "  // " << hl.label << ": " << to_string(hl.elements) << '\n';
    std::map<std::size_t, std::vector<std::size_t>> rows;
    for (std::size_t x = 0; x < l.size(); ++x) rows[l.height(x)].push_back(x);
    for (std::size_t x = 0; x < l.size(); ++x) {
        out << "  " << x << " [label=\"" << (names.empty() ? std::to_string(x) : names[x]) << '"';
        for (const auto& hl : highlights)
            if (x < hl.elements.size() && hl.elements.test(x)) {
                out << ',' << hl.style;
                break;
            }
        out << "];\n";
    }
    for (const auto& [h, row] : rows) {
        out << "  { rank=same;";
        for (auto x : row) out << ' ' << x << ';';
        out << " }\n";
    }
    auto covers = l.order().covers();
    std::sort(covers.begin(), covers.end());
    for (const auto& [lo, hi] : covers) out << "  " << lo << " -> " << hi << ";\n";
    out << "}\n";
    return out.str();
}

/// Default highlight styles for the sets of a lowering, drawn over K.
inline std::vector<Highlight> lowering_highlights(const LoweringResult& r) {
    Subset d(r.K->size());
    for_each_member(r.D, [&](std::size_t x) { d.set(r.embed[x]); });
    Subset ep(r.K->size());
    ep.set(r.e_prime);
    return {{"e'", ep, "style=filled,fillcolor=gold"},
            {"N", r.N, "style=filled,fillcolor=lightblue"},
            {"D", d, "style=filled,fillcolor=lightgrey"}};
}

// Trace files: one JSON object per line.
//   {"type":"initial","lattice":...}
//   {"type":"step","index":i,"e":..,"h":..,"d_size":..,"size":..,"e_prime":..,"checks":{..}}
//   {"type":"final","lattice":...,"embed_total":[..]}

inline nlohmann::json checks_json(const LoweringChecks& c) {
    return {{"semimodular", c.semimodular},   {"length_preserved", c.length_preserved},
            {"embedding", c.embedding},       {"jir_exchange", c.jir_exchange},
            {"lcov_e_prime", c.lcov_e_prime}, {"e_prime_is_lift_h", c.e_prime_is_lift_h},
            {"convex", c.convex},             {"size", c.size}};
}

inline std::string write_trace(const ExtensionTrace& t) {
    std::ostringstream out;
    out << nlohmann::json{{"type", "initial"}, {"lattice", emit_lattice(*t.initial)}}.dump() << '\n';
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const auto& s = t.steps[i];
        nlohmann::json j{{"type", "step"},        {"index", i},           {"e", s.e},
                         {"h", s.h},              {"d_size", s.D.count()}, {"size", s.K->size()},
                         {"e_prime", s.e_prime},  {"checks", checks_json(verify_lowering(s))}};
        if (i < t.stats.size()) j["millis"] = t.stats[i].millis;
        out << j.dump() << '\n';
    }
    nlohmann::json fin{{"type", "final"}, {"lattice", emit_lattice(*t.final)}, {"embed_total", t.embed_total}};
    if (!t.chains.empty()) fin["chains"] = t.chains;
    out << fin.dump() << '\n';
    return out.str();
}

/// A single lowering as a one-step trace.
inline ExtensionTrace trace_of(const LoweringResult& r) {
    ExtensionTrace t;
    t.initial = r.L;
    t.final = r.K;
    t.embed_total = r.embed;
    t.steps.push_back(r);
    return t;
}

struct TraceStep {
    std::size_t e = 0, h = 0, d_size = 0, size = 0, e_prime = 0;
    std::map<std::string, bool> checks;
};

struct TraceFile {
    std::string initial;
    std::vector<TraceStep> steps;
    std::string final;
    std::vector<std::size_t> embed_total;
};

inline TraceFile read_trace(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    TraceFile out;
    bool have_initial = false, have_final = false;
    while (std::getline(in, raw)) {
        ++line_no;
        if (detail::trim(raw).empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(raw);
        } catch (const nlohmann::json::exception& err) {
            throw ParseError(line_no, std::string("invalid JSON: ") + err.what());
        }
        try {
            const std::string type = j.at("type").get<std::string>();
            if (have_final) throw ParseError(line_no, "record after final");
            if (type == "initial") {
                if (have_initial) throw ParseError(line_no, "duplicate initial record");
                out.initial = j.at("lattice").get<std::string>();
                have_initial = true;
            } else if (type == "step") {
                if (!have_initial) throw ParseError(line_no, "step before initial");
                TraceStep s;
                s.e = j.at("e").get<std::size_t>();
                s.h = j.at("h").get<std::size_t>();
                s.d_size = j.at("d_size").get<std::size_t>();
                s.size = j.at("size").get<std::size_t>();
                s.e_prime = j.at("e_prime").get<std::size_t>();
                s.checks = j.at("checks").get<std::map<std::string, bool>>();
                out.steps.push_back(std::move(s));
            } else if (type == "final") {
                if (!have_initial) throw ParseError(line_no, "final before initial");
                out.final = j.at("lattice").get<std::string>();
                out.embed_total = j.at("embed_total").get<std::vector<std::size_t>>();
                have_final = true;
            } else {
                throw ParseError(line_no, "unknown record type '" + type + "'");
            }
        } catch (const nlohmann::json::exception& err) {
            throw ParseError(line_no, std::string("malformed record: ") + err.what());
        }
    }
    if (!have_initial || !have_final) throw ParseError(line_no, "trace needs an initial and a final record");
    return out;
}

struct ReplayReport {
    bool ok = true;
    std::vector<std::string> problems;
    ExtensionTrace trace;  // the re-executed trace
};

/// Re-runs the recorded (e, h) sequence on the recorded initial lattice and
/// checks every step and the final lattice against the record.
inline ReplayReport replay_trace(const TraceFile& f) {
    ReplayReport rep;
    auto fail = [&](std::string msg) {
        rep.ok = false;
        rep.problems.push_back(std::move(msg));
    };
    rep.trace = detail::start_trace(parse_lattice(f.initial));
    for (std::size_t i = 0; i < f.steps.size(); ++i) {
        const auto& s = f.steps[i];
        try {
            detail::append_lowering(rep.trace, s.e, s.h, static_cast<std::size_t>(-1));
        } catch (const LatticeError& err) {
            fail("step " + std::to_string(i) + ": " + err.what());
            return rep;
        }
        const auto& r = rep.trace.steps.back();
        if (r.D.count() != s.d_size || r.K->size() != s.size || r.e_prime != s.e_prime)
            fail("step " + std::to_string(i) + ": recorded |D|, size or e' differ from replay");
        const auto checks = checks_json(verify_lowering(r)).get<std::map<std::string, bool>>();
        if (checks != s.checks) fail("step " + std::to_string(i) + ": recorded checks differ from replay");
        for (const auto& [name, value] : checks)
            if (!value) fail("step " + std::to_string(i) + ": check " + name + " fails");
    }
    if (emit_lattice(*rep.trace.final) != f.final) fail("final lattice differs from replay");
    if (rep.trace.embed_total != f.embed_total) fail("composed embedding differs from replay");
    if (const std::string p = trace_problems(rep.trace); !p.empty()) fail(p);
    return rep;
}

inline ReplayReport replay_trace(const std::string& text) { return replay_trace(read_trace(text)); }

}  // namespace semilat
