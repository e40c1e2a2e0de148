// Text file formats.
//
//   formula file    one formula per line; '#' starts a comment; blank lines
//                   ignored
//
//   valuation       space-separated atom assignments, e.g. "p=t q=B r=f",
//   literal         values f, t, B (both), N (neither); every atom of the
//                   structure must be assigned exactly once
//
//   pivot file      either valuation-literal lines (the pivot is the set of
//                   the listed valuations) or lines "@ <formula>" (the pivot
//                   is the set of models of all listed formulas, hence
//                   definable); the two styles cannot be mixed
//
//   config file     "key=value" lines (kind, atoms, and cap overrides), or a
//                   JSON object when the first character is '{' -- the JSON
//                   reader lives in the CLI, which owns the JSON dependency

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pivotal/formula.hpp"
#include "pivotal/semantics.hpp"

namespace pivotal {

struct file_error : error {
    using error::error;
};

namespace detail {

inline std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    std::string s = pos == std::string::npos ? line : line.substr(0, pos);
    std::size_t begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    std::size_t end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

inline std::vector<std::string> significant_lines(std::istream& in) {
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        std::string s = strip_comment(line);
        if (!s.empty()) out.push_back(s);
    }
    return out;
}

inline std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw file_error("cannot open file: " + path);
    return in;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Formula files

inline FormulaList read_formula_lines(std::istream& in) {
    FormulaList out;
    for (const auto& line : detail::significant_lines(in)) out.push_back(parse(line));
    return out;
}

inline FormulaList read_formula_file(const std::string& path) {
    auto in = detail::open_or_throw(path);
    return read_formula_lines(in);
}

// ---------------------------------------------------------------------------
// Valuation literals

inline std::string print_valuation(const Structure& s, const Valuation& v) {
    std::string out;
    for (std::size_t i = 0; i < s.atoms.size(); ++i) {
        if (i) out += ' ';
        out += s.atoms.names[i];
        out += '=';
        out += to_char(v.values[i]);
    }
    return out;
}

inline Valuation parse_valuation(const Structure& s, const std::string& text) {
    Valuation v;
    v.values.assign(s.atoms.size(), TruthValue::F);
    std::vector<bool> seen(s.atoms.size(), false);
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        auto eq = token.find('=');
        if (eq == std::string::npos || eq + 2 != token.size())
            throw file_error("malformed valuation literal: " + token);
        std::string name = token.substr(0, eq);
        auto idx = s.atoms.index_of(name);
        if (!idx) throw file_error("unknown atom in valuation literal: " + name);
        if (seen[*idx]) throw file_error("atom assigned twice: " + name);
        auto tv = truth_value_from_char(token[eq + 1]);
        if (!tv) throw file_error("unknown truth value in literal: " + token);
        bool in_domain = false;
        for (TruthValue d : domain_of(s.kind)) in_domain = in_domain || d == *tv;
        if (!in_domain)
            throw file_error("value '" + std::string(1, token[eq + 1]) + "' is outside the " +
                             to_string(s.kind) + " domain");
        seen[*idx] = true;
        v.values[*idx] = *tv;
    }
    for (std::size_t i = 0; i < s.atoms.size(); ++i)
        if (!seen[i]) throw file_error("atom not assigned: " + s.atoms.names[i]);
    return v;
}

// ---------------------------------------------------------------------------
// Pivot files

inline ValuationSet read_pivot_lines(const Structure& s, const std::vector<std::string>& lines,
                                     std::size_t cap = kDefaultUniverseCap) {
    bool saw_formula = false, saw_literal = false;
    FormulaList formulas;
    std::vector<Valuation> valuations;
    for (const auto& line : lines) {
        if (line[0] == '@') {
            saw_formula = true;
            formulas.push_back(parse(line.substr(1)));
        } else {
            saw_literal = true;
            valuations.push_back(parse_valuation(s, line));
        }
    }
    if (saw_formula && saw_literal)
        throw file_error("pivot file mixes '@ formula' lines with valuation literals");
    if (saw_formula) return mod(s, formulas, cap);
    const std::size_t n = s.universe_size();
    if (n > cap) throw cap_exceeded_error("valuation universe exceeds the cap");
    ValuationSet pivot(n);
    for (const auto& v : valuations) pivot.insert(index_of(s, v));
    return pivot;
}

inline ValuationSet read_pivot_file(const Structure& s, const std::string& path,
                                    std::size_t cap = kDefaultUniverseCap) {
    auto in = detail::open_or_throw(path);
    return read_pivot_lines(s, detail::significant_lines(in), cap);
}

// ---------------------------------------------------------------------------
// Plain-text config files ("key=value" per line)

struct ConfigText {
    std::vector<std::pair<std::string, std::string>> entries;

    const std::string* find(const std::string& key) const {
        for (const auto& [k, v] : entries)
            if (k == key) return &v;
        return nullptr;
    }
};

inline ConfigText read_config_text(std::istream& in) {
    ConfigText cfg;
    for (const auto& line : detail::significant_lines(in)) {
        auto eq = line.find('=');
        if (eq == std::string::npos) throw file_error("malformed config line: " + line);
        std::string key = detail::strip_comment(line.substr(0, eq));
        std::string value = detail::strip_comment(line.substr(eq + 1));
        cfg.entries.emplace_back(key, value);
    }
    return cfg;
}

inline std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::string current;
    std::istringstream in(text);
    while (std::getline(in, current, ',')) {
        std::string s = detail::strip_comment(current);
        if (!s.empty()) out.push_back(s);
    }
    return out;
}

}  // namespace pivotal
