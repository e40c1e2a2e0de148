// Semantic structures over the three supported valuation domains:
//
//   classical  two values   f, t
//   four       four values  f, t, B (both), N (neither)
//   j3         three values f, t, B
//
// A truth value stands for the subset of {0, 1} a valuation assigns to a
// formula: f = {0}, t = {1}, B = {0,1}, N = {}.  Connectives act membership-
// wise: 1 is in v(a | b) iff 1 is in v(a) or in v(b); 0 is in v(a | b) iff 0
// is in both; conjunction dually; negation swaps 0 and 1.  A valuation
// satisfies a formula iff 1 is in its value.
//
// Valuations are enumerated in a fixed canonical order (first atom most
// significant, value order f < t < B < N), so every set, listing, and report
// downstream is deterministic.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pivotal/formula.hpp"
#include "pivotal/index_set.hpp"

namespace pivotal {

struct cap_exceeded_error : error {
    using error::error;
};

struct unknown_atom_error : error {
    using error::error;
};

inline constexpr std::size_t kDefaultUniverseCap = std::size_t{1} << 20;

// ---------------------------------------------------------------------------
// Truth values

enum class TruthValue : std::uint8_t { F = 0, T = 1, Both = 2, Neither = 3 };

constexpr bool contains_one(TruthValue v) { return v == TruthValue::T || v == TruthValue::Both; }
constexpr bool contains_zero(TruthValue v) { return v == TruthValue::F || v == TruthValue::Both; }

constexpr TruthValue make_value(bool one, bool zero) {
    return one ? (zero ? TruthValue::Both : TruthValue::T)
               : (zero ? TruthValue::F : TruthValue::Neither);
}

constexpr TruthValue tv_not(TruthValue a) { return make_value(contains_zero(a), contains_one(a)); }

constexpr TruthValue tv_or(TruthValue a, TruthValue b) {
    return make_value(contains_one(a) || contains_one(b), contains_zero(a) && contains_zero(b));
}

constexpr TruthValue tv_and(TruthValue a, TruthValue b) {
    return make_value(contains_one(a) && contains_one(b), contains_zero(a) || contains_zero(b));
}

constexpr char to_char(TruthValue v) {
    switch (v) {
        case TruthValue::F: return 'f';
        case TruthValue::T: return 't';
        case TruthValue::Both: return 'B';
        case TruthValue::Neither: return 'N';
    }
    return '?';
}

inline std::optional<TruthValue> truth_value_from_char(char c) {
    switch (c) {
        case 'f': return TruthValue::F;
        case 't': return TruthValue::T;
        case 'B': return TruthValue::Both;
        case 'N': return TruthValue::Neither;
        default: return std::nullopt;
    }
}

// ---------------------------------------------------------------------------
// Structures

enum class StructureKind : std::uint8_t { Classical, Four, J3 };

inline std::span<const TruthValue> domain_of(StructureKind kind) {
    static constexpr std::array<TruthValue, 4> all = {TruthValue::F, TruthValue::T,
                                                      TruthValue::Both, TruthValue::Neither};
    switch (kind) {
        case StructureKind::Classical: return std::span(all).first(2);
        case StructureKind::J3: return std::span(all).first(3);
        case StructureKind::Four: return std::span(all);
    }
    return {};
}

inline std::string to_string(StructureKind kind) {
    switch (kind) {
        case StructureKind::Classical: return "classical";
        case StructureKind::Four: return "four";
        case StructureKind::J3: return "j3";
    }
    return "?";
}

inline std::optional<StructureKind> structure_kind_from_string(std::string_view s) {
    if (s == "classical") return StructureKind::Classical;
    if (s == "four") return StructureKind::Four;
    if (s == "j3") return StructureKind::J3;
    return std::nullopt;
}

// Ordered list of distinct atom names; the order fixes the enumeration order
// of valuations.  May be empty (single empty valuation).
struct AtomSet {
    std::vector<std::string> names;

    AtomSet() = default;
    explicit AtomSet(std::vector<std::string> atom_names) : names(std::move(atom_names)) {
        for (std::size_t i = 0; i < names.size(); ++i)
            for (std::size_t j = i + 1; j < names.size(); ++j)
                if (names[i] == names[j])
                    throw error("duplicate atom name: " + names[i]);
    }

    std::size_t size() const { return names.size(); }

    std::optional<std::size_t> index_of(std::string_view name) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return i;
        return std::nullopt;
    }
};

struct Structure {
    StructureKind kind = StructureKind::Classical;
    AtomSet atoms;

    std::size_t domain_size() const { return domain_of(kind).size(); }

    // |domain|^n; throws when it would not fit in size_t.
    std::size_t universe_size() const {
        std::size_t n = 1;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (n > (std::size_t{1} << 56))
                throw cap_exceeded_error("valuation universe does not fit in an index");
            n *= domain_size();
        }
        return n;
    }

    std::string describe() const {
        std::string out = to_string(kind) + "(";
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (i) out += ',';
            out += atoms.names[i];
        }
        return out + ")";
    }
};

// ---------------------------------------------------------------------------
// Valuations

// Total assignment of the structure's atoms, in atom order.
struct Valuation {
    std::vector<TruthValue> values;

    bool operator==(const Valuation&) const = default;
};

// Decodes the canonical index of a valuation: the first atom is the most
// significant digit, digits ordered f < t < B < N.
inline Valuation valuation_at(const Structure& s, std::size_t index) {
    const std::size_t base = s.domain_size();
    Valuation v;
    v.values.resize(s.atoms.size());
    for (std::size_t i = s.atoms.size(); i-- > 0;) {
        v.values[i] = static_cast<TruthValue>(index % base);
        index /= base;
    }
    return v;
}

inline std::size_t index_of(const Structure& s, const Valuation& v) {
    const std::size_t base = s.domain_size();
    std::size_t index = 0;
    for (std::size_t i = 0; i < v.values.size(); ++i)
        index = index * base + static_cast<std::size_t>(v.values[i]);
    return index;
}

inline std::vector<Valuation> enumerate_valuations(const Structure& s,
                                                   std::size_t cap = kDefaultUniverseCap) {
    const std::size_t n = s.universe_size();
    if (n > cap)
        throw cap_exceeded_error("valuation universe of " + s.describe() + " has " +
                                 std::to_string(n) + " elements, above the cap of " +
                                 std::to_string(cap));
    std::vector<Valuation> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(valuation_at(s, i));
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation and satisfaction

inline TruthValue eval(const Structure& s, const Valuation& v, const Formula& f) {
    switch (f.kind()) {
        case FormulaKind::False: return TruthValue::F;
        case FormulaKind::True: return TruthValue::T;
        case FormulaKind::Atom: {
            auto i = s.atoms.index_of(f.name());
            if (!i) throw unknown_atom_error("unknown atom: " + f.name());
            return v.values[*i];
        }
        case FormulaKind::Not: return tv_not(eval(s, v, f.child()));
        case FormulaKind::Or: return tv_or(eval(s, v, f.left()), eval(s, v, f.right()));
        case FormulaKind::And: return tv_and(eval(s, v, f.left()), eval(s, v, f.right()));
    }
    throw error("unreachable formula kind");
}

inline bool satisfies(const Structure& s, const Valuation& v, const Formula& f) {
    return contains_one(eval(s, v, f));
}

inline bool satisfies_at(const Structure& s, std::size_t valuation_index, const Formula& f) {
    return satisfies(s, valuation_at(s, valuation_index), f);
}

// ---------------------------------------------------------------------------
// Model sets and theories

using ValuationSet = IndexSet;

// Mod(gamma): the valuations satisfying every member of gamma.
inline ValuationSet mod(const Structure& s, const FormulaList& gamma,
                        std::size_t cap = kDefaultUniverseCap) {
    const std::size_t n = s.universe_size();
    if (n > cap)
        throw cap_exceeded_error("valuation universe of " + s.describe() + " has " +
                                 std::to_string(n) + " elements, above the cap of " +
                                 std::to_string(cap));
    ValuationSet out(n);
    for (std::size_t i = 0; i < n; ++i) {
        Valuation v = valuation_at(s, i);
        bool all = true;
        for (const auto& f : gamma)
            if (!satisfies(s, v, f)) {
                all = false;
                break;
            }
        if (all) out.insert(i);
    }
    return out;
}

inline ValuationSet mod(const Structure& s, const Formula& alpha,
                        std::size_t cap = kDefaultUniverseCap) {
    return mod(s, FormulaList{alpha}, cap);
}

// Th(V) membership: every valuation of V satisfies f.
inline bool theory_contains(const Structure& s, const ValuationSet& V, const Formula& f) {
    for (std::size_t i = 0; i < V.universe_size(); ++i)
        if (V.contains(i) && !satisfies_at(s, i, f)) return false;
    return true;
}

// Th^d(V) membership: V satisfies f throughout but not ~f throughout.
inline bool theory_d_contains(const Structure& s, const ValuationSet& V, const Formula& f) {
    return theory_contains(s, V, f) && !theory_contains(s, V, Formula::neg(f));
}

}  // namespace pivotal
