// Choice functions over finite set domains, pivots, and the four properties
// that classify them:
//
//   SC  strongly coherent:        mu(W) & V is within mu(V) for all V, W
//   DP  definability preserving:  definable inputs map to definable outputs
//   UC  universe-codefinable:     the complement of mu(universe) is definable
//   CP  coherency preserving:     coherent inputs map to coherent outputs
//
// A pivot I induces the choice function V -> V & I; strong coherence is
// exactly what characterizes the pivot-induced functions, and
// pivot_representation() recovers the canonical pivot (the union of all
// images) from any strongly coherent table.
//
// Functions are explicit finite tables over a listed domain (normally the
// definable family), which is what makes the exhaustive equivalence oracles
// in characterize.hpp possible.  Nothing here needs a semantic structure, so
// the same machinery serves abstract universes.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "pivotal/clone.hpp"
#include "pivotal/index_set.hpp"

namespace pivotal {

// A table from listed sets to arbitrary sets; no containment constraint.
struct SetFunction {
    std::vector<IndexSet> domain;
    std::vector<IndexSet> image;

    std::size_t size() const { return domain.size(); }

    std::optional<std::size_t> find(const IndexSet& V) const {
        for (std::size_t i = 0; i < domain.size(); ++i)
            if (domain[i] == V) return i;
        return std::nullopt;
    }
};

// A set function with the choice law mu(V) within V, checked on construction.
struct ChoiceFunction : SetFunction {
    ChoiceFunction() = default;
    ChoiceFunction(std::vector<IndexSet> dom, std::vector<IndexSet> img) {
        domain = std::move(dom);
        image = std::move(img);
        if (domain.size() != image.size())
            throw error("choice function table has mismatched sizes");
        for (std::size_t i = 0; i < domain.size(); ++i)
            if (!image[i].subset_of(domain[i]))
                throw error("choice function image escapes its argument");
    }
};

inline IndexSet pivot_choice(const IndexSet& pivot, const IndexSet& V) { return V & pivot; }

inline ChoiceFunction make_pivot_function(const IndexSet& pivot,
                                          std::vector<IndexSet> domain) {
    std::vector<IndexSet> image;
    image.reserve(domain.size());
    for (const auto& V : domain) image.push_back(pivot_choice(pivot, V));
    return ChoiceFunction(std::move(domain), std::move(image));
}

// ---------------------------------------------------------------------------
// Strong coherence

struct ScViolation {
    std::size_t v_index;      // domain index of V
    std::size_t w_index;      // domain index of W
    std::size_t member;       // element of mu(W) & V missing from mu(V)
};

inline std::optional<ScViolation> sc_violation(const ChoiceFunction& mu) {
    for (std::size_t w = 0; w < mu.size(); ++w) {
        for (std::size_t v = 0; v < mu.size(); ++v) {
            IndexSet bad = (mu.image[w] & mu.domain[v]) - mu.image[v];
            if (!bad.empty()) return ScViolation{v, w, bad.members().front()};
        }
    }
    return std::nullopt;
}

inline bool is_strongly_coherent(const ChoiceFunction& mu) { return !sc_violation(mu); }

// ---------------------------------------------------------------------------
// DP / UC / CP

inline bool is_definability_preserving(const ChoiceFunction& mu, const DefinableFamily& d) {
    for (std::size_t i = 0; i < mu.size(); ++i)
        if (d.contains(mu.domain[i]) && !d.contains(mu.image[i])) return false;
    return true;
}

inline bool is_universe_codefinable(const ChoiceFunction& mu, const DefinableFamily& d) {
    for (std::size_t i = 0; i < mu.size(); ++i)
        if (mu.domain[i].is_full()) return d.contains(mu.domain[i] - mu.image[i]);
    throw error("universe is not in the choice function's domain");
}

inline bool is_coherency_preserving(const ChoiceFunction& mu,
                                    const std::function<bool(const IndexSet&)>& coherent) {
    for (std::size_t i = 0; i < mu.size(); ++i)
        if (coherent(mu.domain[i]) && !coherent(mu.image[i])) return false;
    return true;
}

inline bool is_coherency_preserving(const ChoiceFunction& mu, const Clone& clone) {
    return is_coherency_preserving(
        mu, [&](const IndexSet& V) { return is_coherent_set(clone, V); });
}

// ---------------------------------------------------------------------------
// The canonical strongly coherent function under f.
//
// nu_core(f) is the set of elements that f never drops: those v with v in
// f(W) for every domain member W containing v.  nu(f) maps V to V & core,
// which is a pivot-induced, hence strongly coherent, choice function.

inline IndexSet nu_core(const SetFunction& f) {
    if (f.domain.empty()) return IndexSet();
    IndexSet core = IndexSet::full(f.domain.front().universe_size());
    for (std::size_t i = 0; i < f.size(); ++i) core = core - (f.domain[i] - f.image[i]);
    return core;
}

inline ChoiceFunction nu(const SetFunction& f) {
    IndexSet core = nu_core(f);
    std::vector<IndexSet> image;
    image.reserve(f.size());
    for (const auto& V : f.domain) image.push_back(V & core);
    return ChoiceFunction(f.domain, std::move(image));
}

// ---------------------------------------------------------------------------
// Pivot representation: the union of all images.  For a strongly coherent mu
// this pivot reproduces mu on the whole domain; otherwise no pivot can.

inline std::optional<IndexSet> pivot_representation(const ChoiceFunction& mu) {
    if (sc_violation(mu)) return std::nullopt;
    if (mu.domain.empty()) return IndexSet();
    IndexSet pivot(mu.domain.front().universe_size());
    for (const auto& img : mu.image) pivot |= img;
    return pivot;
}

}  // namespace pivotal
