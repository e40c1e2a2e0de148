// The finite quotient of the formula language of a structure.
//
// Every predicate in this library looks at a formula only through the
// function it induces from valuations to truth values, so the infinite
// formula space collapses to the finite set of such functions reachable from
// the atom projections and the constants under the pointwise connectives.
// compute_clone() builds that set by fixpoint closure, keeping a witness
// formula for each class.  Everything that quantifies over "all formulas" or
// "all sets of formulas" (theories, the definable family, coherence, the
// assumption checks) runs over clone classes and intersections of their
// model sets.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pivotal/formula.hpp"
#include "pivotal/index_set.hpp"
#include "pivotal/semantics.hpp"

namespace pivotal {

struct incomplete_clone_error : error {
    using error::error;
};

inline constexpr std::size_t kDefaultCloneCap = 200'000;

// One semantic equivalence class: the value vector over the enumerated
// valuation universe, plus a formula realizing it.
struct FormulaClass {
    std::vector<TruthValue> values;
    Formula witness;
};

using TheorySet = IndexSet;

class Clone {
public:
    Structure structure;
    std::vector<FormulaClass> classes;  // canonical order (lexicographic value vectors)
    bool complete = false;

    std::size_t universe_size() const { return universe_size_; }
    std::size_t size() const { return classes.size(); }

    void require_complete() const {
        if (!complete)
            throw incomplete_clone_error("clone of " + structure.describe() +
                                         " is incomplete (cap exceeded); raise the clone cap");
    }

    // Mod(witness) of a class: valuations whose value contains 1.
    const ValuationSet& models(std::size_t class_index) const { return models_[class_index]; }

    std::size_t negation_of(std::size_t class_index) const { return neg_of_[class_index]; }

    std::size_t disjunction_of(std::size_t a, std::size_t b) const {
        return combine(a, b, tv_or);
    }
    std::size_t conjunction_of(std::size_t a, std::size_t b) const {
        return combine(a, b, tv_and);
    }

    std::optional<std::size_t> index_of(const std::vector<TruthValue>& values) const {
        auto it = index_.find(values);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    // Class of an arbitrary formula over the structure's atoms.  Complete
    // clones contain every realizable function, so this only fails on an
    // incomplete clone.
    std::size_t class_of(const Formula& f) const {
        std::vector<TruthValue> vals(universe_size_);
        for (std::size_t i = 0; i < universe_size_; ++i)
            vals[i] = eval(structure, valuation_at(structure, i), f);
        auto idx = index_of(vals);
        if (!idx) {
            require_complete();
            throw error("formula class missing from a complete clone");
        }
        return *idx;
    }

    friend Clone compute_clone(const Structure&, std::size_t, std::size_t);

private:
    template <typename Op>
    std::size_t combine(std::size_t a, std::size_t b, Op op) const {
        require_complete();
        std::vector<TruthValue> vals(universe_size_);
        for (std::size_t i = 0; i < universe_size_; ++i)
            vals[i] = op(classes[a].values[i], classes[b].values[i]);
        auto idx = index_of(vals);
        if (!idx) throw error("clone is not closed; this is a bug");
        return *idx;
    }

    std::size_t universe_size_ = 0;
    std::vector<ValuationSet> models_;
    std::vector<std::size_t> neg_of_;
    std::map<std::vector<TruthValue>, std::size_t> index_;
};

inline Clone compute_clone(const Structure& s, std::size_t clone_cap = kDefaultCloneCap,
                           std::size_t universe_cap = kDefaultUniverseCap) {
    const std::size_t n = s.universe_size();
    if (n > universe_cap)
        throw cap_exceeded_error("valuation universe of " + s.describe() +
                                 " exceeds the universe cap");

    Clone clone;
    clone.structure = s;
    clone.universe_size_ = n;

    std::map<std::vector<TruthValue>, std::size_t> seen;
    std::vector<std::vector<TruthValue>> values;
    std::vector<Formula> witnesses;

    bool capped = false;
    auto add = [&](std::vector<TruthValue> vals, Formula witness) {
        if (seen.count(vals)) return;
        if (values.size() >= clone_cap) {
            capped = true;
            return;
        }
        seen.emplace(vals, values.size());
        values.push_back(std::move(vals));
        witnesses.push_back(std::move(witness));
    };

    add(std::vector<TruthValue>(n, TruthValue::F), Formula::falsity());
    add(std::vector<TruthValue>(n, TruthValue::T), Formula::truth());
    for (std::size_t a = 0; a < s.atoms.size(); ++a) {
        std::vector<TruthValue> proj(n);
        for (std::size_t i = 0; i < n; ++i) proj[i] = valuation_at(s, i).values[a];
        add(std::move(proj), Formula::atom(s.atoms.names[a]));
    }

    // Closure: process each class once, combining with everything already
    // present.  New classes land at the back and get processed in turn.
    for (std::size_t i = 0; i < values.size() && !capped; ++i) {
        {
            std::vector<TruthValue> neg(n);
            for (std::size_t k = 0; k < n; ++k) neg[k] = tv_not(values[i][k]);
            add(std::move(neg), Formula::neg(witnesses[i]));
        }
        for (std::size_t j = 0; j <= i && !capped; ++j) {
            std::vector<TruthValue> dis(n), con(n);
            for (std::size_t k = 0; k < n; ++k) {
                dis[k] = tv_or(values[i][k], values[j][k]);
                con[k] = tv_and(values[i][k], values[j][k]);
            }
            add(std::move(dis), Formula::disj(witnesses[i], witnesses[j]));
            add(std::move(con), Formula::conj(witnesses[i], witnesses[j]));
        }
    }
    clone.complete = !capped;

    std::vector<std::size_t> order(values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    clone.classes.reserve(order.size());
    for (std::size_t i : order) clone.classes.push_back({values[i], witnesses[i]});
    for (std::size_t i = 0; i < clone.classes.size(); ++i)
        clone.index_.emplace(clone.classes[i].values, i);

    clone.models_.reserve(clone.classes.size());
    for (const auto& c : clone.classes) {
        ValuationSet m(n);
        for (std::size_t k = 0; k < n; ++k)
            if (contains_one(c.values[k])) m.insert(k);
        clone.models_.push_back(std::move(m));
    }

    clone.neg_of_.assign(clone.classes.size(), static_cast<std::size_t>(-1));
    if (clone.complete) {
        for (std::size_t i = 0; i < clone.classes.size(); ++i) {
            std::vector<TruthValue> neg(n);
            for (std::size_t k = 0; k < n; ++k) neg[k] = tv_not(clone.classes[i].values[k]);
            clone.neg_of_[i] = *clone.index_of(neg);
        }
    }
    return clone;
}

// ---------------------------------------------------------------------------
// Theories over the quotient

// Th(V) as a set of classes: those whose model set includes V.
inline TheorySet theory_set(const Clone& clone, const ValuationSet& V) {
    clone.require_complete();
    TheorySet out(clone.size());
    for (std::size_t g = 0; g < clone.size(); ++g)
        if (V.subset_of(clone.models(g))) out.insert(g);
    return out;
}

// Th^d(V): classes in Th(V) whose negation is not also in Th(V).
inline TheorySet theory_d_set(const Clone& clone, const ValuationSet& V) {
    clone.require_complete();
    TheorySet out(clone.size());
    for (std::size_t g = 0; g < clone.size(); ++g)
        if (V.subset_of(clone.models(g)) && !V.subset_of(clone.models(clone.negation_of(g))))
            out.insert(g);
    return out;
}

// Mod of a theory: intersection of the member classes' model sets.
inline ValuationSet mod_of_theory(const Clone& clone, const TheorySet& T) {
    ValuationSet out = ValuationSet::full(clone.universe_size());
    T.for_each([&](std::size_t g) { out &= clone.models(g); });
    return out;
}

// ---------------------------------------------------------------------------
// The definable family D = { Mod(gamma) : gamma a set of formulas }

class DefinableFamily {
public:
    std::vector<ValuationSet> sets;  // canonical order

    bool contains(const ValuationSet& V) const {
        return std::binary_search(sets.begin(), sets.end(), V);
    }

    std::size_t index_of(const ValuationSet& V) const {
        auto it = std::lower_bound(sets.begin(), sets.end(), V);
        if (it == sets.end() || *it != V) throw error("set is not definable");
        return static_cast<std::size_t>(it - sets.begin());
    }

    std::size_t size() const { return sets.size(); }
};

// Closure of the class model sets under intersection, together with the full
// universe (Mod of the empty set).  Mod of any formula set is an
// intersection of single-class model sets, so this is exactly D.
inline DefinableFamily definable_family(const Clone& clone,
                                        std::size_t cap = kDefaultUniverseCap) {
    clone.require_complete();
    std::vector<ValuationSet> family{ValuationSet::full(clone.universe_size())};
    std::vector<ValuationSet> work = family;
    while (!work.empty()) {
        ValuationSet base = std::move(work.back());
        work.pop_back();
        for (std::size_t g = 0; g < clone.size(); ++g) {
            ValuationSet v = base & clone.models(g);
            auto it = std::lower_bound(family.begin(), family.end(), v);
            if (it == family.end() || *it != v) {
                if (family.size() >= cap)
                    throw cap_exceeded_error("definable family exceeds the cap");
                family.insert(it, v);
                work.push_back(std::move(v));
            }
        }
    }
    DefinableFamily d;
    d.sets = std::move(family);
    return d;
}

// ---------------------------------------------------------------------------
// Coherent sets: V such that no formula holds on V together with its
// negation.  The empty set is never coherent.

inline bool is_coherent_set(const Clone& clone, const ValuationSet& V) {
    clone.require_complete();
    for (std::size_t g = 0; g < clone.size(); ++g)
        if (V.subset_of(clone.models(g)) && V.subset_of(clone.models(clone.negation_of(g))))
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Assumption checks
//
//   A0  no valuation satisfies every formula
//   A1  the valuation universe is finite
//   A2  whenever neither a nor ~a holds throughout Mod(gamma), adding a to
//       gamma does not force ~a:  Mod(gamma) & Mod(a) is not within Mod(~a)
//   A3  the model-set laws for | (union), & (intersection), double negation,
//       and the two De Morgan exchanges
//   A4  the union law for | alone
//
// A2 quantifies gamma over definable-family representatives and a over clone
// witnesses; both quantifications are exhaustive for the quotient.

struct AssumptionCounterexample {
    std::optional<std::size_t> valuation;       // A0: a valuation satisfying everything
    std::optional<ValuationSet> gamma_models;   // A2: Mod(gamma) of the violating gamma
    std::optional<Formula> alpha, beta;         // A2: alpha; A3/A4: the pair
    std::string detail;
};

struct AssumptionEntry {
    std::string id;
    bool holds = false;
    std::optional<AssumptionCounterexample> counterexample;
};

struct AssumptionReport {
    std::vector<AssumptionEntry> entries;  // A0..A4 in order

    const AssumptionEntry& entry(std::string_view id) const {
        for (const auto& e : entries)
            if (e.id == id) return e;
        throw error("unknown assumption id");
    }
    bool holds(std::string_view id) const { return entry(id).holds; }
};

inline AssumptionReport check_assumptions(const Clone& clone) {
    clone.require_complete();
    const std::size_t n = clone.universe_size();
    AssumptionReport report;

    {  // A0
        ValuationSet all = ValuationSet::full(n);
        for (std::size_t g = 0; g < clone.size(); ++g) all &= clone.models(g);
        AssumptionEntry e{"A0", all.empty(), std::nullopt};
        if (!all.empty()) {
            AssumptionCounterexample c;
            c.valuation = all.members().front();
            c.detail = "a valuation satisfies every formula";
            e.counterexample = c;
        }
        report.entries.push_back(std::move(e));
    }

    // A1 holds by construction: the universe is enumerated.
    report.entries.push_back({"A1", true, std::nullopt});

    {  // A2
        AssumptionEntry e{"A2", true, std::nullopt};
        DefinableFamily d = definable_family(clone);
        for (const auto& V : d.sets) {
            for (std::size_t g = 0; g < clone.size() && e.holds; ++g) {
                std::size_t ng = clone.negation_of(g);
                if (V.subset_of(clone.models(g)) || V.subset_of(clone.models(ng))) continue;
                if ((V & clone.models(g)).subset_of(clone.models(ng))) {
                    AssumptionCounterexample c;
                    c.gamma_models = V;
                    c.alpha = clone.classes[g].witness;
                    c.detail = "neither alpha nor ~alpha holds on Mod(gamma), yet "
                               "Mod(gamma) & Mod(alpha) lies within Mod(~alpha)";
                    e.holds = false;
                    e.counterexample = c;
                }
            }
            if (!e.holds) break;
        }
        report.entries.push_back(std::move(e));
    }

    auto check_pairs = [&](bool full_a3) {
        AssumptionEntry e{full_a3 ? "A3" : "A4", true, std::nullopt};
        for (std::size_t a = 0; a < clone.size() && e.holds; ++a) {
            for (std::size_t b = 0; b < clone.size() && e.holds; ++b) {
                auto fail = [&](const std::string& law) {
                    AssumptionCounterexample c;
                    c.alpha = clone.classes[a].witness;
                    c.beta = clone.classes[b].witness;
                    c.detail = law;
                    e.holds = false;
                    e.counterexample = c;
                };
                std::size_t dis = clone.disjunction_of(a, b);
                if (clone.models(dis) != (clone.models(a) | clone.models(b)))
                    fail("Mod(a | b) != Mod(a) + Mod(b)");
                if (!full_a3 || !e.holds) continue;
                std::size_t con = clone.conjunction_of(a, b);
                if (clone.models(con) != (clone.models(a) & clone.models(b)))
                    fail("Mod(a & b) != Mod(a) * Mod(b)");
                std::size_t na = clone.negation_of(a), nb = clone.negation_of(b);
                if (clone.models(clone.negation_of(na)) != clone.models(a))
                    fail("Mod(~~a) != Mod(a)");
                if (clone.models(clone.negation_of(dis)) !=
                    clone.models(clone.conjunction_of(na, nb)))
                    fail("Mod(~(a | b)) != Mod(~a & ~b)");
                if (clone.models(clone.negation_of(con)) !=
                    clone.models(clone.disjunction_of(na, nb)))
                    fail("Mod(~(a & b)) != Mod(~a | ~b)");
            }
        }
        return e;
    };
    report.entries.push_back(check_pairs(true));   // A3
    report.entries.push_back(check_pairs(false));  // A4
    return report;
}

}  // namespace pivotal
