// Consequence relations.
//
//   basic            gamma entails alpha iff Mod(gamma) is within Mod(alpha)
//   pivotal          Mod(gamma) & I is within Mod(alpha), for a pivot I
//   discriminative   pivotal, and additionally the chosen models are not all
//                    models of ~alpha (contradictory conclusions rejected)
//   pertinence       adding alpha to gamma yields no new pertinent basic
//                    consequences, for a pertinent set E
//
// Plain pivotal relations are monotonic and supraclassical; over the
// many-valued structures they tolerate contradictory premises without
// exploding, at the price of Disjunctive Syllogism.
//
// h_stages() computes the inductive tower of negated near-conclusions used
// by the discriminative characterizations: starting from the models of
// gamma together with everything concluded, each stage collects ~b for every
// b that holds throughout the current model set without being concluded and
// whose negation does not hold throughout; the model set then shrinks by the
// new stage and the tower stabilizes after at most one stage per class.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pivotal/clone.hpp"
#include "pivotal/formula.hpp"
#include "pivotal/semantics.hpp"

namespace pivotal {

inline bool entails_basic(const Structure& s, const FormulaList& gamma, const Formula& alpha,
                          std::size_t cap = kDefaultUniverseCap) {
    return mod(s, gamma, cap).subset_of(mod(s, alpha, cap));
}

// ---------------------------------------------------------------------------
// Pivotal relations

enum class Mode : std::uint8_t { Plain, Discriminative };

struct PivotalRelation {
    Structure structure;
    ValuationSet pivot;
    Mode mode = Mode::Plain;

    ValuationSet chosen_models(const FormulaList& gamma,
                               std::size_t cap = kDefaultUniverseCap) const {
        return mod(structure, gamma, cap) & pivot;
    }

    bool entails(const FormulaList& gamma, const Formula& alpha,
                 std::size_t cap = kDefaultUniverseCap) const {
        ValuationSet chosen = chosen_models(gamma, cap);
        bool plain = chosen.subset_of(mod(structure, alpha, cap));
        if (mode == Mode::Plain) return plain;
        return plain && !chosen.subset_of(mod(structure, Formula::neg(alpha), cap));
    }
};

inline bool entails_pivotal(const PivotalRelation& rel, const FormulaList& gamma,
                            const Formula& alpha) {
    if (rel.mode != Mode::Plain) throw error("entails_pivotal requires plain mode");
    return rel.entails(gamma, alpha);
}

inline bool entails_discriminative(const PivotalRelation& rel, const FormulaList& gamma,
                                   const Formula& alpha) {
    if (rel.mode != Mode::Discriminative)
        throw error("entails_discriminative requires discriminative mode");
    return rel.entails(gamma, alpha);
}

// All concluded classes, as a theory set over the clone.
inline TheorySet consequence_set(const PivotalRelation& rel, const FormulaList& gamma,
                                 const Clone& clone) {
    clone.require_complete();
    ValuationSet chosen = rel.chosen_models(gamma);
    return rel.mode == Mode::Plain ? theory_set(clone, chosen) : theory_d_set(clone, chosen);
}

// A set is consistent iff no formula holds throughout its models together
// with its negation, i.e. iff its model set is coherent.
inline bool is_consistent(const FormulaList& gamma, const Clone& clone) {
    return is_coherent_set(clone, mod(clone.structure, gamma));
}

// ---------------------------------------------------------------------------
// The H tower

struct HSets {
    TheorySet closure;              // union of all stages
    std::vector<TheorySet> stages;  // per-stage trace, ending with the stage
                                    // that added nothing new
};

// Core form: everything about the relation enters through Mod(gamma) and the
// concluded theory set, so the same computation serves pivotal relations and
// arbitrary relation tables.
inline HSets h_stages(const Clone& clone, const ValuationSet& gamma_models,
                      const TheorySet& concluded) {
    clone.require_complete();
    HSets out;
    out.closure = TheorySet(clone.size());
    ValuationSet current = gamma_models & mod_of_theory(clone, concluded);
    for (;;) {
        TheorySet holds = theory_set(clone, current);
        TheorySet stage(clone.size());
        holds.for_each([&](std::size_t b) {
            if (concluded.contains(b)) return;
            std::size_t nb = clone.negation_of(b);
            if (!holds.contains(nb)) stage.insert(nb);
        });
        out.stages.push_back(stage);
        if (stage.subset_of(out.closure)) break;
        out.closure |= stage;
        current &= mod_of_theory(clone, stage);
    }
    return out;
}

inline HSets h_sets(const PivotalRelation& rel, const FormulaList& gamma, const Clone& clone) {
    return h_stages(clone, mod(clone.structure, gamma), consequence_set(rel, gamma, clone));
}

// ---------------------------------------------------------------------------
// Pertinence relations

struct PertinenceRelation {
    Structure structure;
    TheorySet pertinent;  // E, as clone classes

    bool is_closed(const Clone& clone) const {
        return theory_set(clone, mod_of_theory(clone, pertinent)) == pertinent;
    }
};

inline PertinenceRelation make_pertinence_relation(const Clone& clone,
                                                   const FormulaList& pertinent_formulas) {
    clone.require_complete();
    TheorySet e(clone.size());
    for (const auto& f : pertinent_formulas) e.insert(clone.class_of(f));
    return PertinenceRelation{clone.structure, e};
}

// gamma entails alpha iff every pertinent class holding throughout
// Mod(gamma + alpha) already holds throughout Mod(gamma).
inline bool entails_pertinence(const PertinenceRelation& rel, const FormulaList& gamma,
                               const Formula& alpha, const Clone& clone) {
    clone.require_complete();
    ValuationSet with_alpha = mod(clone.structure, gamma) & mod(clone.structure, alpha);
    ValuationSet without = mod(clone.structure, gamma);
    bool ok = true;
    rel.pertinent.for_each([&](std::size_t g) {
        if (with_alpha.subset_of(clone.models(g)) && !without.subset_of(clone.models(g)))
            ok = false;
    });
    return ok;
}

}  // namespace pivotal
