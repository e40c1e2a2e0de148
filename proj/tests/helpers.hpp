#pragma once

#include <random>
#include <string>
#include <vector>

#include "pivotal/formula.hpp"
#include "pivotal/semantics.hpp"

namespace pivotal::testing {

inline Structure classical(std::vector<std::string> atoms) {
    return Structure{StructureKind::Classical, AtomSet(std::move(atoms))};
}
inline Structure four(std::vector<std::string> atoms) {
    return Structure{StructureKind::Four, AtomSet(std::move(atoms))};
}
inline Structure j3(std::vector<std::string> atoms) {
    return Structure{StructureKind::J3, AtomSet(std::move(atoms))};
}

inline Formula random_formula(std::mt19937& rng, const std::vector<std::string>& atoms,
                              int max_depth) {
    std::uniform_int_distribution<int> leaf(0, static_cast<int>(atoms.size()) + 1);
    if (max_depth == 0 || std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
        int pick = leaf(rng);
        if (pick == 0) return Formula::truth();
        if (pick == 1) return Formula::falsity();
        return Formula::atom(atoms[static_cast<std::size_t>(pick - 2)]);
    }
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
        case 0: return Formula::neg(random_formula(rng, atoms, max_depth - 1));
        case 1:
            return Formula::conj(random_formula(rng, atoms, max_depth - 1),
                                 random_formula(rng, atoms, max_depth - 1));
        default:
            return Formula::disj(random_formula(rng, atoms, max_depth - 1),
                                 random_formula(rng, atoms, max_depth - 1));
    }
}

inline FormulaList random_formula_list(std::mt19937& rng, const std::vector<std::string>& atoms,
                                       std::size_t max_len, int max_depth) {
    FormulaList out;
    std::size_t len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
    for (std::size_t i = 0; i < len; ++i) out.push_back(random_formula(rng, atoms, max_depth));
    return out;
}

}  // namespace pivotal::testing
