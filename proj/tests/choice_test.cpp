#include <catch2/catch.hpp>

#include <random>

#include "helpers.hpp"
#include "pivotal/characterize.hpp"
#include "pivotal/choice.hpp"

using namespace pivotal;
using namespace pivotal::testing;

namespace {

std::vector<IndexSet> power_set(std::size_t n) {
    std::vector<IndexSet> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
        out.push_back(IndexSet::from_mask(n, m));
    return out;
}

// Enumerates every choice function on the given domain.
template <typename Fn>
void for_each_choice_function(const std::vector<IndexSet>& domain, Fn&& fn) {
    std::vector<std::uint64_t> masks;
    for (const auto& v : domain) masks.push_back(v.to_mask());
    std::vector<std::uint64_t> image(domain.size(), 0);
    const std::size_t n = domain.empty() ? 0 : domain.front().universe_size();
    for (;;) {
        std::vector<IndexSet> img;
        for (std::uint64_t m : image) img.push_back(IndexSet::from_mask(n, m));
        fn(ChoiceFunction(domain, img));
        std::size_t k = 0;
        for (; k < image.size(); ++k) {
            if (image[k] == masks[k]) {
                image[k] = 0;
            } else {
                image[k] = ((image[k] | ~masks[k]) + 1) & masks[k];
                break;
            }
        }
        if (k == image.size()) break;
    }
}

}  // namespace

TEST_CASE("pivot choice intersects") {
    IndexSet u = IndexSet::full(4);
    IndexSet i = IndexSet::from_mask(4, 0b0101);
    CHECK(pivot_choice(i, IndexSet(4)).empty());
    CHECK(pivot_choice(u, IndexSet::from_mask(4, 0b0110)) == IndexSet::from_mask(4, 0b0110));
    CHECK(pivot_choice(i, IndexSet::from_mask(4, 0b0110)) == IndexSet::from_mask(4, 0b0100));
}

TEST_CASE("the classical Nixon pivot picks only non-pacifist republicans from Mod(r)") {
    Structure s = classical({"r", "q", "p"});
    ValuationSet pivot = mod(s, FormulaList{parse("~r | ~p"), parse("~q | p")});
    ValuationSet chosen = pivot_choice(pivot, mod(s, parse("r")));
    REQUIRE_FALSE(chosen.empty());
    chosen.for_each([&](std::size_t idx) {
        CHECK(satisfies(s, valuation_at(s, idx), parse("~p")));
    });
}

TEST_CASE("choice functions must choose within their argument") {
    std::vector<IndexSet> domain{IndexSet::from_mask(2, 0b01)};
    std::vector<IndexSet> bad{IndexSet::from_mask(2, 0b10)};
    CHECK_THROWS_AS(ChoiceFunction(domain, bad), error);
}

TEST_CASE("pivot-induced functions are strongly coherent; violations carry witnesses") {
    for (const Structure& s : {classical({"p"}), four({"p"})}) {
        StructureContext ctx = make_structure_context(s);
        const std::size_t n = ctx.universe.universe_size();
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
            ChoiceFunction mu =
                make_pivot_function(IndexSet::from_mask(n, m), ctx.definable.sets);
            CHECK(is_strongly_coherent(mu));
        }
    }

    // mu(V1) = {0} with 0 in V2 but mu(V2) empty: a direct violation
    std::vector<IndexSet> domain{IndexSet::from_mask(2, 0b11), IndexSet::from_mask(2, 0b01)};
    std::vector<IndexSet> image{IndexSet::from_mask(2, 0b01), IndexSet(2)};
    ChoiceFunction mu(domain, image);
    auto v = sc_violation(mu);
    REQUIRE(v.has_value());
    CHECK(v->v_index == 1);
    CHECK(v->w_index == 0);
    CHECK(v->member == 0);
    // the witness re-verifies
    CHECK((mu.image[v->w_index] & mu.domain[v->v_index]).contains(v->member));
    CHECK_FALSE(mu.image[v->v_index].contains(v->member));

    // the constant-empty function is vacuously coherent
    std::vector<IndexSet> none{IndexSet(2), IndexSet(2)};
    CHECK(is_strongly_coherent(ChoiceFunction(domain, none)));
}

TEST_CASE("definability preservation") {
    StructureContext cl = make_structure_context(classical({"p"}));
    for_each_choice_function(cl.definable.sets, [&](const ChoiceFunction& mu) {
        CHECK(is_definability_preserving(mu, cl.definable));  // classically D is everything
    });

    StructureContext f = make_structure_context(four({"p"}));
    for (const auto& pivot : f.definable.sets)
        CHECK(is_definability_preserving(make_pivot_function(pivot, f.definable.sets),
                                         f.definable));
    // {p=t} is not definable, and the universe maps onto it
    ChoiceFunction bad = make_pivot_function(IndexSet::singleton(4, 1), f.definable.sets);
    CHECK_FALSE(is_definability_preserving(bad, f.definable));
}

TEST_CASE("universe codefinability") {
    StructureContext f = make_structure_context(four({"p"}));
    for (std::uint64_t m = 0; m < 16; ++m) {
        IndexSet pivot = IndexSet::from_mask(4, m);
        ChoiceFunction mu = make_pivot_function(pivot, f.definable.sets);
        CHECK(is_universe_codefinable(mu, f.definable) ==
              f.definable.contains(f.universe - pivot));
    }
    CHECK(is_universe_codefinable(make_pivot_function(IndexSet::full(4), f.definable.sets),
                                  f.definable));

    StructureContext cl = make_structure_context(classical({"p"}));
    for_each_choice_function(cl.definable.sets, [&](const ChoiceFunction& mu) {
        CHECK(is_universe_codefinable(mu, cl.definable));
    });

    // a domain without the universe cannot answer the question
    ChoiceFunction partial({IndexSet::from_mask(2, 0b01)}, {IndexSet(2)});
    CHECK_THROWS_AS(is_universe_codefinable(partial, cl.definable), error);
}

TEST_CASE("coherency preservation") {
    StructureContext f = make_structure_context(four({"p"}));
    CHECK(is_coherency_preserving(make_pivot_function(f.universe, f.definable.sets), f.clone));

    // sending a coherent definable set to the empty set breaks it
    std::vector<IndexSet> image;
    for (const auto& v : f.definable.sets)
        image.push_back(is_coherent_set(f.clone, v) ? IndexSet(4) : v);
    CHECK_FALSE(is_coherency_preserving(ChoiceFunction(f.definable.sets, image), f.clone));

    // the one-atom analogue of the Nixon pivot, decided by enumeration
    IndexSet analogue(4);
    for (std::size_t i = 0; i < 4; ++i) {
        Valuation v = valuation_at(f.structure, i);
        if (!satisfies(f.structure, v, parse("p")) || satisfies(f.structure, v, parse("~p")))
            analogue.insert(i);
    }
    ChoiceFunction mu = make_pivot_function(analogue, f.definable.sets);
    bool expected = true;
    for (std::size_t i = 0; i < f.definable.size(); ++i)
        if (f.coherent_definable[i] &&
            !is_coherent_set(f.clone, f.definable.sets[i] & analogue))
            expected = false;
    CHECK(is_coherency_preserving(mu, f.clone) == expected);
}

TEST_CASE("nu fixes identity and constant-empty functions") {
    StructureContext f = make_structure_context(four({"p"}));
    SetFunction identity{f.definable.sets, f.definable.sets};
    ChoiceFunction nu_id = nu(identity);
    for (std::size_t i = 0; i < f.definable.size(); ++i)
        CHECK(nu_id.image[i] == f.definable.sets[i]);

    SetFunction empty{f.definable.sets,
                      std::vector<IndexSet>(f.definable.size(), IndexSet(4))};
    ChoiceFunction nu_empty = nu(empty);
    for (const auto& img : nu_empty.image) CHECK(img.empty());
}

TEST_CASE("nu of an arbitrary function is strongly coherent") {
    std::mt19937 rng(7005);
    StructureContext f = make_structure_context(four({"p"}));
    for (int k = 0; k < 300; ++k) {
        std::vector<IndexSet> image;
        for (std::size_t i = 0; i < f.definable.size(); ++i)
            image.push_back(IndexSet::from_mask(4, rng() & 15));
        ChoiceFunction n = nu(SetFunction{f.definable.sets, image});
        CHECK(is_strongly_coherent(n));
    }
}

TEST_CASE("nu recovers the closure of a strongly coherent source") {
    // when f(V) = Mod(Th(mu(V))) for a pivot-induced mu, the same closure
    // applied to nu(f) reproduces f
    std::mt19937 rng(7006);
    for (const Structure& s : {four({"p"}), classical({"p", "q"})}) {
        StructureContext ctx = make_structure_context(s);
        const std::size_t n = ctx.universe.universe_size();
        for (int k = 0; k < 50; ++k) {
            IndexSet pivot =
                IndexSet::from_mask(n, rng() & ((std::uint64_t{1} << n) - 1));
            SetFunction f;
            f.domain = ctx.definable.sets;
            for (const auto& v : ctx.definable.sets)
                f.image.push_back(ctx.mod_of(ctx.th(v & pivot)));
            ChoiceFunction nf = nu(f);
            for (std::size_t i = 0; i < f.domain.size(); ++i)
                CHECK(f.image[i] == ctx.mod_of(ctx.th(nf.image[i])));
        }
    }
}

TEST_CASE("pivot representation is exactly strong coherence") {
    StructureContext f = make_structure_context(four({"p"}));
    for (std::uint64_t m = 0; m < 16; ++m) {
        IndexSet pivot = IndexSet::from_mask(4, m);
        ChoiceFunction mu = make_pivot_function(pivot, f.definable.sets);
        auto rep = pivot_representation(mu);
        REQUIRE(rep.has_value());
        for (std::size_t i = 0; i < mu.size(); ++i)
            CHECK((mu.domain[i] & *rep) == (mu.domain[i] & pivot));
    }

    std::vector<IndexSet> domain{IndexSet::from_mask(2, 0b11), IndexSet::from_mask(2, 0b01)};
    std::vector<IndexSet> image{IndexSet::from_mask(2, 0b01), IndexSet(2)};
    CHECK_FALSE(pivot_representation(ChoiceFunction(domain, image)).has_value());
}

TEST_CASE("strong coherence coincides with representability on abstract universes") {
    for (std::size_t n = 0; n <= 3; ++n) {
        auto domain = power_set(n);
        for_each_choice_function(domain, [&](const ChoiceFunction& mu) {
            bool representable = false;
            for (std::uint64_t pm = 0; pm < (std::uint64_t{1} << n) && !representable; ++pm) {
                IndexSet pivot = IndexSet::from_mask(n, pm);
                bool match = true;
                for (std::size_t i = 0; i < domain.size() && match; ++i)
                    match = (domain[i] & pivot) == mu.image[i];
                representable = match;
            }
            CHECK(is_strongly_coherent(mu) == representable);
        });
    }
}
