// Executable forms of the conditions (|~0) .. (|~12) and exhaustive oracles
// for the equivalences they are part of:
//
//   mupp         strong coherence <=> pivot representability, with the DP
//                and UC refinements
//   rep-dp       DP pivotal relations <=> (|~0)(|~1)(|~2)(|~3)
//   rep-general  pivotal relations <=> (|~4); UC pivotal <=> (|~4)(|~5)
//   rep-disc-dp  (CP) DP pivotal-discriminative relations <=> the (|~6)..
//                (|~10) sets
//   rep-disc     (CP/UC) pivotal-discriminative relations <=> the (|~11)/
//                (|~12) sets
//   xlogic       UC pivotal relations <=> closed pertinence relations
//
// A candidate relation is an explicit table from definable-family
// representatives to theory sets (RelationUnderTest).  Every relation
// satisfying any of the checked condition sets factors through model sets
// and formula classes, and pivot-induced relations factor by definition, so
// tabulated candidates cover both sides of each equivalence; the reports
// carry that statement in their note field.
//
// Backward directions reuse the constructions from the equivalences
// themselves (mu(Mod gamma) = Mod(C(gamma)); nu of the induced table; the
// H-tower intersection) rather than searching for arbitrary witnesses.

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pivotal/choice.hpp"
#include "pivotal/clone.hpp"
#include "pivotal/consequence.hpp"
#include "pivotal/index_set.hpp"
#include "pivotal/semantics.hpp"

namespace pivotal {

struct assumption_violation_error : error {
    using error::error;
};

// ---------------------------------------------------------------------------
// Context: a structure with its quotient fully materialized.

struct StructureContext {
    Structure structure;
    Clone clone;
    DefinableFamily definable;
    AssumptionReport assumptions;
    ValuationSet universe;
    std::vector<char> coherent_definable;            // per definable set
    std::vector<TheorySet> th_definable;             // Th of each definable set
    std::vector<std::size_t> neg_class;              // class -> class of its negation
    std::vector<std::vector<std::uint32_t>> or_class;  // [a][b] -> class of a | b

    std::size_t n_classes() const { return clone.size(); }
    std::size_t n_definable() const { return definable.size(); }

    TheorySet th(const ValuationSet& V) const { return theory_set(clone, V); }
    TheorySet th_d(const ValuationSet& V) const { return theory_d_set(clone, V); }
    ValuationSet mod_of(const TheorySet& T) const { return mod_of_theory(clone, T); }

    // Theory-set image under class negation: { a : ~a in T }.
    TheorySet negated(const TheorySet& T) const {
        TheorySet out(n_classes());
        T.for_each([&](std::size_t g) { out.insert(neg_class[g]); });
        return out;
    }

    void require(std::string_view assumption) const {
        if (!assumptions.holds(assumption))
            throw assumption_violation_error("(" + std::string(assumption) +
                                             ") is not satisfied by " + structure.describe());
    }
};

inline StructureContext make_structure_context(const Structure& s,
                                               std::size_t clone_cap = kDefaultCloneCap,
                                               std::size_t universe_cap = kDefaultUniverseCap) {
    StructureContext ctx;
    ctx.structure = s;
    ctx.clone = compute_clone(s, clone_cap, universe_cap);
    ctx.clone.require_complete();
    ctx.definable = definable_family(ctx.clone);
    ctx.assumptions = check_assumptions(ctx.clone);
    ctx.universe = ValuationSet::full(ctx.clone.universe_size());
    ctx.coherent_definable.reserve(ctx.definable.size());
    ctx.th_definable.reserve(ctx.definable.size());
    for (const auto& V : ctx.definable.sets) {
        ctx.coherent_definable.push_back(is_coherent_set(ctx.clone, V) ? 1 : 0);
        ctx.th_definable.push_back(theory_set(ctx.clone, V));
    }
    ctx.neg_class.resize(ctx.clone.size());
    for (std::size_t g = 0; g < ctx.clone.size(); ++g)
        ctx.neg_class[g] = ctx.clone.negation_of(g);
    ctx.or_class.assign(ctx.clone.size(), std::vector<std::uint32_t>(ctx.clone.size()));
    for (std::size_t a = 0; a < ctx.clone.size(); ++a)
        for (std::size_t b = 0; b <= a; ++b) {
            auto d = static_cast<std::uint32_t>(ctx.clone.disjunction_of(a, b));
            ctx.or_class[a][b] = d;
            ctx.or_class[b][a] = d;
        }
    return ctx;
}

// ---------------------------------------------------------------------------
// Relations under test

// A relation tabulated over the definable family: row i holds the concluded
// classes for any premise set whose models are definable.sets[i].
struct RelationUnderTest {
    std::vector<TheorySet> table;

    bool operator==(const RelationUnderTest& o) const { return table == o.table; }
};

inline RelationUnderTest relation_from_pivot(const StructureContext& ctx,
                                             const ValuationSet& pivot, Mode mode) {
    RelationUnderTest rel;
    rel.table.reserve(ctx.n_definable());
    for (const auto& V : ctx.definable.sets) {
        ValuationSet chosen = V & pivot;
        rel.table.push_back(mode == Mode::Plain ? ctx.th(chosen) : ctx.th_d(chosen));
    }
    return rel;
}

// Per-relation derived data shared by the condition checks.
class RelationAnalysis {
public:
    RelationAnalysis(const StructureContext& ctx, const RelationUnderTest& rel)
        : ctx_(ctx), rel_(rel) {}

    const ValuationSet& mod_c(std::size_t i) {
        ensure_base();
        return mod_c_[i];
    }
    // Mod(gamma + C(gamma)): the concluded models inside row i's premises.
    const ValuationSet& m(std::size_t i) {
        ensure_base();
        return m_[i];
    }
    const TheorySet& h(std::size_t i) {
        ensure_h();
        return h_[i];
    }
    const ValuationSet& mod_h(std::size_t i) {
        ensure_h();
        return mod_h_[i];
    }

    // { v : for every definable W containing v, v lies in Mod(C(W)) }.
    const ValuationSet& core() {
        if (!core_) {
            ValuationSet c = ctx_.universe;
            for (std::size_t j = 0; j < ctx_.n_definable(); ++j)
                c = c - (ctx_.definable.sets[j] - mod_c(j));
            core_ = c;
        }
        return *core_;
    }

    // Same, with Mod(C(W) + H(W)) on the right.
    const ValuationSet& core_d() {
        if (!core_d_) {
            ValuationSet c = ctx_.universe;
            for (std::size_t j = 0; j < ctx_.n_definable(); ++j)
                c = c - (ctx_.definable.sets[j] - (mod_c(j) & mod_h(j)));
            core_d_ = c;
        }
        return *core_d_;
    }

private:
    void ensure_base() {
        if (!mod_c_.empty()) return;
        mod_c_.reserve(ctx_.n_definable());
        m_.reserve(ctx_.n_definable());
        for (std::size_t i = 0; i < ctx_.n_definable(); ++i) {
            mod_c_.push_back(ctx_.mod_of(rel_.table[i]));
            m_.push_back(ctx_.definable.sets[i] & mod_c_.back());
        }
    }

    void ensure_h() {
        if (!h_.empty()) return;
        ensure_base();
        h_.reserve(ctx_.n_definable());
        mod_h_.reserve(ctx_.n_definable());
        for (std::size_t i = 0; i < ctx_.n_definable(); ++i) {
            h_.push_back(h_stages(ctx_.clone, ctx_.definable.sets[i], rel_.table[i]).closure);
            mod_h_.push_back(ctx_.mod_of(h_.back()));
        }
    }

    const StructureContext& ctx_;
    const RelationUnderTest& rel_;
    std::vector<ValuationSet> mod_c_, m_, mod_h_;
    std::vector<TheorySet> h_;
    std::optional<ValuationSet> core_, core_d_;
};

// ---------------------------------------------------------------------------
// Conditions

enum class ConditionId : int {
    C0 = 0, C1, C2, C3, C4, C5, C6, C7, C8, C9, C10, C11, C12
};

inline std::string condition_name(ConditionId id) {
    return "(|~" + std::to_string(static_cast<int>(id)) + ")";
}

struct ConditionCounterexample {
    std::optional<std::size_t> gamma_rep;  // definable-family index
    std::optional<std::size_t> delta_rep;
    std::optional<std::size_t> alpha_class;
    std::optional<std::size_t> beta_class;
};

struct ConditionReport {
    ConditionId id{};
    bool holds = false;
    std::optional<ConditionCounterexample> counterexample;
    std::string detail;
};

namespace detail {

inline std::optional<ConditionCounterexample> violation(const StructureContext& ctx,
                                                        RelationAnalysis& an,
                                                        const RelationUnderTest& rel,
                                                        ConditionId id) {
    const auto& d = ctx.definable.sets;
    const std::size_t nd = d.size();
    auto cex2 = [](std::size_t i, std::size_t j) {
        ConditionCounterexample c;
        c.gamma_rep = i;
        c.delta_rep = j;
        return c;
    };

    switch (id) {
        case ConditionId::C0:
            // Distinct definable rows have distinct basic theories, so a
            // tabulated relation cannot distinguish premise sets with the
            // same models; checked literally all the same.
            for (std::size_t i = 0; i < nd; ++i)
                for (std::size_t j = 0; j < nd; ++j)
                    if (ctx.th_definable[i] == ctx.th_definable[j] &&
                        rel.table[i] != rel.table[j])
                        return cex2(i, j);
            return std::nullopt;

        case ConditionId::C1:
            for (std::size_t i = 0; i < nd; ++i)
                if (rel.table[i] != ctx.th(an.mod_c(i))) {
                    ConditionCounterexample c;
                    c.gamma_rep = i;
                    return c;
                }
            return std::nullopt;

        case ConditionId::C2:
            for (std::size_t i = 0; i < nd; ++i)
                if (!ctx.th_definable[i].subset_of(rel.table[i])) {
                    ConditionCounterexample c;
                    c.gamma_rep = i;
                    return c;
                }
            return std::nullopt;

        case ConditionId::C3:
            for (std::size_t i = 0; i < nd; ++i)
                for (std::size_t j = 0; j < nd; ++j)
                    if (!rel.table[i].subset_of(ctx.th(an.mod_c(j) & d[i])))
                        return cex2(i, j);
            return std::nullopt;

        case ConditionId::C4:
            for (std::size_t i = 0; i < nd; ++i)
                if (rel.table[i] != ctx.th(d[i] & an.core())) {
                    ConditionCounterexample c;
                    c.gamma_rep = i;
                    return c;
                }
            return std::nullopt;

        case ConditionId::C5:
            if (!ctx.definable.contains(ctx.universe - an.core()))
                return ConditionCounterexample{};
            return std::nullopt;

        case ConditionId::C6:
            for (std::size_t i = 0; i < nd; ++i) {
                TheorySet holds = ctx.th(an.m(i));
                for (std::size_t b = 0; b < ctx.n_classes(); ++b) {
                    if (!holds.contains(b) || rel.table[i].contains(b)) continue;
                    TheorySet t2 = ctx.th(an.m(i) & ctx.clone.models(ctx.neg_class[b]));
                    // alpha violates when ~alpha is in t2 yet alpha concluded
                    TheorySet bad = ctx.negated(t2) & rel.table[i];
                    if (!bad.empty()) {
                        ConditionCounterexample c;
                        c.gamma_rep = i;
                        c.alpha_class = bad.members().front();
                        c.beta_class = b;
                        return c;
                    }
                }
            }
            return std::nullopt;

        case ConditionId::C7:
            for (std::size_t i = 0; i < nd; ++i) {
                TheorySet holds = ctx.th(an.m(i));
                for (std::size_t a = 0; a < ctx.n_classes(); ++a) {
                    if (!holds.contains(a) || rel.table[i].contains(a)) continue;
                    TheorySet t2 = ctx.th(an.m(i) & ctx.clone.models(ctx.neg_class[a]));
                    for (std::size_t b = 0; b < ctx.n_classes(); ++b) {
                        if (!t2.contains(b) || rel.table[i].contains(b)) continue;
                        if (rel.table[i].contains(ctx.or_class[a][b])) {
                            ConditionCounterexample c;
                            c.gamma_rep = i;
                            c.alpha_class = a;
                            c.beta_class = b;
                            return c;
                        }
                    }
                }
            }
            return std::nullopt;

        case ConditionId::C8:
            for (std::size_t i = 0; i < nd; ++i) {
                TheorySet holds = ctx.th(an.m(i));
                TheorySet bad = ctx.negated(holds) & rel.table[i];
                if (!bad.empty()) {
                    ConditionCounterexample c;
                    c.gamma_rep = i;
                    c.alpha_class = bad.members().front();
                    return c;
                }
            }
            return std::nullopt;

        case ConditionId::C9:
            for (std::size_t i = 0; i < nd; ++i) {
                TheorySet lhs = rel.table[i] | an.h(i);
                for (std::size_t j = 0; j < nd; ++j)
                    if (!lhs.subset_of(ctx.th(an.m(j) & an.mod_h(j) & d[i])))
                        return cex2(i, j);
            }
            return std::nullopt;

        case ConditionId::C10:
            for (std::size_t i = 0; i < nd; ++i) {
                if (!ctx.coherent_definable[i]) continue;
                bool ok = is_coherent_set(ctx.clone, an.mod_c(i)) &&
                          ctx.th_definable[i].subset_of(rel.table[i]) &&
                          ctx.th(an.mod_c(i)) == rel.table[i];
                if (!ok) {
                    ConditionCounterexample c;
                    c.gamma_rep = i;
                    return c;
                }
            }
            return std::nullopt;

        case ConditionId::C11:
            for (std::size_t i = 0; i < nd; ++i)
                if (ctx.th(an.m(i) & an.mod_h(i)) != ctx.th(d[i] & an.core_d())) {
                    ConditionCounterexample c;
                    c.gamma_rep = i;
                    return c;
                }
            return std::nullopt;

        case ConditionId::C12:
            if (!ctx.definable.contains(ctx.universe - an.core_d()))
                return ConditionCounterexample{};
            return std::nullopt;
    }
    throw error("unknown condition id");
}

}  // namespace detail

inline ConditionReport check_condition(const StructureContext& ctx, const RelationUnderTest& rel,
                                       ConditionId id) {
    if (rel.table.size() != ctx.n_definable())
        throw error("relation table does not match the definable family");
    RelationAnalysis an(ctx, rel);
    ConditionReport report;
    report.id = id;
    auto cex = detail::violation(ctx, an, rel, id);
    report.holds = !cex.has_value();
    if (cex) {
        report.counterexample = *cex;
        report.detail = condition_name(id) + " fails";
        if (cex->gamma_rep) report.detail += " at gamma=D[" + std::to_string(*cex->gamma_rep) + "]";
        if (cex->delta_rep) report.detail += ", delta=D[" + std::to_string(*cex->delta_rep) + "]";
        if (cex->alpha_class)
            report.detail += ", alpha=" + print(ctx.clone.classes[*cex->alpha_class].witness);
        if (cex->beta_class)
            report.detail += ", beta=" + print(ctx.clone.classes[*cex->beta_class].witness);
    }
    return report;
}

inline bool satisfies_all(const StructureContext& ctx, const RelationUnderTest& rel,
                          const std::vector<ConditionId>& ids) {
    RelationAnalysis an(ctx, rel);
    for (auto id : ids)
        if (detail::violation(ctx, an, rel, id)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Verification reports

struct VerifyOptions {
    std::size_t samples = 10'000;
    std::uint64_t seed = 24601;
    std::size_t relation_cap = std::size_t{1} << 20;
    std::size_t max_universe = 2;  // abstract-universe bound for mupp
};

struct VerifyReport {
    std::string proposition;
    std::string structure_desc;
    std::string mode;  // "exhaustive" or "sampled"
    std::uint64_t candidates = 0;
    std::vector<std::string> failures;
    std::uint64_t runtime_ms = 0;
    std::uint64_t seed = 0;
    std::string note;

    bool ok() const { return failures.empty(); }

    void fail(std::string what) {
        if (failures.size() < 1000) failures.push_back(std::move(what));
    }
};

namespace detail {

inline constexpr const char* kQuotientNote =
    "candidates are tabulated over definable model sets and formula classes; every relation "
    "satisfying the checked conditions and every pivot-induced relation factors through both, "
    "so the tabulation covers both sides of each equivalence";

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    std::uint64_t elapsed_ms() const {
        auto d = std::chrono::steady_clock::now() - start_;
        return static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::milliseconds>(d).count());
    }

private:
    std::chrono::steady_clock::time_point start_;
};

// Enumerates every assignment image[i] subset-of domain_mask[i]; calls fn
// with the current masks.  Returns the number of assignments visited.
template <typename Fn>
std::uint64_t for_each_subtable(const std::vector<std::uint64_t>& domain_masks, Fn&& fn) {
    std::vector<std::uint64_t> image(domain_masks.size(), 0);
    std::uint64_t count = 0;
    for (;;) {
        fn(image);
        ++count;
        std::size_t k = 0;
        for (; k < image.size(); ++k) {
            if (image[k] == domain_masks[k]) {
                image[k] = 0;
            } else {
                image[k] = ((image[k] | ~domain_masks[k]) + 1) & domain_masks[k];
                break;
            }
        }
        if (k == image.size()) break;
    }
    return count;
}

inline IndexSet random_subset(std::mt19937_64& rng, std::size_t n) {
    IndexSet out(n);
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i % 64 == 0) word = rng();
        if ((word >> (i % 64)) & 1) out.insert(i);
    }
    return out;
}

inline std::uint64_t log2_table_count(std::size_t rows, std::size_t classes) {
    return static_cast<std::uint64_t>(rows) * classes;
}

// All pivots of a small universe, in mask order.
template <typename Fn>
void for_each_pivot(std::size_t universe_size, Fn&& fn) {
    if (universe_size > 20)
        throw cap_exceeded_error("universe too large for exhaustive pivot enumeration");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << universe_size); ++mask)
        fn(IndexSet::from_mask(universe_size, mask));
}

inline std::string pivot_desc(const IndexSet& pivot) {
    return "pivot mask=" + std::to_string(pivot.to_mask());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// mupp: strong coherence <=> pivot representability.
//
// Part 0 runs over abstract universes up to options.max_universe with the
// full power set as domain, checking every choice function against a brute
// force search over all pivots.  Parts 1 and 2 run on the classical and four
// one-atom structures with the definable family as domain, checking (SC and
// DP) <=> representable by a definable pivot and (SC and UC) <=> representable
// by a pivot with definable complement.

inline VerifyReport verify_mupp(const VerifyOptions& options = {}) {
    detail::Stopwatch clock;
    VerifyReport report;
    report.proposition = "mupp";
    report.structure_desc = "abstract universes up to size " +
                            std::to_string(options.max_universe) +
                            "; classical(p); four(p)";
    report.mode = "exhaustive";
    report.seed = options.seed;
    report.note = detail::kQuotientNote;
    if (options.max_universe > 3)
        throw cap_exceeded_error("abstract universe bound must be at most 3");

    // Part 0.
    for (std::size_t n = 0; n <= options.max_universe; ++n) {
        std::vector<IndexSet> domain;
        std::vector<std::uint64_t> masks;
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
            domain.push_back(IndexSet::from_mask(n, m));
            masks.push_back(m);
        }
        report.candidates += detail::for_each_subtable(masks, [&](const auto& image_masks) {
            std::vector<IndexSet> image;
            image.reserve(image_masks.size());
            for (std::uint64_t m : image_masks) image.push_back(IndexSet::from_mask(n, m));
            ChoiceFunction mu(domain, image);
            bool sc = is_strongly_coherent(mu);

            bool representable = false;
            for (std::uint64_t pm = 0; pm < (std::uint64_t{1} << n) && !representable; ++pm) {
                IndexSet candidate = IndexSet::from_mask(n, pm);
                bool match = true;
                for (std::size_t i = 0; i < domain.size() && match; ++i)
                    match = (domain[i] & candidate) == mu.image[i];
                representable = match;
            }
            if (sc != representable)
                report.fail("universe " + std::to_string(n) +
                            ": SC and pivot representability disagree");
            auto rep = pivot_representation(mu);
            if (rep.has_value() != sc)
                report.fail("universe " + std::to_string(n) +
                            ": pivot_representation disagrees with SC");
            if (rep)
                for (std::size_t i = 0; i < domain.size(); ++i)
                    if ((domain[i] & *rep) != mu.image[i])
                        report.fail("universe " + std::to_string(n) +
                                    ": canonical pivot does not reproduce the function");
        });
    }

    // Parts 1 and 2 on one-atom semantic structures.
    for (StructureKind kind : {StructureKind::Classical, StructureKind::Four}) {
        Structure s{kind, AtomSet({"p"})};
        StructureContext ctx = make_structure_context(s);
        const auto& domain = ctx.definable.sets;
        std::vector<std::uint64_t> masks;
        for (const auto& V : domain) masks.push_back(V.to_mask());

        report.candidates += detail::for_each_subtable(masks, [&](const auto& image_masks) {
            std::vector<IndexSet> image;
            image.reserve(image_masks.size());
            for (std::uint64_t m : image_masks)
                image.push_back(IndexSet::from_mask(ctx.universe.universe_size(), m));
            ChoiceFunction mu(domain, image);
            bool sc = is_strongly_coherent(mu);
            bool dp = is_definability_preserving(mu, ctx.definable);
            bool uc = is_universe_codefinable(mu, ctx.definable);

            bool rep_dp = false;
            for (const auto& candidate : ctx.definable.sets) {
                bool match = true;
                for (std::size_t i = 0; i < domain.size() && match; ++i)
                    match = (domain[i] & candidate) == mu.image[i];
                if (match) {
                    rep_dp = true;
                    break;
                }
            }
            bool rep_uc = false;
            detail::for_each_pivot(ctx.universe.universe_size(), [&](const IndexSet& candidate) {
                if (rep_uc || !ctx.definable.contains(ctx.universe - candidate)) return;
                bool match = true;
                for (std::size_t i = 0; i < domain.size() && match; ++i)
                    match = (domain[i] & candidate) == mu.image[i];
                rep_uc = match;
            });

            if ((sc && dp) != rep_dp)
                report.fail(s.describe() + ": SC+DP and definable-pivot representability disagree");
            if ((sc && uc) != rep_uc)
                report.fail(s.describe() +
                            ": SC+UC and codefinable-pivot representability disagree");
        });
    }

    report.runtime_ms = clock.elapsed_ms();
    return report;
}

// ---------------------------------------------------------------------------
// Shared machinery for the representation oracles.

namespace detail {

struct RepParams {
    std::string proposition;
    Mode mode = Mode::Plain;
    std::vector<ConditionId> conditions;
    // Which pivots are expected to induce condition-passing relations.
    std::function<bool(const StructureContext&, const IndexSet&)> eligible;
    // Reconstructs the relation from a passing table and reports problems.
    std::function<void(const StructureContext&, const RelationUnderTest&, const std::string&,
                       VerifyReport&)>
        reconstruct;
};

inline RelationUnderTest table_from_rows(std::vector<TheorySet> rows) {
    RelationUnderTest r;
    r.table = std::move(rows);
    return r;
}

// Forward + equivalence over the whole pivot space, then backward over
// either the full table space (when it fits the cap) or the structured
// family plus seeded random samples.
inline VerifyReport run_rep_oracle(const StructureContext& ctx, const RepParams& params,
                                   const VerifyOptions& options) {
    Stopwatch clock;
    VerifyReport report;
    report.proposition = params.proposition;
    report.structure_desc = ctx.structure.describe();
    report.seed = options.seed;
    report.note = kQuotientNote;

    const std::size_t nv = ctx.universe.universe_size();
    const std::size_t nd = ctx.n_definable();
    const std::size_t nc = ctx.n_classes();

    // Tables induced by eligible pivots; these are the relations the
    // conditions are supposed to carve out.
    std::set<std::vector<TheorySet>> eligible_tables;
    for_each_pivot(nv, [&](const IndexSet& pivot) {
        if (params.eligible(ctx, pivot))
            eligible_tables.insert(relation_from_pivot(ctx, pivot, params.mode).table);
    });

    // Forward: every eligible pivot's relation passes every condition.
    for_each_pivot(nv, [&](const IndexSet& pivot) {
        if (!params.eligible(ctx, pivot)) return;
        ++report.candidates;
        RelationUnderTest rel = relation_from_pivot(ctx, pivot, params.mode);
        RelationAnalysis an(ctx, rel);
        for (auto id : params.conditions)
            if (detail::violation(ctx, an, rel, id))
                report.fail(pivot_desc(pivot) + ": " + condition_name(id) +
                            " fails on an induced relation");
    });

    // Equivalence over the full pivot space: a pivot's relation passes the
    // conditions exactly when some eligible pivot induces the same relation.
    for_each_pivot(nv, [&](const IndexSet& pivot) {
        ++report.candidates;
        RelationUnderTest rel = relation_from_pivot(ctx, pivot, params.mode);
        bool passes = satisfies_all(ctx, rel, params.conditions);
        bool induced = eligible_tables.count(rel.table) > 0;
        if (passes != induced)
            report.fail(pivot_desc(pivot) + ": condition verdict (" +
                        (passes ? "pass" : "fail") + ") disagrees with eligibility");
    });

    auto consider = [&](const RelationUnderTest& rel, const std::string& label) {
        ++report.candidates;
        bool passes = satisfies_all(ctx, rel, params.conditions);
        if (passes) params.reconstruct(ctx, rel, label, report);
        return passes;
    };

    const std::uint64_t log_tables = log2_table_count(nd, nc);
    if (log_tables <= 62 && (std::uint64_t{1} << log_tables) <= options.relation_cap) {
        // Full backward enumeration over every candidate table.
        report.mode = "exhaustive";
        std::vector<std::uint64_t> row_domain(nd, (std::uint64_t{1} << nc) - 1);
        std::uint64_t counter = 0;
        std::uint64_t passer_count = 0;
        for_each_subtable(row_domain, [&](const auto& row_masks) {
            std::vector<TheorySet> rows;
            rows.reserve(nd);
            for (std::uint64_t m : row_masks) rows.push_back(IndexSet::from_mask(nc, m));
            RelationUnderTest rel = table_from_rows(std::move(rows));
            bool passes = consider(rel, "table #" + std::to_string(counter));
            if (passes) ++passer_count;
            bool induced = eligible_tables.count(rel.table) > 0;
            if (passes != induced)
                report.fail("table #" + std::to_string(counter) +
                            ": condition verdict disagrees with the induced-table set");
            ++counter;
        });
        if (passer_count != eligible_tables.size())
            report.fail("passing-table count " + std::to_string(passer_count) +
                        " differs from induced-table count " +
                        std::to_string(eligible_tables.size()));
    } else {
        report.mode = "sampled";
        report.note += "; sampled completeness: backward direction checked on the structured "
                       "family and seeded random tables";

        // Structured family: rows Th(W) or Th^d(W) for W inside the premise
        // models, enumerated fully when small and sampled otherwise.
        std::vector<std::uint64_t> domain_masks;
        std::size_t total_bits = 0;
        for (const auto& V : ctx.definable.sets) {
            domain_masks.push_back(V.to_mask());
            total_bits += V.count();
        }
        auto rows_from_subsets = [&](const std::vector<std::uint64_t>& masks) {
            std::vector<TheorySet> rows;
            rows.reserve(nd);
            for (std::size_t i = 0; i < nd; ++i) {
                IndexSet w = IndexSet::from_mask(nv, masks[i]);
                rows.push_back(params.mode == Mode::Plain ? ctx.th(w) : ctx.th_d(w));
            }
            return rows;
        };
        std::mt19937_64 rng(options.seed);
        if (total_bits <= 20) {
            std::uint64_t counter = 0;
            for_each_subtable(domain_masks, [&](const auto& masks) {
                consider(table_from_rows(rows_from_subsets(masks)),
                         "structured #" + std::to_string(counter));
                ++counter;
            });
        } else {
            for (std::size_t k = 0; k < options.samples / 2; ++k) {
                std::vector<std::uint64_t> masks(nd);
                for (std::size_t i = 0; i < nd; ++i) masks[i] = rng() & domain_masks[i];
                consider(table_from_rows(rows_from_subsets(masks)),
                         "structured sample #" + std::to_string(k));
            }
        }

        // Seeded random tables over the whole row space.
        for (std::size_t k = 0; k < options.samples; ++k) {
            std::vector<TheorySet> rows;
            rows.reserve(nd);
            for (std::size_t i = 0; i < nd; ++i) rows.push_back(random_subset(rng, nc));
            consider(table_from_rows(std::move(rows)), "random sample #" + std::to_string(k));
        }
    }

    report.runtime_ms = clock.elapsed_ms();
    return report;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// rep-dp: DP pivotal relations are exactly the relations satisfying
// (|~0)..(|~3); the reconstruction maps row models to Mod(C(row)).

inline VerifyReport verify_rep_dp(const StructureContext& ctx, const VerifyOptions& options = {}) {
    detail::RepParams params;
    params.proposition = "rep-dp";
    params.mode = Mode::Plain;
    params.conditions = {ConditionId::C0, ConditionId::C1, ConditionId::C2, ConditionId::C3};
    params.eligible = [](const StructureContext& c, const IndexSet& pivot) {
        return c.definable.contains(pivot);
    };
    params.reconstruct = [](const StructureContext& c, const RelationUnderTest& rel,
                            const std::string& label, VerifyReport& report) {
        std::vector<IndexSet> image;
        image.reserve(c.n_definable());
        for (std::size_t i = 0; i < c.n_definable(); ++i) {
            image.push_back(c.mod_of(rel.table[i]));
            if (!image.back().subset_of(c.definable.sets[i])) {
                report.fail(label + ": reconstructed function is not a choice function");
                return;
            }
            if (!c.definable.contains(image.back())) {
                report.fail(label + ": reconstructed choice function is not DP");
                return;
            }
        }
        ChoiceFunction mu(c.definable.sets, std::move(image));
        if (!is_strongly_coherent(mu))
            report.fail(label + ": reconstructed choice function is not SC");
        for (std::size_t i = 0; i < c.n_definable(); ++i)
            if (c.th(mu.image[i]) != rel.table[i]) {
                report.fail(label + ": reconstruction does not regenerate the relation");
                return;
            }
    };
    return detail::run_rep_oracle(ctx, params, options);
}

// ---------------------------------------------------------------------------
// rep-general: pivotal relations are exactly the (|~4) relations, and UC
// pivotal relations the (|~4)+(|~5) ones; reconstruction goes through nu of
// the induced table function.

inline VerifyReport verify_rep_general(const StructureContext& ctx,
                                       const VerifyOptions& options = {}) {
    auto nu_reconstruct = [](bool check_uc) {
        return [check_uc](const StructureContext& c, const RelationUnderTest& rel,
                          const std::string& label, VerifyReport& report) {
            SetFunction f;
            f.domain = c.definable.sets;
            f.image.reserve(c.n_definable());
            for (std::size_t i = 0; i < c.n_definable(); ++i)
                f.image.push_back(c.mod_of(rel.table[i]));
            ChoiceFunction nf = nu(f);
            if (!is_strongly_coherent(nf))
                report.fail(label + ": nu is not strongly coherent");
            for (std::size_t i = 0; i < c.n_definable(); ++i)
                if (c.th(nf.image[i]) != rel.table[i]) {
                    report.fail(label + ": nu does not regenerate the relation");
                    return;
                }
            if (check_uc && !is_universe_codefinable(nf, c.definable))
                report.fail(label + ": nu is not UC for a (|~5) relation");
        };
    };

    detail::RepParams part0;
    part0.proposition = "rep-general";
    part0.mode = Mode::Plain;
    part0.conditions = {ConditionId::C4};
    part0.eligible = [](const StructureContext&, const IndexSet&) { return true; };
    part0.reconstruct = nu_reconstruct(false);
    VerifyReport report = detail::run_rep_oracle(ctx, part0, options);

    ctx.require("A0");  // the UC part needs it
    detail::RepParams part1;
    part1.proposition = "rep-general";
    part1.mode = Mode::Plain;
    part1.conditions = {ConditionId::C4, ConditionId::C5};
    part1.eligible = [](const StructureContext& c, const IndexSet& pivot) {
        return c.definable.contains(c.universe - pivot);
    };
    part1.reconstruct = nu_reconstruct(true);
    VerifyReport uc_report = detail::run_rep_oracle(ctx, part1, options);

    report.candidates += uc_report.candidates;
    for (auto& f : uc_report.failures) report.fail("UC part: " + f);
    report.runtime_ms += uc_report.runtime_ms;
    return report;
}

// ---------------------------------------------------------------------------
// Discriminative cases.

namespace detail {

inline bool pivot_is_cp(const StructureContext& ctx, const IndexSet& pivot) {
    for (std::size_t i = 0; i < ctx.n_definable(); ++i)
        if (ctx.coherent_definable[i] &&
            !is_coherent_set(ctx.clone, ctx.definable.sets[i] & pivot))
            return false;
    return true;
}

// mu(Mod gamma) = Mod(gamma + C(gamma) + H(gamma)), the DP reconstruction.
inline std::vector<IndexSet> h_tower_images(const StructureContext& ctx,
                                            const RelationUnderTest& rel) {
    RelationAnalysis an(ctx, rel);
    std::vector<IndexSet> image;
    image.reserve(ctx.n_definable());
    for (std::size_t i = 0; i < ctx.n_definable(); ++i)
        image.push_back(an.m(i) & an.mod_h(i));
    return image;
}

}  // namespace detail

// rep-disc-dp, part 0: CP DP pivotal-discriminative <=> (|~0)(|~6)..(|~10);
// part 1 (needs A2): DP pivotal-discriminative <=> (|~0)(|~6)..(|~9).
inline VerifyReport verify_rep_disc_dp(const StructureContext& ctx, int part,
                                       const VerifyOptions& options = {}) {
    ctx.require("A3");
    ctx.require("A1");
    if (part == 1) ctx.require("A2");
    if (part != 0 && part != 1) throw error("rep-disc-dp has parts 0 and 1");

    detail::RepParams params;
    params.proposition = "rep-disc-dp";
    params.mode = Mode::Discriminative;
    params.conditions = {ConditionId::C0, ConditionId::C6, ConditionId::C7, ConditionId::C8,
                         ConditionId::C9};
    if (part == 0) params.conditions.push_back(ConditionId::C10);
    const bool need_cp = part == 0;
    params.eligible = [need_cp](const StructureContext& c, const IndexSet& pivot) {
        return c.definable.contains(pivot) && (!need_cp || detail::pivot_is_cp(c, pivot));
    };
    params.reconstruct = [need_cp](const StructureContext& c, const RelationUnderTest& rel,
                                   const std::string& label, VerifyReport& report) {
        std::vector<IndexSet> image = detail::h_tower_images(c, rel);
        for (std::size_t i = 0; i < c.n_definable(); ++i)
            if (!c.definable.contains(image[i])) {
                report.fail(label + ": H-tower reconstruction is not DP");
                return;
            }
        ChoiceFunction mu(c.definable.sets, image);
        if (!is_strongly_coherent(mu))
            report.fail(label + ": H-tower reconstruction is not SC");
        if (need_cp && !is_coherency_preserving(mu, c.clone))
            report.fail(label + ": H-tower reconstruction is not CP");
        for (std::size_t i = 0; i < c.n_definable(); ++i)
            if (c.th_d(mu.image[i]) != rel.table[i]) {
                report.fail(label + ": H-tower reconstruction does not regenerate the relation");
                return;
            }
    };
    VerifyReport report = detail::run_rep_oracle(ctx, params, options);
    report.proposition += part == 0 ? " part 0" : " part 1";
    return report;
}

// rep-disc parts:
//   0 (CP):            (|~0)(|~6)(|~7)(|~8)(|~10)(|~11)
//   1 (CP UC, +A0):    part 0 plus (|~12)
//   2 (+A2):           (|~0)(|~6)(|~7)(|~8)(|~11)
//   3 (UC, +A0 +A2):   part 2 plus (|~12)
inline VerifyReport verify_rep_disc(const StructureContext& ctx, int part,
                                    const VerifyOptions& options = {}) {
    ctx.require("A3");
    ctx.require("A1");
    if (part == 1 || part == 3) ctx.require("A0");
    if (part == 2 || part == 3) ctx.require("A2");
    if (part < 0 || part > 3) throw error("rep-disc has parts 0 to 3");

    const bool need_cp = part == 0 || part == 1;
    const bool need_uc = part == 1 || part == 3;

    detail::RepParams params;
    params.proposition = "rep-disc";
    params.mode = Mode::Discriminative;
    params.conditions = {ConditionId::C0, ConditionId::C6, ConditionId::C7, ConditionId::C8};
    if (need_cp) params.conditions.push_back(ConditionId::C10);
    params.conditions.push_back(ConditionId::C11);
    if (need_uc) params.conditions.push_back(ConditionId::C12);

    params.eligible = [need_cp, need_uc](const StructureContext& c, const IndexSet& pivot) {
        if (need_cp && !detail::pivot_is_cp(c, pivot)) return false;
        if (need_uc && !c.definable.contains(c.universe - pivot)) return false;
        return true;
    };
    params.reconstruct = [need_cp, need_uc](const StructureContext& c,
                                            const RelationUnderTest& rel,
                                            const std::string& label, VerifyReport& report) {
        SetFunction f;
        f.domain = c.definable.sets;
        f.image = detail::h_tower_images(c, rel);
        ChoiceFunction nf = nu(f);
        if (!is_strongly_coherent(nf)) report.fail(label + ": nu is not strongly coherent");
        if (need_cp && !is_coherency_preserving(nf, c.clone))
            report.fail(label + ": nu is not CP");
        if (need_uc && !is_universe_codefinable(nf, c.definable))
            report.fail(label + ": nu is not UC");
        for (std::size_t i = 0; i < c.n_definable(); ++i)
            if (c.th_d(nf.image[i]) != rel.table[i]) {
                report.fail(label + ": nu does not regenerate the relation");
                return;
            }
    };
    VerifyReport report = detail::run_rep_oracle(ctx, params, options);
    report.proposition += " part " + std::to_string(part);
    return report;
}

// ---------------------------------------------------------------------------
// xlogic: UC pivotal relations coincide with closed pertinence relations.
// Exhaustive over every pertinent theory Th(W) and every UC pivot; verdicts
// are compared on every (definable representative, class) pair.

inline VerifyReport verify_xlogic(const StructureContext& ctx, const VerifyOptions& options = {}) {
    ctx.require("A4");
    detail::Stopwatch clock;
    VerifyReport report;
    report.proposition = "xlogic";
    report.structure_desc = ctx.structure.describe();
    report.mode = "exhaustive";
    report.seed = options.seed;
    report.note = detail::kQuotientNote;

    const std::size_t nv = ctx.universe.universe_size();

    auto pertinence_verdict = [&](const TheorySet& e, std::size_t i, std::size_t a) {
        ValuationSet with_alpha = ctx.definable.sets[i] & ctx.clone.models(a);
        bool ok = true;
        e.for_each([&](std::size_t g) {
            if (with_alpha.subset_of(ctx.clone.models(g)) &&
                !ctx.definable.sets[i].subset_of(ctx.clone.models(g)))
                ok = false;
        });
        return ok;
    };
    auto pivotal_verdict = [&](const IndexSet& pivot, std::size_t i, std::size_t a) {
        return (ctx.definable.sets[i] & pivot).subset_of(ctx.clone.models(a));
    };
    auto relations_match = [&](const TheorySet& e, const IndexSet& pivot, std::string label) {
        for (std::size_t i = 0; i < ctx.n_definable(); ++i)
            for (std::size_t a = 0; a < ctx.n_classes(); ++a)
                if (pertinence_verdict(e, i, a) != pivotal_verdict(pivot, i, a)) {
                    report.fail(label + ": verdicts differ at gamma=D[" + std::to_string(i) +
                                "], alpha=" + print(ctx.clone.classes[a].witness));
                    return;
                }
    };

    // Every closed pertinent theory, via Th(W) over all W.
    detail::for_each_pivot(nv, [&](const IndexSet& w) {
        ++report.candidates;
        TheorySet e = ctx.th(w);
        if (ctx.th(ctx.mod_of(e)) != e) {
            report.fail("W mask=" + std::to_string(w.to_mask()) + ": Th(W) is not closed");
            return;
        }
        IndexSet pivot = ctx.universe - ctx.mod_of(e);
        if (!ctx.definable.contains(ctx.universe - pivot)) {
            report.fail("W mask=" + std::to_string(w.to_mask()) +
                        ": derived pivot is not universe-codefinable");
            return;
        }
        relations_match(e, pivot, "W mask=" + std::to_string(w.to_mask()));
    });

    // Conversely, every UC pivot arises from the pertinent theory of its
    // complement.
    detail::for_each_pivot(nv, [&](const IndexSet& pivot) {
        if (!ctx.definable.contains(ctx.universe - pivot)) return;
        ++report.candidates;
        TheorySet e = ctx.th(ctx.universe - pivot);
        if (ctx.mod_of(e) != ctx.universe - pivot) {
            report.fail(detail::pivot_desc(pivot) +
                        ": pertinent theory does not recover the complement");
            return;
        }
        relations_match(e, pivot, detail::pivot_desc(pivot));
    });

    report.runtime_ms = clock.elapsed_ms();
    return report;
}

}  // namespace pivotal
