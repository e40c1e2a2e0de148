// pivotal — consequence relations over classical, four-valued, and
// three-valued propositional semantics, with exhaustive verification of the
// equivalences that classify them.
//
// Subcommands: parse, models, entail, theory, check-assumptions, clone-info,
// verify.  Exit status: 0 for a true verdict or a clean run, 1 for a false
// verdict or a verification run with failures, 2 for any error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pivotal/characterize.hpp"
#include "pivotal/consequence.hpp"
#include "pivotal/files.hpp"

using json = nlohmann::ordered_json;
using namespace pivotal;

namespace {

struct RunConfig {
    std::string kind = "classical";
    std::vector<std::string> atoms;
    std::size_t universe_cap = kDefaultUniverseCap;
    std::size_t clone_cap = kDefaultCloneCap;
    std::size_t relation_cap = std::size_t{1} << 20;
    std::size_t samples = 10'000;
    std::uint64_t seed = 24601;
    std::string format = "text";

    Structure structure() const {
        auto k = structure_kind_from_string(kind);
        if (!k) throw error("unknown structure kind: " + kind);
        return Structure{*k, AtomSet(atoms)};
    }

    VerifyOptions verify_options() const {
        VerifyOptions o;
        o.samples = samples;
        o.seed = seed;
        o.relation_cap = relation_cap;
        return o;
    }
};

void apply_env(RunConfig& cfg) {
    auto read = [](const char* name, auto& value) {
        if (const char* v = std::getenv(name)) value = std::stoull(v);
    };
    read("PIVOTAL_UNIVERSE_CAP", cfg.universe_cap);
    read("PIVOTAL_CLONE_CAP", cfg.clone_cap);
    read("PIVOTAL_RELATION_CAP", cfg.relation_cap);
    read("PIVOTAL_SAMPLES", cfg.samples);
    read("PIVOTAL_SEED", cfg.seed);
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw file_error("cannot open config file: " + path);
    char first = 0;
    in >> std::ws;
    first = static_cast<char>(in.peek());
    if (first == '{') {
        json j = json::parse(in);
        if (j.contains("kind")) cfg.kind = j["kind"].get<std::string>();
        if (j.contains("atoms")) cfg.atoms = j["atoms"].get<std::vector<std::string>>();
        if (j.contains("caps")) {
            const auto& caps = j["caps"];
            if (caps.contains("universe")) cfg.universe_cap = caps["universe"].get<std::size_t>();
            if (caps.contains("clone")) cfg.clone_cap = caps["clone"].get<std::size_t>();
            if (caps.contains("relation")) cfg.relation_cap = caps["relation"].get<std::size_t>();
            if (caps.contains("samples")) cfg.samples = caps["samples"].get<std::size_t>();
            if (caps.contains("seed")) cfg.seed = caps["seed"].get<std::uint64_t>();
        }
        return;
    }
    ConfigText text = read_config_text(in);
    if (auto* v = text.find("kind")) cfg.kind = *v;
    if (auto* v = text.find("atoms")) cfg.atoms = split_csv(*v);
    if (auto* v = text.find("universe_cap")) cfg.universe_cap = std::stoull(*v);
    if (auto* v = text.find("clone_cap")) cfg.clone_cap = std::stoull(*v);
    if (auto* v = text.find("relation_cap")) cfg.relation_cap = std::stoull(*v);
    if (auto* v = text.find("samples")) cfg.samples = std::stoull(*v);
    if (auto* v = text.find("seed")) cfg.seed = std::stoull(*v);
}

// A premise file overrides any inline premises.
FormulaList parse_gamma(const std::string& inline_text, const std::string& file) {
    if (!file.empty()) return read_formula_file(file);
    FormulaList gamma;
    for (const auto& part : split_csv(inline_text)) gamma.push_back(parse(part));
    return gamma;
}

json report_to_json(const VerifyReport& r) {
    json j;
    j["proposition"] = r.proposition;
    j["structure"] = r.structure_desc;
    j["mode"] = r.mode;
    j["candidates"] = r.candidates;
    j["failures"] = r.failures;
    j["runtime_ms"] = r.runtime_ms;
    j["seed"] = r.seed;
    j["note"] = r.note;
    return j;
}

std::string describe_counterexample(const Structure& s, const AssumptionEntry& e) {
    if (!e.counterexample) return "";
    const auto& c = *e.counterexample;
    std::string out = c.detail;
    if (c.valuation)
        out += "; valuation " + print_valuation(s, valuation_at(s, *c.valuation));
    if (c.gamma_models) {
        out += "; Mod(gamma) = {";
        bool first = true;
        c.gamma_models->for_each([&](std::size_t i) {
            if (!first) out += "; ";
            out += print_valuation(s, valuation_at(s, i));
            first = false;
        });
        out += "}";
    }
    if (c.alpha) out += "; alpha = " + print(*c.alpha);
    if (c.beta) out += "; beta = " + print(*c.beta);
    return out;
}

// ---------------------------------------------------------------------------
// Subcommand bodies.  Each returns the process exit code.

int cmd_parse(const RunConfig& cfg, const std::vector<std::string>& inputs,
              const std::string& file) {
    std::vector<std::string> texts = inputs;
    if (!file.empty()) {
        auto in = std::ifstream(file);
        if (!in) throw file_error("cannot open file: " + file);
        for (const auto& f : read_formula_lines(in)) texts.push_back(print(f));
    }
    json out = json::array();
    for (const auto& text : texts) {
        Formula f = parse(text);
        if (cfg.format == "json")
            out.push_back({{"input", text}, {"canonical", print(f)}});
        else
            std::cout << print(f) << "\n";
    }
    if (cfg.format == "json") std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_models(const RunConfig& cfg, const std::string& gamma_text,
               const std::string& gamma_file) {
    Structure s = cfg.structure();
    FormulaList gamma = parse_gamma(gamma_text, gamma_file);
    ValuationSet m = mod(s, gamma, cfg.universe_cap);
    if (cfg.format == "json") {
        json j;
        j["structure"] = s.describe();
        j["count"] = m.count();
        json list = json::array();
        m.for_each([&](std::size_t i) { list.push_back(print_valuation(s, valuation_at(s, i))); });
        j["models"] = list;
        if (m.empty()) j["note"] = "empty (A0)";
        std::cout << j.dump(2) << "\n";
    } else {
        m.for_each([&](std::size_t i) {
            std::cout << print_valuation(s, valuation_at(s, i)) << "\n";
        });
        if (m.empty()) std::cout << "# empty (A0)\n";
    }
    return 0;
}

int cmd_entail(const RunConfig& cfg, const std::string& mode, const std::string& gamma_text,
               const std::string& gamma_file, const std::string& alpha_text,
               const std::string& pivot_file, const std::string& pertinence_file,
               const std::string& batch_file) {
    Structure s = cfg.structure();

    std::optional<ValuationSet> pivot;
    if (!pivot_file.empty()) pivot = read_pivot_file(s, pivot_file, cfg.universe_cap);

    std::optional<Clone> clone;
    std::optional<PertinenceRelation> pertinence;
    if (mode == "xlogic") {
        clone = compute_clone(s, cfg.clone_cap, cfg.universe_cap);
        if (pertinence_file.empty()) throw error("xlogic mode requires --pertinence");
        pertinence = make_pertinence_relation(*clone, read_formula_file(pertinence_file));
    }

    auto verdict = [&](const FormulaList& gamma, const Formula& alpha) {
        if (mode == "basic") return entails_basic(s, gamma, alpha, cfg.universe_cap);
        if (mode == "pivotal" || mode == "plain" || mode == "discriminative") {
            if (!pivot) throw error(mode + " mode requires --pivot");
            PivotalRelation rel{s, *pivot,
                                mode == "discriminative" ? Mode::Discriminative : Mode::Plain};
            return rel.entails(gamma, alpha, cfg.universe_cap);
        }
        if (mode == "xlogic") return entails_pertinence(*pertinence, gamma, alpha, *clone);
        throw error("unknown mode: " + mode);
    };

    if (!batch_file.empty()) {
        auto in = std::ifstream(batch_file);
        if (!in) throw file_error("cannot open batch file: " + batch_file);
        std::string dir = batch_file.substr(0, batch_file.find_last_of('/') + 1);
        std::string line;
        json results = json::array();
        while (std::getline(in, line)) {
            std::string significant = line.substr(0, line.find('#'));
            auto sep = significant.find("::");
            if (sep == std::string::npos) continue;
            std::string gfile = split_csv(significant.substr(0, sep)).at(0);
            std::string alpha = significant.substr(sep + 2);
            FormulaList gamma = read_formula_file(dir + gfile);
            bool v = verdict(gamma, parse(alpha));
            if (cfg.format == "json")
                results.push_back({{"gamma_file", gfile},
                                   {"alpha", print(parse(alpha))},
                                   {"verdict", v}});
            else
                std::cout << gfile << " :: " << print(parse(alpha)) << " -> "
                          << (v ? "true" : "false") << "\n";
        }
        if (cfg.format == "json") std::cout << results.dump(2) << "\n";
        return 0;
    }

    FormulaList gamma = parse_gamma(gamma_text, gamma_file);
    bool v = verdict(gamma, parse(alpha_text));
    if (cfg.format == "json")
        std::cout << json{{"verdict", v}}.dump(2) << "\n";
    else
        std::cout << (v ? "true" : "false") << "\n";
    return v ? 0 : 1;
}

int cmd_theory(const RunConfig& cfg, const std::string& gamma_text,
               const std::string& gamma_file, const std::string& pivot_file,
               const std::string& mode) {
    Structure s = cfg.structure();
    Clone clone = compute_clone(s, cfg.clone_cap, cfg.universe_cap);
    FormulaList gamma = parse_gamma(gamma_text, gamma_file);
    ValuationSet pivot = pivot_file.empty()
                             ? ValuationSet::full(clone.universe_size())
                             : read_pivot_file(s, pivot_file, cfg.universe_cap);
    PivotalRelation rel{s, pivot,
                        mode == "discriminative" ? Mode::Discriminative : Mode::Plain};
    TheorySet t = consequence_set(rel, gamma, clone);
    if (cfg.format == "json") {
        json list = json::array();
        t.for_each([&](std::size_t g) { list.push_back(print(clone.classes[g].witness)); });
        std::cout << json{{"structure", s.describe()}, {"classes", t.count()}, {"witnesses", list}}
                         .dump(2)
                  << "\n";
    } else {
        t.for_each([&](std::size_t g) { std::cout << print(clone.classes[g].witness) << "\n"; });
    }
    return 0;
}

int cmd_check_assumptions(const RunConfig& cfg) {
    Structure s = cfg.structure();
    Clone clone = compute_clone(s, cfg.clone_cap, cfg.universe_cap);
    AssumptionReport report = check_assumptions(clone);
    if (cfg.format == "json") {
        json list = json::array();
        for (const auto& e : report.entries) {
            json j{{"assumption", e.id}, {"holds", e.holds}};
            if (e.counterexample) j["counterexample"] = describe_counterexample(s, e);
            list.push_back(j);
        }
        std::cout << json{{"structure", s.describe()}, {"assumptions", list}}.dump(2) << "\n";
    } else {
        std::cout << s.describe() << "\n";
        for (const auto& e : report.entries) {
            std::cout << "  " << e.id << "  " << (e.holds ? "holds" : "fails");
            if (e.counterexample) std::cout << "  [" << describe_counterexample(s, e) << "]";
            std::cout << "\n";
        }
    }
    return 0;
}

int cmd_clone_info(const RunConfig& cfg) {
    Structure s = cfg.structure();
    Clone clone = compute_clone(s, cfg.clone_cap, cfg.universe_cap);
    json j;
    j["structure"] = s.describe();
    j["universe"] = clone.universe_size();
    j["classes"] = clone.size();
    j["complete"] = clone.complete;
    if (clone.complete) {
        DefinableFamily d = definable_family(clone);
        j["definable_sets"] = d.size();
        std::size_t coherent = 0;
        for (const auto& v : d.sets)
            if (is_coherent_set(clone, v)) ++coherent;
        j["coherent_definable_sets"] = coherent;
    }
    if (cfg.format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& [key, value] : j.items())
            std::cout << key << ": " << value << "\n";
    }
    return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& proposition, int part,
               std::size_t max_universe, const std::string& out_path) {
    VerifyOptions options = cfg.verify_options();
    options.max_universe = max_universe;

    VerifyReport report;
    if (proposition == "mupp") {
        report = verify_mupp(options);
    } else {
        StructureContext ctx = make_structure_context(cfg.structure(), cfg.clone_cap,
                                                      cfg.universe_cap);
        if (proposition == "rep-dp")
            report = verify_rep_dp(ctx, options);
        else if (proposition == "rep-general")
            report = verify_rep_general(ctx, options);
        else if (proposition == "rep-disc-dp")
            report = verify_rep_disc_dp(ctx, part, options);
        else if (proposition == "rep-disc")
            report = verify_rep_disc(ctx, part, options);
        else if (proposition == "xlogic")
            report = verify_xlogic(ctx, options);
        else
            throw error("unknown proposition: " + proposition);
    }

    json j = report_to_json(report);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw file_error("cannot write report: " + out_path);
        out << j.dump(2) << "\n";
    } else {
        std::cout << j.dump(2) << "\n";
    }
    std::cerr << report.proposition << " [" << report.structure_desc << "] " << report.mode
              << ", " << report.candidates << " candidates, " << report.failures.size()
              << " failures, " << report.runtime_ms << " ms\n";
    return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pivotal consequence relations over classical, four-valued, and "
                 "three-valued semantics"};
    app.require_subcommand(1);

    RunConfig cfg;
    apply_env(cfg);

    std::string config_file;
    auto add_common = [&](CLI::App* sub, bool with_structure = true) {
        sub->add_option("--config", config_file, "config file (key=value lines or JSON)");
        if (with_structure) {
            sub->add_option("--structure", cfg.kind, "classical, four, or j3");
            sub->add_option("--atoms", cfg.atoms, "atom names in order")->delimiter(',');
        }
        sub->add_option("--universe-cap", cfg.universe_cap, "largest enumerable universe");
        sub->add_option("--clone-cap", cfg.clone_cap, "largest clone to close");
        sub->add_option("--relation-cap", cfg.relation_cap,
                        "largest relation space to enumerate in full");
        sub->add_option("--samples", cfg.samples, "random tables per sampled run");
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--format", cfg.format, "text or json")
            ->check(CLI::IsMember({"text", "json"}));
    };

    // parse
    auto* sub_parse = app.add_subcommand("parse", "parse formulas and print canonical forms");
    std::vector<std::string> parse_inputs;
    std::string parse_file;
    sub_parse->add_option("formulas", parse_inputs, "formulas to parse");
    sub_parse->add_option("--file", parse_file, "formula file");
    add_common(sub_parse, false);

    // models
    auto* sub_models = app.add_subcommand("models", "list the models of a premise set");
    std::string gamma_text, gamma_file;
    sub_models->add_option("--gamma", gamma_text, "comma-separated premises");
    sub_models->add_option("--gamma-file", gamma_file, "premise formula file");
    add_common(sub_models);

    // entail
    auto* sub_entail = app.add_subcommand("entail", "decide a consequence query");
    std::string mode = "basic", alpha_text, pivot_file, pertinence_file, batch_file;
    sub_entail->add_option("--mode", mode, "basic, pivotal/plain, discriminative, or xlogic")
        ->check(CLI::IsMember({"basic", "pivotal", "plain", "discriminative", "xlogic"}));
    sub_entail->add_option("--gamma", gamma_text, "comma-separated premises");
    sub_entail->add_option("--gamma-file", gamma_file, "premise formula file");
    sub_entail->add_option("--alpha", alpha_text, "conclusion formula");
    sub_entail->add_option("--pivot", pivot_file, "pivot file");
    sub_entail->add_option("--pertinence", pertinence_file, "pertinent formula file");
    sub_entail->add_option("--batch", batch_file, "batch file: gamma_file :: alpha per line");
    add_common(sub_entail);

    // theory
    auto* sub_theory = app.add_subcommand("theory", "list concluded class witnesses");
    std::string theory_mode = "plain";
    sub_theory->add_option("--gamma", gamma_text, "comma-separated premises");
    sub_theory->add_option("--gamma-file", gamma_file, "premise formula file");
    sub_theory->add_option("--pivot", pivot_file, "pivot file (defaults to the full universe)");
    sub_theory->add_option("--mode", theory_mode, "plain or discriminative")
        ->check(CLI::IsMember({"plain", "discriminative"}));
    add_common(sub_theory);

    // check-assumptions
    auto* sub_assume = app.add_subcommand("check-assumptions",
                                          "report which of A0..A4 the structure satisfies");
    add_common(sub_assume);

    // clone-info
    auto* sub_clone = app.add_subcommand("clone-info", "report quotient sizes");
    add_common(sub_clone);

    // verify
    auto* sub_verify = app.add_subcommand("verify", "run an exhaustive verification");
    std::string proposition;
    int part = 0;
    std::size_t max_universe = 2;
    std::string out_path;
    sub_verify
        ->add_option("proposition", proposition,
                     "mupp, rep-dp, rep-general, rep-disc-dp, rep-disc, or xlogic")
        ->required()
        ->check(CLI::IsMember({"mupp", "rep-dp", "rep-general", "rep-disc-dp", "rep-disc",
                               "xlogic"}));
    sub_verify->add_option("--part", part, "proposition part where applicable");
    sub_verify->add_option("--max-universe", max_universe, "abstract universe bound for mupp");
    sub_verify->add_option("--out", out_path, "write the JSON report here");
    add_common(sub_verify);

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_file.empty()) {
            // Precedence: explicit flags > config file > environment > defaults.
            CLI::App* active = app.get_subcommands().front();
            auto was_set = [&](const char* name) {
                auto* opt = active->get_option_no_throw(name);
                return opt && opt->count() > 0;
            };
            RunConfig from_file;
            apply_env(from_file);
            apply_config_file(from_file, config_file);
            if (!was_set("--structure")) cfg.kind = from_file.kind;
            if (!was_set("--atoms")) cfg.atoms = from_file.atoms;
            if (!was_set("--universe-cap")) cfg.universe_cap = from_file.universe_cap;
            if (!was_set("--clone-cap")) cfg.clone_cap = from_file.clone_cap;
            if (!was_set("--relation-cap")) cfg.relation_cap = from_file.relation_cap;
            if (!was_set("--samples")) cfg.samples = from_file.samples;
            if (!was_set("--seed")) cfg.seed = from_file.seed;
        }

        if (sub_parse->parsed()) return cmd_parse(cfg, parse_inputs, parse_file);
        if (sub_models->parsed()) return cmd_models(cfg, gamma_text, gamma_file);
        if (sub_entail->parsed())
            return cmd_entail(cfg, mode, gamma_text, gamma_file, alpha_text, pivot_file,
                              pertinence_file, batch_file);
        if (sub_theory->parsed())
            return cmd_theory(cfg, gamma_text, gamma_file, pivot_file, theory_mode);
        if (sub_assume->parsed()) return cmd_check_assumptions(cfg);
        if (sub_clone->parsed()) return cmd_clone_info(cfg);
        if (sub_verify->parsed())
            return cmd_verify(cfg, proposition, part, max_universe, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
