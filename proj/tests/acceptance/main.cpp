/*
  Acceptance suite: one pass/fail line per criterion, nonzero exit when any
  criterion fails. Every golden verdict, differential and structural property
  below runs against the bundled model corpus plus seeded random instances,
  so a run is deterministic end to end.
*/

#include <algorithm>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gtv/automaton.hpp"
#include "gtv/canonical.hpp"
#include "gtv/correctness.hpp"
#include "gtv/ctl.hpp"
#include "gtv/graph.hpp"
#include "gtv/ltl.hpp"
#include "gtv/lts.hpp"
#include "gtv/match.hpp"
#include "gtv/model.hpp"
#include "gtv/morphism.hpp"
#include "gtv/parser.hpp"
#include "gtv/report.hpp"
#include "gtv/verdict.hpp"

#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace gtv;

namespace {

std::vector<std::filesystem::path> corpus_paths() {
    std::vector<std::filesystem::path> files;
    for (const auto& entry :
         std::filesystem::recursive_directory_iterator(GTV_MODELS_DIR)) {
        if (entry.is_regular_file() && entry.path().extension() == ".gts") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    return files;
}

// tns.gts has an unbounded state space by design; every exhaustive sweep
// runs on the finite remainder of the corpus.
bool finite_model(const std::filesystem::path& p) {
    return p.filename() != "tns.gts";
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string model_path(const char* name) {
    return std::string(GTV_MODELS_DIR) + "/" + name;
}

/*
  One (pre, post, automaton, inits) combination of a corpus model, reusable
  as a template for checks of any kind. Deduplicated because several declared
  queries of one model usually share the combination.
*/
struct QueryTemplate {
    std::string origin; // "<file>/<query>" for failure messages
    CorrectnessQuery query;
};

std::vector<QueryTemplate> query_templates() {
    std::vector<QueryTemplate> out;
    for (const auto& path : corpus_paths()) {
        if (!finite_model(path)) continue;
        CompiledModel cm = test::load_model_path(path.string());
        std::set<std::string> seen;
        for (const QueryDecl& qd : cm.surface.queries) {
            std::string key = qd.pre + "|" + qd.post + "|" + qd.automaton;
            for (const auto& g : qd.inits) key += "|" + g;
            if (!seen.insert(key).second) continue;
            out.push_back({path.filename().string() + "/" + qd.name,
                           instantiate_query(cm, qd.name, ExplorationLimits{})});
        }
    }
    return out;
}

std::string verdict_mismatch(const std::string& where, Status got, Status want) {
    return where + ": got " + status_name(got) + ", want " + status_name(want);
}

// All graphs with at most max_nodes nodes and max_edges edges over `labels`
// (used for both node and edge labels). Edge multisets are enumerated as
// non-decreasing slot sequences, so every multigraph appears exactly once.
void grow_edges(const Graph& g,
                const std::vector<std::tuple<int, int, std::string>>& slots,
                std::size_t start, int budget, std::vector<Graph>& out) {
    out.push_back(g);
    if (budget == 0) return;
    for (std::size_t i = start; i < slots.size(); ++i) {
        Graph h = g;
        h.add_edge(std::get<0>(slots[i]), std::get<1>(slots[i]),
                   std::get<2>(slots[i]));
        grow_edges(h, slots, i, budget - 1, out);
    }
}

std::vector<Graph> all_graphs(int max_nodes, int max_edges,
                              const std::vector<std::string>& labels) {
    std::vector<Graph> out;
    const int base = static_cast<int>(labels.size());
    for (int n = 0; n <= max_nodes; ++n) {
        int assignments = 1;
        for (int i = 0; i < n; ++i) assignments *= base;
        for (int a = 0; a < assignments; ++a) {
            Graph g;
            int rest = a;
            for (int v = 0; v < n; ++v) {
                g.add_node(labels[rest % base]);
                rest /= base;
            }
            std::vector<std::tuple<int, int, std::string>> slots;
            for (int s = 0; s < n; ++s) {
                for (int t = 0; t < n; ++t) {
                    for (const auto& l : labels) slots.emplace_back(s, t, l);
                }
            }
            grow_edges(g, slots, 0, max_edges, out);
        }
    }
    return out;
}

// Cheap isomorphism-invariant bucket so the canonical-key sweep only has to
// compare pairs that could possibly be isomorphic.
std::string coarse_profile(const Graph& g) {
    std::vector<std::string> parts;
    for (int v = 0; v < g.node_count(); ++v) {
        int in = 0, out = 0;
        for (int e = 0; e < g.edge_count(); ++e) {
            if (g.edge(e).src == v) ++out;
            if (g.edge(e).tgt == v) ++in;
        }
        parts.push_back(g.node_label(v) + ":" + std::to_string(out) + ":" +
                        std::to_string(in));
    }
    std::sort(parts.begin(), parts.end());
    std::vector<std::string> edges;
    for (int e = 0; e < g.edge_count(); ++e) edges.push_back(g.edge(e).label);
    std::sort(edges.begin(), edges.end());
    std::string key;
    for (const auto& p : parts) key += p + ";";
    key += "|";
    for (const auto& e : edges) key += e + ";";
    return key;
}

/*
  Criterion 1 — golden verdicts on the capped track model. The capped system
  is explored exhaustively; the declared queries must produce exactly the
  frozen verdicts, with agreeing methods wherever both ran.
*/
std::string criterion_capped_goldens() {
    CompiledModel cm = test::load_model_path(model_path("tns_capped.gts"));
    const std::pair<const char*, Status> expected[] = {
        {"Plain", Status::Violated},   {"Recover0", Status::Violated},
        {"Recover1", Status::Holds},   {"Recover2", Status::Holds},
        {"LastMinute", Status::Holds},
    };
    for (const auto& [name, want] : expected) {
        CorrectnessReport rep =
            check_query(instantiate_query(cm, name, ExplorationLimits{}));
        if (!rep.complete) {
            return std::string(name) + ": exploration was not exhaustive";
        }
        if (rep.verdict.status != want) {
            return verdict_mismatch(name, rep.verdict.status, want);
        }
        if (rep.defect) return std::string(name) + ": methods disagreed";
        if (rep.agreement && !*rep.agreement) {
            return std::string(name) + ": agreement flag is false";
        }
    }
    return "";
}

/*
  Criterion 2 — golden verdicts on the alternate-automaton track model:
  weak recovery within one step holds, strict k-step recovery fails for
  every bound up to four.
*/
std::string criterion_alternate_goldens() {
    CompiledModel cm = test::load_model_path(model_path("tns_b.gts"));
    const std::pair<const char*, Status> expected[] = {
        {"Weak1", Status::Holds},       {"Recover0", Status::Violated},
        {"Recover1", Status::Violated}, {"Recover2", Status::Violated},
        {"Recover3", Status::Violated}, {"Recover4", Status::Violated},
    };
    for (const auto& [name, want] : expected) {
        CorrectnessReport rep =
            check_query(instantiate_query(cm, name, ExplorationLimits{}));
        if (!rep.complete) {
            return std::string(name) + ": exploration was not exhaustive";
        }
        if (rep.verdict.status != want) {
            return verdict_mismatch(name, rep.verdict.status, want);
        }
        if (rep.defect) return std::string(name) + ": methods disagreed";
    }
    return "";
}

/*
  Shared driver for the two method-agreement criteria: run every template
  with the given kind/k variants and method = both, requiring exhaustive
  exploration under 500 states, definite verdicts and agreement everywhere.
*/
struct Variant {
    QueryKind kind;
    int k;
};

std::string agreement_sweep(const std::vector<Variant>& variants,
                            int min_models, int min_each_outcome) {
    std::vector<QueryTemplate> templates = query_templates();
    std::set<std::string> models;
    int holds = 0, violated = 0;

    auto run_variants = [&](const std::string& origin, CorrectnessQuery q)
        -> std::string {
        for (const Variant& v : variants) {
            q.kind = v.kind;
            q.k = v.k;
            q.method = Method::Both;
            CorrectnessReport rep = check_query(q);
            std::string where = origin + " [" + query_kind_name(v.kind) +
                                ", k=" + std::to_string(v.k) + "]";
            if (!rep.complete) return where + ": not exhaustively explored";
            if (rep.states > 500) {
                return where + ": state space exceeds 500 states";
            }
            if (rep.methods.size() != 2) {
                return where + ": expected two method results";
            }
            for (const MethodResult& mr : rep.methods) {
                if (mr.verdict.status == Status::Unknown) {
                    return where + ": " + mr.method + " returned UNKNOWN (" +
                           mr.verdict.note + ")";
                }
            }
            if (rep.methods[0].verdict.status != rep.methods[1].verdict.status ||
                rep.defect || !rep.agreement || !*rep.agreement) {
                return where + ": " + rep.methods[0].method + "=" +
                       status_name(rep.methods[0].verdict.status) + " but " +
                       rep.methods[1].method + "=" +
                       status_name(rep.methods[1].verdict.status);
            }
            (rep.verdict.status == Status::Holds ? holds : violated) += 1;
        }
        return "";
    };

    for (const QueryTemplate& t : templates) {
        std::string issue = run_variants(t.origin, t.query);
        if (!issue.empty()) return issue;
        models.insert(t.origin.substr(0, t.origin.find('/')));
    }

    // Seeded random joint models on top of the shipped corpus. Models whose
    // bounded exploration truncates are skipped; agreement is still required
    // of every completed one.
    test::Rng rng(20250812);
    const std::vector<std::string> labels = {"a", "b"};
    int added = 0;
    for (int i = 0; i < 40 && added < 8; ++i) {
        test::RandomModel rm = test::random_model(rng, false);
        CorrectnessQuery q{.model = rm.model,
                           .pre = test::random_constraint(rng, 2, labels),
                           .post = test::random_constraint(rng, 2, labels),
                           .kind = QueryKind::KStep,
                           .k = 0,
                           .inits = {rm.init},
                           .limits = ExplorationLimits{.max_states = 500,
                                                       .max_graph_size = 60},
                           .method = Method::Both};
        CorrectnessReport probe = check_query(q);
        if (!probe.complete || !probe.methods[0].complete ||
            !probe.methods[1].complete) {
            continue; // unbounded growth; not part of the finite suite
        }
        std::string origin = "seeded-" + std::to_string(i);
        std::string issue = run_variants(origin, q);
        if (!issue.empty()) return issue;
        models.insert(origin);
        ++added;
    }

    if (static_cast<int>(models.size()) < min_models) {
        return "only " + std::to_string(models.size()) +
               " finite models exercised";
    }
    if (holds < min_each_outcome || violated < min_each_outcome) {
        return "degenerate outcome distribution (holds=" +
               std::to_string(holds) + ", violated=" + std::to_string(violated) +
               ")";
    }
    return "";
}

// Criterion 3 — direct verdicts equal LTL-reduction verdicts for the
// bounded-recovery and last-minute notions.
std::string criterion_ltl_agreement() {
    return agreement_sweep({{QueryKind::KStep, 0},
                            {QueryKind::KStep, 1},
                            {QueryKind::KStep, 2},
                            {QueryKind::LastMinute, 0}},
                           20, 5);
}

// Criterion 4 — direct verdicts equal CTL-reduction verdicts for the weak
// bounded-recovery notion.
std::string criterion_ctl_agreement() {
    return agreement_sweep({{QueryKind::WeakKStep, 0},
                            {QueryKind::WeakKStep, 1},
                            {QueryKind::WeakKStep, 2}},
                           20, 5);
}

/*
  Criterion 5 — structural property suites: tagged/plain step synchronization,
  properization behavior-preservation, marking-annotation correspondence,
  verdict monotonicity in the recovery bound, and the equivalence of the two
  last-minute formulations. Zero violations allowed.
*/
std::string criterion_property_suites() {
    // (a) synchronization and (c) annotation on every corpus model, every
    // automaton, every declared graph, explored to depth 4
    for (const auto& path : corpus_paths()) {
        CompiledModel cm = test::load_model_path(path.string());
        for (const auto& [aname, aut] : cm.automata) {
            GtsModel m{cm.rules, properize(aut)};
            for (const auto& [gname, g] : cm.graphs) {
                std::string where = path.filename().string() + "/" + aname +
                                    "/" + gname;
                std::string issue = test::check_synchronization(m, g, 4);
                if (!issue.empty()) return "synchronization " + where + ": " + issue;
                issue = test::check_annotation(m, g, 4);
                if (!issue.empty()) return "annotation " + where + ": " + issue;
                issue = test::check_properization(GtsModel{cm.rules, aut}, g, 4);
                if (!issue.empty()) return "properization " + where + ": " + issue;
            }
        }
    }

    // (b) properization on seeded automata with empty selections and
    // unreachable states, (c) annotation on seeded proper models
    test::Rng rng(424242);
    for (int i = 0; i < 30; ++i) {
        test::RandomModel rm = test::random_model(rng, /*allow_improper=*/true);
        std::string issue = test::check_properization(rm.model, rm.init, 3);
        if (!issue.empty()) {
            return "properization seeded-" + std::to_string(i) + ": " + issue;
        }
    }
    for (int i = 0; i < 20; ++i) {
        test::RandomModel rm = test::random_model(rng, /*allow_improper=*/false);
        std::string issue = test::check_annotation(rm.model, rm.init, 3);
        if (!issue.empty()) {
            return "annotation seeded-" + std::to_string(i) + ": " + issue;
        }
    }

    // (d) verdict monotonicity in k, and strict recovery implying weak
    // recovery at the same bound
    std::vector<QueryTemplate> templates = query_templates();
    for (const QueryTemplate& t : templates) {
        std::vector<Status> strict, weak;
        for (int k = 0; k <= 3; ++k) {
            CorrectnessQuery q = t.query;
            q.method = Method::Direct;
            q.k = k;
            q.kind = QueryKind::KStep;
            strict.push_back(check_query(q).verdict.status);
            q.kind = QueryKind::WeakKStep;
            weak.push_back(check_query(q).verdict.status);
        }
        for (int k = 0; k <= 3; ++k) {
            if (strict[k] == Status::Unknown || weak[k] == Status::Unknown) {
                return t.origin + ": indefinite verdict on a finite model";
            }
            if (strict[k] == Status::Holds && weak[k] != Status::Holds) {
                return t.origin + ": strict recovery at k=" + std::to_string(k) +
                       " holds but weak recovery fails";
            }
            if (k > 0) {
                if (strict[k - 1] == Status::Holds && strict[k] != Status::Holds) {
                    return t.origin + ": strict recovery not monotone at k=" +
                           std::to_string(k);
                }
                if (weak[k - 1] == Status::Holds && weak[k] != Status::Holds) {
                    return t.origin + ": weak recovery not monotone at k=" +
                           std::to_string(k);
                }
            }
        }
    }

    // (e) the two last-minute formulations decide identically
    for (const QueryTemplate& t : templates) {
        CorrectnessQuery q = t.query;
        q.kind = QueryKind::LastMinute;
        q.method = Method::Direct;
        Status primary = check_last_minute(q, /*use_r_prime=*/true).verdict.status;
        Status original = check_last_minute(q, /*use_r_prime=*/false).verdict.status;
        if (primary != original) {
            return t.origin + ": last-minute formulations disagree (" +
                   status_name(primary) + " vs " + status_name(original) + ")";
        }
    }
    return "";
}

/*
  Criterion 6 — engine differentials against brute-force oracles: match
  enumeration, canonical keys, LTL checking and CTL checking must agree with
  their independent reference implementations on every instance.
*/
std::string criterion_engine_oracles() {
    const std::vector<std::string> labels = {"a", "b"};
    test::Rng rng(987654);

    // match enumeration: exhaustive small family plus a randomized sample
    {
        std::vector<Graph> patterns = all_graphs(2, 1, labels);
        std::vector<Graph> hosts = all_graphs(3, 2, labels);
        for (const Graph& p : patterns) {
            for (const Graph& h : hosts) {
                std::vector<Morphism> engine = enumerate_injective_morphisms(p, h);
                std::vector<Morphism> oracle = test::brute_force_morphisms(p, h);
                test::sort_morphisms(engine);
                test::sort_morphisms(oracle);
                if (engine != oracle) {
                    return "match: engine found " +
                           std::to_string(engine.size()) + " morphisms, oracle " +
                           std::to_string(oracle.size());
                }
            }
        }
        for (int i = 0; i < 150; ++i) {
            Graph p = test::random_graph(rng, 3, 3, labels);
            Graph h = test::random_graph(rng, 5, 6, labels);
            std::vector<Morphism> engine = enumerate_injective_morphisms(p, h);
            std::vector<Morphism> oracle = test::brute_force_morphisms(p, h);
            test::sort_morphisms(engine);
            test::sort_morphisms(oracle);
            if (engine != oracle) {
                return "match: random instance " + std::to_string(i) +
                       " disagrees with the oracle";
            }
        }
    }

    // canonical keys: key equality must coincide with brute-force isomorphism
    {
        std::vector<Graph> family = all_graphs(3, 2, labels);
        std::map<std::string, std::vector<int>> buckets;
        std::vector<std::string> keys(family.size());
        for (std::size_t i = 0; i < family.size(); ++i) {
            keys[i] = canonical_key(family[i]);
            buckets[coarse_profile(family[i])].push_back(static_cast<int>(i));
        }
        for (const auto& [profile, members] : buckets) {
            for (std::size_t x = 0; x < members.size(); ++x) {
                for (std::size_t y = x + 1; y < members.size(); ++y) {
                    int i = members[x], j = members[y];
                    bool same_key = keys[i] == keys[j];
                    bool iso = test::brute_force_isomorphic(family[i], family[j]);
                    if (same_key != iso) {
                        return "canonical: key equality and isomorphism differ "
                               "inside profile " + profile;
                    }
                }
            }
        }
        for (int i = 0; i < 200; ++i) {
            Graph g = test::random_graph(rng, 5, 6, labels);
            Graph p = test::permuted_copy(rng, g);
            if (canonical_key(g) != canonical_key(p)) {
                return "canonical: permuted copy changed the key";
            }
            Graph m = test::mutated_copy(rng, g);
            bool same_key = canonical_key(g) == canonical_key(m);
            if (same_key != test::brute_force_isomorphic(g, m)) {
                return "canonical: mutated instance " + std::to_string(i) +
                       " disagrees with the oracle";
            }
        }
    }

    // ltl_check against exhaustive lasso enumeration
    {
        const std::vector<std::string> atoms = {"p", "q"};
        int holds = 0, violated = 0;
        for (int i = 0; i < 40; ++i) {
            Lts l = test::random_lts(rng, 5, 2, atoms);
            LtlFormula f = test::random_ltl(rng, 3, atoms);
            Verdict v = ltl_check(l, f);
            bool oracle = test::ltl_lasso_oracle(
                l, f, static_cast<int>(l.states.size()) + 1);
            if (v.status == Status::Unknown) {
                return "ltl: unknown verdict on a complete instance";
            }
            bool engine_holds = v.status == Status::Holds;
            if (engine_holds != oracle) {
                return "ltl: branching instance " + std::to_string(i) +
                       " disagrees with the lasso oracle";
            }
            if (v.status == Status::Violated) {
                if (!v.lasso || eval_ltl_on_lasso(l, *v.lasso, f)) {
                    return "ltl: counterexample lasso does not falsify the "
                           "formula (instance " + std::to_string(i) + ")";
                }
            }
            (engine_holds ? holds : violated) += 1;
        }
        for (int i = 0; i < 20; ++i) {
            Lts l = test::random_lts(rng, 16, 1, atoms); // deterministic runs
            LtlFormula f = test::random_ltl(rng, 3, atoms);
            Verdict v = ltl_check(l, f);
            bool oracle = test::ltl_lasso_oracle(l, f, 0);
            if ((v.status == Status::Holds) != oracle) {
                return "ltl: deterministic instance " + std::to_string(i) +
                       " disagrees with the lasso oracle";
            }
            (v.status == Status::Holds ? holds : violated) += 1;
        }
        if (holds < 5 || violated < 5) {
            return "ltl: degenerate sample (holds=" + std::to_string(holds) +
                   ", violated=" + std::to_string(violated) + ")";
        }
    }

    // ctl_check against the naive path-quantifying evaluator
    {
        const std::vector<std::string> atoms = {"p", "q"};
        int holds = 0, violated = 0;
        for (int i = 0; i < 50; ++i) {
            Lts l = test::random_lts(rng, 5, 2, atoms);
            CtlFormula f = test::random_ctl(rng, 3, atoms);
            Verdict v = ctl_check(l, f);
            bool oracle = true;
            for (int s : l.initial) oracle = oracle && eval_ctl_naive(l, s, f);
            if (v.status == Status::Unknown) {
                return "ctl: unknown verdict on a complete instance";
            }
            if ((v.status == Status::Holds) != oracle) {
                return "ctl: instance " + std::to_string(i) +
                       " disagrees with the naive evaluator";
            }
            (v.status == Status::Holds ? holds : violated) += 1;
        }
        if (holds < 5 || violated < 5) {
            return "ctl: degenerate sample (holds=" + std::to_string(holds) +
                   ", violated=" + std::to_string(violated) + ")";
        }
    }
    return "";
}

/*
  Criterion 7 — plumbing: the printer/parser round-trips the corpus, every
  violated verdict's witness replays through the rewrite engine and actually
  violates the claimed property, and reports serialize byte-identically
  across repeated runs.
*/
std::string criterion_plumbing() {
    for (const auto& path : corpus_paths()) {
        std::string text = slurp(path);
        ModelFile m = parse_model(text);
        std::string printed = print_model(m);
        ModelFile again = parse_model(printed);
        if (!(again == m)) {
            return path.filename().string() + ": round trip changed the model";
        }
        if (print_model(again) != printed) {
            return path.filename().string() + ": printing is not idempotent";
        }
    }

    int violated_reports = 0;
    for (const auto& path : corpus_paths()) {
        if (!finite_model(path)) continue;
        CompiledModel cm = test::load_model_path(path.string());
        for (const QueryDecl& qd : cm.surface.queries) {
            CorrectnessQuery q =
                instantiate_query(cm, qd.name, ExplorationLimits{});
            CorrectnessReport rep = check_query(q);
            std::string issue = test::replay_issue(q, rep);
            if (!issue.empty()) {
                return path.filename().string() + "/" + qd.name + ": " + issue;
            }
            for (const MethodResult& mr : rep.methods) {
                if (mr.verdict.status == Status::Violated) ++violated_reports;
            }
            if (rep.methods.empty() &&
                rep.verdict.status == Status::Violated) {
                ++violated_reports;
            }

            CorrectnessReport rerun = check_query(q);
            if (report_to_json(rep, q.method) != report_to_json(rerun, q.method)) {
                return path.filename().string() + "/" + qd.name +
                       ": repeated runs serialized differently";
            }
        }
    }
    if (violated_reports < 5) {
        return "too few violated verdicts to exercise witness replay (" +
               std::to_string(violated_reports) + ")";
    }
    return "";
}

struct Criterion {
    int number;
    const char* title;
    std::function<std::string()> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "golden verdicts on the capped track model", criterion_capped_goldens},
        {2, "golden verdicts on the alternate-automaton track model",
         criterion_alternate_goldens},
        {3, "direct vs LTL-reduction agreement (k-step, last-minute)",
         criterion_ltl_agreement},
        {4, "direct vs CTL-reduction agreement (weak k-step)",
         criterion_ctl_agreement},
        {5, "synchronization, properization, annotation and monotonicity "
            "properties",
         criterion_property_suites},
        {6, "engine differentials against brute-force oracles",
         criterion_engine_oracles},
        {7, "parser round-trip, witness replay, deterministic reports",
         criterion_plumbing},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        std::string issue;
        try {
            issue = c.run();
        } catch (const std::exception& e) {
            issue = std::string("exception: ") + e.what();
        }
        if (issue.empty()) {
            std::cout << "PASS criterion " << c.number << ": " << c.title << "\n";
        } else {
            std::cout << "FAIL criterion " << c.number << ": " << c.title
                      << " — " << issue << "\n";
            ++failures;
        }
    }
    return failures == 0 ? 0 : 1;
}
