// Generates the bundled corpus of small randomized models. Models are
// rejection-sampled until the annotated joint state space is finite (complete
// at <= 500 states), nontrivial, contains environment steps, and has no
// deadlocked initial state; the postcondition is picked so low k values are
// violated while higher ones recover where possible.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "gtv/correctness.hpp"
#include "gtv/errors.hpp"
#include "gtv/model.hpp"
#include "gtv/parser.hpp"

using namespace gtv;

namespace {

struct Gen {
    std::mt19937 rng;

    explicit Gen(unsigned seed) : rng(seed) {}

    int pick(int n) { // uniform in [0, n)
        return std::uniform_int_distribution<int>(0, n - 1)(rng);
    }
    bool coin(double p) {
        return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
    }
    template <typename T>
    const T& among(const std::vector<T>& xs) {
        return xs[static_cast<size_t>(pick(static_cast<int>(xs.size())))];
    }
};

const std::vector<std::string> kAlphabet = {"a", "b", "t"};

GraphItemDecl node_item(std::vector<std::string> names, std::string label) {
    GraphItemDecl it;
    it.kind = GraphItemDecl::Kind::Nodes;
    it.nodes = NodeDecl{std::move(names), std::move(label)};
    return it;
}

GraphItemDecl edge_item(std::string name, std::string src, std::string dst,
                        std::string label) {
    GraphItemDecl it;
    it.kind = GraphItemDecl::Kind::Edge;
    it.edge = EdgeDecl{std::move(name), std::move(src), std::move(dst),
                       std::move(label)};
    return it;
}

PatternDecl random_host_graph(Gen& g) {
    PatternDecl p;
    int nn = 2 + g.pick(3); // 2..4 nodes
    std::vector<std::string> names;
    for (int i = 0; i < nn; ++i) {
        std::string name = "n" + std::to_string(i + 1);
        p.items.push_back(node_item({name}, g.among(kAlphabet)));
        names.push_back(name);
    }
    int ne = g.pick(4); // 0..3 edges
    for (int i = 0; i < ne; ++i) {
        p.items.push_back(
            edge_item("", g.among(names), g.among(names), g.among(kAlphabet)));
    }
    return p;
}

struct EdgeSpec {
    std::string name; // "" = anonymous
    std::string src, dst, label;
};

RuleDecl random_rule(Gen& g, const std::string& name, Role role) {
    int nn = 1 + g.pick(2); // 1..2 left nodes
    std::vector<std::string> node_names;
    std::vector<std::string> node_labels;
    for (int i = 0; i < nn; ++i) {
        node_names.push_back("x" + std::to_string(i + 1));
        node_labels.push_back(g.among(kAlphabet));
    }
    std::vector<EdgeSpec> left_edges;
    int ne = g.pick(3); // 0..2 left edges, all named so they can be preserved
    for (int i = 0; i < ne; ++i) {
        left_edges.push_back(EdgeSpec{"e" + std::to_string(i + 1),
                                      g.among(node_names), g.among(node_names),
                                      g.among(kAlphabet)});
    }

    // The right side starts as a copy and diverges by one or two edits.
    std::vector<std::string> right_nodes = node_names; // shared names
    std::vector<std::pair<std::string, std::string>> new_nodes;
    std::vector<EdgeSpec> right_edges = left_edges;
    std::optional<CondExpr> when;
    auto cap_with = [&](PatternDecl pat) {
        CondExpr ex;
        ex.kind = CondExpr::Kind::Exists;
        ex.pattern = std::move(pat);
        CondExpr no;
        no.kind = CondExpr::Kind::Not;
        no.children.push_back(std::move(ex));
        when = std::move(no);
    };

    int edits = 1 + (g.coin(0.35) ? 1 : 0);
    for (int edit = 0; edit < edits; ++edit) {
        switch (g.pick(5)) {
        case 0: { // add an edge
            std::string src = g.among(node_names);
            std::string dst = g.among(node_names);
            std::string lbl = g.among(kAlphabet);
            right_edges.push_back(EdgeSpec{"", src, dst, lbl});
            if (!when && g.coin(0.85)) {
                PatternDecl pat;
                pat.items.push_back(edge_item("", src, dst, lbl));
                cap_with(std::move(pat));
            }
            break;
        }
        case 1: // delete an edge
            if (!right_edges.empty()) {
                right_edges.erase(right_edges.begin() +
                                  g.pick(static_cast<int>(right_edges.size())));
            }
            break;
        case 2: // relabel an edge (delete + create between the same nodes)
            if (!right_edges.empty()) {
                EdgeSpec& e = right_edges[static_cast<size_t>(
                    g.pick(static_cast<int>(right_edges.size())))];
                e.name.clear();
                e.label = g.among(kAlphabet);
            }
            break;
        case 3: { // create a node
            std::string lbl = g.among(kAlphabet);
            new_nodes.emplace_back("y" + std::to_string(edit + 1), lbl);
            if (!when && g.coin(0.85)) {
                PatternDecl pat;
                pat.items.push_back(node_item({"z"}, lbl));
                cap_with(std::move(pat));
            }
            break;
        }
        case 4: { // delete a node (and everything attached on the right)
            if (node_names.size() < 2) break;
            std::string victim =
                node_names[static_cast<size_t>(g.pick(nn))];
            right_nodes.erase(
                std::remove(right_nodes.begin(), right_nodes.end(), victim),
                right_nodes.end());
            std::erase_if(right_edges, [&](const EdgeSpec& e) {
                return e.src == victim || e.dst == victim;
            });
            break;
        }
        }
    }

    RuleDecl rd;
    rd.name = name;
    rd.role = role;
    for (int i = 0; i < nn; ++i) {
        rd.left.items.push_back(node_item({node_names[i]}, node_labels[i]));
    }
    for (const EdgeSpec& e : left_edges) {
        rd.left.items.push_back(edge_item(e.name, e.src, e.dst, e.label));
    }
    for (int i = 0; i < nn; ++i) {
        if (std::find(right_nodes.begin(), right_nodes.end(), node_names[i]) !=
            right_nodes.end()) {
            rd.right.items.push_back(node_item({node_names[i]}, node_labels[i]));
        }
    }
    for (const auto& [nname, nlabel] : new_nodes) {
        rd.right.items.push_back(node_item({nname}, nlabel));
    }
    for (const EdgeSpec& e : right_edges) {
        rd.right.items.push_back(edge_item(e.name, e.src, e.dst, e.label));
    }
    rd.when = std::move(when);
    return rd;
}

RegulationAutomaton random_automaton(Gen& g,
                                     const std::vector<std::string>& sys,
                                     const std::vector<std::string>& env) {
    RegulationAutomaton a;
    a.name = "A";
    a.states = g.coin(0.7) ? std::vector<std::string>{"q0", "q1"}
                           : std::vector<std::string>{"q0"};
    a.start = "q0";

    std::vector<std::string> all = sys;
    all.insert(all.end(), env.begin(), env.end());
    auto selection = [&](bool need_env) {
        std::vector<std::string> sel;
        for (const auto& r : all) {
            if (g.coin(0.5)) sel.push_back(r);
        }
        if (need_env) {
            bool has = false;
            for (const auto& r : sel) {
                has = has ||
                      std::find(env.begin(), env.end(), r) != env.end();
            }
            if (!has) sel.push_back(g.among(env));
        }
        if (sel.empty()) sel.push_back(g.among(all));
        return sel;
    };

    bool env_placed = false;
    for (const auto& from : a.states) {
        for (const auto& to : a.states) {
            if (!g.coin(from == "q0" && to == a.states.back() ? 0.8 : 0.6)) {
                continue;
            }
            bool need_env = !env_placed && g.coin(0.7);
            AutomatonTransition t{from, to, selection(need_env)};
            for (const auto& r : t.selection) {
                env_placed = env_placed ||
                             std::find(env.begin(), env.end(), r) != env.end();
            }
            a.transitions.push_back(std::move(t));
        }
    }
    if (a.transitions.empty()) {
        a.transitions.push_back(
            AutomatonTransition{"q0", "q0", selection(true)});
    } else {
        bool from_start = false;
        for (const auto& t : a.transitions) from_start |= t.from == "q0";
        if (!from_start) {
            a.transitions.push_back(
                AutomatonTransition{"q0", a.states.back(), selection(false)});
        }
    }
    if (!env_placed) {
        a.transitions.front().selection.push_back(g.among(env));
    }
    return a;
}

CondExpr random_post(Gen& g) {
    PatternDecl pat;
    if (g.coin(0.5)) {
        pat.items.push_back(node_item({"u"}, g.among(kAlphabet)));
    } else {
        pat.items.push_back(node_item({"u"}, g.among(kAlphabet)));
        pat.items.push_back(node_item({"v"}, g.among(kAlphabet)));
        pat.items.push_back(edge_item("", "u", "v", g.among(kAlphabet)));
    }
    CondExpr ex;
    ex.kind = CondExpr::Kind::Exists;
    ex.pattern = std::move(pat);
    if (g.coin(0.5)) return ex;
    CondExpr no;
    no.kind = CondExpr::Kind::Not;
    no.children.push_back(std::move(ex));
    return no;
}

ModelFile skeleton(Gen& g) {
    ModelFile mf;
    mf.alphabet = kAlphabet;

    GraphDecl g0;
    g0.name = "G0";
    g0.pattern = random_host_graph(g);
    mf.graphs.push_back(std::move(g0));
    if (g.coin(0.25)) {
        GraphDecl g1;
        g1.name = "G1";
        g1.pattern = random_host_graph(g);
        mf.graphs.push_back(std::move(g1));
    }

    ConstraintDecl pre;
    pre.name = "Pre";
    pre.expr.kind = CondExpr::Kind::True;
    mf.constraints.push_back(std::move(pre));
    ConstraintDecl safe;
    safe.name = "Safe";
    safe.expr.kind = CondExpr::Kind::True; // replaced by the candidate search
    mf.constraints.push_back(std::move(safe));

    int n_sys = 1 + g.pick(3);
    int n_env = 1 + g.pick(2);
    std::vector<std::string> sys_names, env_names;
    for (int i = 0; i < n_sys; ++i) {
        std::string name = "S" + std::to_string(i + 1);
        mf.rules.push_back(random_rule(g, name, Role::System));
        sys_names.push_back(name);
    }
    for (int i = 0; i < n_env; ++i) {
        std::string name = "E" + std::to_string(i + 1);
        mf.rules.push_back(random_rule(g, name, Role::Environment));
        env_names.push_back(name);
    }

    mf.automata.push_back(random_automaton(g, sys_names, env_names));
    return mf;
}

std::vector<std::string> graph_names(const ModelFile& mf) {
    std::vector<std::string> out;
    for (const auto& gd : mf.graphs) out.push_back(gd.name);
    return out;
}

// Structural acceptance: finite (complete <= 500 states), nontrivial, both
// roles reachable, no deadlocked initial state (where the temporal encoding
// of system correctness is not faithful).
bool space_acceptable(const CompiledModel& cm) {
    GtsModel gm{cm.rules, properize(cm.automata.at("A"))};
    if (gm.automaton.transitions.empty()) return false;
    std::vector<Rule> ann;
    try {
        ann = build_annotated(gm);
    } catch (const Error&) {
        return false;
    }
    std::vector<Graph> starts;
    for (const auto& [name, graph] : cm.graphs) {
        starts.push_back(annotated_initial(graph, gm.automaton));
    }
    ExplorationLimits lim;
    lim.max_states = 500;
    lim.max_graph_size = 40; // oversized successors mean runaway growth
    Lts l = explore(ann, starts, lim);
    if (!l.complete || l.states.size() < 4) return false;
    bool has_sys = false, has_env = false;
    for (const auto& t : l.transitions) {
        has_sys = has_sys || t.label.role == Role::System;
        has_env = has_env || t.label.role == Role::Environment;
    }
    if (!has_sys || !has_env) return false;
    for (int s : l.initial) {
        if (l.successors(s).empty()) return false;
    }
    return true;
}

Verdict run_k_step(const CompiledModel& cm, int k) {
    CorrectnessQuery q{.model = {cm.rules, cm.automata.at("A")},
                       .pre = cm.constraints.at("Pre"),
                       .post = cm.constraints.at("Safe"),
                       .kind = QueryKind::KStep,
                       .k = k,
                       .inits = {},
                       .limits = {.max_states = 600,
                                  .max_depth = 1000000000,
                                  .max_graph_size = 40},
                       .method = Method::Direct};
    for (const auto& [name, graph] : cm.graphs) q.inits.push_back(graph);
    return check_query(q).verdict;
}

// Try candidate postconditions; prefer one that k-step verdicts are
// sensitive to (violated at 0, recovered by 2), then any violated one.
bool choose_post(Gen& g, ModelFile& mf) {
    int best_score = 0;
    CondExpr best;
    for (int c = 0; c < 10; ++c) {
        mf.constraints[1].expr = random_post(g);
        CompiledModel cm;
        try {
            cm = compile_model(mf);
        } catch (const Error&) {
            continue;
        }
        Verdict v0 = run_k_step(cm, 0);
        if (v0.status != Status::Violated) continue;
        Verdict v2 = run_k_step(cm, 2);
        int score = v2.status == Status::Holds ? 3 : 2;
        if (score > best_score) {
            best_score = score;
            best = mf.constraints[1].expr;
            if (score == 3) break;
        }
    }
    if (best_score == 0) return false;
    mf.constraints[1].expr = std::move(best);
    return true;
}

void add_queries(ModelFile& mf, int index) {
    const Method methods[] = {Method::Both, Method::Direct, Method::Reduction};
    auto query = [&](const std::string& name, QueryKind kind, int k,
                     Method method) {
        QueryDecl qd;
        qd.name = name;
        qd.kind = kind;
        qd.k = k;
        qd.pre = "Pre";
        qd.post = "Safe";
        qd.inits = graph_names(mf);
        qd.automaton = "A";
        qd.method = method;
        mf.queries.push_back(std::move(qd));
    };
    query("Recover", QueryKind::KStep, index % 3, methods[index % 3]);
    query("Weak", QueryKind::WeakKStep, 1 + index % 2, methods[(index + 1) % 3]);
    query("LastMinute", QueryKind::LastMinute, 0, methods[(index + 2) % 3]);
    query("Plain", QueryKind::Plain, 0, Method::Direct);
}

} // namespace

int main(int argc, char** argv) {
    std::filesystem::path out_dir = "models/random";
    int count = 20;
    if (argc > 1) out_dir = argv[1];
    if (argc > 2) count = std::stoi(argv[2]);
    std::filesystem::create_directories(out_dir);

    for (int i = 1; i <= count; ++i) {
        bool written = false;
        for (unsigned attempt = 0; attempt < 400 && !written; ++attempt) {
            Gen g(static_cast<unsigned>(i) * 10000u + attempt);
            ModelFile mf = skeleton(g);
            CompiledModel cm;
            try {
                cm = compile_model(mf);
            } catch (const Error&) {
                continue;
            }
            if (!space_acceptable(cm)) continue;
            if (!choose_post(g, mf)) continue;
            add_queries(mf, i);
            try {
                compile_model(mf); // the final file must be self-consistent
            } catch (const Error&) {
                continue;
            }

            char name[16];
            std::snprintf(name, sizeof(name), "r%02d.gts", i);
            std::ofstream out(out_dir / name, std::ios::binary);
            out << print_model(mf);
            std::cout << name << ": seed " << (i * 10000u + attempt) << "\n";
            written = true;
        }
        if (!written) {
            std::cerr << "giving up on model " << i << "\n";
            return 1;
        }
    }
    return 0;
}
