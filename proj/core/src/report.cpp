#include "gtv/report.hpp"

#include <sstream>

#include <json.hpp>

namespace gtv {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json graph_to_json(const Graph& g) {
    ordered_json nodes = ordered_json::array();
    for (NodeId v = 0; v < g.node_count(); ++v) {
        nodes.push_back({{"id", v}, {"label", g.node_label(v)}});
    }
    ordered_json edges = ordered_json::array();
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Graph::Edge& ed = g.edge(e);
        edges.push_back({{"src", ed.src}, {"dst", ed.tgt}, {"label", ed.label}});
    }
    return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

ordered_json witness_to_json(const DecodedWitness& w) {
    ordered_json steps = ordered_json::array();
    for (const WitnessStep& s : w.steps) {
        steps.push_back({{"rule", s.rule},
                         {"role", s.role},
                         {"graph", graph_to_json(s.graph)}});
    }
    return steps;
}

ordered_json method_to_json(const MethodResult& m) {
    ordered_json j;
    j["method"] = m.method;
    j["verdict"] = status_name(m.verdict.status);
    j["states"] = m.states;
    j["complete"] = m.complete;
    if (!m.verdict.note.empty()) j["note"] = m.verdict.note;
    return j;
}

} // namespace

std::string report_to_json(const CorrectnessReport& r, Method requested) {
    ordered_json j;
    j["verdict"] = status_name(r.verdict.status);
    j["kind"] = query_kind_name(r.kind);
    if (r.kind == QueryKind::KStep || r.kind == QueryKind::WeakKStep) {
        j["k"] = r.k;
    } else {
        j["k"] = nullptr;
    }
    j["method"] = method_name(requested);
    j["states"] = r.states;
    j["complete"] = r.complete;
    j["witness"] =
        r.witness ? witness_to_json(*r.witness) : ordered_json::array();
    if (r.witness && r.witness->loop_start >= 0) {
        j["loopStart"] = r.witness->loop_start;
    }
    if (!r.verdict.note.empty()) j["note"] = r.verdict.note;
    if (r.agreement) j["agreement"] = *r.agreement;
    if (r.defect) j["defect"] = true;
    ordered_json methods = ordered_json::array();
    for (const MethodResult& m : r.methods) methods.push_back(method_to_json(m));
    j["methods"] = std::move(methods);
    return j.dump(2) + "\n";
}

std::string graph_to_text(const Graph& g) {
    std::ostringstream out;
    out << "{";
    for (NodeId v = 0; v < g.node_count(); ++v) {
        out << (v ? ", " : "") << "n" << v << ":" << g.node_label(v);
    }
    if (g.edge_count() > 0) {
        out << " | ";
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            const Graph::Edge& ed = g.edge(e);
            out << (e ? ", " : "") << "n" << ed.src << "->n" << ed.tgt << ":"
                << ed.label;
        }
    }
    out << "}";
    return out.str();
}

std::string report_to_text(const CorrectnessReport& r, Method requested) {
    std::ostringstream out;
    out << "verdict: " << status_name(r.verdict.status) << "\n";
    out << "kind: " << query_kind_name(r.kind);
    if (r.kind == QueryKind::KStep || r.kind == QueryKind::WeakKStep) {
        out << " (k = " << r.k << ")";
    }
    out << "\n";
    out << "method: " << method_name(requested) << "\n";
    out << "states: " << r.states << (r.complete ? " (complete)" : " (truncated)")
        << "\n";
    if (!r.verdict.note.empty()) out << "note: " << r.verdict.note << "\n";
    if (r.agreement) {
        out << "agreement: " << (*r.agreement ? "true" : "false") << "\n";
    }
    if (r.defect) out << "defect: true\n";
    for (const MethodResult& m : r.methods) {
        out << "  [" << m.method << "] " << status_name(m.verdict.status) << ", "
            << m.states << " states"
            << (m.complete ? "" : " (truncated)");
        if (!m.verdict.note.empty()) out << " — " << m.verdict.note;
        out << "\n";
    }
    if (r.witness) {
        out << "witness:\n";
        const auto& steps = r.witness->steps;
        for (size_t i = 0; i < steps.size(); ++i) {
            out << "  " << i << ": ";
            if (steps[i].rule.empty()) {
                out << "(" << steps[i].role << ")";
            } else {
                out << steps[i].rule << " (" << steps[i].role << ")";
            }
            out << " " << graph_to_text(steps[i].graph) << "\n";
        }
        if (r.witness->loop_start >= 0) {
            out << "  loop: returns to step " << r.witness->loop_start << "\n";
        }
    }
    return out.str();
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out.push_back(c);
    }
    return out;
}

} // namespace

std::string export_dot(const Lts& l, const RegulationAutomaton& a,
                       const std::vector<std::pair<std::string, Condition>>&
                           constraints) {
    const std::set<std::string>& marks = marking_labels();
    std::set<std::string> states = state_labels(a);

    std::ostringstream out;
    out << "digraph lts {\n";
    out << "  rankdir=LR;\n";
    out << "  node [shape=box];\n";

    std::vector<bool> is_initial(l.states.size(), false);
    for (int i : l.initial) is_initial[i] = true;

    for (size_t i = 0; i < l.states.size(); ++i) {
        const Graph& g = l.states[i];
        std::string label = "s" + std::to_string(i);
        if (auto q = read_tag(g, states)) label += "\n" + *q;
        if (auto m = read_tag(g, marks)) label += " [" + *m + "]";
        Graph bare = strip_tags(strip_tags(g, states), marks);
        std::string sat;
        for (const auto& [name, cond] : constraints) {
            if (graph_satisfies(bare, cond)) {
                sat += (sat.empty() ? "" : ", ") + name;
            }
        }
        if (!sat.empty()) label += "\n" + sat;
        out << "  s" << i << " [label=\"" << dot_escape(label) << "\"";
        if (is_initial[i]) out << ", peripheries=2";
        out << "];\n";
    }

    for (const LtsTransition& t : l.transitions) {
        out << "  s" << t.from << " -> s" << t.to << " [label=\""
            << dot_escape(t.label.rule) << "\"";
        if (t.label.role == Role::Environment) {
            out << ", style=dashed, color=firebrick";
        } else if (t.label.role == Role::Skip) {
            out << ", style=dotted, color=gray40";
        }
        out << "];\n";
    }

    out << "}\n";
    return out.str();
}

} // namespace gtv
