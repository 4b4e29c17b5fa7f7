#include "gtv/parser.hpp"

#include <sstream>

namespace gtv {

namespace {

void print_graph_item(std::ostringstream& out, const GraphItemDecl& item) {
    if (item.kind == GraphItemDecl::Kind::Nodes) {
        out << "node ";
        for (std::size_t i = 0; i < item.nodes.names.size(); ++i) {
            if (i) out << ", ";
            out << item.nodes.names[i];
        }
        out << " : " << item.nodes.label << ";";
        return;
    }
    out << "edge ";
    if (!item.edge.name.empty()) out << item.edge.name << ": ";
    out << item.edge.src << " -> " << item.edge.dst << " : " << item.edge.label << ";";
}

// multi-line form used for graph and rule bodies
void print_pattern(std::ostringstream& out, const PatternDecl& p, const char* indent) {
    out << "{\n";
    for (const auto& item : p.items) {
        out << indent << "  ";
        print_graph_item(out, item);
        out << "\n";
    }
    out << indent << "}";
}

// single-line form used inside condition expressions
void print_pattern_inline(std::ostringstream& out, const PatternDecl& p) {
    out << "{";
    for (const auto& item : p.items) {
        out << " ";
        print_graph_item(out, item);
    }
    out << " }";
}

int precedence(const CondExpr& e) {
    switch (e.kind) {
    case CondExpr::Kind::Implies:
        return 1;
    case CondExpr::Kind::Or:
        return 2;
    case CondExpr::Kind::And:
        return 3;
    case CondExpr::Kind::Not:
        return 4;
    default:
        return 5;
    }
}

// Minimal parenthesization against the parser's precedence levels, so the
// printed text re-parses to the identical expression tree.
void print_cond(std::ostringstream& out, const CondExpr& e, int min_prec) {
    const int prec = precedence(e);
    const bool parens = prec < min_prec;
    if (parens) out << "(";
    switch (e.kind) {
    case CondExpr::Kind::True:
        out << "true";
        break;
    case CondExpr::Kind::False:
        out << "false";
        break;
    case CondExpr::Kind::Ref:
        out << e.ref;
        break;
    case CondExpr::Kind::Not:
        out << "! ";
        print_cond(out, e.children[0], 4);
        break;
    case CondExpr::Kind::And:
        print_cond(out, e.children[0], 3);
        out << " & ";
        print_cond(out, e.children[1], 4);
        break;
    case CondExpr::Kind::Or:
        print_cond(out, e.children[0], 2);
        out << " | ";
        print_cond(out, e.children[1], 3);
        break;
    case CondExpr::Kind::Implies:
        print_cond(out, e.children[0], 2);
        out << " -> ";
        print_cond(out, e.children[1], 1);
        break;
    case CondExpr::Kind::Exists:
    case CondExpr::Kind::Forall:
        out << (e.kind == CondExpr::Kind::Forall ? "forall(" : "exists(");
        print_pattern_inline(out, e.pattern);
        if (!e.children.empty()) {
            out << ", ";
            print_cond(out, e.children[0], 1);
        }
        out << ")";
        break;
    }
    if (parens) out << ")";
}

const char* kind_word(QueryKind k) {
    switch (k) {
    case QueryKind::Plain:
        return "plain";
    case QueryKind::KStep:
        return "k-step";
    case QueryKind::LastMinute:
        return "last-minute";
    case QueryKind::WeakKStep:
        return "weak-k-step";
    }
    return "?";
}

} // namespace

std::string print_model(const ModelFile& m) {
    std::ostringstream out;
    if (!m.alphabet.empty()) {
        out << "alphabet { ";
        for (std::size_t i = 0; i < m.alphabet.size(); ++i) {
            if (i) out << ", ";
            out << m.alphabet[i];
        }
        out << " }\n\n";
    }
    for (const auto& g : m.graphs) {
        out << "graph " << g.name << " ";
        print_pattern(out, g.pattern, "");
        out << "\n\n";
    }
    for (const auto& c : m.constraints) {
        out << "constraint " << c.name << " = ";
        print_cond(out, c.expr, 1);
        out << ";\n\n";
    }
    for (const auto& r : m.rules) {
        out << (r.role == Role::Environment ? "environment" : "system") << " rule "
            << r.name << " {\n";
        out << "  left ";
        print_pattern(out, r.left, "  ");
        out << "\n  right ";
        print_pattern(out, r.right, "  ");
        out << "\n";
        if (r.when) {
            out << "  when ";
            print_cond(out, *r.when, 1);
            out << ";\n";
        }
        out << "}\n\n";
    }
    for (const auto& a : m.automata) {
        out << "automaton " << a.name << " {\n";
        out << "  states";
        for (const auto& s : a.states) out << " " << s;
        out << ";\n";
        out << "  start " << a.start << ";\n";
        for (const auto& t : a.transitions) {
            out << "  " << t.from << " -> " << t.to << " [";
            for (std::size_t i = 0; i < t.selection.size(); ++i) {
                if (i) out << ", ";
                out << t.selection[i];
            }
            out << "];\n";
        }
        out << "}\n\n";
    }
    for (const auto& q : m.queries) {
        out << "query " << q.name << " {\n";
        out << "  kind " << kind_word(q.kind) << ";\n";
        if (q.kind == QueryKind::KStep || q.kind == QueryKind::WeakKStep) {
            out << "  k " << q.k << ";\n";
        }
        out << "  pre " << q.pre << ";\n";
        out << "  post " << q.post << ";\n";
        out << "  init ";
        for (std::size_t i = 0; i < q.inits.size(); ++i) {
            if (i) out << ", ";
            out << q.inits[i];
        }
        out << ";\n";
        out << "  automaton " << q.automaton << ";\n";
        out << "  method " << method_name(q.method) << ";\n";
        out << "}\n\n";
    }
    std::string text = out.str();
    // single trailing newline
    while (text.size() >= 2 && text[text.size() - 1] == '\n' &&
           text[text.size() - 2] == '\n') {
        text.pop_back();
    }
    return text;
}

} // namespace gtv
