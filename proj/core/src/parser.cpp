#include "gtv/parser.hpp"

#include <cctype>
#include <utility>

#include "gtv/errors.hpp"

namespace gtv {

namespace {

struct Token {
    enum class Kind { Ident, Number, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    int line = 1;
    int column = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

/*
  Identifiers admit interior dashes when the dash is followed by a letter or
  digit ("k-step", "weak-k-step"), so "q0->q1" still splits into
  "q0" "->" "q1".
*/
std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    std::size_t i = 0;
    int line = 1;
    int col = 1;
    auto advance = [&](std::size_t n) {
        for (std::size_t j = 0; j < n; ++j) {
            if (text[i + j] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += n;
    };
    const std::string punct_single = "{}(),;:=!&|[]";
    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '#' || (c == '/' && i + 1 < text.size() && text[i + 1] == '/')) {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < text.size()) {
                if (ident_char(text[j])) {
                    ++j;
                } else if (text[j] == '-' && j + 1 < text.size() &&
                           std::isalnum(static_cast<unsigned char>(text[j + 1]))) {
                    j += 2;
                } else {
                    break;
                }
            }
            t.kind = Token::Kind::Ident;
            t.text = text.substr(i, j - i);
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            t.kind = Token::Kind::Number;
            t.text = text.substr(i, j - i);
            advance(j - i);
        } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            t.kind = Token::Kind::Punct;
            t.text = "->";
            advance(2);
        } else if (punct_single.find(c) != std::string::npos) {
            t.kind = Token::Kind::Punct;
            t.text = std::string(1, c);
            advance(1);
        } else {
            throw ParseError(line, col, "token",
                             "unexpected character '" + std::string(1, c) +
                                 "' at line " + std::to_string(line) + ", column " +
                                 std::to_string(col));
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.kind = Token::Kind::End;
    end.text = "<end of file>";
    end.line = line;
    end.column = col;
    out.push_back(std::move(end));
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& text) : tokens_(lex(text)) {}

    ModelFile parse() {
        ModelFile m;
        bool any = false;
        while (cur().kind != Token::Kind::End) {
            if (at_word("alphabet")) {
                parse_alphabet(m);
            } else if (at_word("graph")) {
                m.graphs.push_back(parse_graph());
            } else if (at_word("constraint")) {
                m.constraints.push_back(parse_constraint());
            } else if (at_word("system") || at_word("environment")) {
                m.rules.push_back(parse_rule());
            } else if (at_word("automaton")) {
                m.automata.push_back(parse_automaton());
            } else if (at_word("query")) {
                m.queries.push_back(parse_query());
            } else {
                fail("a declaration (alphabet, graph, constraint, system rule, "
                     "environment rule, automaton, or query)");
            }
            any = true;
        }
        if (!any) fail("at least one declaration");
        return m;
    }

private:
    const Token& cur() const { return tokens_[pos_]; }

    Token eat() { return tokens_[pos_++]; }

    bool at_word(const char* w) const {
        return cur().kind == Token::Kind::Ident && cur().text == w;
    }

    bool at_punct(const char* p) const {
        return cur().kind == Token::Kind::Punct && cur().text == p;
    }

    void expect_word(const char* w) {
        if (!at_word(w)) fail("'" + std::string(w) + "'");
        eat();
    }

    void expect_punct(const char* p) {
        if (!at_punct(p)) fail("'" + std::string(p) + "'");
        eat();
    }

    std::string expect_ident(const char* what) {
        if (cur().kind != Token::Kind::Ident) fail(what);
        return eat().text;
    }

    int expect_number(const char* what) {
        if (cur().kind != Token::Kind::Number) fail(what);
        return std::stoi(eat().text);
    }

    [[noreturn]] void fail(const std::string& expected) const {
        const Token& t = cur();
        throw ParseError(t.line, t.column, expected,
                         "parse error at line " + std::to_string(t.line) +
                             ", column " + std::to_string(t.column) + ": expected " +
                             expected + ", found '" + t.text + "'");
    }

    // alphabet { a, b, c }
    void parse_alphabet(ModelFile& m) {
        expect_word("alphabet");
        expect_punct("{");
        m.alphabet.push_back(expect_ident("a label"));
        while (at_punct(",")) {
            eat();
            m.alphabet.push_back(expect_ident("a label"));
        }
        expect_punct("}");
    }

    GraphDecl parse_graph() {
        expect_word("graph");
        GraphDecl g;
        g.name = expect_ident("a graph name");
        g.pattern = parse_pattern_block();
        return g;
    }

    PatternDecl parse_pattern_block() {
        PatternDecl p;
        expect_punct("{");
        while (!at_punct("}")) p.items.push_back(parse_graph_item());
        eat(); // }
        return p;
    }

    GraphItemDecl parse_graph_item() {
        GraphItemDecl item;
        if (at_word("node")) {
            eat();
            item.kind = GraphItemDecl::Kind::Nodes;
            item.nodes.names.push_back(expect_ident("a node name"));
            while (at_punct(",")) {
                eat();
                item.nodes.names.push_back(expect_ident("a node name"));
            }
            expect_punct(":");
            item.nodes.label = expect_ident("a node label");
            expect_punct(";");
            return item;
        }
        if (at_word("edge")) {
            eat();
            item.kind = GraphItemDecl::Kind::Edge;
            std::string first = expect_ident("an edge name or source node");
            if (at_punct(":")) { // edge name: src -> dst : label
                eat();
                item.edge.name = first;
                item.edge.src = expect_ident("a source node");
            } else {
                item.edge.src = first;
            }
            expect_punct("->");
            item.edge.dst = expect_ident("a target node");
            expect_punct(":");
            item.edge.label = expect_ident("an edge label");
            expect_punct(";");
            return item;
        }
        fail("'node' or 'edge'");
    }

    ConstraintDecl parse_constraint() {
        expect_word("constraint");
        ConstraintDecl c;
        c.name = expect_ident("a constraint name");
        expect_punct("=");
        c.expr = parse_cond();
        expect_punct(";");
        return c;
    }

    // implication is right-associative and binds loosest
    CondExpr parse_cond() {
        CondExpr lhs = parse_or();
        if (at_punct("->")) {
            eat();
            CondExpr e;
            e.kind = CondExpr::Kind::Implies;
            e.children.push_back(std::move(lhs));
            e.children.push_back(parse_cond());
            return e;
        }
        return lhs;
    }

    CondExpr parse_or() {
        CondExpr lhs = parse_and();
        while (at_punct("|")) {
            eat();
            CondExpr e;
            e.kind = CondExpr::Kind::Or;
            e.children.push_back(std::move(lhs));
            e.children.push_back(parse_and());
            lhs = std::move(e);
        }
        return lhs;
    }

    CondExpr parse_and() {
        CondExpr lhs = parse_unary();
        while (at_punct("&")) {
            eat();
            CondExpr e;
            e.kind = CondExpr::Kind::And;
            e.children.push_back(std::move(lhs));
            e.children.push_back(parse_unary());
            lhs = std::move(e);
        }
        return lhs;
    }

    CondExpr parse_unary() {
        if (at_punct("!")) {
            eat();
            CondExpr e;
            e.kind = CondExpr::Kind::Not;
            e.children.push_back(parse_unary());
            return e;
        }
        return parse_primary();
    }

    CondExpr parse_primary() {
        CondExpr e;
        if (at_word("true")) {
            eat();
            e.kind = CondExpr::Kind::True;
            return e;
        }
        if (at_word("false")) {
            eat();
            e.kind = CondExpr::Kind::False;
            return e;
        }
        if (at_word("exists") || at_word("forall")) {
            bool universal = cur().text == "forall";
            eat();
            e.kind = universal ? CondExpr::Kind::Forall : CondExpr::Kind::Exists;
            expect_punct("(");
            e.pattern = parse_pattern_block();
            if (universal) {
                expect_punct(",");
                e.children.push_back(parse_cond());
            } else if (at_punct(",")) {
                eat();
                e.children.push_back(parse_cond());
            }
            expect_punct(")");
            return e;
        }
        if (at_punct("(")) {
            eat();
            e = parse_cond();
            expect_punct(")");
            return e;
        }
        if (cur().kind == Token::Kind::Ident) {
            e.kind = CondExpr::Kind::Ref;
            e.ref = eat().text;
            return e;
        }
        fail("a condition");
    }

    RuleDecl parse_rule() {
        RuleDecl r;
        r.role = at_word("environment") ? Role::Environment : Role::System;
        eat(); // system / environment
        expect_word("rule");
        r.name = expect_ident("a rule name");
        expect_punct("{");
        expect_word("left");
        r.left = parse_pattern_block();
        expect_word("right");
        r.right = parse_pattern_block();
        if (at_word("when")) {
            eat();
            r.when = parse_cond();
            expect_punct(";");
        }
        expect_punct("}");
        return r;
    }

    RegulationAutomaton parse_automaton() {
        expect_word("automaton");
        RegulationAutomaton a;
        a.name = expect_ident("an automaton name");
        expect_punct("{");
        expect_word("states");
        a.states.push_back(expect_ident("a state name"));
        while (cur().kind == Token::Kind::Ident) a.states.push_back(eat().text);
        expect_punct(";");
        expect_word("start");
        a.start = expect_ident("the start state");
        expect_punct(";");
        while (!at_punct("}")) {
            AutomatonTransition t;
            t.from = expect_ident("a source state");
            expect_punct("->");
            t.to = expect_ident("a target state");
            expect_punct("[");
            if (!at_punct("]")) {
                t.selection.push_back(expect_ident("a rule name"));
                while (at_punct(",")) {
                    eat();
                    t.selection.push_back(expect_ident("a rule name"));
                }
            }
            expect_punct("]");
            expect_punct(";");
            a.transitions.push_back(std::move(t));
        }
        eat(); // }
        return a;
    }

    QueryDecl parse_query() {
        expect_word("query");
        QueryDecl q;
        q.name = expect_ident("a query name");
        expect_punct("{");
        expect_word("kind");
        std::string kind = expect_ident("plain, k-step, last-minute, or weak-k-step");
        if (kind == "plain") {
            q.kind = QueryKind::Plain;
        } else if (kind == "k-step") {
            q.kind = QueryKind::KStep;
        } else if (kind == "last-minute") {
            q.kind = QueryKind::LastMinute;
        } else if (kind == "weak-k-step") {
            q.kind = QueryKind::WeakKStep;
        } else {
            fail("plain, k-step, last-minute, or weak-k-step");
        }
        expect_punct(";");
        if (q.kind == QueryKind::KStep || q.kind == QueryKind::WeakKStep) {
            expect_word("k");
            q.k = expect_number("a step count");
            expect_punct(";");
        }
        expect_word("pre");
        q.pre = expect_ident("a constraint name");
        expect_punct(";");
        expect_word("post");
        q.post = expect_ident("a constraint name");
        expect_punct(";");
        expect_word("init");
        q.inits.push_back(expect_ident("a graph name"));
        while (at_punct(",")) {
            eat();
            q.inits.push_back(expect_ident("a graph name"));
        }
        expect_punct(";");
        expect_word("automaton");
        q.automaton = expect_ident("an automaton name");
        expect_punct(";");
        if (at_word("method")) {
            eat();
            std::string method = expect_ident("direct, reduction, or both");
            if (method == "direct") {
                q.method = Method::Direct;
            } else if (method == "reduction") {
                q.method = Method::Reduction;
            } else if (method == "both") {
                q.method = Method::Both;
            } else {
                fail("direct, reduction, or both");
            }
            expect_punct(";");
        }
        expect_punct("}");
        return q;
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

} // namespace

ModelFile parse_model(const std::string& text) { return Parser(text).parse(); }

} // namespace gtv
