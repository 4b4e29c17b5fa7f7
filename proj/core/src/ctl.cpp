#include "gtv/ctl.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <optional>
#include <utility>

#include "gtv/errors.hpp"
#include "gtv/lts.hpp"

namespace gtv {

struct CtlFormula::Node {
    Kind kind;
    std::optional<Condition> constraint;
    std::string name;
    std::vector<CtlFormula> children;
};

CtlFormula CtlFormula::atom(Condition constraint, std::string name) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Atom;
    node->constraint = std::move(constraint);
    node->name = std::move(name);
    return CtlFormula(std::move(node));
}

#define GTV_CTL_UNARY(fn, K)                                     \
    CtlFormula CtlFormula::fn(CtlFormula f) {                    \
        auto node = std::make_shared<Node>();                    \
        node->kind = Kind::K;                                    \
        node->children = {std::move(f)};                         \
        return CtlFormula(std::move(node));                      \
    }
#define GTV_CTL_BINARY(fn, K)                                    \
    CtlFormula CtlFormula::fn(CtlFormula a, CtlFormula b) {      \
        auto node = std::make_shared<Node>();                    \
        node->kind = Kind::K;                                    \
        node->children = {std::move(a), std::move(b)};           \
        return CtlFormula(std::move(node));                      \
    }

GTV_CTL_UNARY(negation, Not)
GTV_CTL_UNARY(ax, AX)
GTV_CTL_UNARY(ex, EX)
GTV_CTL_UNARY(ag, AG)
GTV_CTL_UNARY(eg, EG)
GTV_CTL_BINARY(conj, And)
GTV_CTL_BINARY(disj, Or)
GTV_CTL_BINARY(implies, Implies)
GTV_CTL_BINARY(au, AU)
GTV_CTL_BINARY(eu, EU)
GTV_CTL_BINARY(aw, AW)
GTV_CTL_BINARY(ew, EW)

#undef GTV_CTL_UNARY
#undef GTV_CTL_BINARY

CtlFormula::Kind CtlFormula::kind() const { return node_->kind; }

const Condition& CtlFormula::constraint() const {
    assert(node_->kind == Kind::Atom);
    return *node_->constraint;
}

const std::string& CtlFormula::atom_name() const { return node_->name; }

const CtlFormula& CtlFormula::left() const { return node_->children.at(0); }

const CtlFormula& CtlFormula::right() const { return node_->children.at(1); }

std::string CtlFormula::to_string() const {
    switch (node_->kind) {
    case Kind::Atom:
        return node_->name;
    case Kind::Not:
        return "!" + left().to_string();
    case Kind::And:
        return "(" + left().to_string() + " & " + right().to_string() + ")";
    case Kind::Or:
        return "(" + left().to_string() + " | " + right().to_string() + ")";
    case Kind::Implies:
        return "(" + left().to_string() + " -> " + right().to_string() + ")";
    case Kind::AX:
        return "AX " + left().to_string();
    case Kind::EX:
        return "EX " + left().to_string();
    case Kind::AG:
        return "AG " + left().to_string();
    case Kind::EG:
        return "EG " + left().to_string();
    case Kind::AU:
        return "A(" + left().to_string() + " U " + right().to_string() + ")";
    case Kind::EU:
        return "E(" + left().to_string() + " U " + right().to_string() + ")";
    case Kind::AW:
        return "A(" + left().to_string() + " W " + right().to_string() + ")";
    case Kind::EW:
        return "E(" + left().to_string() + " W " + right().to_string() + ")";
    }
    return "?";
}

bool CtlFormula::operator==(const CtlFormula& other) const {
    if (node_ == other.node_) return true;
    if (node_->kind != other.node_->kind) return false;
    if (node_->kind == Kind::Atom) {
        return node_->name == other.node_->name &&
               *node_->constraint == *other.node_->constraint;
    }
    if (node_->children.size() != other.node_->children.size()) return false;
    for (std::size_t i = 0; i < node_->children.size(); ++i) {
        if (!(node_->children[i] == other.node_->children[i])) return false;
    }
    return true;
}

namespace {

using Bits = std::vector<char>;

/*
  Bottom-up state labeling. EX, EU and EG are computed with backward
  worklists over a predecessor index; the remaining operators reduce to
  those three:

      AX f       = !EX !f
      AG f       = !E(true U !f)
      A(a U b)   = !( E(!b U !a&!b) | EG !b )
      A(a W b)   = !E(!b U !a&!b)
      E(a W b)   = E(a U b) | EG a
*/
class Labeler {
public:
    explicit Labeler(const Lts& l) : lts_(l) {
        preds_.resize(l.states.size());
        succs_.resize(l.states.size());
        for (const auto& t : l.transitions) {
            preds_[t.to].push_back(t.from);
            succs_[t.from].push_back(t.to);
        }
    }

    Bits label(const CtlFormula& f) {
        using K = CtlFormula::Kind;
        const int n = static_cast<int>(lts_.states.size());
        switch (f.kind()) {
        case K::Atom: {
            Bits out(n, 0);
            for (int s = 0; s < n; ++s)
                out[s] = graph_satisfies(lts_.states[s], f.constraint()) ? 1 : 0;
            return out;
        }
        case K::Not:
            return complement(label(f.left()));
        case K::And:
            return pointwise(label(f.left()), label(f.right()),
                             [](bool a, bool b) { return a && b; });
        case K::Or:
            return pointwise(label(f.left()), label(f.right()),
                             [](bool a, bool b) { return a || b; });
        case K::Implies:
            return pointwise(label(f.left()), label(f.right()),
                             [](bool a, bool b) { return !a || b; });
        case K::EX:
            return ex_set(label(f.left()));
        case K::AX:
            return complement(ex_set(complement(label(f.left()))));
        case K::EU:
            return eu_set(label(f.left()), label(f.right()));
        case K::EG:
            return eg_set(label(f.left()));
        case K::AG: {
            Bits not_f = complement(label(f.left()));
            return complement(eu_set(Bits(n, 1), not_f));
        }
        case K::AU: {
            Bits nb = complement(label(f.right()));
            Bits na = complement(label(f.left()));
            Bits bad = pointwise(na, nb, [](bool a, bool b) { return a && b; });
            Bits esc = eu_set(nb, bad);
            Bits stay = eg_set(nb);
            Bits viol = pointwise(esc, stay, [](bool a, bool b) { return a || b; });
            return complement(viol);
        }
        case K::AW: {
            Bits nb = complement(label(f.right()));
            Bits na = complement(label(f.left()));
            Bits bad = pointwise(na, nb, [](bool a, bool b) { return a && b; });
            return complement(eu_set(nb, bad));
        }
        case K::EW: {
            Bits u = eu_set(label(f.left()), label(f.right()));
            Bits g = eg_set(label(f.left()));
            return pointwise(u, g, [](bool a, bool b) { return a || b; });
        }
        }
        return Bits(lts_.states.size(), 0);
    }

    // -- worklist primitives ------------------------------------------------

    // states with some successor inside `set`
    Bits ex_set(const Bits& set) const {
        Bits out(set.size(), 0);
        for (std::size_t s = 0; s < set.size(); ++s) {
            for (int t : succs_[s]) {
                if (set[t]) {
                    out[s] = 1;
                    break;
                }
            }
        }
        return out;
    }

    // least fixpoint of  F = q | (p & EX F)
    Bits eu_set(const Bits& p, const Bits& q) const {
        Bits out(p.size(), 0);
        std::deque<int> work;
        for (std::size_t s = 0; s < q.size(); ++s) {
            if (q[s]) {
                out[s] = 1;
                work.push_back(static_cast<int>(s));
            }
        }
        while (!work.empty()) {
            int t = work.front();
            work.pop_front();
            for (int s : preds_[t]) {
                if (!out[s] && p[s]) {
                    out[s] = 1;
                    work.push_back(s);
                }
            }
        }
        return out;
    }

    // greatest fixpoint of  F = p & EX F : repeatedly evict states whose
    // last in-set successor disappeared
    Bits eg_set(const Bits& p) const {
        Bits in(p);
        std::vector<int> count(p.size(), 0);
        std::deque<int> work;
        for (std::size_t s = 0; s < p.size(); ++s) {
            if (!in[s]) continue;
            for (int t : succs_[s])
                if (p[t]) ++count[s];
            if (count[s] == 0) {
                in[s] = 0;
                work.push_back(static_cast<int>(s));
            }
        }
        while (!work.empty()) {
            int t = work.front();
            work.pop_front();
            for (int s : preds_[t]) {
                if (!in[s]) continue;
                if (--count[s] == 0) {
                    in[s] = 0;
                    work.push_back(s);
                }
            }
        }
        return in;
    }

    const std::vector<std::vector<int>>& succs() const { return succs_; }

private:
    static Bits complement(Bits b) {
        for (auto& x : b) x = !x;
        return b;
    }

    template <typename F>
    static Bits pointwise(const Bits& a, const Bits& b, F op) {
        Bits out(a.size(), 0);
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = op(a[i], b[i]) ? 1 : 0;
        return out;
    }

    const Lts& lts_;
    std::vector<std::vector<int>> preds_;
    std::vector<std::vector<int>> succs_;
};

// finite path, optionally closed by a loop (loop empty = plain path)
struct Evidence {
    std::vector<int> prefix;
    std::vector<int> loop;
};

/*
  Best-effort counterexample for the outermost failing obligation at state
  s (where sat(f, s) is known false). Drills through And / Implies / AX /
  AG / AU / AW; anything else degenerates to the single-state path [s].
*/
class Explainer {
public:
    Explainer(const Lts& l, Labeler& labeler) : lts_(l), labeler_(labeler) {}

    Evidence explain_false(const CtlFormula& f, int s) {
        using K = CtlFormula::Kind;
        switch (f.kind()) {
        case K::And: {
            Bits lhs = labeler_.label(f.left());
            if (!lhs[s]) return explain_false(f.left(), s);
            return explain_false(f.right(), s);
        }
        case K::Implies:
            // antecedent holds here, consequent fails
            return explain_false(f.right(), s);
        case K::AX: {
            Bits sub = labeler_.label(f.left());
            for (int t : labeler_.succs()[s]) {
                if (!sub[t]) {
                    Evidence w = explain_false(f.left(), t);
                    w.prefix.insert(w.prefix.begin(), s);
                    return w;
                }
            }
            break;
        }
        case K::AG: {
            Bits sub = labeler_.label(f.left());
            Bits bad(sub.size(), 0);
            for (std::size_t i = 0; i < sub.size(); ++i) bad[i] = !sub[i];
            auto path = shortest_path(s, Bits(sub.size(), 1), bad);
            if (path) {
                Evidence w = explain_false(f.left(), path->back());
                w.prefix.erase(w.prefix.begin());
                w.prefix.insert(w.prefix.begin(), path->begin(), path->end());
                return w;
            }
            break;
        }
        case K::AU:
        case K::AW: {
            Bits nb = complementOf(labeler_.label(f.right()));
            Bits na = complementOf(labeler_.label(f.left()));
            Bits bad(nb.size(), 0);
            for (std::size_t i = 0; i < nb.size(); ++i) bad[i] = na[i] && nb[i];
            auto path = shortest_path(s, nb, bad);
            if (path) return Evidence{*path, {}};
            if (f.kind() == K::AU) {
                // no escape to !a&!b, so the failure is a !b cycle
                auto lasso = cycle_within(s, labeler_.eg_set(nb));
                if (lasso) return *lasso;
            }
            break;
        }
        default:
            break;
        }
        return Evidence{{s}, {}};
    }

private:
    static Bits complementOf(Bits b) {
        for (auto& x : b) x = !x;
        return b;
    }

    // shortest path from s to a `target` state travelling through `via`
    // states (the endpoint only needs `target`)
    std::optional<std::vector<int>> shortest_path(int s, const Bits& via,
                                                  const Bits& target) const {
        std::vector<int> parent(lts_.states.size(), -2);
        std::deque<int> work;
        parent[s] = -1;
        work.push_back(s);
        while (!work.empty()) {
            int u = work.front();
            work.pop_front();
            if (target[u]) {
                std::vector<int> path;
                for (int v = u; v != -1; v = parent[v]) path.push_back(v);
                std::reverse(path.begin(), path.end());
                return path;
            }
            if (!via[u]) continue;
            for (int t : labeler_.succs()[u]) {
                if (parent[t] == -2) {
                    parent[t] = u;
                    work.push_back(t);
                }
            }
        }
        return std::nullopt;
    }

    // walk inside an EG-fixpoint set until a state repeats; split the walk
    // into prefix + loop
    std::optional<Evidence> cycle_within(int s, const Bits& set) const {
        if (!set[s]) return std::nullopt;
        std::vector<int> order;
        std::vector<int> seen_at(lts_.states.size(), -1);
        int cur = s;
        while (seen_at[cur] == -1) {
            seen_at[cur] = static_cast<int>(order.size());
            order.push_back(cur);
            int next = -1;
            for (int t : labeler_.succs()[cur]) {
                if (set[t]) {
                    next = t;
                    break;
                }
            }
            if (next == -1) return std::nullopt; // GFP guarantees this never fires
            cur = next;
        }
        int at = seen_at[cur];
        Evidence w;
        w.prefix.assign(order.begin(), order.begin() + at);
        w.loop.assign(order.begin() + at, order.end());
        return w;
    }

    const Lts& lts_;
    Labeler& labeler_;
};

bool all_expanded(const Lts& l, const Evidence& w) {
    for (int s : w.prefix)
        if (!l.expanded[s]) return false;
    for (int s : w.loop)
        if (!l.expanded[s]) return false;
    return true;
}

} // namespace

Verdict ctl_check(const Lts& l, const CtlFormula& f) {
    if (!l.every_state_has_successor()) {
        throw NotCompletedError(
            "ctl_check requires a completed transition system (every state "
            "needs a successor)");
    }
    Labeler labeler(l);
    Bits sat = labeler.label(f);
    int failing = -1;
    for (int s : l.initial) {
        if (!sat[s]) {
            failing = s;
            break;
        }
    }
    if (failing == -1) {
        if (!l.complete) {
            return Verdict::unknown("state space truncated: " + l.truncation_note);
        }
        return Verdict::holds();
    }
    Explainer explainer(l, labeler);
    Evidence w = explainer.explain_false(f, failing);
    std::string note = "initial state " + std::to_string(failing) +
                       " violates " + f.to_string();
    if (!l.complete && !all_expanded(l, w)) {
        return Verdict::unknown("counterexample leaves the explored region: " +
                                l.truncation_note);
    }
    if (!w.loop.empty()) {
        Lasso lasso;
        lasso.prefix = w.prefix;
        lasso.loop = w.loop;
        return Verdict::violated_lasso(std::move(lasso), note);
    }
    return Verdict::violated_path(std::move(w.prefix), note);
}

namespace {

/*
  Reference semantics by explicit path quantification, used only as a
  cross-check. Forward searches from the state under scrutiny:

      EU   depth-first reachability of a b-state through a-states
      EG   a cycle inside the reachable a-region
      AU   neither an (!b)-path to a (!a & !b)-state nor an (!b)-cycle
      AW   no (!b)-path to a (!a & !b)-state
*/
class NaiveEval {
public:
    explicit NaiveEval(const Lts& l) : lts_(l) {
        succs_.resize(l.states.size());
        for (const auto& t : l.transitions) succs_[t.from].push_back(t.to);
    }

    bool eval(int s, const CtlFormula& f) {
        using K = CtlFormula::Kind;
        switch (f.kind()) {
        case K::Atom:
            return graph_satisfies(lts_.states[s], f.constraint());
        case K::Not:
            return !eval(s, f.left());
        case K::And:
            return eval(s, f.left()) && eval(s, f.right());
        case K::Or:
            return eval(s, f.left()) || eval(s, f.right());
        case K::Implies:
            return !eval(s, f.left()) || eval(s, f.right());
        case K::EX:
            for (int t : succs_[s])
                if (eval(t, f.left())) return true;
            return false;
        case K::AX:
            for (int t : succs_[s])
                if (!eval(t, f.left())) return false;
            return true;
        case K::AG: {
            for (int u : reachable(s))
                if (!eval(u, f.left())) return false;
            return true;
        }
        case K::EG:
            return exists_g(s, f.left());
        case K::EU:
            return exists_u(s, f.left(), f.right());
        case K::EW:
            return exists_u(s, f.left(), f.right()) || exists_g(s, f.left());
        case K::AU:
            return !bad_escape(s, f.left(), f.right()) &&
                   !exists_g_not(s, f.right());
        case K::AW:
            return !bad_escape(s, f.left(), f.right());
        }
        return false;
    }

private:
    std::vector<int> reachable(int s) const {
        std::vector<char> seen(lts_.states.size(), 0);
        std::vector<int> order{s};
        seen[s] = 1;
        for (std::size_t i = 0; i < order.size(); ++i) {
            for (int t : succs_[order[i]]) {
                if (!seen[t]) {
                    seen[t] = 1;
                    order.push_back(t);
                }
            }
        }
        return order;
    }

    // some path from s where `a` holds up to (excluding) a state where `b`
    // holds
    bool exists_u(int s, const CtlFormula& a, const CtlFormula& b) {
        std::vector<char> seen(lts_.states.size(), 0);
        std::vector<int> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            if (eval(u, b)) return true;
            if (!eval(u, a)) continue;
            for (int t : succs_[u]) {
                if (!seen[t]) {
                    seen[t] = 1;
                    stack.push_back(t);
                }
            }
        }
        return false;
    }

    // some infinite path from s staying inside `a`-states: a cycle in the
    // a-region reachable from s through a-states
    bool exists_g(int s, const CtlFormula& a) {
        if (!eval(s, a)) return false;
        std::vector<char> region(lts_.states.size(), 0);
        std::vector<int> order{s};
        region[s] = 1;
        for (std::size_t i = 0; i < order.size(); ++i) {
            for (int t : succs_[order[i]]) {
                if (!region[t] && eval(t, a)) {
                    region[t] = 1;
                    order.push_back(t);
                }
            }
        }
        // any state of the region that can come back to itself inside it?
        for (int u : order) {
            std::vector<char> seen(lts_.states.size(), 0);
            std::vector<int> stack;
            for (int t : succs_[u])
                if (region[t] && !seen[t]) {
                    seen[t] = 1;
                    stack.push_back(t);
                }
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                if (v == u) return true;
                for (int t : succs_[v])
                    if (region[t] && !seen[t]) {
                        seen[t] = 1;
                        stack.push_back(t);
                    }
            }
            if (seen[u]) return true;
        }
        return false;
    }

    bool exists_g_not(int s, const CtlFormula& b) {
        CtlFormula nb = CtlFormula::negation(b);
        return exists_g(s, nb);
    }

    // some path through !b-states reaching a !a & !b state
    bool bad_escape(int s, const CtlFormula& a, const CtlFormula& b) {
        std::vector<char> seen(lts_.states.size(), 0);
        std::vector<int> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            if (eval(u, b)) continue; // weak-until discharged on this branch
            if (!eval(u, a)) return true;
            for (int t : succs_[u]) {
                if (!seen[t]) {
                    seen[t] = 1;
                    stack.push_back(t);
                }
            }
        }
        return false;
    }

    const Lts& lts_;
    std::vector<std::vector<int>> succs_;
};

} // namespace

bool eval_ctl_naive(const Lts& l, int state, const CtlFormula& f) {
    if (l.states.size() > 200) {
        throw OracleTooLargeError(
            "naive branching-time evaluation is limited to 200 states");
    }
    NaiveEval eval(l);
    return eval.eval(state, f);
}

} // namespace gtv
