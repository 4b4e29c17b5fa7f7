#include "gtv/ltl.hpp"

#include <algorithm>
#include <cassert>

#include "gtv/errors.hpp"
#include "buchi.hpp"

namespace gtv {

struct LtlFormula::Node {
    Kind kind;
    std::optional<Condition> constraint;
    std::string name;
    std::vector<LtlFormula> children;
};

namespace {

LtlFormula make_node(LtlFormula::Kind kind, std::vector<LtlFormula> children);

} // namespace

LtlFormula LtlFormula::atom(Condition constraint, std::string name) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Atom;
    node->constraint = std::move(constraint);
    node->name = std::move(name);
    return LtlFormula(std::move(node));
}

#define GTV_LTL_UNARY(fn, kindval)                                            \
    LtlFormula LtlFormula::fn(LtlFormula f) {                                 \
        auto node = std::make_shared<Node>();                                 \
        node->kind = Kind::kindval;                                           \
        node->children.push_back(std::move(f));                               \
        return LtlFormula(std::move(node));                                   \
    }

#define GTV_LTL_BINARY(fn, kindval)                                           \
    LtlFormula LtlFormula::fn(LtlFormula a, LtlFormula b) {                   \
        auto node = std::make_shared<Node>();                                 \
        node->kind = Kind::kindval;                                           \
        node->children.push_back(std::move(a));                               \
        node->children.push_back(std::move(b));                               \
        return LtlFormula(std::move(node));                                   \
    }

GTV_LTL_UNARY(negation, Not)
GTV_LTL_UNARY(next, Next)
GTV_LTL_UNARY(globally, Globally)
GTV_LTL_BINARY(conj, And)
GTV_LTL_BINARY(disj, Or)
GTV_LTL_BINARY(implies, Implies)
GTV_LTL_BINARY(until, Until)
GTV_LTL_BINARY(weak_until, WeakUntil)

#undef GTV_LTL_UNARY
#undef GTV_LTL_BINARY

LtlFormula::Kind LtlFormula::kind() const { return node_->kind; }

const Condition& LtlFormula::constraint() const {
    assert(node_->kind == Kind::Atom);
    return *node_->constraint;
}

const std::string& LtlFormula::atom_name() const {
    assert(node_->kind == Kind::Atom);
    return node_->name;
}

const LtlFormula& LtlFormula::left() const {
    assert(!node_->children.empty());
    return node_->children[0];
}

const LtlFormula& LtlFormula::right() const {
    assert(node_->children.size() == 2);
    return node_->children[1];
}

int LtlFormula::x_depth() const {
    switch (node_->kind) {
    case Kind::Atom:
        return 0;
    case Kind::Not:
    case Kind::Globally:
        return left().x_depth();
    case Kind::Next:
        return 1 + left().x_depth();
    default:
        return std::max(left().x_depth(), right().x_depth());
    }
}

std::string LtlFormula::to_string() const {
    auto wrap = [](const LtlFormula& f) {
        std::string s = f.to_string();
        if (f.kind() == Kind::Atom || f.kind() == Kind::Not ||
            f.kind() == Kind::Next || f.kind() == Kind::Globally)
            return s;
        return "(" + s + ")";
    };
    switch (node_->kind) {
    case Kind::Atom:
        return node_->name;
    case Kind::Not:
        return "!" + wrap(left());
    case Kind::And:
        return wrap(left()) + " & " + wrap(right());
    case Kind::Or:
        return wrap(left()) + " | " + wrap(right());
    case Kind::Implies:
        return wrap(left()) + " -> " + wrap(right());
    case Kind::Next:
        return "X " + wrap(left());
    case Kind::Globally:
        return "G " + wrap(left());
    case Kind::Until:
        return wrap(left()) + " U " + wrap(right());
    case Kind::WeakUntil:
        return wrap(left()) + " W " + wrap(right());
    }
    return "?";
}

bool LtlFormula::operator==(const LtlFormula& other) const {
    if (node_ == other.node_)
        return true;
    if (node_->kind != other.node_->kind)
        return false;
    if (node_->kind == Kind::Atom)
        return node_->name == other.node_->name &&
               *node_->constraint == *other.node_->constraint;
    return node_->children == other.node_->children;
}

// ---------------------------------------------------------------------------

namespace {

void collect_atoms(const LtlFormula& f, AtomTable& table) {
    if (f.kind() == LtlFormula::Kind::Atom) {
        for (const Condition* seen : table.atoms)
            if (*seen == f.constraint())
                return;
        table.atoms.push_back(&f.constraint());
        table.names.push_back(f.atom_name());
        return;
    }
    switch (f.kind()) {
    case LtlFormula::Kind::Not:
    case LtlFormula::Kind::Next:
    case LtlFormula::Kind::Globally:
        collect_atoms(f.left(), table);
        break;
    default:
        collect_atoms(f.left(), table);
        collect_atoms(f.right(), table);
    }
}

int atom_index(const AtomTable& table, const Condition& c) {
    for (size_t i = 0; i < table.atoms.size(); ++i)
        if (*table.atoms[i] == c)
            return static_cast<int>(i);
    assert(false);
    return -1;
}

} // namespace

AtomTable build_atom_table(const Lts& l, const LtlFormula& f) {
    AtomTable table;
    collect_atoms(f, table);
    table.sat.assign(l.states.size(),
                     std::vector<bool>(table.atoms.size(), false));
    for (size_t s = 0; s < l.states.size(); ++s)
        for (size_t a = 0; a < table.atoms.size(); ++a)
            table.sat[s][a] = graph_satisfies(l.states[s], *table.atoms[a]);
    return table;
}

// ---------------------------------------------------------------------------
// Lasso evaluation.
//
// Positions 0 .. p+q-1 (p = prefix length, q = loop length) with the
// deterministic successor next(i); temporal operators are fixpoints over
// that rho-shaped structure, which is exact for the ultimately periodic
// sequence the lasso denotes.

namespace {

class LassoEvaluator {
public:
    LassoEvaluator(const Lts& l, const Lasso& lasso, const AtomTable& table)
        : table_(table) {
        states_ = lasso_states(lasso);
        p_ = static_cast<int>(lasso.prefix.size());
        q_ = static_cast<int>(lasso.loop.size());
        (void)l;
    }

    std::vector<bool> eval(const LtlFormula& f) {
        int n = p_ + q_;
        using Kind = LtlFormula::Kind;
        switch (f.kind()) {
        case Kind::Atom: {
            int a = atom_index(table_, f.constraint());
            std::vector<bool> out(n);
            for (int i = 0; i < n; ++i)
                out[i] = table_.sat[states_[i]][a];
            return out;
        }
        case Kind::Not: {
            std::vector<bool> v = eval(f.left());
            v.flip();
            return v;
        }
        case Kind::And:
        case Kind::Or:
        case Kind::Implies: {
            std::vector<bool> a = eval(f.left());
            std::vector<bool> b = eval(f.right());
            std::vector<bool> out(n);
            for (int i = 0; i < n; ++i)
                out[i] = f.kind() == Kind::And       ? (a[i] && b[i])
                         : f.kind() == Kind::Or      ? (a[i] || b[i])
                                                     : (!a[i] || b[i]);
            return out;
        }
        case Kind::Next: {
            std::vector<bool> v = eval(f.left());
            std::vector<bool> out(n);
            for (int i = 0; i < n; ++i)
                out[i] = v[next(i)];
            return out;
        }
        case Kind::Globally: {
            // greatest fixpoint of out[i] = v[i] && out[next(i)]
            std::vector<bool> out = eval(f.left());
            for (bool changed = true; changed;) {
                changed = false;
                for (int i = n - 1; i >= 0; --i) {
                    bool val = out[i] && out[next(i)];
                    if (val != out[i]) {
                        out[i] = val;
                        changed = true;
                    }
                }
            }
            return out;
        }
        case Kind::Until: {
            // least fixpoint of out[i] = b[i] || (a[i] && out[next(i)])
            std::vector<bool> a = eval(f.left());
            std::vector<bool> out = eval(f.right());
            for (bool changed = true; changed;) {
                changed = false;
                for (int i = n - 1; i >= 0; --i) {
                    bool val = out[i] || (a[i] && out[next(i)]);
                    if (val != out[i]) {
                        out[i] = val;
                        changed = true;
                    }
                }
            }
            return out;
        }
        case Kind::WeakUntil: {
            // a W b  :=  a U b  |  G a
            std::vector<bool> u = eval(LtlFormula::until(f.left(), f.right()));
            std::vector<bool> g = eval(LtlFormula::globally(f.left()));
            std::vector<bool> out(n);
            for (int i = 0; i < n; ++i)
                out[i] = u[i] || g[i];
            return out;
        }
        }
        return {};
    }

private:
    int next(int i) const { return i + 1 < p_ + q_ ? i + 1 : p_; }

    const AtomTable& table_;
    std::vector<int> states_;
    int p_, q_;
};

} // namespace

bool eval_ltl_on_lasso(const Lts& l, const Lasso& lasso, const LtlFormula& f) {
    assert(lasso_is_valid(l, lasso));
    AtomTable table = build_atom_table(l, f);
    LassoEvaluator evaluator(l, lasso, table);
    return evaluator.eval(f)[0];
}

// ---------------------------------------------------------------------------

Verdict ltl_check(const Lts& l, const LtlFormula& f) {
    if (!l.every_state_has_successor())
        throw NotCompletedError(
            "ltl_check: LTS has deadlocked states; run complete_lts first");

    AtomTable table = build_atom_table(l, f);
    std::optional<Lasso> counterexample =
        detail::find_violating_lasso(l, f, table);

    if (!counterexample) {
        if (!l.complete)
            return Verdict::unknown(
                "no violation in the explored region, but exploration was "
                "truncated (" + l.truncation_note + ")");
        return Verdict::holds();
    }

    assert(lasso_is_valid(l, *counterexample));
    assert(!eval_ltl_on_lasso(l, *counterexample, f));
    if (!l.complete) {
        for (int s : lasso_states(*counterexample)) {
            if (!l.expanded[s]) {
                Verdict v = Verdict::unknown(
                    "candidate counterexample leaves the explored region (" +
                    l.truncation_note + ")");
                v.lasso = counterexample;
                return v;
            }
        }
    }
    return Verdict::violated_lasso(*counterexample,
                                   "run violates " + f.to_string());
}

} // namespace gtv
