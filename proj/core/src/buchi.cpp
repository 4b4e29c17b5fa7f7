#include "buchi.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <tuple>

namespace gtv::detail {

namespace {

/*
  Negation normal form over atoms, X, U and R (release). G, W, ->, and
  negation are compiled away:

      G f         =  false R f
      f W g       =  g R (g | f)
      !(f U g)    =  !f R !g          !(f R g)  =  !f U !g
      !(f W g)    =  !g U (!g & !f)

  Nodes are hash-consed into an arena so formula sets in the tableau are
  plain integer sets.
*/
struct Nnf {
    enum Kind { True, False, AtomPos, AtomNeg, And, Or, Next, Until, Release };
    Kind kind;
    int atom = -1; // AtomPos / AtomNeg
    int a = -1;    // first child
    int b = -1;    // second child

    auto tied() const { return std::tie(kind, atom, a, b); }
    bool operator<(const Nnf& o) const { return tied() < o.tied(); }
};

class NnfArena {
public:
    int intern(Nnf node) {
        auto it = index_.find(node);
        if (it != index_.end())
            return it->second;
        int id = static_cast<int>(nodes_.size());
        nodes_.push_back(node);
        index_.emplace(node, id);
        return id;
    }

    const Nnf& operator[](int id) const { return nodes_[id]; }
    int size() const { return static_cast<int>(nodes_.size()); }

private:
    std::vector<Nnf> nodes_;
    std::map<Nnf, int> index_;
};

int to_nnf(const LtlFormula& f, bool positive, const AtomTable& atoms,
           NnfArena& arena) {
    using K = LtlFormula::Kind;
    auto leaf = [&](Nnf::Kind kind, int atom = -1) {
        return arena.intern(Nnf{kind, atom, -1, -1});
    };
    auto binary = [&](Nnf::Kind kind, int a, int b) {
        return arena.intern(Nnf{kind, -1, a, b});
    };
    switch (f.kind()) {
    case K::Atom: {
        int idx = -1;
        for (size_t i = 0; i < atoms.atoms.size(); ++i)
            if (*atoms.atoms[i] == f.constraint())
                idx = static_cast<int>(i);
        assert(idx >= 0);
        return leaf(positive ? Nnf::AtomPos : Nnf::AtomNeg, idx);
    }
    case K::Not:
        return to_nnf(f.left(), !positive, atoms, arena);
    case K::And:
    case K::Or: {
        bool conj = (f.kind() == K::And) == positive;
        return binary(conj ? Nnf::And : Nnf::Or,
                      to_nnf(f.left(), positive, atoms, arena),
                      to_nnf(f.right(), positive, atoms, arena));
    }
    case K::Implies: {
        // f -> g == !f | g
        bool conj = !positive; // negated implication is a conjunction
        int a = to_nnf(f.left(), !positive, atoms, arena);
        int b = to_nnf(f.right(), positive, atoms, arena);
        return binary(conj ? Nnf::And : Nnf::Or, a, b);
    }
    case K::Next:
        return arena.intern(
            Nnf{Nnf::Next, -1, to_nnf(f.left(), positive, atoms, arena), -1});
    case K::Globally: {
        if (positive) // G f = false R f
            return binary(Nnf::Release, leaf(Nnf::False),
                          to_nnf(f.left(), true, atoms, arena));
        // !G f = true U !f
        return binary(Nnf::Until, leaf(Nnf::True),
                      to_nnf(f.left(), false, atoms, arena));
    }
    case K::Until: {
        int a = to_nnf(f.left(), positive, atoms, arena);
        int b = to_nnf(f.right(), positive, atoms, arena);
        return binary(positive ? Nnf::Until : Nnf::Release, a, b);
    }
    case K::WeakUntil: {
        if (positive) { // f W g = g R (g | f)
            int a = to_nnf(f.left(), true, atoms, arena);
            int b = to_nnf(f.right(), true, atoms, arena);
            return binary(Nnf::Release, b, binary(Nnf::Or, b, a));
        }
        // !(f W g) = !g U (!g & !f)
        int na = to_nnf(f.left(), false, atoms, arena);
        int nb = to_nnf(f.right(), false, atoms, arena);
        return binary(Nnf::Until, nb, binary(Nnf::And, nb, na));
    }
    }
    assert(false);
    return -1;
}

// ---------------------------------------------------------------------------
// Tableau (on-the-fly) construction of a generalized Büchi automaton whose
// language is exactly the models of the NNF formula. Classic node-splitting
// algorithm; nodes with equal (old, next) sets are merged.

constexpr int kInitMarker = -1;

struct TableauNode {
    std::set<int> incoming; // finished node ids (or kInitMarker)
    std::set<int> neww, old, next;
};

struct Tableau {
    const NnfArena& arena;
    std::vector<TableauNode> done;

    explicit Tableau(const NnfArena& arena) : arena(arena) {}

    void expand(TableauNode node) {
        if (node.neww.empty()) {
            for (TableauNode& existing : done) {
                if (existing.old == node.old && existing.next == node.next) {
                    existing.incoming.insert(node.incoming.begin(),
                                             node.incoming.end());
                    return;
                }
            }
            int id = static_cast<int>(done.size());
            done.push_back(node);
            TableauNode successor;
            successor.incoming = {id};
            successor.neww = node.next;
            expand(std::move(successor));
            return;
        }

        int f = *node.neww.begin();
        node.neww.erase(node.neww.begin());
        const Nnf& n = arena[f];

        auto contradicted = [&](int id) {
            const Nnf& x = arena[id];
            if (x.kind == Nnf::False)
                return true;
            Nnf neg = x;
            if (x.kind == Nnf::AtomPos)
                neg.kind = Nnf::AtomNeg;
            else if (x.kind == Nnf::AtomNeg)
                neg.kind = Nnf::AtomPos;
            else
                return false;
            for (int o : node.old)
                if (!(arena[o] < neg) && !(neg < arena[o]))
                    return true;
            return false;
        };
        auto add_new = [&](TableauNode& target, int id) {
            if (!target.old.count(id))
                target.neww.insert(id);
        };

        switch (n.kind) {
        case Nnf::False:
            return; // inconsistent node: drop
        case Nnf::True:
            expand(std::move(node));
            return;
        case Nnf::AtomPos:
        case Nnf::AtomNeg:
            if (contradicted(f))
                return;
            node.old.insert(f);
            expand(std::move(node));
            return;
        case Nnf::And: {
            node.old.insert(f);
            add_new(node, n.a);
            add_new(node, n.b);
            expand(std::move(node));
            return;
        }
        case Nnf::Or: {
            TableauNode n1 = node, n2 = node;
            n1.old.insert(f);
            add_new(n1, n.a);
            n2.old.insert(f);
            add_new(n2, n.b);
            expand(std::move(n1));
            expand(std::move(n2));
            return;
        }
        case Nnf::Next:
            node.old.insert(f);
            node.next.insert(n.a);
            expand(std::move(node));
            return;
        case Nnf::Until: {
            // f = a U b:  b  |  (a & X(a U b))
            TableauNode n1 = node, n2 = node;
            n1.old.insert(f);
            add_new(n1, n.a);
            n1.next.insert(f);
            n2.old.insert(f);
            add_new(n2, n.b);
            expand(std::move(n1));
            expand(std::move(n2));
            return;
        }
        case Nnf::Release: {
            // f = a R b:  (b & X(a R b))  |  (a & b)
            TableauNode n1 = node, n2 = node;
            n1.old.insert(f);
            add_new(n1, n.b);
            n1.next.insert(f);
            n2.old.insert(f);
            add_new(n2, n.a);
            add_new(n2, n.b);
            expand(std::move(n1));
            expand(std::move(n2));
            return;
        }
        }
    }
};

struct Buchi {
    // Per tableau node: positive/negative atom obligations and successors.
    std::vector<std::vector<int>> pos, neg;
    std::vector<std::vector<int>> succ;
    std::vector<bool> initial;
    // Generalized acceptance: one set per U-subformula, degeneralized later.
    std::vector<std::vector<bool>> accept; // [set][node]
};

Buchi build_buchi(const NnfArena& arena, int root) {
    Tableau tableau(arena);
    TableauNode start;
    start.incoming = {kInitMarker};
    start.neww = {root};
    tableau.expand(std::move(start));

    int n = static_cast<int>(tableau.done.size());
    Buchi buchi;
    buchi.pos.resize(n);
    buchi.neg.resize(n);
    buchi.succ.resize(n);
    buchi.initial.assign(n, false);

    for (int i = 0; i < n; ++i) {
        const TableauNode& node = tableau.done[i];
        for (int f : node.old) {
            if (arena[f].kind == Nnf::AtomPos)
                buchi.pos[i].push_back(arena[f].atom);
            if (arena[f].kind == Nnf::AtomNeg)
                buchi.neg[i].push_back(arena[f].atom);
        }
        for (int from : node.incoming) {
            if (from == kInitMarker)
                buchi.initial[i] = true;
            else
                buchi.succ[from].push_back(i);
        }
    }

    std::set<int> untils;
    for (int id = 0; id < arena.size(); ++id)
        if (arena[id].kind == Nnf::Until)
            untils.insert(id);
    for (int u : untils) {
        std::vector<bool> set(n, false);
        for (int i = 0; i < n; ++i) {
            const TableauNode& node = tableau.done[i];
            set[i] = !node.old.count(u) || node.old.count(arena[u].b);
        }
        buchi.accept.push_back(std::move(set));
    }
    if (buchi.accept.empty())
        buchi.accept.push_back(std::vector<bool>(n, true));
    return buchi;
}

// ---------------------------------------------------------------------------
// Degeneralized product with the LTS and nested DFS for an accepting cycle.

struct Product {
    const Lts& lts;
    const Buchi& buchi;
    const AtomTable& atoms;
    int layers;

    explicit Product(const Lts& lts, const Buchi& buchi, const AtomTable& atoms)
        : lts(lts), buchi(buchi), atoms(atoms),
          layers(static_cast<int>(buchi.accept.size())) {}

    // Büchi node label consistent with the valuation of LTS state s.
    bool consistent(int node, int s) const {
        for (int a : buchi.pos[node])
            if (!atoms.sat[s][a])
                return false;
        for (int a : buchi.neg[node])
            if (atoms.sat[s][a])
                return false;
        return true;
    }

    struct State {
        int s, node, layer;
        bool operator<(const State& o) const {
            return std::tie(s, node, layer) < std::tie(o.s, o.node, o.layer);
        }
        bool operator==(const State& o) const {
            return s == o.s && node == o.node && layer == o.layer;
        }
    };

    bool accepting(const State& v) const {
        return v.layer == 0 && buchi.accept[0][v.node];
    }

    std::vector<State> initial_states() const {
        std::vector<State> out;
        for (int s : lts.initial)
            for (int node = 0; node < static_cast<int>(buchi.initial.size());
                 ++node)
                if (buchi.initial[node] && consistent(node, s))
                    out.push_back(State{s, node, 0});
        return out;
    }

    std::vector<State> successors(const State& v) const {
        // Layer advances when the *source* node lies in the current
        // acceptance set (standard degeneralization).
        int next_layer =
            buchi.accept[v.layer][v.node] ? (v.layer + 1) % layers : v.layer;
        std::vector<State> out;
        for (int t : lts.out[v.s]) {
            int s2 = lts.transitions[t].to;
            for (int node2 : buchi.succ[v.node])
                if (consistent(node2, s2))
                    out.push_back(State{s2, node2, next_layer});
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
};

/*
  Iterative nested DFS: the blue search explores the product; at postorder of
  an accepting state the red search looks for a cycle back to it. The blue
  stack at that moment is the path from an initial state, the red stack the
  cycle; both are projected onto LTS states to form the lasso.
*/
class NestedDfs {
public:
    explicit NestedDfs(const Product& product) : product_(product) {}

    std::optional<Lasso> run() {
        for (const Product::State& init : product_.initial_states()) {
            if (blue_.count(init))
                continue;
            if (auto found = dfs_blue(init))
                return found;
        }
        return std::nullopt;
    }

private:
    struct Frame {
        Product::State state;
        std::vector<Product::State> succ;
        size_t next = 0;
    };

    std::optional<Lasso> dfs_blue(const Product::State& root) {
        std::vector<Frame> stack;
        blue_.insert(root);
        stack.push_back(Frame{root, product_.successors(root), 0});
        while (!stack.empty()) {
            Frame& top = stack.back();
            if (top.next < top.succ.size()) {
                Product::State w = top.succ[top.next++];
                if (!blue_.count(w)) {
                    blue_.insert(w);
                    stack.push_back(Frame{w, product_.successors(w), 0});
                }
                continue;
            }
            // postorder
            if (product_.accepting(top.state)) {
                std::optional<std::vector<Product::State>> cycle =
                    dfs_red(top.state);
                if (cycle)
                    return assemble(stack, *cycle);
            }
            stack.pop_back();
        }
        return std::nullopt;
    }

    // Searches a nonempty path seed -> ... -> seed; returns the cycle states
    // excluding the final repeat of seed.
    std::optional<std::vector<Product::State>> dfs_red(
        const Product::State& seed) {
        std::vector<Frame> stack;
        red_.insert(seed);
        stack.push_back(Frame{seed, product_.successors(seed), 0});
        while (!stack.empty()) {
            Frame& top = stack.back();
            if (top.next >= top.succ.size()) {
                stack.pop_back();
                continue;
            }
            Product::State w = top.succ[top.next++];
            if (w == seed) {
                std::vector<Product::State> cycle;
                for (const Frame& fr : stack)
                    cycle.push_back(fr.state);
                return cycle;
            }
            if (!red_.count(w)) {
                red_.insert(w);
                stack.push_back(Frame{w, product_.successors(w), 0});
            }
        }
        return std::nullopt;
    }

    Lasso assemble(const std::vector<Frame>& blue_stack,
                   const std::vector<Product::State>& cycle) {
        Lasso lasso;
        for (size_t i = 0; i + 1 < blue_stack.size(); ++i)
            lasso.prefix.push_back(blue_stack[i].state.s);
        for (const Product::State& v : cycle)
            lasso.loop.push_back(v.s);
        return lasso;
    }

    const Product& product_;
    std::set<Product::State> blue_, red_;
};

} // namespace

std::optional<Lasso> find_violating_lasso(const Lts& l, const LtlFormula& f,
                                          const AtomTable& atoms) {
    NnfArena arena;
    int root = to_nnf(f, /*positive=*/false, atoms, arena); // ¬f
    Buchi buchi = build_buchi(arena, root);
    Product product(l, buchi, atoms);
    return NestedDfs(product).run();
}

} // namespace gtv::detail
