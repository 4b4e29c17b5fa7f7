#ifndef GTV_MODEL_HPP
#define GTV_MODEL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gtv/correctness.hpp"

namespace gtv {

/*
  Surface syntax of a model file, kept verbatim for round-tripping: parsing
  a printed ModelFile yields an equal ModelFile. Node and edge names live
  only here — compiled graphs are index-based.
*/

struct NodeDecl {
    std::vector<std::string> names; // node a, b : junction;
    std::string label;

    bool operator==(const NodeDecl&) const = default;
};

struct EdgeDecl {
    std::string name; // "" when anonymous; named edges join rule interfaces
    std::string src;
    std::string dst;
    std::string label;

    bool operator==(const EdgeDecl&) const = default;
};

struct GraphItemDecl {
    enum class Kind { Nodes, Edge };
    Kind kind = Kind::Nodes;
    NodeDecl nodes;
    EdgeDecl edge;

    bool operator==(const GraphItemDecl&) const = default;
};

struct PatternDecl {
    std::vector<GraphItemDecl> items;

    bool operator==(const PatternDecl&) const = default;
};

/*
  Condition expression. Exists / Forall carry a pattern block declaring the
  extension: new nodes plus new edges, where edge endpoints may name nodes
  of the enclosing scope (that sharing is what makes the block an extension
  rather than a disjoint graph). Ref names another constraint; it only
  makes sense over the empty context.
*/
struct CondExpr {
    enum class Kind { True, False, Ref, Not, And, Or, Implies, Exists, Forall };
    Kind kind = Kind::True;
    std::string ref;                 // Ref
    std::vector<CondExpr> children;  // Not 1; And/Or/Implies 2; Exists 0-1; Forall 1
    PatternDecl pattern;             // Exists / Forall

    bool operator==(const CondExpr&) const = default;
};

struct GraphDecl {
    std::string name;
    PatternDecl pattern;

    bool operator==(const GraphDecl&) const = default;
};

struct ConstraintDecl {
    std::string name;
    CondExpr expr;

    bool operator==(const ConstraintDecl&) const = default;
};

// The interface of a rule is implicit: nodes shared by name between left
// and right are preserved, as are edges that carry the same name on both
// sides. Anonymous or one-sided elements are deleted / created.
struct RuleDecl {
    std::string name;
    Role role = Role::System; // "system rule" / "environment rule"
    PatternDecl left;
    PatternDecl right;
    std::optional<CondExpr> when; // application condition over the left side

    bool operator==(const RuleDecl&) const = default;
};

struct QueryDecl {
    std::string name;
    QueryKind kind = QueryKind::KStep;
    int k = 0; // meaningful for k-step / weak-k-step only
    std::string pre;
    std::string post;
    std::vector<std::string> inits; // at least one
    std::string automaton;
    Method method = Method::Direct;

    bool operator==(const QueryDecl&) const = default;
};

struct ModelFile {
    std::vector<std::string> alphabet;
    std::vector<GraphDecl> graphs;
    std::vector<ConstraintDecl> constraints;
    std::vector<RuleDecl> rules;
    std::vector<RegulationAutomaton> automata;
    std::vector<QueryDecl> queries;

    bool operator==(const ModelFile&) const = default;
};

/*
  Name resolution and compilation of the surface syntax. Throws
  ResolutionError on dangling references, duplicate names, labels outside
  the alphabet, namespace collisions (alphabet vs. automaton states vs. the
  reserved markings), and malformed rule interfaces.
*/
struct CompiledModel {
    ModelFile surface;
    std::map<std::string, Graph> graphs;
    std::map<std::string, Condition> constraints;
    std::vector<Rule> rules; // declaration order
    std::map<std::string, RegulationAutomaton> automata;
};

CompiledModel compile_model(const ModelFile& m);

// Builds the correctness query a named query declaration describes.
// Exploration limits are not part of the model file; callers supply them.
CorrectnessQuery instantiate_query(const CompiledModel& m, const std::string& query,
                                   const ExplorationLimits& limits);

} // namespace gtv

#endif
