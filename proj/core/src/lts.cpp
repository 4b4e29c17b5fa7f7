#include "gtv/lts.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <tuple>

#include "gtv/canonical.hpp"
#include "gtv/errors.hpp"

namespace gtv {

void Lts::rebuild_out_index() {
    out.assign(states.size(), {});
    for (int t = 0; t < static_cast<int>(transitions.size()); ++t)
        out[transitions[t].from].push_back(t);
}

std::vector<int> Lts::successors(int state) const {
    std::vector<int> succ;
    for (int t : out[state])
        succ.push_back(transitions[t].to);
    return succ;
}

bool Lts::every_state_has_successor() const {
    for (const std::vector<int>& o : out)
        if (o.empty())
            return false;
    return true;
}

namespace {

void note_truncation(Lts& lts, const std::string& what) {
    lts.complete = false;
    if (lts.truncation_note.find(what) == std::string::npos) {
        if (!lts.truncation_note.empty())
            lts.truncation_note += ", ";
        lts.truncation_note += what;
    }
}

} // namespace

Lts explore(std::span<const Rule> rules, std::span<const Graph> inits,
            const ExplorationLimits& limits) {
    Lts lts;
    std::map<std::string, int> index_of_key;
    std::vector<int> depth;

    auto intern = [&](const Graph& g) -> int {
        CanonicalForm form = canonical_form(g);
        auto it = index_of_key.find(form.key);
        if (it != index_of_key.end())
            return it->second;
        if (static_cast<int>(lts.states.size()) >= limits.max_states)
            return -1;
        int idx = static_cast<int>(lts.states.size());
        index_of_key.emplace(form.key, idx);
        lts.states.push_back(std::move(form.graph));
        lts.keys.push_back(std::move(form.key));
        lts.expanded.push_back(false);
        depth.push_back(-1);
        return idx;
    };

    for (const Graph& g : inits) {
        if (g.size() > limits.max_graph_size) {
            note_truncation(lts, "initial graph over size limit");
            continue;
        }
        int idx = intern(g);
        if (idx < 0) {
            note_truncation(lts, "state cap hit");
            continue;
        }
        if (depth[idx] < 0)
            depth[idx] = 0;
        if (std::find(lts.initial.begin(), lts.initial.end(), idx) ==
            lts.initial.end())
            lts.initial.push_back(idx);
    }

    std::set<std::tuple<int, std::string, int>> seen_transitions;
    // States are appended in discovery order, so scanning by index is BFS.
    for (int current = 0; current < static_cast<int>(lts.states.size());
         ++current) {
        if (depth[current] >= limits.max_depth) {
            note_truncation(lts, "depth cap hit");
            continue; // expanded[current] stays false
        }
        bool truncated_here = false;
        std::vector<TransformationStep> steps =
            direct_transformations(rules, lts.states[current]);
        for (const TransformationStep& step : steps) {
            if (step.after.size() > limits.max_graph_size) {
                note_truncation(lts, "successor over size limit");
                truncated_here = true;
                continue;
            }
            int next = intern(step.after);
            if (next < 0) {
                note_truncation(lts, "state cap hit");
                truncated_here = true;
                continue;
            }
            if (depth[next] < 0)
                depth[next] = depth[current] + 1;
            if (seen_transitions
                    .emplace(current, step.rule, next)
                    .second)
                lts.transitions.push_back(LtsTransition{
                    current, TransitionLabel{step.rule, step.base, step.role},
                    next});
        }
        lts.expanded[current] = !truncated_here;
    }

    lts.rebuild_out_index();
    return lts;
}

Lts complete_lts(Lts l) {
    const Rule& skip = skip_rule();
    for (int s = 0; s < static_cast<int>(l.states.size()); ++s) {
        if (!l.out[s].empty())
            continue;
        l.transitions.push_back(LtsTransition{
            s, TransitionLabel{skip.plain.name, skip.base, Role::Skip}, s});
    }
    l.completed_with_skip = true;
    l.rebuild_out_index();
    return l;
}

std::vector<int> lasso_states(const Lasso& l) {
    std::vector<int> states = l.prefix;
    states.insert(states.end(), l.loop.begin(), l.loop.end());
    return states;
}

bool lasso_is_valid(const Lts& l, const Lasso& lasso) {
    if (lasso.loop.empty())
        return false;
    std::vector<int> states = lasso_states(lasso);
    auto connected = [&](int a, int b) {
        for (int t : l.out[a])
            if (l.transitions[t].to == b)
                return true;
        return false;
    };
    for (int s : states)
        if (s < 0 || s >= static_cast<int>(l.states.size()))
            return false;
    for (size_t i = 0; i + 1 < states.size(); ++i)
        if (!connected(states[i], states[i + 1]))
            return false;
    return connected(states.back(), lasso.loop.front());
}

ProjectedTrace project_trace(const Graph& initial,
                             std::span<const TransformationStep> steps,
                             const RegulationAutomaton& automaton) {
    std::set<std::string> states = state_labels(automaton);
    ProjectedTrace out;
    auto push_state = [&](const Graph& g) {
        std::optional<std::string> q = read_tag(g, states);
        if (!q)
            throw MissingTagError("project_trace: state carries no automaton tag");
        out.run.push_back(*q);
        std::optional<std::string> mark = read_tag(g, marking_labels());
        if (mark)
            out.markings.push_back(*mark);
        out.graphs.push_back(
            strip_tags(strip_tags(g, states), marking_labels()));
    };

    push_state(initial);
    for (const TransformationStep& step : steps) {
        push_state(step.after);
        out.rules.push_back(step.rule);
        out.roles.push_back(step.role);
    }
    // Either every state carries a marking (annotated trace) or none does.
    if (!out.markings.empty() && out.markings.size() != out.graphs.size())
        throw MissingTagError("project_trace: some states lack a marking tag");
    return out;
}

} // namespace gtv
