#include "gtv/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace gtv {

bool is_valid_automaton(const RegulationAutomaton& a) {
    if (a.states.empty())
        return false;
    std::set<std::string> states(a.states.begin(), a.states.end());
    if (states.size() != a.states.size() || !states.count(a.start))
        return false;
    std::set<std::pair<std::string, std::string>> seen;
    for (const AutomatonTransition& t : a.transitions) {
        if (!states.count(t.from) || !states.count(t.to))
            return false;
        if (!seen.emplace(t.from, t.to).second)
            return false;
        std::set<std::string> rules(t.selection.begin(), t.selection.end());
        if (rules.size() != t.selection.size())
            return false;
    }
    return true;
}

namespace {

// States reachable from the start; `usable` filters which transitions count.
template <typename Pred>
std::set<std::string> reachable_states(const RegulationAutomaton& a, Pred usable) {
    std::set<std::string> seen = {a.start};
    std::deque<std::string> queue = {a.start};
    while (!queue.empty()) {
        std::string q = queue.front();
        queue.pop_front();
        for (const AutomatonTransition& t : a.transitions) {
            if (t.from != q || !usable(t))
                continue;
            if (seen.insert(t.to).second)
                queue.push_back(t.to);
        }
    }
    return seen;
}

} // namespace

bool is_proper(const RegulationAutomaton& a) {
    for (const AutomatonTransition& t : a.transitions)
        if (t.selection.empty())
            return false;
    std::set<std::string> seen =
        reachable_states(a, [](const AutomatonTransition&) { return true; });
    return seen.size() == a.states.size();
}

RegulationAutomaton properize(const RegulationAutomaton& a) {
    std::set<std::string> kept = reachable_states(
        a, [](const AutomatonTransition& t) { return !t.selection.empty(); });

    RegulationAutomaton out;
    out.name = a.name;
    out.start = a.start;
    for (const std::string& q : a.states)
        if (kept.count(q))
            out.states.push_back(q);
    for (const AutomatonTransition& t : a.transitions)
        if (!t.selection.empty() && kept.count(t.from) && kept.count(t.to))
            out.transitions.push_back(t);
    return out;
}

std::set<std::string> state_labels(const RegulationAutomaton& a) {
    return std::set<std::string>(a.states.begin(), a.states.end());
}

} // namespace gtv
