#include "gtv/joint.hpp"

#include <cassert>

#include "gtv/errors.hpp"

namespace gtv {

namespace {

const Rule& find_rule(const GtsModel& m, const std::string& name) {
    for (const Rule& r : m.rules)
        if (r.plain.name == name)
            return r;
    throw UnknownRuleNameError("automaton \"" + m.automaton.name +
                               "\" selects unknown rule \"" + name + "\"");
}

Rule enrich(const Rule& r, const AutomatonTransition& t,
            const std::set<std::string>& states) {
    PlainRule p = r.plain;
    p.left = attach_tag(p.left, t.from, states);
    p.right = attach_tag(p.right, t.to, states);
    // Tag nodes are appended, so the interface embeddings and the ac's
    // prefix context carry over unchanged.
    Rule out(std::move(p), r.ac, r.role);
    out.base = r.plain.name;
    out.pre_state = t.from;
    out.post_state = t.to;
    out.plain.name = out.display_name();
    return out;
}

std::string rule_marking(const Rule& r) {
    return r.role == Role::System ? std::string(kMarkSys) : std::string(kMarkEnv);
}

} // namespace

std::vector<Rule> build_joint(const GtsModel& m) {
    assert(is_valid_automaton(m.automaton) && is_proper(m.automaton));
    std::set<std::string> states = state_labels(m.automaton);
    std::vector<Rule> out;
    for (const AutomatonTransition& t : m.automaton.transitions)
        for (const std::string& name : t.selection)
            out.push_back(enrich(find_rule(m, name), t, states));
    return out;
}

std::set<std::string> premarkings(const GtsModel& m, const std::string& rule_name) {
    find_rule(m, rule_name); // existence check

    std::set<std::string> pre_states; // Q_pre(rule_name)
    for (const AutomatonTransition& t : m.automaton.transitions)
        for (const std::string& name : t.selection)
            if (name == rule_name)
                pre_states.insert(t.from);

    std::set<std::string> prm;
    for (const std::string& q : pre_states) {
        if (q == m.automaton.start)
            prm.insert(std::string(kMarkTop));
        for (const AutomatonTransition& t : m.automaton.transitions) {
            if (t.to != q)
                continue;
            for (const std::string& name : t.selection)
                prm.insert(rule_marking(find_rule(m, name)));
        }
    }
    return prm;
}

std::vector<Rule> build_annotated(const GtsModel& m) {
    std::vector<Rule> joint = build_joint(m);
    std::vector<Rule> out;
    // Fixed marking order keeps rule generation deterministic.
    const std::string order[] = {std::string(kMarkTop), std::string(kMarkSys),
                                 std::string(kMarkEnv)};
    for (const Rule& jr : joint) {
        std::set<std::string> prm = premarkings(m, jr.base);
        for (const std::string& mark : order) {
            if (!prm.count(mark))
                continue;
            PlainRule p = jr.plain;
            p.left = attach_tag(p.left, mark, marking_labels());
            p.right = attach_tag(p.right, rule_marking(jr), marking_labels());
            Rule ar(std::move(p), jr.ac, jr.role);
            ar.base = jr.base;
            ar.pre_state = jr.pre_state;
            ar.post_state = jr.post_state;
            ar.pre_marking = mark;
            ar.plain.name = ar.display_name();
            out.push_back(std::move(ar));
        }
    }
    return out;
}

Graph joint_initial(const Graph& g, const RegulationAutomaton& a) {
    return attach_tag(g, a.start, state_labels(a));
}

Graph annotated_initial(const Graph& g, const RegulationAutomaton& a) {
    return attach_tag(joint_initial(g, a), std::string(kMarkTop), marking_labels());
}

} // namespace gtv
