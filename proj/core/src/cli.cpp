#include "gtv/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gtv/errors.hpp"
#include "gtv/model.hpp"
#include "gtv/parser.hpp"
#include "gtv/report.hpp"

namespace gtv {

namespace {

using ordered_json = nlohmann::ordered_json;

CompiledModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ResolutionError(path, "cannot read model file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return compile_model(parse_model(buf.str()));
    } catch (const ParseError& e) {
        throw ParseError(e.line, e.column, e.expected,
                         path + ":" + std::to_string(e.line) + ":" +
                             std::to_string(e.column) + ": " + e.what());
    }
}

const RegulationAutomaton& pick_automaton(const CompiledModel& m,
                                          const std::string& name) {
    if (!name.empty()) {
        auto it = m.automata.find(name);
        if (it == m.automata.end()) {
            throw ResolutionError(name, "unknown automaton '" + name + "'");
        }
        return it->second;
    }
    if (m.automata.size() == 1) return m.automata.begin()->second;
    throw ResolutionError("automaton",
                          m.automata.empty()
                              ? "the model declares no automaton"
                              : "the model declares several automata; pass "
                                "--automaton");
}

const Graph& named_graph(const CompiledModel& m, const std::string& name) {
    auto it = m.graphs.find(name);
    if (it == m.graphs.end()) {
        throw ResolutionError(name, "unknown graph '" + name + "'");
    }
    return it->second;
}

const Condition& named_constraint(const CompiledModel& m,
                                  const std::string& name) {
    auto it = m.constraints.find(name);
    if (it == m.constraints.end()) {
        throw ResolutionError(name, "unknown constraint '" + name + "'");
    }
    return it->second;
}

std::vector<Graph> pick_inits(const CompiledModel& m,
                              const std::vector<std::string>& names) {
    std::vector<Graph> out;
    if (names.empty()) {
        if (m.graphs.size() == 1) {
            out.push_back(m.graphs.begin()->second);
            return out;
        }
        throw ResolutionError("init",
                              m.graphs.empty()
                                  ? "the model declares no graphs"
                                  : "the model declares several graphs; pass "
                                    "--init");
    }
    for (const auto& n : names) out.push_back(named_graph(m, n));
    return out;
}

// Options shared by the state-space subcommands (explore / simulate / dot).
struct SpaceOpts {
    std::string model_path;
    std::string automaton;
    std::vector<std::string> inits;
    bool annotated = false;
    bool completed = false;
    ExplorationLimits limits;
};

void add_space_options(CLI::App* sub, SpaceOpts& o, bool with_completion) {
    sub->add_option("--model", o.model_path, "model file")->required();
    sub->add_option("--automaton", o.automaton,
                    "automaton name (default: the only one)");
    sub->add_option("--init", o.inits, "initial graph name (repeatable)");
    sub->add_flag("--annotated", o.annotated,
                  "use the annotated joint construction (marking tags)");
    if (with_completion) {
        sub->add_flag("--completed", o.completed,
                      "add skip self-loops at deadlocked states");
    }
    sub->add_option("--max-states", o.limits.max_states, "state cap");
    sub->add_option("--max-depth", o.limits.max_depth, "depth cap");
    sub->add_option("--max-graph-size", o.limits.max_graph_size,
                    "per-state |V|+|E| cap");
}

struct BuiltSpace {
    Lts lts;
    RegulationAutomaton automaton; // properized
};

BuiltSpace build_space(const CompiledModel& m, const SpaceOpts& o) {
    GtsModel gm{m.rules, properize(pick_automaton(m, o.automaton))};
    std::vector<Rule> rules =
        o.annotated ? build_annotated(gm) : build_joint(gm);
    std::vector<Graph> starts;
    for (const Graph& g : pick_inits(m, o.inits)) {
        starts.push_back(o.annotated ? annotated_initial(g, gm.automaton)
                                     : joint_initial(g, gm.automaton));
    }
    Lts l = explore(rules, starts, o.limits);
    if (o.completed) l = complete_lts(std::move(l));
    return BuiltSpace{std::move(l), std::move(gm.automaton)};
}

std::string state_to_text(const Graph& g, const RegulationAutomaton& a) {
    std::string line;
    if (auto q = read_tag(g, state_labels(a))) line += *q + " ";
    if (auto m = read_tag(g, marking_labels())) line += "[" + *m + "] ";
    Graph bare = strip_tags(strip_tags(g, state_labels(a)), marking_labels());
    return line + graph_to_text(bare);
}

int verdict_exit_code(Status s) {
    switch (s) {
    case Status::Holds:
        return 0;
    case Status::Violated:
        return 1;
    case Status::Unknown:
        return 2;
    }
    return 2;
}

int do_check(const CompiledModel& model, const std::string& query_name,
             const std::string& kind_str, int k, const std::string& pre,
             const std::string& post, const std::vector<std::string>& inits,
             const std::string& automaton, const std::string& method_str,
             const ExplorationLimits& limits, const std::string& format,
             std::ostream& out, std::ostream& err) {
    if (query_name.empty()) {
        if (kind_str.empty() || pre.empty() || post.empty()) {
            err << "error: check needs either --query or the full "
                   "--kind/--pre/--post form\n";
            return 64;
        }
        if (kind_str == "plain" && method_str != "direct") {
            err << "error: plain correctness supports only --method direct\n";
            return 64;
        }
    }

    static const std::map<std::string, QueryKind> kinds = {
        {"plain", QueryKind::Plain},
        {"k-step", QueryKind::KStep},
        {"last-minute", QueryKind::LastMinute},
        {"weak-k-step", QueryKind::WeakKStep}};
    static const std::map<std::string, Method> methods = {
        {"direct", Method::Direct},
        {"reduction", Method::Reduction},
        {"both", Method::Both}};

    CorrectnessQuery q =
        !query_name.empty()
            ? instantiate_query(model, query_name, limits)
            : CorrectnessQuery{
                  .model = {model.rules, pick_automaton(model, automaton)},
                  .pre = named_constraint(model, pre),
                  .post = named_constraint(model, post),
                  .kind = kinds.at(kind_str),
                  .k = k,
                  .inits = pick_inits(model, inits),
                  .limits = limits,
                  .method = methods.at(method_str)};

    CorrectnessReport rep = check_query(q);
    out << (format == "json" ? report_to_json(rep, q.method)
                             : report_to_text(rep, q.method));
    return verdict_exit_code(rep.verdict.status);
}

int do_explore(const CompiledModel& model, const SpaceOpts& o, bool verbose,
               const std::string& format, std::ostream& out) {
    BuiltSpace s = build_space(model, o);
    const Lts& l = s.lts;
    int deadlocks = 0;
    for (size_t i = 0; i < l.states.size(); ++i) {
        if (l.successors(static_cast<int>(i)).empty()) ++deadlocks;
    }
    if (format == "json") {
        ordered_json j;
        j["states"] = l.states.size();
        j["transitions"] = l.transitions.size();
        j["initial"] = l.initial;
        j["complete"] = l.complete;
        j["deadlocks"] = deadlocks;
        if (!l.truncation_note.empty()) j["note"] = l.truncation_note;
        out << j.dump(2) << "\n";
    } else {
        out << "states: " << l.states.size() << "\n";
        out << "transitions: " << l.transitions.size() << "\n";
        out << "initial: " << l.initial.size() << "\n";
        out << "complete: " << (l.complete ? "true" : "false") << "\n";
        out << "deadlocks: " << deadlocks << "\n";
        if (!l.truncation_note.empty()) {
            out << "note: " << l.truncation_note << "\n";
        }
        if (verbose) {
            for (size_t i = 0; i < l.states.size(); ++i) {
                out << "s" << i << ": " << state_to_text(l.states[i], s.automaton)
                    << "\n";
            }
            for (const LtsTransition& t : l.transitions) {
                out << "s" << t.from << " -> s" << t.to << ": " << t.label.rule
                    << " (" << role_name(t.label.role) << ")\n";
            }
        }
    }
    return 0;
}

int do_simulate(const CompiledModel& model, const SpaceOpts& o, int steps,
                unsigned seed, std::ostream& out, std::ostream& err) {
    if (o.inits.size() > 1) {
        err << "error: simulate takes a single --init\n";
        return 64;
    }
    GtsModel gm{model.rules, properize(pick_automaton(model, o.automaton))};
    std::vector<Rule> rules =
        o.annotated ? build_annotated(gm) : build_joint(gm);
    Graph g = pick_inits(model, o.inits).front();
    g = o.annotated ? annotated_initial(g, gm.automaton)
                    : joint_initial(g, gm.automaton);

    std::mt19937 rng(seed);
    out << "0: (init) " << state_to_text(g, gm.automaton) << "\n";
    for (int i = 1; i <= steps; ++i) {
        std::vector<TransformationStep> succ = direct_transformations(rules, g);
        if (succ.empty()) {
            out << "deadlock after " << (i - 1) << " step"
                << (i == 2 ? "" : "s") << "\n";
            break;
        }
        std::uniform_int_distribution<size_t> pick(0, succ.size() - 1);
        const TransformationStep& t = succ[pick(rng)];
        g = t.after;
        out << i << ": " << t.rule << " (" << role_name(t.role) << ") "
            << state_to_text(g, gm.automaton) << "\n";
    }
    return 0;
}

int do_dot(const CompiledModel& model, const SpaceOpts& o, std::ostream& out) {
    BuiltSpace s = build_space(model, o);
    std::vector<std::pair<std::string, Condition>> constraints(
        model.constraints.begin(), model.constraints.end());
    out << export_dot(s.lts, s.automaton, constraints);
    return 0;
}

} // namespace

CliResult run(const std::vector<std::string>& args) {
    CliResult res;
    std::ostringstream out, err;

    CLI::App app{"graph transformation correctness checker"};
    app.name("gtv");
    app.require_subcommand(1);

    // check
    auto* check = app.add_subcommand("check", "decide a correctness query");
    std::string c_model, c_query, c_kind, c_pre, c_post, c_automaton;
    std::string c_method = "direct";
    std::string c_format = "text";
    int c_k = 0;
    std::vector<std::string> c_inits;
    ExplorationLimits c_limits;
    check->add_option("--model", c_model, "model file")->required();
    auto* q_opt = check->add_option("--query", c_query,
                                    "run a query declared in the model");
    auto* kind_opt =
        check->add_option("--kind", c_kind, "correctness notion")
            ->check(CLI::IsMember(
                {"plain", "k-step", "last-minute", "weak-k-step"}));
    auto* k_opt = check->add_option("--k", c_k, "recovery bound")
                      ->check(CLI::NonNegativeNumber);
    auto* pre_opt = check->add_option("--pre", c_pre, "precondition constraint");
    auto* post_opt =
        check->add_option("--post", c_post, "postcondition constraint");
    auto* init_opt =
        check->add_option("--init", c_inits, "initial graph name (repeatable)");
    auto* aut_opt = check->add_option("--automaton", c_automaton,
                                      "automaton name (default: the only one)");
    auto* method_opt =
        check->add_option("--method", c_method, "direct, reduction or both")
            ->check(CLI::IsMember({"direct", "reduction", "both"}));
    q_opt->excludes(kind_opt)
        ->excludes(k_opt)
        ->excludes(pre_opt)
        ->excludes(post_opt)
        ->excludes(init_opt)
        ->excludes(aut_opt)
        ->excludes(method_opt);
    check->add_option("--max-states", c_limits.max_states, "state cap");
    check->add_option("--max-depth", c_limits.max_depth, "depth cap");
    check->add_option("--max-graph-size", c_limits.max_graph_size,
                      "per-state |V|+|E| cap");
    check->add_option("--format", c_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    // explore
    auto* explore_cmd =
        app.add_subcommand("explore", "build and summarize the state space");
    SpaceOpts e_opts;
    bool e_verbose = false;
    std::string e_format = "text";
    add_space_options(explore_cmd, e_opts, /*with_completion=*/true);
    explore_cmd->add_flag("--verbose", e_verbose, "list states and transitions");
    explore_cmd->add_option("--format", e_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    // simulate
    auto* simulate_cmd =
        app.add_subcommand("simulate", "random walk through the joint system");
    SpaceOpts s_opts;
    int s_steps = 20;
    unsigned s_seed = 0;
    add_space_options(simulate_cmd, s_opts, /*with_completion=*/false);
    simulate_cmd->add_option("--steps", s_steps, "walk length")
        ->check(CLI::NonNegativeNumber);
    simulate_cmd->add_option("--seed", s_seed, "random seed");

    // dot
    auto* dot_cmd = app.add_subcommand("dot", "render the state space as DOT");
    SpaceOpts d_opts;
    add_space_options(dot_cmd, d_opts, /*with_completion=*/true);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(std::move(rev));

        if (check->parsed()) {
            res.exit_code =
                do_check(load_model(c_model), c_query, c_kind, c_k, c_pre,
                         c_post, c_inits, c_automaton, c_method, c_limits,
                         c_format, out, err);
        } else if (explore_cmd->parsed()) {
            res.exit_code =
                do_explore(load_model(e_opts.model_path), e_opts, e_verbose,
                           e_format, out);
        } else if (simulate_cmd->parsed()) {
            res.exit_code = do_simulate(load_model(s_opts.model_path), s_opts,
                                        s_steps, s_seed, out, err);
        } else if (dot_cmd->parsed()) {
            res.exit_code = do_dot(load_model(d_opts.model_path), d_opts, out);
        }
    } catch (const CLI::CallForHelp&) {
        auto subs = app.get_subcommands();
        out << (subs.empty() ? app.help() : subs.front()->help());
        res.exit_code = 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        res.exit_code = 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        res.exit_code = 64;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        res.exit_code = 65;
    } catch (const ResolutionError& e) {
        err << "error: " << e.what() << "\n";
        res.exit_code = 65;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        res.exit_code = 70;
    }

    res.out = out.str();
    res.err = err.str();
    return res;
}

int run_main(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    CliResult res = run(args);
    std::cout << res.out;
    std::cerr << res.err;
    return res.exit_code;
}

} // namespace gtv
