#include "ubisim/cli.hpp"

#include "ubisim/bisim.hpp"
#include "ubisim/error.hpp"
#include "ubisim/format.hpp"
#include "ubisim/learning.hpp"
#include "ubisim/morphisms.hpp"
#include "ubisim/simulation.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace ubisim::cli {

namespace {

Document load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot read " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_document(text.str());
}

struct Address {
    std::string machine;
    std::string state;
};

Address split_address(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == text.size())
        throw ValidationError("expected <machine>:<state>, got '" + text + "'");
    return {text.substr(0, colon), text.substr(colon + 1)};
}

// Both states inside one system: the machine itself, or the disjoint union
// when the addresses name different machines.
template <class System>
struct Pair {
    System system;
    StateIndex x = 0;
    StateIndex y = 0;
};

template <class System>
Pair<System> locate(const System* a, const System* b, const Address& left, const Address& right) {
    if (a == b)
        return {*a, a->state_index(left.state), a->state_index(right.state)};
    auto u = disjoint_union(*a, *b);
    return {u.system, u.embeddings[0][a->state_index(left.state)], u.embeddings[1][b->state_index(right.state)]};
}

std::variant<Pair<PartialMealyMachine>, Pair<SuspensionAutomaton>> locate(const Document& doc,
                                                                          const std::string& left_text,
                                                                          const std::string& right_text) {
    const Address left = split_address(left_text);
    const Address right = split_address(right_text);
    const auto* ma = doc.find_mealy(left.machine);
    const auto* mb = doc.find_mealy(right.machine);
    if (ma && mb)
        return locate(ma, mb, left, right);
    const auto* sa = doc.find_sa(left.machine);
    const auto* sb = doc.find_sa(right.machine);
    if (sa && sb)
        return locate(sa, sb, left, right);
    for (const auto* a : {&left, &right})
        if (!doc.find_mealy(a->machine) && !doc.find_sa(a->machine))
            throw ValidationError("unknown machine '" + a->machine + "'");
    throw ContractViolation("cannot relate a mealy machine to a suspension automaton");
}

Pair<PartialMealyMachine> locate_mealy(const Document& doc, const std::string& left, const std::string& right) {
    auto located = locate(doc, left, right);
    if (auto* p = std::get_if<Pair<PartialMealyMachine>>(&located))
        return std::move(*p);
    throw UnsupportedError("this command needs partial Mealy machines");
}

std::string apart_line(const PartialMealyMachine& m, const ApartnessWitness& w) {
    return "APART " + format_word(m.inputs(), w.word) + " " + m.outputs()[w.left_output] + " " +
           m.outputs()[w.right_output];
}

void print_relation(std::ostream& out, const std::string& name, const std::string& machine, const Names& states,
                    const Relation& r) {
    out << "rel " << name << " on " << machine << '\n';
    for (const auto& [x, y] : r.pairs())
        out << "  pair " << states[x] << ' ' << states[y] << '\n';
}

const std::map<std::string, Execution> execution_names{
    {"serial", Execution::serial}, {"parallel", Execution::parallel}, {"worklist", Execution::worklist}};

const std::map<std::string, MorphismKind> kind_names{
    {"strict", MorphismKind::strict}, {"lax", MorphismKind::lax}, {"oplax", MorphismKind::oplax}};

const std::map<std::string, SimulationStyle> style_names{{"hj", SimulationStyle::hughes_jacobs},
                                                         {"openmap", SimulationStyle::open_map}};

struct Options {
    std::string file;
    std::string left;
    std::string right;
    std::string name;
    std::string hidden;
    std::string queries;
    std::string initial;
    Execution execution = Execution::parallel;
    MorphismKind kind = MorphismKind::lax;
    SimulationStyle style = SimulationStyle::hughes_jacobs;
    bool uncertain = false;
};

int check_uncertain(const Options& o, std::ostream& out) {
    const Document doc = load(o.file);
    auto located = locate(doc, o.left, o.right);
    if (auto* p = std::get_if<Pair<SuspensionAutomaton>>(&located)) {
        const bool ok = ioco_compatibility(p->system, o.execution).contains(p->x, p->y);
        out << (ok ? "UNCERTAIN-BISIMILAR" : "APART") << '\n';
        return ok ? holds : refuted;
    }
    const auto& p = std::get<Pair<PartialMealyMachine>>(located);
    if (uncertain_bisimilarity(p.system, o.execution).contains(p.x, p.y)) {
        out << "UNCERTAIN-BISIMILAR\n";
        return holds;
    }
    out << apart_line(p.system, *apartness_witness(p.system, p.x, p.y)) << '\n';
    return refuted;
}

int check_oracle(const Options& o, std::ostream& out) {
    const Document doc = load(o.file);
    const auto p = locate_mealy(doc, o.left, o.right);
    const auto verdict = semantic_oracle_uncertain(p.system, p.x, p.y);
    const char* method = verdict.method == OracleMethod::enumeration ? "enumeration" : "reachability";
    if (verdict.uncertain_bisimilar)
        out << "UNCERTAIN-BISIMILAR";
    else
        out << "APART " << format_word(p.system.inputs(), *verdict.conflict);
    out << " method=" << method << " words=" << verdict.words_examined << '\n';
    return verdict.uncertain_bisimilar ? holds : refuted;
}

int witness(const Options& o, std::ostream& out) {
    const Document doc = load(o.file);
    const auto p = locate_mealy(doc, o.left, o.right);
    if (auto w = apartness_witness(p.system, p.x, p.y)) {
        out << apart_line(p.system, *w) << '\n';
        return refuted;
    }
    out << "UNCERTAIN-BISIMILAR\n";
    return holds;
}

int bisim(const Options& o, std::ostream& out) {
    const Document doc = load(o.file);
    const auto* m = doc.find_mealy(o.name);
    if (!m)
        throw ValidationError("no mealy machine named '" + o.name + "'");
    if (o.uncertain)
        print_relation(out, "uncertain", m->name(), m->states(), uncertain_bisimilarity(*m, o.execution));
    else
        print_relation(out, "bisim", m->name(), m->states(), bisimilarity(*m, o.execution));
    return holds;
}

int ioco_compat(const Options& o, std::ostream& out) {
    const Document doc = load(o.file);
    const auto* a = doc.find_sa(o.name);
    if (!a)
        throw ValidationError("no suspension automaton named '" + o.name + "'");
    print_relation(out, "ioco-compat", a->name(), a->states(), ioco_compatibility(*a, o.execution));
    return holds;
}

const MapSection& find_map(const Document& doc, const std::string& name) {
    if (const auto* m = doc.find_map(name))
        return *m;
    throw ValidationError("no map named '" + name + "'");
}

template <class System>
int report_morphism(const StateMap<System>& h, MorphismKind kind, std::ostream& out) {
    const auto check = check_morphism(h, kind);
    if (check.ok()) {
        out << "OK " << to_string(kind) << '\n';
        return holds;
    }
    const auto& c = h.source();
    out << "FAIL " << to_string(kind) << ' ' << check.violations.size() << '\n';
    for (const auto& v : check.violations) {
        const auto& symbol = v.component == Component::input ? c.inputs()[v.symbol] : c.outputs()[v.symbol];
        out << "  violation " << c.states()[v.state] << ' ' << to_string(v.component) << ' ' << symbol << ' '
            << to_string(v.failed) << " : " << v.detail << '\n';
    }
    return refuted;
}

int morphism(const Options& o, std::ostream& out) {
    const Document doc = load(o.file);
    const auto& section = find_map(doc, o.name);
    if (is_sa(doc, section.from))
        return report_morphism(resolve_sa_map(doc, section), o.kind, out);
    return report_morphism(resolve_mealy_map(doc, section), o.kind, out);
}

void print_chain(std::ostream& out, const PartialMealyMachine& m, const std::vector<MergeStep>& chain) {
    for (const auto& step : chain) {
        out << "merge " << m.states()[step.left] << ' ' << m.states()[step.right];
        if (step.via)
            out << " via " << m.inputs()[*step.via];
        out << '\n';
    }
}

int identify(const Options& o, std::ostream& out) {
    const Document doc = load(o.file);
    const auto p = locate_mealy(doc, o.left, o.right);
    const auto result = lax_identify(p.system, p.x, p.y);
    const auto& m = p.system;
    if (const auto* c = std::get_if<LaxConflict>(&result)) {
        out << "CONFLICT\n";
        print_chain(out, m, c->chain);
        out << "conflict " << m.inputs()[c->input] << ' ' << m.outputs()[c->left_output] << ' '
            << m.outputs()[c->right_output] << '\n';
        return refuted;
    }
    const auto& q = std::get<LaxQuotient>(result);
    out << "QUOTIENT\n";
    print_chain(out, m, q.chain);
    out << '\n' << render_mealy(*q.quotient);
    return holds;
}

int join(const Options& o, std::ostream& out) {
    const Document doc = load(o.file);
    auto located = locate(doc, o.left, o.right);
    if (auto* p = std::get_if<Pair<SuspensionAutomaton>>(&located)) {
        const auto j = joint_simulator(p->system, p->x, p->y);
        if (!j) {
            out << "APART\n";
            return refuted;
        }
        out << "# JOINT-SIMULATOR " << j->join.states()[j->joint_state] << '\n' << render_sa(j->join);
        return holds;
    }
    const auto& p = std::get<Pair<PartialMealyMachine>>(located);
    const auto result = joint_simulator(p.system, p.x, p.y);
    if (const auto* w = std::get_if<ApartnessWitness>(&result)) {
        out << apart_line(p.system, *w) << '\n';
        return refuted;
    }
    const auto& j = std::get<JointSimulator>(result);
    out << "# JOINT-SIMULATOR " << j.join.states()[j.joint_state] << '\n' << render_mealy(j.join);
    return holds;
}

int restrict(const Options& o, std::ostream& out) {
    const Document doc = load(o.file);
    const auto& section = find_map(doc, o.name);
    if (is_sa(doc, section.from))
        restrict_along(resolve_sa_map(doc, section));
    const auto h = resolve_mealy_map(doc, section);
    const auto check = check_morphism(h, MorphismKind::oplax);
    if (!check.ok()) {
        const auto& v = check.violations.front();
        out << "NOT-OPLAX " << h.source().states()[v.state] << " : " << v.detail << '\n';
        return refuted;
    }
    out << render_mealy(restrict_along(h));
    return holds;
}

int simulate(const Options& o, std::ostream& out) {
    const Document doc = load(o.file);
    const auto* section = doc.find_rel(o.name);
    if (!section)
        throw ValidationError("no relation named '" + o.name + "'");
    const Relation r = resolve_relation(doc, *section);
    auto report = [&](const auto& src, const auto& dst) {
        const auto failure = find_simulation_failure(r, src, dst);
        if (failure) {
            const auto& symbol =
                failure->component == Component::input ? src.inputs()[failure->symbol] : src.outputs()[failure->symbol];
            out << "NOT-SIMULATION " << pair_name(src.states()[failure->left], dst.states()[failure->right]) << ' '
                << to_string(failure->component) << ' ' << symbol << '\n';
            return refuted;
        }
        out << "SIMULATION " << to_string(o.style) << '\n';
        return holds;
    };
    if (is_sa(doc, section->left))
        return report(*doc.find_sa(section->left), *doc.find_sa(section->right));
    const auto& src = *doc.find_mealy(section->left);
    const auto& dst = *doc.find_mealy(section->right);
    const int code = report(src, dst);
    if (code != holds)
        return code;
    // Exhibit the span for the requested style and confirm its projections.
    auto w = *canonical_hj_witness(r, src, dst);
    if (o.style == SimulationStyle::open_map)
        w = hj_to_openmap(w, src, dst);
    out << "witness " << (verify_witness(w, src, dst) ? "verified" : "rejected") << '\n';
    return holds;
}

std::vector<Word> split_queries(const Names& inputs, const std::string& text) {
    std::vector<Word> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        Word w = parse_word(inputs, part);
        if (w.empty())
            throw ValidationError("empty query in '" + text + "'");
        out.push_back(std::move(w));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return out;
}

int learn_demo(const Options& o, std::ostream& out) {
    const auto colon = o.hidden.rfind(':');
    if (colon == std::string::npos)
        throw ValidationError("expected --hidden <file>:<machine>");
    const Document doc = load(o.hidden.substr(0, colon));
    const auto* m = doc.find_mealy(o.hidden.substr(colon + 1));
    if (!m)
        throw ValidationError("no mealy machine named '" + o.hidden.substr(colon + 1) + "'");
    const StateIndex initial = o.initial.empty() ? 0 : m->state_index(o.initial);
    Teacher teacher(TotalMealyMachine(*m), initial);
    ObservationTree tree(m->inputs(), m->outputs());
    for (const auto& w : split_queries(m->inputs(), o.queries))
        tree = tree.record(w, teacher.output_query(w));

    out << "TREE\n" << render_mealy(tree.machine());
    const Relation frontier = tree_apartness_frontier(tree);
    std::vector<StatePair> apart;
    for (const auto& [x, y] : frontier.pairs())
        if (x < y)
            apart.emplace_back(x, y);
    out << "FRONTIER " << apart.size() << '\n';
    for (const auto& [x, y] : apart)
        out << "  apart " << tree.machine().states()[x] << ' ' << tree.machine().states()[y] << '\n';
    out << "QUERIES " << teacher.query_count() << '\n';
    return holds;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Uncertain bisimilarity, apartness and simulation checks for partial machines", "ubisim"};
    app.require_subcommand(1);
    Options o;
    std::function<int(const Options&, std::ostream&)> action;

    auto pair_command = [&](CLI::App* sub, auto fn) {
        sub->add_option("file", o.file, "Machine file")->required();
        sub->add_option("left", o.left, "<machine>:<state>")->required();
        sub->add_option("right", o.right, "<machine>:<state>")->required();
        sub->callback([&action, fn] { action = fn; });
        return sub;
    };
    auto named_command = [&](CLI::App* sub, const char* what, auto fn) {
        sub->add_option("file", o.file, "Machine file")->required();
        sub->add_option("name", o.name, what)->required();
        sub->callback([&action, fn] { action = fn; });
        return sub;
    };
    auto exec_option = [&](CLI::App* sub) {
        sub->add_option("--exec", o.execution, "Fixpoint kernel: serial, parallel or worklist")
            ->transform(CLI::CheckedTransformer(execution_names, CLI::ignore_case));
    };

    auto* check = app.add_subcommand("check", "Decide a relation between two states");
    check->require_subcommand(1);
    exec_option(pair_command(check->add_subcommand("uncertain", "Uncertain bisimilarity"), check_uncertain));
    pair_command(check->add_subcommand("oracle", "Uncertain bisimilarity by word enumeration"), check_oracle);
    pair_command(app.add_subcommand("witness", "Shortest apartness witness"), witness);
    auto* bisim_cmd = named_command(app.add_subcommand("bisim", "Bisimilarity of a machine"), "Machine", bisim);
    bisim_cmd->add_flag("--uncertain", o.uncertain, "Print uncertain bisimilarity instead");
    exec_option(bisim_cmd);
    exec_option(named_command(app.add_subcommand("ioco-compat", "ioco compatibility of a suspension automaton"),
                              "Automaton", ioco_compat));
    named_command(app.add_subcommand("morphism", "Check a state map"), "Map", morphism)
        ->add_option("--kind", o.kind, "strict, lax or oplax")
        ->required()
        ->transform(CLI::CheckedTransformer(kind_names, CLI::ignore_case));
    pair_command(app.add_subcommand("identify", "Identify two states by a lax morphism"), identify);
    pair_command(app.add_subcommand("join", "Joint simulator of two states"), join);
    named_command(app.add_subcommand("restrict", "Restrict a machine along an oplax map"), "Map", restrict);
    named_command(app.add_subcommand("simulate", "Check a simulation relation"), "Relation", simulate)
        ->add_option("--style", o.style, "hj or openmap")
        ->transform(CLI::CheckedTransformer(style_names, CLI::ignore_case));
    auto* learn = app.add_subcommand("learn-demo", "Query a hidden machine and print the observation tree");
    learn->add_option("--hidden", o.hidden, "<file>:<machine>")->required();
    learn->add_option("--queries", o.queries, "Comma-separated words, symbols joined by '.'")->required();
    learn->add_option("--initial", o.initial, "Initial state (default: first declared)");
    learn->callback([&action] { action = learn_demo; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return usage_error;
    }

    try {
        return action(o, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }
}

}  // namespace ubisim::cli
