#include "ubisim/format.hpp"

#include "ubisim/error.hpp"

#include <memory>
#include <optional>
#include <set>
#include <sstream>

namespace ubisim {

const PartialMealyMachine* Document::find_mealy(std::string_view name) const {
    for (const auto& s : sections)
        if (const auto* m = std::get_if<MealySection>(&s); m && m->machine.name() == name)
            return &m->machine;
    return nullptr;
}

const SuspensionAutomaton* Document::find_sa(std::string_view name) const {
    for (const auto& s : sections)
        if (const auto* a = std::get_if<SaSection>(&s); a && a->automaton.name() == name)
            return &a->automaton;
    return nullptr;
}

const MapSection* Document::find_map(std::string_view name) const {
    for (const auto& s : sections)
        if (const auto* m = std::get_if<MapSection>(&s); m && m->name == name)
            return m;
    return nullptr;
}

const RelSection* Document::find_rel(std::string_view name) const {
    for (const auto& s : sections)
        if (const auto* r = std::get_if<RelSection>(&s); r && r->name == name)
            return r;
    return nullptr;
}

std::size_t Document::transition_count() const {
    std::size_t n = 0;
    for (const auto& s : sections) {
        if (const auto* m = std::get_if<MealySection>(&s))
            n += m->machine.num_transitions();
        else if (const auto* a = std::get_if<SaSection>(&s))
            for (const auto& d : {a->automaton.input_delta(), a->automaton.output_delta()})
                for (const auto& e : d)
                    n += e.has_value();
    }
    return n;
}

bool is_sa(const Document& doc, std::string_view machine) { return doc.find_sa(machine) != nullptr; }

namespace {

std::vector<std::string> tokenize(std::string_view line) {
    if (auto hash = line.find('#'); hash != std::string_view::npos)
        line = line.substr(0, hash);
    std::vector<std::string> out;
    std::istringstream in{std::string(line)};
    for (std::string tok; in >> tok;)
        out.push_back(tok);
    return out;
}

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

// Collects one machine section until the next header, then validates it.
struct MachineDraft {
    enum class Kind { mealy, total_mealy, sa } kind;
    std::string name;
    std::size_t header_line;
    std::optional<Names> inputs, outputs, states;
    std::vector<std::optional<MealyStep>> delta;
    std::vector<std::optional<StateIndex>> in_delta, out_delta;

    Names declare(const Line& line) const {
        if (line.tokens.size() < 2)
            throw ParseError(line.number, "'" + line.tokens[0] + "' needs at least one name");
        try {
            return Names(std::vector<std::string>(line.tokens.begin() + 1, line.tokens.end()));
        } catch (const ValidationError& e) {
            throw ParseError(line.number, e.what());
        }
    }

    std::size_t lookup(const std::optional<Names>& names, const char* what, const std::string& tok,
                       std::size_t line) const {
        if (!names)
            throw ParseError(line, std::string(what) + " must be declared before transitions");
        if (auto k = names->find(tok))
            return *k;
        throw ParseError(line, std::string("undeclared ") + what + " '" + tok + "'");
    }

    void allocate() {
        if (!inputs || !outputs || !states)
            return;
        delta.assign(states->size() * inputs->size(), std::nullopt);
        in_delta.assign(states->size() * inputs->size(), std::nullopt);
        out_delta.assign(states->size() * outputs->size(), std::nullopt);
    }

    void body(const Line& line) {
        const auto& t = line.tokens;
        const std::string& key = t[0];
        auto set_once = [&](std::optional<Names>& slot) {
            if (slot)
                throw ParseError(line.number, "'" + key + "' declared twice");
            slot = declare(line);
            allocate();
        };
        if (key == "inputs")
            return set_once(inputs);
        if (key == "outputs")
            return set_once(outputs);
        if (key == "states")
            return set_once(states);

        const bool is_sa = kind == Kind::sa;
        if (key == "trans" && !is_sa) {
            if (t.size() != 5)
                throw ParseError(line.number, "expected 'trans <src> <in> <out> <dst>'");
            const auto s = lookup(states, "state", t[1], line.number);
            const auto i = lookup(inputs, "input", t[2], line.number);
            const auto o = lookup(outputs, "output", t[3], line.number);
            const auto d = lookup(states, "state", t[4], line.number);
            auto& slot = delta[s * inputs->size() + i];
            if (slot)
                throw ParseError(line.number, "duplicate transition for (" + t[1] + ", " + t[2] + ")");
            slot = MealyStep{o, d};
            return;
        }
        if ((key == "itrans" || key == "otrans") && is_sa) {
            const bool in = key == "itrans";
            if (t.size() != 4)
                throw ParseError(line.number, "expected '" + key + " <src> <symbol> <dst>'");
            const auto s = lookup(states, "state", t[1], line.number);
            const auto a = lookup(in ? inputs : outputs, in ? "input" : "output", t[2], line.number);
            const auto d = lookup(states, "state", t[3], line.number);
            auto& slot = in ? in_delta[s * inputs->size() + a] : out_delta[s * outputs->size() + a];
            if (slot)
                throw ParseError(line.number, "duplicate transition for (" + t[1] + ", " + t[2] + ")");
            slot = d;
            return;
        }
        throw ParseError(line.number, "unexpected '" + key + "' in " + (is_sa ? "sa" : "mealy") + " section");
    }

    Section finish() const {
        if (!inputs || !outputs || !states)
            throw ParseError(header_line, "section '" + name + "' lacks inputs, outputs or states");
        try {
            if (kind == Kind::sa)
                return SaSection{SuspensionAutomaton(name, *inputs, *outputs, *states, in_delta, out_delta)};
            PartialMealyMachine m(name, *inputs, *outputs, *states, delta);
            if (kind == Kind::total_mealy)
                TotalMealyMachine{m};
            return MealySection{std::move(m), kind == Kind::total_mealy};
        } catch (const ValidationError& e) {
            throw ParseError(header_line, "section '" + name + "': " + e.what());
        }
    }
};

struct PairDraft {
    bool is_map;
    std::string name, left, right;
    std::size_t header_line;
    std::vector<NamePair> pairs;
    std::vector<std::size_t> pair_lines;
};

class Parser {
public:
    Document run(std::string_view text) {
        std::size_t number = 0;
        std::size_t start = 0;
        while (start <= text.size()) {
            const auto end = text.find('\n', start);
            const auto raw = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
            ++number;
            auto tokens = tokenize(raw);
            if (!tokens.empty())
                line({number, std::move(tokens)});
            if (end == std::string_view::npos)
                break;
            start = end + 1;
        }
        close();
        return std::move(doc_);
    }

private:
    void line(const Line& l) {
        const auto& key = l.tokens[0];
        if (key == "mealy" || key == "total-mealy" || key == "sa") {
            close();
            if (l.tokens.size() != 2)
                throw ParseError(l.number, "expected '" + key + " <name>'");
            claim(l.tokens[1], l.number);
            machine_ = MachineDraft{key == "sa"            ? MachineDraft::Kind::sa
                                    : key == "mealy"       ? MachineDraft::Kind::mealy
                                                           : MachineDraft::Kind::total_mealy,
                                    l.tokens[1], l.number, {}, {}, {}, {}, {}, {}};
            return;
        }
        if (key == "map") {
            close();
            if (l.tokens.size() != 6 || l.tokens[2] != "from" || l.tokens[4] != "to")
                throw ParseError(l.number, "expected 'map <name> from <machine> to <machine>'");
            claim(l.tokens[1], l.number);
            pairs_ = PairDraft{true, l.tokens[1], l.tokens[3], l.tokens[5], l.number, {}, {}};
            check_machines(*pairs_);
            return;
        }
        if (key == "rel") {
            close();
            const bool one = l.tokens.size() == 4 && l.tokens[2] == "on";
            const bool two = l.tokens.size() == 6 && l.tokens[2] == "on" && l.tokens[4] == "x";
            if (!one && !two)
                throw ParseError(l.number, "expected 'rel <name> on <machine> [x <machine>]'");
            claim(l.tokens[1], l.number);
            pairs_ = PairDraft{false, l.tokens[1], l.tokens[3], two ? l.tokens[5] : l.tokens[3], l.number, {}, {}};
            check_machines(*pairs_);
            return;
        }
        if (machine_)
            return machine_->body(l);
        if (pairs_) {
            if (key != "pair" || l.tokens.size() != 3)
                throw ParseError(l.number, "expected 'pair <state> <state>'");
            pairs_->pairs.emplace_back(l.tokens[1], l.tokens[2]);
            pairs_->pair_lines.push_back(l.number);
            return;
        }
        throw ParseError(l.number, "'" + key + "' outside of any section");
    }

    void claim(const std::string& name, std::size_t number) {
        if (!names_.insert(name).second)
            throw ParseError(number, "name '" + name + "' is declared twice");
    }

    const Names* states_of(const std::string& machine) const {
        if (const auto* m = doc_.find_mealy(machine))
            return &m->states();
        if (const auto* a = doc_.find_sa(machine))
            return &a->states();
        return nullptr;
    }

    void check_machines(const PairDraft& d) const {
        for (const auto* name : {&d.left, &d.right})
            if (!states_of(*name))
                throw ParseError(d.header_line, "unknown machine '" + *name + "'");
        if ((doc_.find_sa(d.left) == nullptr) != (doc_.find_sa(d.right) == nullptr))
            throw ParseError(d.header_line, "'" + d.name + "' relates a mealy machine to a suspension automaton");
    }

    void close() {
        if (machine_)
            doc_.sections.push_back(machine_->finish());
        machine_.reset();
        if (pairs_)
            doc_.sections.push_back(finish_pairs(*pairs_));
        pairs_.reset();
    }

    Section finish_pairs(const PairDraft& d) const {
        const Names& left = *states_of(d.left);
        const Names& right = *states_of(d.right);
        std::set<std::string> mapped;
        std::set<NamePair> seen;
        for (std::size_t k = 0; k < d.pairs.size(); ++k) {
            const auto& [l, r] = d.pairs[k];
            if (!left.find(l))
                throw ParseError(d.pair_lines[k], "undeclared state '" + l + "' of " + d.left);
            if (!right.find(r))
                throw ParseError(d.pair_lines[k], "undeclared state '" + r + "' of " + d.right);
            if (!seen.insert(d.pairs[k]).second)
                throw ParseError(d.pair_lines[k], "duplicate pair (" + l + ", " + r + ")");
            if (d.is_map && !mapped.insert(l).second)
                throw ParseError(d.pair_lines[k], "map '" + d.name + "' assigns " + l + " twice");
        }
        if (d.is_map) {
            for (const auto& s : left.list())
                if (!mapped.count(s))
                    throw ParseError(d.header_line, "map '" + d.name + "' is not total: " + s + " has no image");
            return MapSection{d.name, d.left, d.right, d.pairs};
        }
        return RelSection{d.name, d.left, d.right, d.pairs};
    }

    Document doc_;
    std::set<std::string> names_;
    std::optional<MachineDraft> machine_;
    std::optional<PairDraft> pairs_;
};

void render_names(std::ostream& out, const char* key, const Names& names) {
    out << "  " << key;
    for (const auto& n : names.list())
        out << ' ' << n;
    out << '\n';
}

void render_pairs(std::ostream& out, const std::vector<NamePair>& pairs) {
    for (const auto& [l, r] : pairs)
        out << "  pair " << l << ' ' << r << '\n';
}

}  // namespace

Document parse_document(std::string_view text) { return Parser().run(text); }

std::string render_mealy(const PartialMealyMachine& m, bool total) {
    std::ostringstream out;
    out << (total ? "total-mealy " : "mealy ") << m.name() << '\n';
    render_names(out, "inputs", m.inputs());
    render_names(out, "outputs", m.outputs());
    render_names(out, "states", m.states());
    for (StateIndex x = 0; x < m.num_states(); ++x)
        for (SymbolIndex i = 0; i < m.inputs().size(); ++i)
            if (const auto& e = m.step(x, i))
                out << "  trans " << m.states()[x] << ' ' << m.inputs()[i] << ' ' << m.outputs()[e->output] << ' '
                    << m.states()[e->target] << '\n';
    return out.str();
}

std::string render_sa(const SuspensionAutomaton& a) {
    std::ostringstream out;
    out << "sa " << a.name() << '\n';
    render_names(out, "inputs", a.inputs());
    render_names(out, "outputs", a.outputs());
    render_names(out, "states", a.states());
    for (StateIndex x = 0; x < a.num_states(); ++x) {
        for (SymbolIndex i = 0; i < a.inputs().size(); ++i)
            if (const auto& e = a.input_step(x, i))
                out << "  itrans " << a.states()[x] << ' ' << a.inputs()[i] << ' ' << a.states()[*e] << '\n';
        for (SymbolIndex o = 0; o < a.outputs().size(); ++o)
            if (const auto& e = a.output_step(x, o))
                out << "  otrans " << a.states()[x] << ' ' << a.outputs()[o] << ' ' << a.states()[*e] << '\n';
    }
    return out.str();
}

std::string render_document(const Document& doc) {
    std::ostringstream out;
    for (std::size_t k = 0; k < doc.sections.size(); ++k) {
        if (k)
            out << '\n';
        std::visit(
            [&](const auto& s) {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, MealySection>) {
                    out << render_mealy(s.machine, s.total);
                } else if constexpr (std::is_same_v<T, SaSection>) {
                    out << render_sa(s.automaton);
                } else if constexpr (std::is_same_v<T, MapSection>) {
                    out << "map " << s.name << " from " << s.from << " to " << s.to << '\n';
                    render_pairs(out, s.pairs);
                } else {
                    out << "rel " << s.name << " on " << s.left;
                    if (s.right != s.left)
                        out << " x " << s.right;
                    out << '\n';
                    render_pairs(out, s.pairs);
                }
            },
            doc.sections[k]);
    }
    return out.str();
}

namespace {

template <class System>
StateMap<System> resolve_map(const System* from, const System* to, const MapSection& section) {
    if (!from || !to)
        throw ContractViolation("map '" + section.name + "' does not connect two machines of the requested kind");
    std::vector<StateIndex> image(from->num_states());
    for (const auto& [l, r] : section.pairs)
        image[from->state_index(l)] = to->state_index(r);
    return StateMap<System>(section.name, std::make_shared<const System>(*from), std::make_shared<const System>(*to),
                            std::move(image));
}

}  // namespace

MealyMap resolve_mealy_map(const Document& doc, const MapSection& section) {
    return resolve_map(doc.find_mealy(section.from), doc.find_mealy(section.to), section);
}

SaMap resolve_sa_map(const Document& doc, const MapSection& section) {
    return resolve_map(doc.find_sa(section.from), doc.find_sa(section.to), section);
}

Relation resolve_relation(const Document& doc, const RelSection& section) {
    auto states = [&](const std::string& name) -> const Names& {
        if (const auto* m = doc.find_mealy(name))
            return m->states();
        if (const auto* a = doc.find_sa(name))
            return a->states();
        throw ContractViolation("relation '" + section.name + "' refers to unknown machine '" + name + "'");
    };
    const Names& left = states(section.left);
    const Names& right = states(section.right);
    Relation r(left.size(), right.size());
    for (const auto& [l, x] : section.pairs)
        r.insert(left.index_of(l), right.index_of(x));
    return r;
}

}  // namespace ubisim
