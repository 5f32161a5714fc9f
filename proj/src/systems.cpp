#include "ubisim/systems.hpp"

#include "ubisim/error.hpp"

#include <algorithm>

namespace ubisim {

Names::Names(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t k = 0; k < names_.size(); ++k) {
        if (names_[k].empty())
            throw ValidationError("empty name");
        if (!index_.emplace(names_[k], k).second)
            throw ValidationError("duplicate name '" + names_[k] + "'");
    }
}

std::optional<std::size_t> Names::find(std::string_view name) const {
    auto it = index_.find(name);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

std::size_t Names::index_of(std::string_view name) const {
    if (auto k = find(name))
        return *k;
    throw ValidationError("unknown name '" + std::string(name) + "'");
}

Word parse_word(const Names& alphabet, std::string_view text) {
    Word word;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && (text[pos] == '.' || text[pos] == ' ' || text[pos] == '\t'))
            ++pos;
        std::size_t end = pos;
        while (end < text.size() && text[end] != '.' && text[end] != ' ' && text[end] != '\t')
            ++end;
        if (end > pos)
            word.push_back(alphabet.index_of(text.substr(pos, end - pos)));
        pos = end;
    }
    return word;
}

std::string format_word(const Names& alphabet, std::span<const SymbolIndex> word) {
    std::string text;
    for (std::size_t k = 0; k < word.size(); ++k) {
        if (k > 0)
            text += '.';
        text += alphabet[word[k]];
    }
    return text;
}

// --- structures ----------------------------------------------------------------

bool SaStructure::has_output() const {
    return std::any_of(outputs.begin(), outputs.end(), [](const auto& o) { return o.has_value(); });
}

namespace {

template <class T>
bool submap(const std::vector<std::optional<T>>& t, const std::vector<std::optional<T>>& s) {
    if (t.size() != s.size())
        throw ContractViolation("order_leq: alphabet size mismatch");
    for (std::size_t k = 0; k < t.size(); ++k)
        if (t[k] && t[k] != s[k])
            return false;
    return true;
}

}  // namespace

bool order_leq(const MealyStructure& t, const MealyStructure& s) { return submap(t.entries, s.entries); }

bool order_leq(const SaStructure& t, const SaStructure& s) {
    return submap(t.inputs, s.inputs) && submap(s.outputs, t.outputs);
}

bool order_leq(const PowStructure& t, const PowStructure& s) {
    return std::includes(s.members.begin(), s.members.end(), t.members.begin(), t.members.end());
}

bool order_leq(const SuccessorStructure& t, const SuccessorStructure& s) {
    if (t.index() != s.index())
        throw ContractViolation("order_leq: structure variants differ");
    return std::visit(
        [&s](const auto& left) {
            using T = std::decay_t<decltype(left)>;
            return order_leq(left, std::get<T>(s));
        },
        t);
}

MealyStructure map_structure(const MealyStructure& t, std::span<const StateIndex> f) {
    MealyStructure image = t;
    for (auto& entry : image.entries)
        if (entry)
            entry->target = f[entry->target];
    return image;
}

SaStructure map_structure(const SaStructure& t, std::span<const StateIndex> f) {
    SaStructure image = t;
    for (auto& entry : image.inputs)
        if (entry)
            *entry = f[*entry];
    for (auto& entry : image.outputs)
        if (entry)
            *entry = f[*entry];
    return image;
}

PowStructure map_structure(const PowStructure& t, std::span<const StateIndex> f) {
    PowStructure image;
    for (StateIndex x : t.members)
        image.members.push_back(f[x]);
    std::sort(image.members.begin(), image.members.end());
    image.members.erase(std::unique(image.members.begin(), image.members.end()), image.members.end());
    return image;
}

SuccessorStructure map_structure(const SuccessorStructure& t, std::span<const StateIndex> f) {
    return std::visit([f](const auto& s) -> SuccessorStructure { return map_structure(s, f); }, t);
}

// --- partial Mealy machines -------------------------------------------------------

PartialMealyMachine::PartialMealyMachine(std::string name, Names inputs, Names outputs, Names states,
                                         std::vector<std::optional<MealyStep>> delta)
    : name_(std::move(name)),
      inputs_(std::move(inputs)),
      outputs_(std::move(outputs)),
      states_(std::move(states)),
      delta_(std::move(delta)) {
    if (delta_.size() != states_.size() * inputs_.size())
        throw ValidationError("machine '" + name_ + "': transition table has wrong size");
    for (const auto& entry : delta_) {
        if (!entry)
            continue;
        if (entry->output >= outputs_.size())
            throw ValidationError("machine '" + name_ + "': output out of range");
        if (entry->target >= states_.size())
            throw ValidationError("machine '" + name_ + "': target state out of range");
    }
}

std::size_t PartialMealyMachine::num_transitions() const {
    return static_cast<std::size_t>(
        std::count_if(delta_.begin(), delta_.end(), [](const auto& e) { return e.has_value(); }));
}

bool PartialMealyMachine::is_total() const {
    return std::all_of(delta_.begin(), delta_.end(), [](const auto& e) { return e.has_value(); });
}

MealyStructure PartialMealyMachine::structure(StateIndex state) const {
    auto r = row(state);
    return MealyStructure{{r.begin(), r.end()}};
}

MealyBuilder::MealyBuilder(std::string name, Names inputs, Names outputs, Names states)
    : name_(std::move(name)),
      inputs_(std::move(inputs)),
      outputs_(std::move(outputs)),
      states_(std::move(states)),
      delta_(states_.size() * inputs_.size()) {}

MealyBuilder& MealyBuilder::add(std::string_view source, std::string_view input, std::string_view output,
                                std::string_view target) {
    const StateIndex s = states_.index_of(source);
    const SymbolIndex i = inputs_.index_of(input);
    auto& slot = delta_[s * inputs_.size() + i];
    if (slot)
        throw ValidationError("duplicate transition for (" + std::string(source) + ", " + std::string(input) + ")");
    slot = MealyStep{outputs_.index_of(output), states_.index_of(target)};
    return *this;
}

PartialMealyMachine MealyBuilder::build() const {
    return PartialMealyMachine(name_, inputs_, outputs_, states_, delta_);
}

TotalMealyMachine::TotalMealyMachine(PartialMealyMachine machine) : machine_(std::move(machine)) {
    if (!machine_.is_total())
        throw ValidationError("machine '" + machine_.name() + "' is not total");
}

PartialMealyMachine complete_with_self_loops(const PartialMealyMachine& m, SymbolIndex output) {
    if (output >= m.outputs().size())
        throw ValidationError("completion output out of range");
    auto delta = m.delta();
    for (StateIndex s = 0; s < m.num_states(); ++s)
        for (SymbolIndex i = 0; i < m.inputs().size(); ++i) {
            auto& slot = delta[s * m.inputs().size() + i];
            if (!slot)
                slot = MealyStep{output, s};
        }
    return PartialMealyMachine(m.name(), m.inputs(), m.outputs(), m.states(), std::move(delta));
}

namespace {

void check_run_arguments(const PartialMealyMachine& m, StateIndex state, std::span<const SymbolIndex> word) {
    if (state >= m.num_states())
        throw ValidationError("state index out of range");
    for (SymbolIndex i : word)
        if (i >= m.inputs().size())
            throw ValidationError("input symbol out of range");
}

}  // namespace

std::optional<StateIndex> run(const PartialMealyMachine& m, StateIndex state, std::span<const SymbolIndex> word) {
    check_run_arguments(m, state, word);
    for (SymbolIndex i : word) {
        const auto& step = m.step(state, i);
        if (!step)
            return std::nullopt;
        state = step->target;
    }
    return state;
}

std::optional<SymbolIndex> eval_semantics(const PartialMealyMachine& m, StateIndex state,
                                          std::span<const SymbolIndex> word) {
    if (word.empty())
        throw ContractViolation("eval_semantics: the empty word has no output");
    auto before_last = run(m, state, word.first(word.size() - 1));
    if (!before_last)
        return std::nullopt;
    const auto& last = m.step(*before_last, word.back());
    if (!last)
        return std::nullopt;
    return last->output;
}

// --- suspension automata -----------------------------------------------------

SuspensionAutomaton::SuspensionAutomaton(std::string name, Names inputs, Names outputs, Names states,
                                         std::vector<std::optional<StateIndex>> input_delta,
                                         std::vector<std::optional<StateIndex>> output_delta)
    : name_(std::move(name)),
      inputs_(std::move(inputs)),
      outputs_(std::move(outputs)),
      states_(std::move(states)),
      input_delta_(std::move(input_delta)),
      output_delta_(std::move(output_delta)) {
    if (input_delta_.size() != states_.size() * inputs_.size() ||
        output_delta_.size() != states_.size() * outputs_.size())
        throw ValidationError("automaton '" + name_ + "': transition table has wrong size");
    for (const auto* table : {&input_delta_, &output_delta_})
        for (const auto& entry : *table)
            if (entry && *entry >= states_.size())
                throw ValidationError("automaton '" + name_ + "': target state out of range");
    for (StateIndex s = 0; s < states_.size(); ++s)
        if (!structure(s).has_output())
            throw ValidationError("automaton '" + name_ + "': state '" + states_[s] + "' is blocking");
}

SaStructure SuspensionAutomaton::structure(StateIndex state) const {
    SaStructure t;
    auto in_begin = input_delta_.begin() + static_cast<std::ptrdiff_t>(state * inputs_.size());
    auto out_begin = output_delta_.begin() + static_cast<std::ptrdiff_t>(state * outputs_.size());
    t.inputs.assign(in_begin, in_begin + static_cast<std::ptrdiff_t>(inputs_.size()));
    t.outputs.assign(out_begin, out_begin + static_cast<std::ptrdiff_t>(outputs_.size()));
    return t;
}

SaBuilder::SaBuilder(std::string name, Names inputs, Names outputs, Names states)
    : name_(std::move(name)),
      inputs_(std::move(inputs)),
      outputs_(std::move(outputs)),
      states_(std::move(states)),
      input_delta_(states_.size() * inputs_.size()),
      output_delta_(states_.size() * outputs_.size()) {}

SaBuilder& SaBuilder::input(std::string_view source, std::string_view symbol, std::string_view target) {
    auto& slot = input_delta_[states_.index_of(source) * inputs_.size() + inputs_.index_of(symbol)];
    if (slot)
        throw ValidationError("duplicate input transition for (" + std::string(source) + ", " +
                              std::string(symbol) + ")");
    slot = states_.index_of(target);
    return *this;
}

SaBuilder& SaBuilder::output(std::string_view source, std::string_view symbol, std::string_view target) {
    auto& slot = output_delta_[states_.index_of(source) * outputs_.size() + outputs_.index_of(symbol)];
    if (slot)
        throw ValidationError("duplicate output transition for (" + std::string(source) + ", " +
                              std::string(symbol) + ")");
    slot = states_.index_of(target);
    return *this;
}

SuspensionAutomaton SaBuilder::build() const {
    return SuspensionAutomaton(name_, inputs_, outputs_, states_, input_delta_, output_delta_);
}

// --- powerset systems -------------------------------------------------------------

PowersetSystem::PowersetSystem(std::string name, Names states, std::vector<std::vector<StateIndex>> successors)
    : name_(std::move(name)), states_(std::move(states)), successors_(std::move(successors)) {
    if (successors_.size() != states_.size())
        throw ValidationError("powerset system '" + name_ + "': successor table has wrong size");
    for (auto& set : successors_) {
        for (StateIndex x : set)
            if (x >= states_.size())
                throw ValidationError("powerset system '" + name_ + "': successor out of range");
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
    }
}

// --- disjoint union ------------------------------------------------------------------

namespace {

std::vector<std::string> part_labels(std::span<const std::string* const> names) {
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < names.size(); ++k) {
        const bool repeated = std::count_if(names.begin(), names.end(),
                                            [&](const std::string* n) { return *n == *names[k]; }) > 1;
        labels.push_back(repeated ? *names[k] + "#" + std::to_string(k + 1) : *names[k]);
    }
    return labels;
}

template <class System>
struct UnionLayout {
    std::vector<std::string> state_names;
    std::vector<std::vector<StateIndex>> embeddings;
    std::string name;
};

template <class System>
UnionLayout<System> layout_union(std::span<const System* const> parts) {
    if (parts.empty())
        throw ContractViolation("disjoint_union: no parts");
    for (const System* part : parts)
        if (part->inputs() != parts.front()->inputs() || part->outputs() != parts.front()->outputs())
            throw ContractViolation("disjoint_union: alphabets differ");
    std::vector<const std::string*> names;
    for (const System* part : parts)
        names.push_back(&part->name());
    const auto labels = part_labels(names);

    UnionLayout<System> layout;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        layout.name += (k > 0 ? "+" : "") + labels[k];
        std::vector<StateIndex> embedding;
        for (const auto& s : parts[k]->states().list()) {
            embedding.push_back(layout.state_names.size());
            layout.state_names.push_back(labels[k] + "." + s);
        }
        layout.embeddings.push_back(std::move(embedding));
    }
    return layout;
}

}  // namespace

DisjointUnion<PartialMealyMachine> disjoint_union(std::span<const PartialMealyMachine* const> parts) {
    auto layout = layout_union(parts);
    const std::size_t inputs = parts.front()->inputs().size();
    std::vector<std::optional<MealyStep>> delta(layout.state_names.size() * inputs);
    for (std::size_t k = 0; k < parts.size(); ++k) {
        const auto& embed = layout.embeddings[k];
        for (StateIndex s = 0; s < parts[k]->num_states(); ++s)
            for (SymbolIndex i = 0; i < inputs; ++i)
                if (const auto& step = parts[k]->step(s, i))
                    delta[embed[s] * inputs + i] = MealyStep{step->output, embed[step->target]};
    }
    PartialMealyMachine machine(layout.name, parts.front()->inputs(), parts.front()->outputs(),
                                Names(std::move(layout.state_names)), std::move(delta));
    return {std::move(machine), std::move(layout.embeddings)};
}

DisjointUnion<PartialMealyMachine> disjoint_union(const PartialMealyMachine& left, const PartialMealyMachine& right) {
    const PartialMealyMachine* parts[] = {&left, &right};
    return disjoint_union(std::span<const PartialMealyMachine* const>(parts));
}

DisjointUnion<SuspensionAutomaton> disjoint_union(std::span<const SuspensionAutomaton* const> parts) {
    auto layout = layout_union(parts);
    const std::size_t inputs = parts.front()->inputs().size();
    const std::size_t outputs = parts.front()->outputs().size();
    std::vector<std::optional<StateIndex>> in(layout.state_names.size() * inputs);
    std::vector<std::optional<StateIndex>> out(layout.state_names.size() * outputs);
    for (std::size_t k = 0; k < parts.size(); ++k) {
        const auto& embed = layout.embeddings[k];
        for (StateIndex s = 0; s < parts[k]->num_states(); ++s) {
            for (SymbolIndex i = 0; i < inputs; ++i)
                if (const auto& t = parts[k]->input_step(s, i))
                    in[embed[s] * inputs + i] = embed[*t];
            for (SymbolIndex o = 0; o < outputs; ++o)
                if (const auto& t = parts[k]->output_step(s, o))
                    out[embed[s] * outputs + o] = embed[*t];
        }
    }
    SuspensionAutomaton automaton(layout.name, parts.front()->inputs(), parts.front()->outputs(),
                                  Names(std::move(layout.state_names)), std::move(in), std::move(out));
    return {std::move(automaton), std::move(layout.embeddings)};
}

DisjointUnion<SuspensionAutomaton> disjoint_union(const SuspensionAutomaton& left, const SuspensionAutomaton& right) {
    const SuspensionAutomaton* parts[] = {&left, &right};
    return disjoint_union(std::span<const SuspensionAutomaton* const>(parts));
}

}  // namespace ubisim
