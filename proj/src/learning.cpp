#include "ubisim/learning.hpp"

#include "ubisim/bisim.hpp"
#include "ubisim/error.hpp"

#include <algorithm>
#include <deque>

namespace ubisim {

ObservationTree::ObservationTree(Names inputs, Names outputs)
    : machine_("tree", inputs, std::move(outputs), Names{"_"}, std::vector<std::optional<MealyStep>>(inputs.size())),
      root_(0),
      access_{Word{}} {}

std::string ObservationTree::state_name(const Names& inputs, const Word& access) {
    return access.empty() ? "_" : format_word(inputs, access);
}

ObservationTree ObservationTree::from_tree_machine(PartialMealyMachine m, StateIndex root) {
    const std::size_t n = m.num_states();
    if (root >= n)
        throw ValidationError("from_tree_machine: root out of range");
    std::vector<std::optional<Word>> access(n);
    access[root] = Word{};
    std::deque<StateIndex> queue{root};
    while (!queue.empty()) {
        const StateIndex s = queue.front();
        queue.pop_front();
        for (SymbolIndex i = 0; i < m.inputs().size(); ++i)
            if (const auto& e = m.step(s, i)) {
                if (access[e->target])
                    throw ValidationError("from_tree_machine: state " + m.states()[e->target] +
                                          " has more than one incoming transition");
                Word w = *access[s];
                w.push_back(i);
                access[e->target] = std::move(w);
                queue.push_back(e->target);
            }
    }
    std::vector<Word> words;
    for (StateIndex s = 0; s < n; ++s) {
        if (!access[s])
            throw ValidationError("from_tree_machine: state " + m.states()[s] + " is unreachable from the root");
        words.push_back(std::move(*access[s]));
    }
    return ObservationTree(std::move(m), root, std::move(words));
}

std::optional<StateIndex> ObservationTree::state_of(const Word& word) const {
    auto s = run(machine_, root_, word);
    return s;
}

ObservationTree ObservationTree::record(const Word& word, const std::vector<SymbolIndex>& outputs) const {
    if (word.size() != outputs.size())
        throw ContractViolation("record: word and outputs differ in length");
    const auto& m = machine_;
    for (SymbolIndex i : word)
        if (i >= m.inputs().size())
            throw ValidationError("record: input symbol out of range");
    for (SymbolIndex o : outputs)
        if (o >= m.outputs().size())
            throw ValidationError("record: output symbol out of range");

    std::vector<std::string> names = m.states().list();
    std::vector<std::optional<MealyStep>> delta = m.delta();
    std::vector<Word> access = access_;
    const std::size_t ni = m.inputs().size();
    StateIndex s = root_;
    Word prefix;
    for (std::size_t k = 0; k < word.size(); ++k) {
        prefix.push_back(word[k]);
        auto& slot = delta[s * ni + word[k]];
        if (slot) {
            if (slot->output != outputs[k])
                throw InconsistencyError(prefix, "observation for " + format_word(m.inputs(), prefix) + " gives " +
                                                     m.outputs()[outputs[k]] + ", tree has " +
                                                     m.outputs()[slot->output]);
            s = slot->target;
            continue;
        }
        const StateIndex fresh = names.size();
        std::string name = state_name(m.inputs(), prefix);
        while (std::find(names.begin(), names.end(), name) != names.end())
            name += "'";
        names.push_back(std::move(name));
        access.push_back(prefix);
        slot = MealyStep{outputs[k], fresh};
        delta.resize(delta.size() + ni);
        s = fresh;
    }
    PartialMealyMachine next(m.name(), m.inputs(), m.outputs(), Names(std::move(names)), std::move(delta));
    return ObservationTree(std::move(next), root_, std::move(access));
}

Relation tree_apartness_frontier(const ObservationTree& tree) {
    return complement(uncertain_bisimilarity(tree.machine()));
}

std::variant<MealyMap, TreeMorphismConflict> find_lax_morphism_from_tree(
    const ObservationTree& tree, std::shared_ptr<const PartialMealyMachine> hypothesis, StateIndex root_target) {
    const auto& t = tree.machine();
    if (!hypothesis || !(hypothesis->inputs() == t.inputs()) || !(hypothesis->outputs() == t.outputs()))
        throw ContractViolation("find_lax_morphism_from_tree: alphabets differ");
    if (root_target >= hypothesis->num_states())
        throw ValidationError("find_lax_morphism_from_tree: root target out of range");

    std::vector<StateIndex> image(t.num_states(), 0);
    image[tree.root()] = root_target;
    std::deque<StateIndex> queue{tree.root()};
    while (!queue.empty()) {
        const StateIndex s = queue.front();
        queue.pop_front();
        for (SymbolIndex i = 0; i < t.inputs().size(); ++i) {
            const auto& e = t.step(s, i);
            if (!e)
                continue;
            const auto& there = hypothesis->step(image[s], i);
            if (!there || there->output != e->output) {
                Word w = tree.access_word(s);
                w.push_back(i);
                return TreeMorphismConflict{std::move(w)};
            }
            image[e->target] = there->target;
            queue.push_back(e->target);
        }
    }
    return MealyMap("tree-morphism", std::make_shared<const PartialMealyMachine>(t), std::move(hypothesis),
                    std::move(image));
}

Teacher::Teacher(TotalMealyMachine hidden, StateIndex initial) : hidden_(std::move(hidden)), initial_(initial) {
    if (initial_ >= hidden_.machine().num_states())
        throw ValidationError("teacher: initial state out of range");
}

std::vector<SymbolIndex> Teacher::output_query(const Word& word) {
    if (word.empty())
        throw ContractViolation("output_query: empty word");
    const auto& m = hidden_.machine();
    std::vector<SymbolIndex> out;
    StateIndex s = initial_;
    for (SymbolIndex i : word) {
        if (i >= m.inputs().size())
            throw ValidationError("output_query: input symbol out of range");
        const auto& e = *m.step(s, i);
        out.push_back(e.output);
        s = e.target;
    }
    ++queries_;
    return out;
}

}  // namespace ubisim
