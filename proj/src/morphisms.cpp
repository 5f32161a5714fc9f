#include "ubisim/morphisms.hpp"

#include "ubisim/error.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace ubisim {

template <class System>
StateMap<System>::StateMap(std::string name, std::shared_ptr<const System> source,
                           std::shared_ptr<const System> target, std::vector<StateIndex> image)
    : name_(std::move(name)), source_(std::move(source)), target_(std::move(target)), image_(std::move(image)) {
    if (!source_ || !target_)
        throw ContractViolation("state map '" + name_ + "' needs a source and a target");
    if (!(source_->inputs() == target_->inputs()) || !(source_->outputs() == target_->outputs()))
        throw ContractViolation("state map '" + name_ + "': source and target alphabets differ");
    if (image_.size() != source_->num_states())
        throw ValidationError("state map '" + name_ + "' is not total on " + source_->name());
    for (StateIndex y : image_)
        if (y >= target_->num_states())
            throw ValidationError("state map '" + name_ + "' leaves the states of " + target_->name());
}

template class StateMap<PartialMealyMachine>;
template class StateMap<SuspensionAutomaton>;

const char* to_string(MorphismKind kind) {
    switch (kind) {
    case MorphismKind::strict:
        return "strict";
    case MorphismKind::lax:
        return "lax";
    case MorphismKind::oplax:
        return "oplax";
    }
    return "?";
}

const char* to_string(Component component) { return component == Component::input ? "input" : "output"; }

namespace {

bool wants(MorphismKind asked, MorphismKind direction) {
    return asked == MorphismKind::strict || asked == direction;
}

std::string show(const std::optional<MealyStep>& e, const PartialMealyMachine& m) {
    return e ? m.outputs()[e->output] + "/" + m.states()[e->target] : "?";
}

std::string show(const std::optional<StateIndex>& e, const SuspensionAutomaton& a) {
    return e ? a.states()[*e] : "?";
}

}  // namespace

MorphismCheck check_morphism(const MealyMap& h, MorphismKind kind) {
    const auto& c = h.source();
    const auto& d = h.target();
    MorphismCheck out;
    for (StateIndex x = 0; x < c.num_states(); ++x) {
        for (SymbolIndex i = 0; i < c.inputs().size(); ++i) {
            std::optional<MealyStep> mapped = c.step(x, i);
            if (mapped)
                mapped->target = h(mapped->target);
            const auto& there = d.step(h(x), i);
            auto detail = [&] {
                return c.inputs()[i] + ": image of " + c.states()[x] + " gives " + show(mapped, d) + ", " +
                       d.states()[h(x)] + " gives " + show(there, d);
            };
            if (wants(kind, MorphismKind::lax) && mapped && mapped != there)
                out.violations.push_back({x, Component::input, i, MorphismKind::lax, detail()});
            if (wants(kind, MorphismKind::oplax) && there && mapped != there)
                out.violations.push_back({x, Component::input, i, MorphismKind::oplax, detail()});
        }
    }
    return out;
}

MorphismCheck check_morphism(const SaMap& h, MorphismKind kind) {
    const auto& c = h.source();
    const auto& d = h.target();
    MorphismCheck out;
    auto image = [&h](std::optional<StateIndex> e) { return e ? std::optional<StateIndex>(h(*e)) : e; };
    for (StateIndex x = 0; x < c.num_states(); ++x) {
        auto detail = [&](const std::string& label, const std::optional<StateIndex>& mapped,
                          const std::optional<StateIndex>& there) {
            return label + ": image of " + c.states()[x] + " gives " + show(mapped, d) + ", " +
                   d.states()[h(x)] + " gives " + show(there, d);
        };
        // Inputs are ordered covariantly: the source's inputs must appear in the target.
        for (SymbolIndex i = 0; i < c.inputs().size(); ++i) {
            const auto mapped = image(c.input_step(x, i));
            const auto& there = d.input_step(h(x), i);
            const std::string label = "?" + c.inputs()[i];
            if (wants(kind, MorphismKind::lax) && mapped && mapped != there)
                out.violations.push_back({x, Component::input, i, MorphismKind::lax, detail(label, mapped, there)});
            if (wants(kind, MorphismKind::oplax) && there && mapped != there)
                out.violations.push_back({x, Component::input, i, MorphismKind::oplax, detail(label, mapped, there)});
        }
        // Outputs contravariantly: the target's outputs must appear in the source.
        for (SymbolIndex o = 0; o < c.outputs().size(); ++o) {
            const auto mapped = image(c.output_step(x, o));
            const auto& there = d.output_step(h(x), o);
            const std::string label = "!" + c.outputs()[o];
            if (wants(kind, MorphismKind::lax) && there && mapped != there)
                out.violations.push_back({x, Component::output, o, MorphismKind::lax, detail(label, mapped, there)});
            if (wants(kind, MorphismKind::oplax) && mapped && mapped != there)
                out.violations.push_back(
                    {x, Component::output, o, MorphismKind::oplax, detail(label, mapped, there)});
        }
    }
    return out;
}

Relation kernel(const MealyMap& h) { return kernel(std::span<const StateIndex>(h.image())); }
Relation kernel(const SaMap& h) { return kernel(std::span<const StateIndex>(h.image())); }

PartialMealyMachine restrict_along(const MealyMap& h) {
    const auto check = check_morphism(h, MorphismKind::oplax);
    if (!check.ok()) {
        const auto& v = check.violations.front();
        throw ContractViolation("restrict_along: map '" + h.name() + "' is not oplax at state " +
                                h.source().states()[v.state] + " (" + v.detail + ")");
    }
    const auto& c = h.source();
    std::vector<std::optional<MealyStep>> delta = c.delta();
    for (StateIndex x = 0; x < c.num_states(); ++x)
        for (SymbolIndex i = 0; i < c.inputs().size(); ++i)
            if (!h.target().step(h(x), i))
                delta[x * c.inputs().size() + i].reset();
    return PartialMealyMachine(c.name(), c.inputs(), c.outputs(), c.states(), std::move(delta));
}

SuspensionAutomaton restrict_along(const SaMap&) {
    throw UnsupportedError("restrict_along is only provided for partial Mealy machines");
}

std::string class_name(const Names& states, const std::vector<StateIndex>& members) {
    if (members.size() == 1)
        return states[members.front()];
    std::string out = "{";
    for (std::size_t k = 0; k < members.size(); ++k)
        out += (k ? "," : "") + states[members[k]];
    return out + "}";
}

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), StateIndex{0}); }

    StateIndex find(StateIndex x) {
        while (parent_[x] != x)
            x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    /// Keeps the root of `a`.
    void attach(StateIndex a, StateIndex b) { parent_[find(b)] = find(a); }

private:
    std::vector<StateIndex> parent_;
};

struct Classes {
    std::vector<std::vector<StateIndex>> members;
    std::vector<StateIndex> index_of;
};

Classes collect_classes(UnionFind& uf, std::size_t n) {
    Classes out{{}, std::vector<StateIndex>(n)};
    std::vector<std::optional<StateIndex>> slot(n);
    for (StateIndex x = 0; x < n; ++x) {
        const StateIndex root = uf.find(x);
        if (!slot[root]) {
            slot[root] = out.members.size();
            out.members.emplace_back();
        }
        out.members[*slot[root]].push_back(x);
        out.index_of[x] = *slot[root];
    }
    return out;
}

// Quotient whose class transition on i is the first member transition on i.
PartialMealyMachine quotient_machine(const PartialMealyMachine& m, const Classes& classes) {
    const std::size_t ni = m.inputs().size();
    std::vector<std::string> names;
    std::vector<std::optional<MealyStep>> delta(classes.members.size() * ni);
    for (std::size_t k = 0; k < classes.members.size(); ++k) {
        names.push_back(class_name(m.states(), classes.members[k]));
        for (SymbolIndex i = 0; i < ni; ++i)
            for (StateIndex x : classes.members[k])
                if (const auto& e = m.step(x, i)) {
                    delta[k * ni + i] = MealyStep{e->output, classes.index_of[e->target]};
                    break;
                }
    }
    return PartialMealyMachine(m.name() + "/~", m.inputs(), m.outputs(), Names(std::move(names)), std::move(delta));
}

}  // namespace

LaxIdentification lax_identify(const PartialMealyMachine& m, StateIndex x, StateIndex y) {
    const std::size_t n = m.num_states();
    const std::size_t ni = m.inputs().size();
    if (x >= n || y >= n)
        throw ValidationError("lax_identify: state index out of range");

    UnionFind uf(n);
    // witness[root * ni + i]: some member of the class with a transition on i.
    std::vector<std::optional<StateIndex>> witness(n * ni);
    for (StateIndex s = 0; s < n; ++s)
        for (SymbolIndex i = 0; i < ni; ++i)
            if (m.step(s, i))
                witness[s * ni + i] = s;

    std::vector<MergeStep> chain;
    std::deque<MergeStep> pending{{x, y, std::nullopt}};
    while (!pending.empty()) {
        const MergeStep step = pending.front();
        pending.pop_front();
        const StateIndex ru = uf.find(step.left);
        const StateIndex rv = uf.find(step.right);
        if (ru == rv)
            continue;
        chain.push_back(step);

        for (SymbolIndex i = 0; i < ni; ++i) {
            // The state's own transition if it has one, else its class's.
            auto carrier = [&](StateIndex s, StateIndex root) {
                return m.step(s, i) ? std::optional<StateIndex>(s) : witness[root * ni + i];
            };
            const auto a = carrier(step.left, ru);
            const auto b = carrier(step.right, rv);
            if (!a || !b)
                continue;
            const MealyStep& ta = *m.step(*a, i);
            const MealyStep& tb = *m.step(*b, i);
            if (ta.output != tb.output) {
                Classes before = collect_classes(uf, n);
                return LaxConflict{std::move(chain), i, *a, *b, ta.output, tb.output, quotient_machine(m, before)};
            }
            pending.push_back({ta.target, tb.target, i});
        }

        uf.attach(ru, rv);
        for (SymbolIndex i = 0; i < ni; ++i)
            if (!witness[ru * ni + i])
                witness[ru * ni + i] = witness[rv * ni + i];
    }

    Classes classes = collect_classes(uf, n);
    auto quotient = std::make_shared<const PartialMealyMachine>(quotient_machine(m, classes));
    MealyMap projection("quotient", std::make_shared<const PartialMealyMachine>(m), quotient, classes.index_of);
    return LaxQuotient{std::move(quotient), std::move(projection), std::move(classes.members), std::move(chain)};
}

}  // namespace ubisim
