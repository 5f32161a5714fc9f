#pragma once

// Seeded random systems and morphisms for property tests and benchmarks.

#include "ubisim/morphisms.hpp"
#include "ubisim/systems.hpp"

#include <memory>
#include <random>
#include <string>
#include <vector>

namespace ubisim::testing {

struct MealyShape {
    std::size_t states = 4;
    std::size_t inputs = 2;
    std::size_t outputs = 2;
    /// Probability that a (state, input) entry is defined.
    double density = 0.7;
};

inline Names numbered(const std::string& prefix, std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t k = 0; k < n; ++k)
        names.push_back(prefix + std::to_string(k));
    return Names(std::move(names));
}

inline PartialMealyMachine random_mealy(std::mt19937& rng, const MealyShape& shape, const std::string& name = "g") {
    std::bernoulli_distribution defined(shape.density);
    std::uniform_int_distribution<std::size_t> out(0, shape.outputs - 1);
    std::uniform_int_distribution<std::size_t> dst(0, shape.states - 1);
    std::vector<std::optional<MealyStep>> delta(shape.states * shape.inputs);
    for (auto& e : delta)
        if (defined(rng))
            e = MealyStep{out(rng), dst(rng)};
    return PartialMealyMachine(name, numbered("i", shape.inputs), numbered("o", shape.outputs),
                               numbered("s", shape.states), std::move(delta));
}

/// Sizes drawn uniformly from 1..max_states, 1..max_alphabet, mixed densities.
inline MealyShape random_shape(std::mt19937& rng, std::size_t max_states = 6, std::size_t max_alphabet = 3) {
    static constexpr double densities[] = {0.3, 0.5, 0.7, 0.85, 1.0};
    std::uniform_int_distribution<std::size_t> states(1, max_states);
    std::uniform_int_distribution<std::size_t> alphabet(1, max_alphabet);
    std::uniform_int_distribution<std::size_t> pick(0, std::size(densities) - 1);
    MealyShape s;
    s.states = states(rng);
    s.inputs = alphabet(rng);
    s.outputs = alphabet(rng);
    s.density = densities[pick(rng)];
    return s;
}

/// Output alphabet of size 1 or 2 keeps outputs colliding often, so that
/// uncertain-bisimilar pairs are common.
inline std::vector<PartialMealyMachine> random_corpus(std::uint32_t seed, std::size_t count,
                                                      std::size_t max_states = 6, std::size_t max_alphabet = 3) {
    std::mt19937 rng(seed);
    std::vector<PartialMealyMachine> out;
    for (std::size_t k = 0; k < count; ++k)
        out.push_back(random_mealy(rng, random_shape(rng, max_states, max_alphabet), "g" + std::to_string(k)));
    return out;
}

inline SuspensionAutomaton random_sa(std::mt19937& rng, std::size_t states, std::size_t inputs, std::size_t outputs,
                                     double density = 0.5) {
    std::bernoulli_distribution defined(density);
    std::uniform_int_distribution<std::size_t> dst(0, states - 1);
    std::uniform_int_distribution<std::size_t> forced(0, outputs - 1);
    std::vector<std::optional<StateIndex>> in(states * inputs), out(states * outputs);
    for (auto& e : in)
        if (defined(rng))
            e = dst(rng);
    for (std::size_t x = 0; x < states; ++x) {
        bool any = false;
        for (std::size_t o = 0; o < outputs; ++o)
            if (defined(rng)) {
                out[x * outputs + o] = dst(rng);
                any = true;
            }
        if (!any)
            out[x * outputs + forced(rng)] = dst(rng);
    }
    return SuspensionAutomaton("a", numbered("i", inputs), numbered("o", outputs), numbered("s", states),
                               std::move(in), std::move(out));
}

inline std::vector<std::optional<MealyStep>> fill_randomly(std::mt19937& rng, const PartialMealyMachine& m,
                                                           double probability) {
    std::bernoulli_distribution fill(probability);
    std::uniform_int_distribution<std::size_t> out(0, m.outputs().size() - 1);
    std::uniform_int_distribution<std::size_t> dst(0, m.num_states() - 1);
    auto delta = m.delta();
    for (auto& e : delta)
        if (!e && fill(rng))
            e = MealyStep{out(rng), dst(rng)};
    return delta;
}

/// Lax morphism by quotient-then-extend: identify a random pair with
/// lax_identify (falling back to the identity on a conflict), then add random
/// transitions to the quotient where it is undefined.
inline MealyMap random_lax_morphism(std::mt19937& rng, const PartialMealyMachine& source) {
    std::uniform_int_distribution<std::size_t> state(0, source.num_states() - 1);
    auto identified = lax_identify(source, state(rng), state(rng));
    if (std::holds_alternative<LaxConflict>(identified)) {
        const StateIndex x = state(rng);
        identified = lax_identify(source, x, x);
    }
    const auto& q = std::get<LaxQuotient>(identified);
    auto extended = std::make_shared<const PartialMealyMachine>(q.quotient->name(), q.quotient->inputs(),
                                                                q.quotient->outputs(), q.quotient->states(),
                                                                fill_randomly(rng, *q.quotient, 0.5));
    return MealyMap("lax", q.projection.source_ptr(), extended, q.projection.image());
}

/// Oplax morphism: duplicate states of `target`, copy each transition to a
/// random copy of its successor, add random transitions where the target has
/// none, and map every copy back to its original.
inline MealyMap random_oplax_morphism(std::mt19937& rng, const PartialMealyMachine& target) {
    std::uniform_int_distribution<std::size_t> copies(1, 2);
    const std::size_t n = target.num_states();
    std::vector<std::vector<StateIndex>> copy_of(n);
    std::vector<StateIndex> image;
    for (StateIndex d = 0; d < n; ++d)
        for (std::size_t k = copies(rng); k > 0; --k) {
            copy_of[d].push_back(image.size());
            image.push_back(d);
        }
    const std::size_t ni = target.inputs().size();
    std::bernoulli_distribution add(0.5);
    std::uniform_int_distribution<std::size_t> out(0, target.outputs().size() - 1);
    std::uniform_int_distribution<std::size_t> any(0, image.size() - 1);
    std::vector<std::optional<MealyStep>> delta(image.size() * ni);
    for (StateIndex x = 0; x < image.size(); ++x)
        for (SymbolIndex i = 0; i < ni; ++i) {
            if (const auto& e = target.step(image[x], i)) {
                const auto& targets = copy_of[e->target];
                std::uniform_int_distribution<std::size_t> pick(0, targets.size() - 1);
                delta[x * ni + i] = MealyStep{e->output, targets[pick(rng)]};
            } else if (add(rng)) {
                delta[x * ni + i] = MealyStep{out(rng), any(rng)};
            }
        }
    auto source = std::make_shared<const PartialMealyMachine>("c", target.inputs(), target.outputs(),
                                                              numbered("c", image.size()), std::move(delta));
    return MealyMap("oplax", source, std::make_shared<const PartialMealyMachine>(target), std::move(image));
}

}  // namespace ubisim::testing
