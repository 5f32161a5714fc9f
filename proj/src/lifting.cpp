#include "ubisim/lifting.hpp"

#include "ubisim/error.hpp"

#include <algorithm>
#include <set>

namespace ubisim {

StructureShape shape_of(const SuccessorStructure& t) {
    if (const auto* m = std::get_if<MealyStructure>(&t))
        return {FunctorKind::mealy, m->entries.size(), 0};
    if (const auto* a = std::get_if<SaStructure>(&t))
        return {FunctorKind::suspension, a->inputs.size(), a->outputs.size()};
    return {FunctorKind::powerset, 0, 0};
}

namespace {

bool fits(std::size_t carrier, const MealyStructure& t, std::size_t outputs) {
    return std::all_of(t.entries.begin(), t.entries.end(), [&](const auto& e) {
        return !e || (e->target < carrier && (outputs == 0 || e->output < outputs));
    });
}

bool fits(std::size_t carrier, const SaStructure& t) {
    auto ok = [carrier](const auto& e) { return !e || *e < carrier; };
    return std::all_of(t.inputs.begin(), t.inputs.end(), ok) && std::all_of(t.outputs.begin(), t.outputs.end(), ok);
}

bool fits(std::size_t carrier, const PowStructure& t) {
    return std::all_of(t.members.begin(), t.members.end(), [carrier](StateIndex x) { return x < carrier; });
}

void check_arguments(const Relation& r, const SuccessorStructure& t, const SuccessorStructure& s) {
    if (t.index() != s.index())
        throw ContractViolation("lifting: structure variants differ");
    if (!(shape_of(t) == shape_of(s)))
        throw ContractViolation("lifting: alphabets differ");
    const bool ok = std::visit(
        [&](const auto& left) {
            using T = std::decay_t<decltype(left)>;
            const auto& right = std::get<T>(s);
            if constexpr (std::is_same_v<T, MealyStructure>)
                return fits(r.left_size(), left, 0) && fits(r.right_size(), right, 0);
            else
                return fits(r.left_size(), left) && fits(r.right_size(), right);
        },
        t);
    if (!ok)
        throw ContractViolation("lifting: a successor lies outside the relation's carrier");
}

// Per-entry test shared by the Mealy and SA input parts. `Related` decides a
// pair of defined entries.
template <class Entry, class Related>
bool same_domain(const std::vector<std::optional<Entry>>& t, const std::vector<std::optional<Entry>>& s,
                 Related related) {
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k].has_value() != s[k].has_value())
            return false;
        if (t[k] && !related(*t[k], *s[k]))
            return false;
    }
    return true;
}

template <class Entry, class Related, class Target>
bool extendable(const Relation& r, const std::vector<std::optional<Entry>>& t, const std::vector<std::optional<Entry>>& s,
                Related related, Target target) {
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] && s[k]) {
            if (!related(*t[k], *s[k]))
                return false;
        } else if (t[k]) {
            if (!r.has_successor(target(*t[k])))
                return false;
        } else if (s[k]) {
            if (!r.has_predecessor(target(*s[k])))
                return false;
        }
    }
    return true;
}

bool lifting_direct(const Relation& r, const MealyStructure& t, const MealyStructure& s) {
    return same_domain(t.entries, s.entries, [&](const MealyStep& a, const MealyStep& b) {
        return a.output == b.output && r.contains(a.target, b.target);
    });
}

bool lifting_direct(const Relation& r, const SaStructure& t, const SaStructure& s) {
    auto related = [&](StateIndex a, StateIndex b) { return r.contains(a, b); };
    return t.has_output() && same_domain(t.inputs, s.inputs, related) && same_domain(t.outputs, s.outputs, related);
}

bool lifting_direct(const Relation& r, const PowStructure& t, const PowStructure& s) {
    for (StateIndex a : t.members)
        if (std::none_of(s.members.begin(), s.members.end(), [&](StateIndex b) { return r.contains(a, b); }))
            return false;
    for (StateIndex b : s.members)
        if (std::none_of(t.members.begin(), t.members.end(), [&](StateIndex a) { return r.contains(a, b); }))
            return false;
    return true;
}

bool uncertain_direct(const Relation& r, const MealyStructure& t, const MealyStructure& s) {
    return extendable(
        r, t.entries, s.entries,
        [&](const MealyStep& a, const MealyStep& b) { return a.output == b.output && r.contains(a.target, b.target); },
        [](const MealyStep& e) { return e.target; });
}

bool uncertain_direct(const Relation& r, const SaStructure& t, const SaStructure& s) {
    auto related = [&](StateIndex a, StateIndex b) { return r.contains(a, b); };
    if (!extendable(r, t.inputs, s.inputs, related, [](StateIndex x) { return x; }))
        return false;
    // Going up removes outputs, but at least one shared, related output has to survive.
    for (std::size_t o = 0; o < t.outputs.size(); ++o)
        if (t.outputs[o] && s.outputs[o] && r.contains(*t.outputs[o], *s.outputs[o]))
            return true;
    return false;
}

bool uncertain_direct(const Relation& r, const PowStructure& t, const PowStructure& s) {
    return std::all_of(t.members.begin(), t.members.end(), [&](StateIndex a) { return r.has_successor(a); }) &&
           std::all_of(s.members.begin(), s.members.end(), [&](StateIndex b) { return r.has_predecessor(b); });
}

// --- enumeration -------------------------------------------------------------

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > max_enumerated_structures * 4 / a)
        return max_enumerated_structures * 4;
    return a * b;
}

std::uint64_t power(std::uint64_t base, std::size_t exponent) {
    std::uint64_t out = 1;
    for (std::size_t k = 0; k < exponent; ++k)
        out = saturating_mul(out, base);
    return out;
}

// Odometer over digits with the given radices, most significant first.
template <class Visit>
void for_each_digits(const std::vector<std::size_t>& radices, Visit visit) {
    std::vector<std::size_t> digits(radices.size(), 0);
    if (std::any_of(radices.begin(), radices.end(), [](std::size_t r) { return r == 0; }))
        return;
    while (true) {
        visit(digits);
        std::size_t k = digits.size();
        while (k > 0) {
            --k;
            if (++digits[k] < radices[k])
                break;
            digits[k] = 0;
            if (k == 0)
                return;
        }
        if (digits.empty())
            return;
    }
}

SuccessorStructure project(const SuccessorStructure& w, const std::vector<StatePair>& pairs, bool first) {
    std::vector<StateIndex> f;
    for (const auto& p : pairs)
        f.push_back(first ? p.first : p.second);
    return map_structure(w, f);
}

void check_enumeration_size(const StructureShape& shape, std::size_t carrier) {
    if (count_structures(shape, carrier) > max_enumerated_structures)
        throw SizeLimitError("enumeration of F X exceeds " + std::to_string(max_enumerated_structures) + " structures");
}

void check_relation_carrier(const Relation& r) {
    if (r.left_size() > max_enumeration_carrier || r.right_size() > max_enumeration_carrier)
        throw SizeLimitError("enumerative lifting is capped at carriers of size " +
                             std::to_string(max_enumeration_carrier));
}

}  // namespace

bool in_lifting(const Relation& r, const SuccessorStructure& t, const SuccessorStructure& s) {
    check_arguments(r, t, s);
    return std::visit(
        [&](const auto& left) {
            using T = std::decay_t<decltype(left)>;
            return lifting_direct(r, left, std::get<T>(s));
        },
        t);
}

bool in_uncertain_lifting(const Relation& r, const SuccessorStructure& t, const SuccessorStructure& s) {
    check_arguments(r, t, s);
    return std::visit(
        [&](const auto& left) {
            using T = std::decay_t<decltype(left)>;
            return uncertain_direct(r, left, std::get<T>(s));
        },
        t);
}

std::uint64_t count_structures(const StructureShape& shape, std::size_t carrier) {
    switch (shape.kind) {
    case FunctorKind::mealy:
        return power(1 + shape.outputs * carrier, shape.inputs);
    case FunctorKind::suspension: {
        const std::uint64_t outs = power(1 + carrier, shape.outputs);
        return saturating_mul(power(1 + carrier, shape.inputs), outs == 0 ? 0 : outs - 1);
    }
    case FunctorKind::powerset:
        return power(2, carrier);
    }
    return 0;
}

std::vector<SuccessorStructure> enumerate_structures(const StructureShape& shape, std::size_t carrier) {
    check_enumeration_size(shape, carrier);
    std::vector<SuccessorStructure> out;
    switch (shape.kind) {
    case FunctorKind::mealy: {
        std::vector<std::size_t> radices(shape.inputs, 1 + shape.outputs * carrier);
        for_each_digits(radices, [&](const std::vector<std::size_t>& digits) {
            MealyStructure t;
            for (std::size_t d : digits)
                t.entries.push_back(d == 0 ? std::nullopt
                                           : std::optional<MealyStep>(MealyStep{(d - 1) / carrier, (d - 1) % carrier}));
            out.emplace_back(std::move(t));
        });
        break;
    }
    case FunctorKind::suspension: {
        std::vector<std::size_t> radices(shape.inputs + shape.outputs, 1 + carrier);
        for_each_digits(radices, [&](const std::vector<std::size_t>& digits) {
            SaStructure t;
            for (std::size_t k = 0; k < digits.size(); ++k) {
                auto entry = digits[k] == 0 ? std::nullopt : std::optional<StateIndex>(digits[k] - 1);
                (k < shape.inputs ? t.inputs : t.outputs).push_back(entry);
            }
            if (t.has_output())
                out.emplace_back(std::move(t));
        });
        break;
    }
    case FunctorKind::powerset: {
        std::vector<std::size_t> radices(carrier, 2);
        for_each_digits(radices, [&](const std::vector<std::size_t>& digits) {
            PowStructure t;
            for (std::size_t k = 0; k < digits.size(); ++k)
                if (digits[k])
                    t.members.push_back(k);
            out.emplace_back(std::move(t));
        });
        break;
    }
    }
    return out;
}

bool in_uncertain_lifting_enumerative(const Relation& r, const SuccessorStructure& t, const SuccessorStructure& s) {
    check_arguments(r, t, s);
    check_relation_carrier(r);
    const auto pairs = r.pairs();
    for (const auto& w : enumerate_structures(shape_of(t), pairs.size()))
        if (order_leq(t, project(w, pairs, true)) && order_leq(s, project(w, pairs, false)))
            return true;
    return false;
}

std::vector<StructurePair> lifting_by_enumeration(const Relation& r, const StructureShape& shape) {
    check_relation_carrier(r);
    const auto pairs = r.pairs();
    std::set<StructurePair> image;
    for (const auto& w : enumerate_structures(shape, pairs.size()))
        image.emplace(project(w, pairs, true), project(w, pairs, false));
    return {image.begin(), image.end()};
}

std::vector<SuccessorStructure> structures_below(const SuccessorStructure& t, std::size_t carrier) {
    std::vector<SuccessorStructure> out;
    if (const auto* m = std::get_if<MealyStructure>(&t)) {
        std::vector<std::size_t> radices;
        for (const auto& e : m->entries)
            radices.push_back(e ? 2 : 1);
        for_each_digits(radices, [&](const std::vector<std::size_t>& digits) {
            MealyStructure below = *m;
            for (std::size_t k = 0; k < digits.size(); ++k)
                if (digits[k] == 0)
                    below.entries[k].reset();
            out.emplace_back(std::move(below));
        });
    } else if (const auto* a = std::get_if<SaStructure>(&t)) {
        // Inputs may only be dropped; undefined outputs may be filled arbitrarily.
        std::vector<std::size_t> radices;
        for (const auto& e : a->inputs)
            radices.push_back(e ? 2 : 1);
        for (const auto& e : a->outputs)
            radices.push_back(e ? 1 : 1 + carrier);
        for_each_digits(radices, [&](const std::vector<std::size_t>& digits) {
            SaStructure below = *a;
            for (std::size_t k = 0; k < a->inputs.size(); ++k)
                if (digits[k] == 0)
                    below.inputs[k].reset();
            for (std::size_t k = 0; k < a->outputs.size(); ++k) {
                const std::size_t d = digits[a->inputs.size() + k];
                if (!a->outputs[k] && d > 0)
                    below.outputs[k] = d - 1;
            }
            out.emplace_back(std::move(below));
        });
    } else {
        const auto& members = std::get<PowStructure>(t).members;
        std::vector<std::size_t> radices(members.size(), 2);
        for_each_digits(radices, [&](const std::vector<std::size_t>& digits) {
            PowStructure below;
            for (std::size_t k = 0; k < digits.size(); ++k)
                if (digits[k])
                    below.members.push_back(members[k]);
            out.emplace_back(std::move(below));
        });
    }
    return out;
}

std::vector<StructurePair> uncertain_lifting_by_enumeration(const Relation& r, const StructureShape& shape) {
    std::set<StructurePair> closed;
    for (const auto& [a, b] : lifting_by_enumeration(r, shape))
        for (const auto& t : structures_below(a, r.left_size()))
            for (const auto& s : structures_below(b, r.right_size()))
                closed.emplace(t, s);
    return {closed.begin(), closed.end()};
}

StabilityResult stability_check(const StructureShape& shape, std::span<const StateIndex> f, const Relation& s) {
    if (!s.is_square())
        throw ContractViolation("stability_check: S must be a relation on a single carrier");
    if (f.size() > 3 || s.left_size() > 4 || shape.inputs > 2 || shape.outputs > 2)
        throw SizeLimitError("stability_check is capped at |X| <= 3, |Y| <= 4 and alphabets of size <= 2");
    for (StateIndex y : f)
        if (y >= s.left_size())
            throw ContractViolation("stability_check: f leaves the carrier of S");

    const Relation pulled_back = inverse_image(f, s);
    const auto structures = enumerate_structures(shape, f.size());
    for (const auto& t : structures) {
        const auto ft = map_structure(t, f);
        for (const auto& u : structures) {
            const bool lhs = in_uncertain_lifting(pulled_back, t, u);
            const bool rhs = in_uncertain_lifting(s, ft, map_structure(u, f));
            if (lhs != rhs)
                return {false, StructurePair{t, u}};
        }
    }
    return {};
}

}  // namespace ubisim
