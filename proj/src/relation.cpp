#include "ubisim/relation.hpp"

#include "ubisim/error.hpp"

#include <algorithm>

namespace ubisim {

Relation::Relation(std::size_t left_size, std::size_t right_size)
    : left_(left_size), right_(right_size), bits_(left_size * right_size, 0) {}

Relation Relation::full(std::size_t left_size, std::size_t right_size) {
    Relation r(left_size, right_size);
    std::fill(r.bits_.begin(), r.bits_.end(), std::uint8_t{1});
    return r;
}

Relation Relation::equality(std::size_t n) {
    Relation r(n, n);
    for (StateIndex x = 0; x < n; ++x)
        r.insert(x, x);
    return r;
}

Relation Relation::from_pairs(std::size_t left_size, std::size_t right_size, std::span<const StatePair> pairs) {
    Relation r(left_size, right_size);
    for (const auto& [l, x] : pairs)
        r.insert(l, x);
    return r;
}

void Relation::insert(StateIndex l, StateIndex r) {
    if (l >= left_ || r >= right_)
        throw ContractViolation("relation pair outside its carriers");
    bits_[l * right_ + r] = 1;
}

std::size_t Relation::size() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<StatePair> Relation::pairs() const {
    std::vector<StatePair> out;
    for (StateIndex l = 0; l < left_; ++l)
        for (StateIndex r = 0; r < right_; ++r)
            if (contains(l, r))
                out.emplace_back(l, r);
    return out;
}

bool Relation::has_successor(StateIndex l) const {
    for (StateIndex r = 0; r < right_; ++r)
        if (contains(l, r))
            return true;
    return false;
}

bool Relation::has_predecessor(StateIndex r) const {
    for (StateIndex l = 0; l < left_; ++l)
        if (contains(l, r))
            return true;
    return false;
}

bool Relation::subset_of(const Relation& other) const {
    if (left_ != other.left_ || right_ != other.right_)
        throw ContractViolation("subset_of: carriers differ");
    for (std::size_t k = 0; k < bits_.size(); ++k)
        if (bits_[k] && !other.bits_[k])
            return false;
    return true;
}

bool Relation::is_reflexive() const {
    if (!is_square())
        return false;
    for (StateIndex x = 0; x < left_; ++x)
        if (!contains(x, x))
            return false;
    return true;
}

bool Relation::is_symmetric() const { return is_square() && *this == converse(*this); }

bool Relation::is_transitive() const { return is_square() && compose(*this, *this).subset_of(*this); }

Relation compose(const Relation& r, const Relation& s) {
    if (r.right_size() != s.left_size())
        throw ContractViolation("compose: middle carriers differ");
    Relation out(r.left_size(), s.right_size());
    for (StateIndex x = 0; x < r.left_size(); ++x)
        for (StateIndex y = 0; y < r.right_size(); ++y)
            if (r.contains(x, y))
                for (StateIndex z = 0; z < s.right_size(); ++z)
                    if (s.contains(y, z))
                        out.insert(x, z);
    return out;
}

Relation converse(const Relation& r) {
    Relation out(r.right_size(), r.left_size());
    for (const auto& [x, y] : r.pairs())
        out.insert(y, x);
    return out;
}

Relation complement(const Relation& r) {
    Relation out(r.left_size(), r.right_size());
    for (StateIndex x = 0; x < r.left_size(); ++x)
        for (StateIndex y = 0; y < r.right_size(); ++y)
            if (!r.contains(x, y))
                out.insert(x, y);
    return out;
}

Relation unite(const Relation& r, const Relation& s) {
    if (r.left_size() != s.left_size() || r.right_size() != s.right_size())
        throw ContractViolation("unite: carriers differ");
    Relation out = r;
    for (const auto& [x, y] : s.pairs())
        out.insert(x, y);
    return out;
}

Relation intersect(const Relation& r, const Relation& s) {
    if (r.left_size() != s.left_size() || r.right_size() != s.right_size())
        throw ContractViolation("intersect: carriers differ");
    Relation out(r.left_size(), r.right_size());
    for (const auto& [x, y] : r.pairs())
        if (s.contains(x, y))
            out.insert(x, y);
    return out;
}

Relation reflexive_closure(const Relation& r) {
    if (!r.is_square())
        throw ContractViolation("reflexive_closure: relation is not on a single carrier");
    return unite(r, Relation::equality(r.left_size()));
}

Relation inverse_image(std::span<const StateIndex> f, const Relation& s) {
    Relation out(f.size(), f.size());
    for (StateIndex a = 0; a < f.size(); ++a)
        for (StateIndex b = 0; b < f.size(); ++b) {
            if (f[a] >= s.left_size() || f[b] >= s.right_size())
                throw ContractViolation("inverse_image: map leaves the relation's carrier");
            if (s.contains(f[a], f[b]))
                out.insert(a, b);
        }
    return out;
}

Relation kernel(std::span<const StateIndex> f) {
    Relation out(f.size(), f.size());
    for (StateIndex a = 0; a < f.size(); ++a)
        for (StateIndex b = 0; b < f.size(); ++b)
            if (f[a] == f[b])
                out.insert(a, b);
    return out;
}

Relation graph(std::span<const StateIndex> f, std::size_t codomain_size) {
    Relation out(f.size(), codomain_size);
    for (StateIndex a = 0; a < f.size(); ++a)
        out.insert(a, f[a]);
    return out;
}

}  // namespace ubisim
