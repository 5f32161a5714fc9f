#pragma once

#include "ubisim/systems.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace ubisim {

using StatePair = std::pair<StateIndex, StateIndex>;

/// A finite relation between two index carriers {0..left_size-1} and
/// {0..right_size-1}, stored as a dense bit matrix.
class Relation {
public:
    Relation() = default;
    Relation(std::size_t left_size, std::size_t right_size);

    static Relation empty_on(std::size_t n) { return Relation(n, n); }
    static Relation full(std::size_t left_size, std::size_t right_size);
    static Relation equality(std::size_t n);
    static Relation from_pairs(std::size_t left_size, std::size_t right_size, std::span<const StatePair> pairs);

    std::size_t left_size() const noexcept { return left_; }
    std::size_t right_size() const noexcept { return right_; }
    bool is_square() const noexcept { return left_ == right_; }

    bool contains(StateIndex l, StateIndex r) const { return bits_[l * right_ + r] != 0; }
    bool contains(const StatePair& p) const { return contains(p.first, p.second); }
    void insert(StateIndex l, StateIndex r);
    void erase(StateIndex l, StateIndex r) { bits_[l * right_ + r] = 0; }

    std::size_t size() const;
    bool empty() const { return size() == 0; }
    /// Row-major (lexicographic) order.
    std::vector<StatePair> pairs() const;

    bool has_successor(StateIndex l) const;
    bool has_predecessor(StateIndex r) const;

    bool subset_of(const Relation& other) const;
    bool is_reflexive() const;
    bool is_symmetric() const;
    bool is_transitive() const;

    friend bool operator==(const Relation&, const Relation&) = default;

private:
    std::size_t left_ = 0;
    std::size_t right_ = 0;
    std::vector<std::uint8_t> bits_;
};

/// R ∘ S = {(x, z) | ∃y. (x, y) ∈ R and (y, z) ∈ S}.
Relation compose(const Relation& r, const Relation& s);
Relation converse(const Relation& r);
Relation complement(const Relation& r);
Relation unite(const Relation& r, const Relation& s);
Relation intersect(const Relation& r, const Relation& s);
Relation reflexive_closure(const Relation& r);
/// (f × f)⁻¹(S) for f: X → Y given as an image table of length |X|.
Relation inverse_image(std::span<const StateIndex> f, const Relation& s);
/// ker f = {(x1, x2) | f(x1) = f(x2)}.
Relation kernel(std::span<const StateIndex> f);
/// {(x, f(x))}.
Relation graph(std::span<const StateIndex> f, std::size_t codomain_size);

}  // namespace ubisim
