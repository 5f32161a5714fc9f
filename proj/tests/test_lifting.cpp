#include "support/exhaustive.hpp"

#include "ubisim/error.hpp"
#include "ubisim/lifting.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

using namespace ubisim;
using namespace ubisim::testing;

namespace {

const StructureShape single_mealy{FunctorKind::mealy, 1, 1};

// One-input, one-output Mealy structure: "?" or the successor's name.
std::string show(const SuccessorStructure& t, const std::vector<std::string>& carrier) {
    const auto& e = std::get<MealyStructure>(t).entries.front();
    return e ? carrier[e->target] : "?";
}

std::set<std::string> show_all(const std::vector<StructurePair>& pairs, const std::vector<std::string>& left,
                               const std::vector<std::string>& right) {
    std::set<std::string> out;
    for (const auto& [t, s] : pairs)
        out.insert("(" + show(t, left) + "," + show(s, right) + ")");
    return out;
}

SuccessorStructure defined(StateIndex x) { return MealyStructure{{MealyStep{0, x}}}; }
SuccessorStructure undefined() { return MealyStructure{{std::nullopt}}; }

// Every relation on n ≤ 2 states; a fixed sample of 18 for larger n.
std::vector<Relation> relations_on(std::size_t n) {
    auto all = all_relations(n, n);
    if (n <= 2)
        return all;
    std::mt19937 rng(static_cast<std::uint32_t>(n));
    std::shuffle(all.begin() + 1, all.end(), rng);
    all.resize(16);
    all.push_back(Relation::equality(n));
    all.push_back(Relation::full(n, n));
    return all;
}

std::vector<StructureShape> small_shapes() {
    std::vector<StructureShape> out;
    for (FunctorKind kind : {FunctorKind::mealy, FunctorKind::suspension})
        for (std::size_t ni = 1; ni <= 2; ++ni)
            for (std::size_t no = 1; no <= 2; ++no)
                out.push_back({kind, ni, no});
    out.push_back({FunctorKind::powerset, 0, 0});
    return out;
}

}  // namespace

TEST_CASE("lifting sets of the non-reflexive stability counterexample", "[lifting]") {
    // X = {x}, Y = {x, y}, f(x) = x, S = {(x, y)}, one input and one output.
    const std::vector<std::string> x_names{"x"};
    const std::vector<std::string> y_names{"x", "y"};
    const StatePair sp[] = {{0, 1}};
    const Relation s = Relation::from_pairs(2, 2, sp);
    const std::vector<StateIndex> f{0};
    const Relation pulled = inverse_image(f, s);
    CHECK(pulled.empty());

    using Set = std::set<std::string>;
    CHECK(show_all(lifting_by_enumeration(pulled, single_mealy), x_names, x_names) == Set{"(?,?)"});
    CHECK(show_all(uncertain_lifting_by_enumeration(pulled, single_mealy), x_names, x_names) == Set{"(?,?)"});
    CHECK(show_all(lifting_by_enumeration(s, single_mealy), y_names, y_names) == Set{"(?,?)", "(x,y)"});
    CHECK(show_all(uncertain_lifting_by_enumeration(s, single_mealy), y_names, y_names) ==
          Set{"(?,?)", "(x,y)", "(?,y)", "(x,?)"});

    // (Mf × Mf)⁻¹ of the uncertain lifting of S, over X.
    Set inverse;
    for (const auto& t : enumerate_structures(single_mealy, 1))
        for (const auto& u : enumerate_structures(single_mealy, 1))
            if (in_uncertain_lifting(s, map_structure(t, f), map_structure(u, f)))
                inverse.insert("(" + show(t, x_names) + "," + show(u, x_names) + ")");
    CHECK(inverse == Set{"(?,?)", "(x,?)"});

    CHECK(in_lifting(s, defined(0), defined(1)));
    CHECK(in_lifting(s, undefined(), undefined()));
    CHECK_FALSE(in_lifting(s, defined(0), undefined()));
    CHECK(in_uncertain_lifting(s, defined(0), undefined()));
    CHECK(in_uncertain_lifting(s, undefined(), defined(1)));
    CHECK_FALSE(in_uncertain_lifting(pulled, defined(0), undefined()));
}

TEST_CASE("stability check finds the counterexample and accepts the reflexive closure", "[lifting]") {
    const StatePair sp[] = {{0, 1}};
    const Relation s = Relation::from_pairs(2, 2, sp);
    const std::vector<StateIndex> f{0};
    const auto unstable = stability_check(single_mealy, f, s);
    REQUIRE_FALSE(unstable.stable);
    REQUIRE(unstable.counterexample);
    CHECK(unstable.counterexample->first == defined(0));
    CHECK(unstable.counterexample->second == undefined());

    CHECK(stability_check(single_mealy, f, reflexive_closure(s)).stable);

    const std::vector<StateIndex> identity{0, 1};
    for (const auto& r : all_relations(2, 2))
        CHECK(stability_check({FunctorKind::mealy, 2, 2}, identity, r).stable);

    const std::vector<StateIndex> too_many{0, 0, 0, 0};
    CHECK_THROWS_AS(stability_check(single_mealy, too_many, s), SizeLimitError);
    CHECK_THROWS_AS(stability_check({FunctorKind::mealy, 3, 1}, f, s), SizeLimitError);
}

TEST_CASE("Mealy and suspension liftings are stable on reflexive relations", "[lifting][property]") {
    // Exhaustive over |X|, |Y| <= 3 for the smallest alphabets; larger
    // alphabets were covered once offline with the same outcome.
    for (StructureShape shape : {StructureShape{FunctorKind::mealy, 1, 2}, StructureShape{FunctorKind::suspension, 1, 2}})
        for (std::size_t nx = 1; nx <= 3; ++nx)
            for (std::size_t ny = 1; ny <= 3; ++ny)
                for (const auto& f : maps_up_to_relabelling(nx, ny))
                    for (const auto& s : all_relations(ny, ny)) {
                        if (!s.is_reflexive())
                            continue;
                        INFO("kind " << int(shape.kind) << " |X| " << nx << " |Y| " << ny);
                        REQUIRE(stability_check(shape, f, s).stable);
                    }
}

TEST_CASE("in_lifting examples", "[lifting]") {
    const Relation eq = Relation::equality(2);
    for (const auto& t : enumerate_structures({FunctorKind::mealy, 2, 2}, 2))
        CHECK(in_lifting(eq, t, t));
    const StatePair ab[] = {{0, 1}};
    const Relation r = Relation::from_pairs(2, 2, ab);
    CHECK(in_lifting(r, PowStructure{{0}}, PowStructure{{1}}));
    CHECK_FALSE(in_lifting(r, PowStructure{{0}}, PowStructure{{0}}));
    CHECK(in_lifting(r, PowStructure{}, PowStructure{}));
}

TEST_CASE("everything is uncertainly related to the bottom structure on the diagonal", "[lifting]") {
    const Relation eq = Relation::equality(2);
    for (const auto& t : enumerate_structures({FunctorKind::mealy, 2, 2}, 2))
        CHECK(in_uncertain_lifting(eq, t, MealyStructure{{std::nullopt, std::nullopt}}));
}

TEST_CASE("lifting rejects mismatched arguments", "[lifting]") {
    const Relation r(1, 1);
    CHECK_THROWS_AS(in_lifting(r, defined(0), PowStructure{}), ContractViolation);
    CHECK_THROWS_AS(in_lifting(r, defined(0), defined(3)), ContractViolation);
    CHECK_THROWS_AS(in_uncertain_lifting(r, defined(0), MealyStructure{{std::nullopt, std::nullopt}}),
                    ContractViolation);
    CHECK_THROWS_AS(lifting_by_enumeration(Relation(5, 5), single_mealy), SizeLimitError);
}

TEST_CASE("structure counts match enumeration", "[lifting]") {
    for (const auto& shape : small_shapes())
        for (std::size_t carrier = 0; carrier <= 3; ++carrier) {
            const auto all = enumerate_structures(shape, carrier);
            CHECK(all.size() == count_structures(shape, carrier));
            CHECK(std::set<SuccessorStructure>(all.begin(), all.end()).size() == all.size());
        }
}

TEST_CASE("direct and enumerative uncertain lifting agree", "[lifting][property]") {
    for (const auto& shape : small_shapes())
        for (std::size_t n = 1; n <= 3; ++n) {
            const auto structures = enumerate_structures(shape, n);
            for (const auto& r : relations_on(n)) {
                const auto closed = uncertain_lifting_by_enumeration(r, shape);
                const std::set<StructurePair> set(closed.begin(), closed.end());
                const auto lifted = lifting_by_enumeration(r, shape);
                const std::set<StructurePair> lifted_set(lifted.begin(), lifted.end());
                for (const auto& t : structures)
                    for (const auto& s : structures) {
                        REQUIRE(in_uncertain_lifting(r, t, s) == set.count({t, s}) > 0);
                        REQUIRE(in_lifting(r, t, s) == lifted_set.count({t, s}) > 0);
                    }
            }
        }
}

TEST_CASE("the enumerative membership test agrees with the direct one", "[lifting][property]") {
    const StructureShape shape{FunctorKind::suspension, 1, 2};
    const auto structures = enumerate_structures(shape, 2);
    for (const auto& r : all_relations(2, 2))
        for (const auto& t : structures)
            for (const auto& s : structures)
                REQUIRE(in_uncertain_lifting_enumerative(r, t, s) == in_uncertain_lifting(r, t, s));
}

TEST_CASE("lifting laws: monotone, equality, converse", "[lifting][property]") {
    for (const auto& shape : small_shapes())
        for (std::size_t n = 1; n <= 3; ++n) {
            const auto structures = enumerate_structures(shape, n);
            for (const auto& t : structures) {
                REQUIRE(in_lifting(Relation::equality(n), t, t));
                REQUIRE(in_uncertain_lifting(Relation::equality(n), t, t));
            }
            for (const auto& r : relations_on(n)) {
                const Relation op = converse(r);
                for (const auto& t : structures)
                    for (const auto& s : structures) {
                        const bool plain = in_lifting(r, t, s);
                        const bool uncertain = in_uncertain_lifting(r, t, s);
                        REQUIRE(plain == in_lifting(op, s, t));
                        REQUIRE(uncertain == in_uncertain_lifting(op, s, t));
                        REQUIRE((!plain || uncertain));
                        if (!plain && !uncertain)
                            continue;
                        // Every superset is reached by adding pairs one at a time.
                        for (StateIndex a = 0; a < n; ++a)
                            for (StateIndex b = 0; b < n; ++b) {
                                if (r.contains(a, b))
                                    continue;
                                Relation bigger = r;
                                bigger.insert(a, b);
                                REQUIRE((!plain || in_lifting(bigger, t, s)));
                                REQUIRE((!uncertain || in_uncertain_lifting(bigger, t, s)));
                            }
                    }
            }
        }
}

TEST_CASE("uncertain lifting of an inverse image maps into the uncertain lifting", "[lifting][property]") {
    for (const auto& shape : small_shapes())
        for (std::size_t nx = 1; nx <= 3; ++nx)
            for (std::size_t ny = 1; ny <= 3; ++ny) {
                const auto structures = enumerate_structures(shape, nx);
                for (const auto& f : maps_up_to_relabelling(nx, ny))
                    for (const auto& s : relations_on(ny)) {
                        const Relation pulled = inverse_image(f, s);
                        for (const auto& t : structures)
                            for (const auto& u : structures)
                                if (in_uncertain_lifting(pulled, t, u))
                                    REQUIRE(in_uncertain_lifting(s, map_structure(t, f), map_structure(u, f)));
                    }
            }
}

TEST_CASE("structures below respect the order", "[lifting]") {
    for (const auto& shape : small_shapes())
        for (const auto& t : enumerate_structures(shape, 2)) {
            const auto below = structures_below(t, 2);
            for (const auto& b : below)
                REQUIRE(order_leq(b, t));
            std::size_t count = 0;
            for (const auto& other : enumerate_structures(shape, 2))
                count += order_leq(other, t);
            // Only suspension structures with an output are enumerated; a
            // structure below t always keeps t's outputs, so none are lost.
            REQUIRE(count == below.size());
        }
}
