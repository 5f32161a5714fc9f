#include "support/fixtures.hpp"
#include "support/generators.hpp"

#include "ubisim/error.hpp"
#include "ubisim/lifting.hpp"
#include "ubisim/systems.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace ubisim;
using namespace ubisim::testing;

namespace {

std::string eval_text(const PartialMealyMachine& m, const std::string& state, const std::string& word) {
    const auto out = eval_semantics(m, m.state_index(state), parse_word(m.inputs(), word));
    return out ? m.outputs()[*out] : "?";
}

// Every word of length 1..max_length, shortest first.
std::vector<Word> all_words(std::size_t inputs, std::size_t max_length) {
    std::vector<Word> out, layer{Word{}};
    for (std::size_t len = 1; len <= max_length; ++len) {
        std::vector<Word> next;
        for (const auto& w : layer)
            for (SymbolIndex i = 0; i < inputs; ++i) {
                Word v = w;
                v.push_back(i);
                next.push_back(v);
            }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

std::vector<PartialMealyMachine> fixture_machines() {
    std::vector<PartialMealyMachine> out;
    for (const char* file : {"four_machines.fsm", "lax_morphisms.fsm", "tree_counterexample.fsm"})
        for (const auto& s : load_fixture(file).sections)
            if (const auto* m = std::get_if<MealySection>(&s))
                out.push_back(m->machine);
    return out;
}

}  // namespace

TEST_CASE("run follows transitions and stops at a missing one", "[systems]") {
    const auto tree = load_fixture("tree_counterexample.fsm");
    const auto& m = mealy(tree, "m");
    CHECK(run(m, m.state_index("p"), parse_word(m.inputs(), "v v")) == m.state_index("q'"));
    CHECK(run(m, m.state_index("p"), Word{}) == m.state_index("p"));

    const auto four = load_fixture("four_machines.fsm");
    const auto& q = mealy(four, "q");
    CHECK_FALSE(run(q, q.state_index("q0"), parse_word(q.inputs(), "j")).has_value());
}

TEST_CASE("run rejects unknown states and symbols", "[systems]") {
    const auto four = load_fixture("four_machines.fsm");
    const auto& q = mealy(four, "q");
    CHECK_THROWS_AS(run(q, 7, Word{}), ValidationError);
    CHECK_THROWS_AS(run(q, 0, Word{5}), ValidationError);
    CHECK_THROWS_AS(parse_word(q.inputs(), "k"), ValidationError);
    CHECK_THROWS_AS(q.state_index("nope"), ValidationError);
}

TEST_CASE("semantics of the tree counterexample, state by state", "[systems]") {
    const auto doc = load_fixture("tree_counterexample.fsm");
    const auto& m = mealy(doc, "m");
    const std::vector<std::string> words{"w", "w i", "v", "v w", "v v", "v v w", "v v w i", "v w i"};
    const std::vector<std::string> p{"o", "a", "o", "o", "o", "o", "b", "?"};
    const std::vector<std::string> q{"o", "?", "o", "o", "?", "?", "?", "b"};
    for (std::size_t k = 0; k < words.size(); ++k) {
        INFO(words[k]);
        CHECK(eval_text(m, "p", words[k]) == p[k]);
        CHECK(eval_text(m, "q", words[k]) == q[k]);
    }
}

TEST_CASE("eval_semantics rejects the empty word", "[systems]") {
    const auto doc = load_fixture("tree_counterexample.fsm");
    CHECK_THROWS_AS(eval_semantics(mealy(doc, "m"), 0, Word{}), ContractViolation);
}

TEST_CASE("words parse from dots or spaces and format with dots", "[systems]") {
    const Names inputs{"v", "w", "i"};
    CHECK(parse_word(inputs, "v.w.i") == Word{0, 1, 2});
    CHECK(parse_word(inputs, "v w  i") == Word{0, 1, 2});
    CHECK(parse_word(inputs, "").empty());
    CHECK(format_word(inputs, Word{2, 0}) == "i.v");
}

TEST_CASE("builders reject malformed machines", "[systems]") {
    MealyBuilder b("m", {"i"}, {"a"}, {"s", "t"});
    b.add("s", "i", "a", "t");
    CHECK_THROWS_AS(b.add("s", "i", "a", "s"), ValidationError);
    CHECK_THROWS_AS(b.add("u", "i", "a", "s"), ValidationError);
    CHECK_THROWS_AS(Names({"x", "x"}), ValidationError);
    CHECK_THROWS_AS(TotalMealyMachine(b.build()), ValidationError);
    CHECK_NOTHROW(TotalMealyMachine(complete_with_self_loops(b.build(), 0)));

    SaBuilder sa("a", {"i"}, {"o"}, {"s", "t"});
    sa.output("s", "o", "t");
    CHECK_THROWS_AS(sa.build(), ValidationError);  // t offers no output
}

TEST_CASE("order on Mealy structures", "[systems]") {
    const MealyStructure bottom{{std::nullopt, std::nullopt}};
    const MealyStructure s{{MealyStep{0, 1}, MealyStep{1, 0}}};
    CHECK(order_leq(bottom, s));
    CHECK_FALSE(order_leq(s, bottom));
    const MealyStructure ia{{MealyStep{0, 1}}};
    const MealyStructure ib{{MealyStep{1, 1}}};
    CHECK_FALSE(order_leq(ia, ib));
    CHECK_THROWS_AS(order_leq(SuccessorStructure{ia}, SuccessorStructure{PowStructure{}}), ContractViolation);
    CHECK_THROWS_AS(order_leq(ia, bottom), ContractViolation);
}

TEST_CASE("order on suspension structures adds inputs and removes outputs", "[systems]") {
    // Outputs w x y z; the successor is state 6, index 5.
    const SaStructure left{{std::nullopt}, {std::nullopt, 5, 5, std::nullopt}};
    const SaStructure right{{5}, {std::nullopt, std::nullopt, 5, std::nullopt}};
    CHECK(order_leq(left, right));
    CHECK_FALSE(order_leq(right, left));
}

TEST_CASE("order on powerset structures is inclusion", "[systems]") {
    CHECK(order_leq(PowStructure{{0}}, PowStructure{{0, 1}}));
    CHECK_FALSE(order_leq(PowStructure{{0, 2}}, PowStructure{{0, 1}}));
}

TEST_CASE("order is a partial order on every small structure", "[systems][property]") {
    for (FunctorKind kind : {FunctorKind::mealy, FunctorKind::suspension, FunctorKind::powerset})
        for (std::size_t carrier = 1; carrier <= 2; ++carrier)
            for (std::size_t ni = 1; ni <= 2; ++ni)
                for (std::size_t no = 1; no <= 2; ++no) {
                    const auto all = enumerate_structures({kind, ni, no}, carrier);
                    for (const auto& a : all) {
                        REQUIRE(order_leq(a, a));
                        for (const auto& b : all) {
                            if (!order_leq(a, b))
                                continue;
                            if (order_leq(b, a))
                                REQUIRE(a == b);
                            for (const auto& c : all)
                                if (order_leq(b, c))
                                    REQUIRE(order_leq(a, c));
                        }
                    }
                }
}

TEST_CASE("semantics is prefix closed on the fixtures", "[systems][property]") {
    for (const auto& m : fixture_machines())
        for (StateIndex x = 0; x < m.num_states(); ++x)
            for (const auto& w : all_words(m.inputs().size(), 6)) {
                if (!eval_semantics(m, x, w))
                    continue;
                for (std::size_t len = 1; len < w.size(); ++len)
                    REQUIRE(eval_semantics(m, x, std::span(w).first(len)).has_value());
            }
}

TEST_CASE("run and eval_semantics agree", "[systems][property]") {
    std::mt19937 rng(11);
    for (int round = 0; round < 50; ++round) {
        const auto m = random_mealy(rng, random_shape(rng, 4, 2));
        for (StateIndex x = 0; x < m.num_states(); ++x)
            for (const auto& w : all_words(m.inputs().size(), 4)) {
                const auto out = eval_semantics(m, x, w);
                REQUIRE(out.has_value() == run(m, x, w).has_value());
                if (out) {
                    const auto before = run(m, x, std::span(w).first(w.size() - 1));
                    REQUIRE(m.step(*before, w.back())->output == *out);
                }
            }
    }
}

TEST_CASE("disjoint union keeps both machines' transitions", "[systems]") {
    const auto doc = load_fixture("four_machines.fsm");
    const auto& q = mealy(doc, "q");
    const auto& s = mealy(doc, "s");
    const auto u = disjoint_union(q, s);
    CHECK(u.system.num_states() == 4);
    CHECK(u.system.num_transitions() == 2);
    CHECK(u.system.states()[u.embeddings[0][0]] == "q.q0");
    const auto& e = u.system.step(u.system.state_index("s.s0"), 1);
    REQUIRE(e);
    CHECK(u.system.states()[e->target] == "s.s1");
    CHECK(u.system.outputs()[e->output] == "b");

    const auto self = disjoint_union(q, q);
    CHECK(self.system.num_states() == 4);
    CHECK(self.system.num_transitions() == 2);
    CHECK(self.embeddings[0] != self.embeddings[1]);

    const PartialMealyMachine empty("e", q.inputs(), q.outputs(), Names{}, {});
    const auto with_empty = disjoint_union(q, empty);
    CHECK(with_empty.system.num_states() == q.num_states());
    CHECK(with_empty.system.num_transitions() == q.num_transitions());

    const auto lax = load_fixture("lax_morphisms.fsm");
    CHECK_THROWS_AS(disjoint_union(q, mealy(lax, "T")), ContractViolation);
}

TEST_CASE("disjoint union commutes with semantics", "[systems][property]") {
    std::mt19937 rng(5);
    for (int round = 0; round < 40; ++round) {
        auto shape = random_shape(rng, 4, 2);
        const auto a = random_mealy(rng, shape, "a");
        shape.states = 1 + round % 4;
        const auto b = random_mealy(rng, shape, "b");
        const auto u = disjoint_union(a, b);
        for (const auto* part : {&a, &b}) {
            const auto& embed = u.embeddings[part == &a ? 0 : 1];
            for (StateIndex x = 0; x < part->num_states(); ++x)
                for (const auto& w : all_words(shape.inputs, 4))
                    REQUIRE(eval_semantics(*part, x, w) == eval_semantics(u.system, embed[x], w));
        }
    }
}
