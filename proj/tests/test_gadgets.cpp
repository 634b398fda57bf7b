#include <doctest.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "ccdes/gadgets.hpp"
#include "ccdes/instance.hpp"
#include "ccdes/oracle.hpp"
#include "ccdes/verify.hpp"
#include "support.hpp"

using namespace ccdes;

namespace {

Dfa chain_ab_only() {
    return make_dfa({"s0", "s1", "s2"}, "s0", {"a", "b"},
                    {{"s0", "a", "s1"}, {"s1", "b", "s2"}}, {"s2"});
}

Dfa chain_ab_all() {
    return make_dfa({"t0", "t1", "t2"}, "t0", {"a", "b"},
                    {{"t0", "a", "t1"}, {"t1", "b", "t2"}}, {"t0", "t1", "t2"});
}

Dfa chain_b_all() {
    return make_dfa({"t0", "t1"}, "t0", {"a", "b"}, {{"t0", "b", "t1"}}, {"t0", "t1"});
}

}  // namespace

TEST_CASE("acyclic normalization funnels acceptance into one fresh letter") {
    std::vector<Dfa> in{chain_ab_only(), chain_ab_all()};
    auto out = normalize_acyclic_dfas(in);
    REQUIRE(out.size() == 2);

    CHECK(out[0].letter_id("@end") >= 0);
    CHECK(out[0].acyclic);
    std::size_t acc0 = 0;
    for (auto a : out[0].accepting) acc0 += a ? 1u : 0u;
    CHECK(acc0 == 1);

    std::vector<std::string> sealed{"a", "b", "@end"};
    CHECK(out[0].accepts(sealed));
    std::vector<std::string> unsealed{"a", "b"};
    CHECK_FALSE(out[0].accepts(unsealed));
    std::vector<std::string> short_sealed{"a", "@end"};
    CHECK_FALSE(out[0].accepts(short_sealed));

    // the all-accepting side seals everywhere and accepts everything it reads
    CHECK(out[1].accepts(sealed));
    CHECK(out[1].accepts(short_sealed));
    CHECK(out[1].accepts(unsealed));

    auto loop = make_dfa({"s0"}, "s0", {"a"}, {{"s0", "a", "s0"}}, {"s0"});
    std::vector<Dfa> bad{loop};
    CHECK_THROWS_WITH_AS(normalize_acyclic_dfas(bad),
                         "normalize_acyclic_dfas: source 0 has a cycle",
                         std::invalid_argument);
}

TEST_CASE("complete normalization keeps every non-first output deadlock-free") {
    auto c0 = make_dfa({"u0", "u1"}, "u0", {"a"}, {{"u0", "a", "u1"}, {"u1", "a", "u1"}},
                       {"u1"});
    auto c1 = make_dfa({"w0"}, "w0", {"a"}, {{"w0", "a", "w0"}}, {"w0"});
    std::vector<Dfa> in{c0, c1};
    auto out = normalize_complete_dfas(in);
    REQUIRE(out.size() == 2);

    // first output: its only accepting state is its only deadlock
    for (std::size_t s = 0; s < out[0].states.size(); ++s) {
        bool deadlock = true;
        for (std::size_t l = 0; l < out[0].letters.size(); ++l)
            if (out[0].step(static_cast<StateId>(s), static_cast<std::int32_t>(l)) >= 0)
                deadlock = false;
        CHECK(deadlock == static_cast<bool>(out[0].accepting[s]));
    }
    // the others: all states accepting, none a deadlock
    for (std::size_t s = 0; s < out[1].states.size(); ++s) {
        CHECK(out[1].accepting[s]);
        bool deadlock = true;
        for (std::size_t l = 0; l < out[1].letters.size(); ++l)
            if (out[1].step(static_cast<StateId>(s), static_cast<std::int32_t>(l)) >= 0)
                deadlock = false;
        CHECK_FALSE(deadlock);
    }

    auto incomplete = make_dfa({"s0"}, "s0", {"a"}, {}, {"s0"});
    std::vector<Dfa> bad{incomplete};
    CHECK_THROWS_AS(normalize_complete_dfas(bad), std::invalid_argument);
}

TEST_CASE("detection reduction tracks exactly the common-word question") {
    std::vector<Dfa> meet{chain_ab_only(), chain_ab_all()};
    auto ri = reduce_to_codetectability(meet);
    CHECK(ri.property == Property::co_detectability);
    CHECK(ri.fsa.n_states() == 3 + 3 + 3);
    CHECK(ri.observers.size() == 1);
    REQUIRE(ri.provenance.expected_holds.has_value());
    CHECK_FALSE(*ri.provenance.expected_holds);
    REQUIRE(ri.provenance.witness.has_value());
    CHECK(*ri.provenance.witness == std::vector<std::string>{"a", "b"});
    CHECK_FALSE(verify_co_detectability(ri.fsa, ri.observers).holds);

    std::vector<Dfa> miss{chain_ab_only(), chain_b_all()};
    auto ri2 = reduce_to_codetectability(miss);
    REQUIRE(ri2.provenance.expected_holds.has_value());
    CHECK(*ri2.provenance.expected_holds);
    CHECK(verify_co_detectability(ri2.fsa, ri2.observers).holds);
}

TEST_CASE("detection reduction rejects sources of the wrong shape") {
    std::vector<Dfa> one{chain_ab_only()};
    CHECK_THROWS_WITH_AS(reduce_to_codetectability(one),
                         "reduce_to_codetectability: need at least two source automata",
                         std::invalid_argument);

    std::vector<Dfa> two_acc{chain_ab_all(), chain_ab_all()};
    CHECK_THROWS_WITH_AS(
        reduce_to_codetectability(two_acc),
        "reduce_to_codetectability: source 0 must have exactly one accepting state, found 3",
        std::invalid_argument);

    auto other_alpha = make_dfa({"r0", "r1"}, "r0", {"c"}, {{"r0", "c", "r1"}}, {"r0", "r1"});
    std::vector<Dfa> mixed{chain_ab_only(), other_alpha};
    CHECK_THROWS_AS(reduce_to_codetectability(mixed), std::invalid_argument);
}

TEST_CASE("prediction reduction tracks the common-word question") {
    auto c0 = make_dfa({"u0", "u1"}, "u0", {"a"}, {{"u0", "a", "u1"}, {"u1", "a", "u1"}},
                       {"u1"});
    auto c1 = make_dfa({"w0"}, "w0", {"a"}, {{"w0", "a", "w0"}}, {"w0"});
    std::vector<Dfa> in{c0, c1};
    auto norm = normalize_complete_dfas(in);
    auto ri = reduce_to_copredictability(norm);
    CHECK(ri.property == Property::co_predictability);
    CHECK(ri.fsa.n_states() == norm[0].states.size() + norm[1].states.size() + 2);
    REQUIRE(ri.provenance.expected_holds.has_value());
    CHECK_FALSE(*ri.provenance.expected_holds);
    CHECK_FALSE(verify_co_predictability(ri.fsa, ri.observers).holds);
    // the gadget instance is deadlock-free even though its first source is not
    CHECK(check_assumptions(ri.fsa).deadlock_free);

    // empty first language: no common word, so the property holds
    auto never = make_dfa({"v0", "v1"}, "v0", {"a"},
                          {{"v0", "a", "v0"}, {"v1", "a", "v1"}}, {"v1"});
    std::vector<Dfa> in2{never, c1};
    auto norm2 = normalize_complete_dfas(in2);
    auto ri2 = reduce_to_copredictability(norm2);
    REQUIRE(ri2.provenance.expected_holds.has_value());
    CHECK(*ri2.provenance.expected_holds);
    CHECK(verify_co_predictability(ri2.fsa, ri2.observers).holds);
}

TEST_CASE("path reduction mirrors graph reachability") {
    Digraph g{{"n0", "n1", "n2"}, {{"n0", "n1"}, {"n1", "n2"}}};
    auto ri = reduce_path_to_predictability(g, "n0", "n2");
    CHECK(ri.property == Property::predictability);
    CHECK(ri.fsa.n_states() == g.nodes.size() + 1);
    REQUIRE(ri.provenance.expected_holds.has_value());
    CHECK_FALSE(*ri.provenance.expected_holds);
    CHECK(*ri.provenance.witness == std::vector<std::string>{"n0", "n1", "n2"});
    CHECK_FALSE(verify_predictability(ri.fsa).holds);

    auto back = reduce_path_to_predictability(g, "n2", "n0");
    REQUIRE(back.provenance.expected_holds.has_value());
    CHECK(*back.provenance.expected_holds);
    CHECK(verify_predictability(back.fsa).holds);

    // staying put counts as reaching
    auto stay = reduce_path_to_predictability(g, "n1", "n1");
    CHECK_FALSE(*stay.provenance.expected_holds);
    CHECK_FALSE(verify_predictability(stay.fsa).holds);

    // two isolated nodes: nothing to predict
    Digraph iso{{"p", "q"}, {}};
    auto apart = reduce_path_to_predictability(iso, "p", "q");
    CHECK(*apart.provenance.expected_holds);
    CHECK(verify_predictability(apart.fsa).holds);

    CHECK_THROWS_AS(reduce_path_to_predictability(g, "zz", "n0"), std::invalid_argument);
    Digraph dup{{"p", "p"}, {}};
    CHECK_THROWS_AS(reduce_path_to_predictability(dup, "p", "p"), std::invalid_argument);
}

TEST_CASE("seeded generation is reproducible byte for byte") {
    auto build = [] {
        Rng rng(5);
        std::vector<Dfa> sources;
        for (int i = 0; i < 2; ++i) sources.push_back(random_acyclic_dfa(rng, 4, 2));
        auto norm = normalize_acyclic_dfas(sources);
        auto ri = reduce_to_codetectability(norm);
        return instance_to_json(ri.fsa, ri.observers);
    };
    CHECK(build() == build());

    Rng r1(9), r2(9);
    auto d1 = random_complete_dfa(r1, 5, 3);
    auto d2 = random_complete_dfa(r2, 5, 3);
    CHECK(d1.states == d2.states);
    CHECK(d1.next == d2.next);
    CHECK(d1.accepting == d2.accepting);
}

TEST_CASE("random source families have the advertised shapes") {
    Rng rng(123);
    for (int i = 0; i < 20; ++i) {
        auto a = random_acyclic_dfa(rng, 2 + rng.below(5), 1 + rng.below(3));
        CHECK(a.acyclic);
        auto c = random_complete_dfa(rng, 2 + rng.below(5), 1 + rng.below(3));
        CHECK(c.complete);
        auto n_nodes = 3 + rng.below(4);
        auto g = random_digraph(rng, n_nodes, 6);
        CHECK(g.nodes.size() == static_cast<std::size_t>(n_nodes));
        CHECK(g.edges.size() <= 6);
        for (auto& [u, v] : g.edges) {
            CHECK(std::find(g.nodes.begin(), g.nodes.end(), u) != g.nodes.end());
            CHECK(std::find(g.nodes.begin(), g.nodes.end(), v) != g.nodes.end());
        }
    }
}

TEST_CASE("reduction verdicts agree with their sources at random") {
    Rng rng(77);
    for (int i = 0; i < 25; ++i) {
        std::vector<Dfa> sources;
        for (int k = 0; k < 2; ++k) sources.push_back(random_acyclic_dfa(rng, 3 + rng.below(3), 2));
        auto ri = reduce_to_codetectability(normalize_acyclic_dfas(sources));
        REQUIRE(ri.provenance.expected_holds.has_value());
        CHECK(verify_co_detectability(ri.fsa, ri.observers).holds == *ri.provenance.expected_holds);
    }
    for (int i = 0; i < 25; ++i) {
        std::vector<Dfa> sources;
        for (int k = 0; k < 2; ++k) sources.push_back(random_complete_dfa(rng, 2 + rng.below(3), 2));
        auto ri = reduce_to_copredictability(normalize_complete_dfas(sources));
        REQUIRE(ri.provenance.expected_holds.has_value());
        CHECK(verify_co_predictability(ri.fsa, ri.observers).holds ==
              *ri.provenance.expected_holds);
    }
    for (int i = 0; i < 25; ++i) {
        auto g = random_digraph(rng, 4 + rng.below(4), 8);
        auto from = g.nodes[static_cast<std::size_t>(rng.below(static_cast<std::int32_t>(g.nodes.size())))];
        auto to = g.nodes[static_cast<std::size_t>(rng.below(static_cast<std::int32_t>(g.nodes.size())))];
        auto ri = reduce_path_to_predictability(g, from, to);
        CHECK(verify_predictability(ri.fsa).holds == *ri.provenance.expected_holds);
    }
}

TEST_CASE("source files parse strictly") {
    auto dfa = dfa_from_json(R"({
        "states": ["s0", "s1"],
        "initial": "s0",
        "letters": ["a"],
        "transitions": [["s0", "a", "s1"]],
        "accepting": ["s1"]
    })");
    CHECK(dfa.states.size() == 2);
    CHECK(dfa.acyclic);

    // unknown fields are reported before the content is inspected
    try {
        dfa_from_json(R"({
            "states": ["s0"],
            "initial": "s0",
            "letters": ["a"],
            "transitions": [],
            "accepting": [],
            "surprise": true
        })");
        FAIL("expected a parse failure");
    } catch (const std::invalid_argument& ex) {
        CHECK(std::string(ex.what()).find("surprise") != std::string::npos);
    }

    // semantic violations are all collected in one pass
    try {
        dfa_from_json(R"({
            "states": ["s0"],
            "initial": "zz",
            "letters": ["a"],
            "transitions": [["s0", "a", "missing"]],
            "accepting": []
        })");
        FAIL("expected a parse failure");
    } catch (const std::invalid_argument& ex) {
        std::string what = ex.what();
        CHECK(what.find("zz") != std::string::npos);
        CHECK(what.find("missing") != std::string::npos);
    }

    auto g = digraph_from_json(R"({"nodes": ["p", "q"], "edges": [["p", "q"]]})");
    CHECK(g.nodes.size() == 2);
    CHECK(g.edges.size() == 1);
    CHECK_THROWS_AS(digraph_from_json(R"({"nodes": ["p"], "edges": [["p", "zz"]]})"),
                    std::invalid_argument);
}
