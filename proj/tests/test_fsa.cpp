#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "ccdes/fsa.hpp"
#include "ccdes/instance.hpp"
#include "support.hpp"

using namespace ccdes;

namespace {

std::vector<std::string> names(const Fsa& fsa, const std::vector<StateId>& ids) {
    std::vector<std::string> out;
    for (auto s : ids) out.push_back(fsa.state_name(s));
    return out;
}

}  // namespace

TEST_CASE("make_fsa rejects structural violations") {
    CHECK_THROWS_AS(make_fsa({"p", "p"}, {"p"}, {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(make_fsa({"p"}, {"q"}, {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(make_fsa({"p"}, {"p"}, {{"e", "l"}}, {{"p", "g", "p"}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_fsa({"p"}, {"p"}, {{"e", "l"}}, {{"p", "e", "q"}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_fsa({"p"}, {"p"}, {{"e", "l"}, {"e", "m"}}, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        make_fsa({"p"}, {"p"}, {{"e", "l"}}, {{"p", "e", "p"}, {"p", "e", "p"}}),
        std::invalid_argument);
    CHECK_THROWS_AS(make_fsa({kDeadToken}, {kDeadToken}, {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(make_fsa({"p"}, {"p"}, {{"e", "l"}}, {}, {"g"}), std::invalid_argument);
}

TEST_CASE("ids are sorted and stable") {
    auto fsa = make_fsa({"z", "a", "m"}, {"m"}, {{"e2", "x"}, {"e1", std::nullopt}},
                        {{"z", "e1", "a"}});
    CHECK(fsa.states == std::vector<std::string>{"a", "m", "z"});
    CHECK(fsa.state_id("z") == 2);
    CHECK(fsa.state_id("missing") == -1);
    CHECK(fsa.event_name(0) == "e1");
    CHECK_FALSE(fsa.observable(0));
    CHECK(fsa.observable(1));
}

TEST_CASE("estimates follow the observed output") {
    auto inst = support::two_observer_split();
    auto& fsa = inst.fsa;

    auto o1 = observer_labeling(fsa, inst.observers, 0);
    auto o2 = observer_labeling(fsa, inst.observers, 1);

    std::vector<std::string> ab{"a", "b"};
    CHECK(names(fsa, current_state_estimate(fsa, o1, ab)) ==
          std::vector<std::string>{"x1", "x2"});

    std::vector<std::string> a{"a"};
    CHECK(names(fsa, current_state_estimate(fsa, o2, a)) ==
          std::vector<std::string>{"x1", "x2", "x3", "x4"});

    std::vector<std::string> abc{"a", "b", "c"};
    CHECK(names(fsa, current_state_estimate(fsa, o1, abc)) ==
          std::vector<std::string>{"x3", "x4"});

    std::vector<std::string> impossible{"d"};
    CHECK(current_state_estimate(fsa, o2, impossible).empty());

    std::vector<std::string> none{};
    CHECK(names(fsa, current_state_estimate(fsa, global_labeling(fsa), none)) ==
          std::vector<std::string>{"x0"});
}

TEST_CASE("epsilon closure follows silent transitions only") {
    auto fsa = support::fault_diag_pair();
    auto lab = global_labeling(fsa.fsa);
    std::vector<StateId> from{fsa.fsa.state_id("x3")};
    CHECK(names(fsa.fsa, epsilon_closure(fsa.fsa, lab, from)) ==
          std::vector<std::string>{"x3", "x5"});
    std::vector<StateId> start{fsa.fsa.state_id("x0")};
    CHECK(names(fsa.fsa, epsilon_closure(fsa.fsa, lab, start)) ==
          std::vector<std::string>{"x0"});
}

TEST_CASE("projection drops silent events per labeling") {
    auto inst = support::fault_diag_pair();
    auto& fsa = inst.fsa;
    std::vector<std::string> word{"a", "b", "f", "u"};
    CHECK(project(fsa, global_labeling(fsa), word) == std::vector<std::string>{"a", "b"});
    CHECK(project(fsa, observer_labeling(fsa, inst.observers, 0), word) ==
          std::vector<std::string>{"a"});
    CHECK(project(fsa, observer_labeling(fsa, inst.observers, 1), word) ==
          std::vector<std::string>{"b"});
    std::vector<std::string> bogus{"nope"};
    CHECK_THROWS_AS(project(fsa, global_labeling(fsa), bogus), std::invalid_argument);
}

TEST_CASE("assumption diagnostics report deadlocks and silent cycles") {
    auto split = support::two_observer_split();
    auto rep = check_assumptions(split.fsa);
    CHECK(rep.deadlock_free);
    CHECK(rep.prompt);

    auto diag = support::fault_diag_pair();
    rep = check_assumptions(diag.fsa);
    CHECK(rep.deadlock_free);
    CHECK_FALSE(rep.prompt);

    rep = check_assumptions(support::silent_merge());
    CHECK_FALSE(rep.deadlock_free);
    CHECK(rep.prompt);
}

TEST_CASE("accessible part drops unreachable states and keeps events") {
    auto fsa = make_fsa({"p", "q", "r"}, {"p"}, {{"e", "l"}, {"g", std::nullopt}},
                        {{"p", "e", "q"}, {"r", "g", "p"}});
    auto acc = accessible_part(fsa);
    CHECK(acc.n_states() == 2);
    CHECK(acc.state_id("r") == -1);
    CHECK(acc.n_events() == 2);
    CHECK(acc.transitions.size() == 1);
    auto again = accessible_part(acc);
    CHECK(again.states == acc.states);
    CHECK(again.transitions.size() == acc.transitions.size());
}

TEST_CASE("normal sub-automaton removes exactly the faulty transitions") {
    auto inst = support::fault_diag_pair();
    auto normal = normal_subautomaton(inst.fsa);
    CHECK(normal.n_states() == inst.fsa.n_states());
    CHECK(normal.n_events() == inst.fsa.n_events());
    CHECK(normal.faulty == inst.fsa.faulty);
    CHECK(normal.transitions.size() == inst.fsa.transitions.size() - 1);
    for (auto& t : normal.transitions) CHECK_FALSE(normal.is_faulty(t.event));
    auto again = normal_subautomaton(normal);
    CHECK(again.transitions.size() == normal.transitions.size());
}

TEST_CASE("cycle maps agree with the obvious loops") {
    auto inst = support::two_observer_split();
    auto& fsa = inst.fsa;
    auto on = on_cycle_states(fsa);
    auto reach = can_reach_cycle(fsa);
    CHECK_FALSE(on[static_cast<std::size_t>(fsa.state_id("x0"))]);
    CHECK(on[static_cast<std::size_t>(fsa.state_id("x1"))]);
    CHECK(on[static_cast<std::size_t>(fsa.state_id("x3"))]);
    for (std::size_t s = 0; s < fsa.n_states(); ++s) CHECK(reach[s]);

    auto chain = support::silent_chain();
    on = on_cycle_states(chain);
    reach = can_reach_cycle(chain);
    CHECK_FALSE(on[static_cast<std::size_t>(chain.state_id("x1"))]);
    CHECK_FALSE(reach[static_cast<std::size_t>(chain.state_id("x1"))]);
    CHECK(reach[static_cast<std::size_t>(chain.state_id("x0"))]);
}

TEST_CASE("observer views relabel without touching structure") {
    auto inst = support::two_observer_split();
    auto local = local_automaton(inst.fsa, inst.observers, 0);
    CHECK(local.states == inst.fsa.states);
    CHECK(local.transitions.size() == inst.fsa.transitions.size());
    CHECK_FALSE(local.observable(local.event_id("d")));
    CHECK(local.observable(local.event_id("c")));

    auto warn = observer_warnings(
        inst.fsa, make_observers(inst.fsa, {{"oz", {"a"}}}));
    CHECK(warn.empty());
}

TEST_CASE("full observer sees every labelled event") {
    auto inst = support::fault_diag_pair();
    auto obs = full_observer(inst.fsa);
    REQUIRE(obs.size() == 1);
    auto lab = observer_labeling(inst.fsa, obs, 0);
    CHECK(lab.of(inst.fsa.event_id("a")) == "a");
    CHECK(lab.silent(inst.fsa.event_id("f")));
}

TEST_CASE("observer construction validates names") {
    auto inst = support::two_observer_split();
    CHECK_THROWS_AS(make_observers(inst.fsa, {{"o1", {"nope"}}}), std::invalid_argument);
    CHECK_THROWS_AS(make_observers(inst.fsa, {{"o1", {"a"}}, {"o1", {"b"}}}),
                    std::invalid_argument);
    auto diag = support::fault_diag_pair();
    auto warn = observer_warnings(diag.fsa, make_observers(diag.fsa, {{"o1", {"a", "u"}}}));
    REQUIRE(warn.size() == 1);
    CHECK(warn[0].find("u") != std::string::npos);
}

TEST_CASE("dfa construction and walks") {
    auto dfa = make_dfa({"s0", "s1", "s2"}, "s0", {"a", "b"},
                        {{"s0", "a", "s1"}, {"s1", "b", "s2"}, {"s0", "b", "s0"}}, {"s2"});
    CHECK(dfa.acyclic == false);
    CHECK(dfa.complete == false);
    std::vector<std::string> ab{"a", "b"};
    CHECK(dfa.accepts(ab));
    std::vector<std::string> ba{"b", "a"};
    CHECK_FALSE(dfa.accepts(ba));
    std::vector<std::string> off{"a", "a"};
    CHECK(dfa.walk(off) == -1);

    CHECK_THROWS_AS(make_dfa({"s0"}, "s0", {"a"},
                             {{"s0", "a", "s0"}, {"s0", "a", "s0"}}, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_dfa({"s0"}, "s1", {"a"}, {}, {}), std::invalid_argument);

    auto line = make_dfa({"s0", "s1"}, "s0", {"a"}, {{"s0", "a", "s1"}}, {"s1"});
    CHECK(line.acyclic);
    auto loop = make_dfa({"s0"}, "s0", {"a"}, {{"s0", "a", "s0"}}, {"s0"});
    CHECK(loop.complete);
    CHECK_FALSE(loop.acyclic);
}

TEST_CASE("instance files parse strictly and serialize canonically") {
    auto inst = support::two_observer_split();
    auto text = instance_to_json(inst.fsa, inst.observers);
    auto back = parse_instance(text);
    REQUIRE(back.ok());
    CHECK(instance_to_json(back.instance->fsa, back.instance->observers) == text);

    // unknown fields are reported before anything else is inspected
    auto unknown = parse_instance(R"({
        "states": ["p"],
        "initial": ["p"],
        "events": [],
        "transitions": [],
        "extra": 1
    })");
    CHECK_FALSE(unknown.ok());
    REQUIRE(unknown.errors.size() == 1);
    CHECK(unknown.errors[0].find("extra") != std::string::npos);

    // semantic violations are all collected in one pass
    auto bad = parse_instance(R"({
        "states": ["p", "p"],
        "initial": ["q"],
        "events": [{"name": "e", "label": null}],
        "transitions": [["p", "e", "zz"]],
        "observers": [],
        "faulty": ["w"],
        "controllable": []
    })");
    CHECK_FALSE(bad.ok());
    CHECK(bad.errors.size() >= 4);

    CHECK_FALSE(parse_instance("not json").ok());
    CHECK_FALSE(parse_instance("[1, 2]").ok());
}

TEST_CASE("runs validate against the transition relation") {
    auto inst = support::two_observer_split();
    auto& fsa = inst.fsa;
    Run run{fsa.state_id("x0"),
            {{fsa.event_id("a"), fsa.state_id("x1")}, {fsa.event_id("b"), fsa.state_id("x1")}}};
    CHECK(run_valid(fsa, run));
    CHECK(run.end() == fsa.state_id("x1"));
    run.steps.push_back({fsa.event_id("d"), fsa.state_id("x3")});
    CHECK_FALSE(run_valid(fsa, run));
}
