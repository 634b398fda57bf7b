#include <doctest.h>

#include <string>
#include <vector>

#include "ccdes/oracle.hpp"
#include "ccdes/verify.hpp"
#include "support.hpp"

using namespace ccdes;

namespace {

/// Removes one step from a route segment: the event and the state it reaches.
Certificate drop_step(Certificate cert, std::size_t seg, std::size_t step) {
    auto& p = cert.route[seg].path;
    p.events.erase(p.events.begin() + static_cast<std::ptrdiff_t>(step));
    p.states.erase(p.states.begin() + static_cast<std::ptrdiff_t>(step) + 1);
    return cert;
}

void expect_all_corruptions_rejected(const Fsa& fsa, const ObserverSet* obs,
                                     const Certificate& cert) {
    for (std::size_t seg = 0; seg < cert.route.size(); ++seg) {
        auto& path = cert.route[seg].path;
        for (std::size_t step = 0; step < path.events.size(); ++step) {
            auto res = check_certificate(fsa, obs, drop_step(cert, seg, step));
            CHECK_FALSE(res.ok);
            CHECK_FALSE(res.diagnostics.empty());
        }
        for (std::size_t vec = 0; vec < path.states.size(); ++vec) {
            for (std::size_t entry = 0; entry < path.states[vec].size(); ++entry) {
                auto bad = cert;
                bad.route[seg].path.states[vec][entry] = "zz";
                CHECK_FALSE(check_certificate(fsa, obs, bad).ok);
            }
        }
    }
}

}  // namespace

TEST_CASE("naive verdicts match the verifiers on the worked instances") {
    auto split = support::two_observer_split();
    auto diag = support::fault_diag_pair();
    for (auto p : kAllProperties) {
        const ObserverSet* so = centralized(p) ? nullptr : &split.observers;
        CHECK(naive_verify(p, split.fsa, so).holds ==
              verify_property(p, split.fsa, so).holds);
        const ObserverSet* fo = centralized(p) ? nullptr : &diag.observers;
        CHECK(naive_verify(p, diag.fsa, fo).holds == verify_property(p, diag.fsa, fo).holds);
    }
}

TEST_CASE("naive verdicts match on the remark suite") {
    for (auto* fsa : {&support::silent_merge, &support::silent_merge_looped,
                      &support::forked_fault, &support::forked_fault_looping}) {
        auto a = (*fsa)();
        CHECK(naive_verify(Property::diagnosability, a, nullptr).holds ==
              verify_diagnosability(a).holds);
    }
    for (auto* fsa : {&support::silent_choice, &support::silent_choice_looped,
                      &support::silent_chain, &support::silent_chain_faulted}) {
        auto a = (*fsa)();
        CHECK(naive_verify(Property::predictability, a, nullptr).holds ==
              verify_predictability(a).holds);
    }
}

TEST_CASE("naive violated verdicts carry checkable certificates") {
    auto split = support::two_observer_split();
    auto v = naive_verify(Property::co_detectability, split.fsa, &split.observers);
    REQUIRE_FALSE(v.holds);
    REQUIRE(v.certificate.has_value());
    CHECK(check_certificate(split.fsa, &split.observers, *v.certificate).ok);
}

TEST_CASE("exhaustive estimates agree with the incremental ones") {
    auto inst = support::two_observer_split();
    auto o1 = observer_labeling(inst.fsa, inst.observers, 0);
    auto o2 = observer_labeling(inst.fsa, inst.observers, 1);

    for (auto& sigma : std::vector<std::vector<std::string>>{
             {}, {"a"}, {"a", "b"}, {"a", "b", "c"}, {"a", "c"}, {"d"}}) {
        CHECK(exhaustive_estimate(inst.fsa, o1, sigma) ==
              current_state_estimate(inst.fsa, o1, sigma));
        CHECK(exhaustive_estimate(inst.fsa, o2, sigma) ==
              current_state_estimate(inst.fsa, o2, sigma));
    }

    auto est = exhaustive_estimate(inst.fsa, o2, std::vector<std::string>{"a"});
    std::vector<std::string> got;
    for (auto s : est) got.push_back(inst.fsa.state_name(s));
    CHECK(got == std::vector<std::string>{"x1", "x2", "x3", "x4"});

    est = exhaustive_estimate(inst.fsa, o1, std::vector<std::string>{"a", "b"});
    got.clear();
    for (auto s : est) got.push_back(inst.fsa.state_name(s));
    CHECK(got == std::vector<std::string>{"x1", "x2"});
}

TEST_CASE("dfa intersection finds the shortest common word") {
    auto only_ab = make_dfa({"s0", "s1", "s2"}, "s0", {"a", "b"},
                            {{"s0", "a", "s1"}, {"s1", "b", "s2"}}, {"s2"});
    auto also_ab = make_dfa({"t0", "t1", "t2"}, "t0", {"a", "b"},
                            {{"t0", "a", "t1"}, {"t1", "b", "t2"}, {"t0", "b", "t0"}},
                            {"t2"});
    std::vector<Dfa> both{only_ab, also_ab};
    auto word = brute_force_dfa_intersection(both);
    REQUIRE(word.has_value());
    CHECK(*word == std::vector<std::string>{"a", "b"});

    auto only_a = make_dfa({"u0", "u1"}, "u0", {"a", "b"}, {{"u0", "a", "u1"}}, {"u1"});
    auto only_b = make_dfa({"v0", "v1"}, "v0", {"a", "b"}, {{"v0", "b", "v1"}}, {"v1"});
    std::vector<Dfa> disjoint{only_a, only_b};
    CHECK_FALSE(brute_force_dfa_intersection(disjoint).has_value());

    // ties break toward the smaller letters
    auto any2 = make_dfa({"w0", "w1", "w2"}, "w0", {"a", "b"},
                         {{"w0", "a", "w1"},
                          {"w0", "b", "w1"},
                          {"w1", "a", "w2"},
                          {"w1", "b", "w2"}},
                         {"w2"});
    std::vector<Dfa> pair{any2, any2};
    auto tie = brute_force_dfa_intersection(pair);
    REQUIRE(tie.has_value());
    CHECK(*tie == std::vector<std::string>{"a", "a"});
}

TEST_CASE("budgets stop the oracle loudly") {
    auto inst = support::two_observer_split();
    OracleConfig tiny{10};
    CHECK_THROWS_AS(naive_verify(Property::co_detectability, inst.fsa, &inst.observers, tiny),
                    BudgetExceeded);
}

TEST_CASE("emitted certificates validate and their corruptions are rejected") {
    auto split = support::two_observer_split();
    auto diag = support::fault_diag_pair();

    struct Case {
        const Fsa* fsa;
        const ObserverSet* obs;
        Verdict verdict;
    };
    std::vector<Case> cases;
    cases.push_back({&split.fsa, &split.observers,
                     verify_co_detectability(split.fsa, split.observers)});
    cases.push_back({&split.fsa, nullptr, verify_strong_detectability(split.fsa)});
    cases.push_back({&diag.fsa, &diag.observers,
                     verify_co_diagnosability(diag.fsa, diag.observers)});
    cases.push_back({&diag.fsa, nullptr, verify_diagnosability(diag.fsa)});
    cases.push_back({&diag.fsa, &diag.observers,
                     verify_co_predictability(diag.fsa, diag.observers)});
    cases.push_back({&diag.fsa, nullptr, verify_predictability(diag.fsa)});

    for (auto& c : cases) {
        REQUIRE_FALSE(c.verdict.holds);
        REQUIRE(c.verdict.certificate.has_value());
        auto& cert = *c.verdict.certificate;
        auto res = check_certificate(*c.fsa, c.obs, cert);
        CHECK(res.ok);
        CHECK(res.diagnostics.empty());
        expect_all_corruptions_rejected(*c.fsa, c.obs, cert);
    }
}

TEST_CASE("a removed transition is named in the diagnostics") {
    auto split = support::two_observer_split();
    auto v = verify_co_detectability(split.fsa, split.observers);
    REQUIRE(v.certificate.has_value());
    auto bad = *v.certificate;
    REQUIRE(bad.tail_cycle.has_value());
    bad.tail_cycle->events[0] = "a";
    auto res = check_certificate(split.fsa, &split.observers, bad);
    REQUIRE_FALSE(res.ok);
    bool named = false;
    for (auto& d : res.diagnostics)
        if (d.find("no transition (x3, a, x3)") != std::string::npos) named = true;
    CHECK(named);
}

TEST_CASE("attachment corruptions are rejected") {
    auto split = support::two_observer_split();
    auto diag = support::fault_diag_pair();

    auto det = verify_co_detectability(split.fsa, split.observers);
    REQUIRE(det.certificate.has_value());
    {
        auto bad = *det.certificate;
        bad.tail_cycle->events.clear();
        bad.tail_cycle->states.resize(1);
        CHECK_FALSE(check_certificate(split.fsa, &split.observers, bad).ok);
    }
    {
        // both cycles charging one observer must be caught
        auto bad = *det.certificate;
        for (auto& seg : bad.route)
            if (seg.kind == Certificate::Segment::Kind::Cycle) seg.observer = 0;
        CHECK_FALSE(check_certificate(split.fsa, &split.observers, bad).ok);
    }

    auto pred = verify_co_predictability(diag.fsa, diag.observers);
    REQUIRE(pred.certificate.has_value());
    {
        auto bad = *pred.certificate;
        (*bad.fault_transition)[1] = "u";
        CHECK_FALSE(check_certificate(diag.fsa, &diag.observers, bad).ok);
    }
    {
        auto bad = *pred.certificate;
        bad.observer_tails[0].cycle.events.clear();
        bad.observer_tails[0].cycle.states.resize(1);
        CHECK_FALSE(check_certificate(diag.fsa, &diag.observers, bad).ok);
    }

    auto dg = verify_co_diagnosability(diag.fsa, diag.observers);
    REQUIRE(dg.certificate.has_value());
    {
        // a diagnosis route must not smuggle in detection attachments
        auto bad = *dg.certificate;
        bad.tail_path = SPath{{"x5"}, {}};
        bad.tail_cycle = SPath{{"x5", "x5"}, {"u"}};
        CHECK_FALSE(check_certificate(diag.fsa, &diag.observers, bad).ok);
    }
}

TEST_CASE("evidence replay catches fabricated claims") {
    auto split = support::two_observer_split();
    auto v = verify_co_detectability(split.fsa, split.observers);
    REQUIRE(v.certificate.has_value());
    auto ev = pump_certificate(split.fsa, &split.observers, *v.certificate, 2);
    CHECK(check_certificate(split.fsa, &split.observers, *v.certificate, &ev).ok);

    auto bad = ev;
    bad.word.push_back("a");
    CHECK_FALSE(check_certificate(split.fsa, &split.observers, *v.certificate, &bad).ok);

    auto wrong = ev;
    wrong.observers[0].estimate = {"x0"};
    CHECK_FALSE(check_certificate(split.fsa, &split.observers, *v.certificate, &wrong).ok);
}
