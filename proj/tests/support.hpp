// Shared fixtures for the test binaries: the worked instances the regression
// suite pins down, small automaton families for the remark-style assumption
// checks, and seeded random generators for the agreement suites.

#pragma once

#include <array>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ccdes/composition.hpp"
#include "ccdes/fsa.hpp"
#include "ccdes/gadgets.hpp"
#include "ccdes/instance.hpp"

namespace support {

using namespace ccdes;

inline std::string dec(std::int64_t v) { return std::to_string(v); }

/// Five states, two branches that stay output-identical forever under one of
/// the two observers; not co-detectable.
inline Instance two_observer_split() {
    Instance inst;
    inst.fsa = make_fsa(
        {"x0", "x1", "x2", "x3", "x4"}, {"x0"},
        {{"a", "a"}, {"b", "b"}, {"c", "c"}, {"d", "d"}},
        {{"x0", "a", "x1"},
         {"x0", "a", "x2"},
         {"x1", "b", "x1"},
         {"x1", "c", "x3"},
         {"x1", "c", "x4"},
         {"x2", "b", "x2"},
         {"x3", "d", "x3"},
         {"x4", "d", "x4"}});
    inst.observers = make_observers(inst.fsa, {{"o1", {"a", "b", "c"}}, {"o2", {"a", "b", "d"}}});
    return inst;
}

/// Six states with one silent fault; each observer alone confuses the faulty
/// branch with the normal one, so neither diagnosis nor prediction works.
inline Instance fault_diag_pair() {
    Instance inst;
    inst.fsa = make_fsa(
        {"x0", "x1", "x2", "x3", "x4", "x5"}, {"x0"},
        {{"a", "a"}, {"b", "b"}, {"f", std::nullopt}, {"u", std::nullopt}},
        {{"x0", "a", "x1"},
         {"x0", "a", "x2"},
         {"x1", "b", "x3"},
         {"x2", "b", "x4"},
         {"x3", "f", "x5"},
         {"x4", "u", "x4"},
         {"x5", "u", "x5"}},
        {"f"});
    inst.observers = make_observers(inst.fsa, {{"o1", {"a"}}, {"o2", {"b"}}});
    return inst;
}

/// Faulty and normal runs merge silently into a common deadlock state.
inline Fsa silent_merge() {
    return make_fsa({"x0", "x1", "x2"}, {"x0", "x1"},
                    {{"f", std::nullopt}, {"u", std::nullopt}},
                    {{"x0", "f", "x2"}, {"x1", "u", "x2"}}, {"f"});
}

/// Same merge, but the common state gains an unobservable self-loop.
inline Fsa silent_merge_looped() {
    return make_fsa({"x0", "x1", "x2"}, {"x0", "x1"},
                    {{"f", std::nullopt}, {"u", std::nullopt}},
                    {{"x0", "f", "x2"}, {"x1", "u", "x2"}, {"x2", "u", "x2"}}, {"f"});
}

/// A silent fault into a deadlock next to a silent normal loop.
inline Fsa forked_fault() {
    return make_fsa({"x0", "x1", "x2"}, {"x0"},
                    {{"f", std::nullopt}, {"u", std::nullopt}},
                    {{"x0", "f", "x1"}, {"x0", "u", "x2"}, {"x2", "u", "x2"}}, {"f"});
}

/// Same fork, but the post-fault state gains a faulty self-loop.
inline Fsa forked_fault_looping() {
    return make_fsa({"x0", "x1", "x2"}, {"x0"},
                    {{"f", std::nullopt}, {"u", std::nullopt}},
                    {{"x0", "f", "x1"}, {"x0", "u", "x2"}, {"x2", "u", "x2"}, {"x1", "f", "x1"}},
                    {"f"});
}

/// A silent choice between a fault and a normal step, both into deadlocks.
inline Fsa silent_choice() {
    return make_fsa({"x0", "x1", "x2"}, {"x0"},
                    {{"f", std::nullopt}, {"u", std::nullopt}},
                    {{"x0", "f", "x1"}, {"x0", "u", "x2"}}, {"f"});
}

/// Same choice, but both successors gain unobservable self-loops.
inline Fsa silent_choice_looped() {
    return make_fsa({"x0", "x1", "x2"}, {"x0"},
                    {{"f", std::nullopt}, {"u", std::nullopt}},
                    {{"x0", "f", "x1"},
                     {"x0", "u", "x2"},
                     {"x1", "u", "x1"},
                     {"x2", "u", "x2"}},
                    {"f"});
}

/// Fault-free silent branching; nothing to predict.
inline Fsa silent_chain() {
    return make_fsa({"x0", "x1", "x2"}, {"x0"}, {{"u", std::nullopt}},
                    {{"x0", "u", "x1"}, {"x0", "u", "x2"}, {"x2", "u", "x2"}});
}

/// Same branching, but one leaf gains a faulty self-loop.
inline Fsa silent_chain_faulted() {
    return make_fsa({"x0", "x1", "x2"}, {"x0"},
                    {{"u", std::nullopt}, {"f", std::nullopt}},
                    {{"x0", "u", "x1"}, {"x0", "u", "x2"}, {"x2", "u", "x2"}, {"x1", "f", "x1"}},
                    {"f"});
}

/// Seeded automaton with mixed observable, silent and faulty events. Shared
/// labels and nondeterminism arise naturally from the draws.
inline Fsa random_fsa(Rng& rng, std::int32_t n_states, std::int32_t n_events, bool with_faults) {
    std::vector<std::string> states;
    for (std::int32_t i = 0; i < n_states; ++i) states.push_back("q" + dec(i));
    std::vector<std::string> initial{"q0"};
    for (std::int32_t i = 1; i < n_states; ++i)
        if (rng.chance(1, 5)) initial.push_back("q" + dec(i));

    std::int32_t n_labels = std::max<std::int32_t>(1, (2 * n_events + 2) / 3);
    std::vector<std::pair<std::string, std::optional<std::string>>> events;
    std::vector<std::string> faulty;
    for (std::int32_t i = 0; i < n_events; ++i) {
        std::optional<std::string> label;
        if (rng.chance(2, 3)) label = "l" + dec(rng.below(n_labels));
        events.emplace_back("e" + dec(i), label);
        if (with_faults && rng.chance(1, 4)) faulty.push_back("e" + dec(i));
    }

    std::set<std::array<std::string, 3>> trans;
    std::int32_t target = 2 * n_states + rng.below(n_states + 1);
    for (std::int32_t i = 0; i < target; ++i)
        trans.insert({"q" + dec(rng.below(n_states)), "e" + dec(rng.below(n_events)),
                      "q" + dec(rng.below(n_states))});
    return make_fsa(std::move(states), std::move(initial), std::move(events),
                    {trans.begin(), trans.end()}, std::move(faulty));
}

/// Observers drawn as independent event subsets; silent events may be listed
/// (they contribute nothing, which the verifiers must tolerate).
inline ObserverSet random_observers(Rng& rng, const Fsa& fsa, std::int32_t n_observers) {
    std::vector<std::pair<std::string, std::vector<std::string>>> specs;
    for (std::int32_t j = 0; j < n_observers; ++j) {
        std::vector<std::string> sees;
        for (auto& e : fsa.events)
            if (rng.chance(1, 2)) sees.push_back(e.name);
        specs.emplace_back("o" + dec(j + 1), std::move(sees));
    }
    return make_observers(fsa, std::move(specs));
}

/// Walks the composition at random and projects every step onto each
/// component: reference and alive tracked entries must follow real
/// transitions of their automata, silent entries must stand still, dead
/// entries must stay dead. Returns the first violation, empty when clean.
inline std::string embedded_walk_violation(const Composition& comp,
                                           std::span<const Fsa* const> autos, Rng& rng,
                                           int walks, int steps) {
    if (comp.initial.empty()) return {};
    for (int w = 0; w < walks; ++w) {
        auto cur = comp.initial[static_cast<std::size_t>(
            rng.below(static_cast<std::int32_t>(comp.initial.size())))];
        for (int k = 0; k < steps; ++k) {
            auto edges = comp.out(cur);
            if (edges.empty()) break;
            auto& e = edges[static_cast<std::size_t>(
                rng.below(static_cast<std::int32_t>(edges.size())))];
            auto& src = comp.states[static_cast<std::size_t>(e.src)];
            auto& dst = comp.states[static_cast<std::size_t>(e.dst)];
            auto& evec = comp.evecs[static_cast<std::size_t>(e.evec)];
            for (int c = 0; c <= comp.L; ++c) {
                auto ci = static_cast<std::size_t>(c);
                auto where = comp.render_state(e.src) + " " + comp.render_evec(e.evec);
                if (src[ci] == Composition::kDead) {
                    if (evec[ci] != Composition::kKill || dst[ci] != Composition::kDead)
                        return "dead entry moved at " + where;
                    continue;
                }
                if (evec[ci] == Composition::kKill) {
                    if (c == 0) return "reference killed at " + where;
                    if (dst[ci] != Composition::kDead) return "kill without death at " + where;
                    continue;
                }
                if (evec[ci] == Composition::kEps) {
                    if (dst[ci] != src[ci]) return "silent entry moved at " + where;
                    continue;
                }
                bool found = false;
                for (auto& t : autos[ci]->out(src[ci]))
                    found = found || (t.event == evec[ci] && t.dst == dst[ci]);
                if (!found) return "projected step is not a transition at " + where;
            }
            cur = e.dst;
        }
    }
    return {};
}

/// Edge lookup by rendered names, for pinning individual transitions.
inline bool has_edge(const Composition& comp, const std::string& src, const std::string& evec,
                     const std::string& dst) {
    for (auto& e : comp.edges) {
        if (comp.render_state(e.src) == src && comp.render_evec(e.evec) == evec &&
            comp.render_state(e.dst) == dst)
            return true;
    }
    return false;
}

inline bool has_state(const Composition& comp, const std::string& name) {
    for (std::size_t s = 0; s < comp.n(); ++s)
        if (comp.render_state(static_cast<std::int32_t>(s)) == name) return true;
    return false;
}

}  // namespace support
