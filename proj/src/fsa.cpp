#include "ccdes/fsa.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ccdes/detail/graph.hpp"

namespace ccdes {

namespace {

StateId find_sorted(const std::vector<std::string>& names, std::string_view key) {
    auto it = std::lower_bound(names.begin(), names.end(), key);
    if (it == names.end() || *it != key) return -1;
    return static_cast<StateId>(it - names.begin());
}

[[noreturn]] void fail(const std::vector<std::string>& errors) {
    std::ostringstream os;
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (i) os << '\n';
        os << errors[i];
    }
    throw std::invalid_argument(os.str());
}

void check_names(const std::vector<std::string>& sorted, const char* what,
                 std::vector<std::string>& errors) {
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i].empty()) errors.push_back(std::string(what) + " with empty name");
        if (sorted[i] == kDeadToken)
            errors.push_back(std::string(what) + " named by the reserved token " + kDeadToken);
        if (i > 0 && sorted[i] == sorted[i - 1])
            errors.push_back(std::string("duplicate ") + what + " '" + sorted[i] + "'");
    }
}

std::vector<char> reachable_mask(const Fsa& fsa) {
    std::vector<char> seen(fsa.n_states(), 0);
    std::deque<StateId> queue;
    for (auto s : fsa.initial) {
        seen[static_cast<std::size_t>(s)] = 1;
        queue.push_back(s);
    }
    while (!queue.empty()) {
        auto s = queue.front();
        queue.pop_front();
        for (auto& t : fsa.out(s)) {
            if (!seen[static_cast<std::size_t>(t.dst)]) {
                seen[static_cast<std::size_t>(t.dst)] = 1;
                queue.push_back(t.dst);
            }
        }
    }
    return seen;
}

detail::Csr transition_csr(const Fsa& fsa) {
    std::vector<std::pair<std::int32_t, std::int32_t>> edges;
    edges.reserve(fsa.transitions.size());
    for (auto& t : fsa.transitions) edges.emplace_back(t.src, t.dst);
    return detail::make_csr(fsa.n_states(), edges);
}

}  // namespace

StateId Fsa::state_id(std::string_view name) const { return find_sorted(states, name); }

EventId Fsa::event_id(std::string_view name) const {
    auto it = std::lower_bound(events.begin(), events.end(), name,
                               [](const Event& e, std::string_view k) { return e.name < k; });
    if (it == events.end() || it->name != name) return -1;
    return static_cast<EventId>(it - events.begin());
}

bool Fsa::is_faulty(EventId e) const {
    return std::binary_search(faulty.begin(), faulty.end(), e);
}

bool Fsa::is_initial(StateId s) const {
    return std::binary_search(initial.begin(), initial.end(), s);
}

Fsa make_fsa(std::vector<std::string> states, std::vector<std::string> initial,
             std::vector<std::pair<std::string, std::optional<std::string>>> events,
             std::vector<std::array<std::string, 3>> transitions,
             std::vector<std::string> faulty, std::vector<std::string> controllable) {
    std::vector<std::string> errors;

    Fsa fsa;
    fsa.states = std::move(states);
    std::sort(fsa.states.begin(), fsa.states.end());
    check_names(fsa.states, "state", errors);

    std::sort(events.begin(), events.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < events.size(); ++i) {
        auto& [name, label] = events[i];
        if (name.empty()) errors.push_back("event with empty name");
        if (name == kDeadToken)
            errors.push_back(std::string("event named by the reserved token ") + kDeadToken);
        if (i > 0 && name == events[i - 1].first)
            errors.push_back("duplicate event '" + name + "'");
        if (label && label->empty())
            errors.push_back("event '" + name + "' has an empty label; use null for silence");
        fsa.events.push_back({name, label});
    }

    auto resolve_state = [&](const std::string& n, const char* ctx) -> StateId {
        auto id = find_sorted(fsa.states, n);
        if (id < 0) errors.push_back(std::string(ctx) + " references unknown state '" + n + "'");
        return id;
    };
    auto resolve_event = [&](const std::string& n, const char* ctx) -> EventId {
        auto it = std::lower_bound(fsa.events.begin(), fsa.events.end(), n,
                                   [](const Event& e, const std::string& k) { return e.name < k; });
        if (it == fsa.events.end() || it->name != n) {
            errors.push_back(std::string(ctx) + " references unknown event '" + n + "'");
            return -1;
        }
        return static_cast<EventId>(it - fsa.events.begin());
    };

    std::set<std::string> seen_initial;
    for (auto& n : initial) {
        if (!seen_initial.insert(n).second) {
            errors.push_back("duplicate initial state '" + n + "'");
            continue;
        }
        auto id = resolve_state(n, "initial set");
        if (id >= 0) fsa.initial.push_back(id);
    }
    std::sort(fsa.initial.begin(), fsa.initial.end());

    for (auto& [src, ev, dst] : transitions) {
        auto s = resolve_state(src, "transition");
        auto e = resolve_event(ev, "transition");
        auto d = resolve_state(dst, "transition");
        if (s >= 0 && e >= 0 && d >= 0) fsa.transitions.push_back({s, e, d});
    }
    std::sort(fsa.transitions.begin(), fsa.transitions.end());
    for (std::size_t i = 1; i < fsa.transitions.size(); ++i) {
        if (fsa.transitions[i] == fsa.transitions[i - 1]) {
            auto& t = fsa.transitions[i];
            errors.push_back("duplicate transition (" + fsa.states[static_cast<std::size_t>(t.src)] +
                             ", " + fsa.events[static_cast<std::size_t>(t.event)].name + ", " +
                             fsa.states[static_cast<std::size_t>(t.dst)] + ")");
        }
    }

    auto resolve_event_set = [&](std::vector<std::string>& names, const char* ctx,
                                 std::vector<EventId>& dest) {
        std::set<std::string> seen;
        for (auto& n : names) {
            if (!seen.insert(n).second) {
                errors.push_back(std::string("duplicate ") + ctx + " event '" + n + "'");
                continue;
            }
            auto id = resolve_event(n, ctx);
            if (id >= 0) dest.push_back(id);
        }
        std::sort(dest.begin(), dest.end());
    };
    resolve_event_set(faulty, "faulty", fsa.faulty);
    resolve_event_set(controllable, "controllable", fsa.controllable);

    if (!errors.empty()) fail(errors);

    fsa.out_begin.assign(fsa.n_states() + 1, 0);
    for (auto& t : fsa.transitions) fsa.out_begin[static_cast<std::size_t>(t.src) + 1]++;
    for (std::size_t i = 1; i <= fsa.n_states(); ++i) fsa.out_begin[i] += fsa.out_begin[i - 1];
    return fsa;
}

ObserverSet make_observers(const Fsa& fsa,
                           std::vector<std::pair<std::string, std::vector<std::string>>> obs) {
    std::vector<std::string> errors;
    ObserverSet set;
    std::set<std::string> names;
    for (auto& [name, events] : obs) {
        if (name.empty()) errors.push_back("observer with empty name");
        if (!names.insert(name).second) errors.push_back("duplicate observer '" + name + "'");
        Observer o;
        o.name = name;
        o.observes_mask.assign(fsa.n_events(), 0);
        std::set<std::string> seen;
        for (auto& ev : events) {
            if (!seen.insert(ev).second) {
                errors.push_back("observer '" + name + "' lists event '" + ev + "' twice");
                continue;
            }
            auto id = fsa.event_id(ev);
            if (id < 0) {
                errors.push_back("observer '" + name + "' lists unknown event '" + ev + "'");
                continue;
            }
            o.observes.push_back(id);
            o.observes_mask[static_cast<std::size_t>(id)] = 1;
        }
        std::sort(o.observes.begin(), o.observes.end());
        set.observers.push_back(std::move(o));
    }
    if (!errors.empty()) fail(errors);
    return set;
}

ObserverSet full_observer(const Fsa& fsa, std::string name) {
    std::vector<std::string> events;
    for (auto& e : fsa.events)
        if (e.label) events.push_back(e.name);
    return make_observers(fsa, {{std::move(name), std::move(events)}});
}

std::vector<std::string> observer_warnings(const Fsa& fsa, const ObserverSet& obs) {
    std::vector<std::string> warnings;
    for (auto& o : obs.observers) {
        for (auto e : o.observes) {
            if (!fsa.observable(e))
                warnings.push_back("observer '" + o.name + "' includes silent event '" +
                                   fsa.event_name(e) + "', which never produces output");
        }
    }
    return warnings;
}

Labeling global_labeling(const Fsa& fsa) {
    Labeling lab;
    lab.by_event.reserve(fsa.n_events());
    for (auto& e : fsa.events) lab.by_event.push_back(e.label);
    return lab;
}

Labeling observer_labeling(const Fsa& fsa, const ObserverSet& obs, std::size_t i) {
    const auto& o = obs.observers.at(i);
    Labeling lab;
    lab.by_event.assign(fsa.n_events(), std::nullopt);
    for (auto e : o.observes) lab.by_event[static_cast<std::size_t>(e)] = fsa.label(e);
    return lab;
}

bool run_valid(const Fsa& fsa, const Run& run) {
    if (run.start < 0 || static_cast<std::size_t>(run.start) >= fsa.n_states()) return false;
    auto cur = run.start;
    for (auto& [e, dst] : run.steps) {
        auto out = fsa.out(cur);
        if (!std::binary_search(out.begin(), out.end(), Fsa::Trans{cur, e, dst})) return false;
        cur = dst;
    }
    return true;
}

Fsa accessible_part(const Fsa& fsa) {
    auto seen = reachable_mask(fsa);
    std::vector<std::string> states;
    for (std::size_t i = 0; i < fsa.n_states(); ++i)
        if (seen[i]) states.push_back(fsa.states[i]);

    std::vector<std::string> initial;
    for (auto s : fsa.initial) initial.push_back(fsa.state_name(s));

    std::vector<std::pair<std::string, std::optional<std::string>>> events;
    for (auto& e : fsa.events) events.emplace_back(e.name, e.label);

    std::vector<std::array<std::string, 3>> transitions;
    for (auto& t : fsa.transitions) {
        if (seen[static_cast<std::size_t>(t.src)] && seen[static_cast<std::size_t>(t.dst)])
            transitions.push_back({fsa.state_name(t.src), fsa.event_name(t.event), fsa.state_name(t.dst)});
    }

    std::vector<std::string> faulty, controllable;
    for (auto e : fsa.faulty) faulty.push_back(fsa.event_name(e));
    for (auto e : fsa.controllable) controllable.push_back(fsa.event_name(e));

    return make_fsa(std::move(states), std::move(initial), std::move(events), std::move(transitions),
                    std::move(faulty), std::move(controllable));
}

std::vector<std::string> project(const Fsa& fsa, const Labeling& lab,
                                 std::span<const std::string> events) {
    std::vector<std::string> out;
    for (auto& name : events) {
        auto id = fsa.event_id(name);
        if (id < 0) throw std::invalid_argument("projection of unknown event '" + name + "'");
        if (auto& l = lab.of(id)) out.push_back(*l);
    }
    return out;
}

Fsa local_automaton(const Fsa& fsa, const ObserverSet& obs, std::size_t i) {
    auto lab = observer_labeling(fsa, obs, i);
    std::vector<std::pair<std::string, std::optional<std::string>>> events;
    for (std::size_t e = 0; e < fsa.n_events(); ++e)
        events.emplace_back(fsa.events[e].name, lab.by_event[e]);

    std::vector<std::string> initial;
    for (auto s : fsa.initial) initial.push_back(fsa.state_name(s));
    std::vector<std::array<std::string, 3>> transitions;
    for (auto& t : fsa.transitions)
        transitions.push_back({fsa.state_name(t.src), fsa.event_name(t.event), fsa.state_name(t.dst)});
    std::vector<std::string> faulty, controllable;
    for (auto e : fsa.faulty) faulty.push_back(fsa.event_name(e));
    for (auto e : fsa.controllable) controllable.push_back(fsa.event_name(e));

    return make_fsa(fsa.states, std::move(initial), std::move(events), std::move(transitions),
                    std::move(faulty), std::move(controllable));
}

Fsa normal_subautomaton(const Fsa& fsa) {
    std::vector<std::string> initial;
    for (auto s : fsa.initial) initial.push_back(fsa.state_name(s));
    std::vector<std::pair<std::string, std::optional<std::string>>> events;
    for (auto& e : fsa.events) events.emplace_back(e.name, e.label);
    std::vector<std::array<std::string, 3>> transitions;
    for (auto& t : fsa.transitions) {
        if (fsa.is_faulty(t.event)) continue;
        transitions.push_back({fsa.state_name(t.src), fsa.event_name(t.event), fsa.state_name(t.dst)});
    }
    std::vector<std::string> faulty, controllable;
    for (auto e : fsa.faulty) faulty.push_back(fsa.event_name(e));
    for (auto e : fsa.controllable) controllable.push_back(fsa.event_name(e));

    return make_fsa(fsa.states, std::move(initial), std::move(events), std::move(transitions),
                    std::move(faulty), std::move(controllable));
}

std::vector<StateId> epsilon_closure(const Fsa& fsa, const Labeling& lab,
                                     std::span<const StateId> from) {
    std::vector<char> seen(fsa.n_states(), 0);
    std::deque<StateId> queue;
    for (auto s : from) {
        if (!seen[static_cast<std::size_t>(s)]) {
            seen[static_cast<std::size_t>(s)] = 1;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        auto s = queue.front();
        queue.pop_front();
        for (auto& t : fsa.out(s)) {
            if (lab.silent(t.event) && !seen[static_cast<std::size_t>(t.dst)]) {
                seen[static_cast<std::size_t>(t.dst)] = 1;
                queue.push_back(t.dst);
            }
        }
    }
    std::vector<StateId> out;
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (seen[i]) out.push_back(static_cast<StateId>(i));
    return out;
}

std::vector<StateId> current_state_estimate(const Fsa& fsa, const Labeling& lab,
                                            std::span<const std::string> sigma) {
    auto cur = epsilon_closure(fsa, lab, fsa.initial);
    for (auto& sym : sigma) {
        std::vector<StateId> step;
        std::vector<char> seen(fsa.n_states(), 0);
        for (auto s : cur) {
            for (auto& t : fsa.out(s)) {
                auto& l = lab.of(t.event);
                if (l && *l == sym && !seen[static_cast<std::size_t>(t.dst)]) {
                    seen[static_cast<std::size_t>(t.dst)] = 1;
                    step.push_back(t.dst);
                }
            }
        }
        cur = epsilon_closure(fsa, lab, step);
    }
    return cur;
}

AssumptionReport check_assumptions(const Fsa& fsa) {
    auto seen = reachable_mask(fsa);
    AssumptionReport rep{true, true};
    for (std::size_t i = 0; i < fsa.n_states(); ++i) {
        if (seen[i] && fsa.out(static_cast<StateId>(i)).empty()) rep.deadlock_free = false;
    }

    auto lab = global_labeling(fsa);
    std::vector<std::pair<std::int32_t, std::int32_t>> silent_edges;
    for (auto& t : fsa.transitions) {
        if (seen[static_cast<std::size_t>(t.src)] && seen[static_cast<std::size_t>(t.dst)] &&
            lab.silent(t.event))
            silent_edges.emplace_back(t.src, t.dst);
    }
    auto csr = detail::make_csr(fsa.n_states(), silent_edges);
    auto scc = detail::tarjan_scc(csr);
    for (auto& [u, v] : silent_edges) {
        if (scc.comp[static_cast<std::size_t>(u)] == scc.comp[static_cast<std::size_t>(v)]) {
            rep.prompt = false;
            break;
        }
    }
    return rep;
}

std::vector<char> on_cycle_states(const Fsa& fsa) {
    auto csr = transition_csr(fsa);
    auto scc = detail::tarjan_scc(csr);
    std::vector<char> scc_cyclic(static_cast<std::size_t>(scc.count), 0);
    for (auto& t : fsa.transitions) {
        if (scc.comp[static_cast<std::size_t>(t.src)] == scc.comp[static_cast<std::size_t>(t.dst)])
            scc_cyclic[static_cast<std::size_t>(scc.comp[static_cast<std::size_t>(t.src)])] = 1;
    }
    std::vector<char> out(fsa.n_states(), 0);
    for (std::size_t i = 0; i < fsa.n_states(); ++i)
        out[i] = scc_cyclic[static_cast<std::size_t>(scc.comp[i])];
    return out;
}

std::vector<char> can_reach_cycle(const Fsa& fsa) {
    auto mark = on_cycle_states(fsa);
    std::vector<std::vector<StateId>> rev(fsa.n_states());
    for (auto& t : fsa.transitions) rev[static_cast<std::size_t>(t.dst)].push_back(t.src);
    std::deque<StateId> queue;
    for (std::size_t i = 0; i < mark.size(); ++i)
        if (mark[i]) queue.push_back(static_cast<StateId>(i));
    while (!queue.empty()) {
        auto s = queue.front();
        queue.pop_front();
        for (auto p : rev[static_cast<std::size_t>(s)]) {
            if (!mark[static_cast<std::size_t>(p)]) {
                mark[static_cast<std::size_t>(p)] = 1;
                queue.push_back(p);
            }
        }
    }
    return mark;
}

StateId Dfa::state_id(std::string_view name) const { return find_sorted(states, name); }

std::int32_t Dfa::letter_id(std::string_view name) const { return find_sorted(letters, name); }

StateId Dfa::walk(std::span<const std::string> word) const {
    auto cur = initial;
    for (auto& w : word) {
        auto l = letter_id(w);
        if (l < 0) return -1;
        cur = step(cur, l);
        if (cur < 0) return -1;
    }
    return cur;
}

bool Dfa::accepts(std::span<const std::string> word) const {
    auto end = walk(word);
    return end >= 0 && accepting[static_cast<std::size_t>(end)];
}

Dfa make_dfa(std::vector<std::string> states, std::string initial, std::vector<std::string> letters,
             std::vector<std::array<std::string, 3>> transitions, std::vector<std::string> accepting) {
    std::vector<std::string> errors;
    Dfa dfa;
    dfa.states = std::move(states);
    std::sort(dfa.states.begin(), dfa.states.end());
    check_names(dfa.states, "state", errors);
    dfa.letters = std::move(letters);
    std::sort(dfa.letters.begin(), dfa.letters.end());
    check_names(dfa.letters, "letter", errors);

    dfa.initial = find_sorted(dfa.states, initial);
    if (dfa.initial < 0) errors.push_back("initial references unknown state '" + initial + "'");

    dfa.accepting.assign(dfa.states.size(), 0);
    std::set<std::string> seen_acc;
    for (auto& a : accepting) {
        if (!seen_acc.insert(a).second) {
            errors.push_back("duplicate accepting state '" + a + "'");
            continue;
        }
        auto id = find_sorted(dfa.states, a);
        if (id < 0)
            errors.push_back("accepting set references unknown state '" + a + "'");
        else
            dfa.accepting[static_cast<std::size_t>(id)] = 1;
    }

    dfa.next.assign(dfa.states.size() * dfa.letters.size(), -1);
    for (auto& [src, letter, dst] : transitions) {
        auto s = find_sorted(dfa.states, src);
        auto l = find_sorted(dfa.letters, letter);
        auto d = find_sorted(dfa.states, dst);
        if (s < 0) errors.push_back("transition references unknown state '" + src + "'");
        if (l < 0) errors.push_back("transition references unknown letter '" + letter + "'");
        if (d < 0) errors.push_back("transition references unknown state '" + dst + "'");
        if (s < 0 || l < 0 || d < 0) continue;
        auto& slot = dfa.next[static_cast<std::size_t>(s) * dfa.letters.size() + static_cast<std::size_t>(l)];
        if (slot == d)
            errors.push_back("duplicate transition (" + src + ", " + letter + ", " + dst + ")");
        else if (slot != -1)
            errors.push_back("nondeterministic transitions from '" + src + "' on '" + letter + "'");
        else
            slot = d;
    }
    if (!errors.empty()) fail(errors);

    std::vector<std::pair<std::int32_t, std::int32_t>> edges;
    for (std::size_t s = 0; s < dfa.states.size(); ++s) {
        for (std::size_t l = 0; l < dfa.letters.size(); ++l) {
            auto d = dfa.next[s * dfa.letters.size() + l];
            if (d >= 0) edges.emplace_back(static_cast<std::int32_t>(s), d);
        }
    }
    auto csr = detail::make_csr(dfa.states.size(), edges);
    auto scc = detail::tarjan_scc(csr);
    dfa.acyclic = true;
    for (auto& [u, v] : edges) {
        if (scc.comp[static_cast<std::size_t>(u)] == scc.comp[static_cast<std::size_t>(v)]) {
            dfa.acyclic = false;
            break;
        }
    }
    dfa.complete = !dfa.states.empty() && !dfa.letters.empty() &&
                   std::none_of(dfa.next.begin(), dfa.next.end(), [](StateId s) { return s < 0; });
    return dfa;
}

}  // namespace ccdes
