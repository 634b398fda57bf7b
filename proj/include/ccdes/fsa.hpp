// Finite-state automata with partially observable, possibly faulty events,
// plus the handful of constructions every verifier in this library starts from.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ccdes {

using StateId = std::int32_t;
using EventId = std::int32_t;

/// Reserved rendering token for a dead tracked entry in composition output.
/// State and event names in instances must not equal this token.
inline constexpr const char* kDeadToken = "⋄";

/// An event with its output label. A missing label means the event is
/// unobservable (produces no output).
struct Event {
    std::string name;
    std::optional<std::string> label;
};

/// A finite-state automaton over labelled events.
///
/// States, events, faulty and controllable sets are kept sorted by name, so
/// ids are stable under rebuilds and all iteration is deterministic.
/// Transitions are sorted by (src, event, dst); duplicates are rejected at
/// construction. out_begin is a CSR index with one slot per state plus a
/// terminator.
struct Fsa {
    struct Trans {
        StateId src;
        EventId event;
        StateId dst;
        auto operator<=>(const Trans&) const = default;
    };

    std::vector<std::string> states;
    std::vector<Event> events;
    std::vector<StateId> initial;
    std::vector<Trans> transitions;
    std::vector<EventId> faulty;
    std::vector<EventId> controllable;  ///< stored for interchange, unused by verifiers
    std::vector<std::int32_t> out_begin;

    std::size_t n_states() const { return states.size(); }
    std::size_t n_events() const { return events.size(); }

    /// Id lookup by name; -1 when absent.
    StateId state_id(std::string_view name) const;
    EventId event_id(std::string_view name) const;

    const std::string& state_name(StateId s) const { return states[static_cast<std::size_t>(s)]; }
    const std::string& event_name(EventId e) const { return events[static_cast<std::size_t>(e)].name; }
    const std::optional<std::string>& label(EventId e) const {
        return events[static_cast<std::size_t>(e)].label;
    }
    bool observable(EventId e) const { return label(e).has_value(); }
    bool is_faulty(EventId e) const;
    bool is_initial(StateId s) const;

    /// Outgoing transitions of s, sorted by (event, dst).
    std::span<const Trans> out(StateId s) const {
        auto b = static_cast<std::size_t>(out_begin[static_cast<std::size_t>(s)]);
        auto e = static_cast<std::size_t>(out_begin[static_cast<std::size_t>(s) + 1]);
        return {transitions.data() + b, e - b};
    }
};

/// Builds an Fsa from name-level data. Throws std::invalid_argument on any
/// structural violation (duplicates, dangling references, reserved names).
Fsa make_fsa(std::vector<std::string> states,
             std::vector<std::string> initial,
             std::vector<std::pair<std::string, std::optional<std::string>>> events,
             std::vector<std::array<std::string, 3>> transitions,
             std::vector<std::string> faulty = {},
             std::vector<std::string> controllable = {});

/// One local observation point: the subset of events it sees. Events outside
/// the subset produce no output for it, whatever their global label.
struct Observer {
    std::string name;
    std::vector<EventId> observes;   ///< sorted
    std::vector<char> observes_mask; ///< indexed by EventId
};

struct ObserverSet {
    std::vector<Observer> observers;
    std::size_t size() const { return observers.size(); }
};

/// Throws std::invalid_argument on unknown event names or duplicate observers.
ObserverSet make_observers(const Fsa& fsa,
                           std::vector<std::pair<std::string, std::vector<std::string>>> obs);

/// Advisory findings about an observer set (an observer that includes an
/// unobservable event contributes nothing through it).
std::vector<std::string> observer_warnings(const Fsa& fsa, const ObserverSet& obs);

/// Single observer seeing every labelled event, so its view coincides with
/// the automaton's own output. Centralized properties are the L=1 case over this.
ObserverSet full_observer(const Fsa& fsa, std::string name = "global");

/// Output function used by projections and estimates: per event, the emitted
/// label, or nullopt for silent.
struct Labeling {
    std::vector<std::optional<std::string>> by_event;

    bool silent(EventId e) const { return !by_event[static_cast<std::size_t>(e)].has_value(); }
    const std::optional<std::string>& of(EventId e) const {
        return by_event[static_cast<std::size_t>(e)];
    }
};

/// The automaton's own labels.
Labeling global_labeling(const Fsa& fsa);
/// What observer i (0-based) sees: the global label on observed events, silence elsewhere.
Labeling observer_labeling(const Fsa& fsa, const ObserverSet& obs, std::size_t i);

/// A concrete run: start state plus (event, next state) steps.
struct Run {
    StateId start = -1;
    std::vector<std::pair<EventId, StateId>> steps;

    StateId end() const { return steps.empty() ? start : steps.back().second; }
};

/// Every step of the run is a transition of fsa.
bool run_valid(const Fsa& fsa, const Run& run);

/// Restriction of fsa to states reachable from the initial set. Events are
/// retained. Idempotent.
Fsa accessible_part(const Fsa& fsa);

/// Applies the labeling to an event-name sequence, dropping silent events.
/// Throws std::invalid_argument on an unknown event name.
std::vector<std::string> project(const Fsa& fsa, const Labeling& lab,
                                 std::span<const std::string> events);

/// Same automaton with the labeling replaced by what observer i sees.
Fsa local_automaton(const Fsa& fsa, const ObserverSet& obs, std::size_t i);

/// Same automaton with every faulty transition removed. States, events and
/// the faulty set itself are retained. Idempotent.
Fsa normal_subautomaton(const Fsa& fsa);

/// States reachable from `from` through silent transitions only (reflexive).
std::vector<StateId> epsilon_closure(const Fsa& fsa, const Labeling& lab,
                                     std::span<const StateId> from);

/// All states some run with output sigma can end in. May be empty.
std::vector<StateId> current_state_estimate(const Fsa& fsa, const Labeling& lab,
                                            std::span<const std::string> sigma);

/// Structural diagnostics. Verifiers never gate on these; they are reported
/// so a user knows when the classical liveness assumptions fail.
struct AssumptionReport {
    bool deadlock_free; ///< every reachable state has an outgoing transition
    bool prompt;        ///< no reachable cycle of silent transitions
};

AssumptionReport check_assumptions(const Fsa& fsa);

/// Per state: lies on a transition cycle (a self-loop counts).
std::vector<char> on_cycle_states(const Fsa& fsa);
/// Per state: some transition cycle is reachable (a state on a cycle qualifies).
std::vector<char> can_reach_cycle(const Fsa& fsa);

/// A deterministic finite acceptor over plain letters, the source format for
/// the hardness-instance generators.
struct Dfa {
    std::vector<std::string> states;  ///< sorted
    std::vector<std::string> letters; ///< sorted
    StateId initial = -1;
    std::vector<char> accepting;      ///< indexed by state
    std::vector<StateId> next;        ///< states x letters, row-major, -1 when undefined
    bool acyclic = false;             ///< computed on construction
    bool complete = false;            ///< computed on construction

    StateId state_id(std::string_view name) const;
    std::int32_t letter_id(std::string_view name) const;
    StateId step(StateId s, std::int32_t letter) const {
        return next[static_cast<std::size_t>(s) * letters.size() + static_cast<std::size_t>(letter)];
    }
    /// -1 when the word falls off the transition map.
    StateId walk(std::span<const std::string> word) const;
    bool accepts(std::span<const std::string> word) const;
};

/// Throws std::invalid_argument on duplicates, dangling references, or a
/// nondeterministic transition set.
Dfa make_dfa(std::vector<std::string> states, std::string initial,
             std::vector<std::string> letters,
             std::vector<std::array<std::string, 3>> transitions,
             std::vector<std::string> accepting);

}  // namespace ccdes
