// Label-synchronized product of one reference automaton with L tracked
// components, in two flavors:
//
//  * the plain product, whose transitions satisfy exactly one of two rules:
//    (a) a single component moves through an event that is silent under every
//        tracked labeling it exists under, or
//    (b) the reference moves through an event visible to at least one tracked
//        labeling, and every tracked component that sees the event moves
//        simultaneously through some own event with the same label under its
//        labeling (matching is on labels, never on event identity);
//  * the dead-marker variant over the reference's state set, where a tracked
//    entry that has diverged from the reference can be killed: at any state
//    with a diverged or dead entry, every transition simultaneously sends all
//    non-agreeing entries to the dead marker while the reference and the still
//    agreeing entries either follow a plain-product move of the agreeing
//    sub-product or all stay silent. Death is permanent. The all-silent kill
//    move is omitted when it would be a self-loop that kills nothing alive.
//
// Only the part reachable from the initial vectors is materialized. States,
// event vectors and transitions are deduplicated and sorted, so identical
// inputs build identical objects.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ccdes/fsa.hpp"

namespace ccdes {

/// One participant: an automaton observed under a chosen labeling.
struct ComponentView {
    const Fsa* fsa = nullptr;
    Labeling labeling;
    std::string name;
};

/// The automaton under its own labels.
ComponentView as_component(const Fsa& fsa, std::string name);
/// The automaton as observer i sees it.
ComponentView observed_component(const Fsa& fsa, const ObserverSet& obs, std::size_t i);

struct Composition {
    /// Event-vector entry: the component does not move.
    static constexpr std::int32_t kEps = -1;
    /// Event-vector entry: the tracked entry dies (dead-marker variant only).
    static constexpr std::int32_t kKill = -2;
    /// State-vector entry for a dead tracked entry.
    static constexpr std::int32_t kDead = -1;

    struct Edge {
        std::int32_t src;
        std::int32_t evec;
        std::int32_t dst;
    };

    bool diamond = false;
    int L = 0;

    std::vector<std::string> component_names;            ///< L+1, reference first
    std::vector<std::vector<std::string>> comp_states;   ///< per component
    std::vector<std::vector<std::string>> comp_events;   ///< per component
    std::vector<std::string> labels;                     ///< interned label names
    std::vector<std::vector<std::int32_t>> event_label;  ///< per component: own event to label, -1 silent
    /// Per tracked component j (0-based): what j's labeling emits for a
    /// reference event, -1 when silent or absent from j's event set.
    std::vector<std::vector<std::int32_t>> base_label;

    std::vector<std::vector<std::int32_t>> states;  ///< dense ids; entry 0 never dead
    std::vector<std::int32_t> initial;
    std::vector<std::vector<std::int32_t>> evecs;
    std::vector<Edge> edges;  ///< sorted by (src, evec content, dst content)
    std::vector<std::int32_t> out_begin;

    double state_bound = 0;  ///< product bound the state count must respect

    std::size_t n() const { return states.size(); }
    std::span<const Edge> out(std::int32_t s) const {
        auto b = static_cast<std::size_t>(out_begin[static_cast<std::size_t>(s)]);
        auto e = static_cast<std::size_t>(out_begin[static_cast<std::size_t>(s) + 1]);
        return {edges.data() + b, e - b};
    }
    /// entry in 0..L; entry 0 is always alive.
    bool alive(std::int32_t state, int entry) const {
        return states[static_cast<std::size_t>(state)][static_cast<std::size_t>(entry)] != kDead;
    }
    /// Label the tracked labeling j emits for the reference event of evec, -1 silent.
    std::int32_t tracked_output(int j, std::int32_t evec_id) const {
        auto e0 = evecs[static_cast<std::size_t>(evec_id)][0];
        return e0 == kEps ? -1 : base_label[static_cast<std::size_t>(j)][static_cast<std::size_t>(e0)];
    }

    std::string render_state(std::int32_t s) const;  ///< "x1|x1|⋄"
    std::string render_evec(std::int32_t e) const;   ///< "(c,c,ε)"
};

/// Plain product. Component state and event sets may differ; synchronization
/// is by label string. Throws std::invalid_argument when tracked is empty.
Composition concurrent_composition(const ComponentView& reference,
                                   const std::vector<ComponentView>& tracked);

/// Dead-marker product of the automaton with its observer views.
Composition diamond_composition(const Fsa& fsa, const ObserverSet& obs);

/// Plain product of the automaton with the observer views of its normal part
/// (faulty transitions removed). The normal part is materialized once and
/// returned so certificates can be replayed against it.
struct DiagnosisComposition {
    Fsa normal;
    Composition comp;
};
DiagnosisComposition composition_for_diagnosis(const Fsa& fsa, const ObserverSet& obs);

/// Plain product of the normal part with its own observer views.
DiagnosisComposition composition_for_prediction(const Fsa& fsa, const ObserverSet& obs);

std::string export_dot(const Fsa& fsa);
std::string export_dot(const Composition& comp);
std::string composition_to_json(const Composition& comp);

struct InvariantReport {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Re-derives the structural invariants from the original views: formation
/// rule partition, per-step projection consistency, permanent death, kill
/// completeness, initial-vector product, accessibility, the size bound, and
/// uniform liveness within each SCC of the dead-marker variant.
InvariantReport check_composition_invariants(const Composition& comp, const ComponentView& reference,
                                             const std::vector<ComponentView>& tracked);

}  // namespace ccdes
