// Decision procedures for the six observation properties, each reduced to a
// pattern search on a label-synchronized product:
//
//  * strong detectability and co-detectability look, in the dead-marker
//    product, for a run that cycles with output under each observer in turn
//    and then kills every tracked entry while the reference can still run
//    forever;
//  * diagnosability and co-diagnosability look, in the product with the
//    normal part's observer views, for a faulty reference step followed by a
//    cycle in which the reference keeps moving;
//  * predictability and co-predictability look, in the product of the normal
//    part with its own observer views, for a reachable vector whose reference
//    entry can fault next while every tracked entry can still run forever
//    inside the normal part.
//
// Every violated verdict carries a machine-checkable certificate; pumping a
// certificate yields concrete confusing runs of the original automaton.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ccdes/composition.hpp"
#include "ccdes/fsa.hpp"

namespace ccdes {

enum class Property {
    strong_detectability,
    co_detectability,
    diagnosability,
    co_diagnosability,
    predictability,
    co_predictability,
};

inline constexpr std::array<Property, 6> kAllProperties = {
    Property::strong_detectability, Property::co_detectability,  Property::diagnosability,
    Property::co_diagnosability,    Property::predictability,    Property::co_predictability,
};

std::string property_name(Property p);
std::optional<Property> property_from_name(std::string_view name);
/// Centralized properties are verified against the automaton's own output.
bool centralized(Property p);

/// A path through a composition, resolved to names. State entries use the
/// reserved dead token; event entries use "" for a silent component and the
/// dead token for a kill.
struct CompPath {
    std::vector<std::vector<std::string>> states;  ///< steps + 1 vectors
    std::vector<std::vector<std::string>> events;  ///< one vector per step
};

/// A path in a single automaton.
struct SPath {
    std::vector<std::string> states;
    std::vector<std::string> events;
};

struct Certificate {
    Property property;
    bool centralized = false;                 ///< built against the full observer
    std::vector<std::string> observer_names;  ///< tracked entry i+1 belongs to observer i

    /// The route through the composition. Detection: Prefix (Cycle Link)+
    /// with one Cycle per observer, the final Link ending all-dead.
    /// Diagnosis: Prefix Fault Link Cycle. Prediction: Prefix only.
    struct Segment {
        enum class Kind { Prefix, Cycle, Link, Fault };
        Kind kind;
        int observer = -1;  ///< Cycle only: 0-based tracked index charged here
        CompPath path;
    };
    std::vector<Segment> route;

    /// Prediction: a faulty transition of the original automaton out of the
    /// route's final reference entry.
    std::optional<std::array<std::string, 3>> fault_transition;

    /// Detection: how the reference keeps running forever after the terminal.
    std::optional<SPath> tail_path;
    std::optional<SPath> tail_cycle;

    /// Prediction: per tracked entry, how it keeps running inside the normal part.
    struct ObserverTail {
        int observer;
        SPath path;
        SPath cycle;
    };
    std::vector<ObserverTail> observer_tails;
};

struct Verdict {
    Property property;
    bool holds = true;
    std::optional<Certificate> certificate;  ///< present iff holds is false
    std::optional<std::string> note;         ///< degenerate-instance transparency
};

Verdict verify_strong_detectability(const Fsa& fsa);
Verdict verify_co_detectability(const Fsa& fsa, const ObserverSet& obs);
Verdict verify_diagnosability(const Fsa& fsa);
Verdict verify_co_diagnosability(const Fsa& fsa, const ObserverSet& obs);
Verdict verify_predictability(const Fsa& fsa);
Verdict verify_co_predictability(const Fsa& fsa, const ObserverSet& obs);

/// Dispatch by property. obs may be null for centralized properties; a
/// decentralized property with a null or empty observer set throws
/// std::invalid_argument.
Verdict verify_property(Property p, const Fsa& fsa, const ObserverSet* obs);

/// Concrete violating behavior obtained by repeating each certificate cycle
/// k times. The existence verdict never depends on k; k only scales the
/// produced evidence.
struct PumpEvidence {
    int k = 0;
    /// Detection and diagnosis: a generated event sequence of the automaton
    /// (for diagnosis it ends beyond a fault). Prediction: a fault-free
    /// sequence after which a faulty event is enabled.
    std::vector<std::string> word;
    std::optional<std::string> fault_event;  ///< prediction: the enabled faulty event

    struct PerObserver {
        std::string observer;
        /// Detection: an output prefix of length >= k whose estimate stays ambiguous.
        std::vector<std::string> sigma;
        std::vector<std::string> estimate;
        /// Diagnosis and prediction: a fault-free run with the same output as word.
        std::vector<std::string> run;
        /// Prediction: fault-free continuation of run with length >= k.
        std::vector<std::string> continuation;
    };
    std::vector<PerObserver> observers;
};

/// Throws std::invalid_argument when the certificate does not fit the
/// automaton (wrong property shape, dangling names) or k < 0.
PumpEvidence pump_certificate(const Fsa& fsa, const ObserverSet* obs, const Certificate& cert, int k);

}  // namespace ccdes
