// Independent slow-path implementations used to cross-check the main decision
// procedures, plus a validator that re-derives every claim a certificate
// makes directly from the input automaton. The oracle side builds its own
// composed graph by filtering candidate event vectors against the
// synchronization rules stated as text, and explores it with plain
// reachability queries; it shares no search code with the verifiers.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccdes/fsa.hpp"
#include "ccdes/verify.hpp"

namespace ccdes {

struct OracleConfig {
    /// Unit-cost budget over candidate filtering, reachability steps, and
    /// tuple expansions. Exhaustion always throws, never degrades silently.
    std::int64_t budget = 20'000'000;
};

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Decides the property by exhaustive search. Violated verdicts carry a
/// certificate in the same format as the fast path. obs is ignored for
/// centralized properties.
Verdict naive_verify(Property p, const Fsa& fsa, const ObserverSet* obs,
                     const OracleConfig& config = {});

/// All states an observer considers possible after the output sigma, computed
/// by searching runs whose projection equals sigma. Sorted.
std::vector<StateId> exhaustive_estimate(const Fsa& fsa, const Labeling& lab,
                                         std::span<const std::string> sigma,
                                         const OracleConfig& config = {});

/// Shortest word accepted by every automaton, breaking ties toward the
/// letter order of the sorted alphabet union; nullopt when the intersection
/// is empty.
std::optional<std::vector<std::string>> brute_force_dfa_intersection(
    std::span<const Dfa> dfas, const OracleConfig& config = {});

struct CheckResult {
    bool ok = true;
    std::vector<std::string> diagnostics;
};

/// Re-validates a certificate against the automaton alone: the route must be
/// a connected run of the synchronized product built from scratch, its shape
/// must match the property, and the attached evidence (when given) must
/// replay inside the automaton with the claimed ambiguity. Diagnostics name
/// the first offending step or claim.
CheckResult check_certificate(const Fsa& fsa, const ObserverSet* obs, const Certificate& cert,
                              const PumpEvidence* evidence = nullptr);

}  // namespace ccdes
