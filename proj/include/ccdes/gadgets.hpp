// Instance generators with built-in ground truth. Each reduction turns a
// classical hard problem (DFA-intersection nonemptiness, digraph
// reachability) into an automaton whose property verdict is forced by the
// source, so the generated corpus cross-checks the verifiers end to end.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ccdes/fsa.hpp"
#include "ccdes/oracle.hpp"
#include "ccdes/verify.hpp"

namespace ccdes {

struct Digraph {
    std::vector<std::string> nodes;
    std::vector<std::pair<std::string, std::string>> edges;
};

/// Where a generated instance came from and what verdict its source forces.
struct Provenance {
    std::string reduction;
    std::vector<std::string> sources;  ///< one human-readable line per source
    std::vector<std::string> notes;
    std::string property;
    /// Ground truth, absent when the source was too large to brute-force.
    std::optional<bool> expected_holds;
    /// Common accepted word or connecting path backing a violated verdict.
    std::optional<std::vector<std::string>> witness;
};

struct ReductionInstance {
    Fsa fsa;
    ObserverSet observers;
    Property property;
    Provenance provenance;
};

/// Funnels acceptance of each automaton into one fresh end-of-word letter:
/// the first output accepts exactly {w~ : w accepted by input 0}, every other
/// output has all states accepting, and a word is accepted by all inputs iff
/// its sealed form is accepted by all outputs. Inputs must be acyclic.
std::vector<Dfa> normalize_acyclic_dfas(std::span<const Dfa> dfas);

/// Same funneling for complete inputs: the first output's sole accepting
/// state is a deadlock, the others stay deadlock-free with all states
/// accepting.
std::vector<Dfa> normalize_complete_dfas(std::span<const Dfa> dfas);

/// Builds an automaton that is NOT co-detectable exactly when the sources
/// accept a common word. Sources: two or more acyclic DFAs over one alphabet,
/// the first with a single accepting state, the rest with all states
/// accepting (the shape normalize_acyclic_dfas produces).
ReductionInstance reduce_to_codetectability(std::span<const Dfa> dfas,
                                            const OracleConfig& config = {});

/// Builds a deterministic deadlock-free automaton that is NOT co-predictable
/// exactly when the sources accept a common word. Sources: two or more DFAs
/// over one alphabet, the first single-accepting with that state its only
/// deadlock, the rest deadlock-free with all states accepting (the shape
/// normalize_complete_dfas produces).
ReductionInstance reduce_to_copredictability(std::span<const Dfa> dfas,
                                             const OracleConfig& config = {});

/// Builds an automaton that is NOT predictable exactly when the graph has a
/// directed path from `from` to `to` (staying put counts).
ReductionInstance reduce_path_to_predictability(const Digraph& graph, const std::string& from,
                                                const std::string& to,
                                                const OracleConfig& config = {});

/// Seeded generator; identical seeds give identical outputs on every
/// platform, so generated corpora are reproducible byte for byte.
struct Rng {
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    std::uint64_t next() { return eng(); }
    /// Uniform in [0, n) by rejection.
    std::int32_t below(std::int32_t n);
    /// True with probability num/den.
    bool chance(std::int32_t num, std::int32_t den) { return below(den) < num; }

    std::mt19937_64 eng;
};

Dfa random_acyclic_dfa(Rng& rng, std::int32_t n_states, std::int32_t n_letters);
Dfa random_complete_dfa(Rng& rng, std::int32_t n_states, std::int32_t n_letters);
Digraph random_digraph(Rng& rng, std::int32_t n_nodes, std::int32_t n_edges);

/// Strict parsers for the source file formats; unknown fields are rejected.
/// Throw std::invalid_argument with every violation listed.
Dfa dfa_from_json(const std::string& text);
Digraph digraph_from_json(const std::string& text);

}  // namespace ccdes
