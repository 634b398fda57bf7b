#include "ccdes/gadgets.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ccdes {

using nlohmann::json;

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

std::string dec(std::size_t i) { return std::to_string(i); }

/// `base` when unused, otherwise base#2, base#3, ... .
std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
    if (!taken.contains(base)) return base;
    for (std::size_t i = 2;; ++i) {
        std::string cand = base + "#" + dec(i);
        if (!taken.contains(cand)) return cand;
    }
}

void check_source_names(std::span<const Dfa> dfas, const std::string& op) {
    for (std::size_t i = 0; i < dfas.size(); ++i) {
        for (auto& s : dfas[i].states)
            require(!s.empty() && s != kDeadToken,
                    op + ": source " + dec(i) + " has a reserved state name");
        for (auto& l : dfas[i].letters)
            require(!l.empty() && l != kDeadToken,
                    op + ": source " + dec(i) + " has a reserved letter name");
    }
}

void check_common_alphabet(std::span<const Dfa> dfas, const std::string& op) {
    for (std::size_t i = 1; i < dfas.size(); ++i)
        require(dfas[i].letters == dfas[0].letters,
                op + ": source " + dec(i) + " is over a different alphabet than source 0");
}

std::size_t accepting_count(const Dfa& d) {
    return static_cast<std::size_t>(std::count(d.accepting.begin(), d.accepting.end(), 1));
}

bool has_outgoing(const Dfa& d, std::size_t s) {
    for (std::size_t l = 0; l < d.letters.size(); ++l)
        if (d.next[s * d.letters.size() + l] >= 0) return true;
    return false;
}

std::string dfa_summary(const Dfa& d, std::size_t i) {
    std::ostringstream os;
    os << "source " << i << ": " << d.states.size() << " states, " << d.letters.size()
       << " letters, " << accepting_count(d) << " accepting";
    return os.str();
}

std::vector<std::array<std::string, 3>> dfa_transitions(const Dfa& d) {
    std::vector<std::array<std::string, 3>> out;
    for (std::size_t s = 0; s < d.states.size(); ++s)
        for (std::size_t l = 0; l < d.letters.size(); ++l) {
            StateId t = d.next[s * d.letters.size() + l];
            if (t >= 0)
                out.push_back({d.states[s], d.letters[l], d.states[static_cast<std::size_t>(t)]});
        }
    return out;
}

/// Shared skeleton of both intersection reductions: one renamed branch per
/// source reachable from a fresh entry state, where branch i replays source
/// i's transitions under events that all output the original letter. Observer
/// j sees branch 0, branch j, the entry events, and the sync event, so any
/// two branches it watches must disagree on output before they can separate.
struct BranchSkeleton {
    std::vector<std::string> states;
    std::vector<std::pair<std::string, std::optional<std::string>>> events;
    std::vector<std::array<std::string, 3>> trans;
    std::string entry_state;
    std::string sync_event;  ///< fresh always-enabled sink event, label sync_label
    std::string sync_label;
    std::vector<std::string> branch_state;  ///< per source: renamed initial state
    std::vector<std::string> entry_events;  ///< per source: entry move from entry_state
    std::set<std::string> state_names;
    std::set<std::string> event_names;

    std::string branch(const std::string& q, std::size_t i) const { return q + "@" + dec(i); }

    std::string add_state(const std::string& base) {
        std::string name = fresh_name(base, state_names);
        state_names.insert(name);
        states.push_back(name);
        return name;
    }

    std::string add_event(const std::string& base, std::optional<std::string> label) {
        std::string name = fresh_name(base, event_names);
        event_names.insert(name);
        events.emplace_back(name, std::move(label));
        return name;
    }
};

BranchSkeleton build_branches(std::span<const Dfa> dfas) {
    BranchSkeleton sk;
    std::set<std::string> sigma(dfas[0].letters.begin(), dfas[0].letters.end());
    sk.sync_label = fresh_name("@a", sigma);

    for (std::size_t i = 0; i < dfas.size(); ++i) {
        for (auto& q : dfas[i].states) {
            std::string name = sk.branch(q, i);
            sk.state_names.insert(name);
            sk.states.push_back(name);
        }
        for (auto& l : dfas[i].letters) sk.add_event(sk.branch(l, i), l);
        for (auto& t : dfa_transitions(dfas[i]))
            sk.trans.push_back({sk.branch(t[0], i), sk.branch(t[1], i), sk.branch(t[2], i)});
        sk.branch_state.push_back(
            sk.branch(dfas[i].states[static_cast<std::size_t>(dfas[i].initial)], i));
    }

    sk.entry_state = sk.add_state("@entry");
    sk.sync_event = sk.add_event(sk.sync_label, sk.sync_label);
    for (std::size_t i = 0; i < dfas.size(); ++i) {
        std::string ev = sk.add_event(sk.sync_label + dec(i), sk.sync_label);
        sk.entry_events.push_back(ev);
        sk.trans.push_back({sk.entry_state, ev, sk.branch_state[i]});
    }
    return sk;
}

/// Observer j of L: branch 0 events, branch j events, the entry events, and
/// the sync event.
std::vector<std::pair<std::string, std::vector<std::string>>> branch_observers(
    const BranchSkeleton& sk, std::span<const Dfa> dfas) {
    std::size_t n = dfas.size();
    std::vector<std::pair<std::string, std::vector<std::string>>> obs;
    for (std::size_t j = 1; j < n; ++j) {
        std::vector<std::string> sees;
        for (auto& l : dfas[0].letters) sees.push_back(sk.branch(l, 0));
        for (auto& l : dfas[j].letters) sees.push_back(sk.branch(l, j));
        sees.push_back(sk.sync_event);
        for (auto& ev : sk.entry_events) sees.push_back(ev);
        obs.emplace_back("o" + dec(j), std::move(sees));
    }
    return obs;
}

void attach_ground_truth(Provenance& prov, std::span<const Dfa> dfas, const OracleConfig& config) {
    try {
        auto word = brute_force_dfa_intersection(dfas, config);
        prov.expected_holds = !word.has_value();
        if (word) prov.witness = std::move(*word);
    } catch (const BudgetExceeded&) {
        prov.notes.push_back("expected verdict omitted: sources exceed the brute-force budget");
    }
}

}  // namespace

std::vector<Dfa> normalize_acyclic_dfas(std::span<const Dfa> dfas) {
    require(!dfas.empty(), "normalize_acyclic_dfas: no input automata");
    check_source_names(dfas, "normalize_acyclic_dfas");
    for (std::size_t i = 0; i < dfas.size(); ++i)
        require(dfas[i].acyclic, "normalize_acyclic_dfas: source " + dec(i) + " has a cycle");

    std::set<std::string> letters_taken;
    for (auto& d : dfas) letters_taken.insert(d.letters.begin(), d.letters.end());
    std::string lam = fresh_name("@end", letters_taken);

    std::vector<Dfa> out;
    for (std::size_t i = 0; i < dfas.size(); ++i) {
        const Dfa& d = dfas[i];
        std::set<std::string> taken(d.states.begin(), d.states.end());
        std::string sink = fresh_name("@final", taken);
        std::vector<std::string> states = d.states;
        states.push_back(sink);
        std::vector<std::string> letters = d.letters;
        letters.push_back(lam);
        auto trans = dfa_transitions(d);
        for (std::size_t s = 0; s < d.states.size(); ++s)
            if (d.accepting[s]) trans.push_back({d.states[s], lam, sink});
        std::vector<std::string> accepting;
        if (i == 0)
            accepting = {sink};
        else
            accepting = states;
        out.push_back(make_dfa(std::move(states), d.states[static_cast<std::size_t>(d.initial)],
                               std::move(letters), std::move(trans), std::move(accepting)));
    }
    return out;
}

std::vector<Dfa> normalize_complete_dfas(std::span<const Dfa> dfas) {
    require(!dfas.empty(), "normalize_complete_dfas: no input automata");
    check_source_names(dfas, "normalize_complete_dfas");
    for (std::size_t i = 0; i < dfas.size(); ++i)
        require(dfas[i].complete,
                "normalize_complete_dfas: source " + dec(i) + " has an undefined transition");

    std::set<std::string> letters_taken;
    for (auto& d : dfas) letters_taken.insert(d.letters.begin(), d.letters.end());
    std::string lam = fresh_name("@end", letters_taken);

    std::vector<Dfa> out;
    for (std::size_t i = 0; i < dfas.size(); ++i) {
        const Dfa& d = dfas[i];
        std::set<std::string> taken(d.states.begin(), d.states.end());
        std::string sink = fresh_name("@final", taken);
        std::vector<std::string> states = d.states;
        states.push_back(sink);
        std::vector<std::string> letters = d.letters;
        letters.push_back(lam);
        auto trans = dfa_transitions(d);
        for (std::size_t s = 0; s < d.states.size(); ++s)
            if (d.accepting[s]) trans.push_back({d.states[s], lam, sink});
        std::vector<std::string> accepting;
        if (i == 0) {
            accepting = {sink};
        } else {
            trans.push_back({sink, lam, sink});
            accepting = states;
        }
        out.push_back(make_dfa(std::move(states), d.states[static_cast<std::size_t>(d.initial)],
                               std::move(letters), std::move(trans), std::move(accepting)));
    }
    return out;
}

ReductionInstance reduce_to_codetectability(std::span<const Dfa> dfas, const OracleConfig& config) {
    const std::string op = "reduce_to_codetectability";
    require(dfas.size() >= 2, op + ": need at least two source automata");
    check_source_names(dfas, op);
    check_common_alphabet(dfas, op);
    for (std::size_t i = 0; i < dfas.size(); ++i)
        require(dfas[i].acyclic, op + ": source " + dec(i) + " has a cycle");
    require(accepting_count(dfas[0]) == 1,
            op + ": source 0 must have exactly one accepting state, found " +
                dec(accepting_count(dfas[0])));
    for (std::size_t i = 1; i < dfas.size(); ++i)
        require(accepting_count(dfas[i]) == dfas[i].states.size(),
                op + ": source " + dec(i) + " must have every state accepting");

    BranchSkeleton sk = build_branches(dfas);
    std::string accept_state = sk.add_state("@accept");
    std::string trap_state = sk.add_state("@trap");

    const Dfa& d0 = dfas[0];
    for (std::size_t s = 0; s < d0.states.size(); ++s)
        sk.trans.push_back({sk.branch(d0.states[s], 0), sk.sync_event,
                            d0.accepting[s] ? accept_state : trap_state});
    for (std::size_t i = 1; i < dfas.size(); ++i)
        for (auto& q : dfas[i].states)
            sk.trans.push_back({sk.branch(q, i), sk.sync_event, trap_state});
    sk.trans.push_back({accept_state, sk.sync_event, accept_state});
    sk.trans.push_back({trap_state, sk.sync_event, trap_state});

    ReductionInstance ri;
    ri.fsa = make_fsa(sk.states, {sk.entry_state}, sk.events, sk.trans);
    ri.observers = make_observers(ri.fsa, branch_observers(sk, dfas));
    ri.property = Property::co_detectability;
    ri.provenance.reduction = "dfa-intersection-to-co-detectability";
    ri.provenance.property = property_name(ri.property);
    for (std::size_t i = 0; i < dfas.size(); ++i)
        ri.provenance.sources.push_back(dfa_summary(dfas[i], i));
    attach_ground_truth(ri.provenance, dfas, config);
    return ri;
}

ReductionInstance reduce_to_copredictability(std::span<const Dfa> dfas,
                                             const OracleConfig& config) {
    const std::string op = "reduce_to_copredictability";
    require(dfas.size() >= 2, op + ": need at least two source automata");
    check_source_names(dfas, op);
    check_common_alphabet(dfas, op);
    require(accepting_count(dfas[0]) == 1,
            op + ": source 0 must have exactly one accepting state, found " +
                dec(accepting_count(dfas[0])));
    for (std::size_t s = 0; s < dfas[0].states.size(); ++s) {
        bool acc = dfas[0].accepting[s];
        require(acc != has_outgoing(dfas[0], s),
                op + ": source 0 state '" + dfas[0].states[s] +
                    (acc ? "' must be a deadlock (accepting)" : "' must have an outgoing transition"));
    }
    for (std::size_t i = 1; i < dfas.size(); ++i) {
        require(accepting_count(dfas[i]) == dfas[i].states.size(),
                op + ": source " + dec(i) + " must have every state accepting");
        for (std::size_t s = 0; s < dfas[i].states.size(); ++s)
            require(has_outgoing(dfas[i], s), op + ": source " + dec(i) + " state '" +
                                                  dfas[i].states[s] +
                                                  "' must have an outgoing transition");
    }

    BranchSkeleton sk = build_branches(dfas);
    std::string accept_state = sk.add_state("@accept");
    std::string fault_event = sk.add_event("@F", std::nullopt);

    const Dfa& d0 = dfas[0];
    for (std::size_t s = 0; s < d0.states.size(); ++s)
        if (d0.accepting[s])
            sk.trans.push_back({sk.branch(d0.states[s], 0), fault_event, accept_state});
    sk.trans.push_back({accept_state, sk.sync_event, accept_state});

    ReductionInstance ri;
    ri.fsa = make_fsa(sk.states, {sk.entry_state}, sk.events, sk.trans, {fault_event});
    ri.observers = make_observers(ri.fsa, branch_observers(sk, dfas));
    ri.property = Property::co_predictability;
    ri.provenance.reduction = "dfa-intersection-to-co-predictability";
    ri.provenance.property = property_name(ri.property);
    for (std::size_t i = 0; i < dfas.size(); ++i)
        ri.provenance.sources.push_back(dfa_summary(dfas[i], i));
    attach_ground_truth(ri.provenance, dfas, config);
    return ri;
}

ReductionInstance reduce_path_to_predictability(const Digraph& graph, const std::string& from,
                                                const std::string& to, const OracleConfig&) {
    const std::string op = "reduce_path_to_predictability";
    require(!graph.nodes.empty(), op + ": graph has no nodes");
    std::set<std::string> nodes;
    for (auto& v : graph.nodes) {
        require(!v.empty() && v != kDeadToken, op + ": reserved node name");
        require(nodes.insert(v).second, op + ": duplicate node '" + v + "'");
    }
    for (auto& [u, v] : graph.edges) {
        require(nodes.contains(u), op + ": edge endpoint '" + u + "' is not a node");
        require(nodes.contains(v), op + ": edge endpoint '" + v + "' is not a node");
    }
    require(nodes.contains(from), op + ": start node '" + from + "' is not a node");
    require(nodes.contains(to), op + ": target node '" + to + "' is not a node");

    std::string vf = fresh_name("@vf", nodes);
    std::vector<std::string> states = graph.nodes;
    states.push_back(vf);
    std::set<std::array<std::string, 3>> tset;
    for (auto& [u, v] : graph.edges) {
        tset.insert({u, "a", v});
        tset.insert({u, "a", vf});
    }
    tset.insert({to, "f", vf});
    tset.insert({to, "u", vf});
    tset.insert({vf, "a", vf});
    std::vector<std::array<std::string, 3>> trans(tset.begin(), tset.end());

    ReductionInstance ri;
    ri.fsa = make_fsa(std::move(states), {from},
                      {{"a", "a"}, {"f", std::nullopt}, {"u", std::nullopt}}, std::move(trans),
                      {"f"});
    ri.property = Property::predictability;
    ri.provenance.reduction = "graph-reachability-to-predictability";
    ri.provenance.property = property_name(ri.property);
    ri.provenance.sources.push_back("graph: " + dec(graph.nodes.size()) + " nodes, " +
                                    dec(graph.edges.size()) + " edges, from '" + from + "' to '" +
                                    to + "'");

    std::map<std::string, std::vector<std::string>> adj;
    for (auto& [u, v] : graph.edges) adj[u].push_back(v);
    std::map<std::string, std::string> parent;
    std::deque<std::string> queue{from};
    parent[from] = from;
    while (!queue.empty()) {
        std::string u = queue.front();
        queue.pop_front();
        for (auto& v : adj[u])
            if (!parent.contains(v)) {
                parent[v] = u;
                queue.push_back(v);
            }
    }
    if (parent.contains(to)) {
        ri.provenance.expected_holds = false;
        std::vector<std::string> path{to};
        for (std::string v = to; v != from; v = parent[v]) path.push_back(parent[v]);
        std::reverse(path.begin(), path.end());
        ri.provenance.witness = std::move(path);
    } else {
        ri.provenance.expected_holds = true;
    }
    return ri;
}

std::int32_t Rng::below(std::int32_t n) {
    if (n <= 0) throw std::invalid_argument("Rng::below: bound must be positive");
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / un * un;
    for (;;) {
        std::uint64_t x = eng();
        if (x < limit) return static_cast<std::int32_t>(x % un);
    }
}

namespace {

std::vector<std::string> numbered(const char* prefix, std::int32_t n) {
    std::vector<std::string> out;
    for (std::int32_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

std::vector<std::string> letter_names(std::int32_t n) {
    std::vector<std::string> out;
    for (std::int32_t i = 0; i < n; ++i) {
        if (i < 26)
            out.push_back(std::string(1, static_cast<char>('a' + i)));
        else
            out.push_back("l" + std::to_string(i));
    }
    return out;
}

}  // namespace

Dfa random_acyclic_dfa(Rng& rng, std::int32_t n_states, std::int32_t n_letters) {
    require(n_states >= 1 && n_letters >= 1, "random_acyclic_dfa: need at least one state and letter");
    auto states = numbered("q", n_states);
    auto letters = letter_names(n_letters);
    std::vector<std::array<std::string, 3>> trans;
    for (std::int32_t s = 0; s + 1 < n_states; ++s)
        for (std::int32_t l = 0; l < n_letters; ++l)
            if (rng.chance(1, 2)) {
                std::int32_t t = s + 1 + rng.below(n_states - s - 1);
                trans.push_back({states[static_cast<std::size_t>(s)],
                                 letters[static_cast<std::size_t>(l)],
                                 states[static_cast<std::size_t>(t)]});
            }
    std::vector<std::string> accepting;
    for (std::int32_t s = 0; s < n_states; ++s)
        if (rng.chance(1, 2)) accepting.push_back(states[static_cast<std::size_t>(s)]);
    return make_dfa(std::move(states), "q0", std::move(letters), std::move(trans),
                    std::move(accepting));
}

Dfa random_complete_dfa(Rng& rng, std::int32_t n_states, std::int32_t n_letters) {
    require(n_states >= 1 && n_letters >= 1,
            "random_complete_dfa: need at least one state and letter");
    auto states = numbered("q", n_states);
    auto letters = letter_names(n_letters);
    std::vector<std::array<std::string, 3>> trans;
    for (std::int32_t s = 0; s < n_states; ++s)
        for (std::int32_t l = 0; l < n_letters; ++l)
            trans.push_back({states[static_cast<std::size_t>(s)],
                             letters[static_cast<std::size_t>(l)],
                             states[static_cast<std::size_t>(rng.below(n_states))]});
    std::vector<std::string> accepting;
    for (std::int32_t s = 0; s < n_states; ++s)
        if (rng.chance(1, 2)) accepting.push_back(states[static_cast<std::size_t>(s)]);
    return make_dfa(std::move(states), "q0", std::move(letters), std::move(trans),
                    std::move(accepting));
}

Digraph random_digraph(Rng& rng, std::int32_t n_nodes, std::int32_t n_edges) {
    require(n_nodes >= 1, "random_digraph: need at least one node");
    Digraph g;
    g.nodes = numbered("v", n_nodes);
    std::set<std::pair<std::int32_t, std::int32_t>> seen;
    for (std::int32_t e = 0; e < n_edges; ++e)
        seen.emplace(rng.below(n_nodes), rng.below(n_nodes));
    for (auto& [u, v] : seen)
        g.edges.emplace_back(g.nodes[static_cast<std::size_t>(u)],
                             g.nodes[static_cast<std::size_t>(v)]);
    return g;
}

namespace {

const std::vector<std::string> kDfaFields = {"states", "initial", "letters", "transitions",
                                             "accepting"};

void throw_errors(const std::vector<std::string>& errors) {
    if (errors.empty()) return;
    std::string joined;
    for (auto& e : errors) {
        if (!joined.empty()) joined += "; ";
        joined += e;
    }
    throw std::invalid_argument(joined);
}

bool string_array(const json& j, const char* field, std::vector<std::string>& out,
                  std::vector<std::string>& errors) {
    if (!j.is_array()) {
        errors.push_back(std::string("field '") + field + "' must be an array of strings");
        return false;
    }
    for (auto& el : j) {
        if (!el.is_string()) {
            errors.push_back(std::string("field '") + field + "' must contain only strings");
            return false;
        }
        out.push_back(el.get<std::string>());
    }
    return true;
}

bool string_tuples(const json& j, const char* field, std::size_t width,
                   std::vector<std::vector<std::string>>& out, std::vector<std::string>& errors) {
    if (!j.is_array()) {
        errors.push_back(std::string("field '") + field + "' must be an array");
        return false;
    }
    for (auto& el : j) {
        if (!el.is_array() || el.size() != width) {
            errors.push_back(std::string("field '") + field + "' must contain arrays of " +
                             std::to_string(width) + " strings");
            return false;
        }
        std::vector<std::string> tup;
        for (auto& part : el) {
            if (!part.is_string()) {
                errors.push_back(std::string("field '") + field + "' must contain arrays of " +
                                 std::to_string(width) + " strings");
                return false;
            }
            tup.push_back(part.get<std::string>());
        }
        out.push_back(std::move(tup));
    }
    return true;
}

}  // namespace

Dfa dfa_from_json(const std::string& text) {
    std::vector<std::string> errors;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("JSON parse error: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("automaton must be a JSON object");
    for (auto& [key, _] : j.items())
        if (std::find(kDfaFields.begin(), kDfaFields.end(), key) == kDfaFields.end())
            errors.push_back("unknown field '" + key + "'");
    for (auto& req : kDfaFields)
        if (!j.contains(req)) errors.push_back("missing field '" + req + "'");
    throw_errors(errors);

    std::vector<std::string> states, letters, accepting;
    string_array(j["states"], "states", states, errors);
    string_array(j["letters"], "letters", letters, errors);
    string_array(j["accepting"], "accepting", accepting, errors);
    std::string initial;
    if (j["initial"].is_string()) {
        initial = j["initial"].get<std::string>();
    } else {
        std::vector<std::string> init;
        if (string_array(j["initial"], "initial", init, errors) && init.size() != 1)
            errors.push_back("field 'initial' must name exactly one state");
        if (init.size() == 1) initial = init[0];
    }
    std::vector<std::vector<std::string>> tuples;
    string_tuples(j["transitions"], "transitions", 3, tuples, errors);
    throw_errors(errors);

    std::vector<std::array<std::string, 3>> trans;
    for (auto& t : tuples) trans.push_back({t[0], t[1], t[2]});
    return make_dfa(std::move(states), std::move(initial), std::move(letters), std::move(trans),
                    std::move(accepting));
}

Digraph digraph_from_json(const std::string& text) {
    std::vector<std::string> errors;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("JSON parse error: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("graph must be a JSON object");
    for (auto& [key, _] : j.items())
        if (key != "nodes" && key != "edges") errors.push_back("unknown field '" + key + "'");
    for (auto& req : {"nodes", "edges"})
        if (!j.contains(req)) errors.push_back(std::string("missing field '") + req + "'");
    throw_errors(errors);

    Digraph g;
    string_array(j["nodes"], "nodes", g.nodes, errors);
    std::vector<std::vector<std::string>> tuples;
    string_tuples(j["edges"], "edges", 2, tuples, errors);
    throw_errors(errors);
    for (auto& t : tuples) g.edges.emplace_back(t[0], t[1]);

    std::set<std::string> nodes;
    for (auto& v : g.nodes) {
        if (v.empty() || v == kDeadToken) errors.push_back("reserved node name");
        if (!nodes.insert(v).second) errors.push_back("duplicate node '" + v + "'");
    }
    for (auto& [u, v] : g.edges) {
        if (!nodes.contains(u)) errors.push_back("edge endpoint '" + u + "' is not a node");
        if (!nodes.contains(v)) errors.push_back("edge endpoint '" + v + "' is not a node");
    }
    throw_errors(errors);
    return g;
}

}  // namespace ccdes
