#include "ccdes/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace ccdes {

namespace {

struct Budget {
    std::int64_t left;
    void spend(std::int64_t n = 1) {
        left -= n;
        if (left < 0) throw BudgetExceeded("oracle budget exhausted");
    }
};

/// One synchronized component: an automaton filtered through a labeling.
struct View {
    const Fsa* fsa;
    Labeling lab;
};

/// Label the tracked view assigns to a reference event, by name; nullopt when
/// the view does not know the event or keeps it silent.
std::optional<std::string> seen_label(const View& v, const std::string& event_name) {
    auto e = v.fsa->event_id(event_name);
    if (e < 0) return std::nullopt;
    return v.lab.of(e);
}

std::vector<std::string> successor_names(const View& v, const std::string& state,
                                         const std::string& event) {
    std::vector<std::string> out;
    auto s = v.fsa->state_id(state);
    auto e = v.fsa->event_id(event);
    if (s < 0 || e < 0) return out;
    for (auto& t : v.fsa->out(s))
        if (t.event == e) out.push_back(v.fsa->state_name(t.dst));
    return out;
}

struct StepResult {
    std::vector<std::vector<std::string>> dests;
    std::string error;  ///< set when dests is empty
};

/// Destinations of one candidate event vector from one state vector, checked
/// against the synchronization rules as stated. Entry 0 is the reference.
StepResult step_dests(const std::vector<View>& comps, bool diamond,
                      const std::vector<std::string>& st, const std::vector<std::string>& evec,
                      Budget& b) {
    b.spend();
    const auto L = comps.size() - 1;
    StepResult res;
    auto fail = [&](std::string msg) {
        res.error = std::move(msg);
        return res;
    };
    if (st.size() != comps.size() || evec.size() != comps.size())
        return fail("vector width does not match the component count");
    if (st[0] == kDeadToken || evec[0] == kDeadToken)
        return fail("the reference entry can never die");

    bool any_kill = false, any_dead = false, any_off = false;
    for (std::size_t j = 1; j <= L; ++j) {
        if (evec[j] == kDeadToken) any_kill = true;
        if (st[j] == kDeadToken)
            any_dead = true;
        else if (st[j] != st[0])
            any_off = true;
    }
    if (!diamond && (any_kill || any_dead))
        return fail("dead markers are only meaningful in the dead-marker product");

    // moving entries and their successor choices
    std::vector<std::size_t> movers;
    std::vector<std::vector<std::string>> choices;
    auto active = [&](std::size_t j) {  // survives this step
        return evec[j] != kDeadToken && st[j] != kDeadToken;
    };

    if (any_kill || any_dead) {
        // exactly the dead and disagreeing entries must die
        for (std::size_t j = 1; j <= L; ++j) {
            bool must_die = st[j] == kDeadToken || st[j] != st[0];
            if (must_die != (evec[j] == kDeadToken))
                return fail(must_die ? "a dead or disagreeing entry survived a kill step"
                                     : "an agreeing entry was killed");
        }
        if (!any_dead && !any_off) return fail("kill step at a state with nothing to kill");
    }

    // classify the surviving sub-vector
    std::size_t real_tracked = 0;
    for (std::size_t j = 1; j <= L; ++j)
        if (active(j) && !evec[j].empty()) real_tracked++;

    if (evec[0].empty()) {
        if (real_tracked == 0) {
            // all survivors silent: only valid as a kill of a live entry
            bool kills_alive = false;
            for (std::size_t j = 1; j <= L; ++j)
                if (evec[j] == kDeadToken && st[j] != kDeadToken) kills_alive = true;
            if (!any_kill || !kills_alive) return fail("a step must move or kill something");
        } else if (real_tracked == 1) {
            for (std::size_t j = 1; j <= L; ++j) {
                if (!active(j) || evec[j].empty()) continue;
                auto e = comps[j].fsa->event_id(evec[j]);
                if (e < 0) return fail("component " + std::to_string(j) + " has no event '" + evec[j] + "'");
                if (!comps[j].lab.silent(e))
                    return fail("a lone tracked move must be silent under its own view");
                auto succ = successor_names(comps[j], st[j], evec[j]);
                if (succ.empty())
                    return fail("component " + std::to_string(j) + " has no transition (" + st[j] +
                                ", " + evec[j] + ", _)");
                movers.push_back(j);
                choices.push_back(std::move(succ));
            }
        } else {
            return fail("at most one component may move unobserved");
        }
    } else {
        auto e0 = comps[0].fsa->event_id(evec[0]);
        if (e0 < 0) return fail("the reference has no event '" + evec[0] + "'");
        auto succ0 = successor_names(comps[0], st[0], evec[0]);
        if (succ0.empty())
            return fail("the reference has no transition (" + st[0] + ", " + evec[0] + ", _)");
        movers.push_back(0);
        choices.push_back(std::move(succ0));

        // surviving trackers that see the reference event must answer it;
        // blind or dead ones must not move
        for (std::size_t j = 1; j <= L; ++j) {
            auto seen = seen_label(comps[j], evec[0]);
            if (!active(j)) continue;
            if (!seen) {
                if (!evec[j].empty())
                    return fail("component " + std::to_string(j) +
                                " moved on a reference event it cannot see");
                continue;
            }
            if (evec[j].empty())
                return fail("component " + std::to_string(j) +
                            " must answer a reference event it sees");
            auto ej = comps[j].fsa->event_id(evec[j]);
            if (ej < 0) return fail("component " + std::to_string(j) + " has no event '" + evec[j] + "'");
            auto own = comps[j].lab.of(ej);
            if (!own || *own != *seen)
                return fail("component " + std::to_string(j) + " answered with a different label");
            auto succ = successor_names(comps[j], st[j], evec[j]);
            if (succ.empty())
                return fail("component " + std::to_string(j) + " has no transition (" + st[j] +
                            ", " + evec[j] + ", _)");
            movers.push_back(j);
            choices.push_back(std::move(succ));
        }
    }

    // cartesian product of successor choices
    std::vector<std::size_t> pick(movers.size(), 0);
    while (true) {
        b.spend();
        auto dst = st;
        for (std::size_t j = 1; j <= L; ++j)
            if (evec[j] == kDeadToken || st[j] == kDeadToken) dst[j] = kDeadToken;
        for (std::size_t i = 0; i < movers.size(); ++i) dst[movers[i]] = choices[i][pick[i]];
        res.dests.push_back(std::move(dst));
        std::size_t i = movers.size();
        while (i > 0) {
            --i;
            if (++pick[i] < choices[i].size()) break;
            pick[i] = 0;
            if (i == 0) return res;
        }
        if (movers.empty()) return res;
    }
}

struct NaiveGraph {
    bool diamond = false;
    std::vector<View> comps;
    std::vector<std::vector<std::string>> states;
    std::map<std::vector<std::string>, std::int32_t> index;
    struct Edge {
        std::int32_t src;
        std::vector<std::string> evec;
        std::int32_t dst;
    };
    std::vector<Edge> edges;
    std::vector<std::vector<std::int32_t>> out;  ///< edge indices per state
    std::vector<std::int32_t> initial;

    std::size_t L() const { return comps.size() - 1; }
};

NaiveGraph naive_compose(std::vector<View> comps, bool diamond, Budget& b) {
    NaiveGraph g;
    g.diamond = diamond;
    g.comps = std::move(comps);
    const auto L = g.L();

    auto intern = [&](const std::vector<std::string>& v) {
        auto it = g.index.find(v);
        if (it != g.index.end()) return it->second;
        auto id = static_cast<std::int32_t>(g.states.size());
        g.index.emplace(v, id);
        g.states.push_back(v);
        g.out.emplace_back();
        return id;
    };

    // initial product, lexicographic in component order
    std::vector<std::vector<std::string>> inits{{}};
    for (auto& c : g.comps) {
        std::vector<std::vector<std::string>> next;
        for (auto& partial : inits)
            for (auto s : c.fsa->initial) {
                auto v = partial;
                v.push_back(c.fsa->state_name(s));
                next.push_back(std::move(v));
            }
        inits = std::move(next);
    }
    for (auto& v : inits) g.initial.push_back(intern(v));

    // candidate options per entry
    std::vector<std::vector<std::string>> options(L + 1);
    options[0].push_back("");
    for (auto& e : g.comps[0].fsa->events) options[0].push_back(e.name);
    for (std::size_t j = 1; j <= L; ++j) {
        options[j].push_back("");
        for (auto& e : g.comps[j].fsa->events) options[j].push_back(e.name);
        if (diamond) options[j].push_back(kDeadToken);
    }

    std::deque<std::int32_t> work(g.initial.begin(), g.initial.end());
    std::vector<std::string> evec(L + 1);
    while (!work.empty()) {
        auto s = work.front();
        work.pop_front();
        auto st = g.states[static_cast<std::size_t>(s)];  // copy: g.states may grow

        std::vector<std::size_t> pick(L + 1, 0);
        while (true) {
            for (std::size_t i = 0; i <= L; ++i) evec[i] = options[i][pick[i]];
            auto step = step_dests(g.comps, diamond, st, evec, b);
            for (auto& dst : step.dests) {
                auto before = g.states.size();
                auto d = intern(dst);
                if (g.states.size() > before) work.push_back(d);
                g.out[static_cast<std::size_t>(s)].push_back(
                    static_cast<std::int32_t>(g.edges.size()));
                g.edges.push_back({s, evec, d});
            }
            std::size_t i = L + 1;
            bool done = true;
            while (i > 0) {
                --i;
                if (++pick[i] < options[i].size()) {
                    done = false;
                    break;
                }
                pick[i] = 0;
            }
            if (done) break;
        }
    }
    return g;
}

struct NReach {
    std::vector<std::int32_t> dist, pedge, pnode;
};

NReach nreach(const NaiveGraph& g, const std::vector<std::int32_t>& seeds, Budget& b) {
    NReach r;
    r.dist.assign(g.states.size(), -1);
    r.pedge.assign(g.states.size(), -1);
    r.pnode.assign(g.states.size(), -1);
    std::deque<std::int32_t> q;
    for (auto s : seeds)
        if (r.dist[static_cast<std::size_t>(s)] < 0) {
            r.dist[static_cast<std::size_t>(s)] = 0;
            q.push_back(s);
        }
    while (!q.empty()) {
        auto u = q.front();
        q.pop_front();
        b.spend();
        for (auto ei : g.out[static_cast<std::size_t>(u)]) {
            auto v = g.edges[static_cast<std::size_t>(ei)].dst;
            if (r.dist[static_cast<std::size_t>(v)] < 0) {
                r.dist[static_cast<std::size_t>(v)] = r.dist[static_cast<std::size_t>(u)] + 1;
                r.pedge[static_cast<std::size_t>(v)] = ei;
                r.pnode[static_cast<std::size_t>(v)] = u;
                q.push_back(v);
            }
        }
    }
    return r;
}

std::vector<std::int32_t> npath(const NReach& r, std::int32_t to) {
    std::vector<std::int32_t> edges;
    auto cur = to;
    while (r.pedge[static_cast<std::size_t>(cur)] >= 0) {
        edges.push_back(r.pedge[static_cast<std::size_t>(cur)]);
        cur = r.pnode[static_cast<std::size_t>(cur)];
    }
    std::reverse(edges.begin(), edges.end());
    return edges;
}

std::int32_t norigin(const NReach& r, std::int32_t to) {
    auto cur = to;
    while (r.pedge[static_cast<std::size_t>(cur)] >= 0) cur = r.pnode[static_cast<std::size_t>(cur)];
    return cur;
}

CompPath comp_path(const NaiveGraph& g, std::int32_t start, const std::vector<std::int32_t>& edges) {
    CompPath p;
    p.states.push_back(g.states[static_cast<std::size_t>(start)]);
    for (auto ei : edges) {
        auto& e = g.edges[static_cast<std::size_t>(ei)];
        p.events.push_back(e.evec);
        p.states.push_back(g.states[static_cast<std::size_t>(e.dst)]);
    }
    return p;
}

/// Output an edge produces for tracked entry j (1-based), if any.
std::optional<std::string> edge_output(const NaiveGraph& g, const NaiveGraph::Edge& e,
                                       std::size_t j) {
    auto& name = e.evec[j];
    if (name.empty() || name == kDeadToken) return std::nullopt;
    auto id = g.comps[j].fsa->event_id(name);
    if (id < 0) return std::nullopt;
    return g.comps[j].lab.of(id);
}

/// States lying on a cycle that contains an edge satisfying pred.
template <typename Pred>
std::vector<char> cycle_states(const NaiveGraph& g, Pred pred, Budget& b) {
    std::vector<char> result(g.states.size(), 0);
    std::vector<std::vector<std::int32_t>> rev(g.states.size());
    for (auto& ed : g.edges) rev[static_cast<std::size_t>(ed.dst)].push_back(ed.src);
    for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
        auto& e = g.edges[ei];
        if (!pred(e)) continue;
        auto fwd = nreach(g, {e.dst}, b);
        if (fwd.dist[static_cast<std::size_t>(e.src)] < 0) continue;  // edge on no cycle
        std::vector<char> back(g.states.size(), 0);
        std::deque<std::int32_t> q{e.src};
        back[static_cast<std::size_t>(e.src)] = 1;
        while (!q.empty()) {
            auto u = q.front();
            q.pop_front();
            b.spend();
            for (auto v : rev[static_cast<std::size_t>(u)])
                if (!back[static_cast<std::size_t>(v)]) {
                    back[static_cast<std::size_t>(v)] = 1;
                    q.push_back(v);
                }
        }
        for (std::size_t s = 0; s < g.states.size(); ++s)
            if (back[s] && fwd.dist[s] >= 0) result[s] = 1;
    }
    return result;
}

/// Cycle through anchor using the first qualifying edge, as explicit edges.
template <typename Pred>
std::vector<std::int32_t> cycle_through(const NaiveGraph& g, std::int32_t anchor, Pred pred,
                                        Budget& b) {
    auto from_anchor = nreach(g, {anchor}, b);
    for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
        auto& e = g.edges[ei];
        if (!pred(e)) continue;
        if (from_anchor.dist[static_cast<std::size_t>(e.src)] < 0) continue;
        auto back = nreach(g, {e.dst}, b);
        if (back.dist[static_cast<std::size_t>(anchor)] < 0) continue;
        auto edges = npath(from_anchor, e.src);
        edges.push_back(static_cast<std::int32_t>(ei));
        auto tail = npath(back, anchor);
        edges.insert(edges.end(), tail.begin(), tail.end());
        return edges;
    }
    throw std::logic_error("no qualifying cycle through the chosen state");
}

// plain-automaton helpers, kept separate from the fast path on purpose

struct FReach {
    std::vector<std::int32_t> dist, ptrans, pnode;
};

FReach freach(const Fsa& fsa, const std::vector<StateId>& seeds, Budget& b) {
    FReach r;
    r.dist.assign(fsa.n_states(), -1);
    r.ptrans.assign(fsa.n_states(), -1);
    r.pnode.assign(fsa.n_states(), -1);
    std::deque<StateId> q;
    for (auto s : seeds)
        if (r.dist[static_cast<std::size_t>(s)] < 0) {
            r.dist[static_cast<std::size_t>(s)] = 0;
            q.push_back(s);
        }
    while (!q.empty()) {
        auto u = q.front();
        q.pop_front();
        b.spend();
        auto begin = fsa.out_begin[static_cast<std::size_t>(u)];
        auto end = fsa.out_begin[static_cast<std::size_t>(u) + 1];
        for (auto ti = begin; ti != end; ++ti) {
            auto v = fsa.transitions[static_cast<std::size_t>(ti)].dst;
            if (r.dist[static_cast<std::size_t>(v)] < 0) {
                r.dist[static_cast<std::size_t>(v)] = r.dist[static_cast<std::size_t>(u)] + 1;
                r.ptrans[static_cast<std::size_t>(v)] = ti;
                r.pnode[static_cast<std::size_t>(v)] = u;
                q.push_back(v);
            }
        }
    }
    return r;
}

SPath fpath(const Fsa& fsa, const FReach& r, StateId to) {
    std::vector<std::int32_t> trans;
    auto cur = to;
    while (r.ptrans[static_cast<std::size_t>(cur)] >= 0) {
        trans.push_back(r.ptrans[static_cast<std::size_t>(cur)]);
        cur = r.pnode[static_cast<std::size_t>(cur)];
    }
    std::reverse(trans.begin(), trans.end());
    SPath p;
    p.states.push_back(fsa.state_name(cur));
    for (auto ti : trans) {
        auto& t = fsa.transitions[static_cast<std::size_t>(ti)];
        p.events.push_back(fsa.event_name(t.event));
        p.states.push_back(fsa.state_name(t.dst));
    }
    return p;
}

std::vector<char> naive_on_cycle(const Fsa& fsa, Budget& b) {
    std::vector<char> on(fsa.n_states(), 0);
    for (std::size_t s = 0; s < fsa.n_states(); ++s) {
        for (auto& t : fsa.out(static_cast<StateId>(s))) {
            auto r = freach(fsa, {t.dst}, b);
            if (r.dist[s] >= 0) {
                on[s] = 1;
                break;
            }
        }
    }
    return on;
}

SPath naive_cycle_at(const Fsa& fsa, StateId anchor, Budget& b) {
    auto r = freach(fsa, {anchor}, b);
    std::int32_t best = -1, best_dist = -1;
    for (std::size_t ti = 0; ti < fsa.transitions.size(); ++ti) {
        auto& t = fsa.transitions[ti];
        if (t.dst != anchor || r.dist[static_cast<std::size_t>(t.src)] < 0) continue;
        if (best < 0 || r.dist[static_cast<std::size_t>(t.src)] < best_dist) {
            best = static_cast<std::int32_t>(ti);
            best_dist = r.dist[static_cast<std::size_t>(t.src)];
        }
    }
    if (best < 0) throw std::logic_error("state lies on no cycle");
    auto& t = fsa.transitions[static_cast<std::size_t>(best)];
    auto p = fpath(fsa, r, t.src);
    p.events.push_back(fsa.event_name(t.event));
    p.states.push_back(fsa.state_name(t.dst));
    return p;
}

/// Nearest on-cycle state from `from` plus the pieces of a forever-run.
std::optional<std::pair<SPath, SPath>> naive_tail(const Fsa& fsa, StateId from,
                                                  const std::vector<char>& on, Budget& b) {
    auto r = freach(fsa, {from}, b);
    StateId anchor = -1;
    for (std::size_t s = 0; s < fsa.n_states(); ++s) {
        if (!on[s] || r.dist[s] < 0) continue;
        if (anchor < 0 || r.dist[s] < r.dist[static_cast<std::size_t>(anchor)])
            anchor = static_cast<StateId>(s);
    }
    if (anchor < 0) return std::nullopt;
    return std::make_pair(fpath(fsa, r, anchor), naive_cycle_at(fsa, anchor, b));
}

std::vector<View> detection_views(const Fsa& fsa, const ObserverSet& obs) {
    std::vector<View> comps{{&fsa, global_labeling(fsa)}};
    for (std::size_t j = 0; j < obs.size(); ++j)
        comps.push_back({&fsa, observer_labeling(fsa, obs, j)});
    return comps;
}

Verdict naive_detection(Property prop, bool central, const Fsa& fsa, const ObserverSet& obs,
                        Budget& b) {
    const auto L = obs.size();
    if (L == 0) throw std::invalid_argument("detection requires at least one observer");
    if (L > 8) throw std::invalid_argument("too many observers for exhaustive search");
    Verdict v{prop, true, std::nullopt, std::nullopt};

    auto g = naive_compose(detection_views(fsa, obs), true, b);
    auto on = naive_on_cycle(fsa, b);

    // per-observer: states on a cycle producing output for that observer
    std::vector<std::vector<char>> chargeable;
    for (std::size_t j = 1; j <= L; ++j)
        chargeable.push_back(cycle_states(
            g, [&](const NaiveGraph::Edge& e) { return edge_output(g, e, j).has_value(); }, b));

    auto tail_ok = [&](std::int32_t s) {
        auto& vec = g.states[static_cast<std::size_t>(s)];
        for (std::size_t j = 1; j <= L; ++j)
            if (vec[j] != kDeadToken) return false;
        auto r = freach(fsa, {fsa.state_id(vec[0])}, b);
        for (std::size_t x = 0; x < fsa.n_states(); ++x)
            if (on[x] && r.dist[x] >= 0) return true;
        return false;
    };

    std::vector<std::size_t> perm(L);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::vector<NReach> stages;
        stages.push_back(nreach(g, g.initial, b));
        std::vector<std::int32_t> charge_state(L, -1);
        bool dead_end = false;
        for (std::size_t i = 0; i < L && !dead_end; ++i) {
            std::vector<std::int32_t> seeds;
            for (std::size_t s = 0; s < g.states.size(); ++s)
                if (stages.back().dist[s] >= 0 && chargeable[perm[i]][s])
                    seeds.push_back(static_cast<std::int32_t>(s));
            if (seeds.empty()) dead_end = true;
            else stages.push_back(nreach(g, seeds, b));
        }
        if (dead_end) continue;

        std::int32_t terminal = -1;
        for (std::size_t s = 0; s < g.states.size() && terminal < 0; ++s)
            if (stages.back().dist[s] >= 0 && tail_ok(static_cast<std::int32_t>(s)))
                terminal = static_cast<std::int32_t>(s);
        if (terminal < 0) continue;

        // backtrack through the stages
        std::vector<std::vector<std::int32_t>> links(L + 1);
        auto cur = terminal;
        for (std::size_t i = L + 1; i-- > 1;) {
            links[i] = npath(stages[i], cur);
            cur = norigin(stages[i], cur);
            charge_state[i - 1] = cur;
        }
        links[0] = npath(stages[0], charge_state[0]);
        auto start = norigin(stages[0], charge_state[0]);

        Certificate cert;
        cert.property = prop;
        cert.centralized = central;
        for (auto& o : obs.observers) cert.observer_names.push_back(o.name);
        cert.route.push_back(
            {Certificate::Segment::Kind::Prefix, -1, comp_path(g, start, links[0])});
        for (std::size_t i = 0; i < L; ++i) {
            auto j = perm[i];
            auto cyc = cycle_through(
                g, charge_state[i],
                [&](const NaiveGraph::Edge& e) { return edge_output(g, e, j + 1).has_value(); }, b);
            cert.route.push_back({Certificate::Segment::Kind::Cycle, static_cast<int>(j),
                                  comp_path(g, charge_state[i], cyc)});
            cert.route.push_back(
                {Certificate::Segment::Kind::Link, -1, comp_path(g, charge_state[i], links[i + 1])});
        }
        auto ref_state = fsa.state_id(g.states[static_cast<std::size_t>(terminal)][0]);
        auto tail = naive_tail(fsa, ref_state, on, b);
        if (!tail) throw std::logic_error("terminal chosen without a forever-run");
        cert.tail_path = std::move(tail->first);
        cert.tail_cycle = std::move(tail->second);
        v.holds = false;
        v.certificate = std::move(cert);
        return v;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return v;
}

Verdict naive_diagnosis(Property prop, bool central, const Fsa& fsa, const ObserverSet& obs,
                        Budget& b) {
    if (obs.size() == 0) throw std::invalid_argument("diagnosis requires at least one observer");
    Verdict v{prop, true, std::nullopt, std::nullopt};
    auto normal = normal_subautomaton(fsa);
    std::vector<View> comps{{&fsa, global_labeling(fsa)}};
    for (std::size_t j = 0; j < obs.size(); ++j)
        comps.push_back({&normal, observer_labeling(fsa, obs, j)});
    auto g = naive_compose(std::move(comps), false, b);

    auto busy = cycle_states(
        g, [&](const NaiveGraph::Edge& e) { return !e.evec[0].empty(); }, b);
    auto init = nreach(g, g.initial, b);

    for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
        auto& e = g.edges[ei];
        if (e.evec[0].empty()) continue;
        auto id = fsa.event_id(e.evec[0]);
        if (id < 0 || !fsa.is_faulty(id)) continue;
        if (init.dist[static_cast<std::size_t>(e.src)] < 0) continue;
        auto post = nreach(g, {e.dst}, b);
        std::int32_t anchor = -1;
        for (std::size_t s = 0; s < g.states.size(); ++s) {
            if (!busy[s] || post.dist[s] < 0) continue;
            if (anchor < 0 || post.dist[s] < post.dist[static_cast<std::size_t>(anchor)])
                anchor = static_cast<std::int32_t>(s);
        }
        if (anchor < 0) continue;

        Certificate cert;
        cert.property = prop;
        cert.centralized = central;
        for (auto& o : obs.observers) cert.observer_names.push_back(o.name);
        cert.route.push_back({Certificate::Segment::Kind::Prefix, -1,
                              comp_path(g, norigin(init, e.src), npath(init, e.src))});
        cert.route.push_back({Certificate::Segment::Kind::Fault, -1,
                              comp_path(g, e.src, {static_cast<std::int32_t>(ei)})});
        cert.route.push_back(
            {Certificate::Segment::Kind::Link, -1, comp_path(g, e.dst, npath(post, anchor))});
        auto cyc = cycle_through(
            g, anchor, [&](const NaiveGraph::Edge& ed) { return !ed.evec[0].empty(); }, b);
        cert.route.push_back({Certificate::Segment::Kind::Cycle, -1, comp_path(g, anchor, cyc)});
        v.holds = false;
        v.certificate = std::move(cert);
        return v;
    }
    return v;
}

Verdict naive_prediction(Property prop, bool central, const Fsa& fsa, const ObserverSet& obs,
                         Budget& b) {
    if (obs.size() == 0) throw std::invalid_argument("prediction requires at least one observer");
    Verdict v{prop, true, std::nullopt, std::nullopt};
    auto normal = normal_subautomaton(fsa);
    std::vector<View> comps{{&normal, global_labeling(fsa)}};
    for (std::size_t j = 0; j < obs.size(); ++j)
        comps.push_back({&normal, observer_labeling(fsa, obs, j)});
    auto g = naive_compose(std::move(comps), false, b);

    auto on_normal = naive_on_cycle(normal, b);
    auto can_run_forever = [&](const std::string& state) {
        auto r = freach(normal, {normal.state_id(state)}, b);
        for (std::size_t x = 0; x < normal.n_states(); ++x)
            if (on_normal[x] && r.dist[x] >= 0) return true;
        return false;
    };
    auto fault_from = [&](const std::string& state) -> std::int32_t {
        auto s = fsa.state_id(state);
        auto begin = fsa.out_begin[static_cast<std::size_t>(s)];
        auto end = fsa.out_begin[static_cast<std::size_t>(s) + 1];
        for (auto ti = begin; ti != end; ++ti)
            if (fsa.is_faulty(fsa.transitions[static_cast<std::size_t>(ti)].event)) return ti;
        return -1;
    };

    auto init = nreach(g, g.initial, b);
    for (std::size_t s = 0; s < g.states.size(); ++s) {
        if (init.dist[s] < 0) continue;
        auto& vec = g.states[s];
        auto ti = fault_from(vec[0]);
        if (ti < 0) continue;
        bool ok = true;
        for (std::size_t j = 1; j <= g.L() && ok; ++j) ok = can_run_forever(vec[j]);
        if (!ok) continue;

        Certificate cert;
        cert.property = prop;
        cert.centralized = central;
        for (auto& o : obs.observers) cert.observer_names.push_back(o.name);
        cert.route.push_back(
            {Certificate::Segment::Kind::Prefix, -1,
             comp_path(g, norigin(init, static_cast<std::int32_t>(s)),
                       npath(init, static_cast<std::int32_t>(s)))});
        auto& t = fsa.transitions[static_cast<std::size_t>(ti)];
        cert.fault_transition = {fsa.state_name(t.src), fsa.event_name(t.event),
                                 fsa.state_name(t.dst)};
        for (std::size_t j = 1; j <= g.L(); ++j) {
            auto tail = naive_tail(normal, normal.state_id(vec[j]), on_normal, b);
            if (!tail) throw std::logic_error("witness chosen without forever-runs");
            cert.observer_tails.push_back({static_cast<int>(j) - 1, std::move(tail->first),
                                           std::move(tail->second)});
        }
        v.holds = false;
        v.certificate = std::move(cert);
        return v;
    }
    return v;
}

}  // namespace

Verdict naive_verify(Property p, const Fsa& fsa, const ObserverSet* obs,
                     const OracleConfig& config) {
    Budget b{config.budget};
    if (centralized(p)) {
        auto full = full_observer(fsa);
        switch (p) {
            case Property::strong_detectability: return naive_detection(p, true, fsa, full, b);
            case Property::diagnosability: return naive_diagnosis(p, true, fsa, full, b);
            default: return naive_prediction(p, true, fsa, full, b);
        }
    }
    if (!obs || obs->size() == 0)
        throw std::invalid_argument("property '" + property_name(p) + "' requires observers");
    switch (p) {
        case Property::co_detectability: return naive_detection(p, false, fsa, *obs, b);
        case Property::co_diagnosability: return naive_diagnosis(p, false, fsa, *obs, b);
        default: return naive_prediction(p, false, fsa, *obs, b);
    }
}

std::vector<StateId> exhaustive_estimate(const Fsa& fsa, const Labeling& lab,
                                         std::span<const std::string> sigma,
                                         const OracleConfig& config) {
    Budget b{config.budget};
    const auto k = sigma.size();
    // nodes: (state, symbols consumed)
    auto node = [&](StateId s, std::size_t c) { return static_cast<std::size_t>(s) * (k + 1) + c; };
    std::vector<char> seen(fsa.n_states() * (k + 1), 0);
    std::deque<std::pair<StateId, std::size_t>> q;
    for (auto s : fsa.initial) {
        seen[node(s, 0)] = 1;
        q.emplace_back(s, 0);
    }
    std::vector<StateId> result;
    while (!q.empty()) {
        auto [s, c] = q.front();
        q.pop_front();
        b.spend();
        if (c == k) result.push_back(s);
        for (auto& t : fsa.out(s)) {
            auto& l = lab.of(t.event);
            std::size_t nc;
            if (!l)
                nc = c;
            else if (c < k && *l == sigma[c])
                nc = c + 1;
            else
                continue;
            if (!seen[node(t.dst, nc)]) {
                seen[node(t.dst, nc)] = 1;
                q.emplace_back(t.dst, nc);
            }
        }
    }
    std::sort(result.begin(), result.end());
    return result;
}

std::optional<std::vector<std::string>> brute_force_dfa_intersection(std::span<const Dfa> dfas,
                                                                     const OracleConfig& config) {
    Budget b{config.budget};
    if (dfas.empty()) return std::vector<std::string>{};
    std::vector<std::string> letters;
    for (auto& d : dfas) letters.insert(letters.end(), d.letters.begin(), d.letters.end());
    std::sort(letters.begin(), letters.end());
    letters.erase(std::unique(letters.begin(), letters.end()), letters.end());

    std::vector<std::vector<StateId>> tuples;
    std::map<std::vector<StateId>, std::int32_t> index;
    std::vector<std::pair<std::int32_t, std::int32_t>> parent;  // (tuple, letter)
    auto accept_all = [&](const std::vector<StateId>& t) {
        for (std::size_t i = 0; i < dfas.size(); ++i)
            if (!dfas[i].accepting[static_cast<std::size_t>(t[i])]) return false;
        return true;
    };

    std::vector<StateId> start;
    for (auto& d : dfas) start.push_back(d.initial);
    tuples.push_back(start);
    index.emplace(start, 0);
    parent.emplace_back(-1, -1);
    std::deque<std::int32_t> q{0};
    std::int32_t found = accept_all(start) ? 0 : -1;
    while (!q.empty() && found < 0) {
        auto u = q.front();
        q.pop_front();
        auto cur = tuples[static_cast<std::size_t>(u)];
        for (std::size_t li = 0; li < letters.size() && found < 0; ++li) {
            b.spend();
            std::vector<StateId> nxt;
            bool alive = true;
            for (std::size_t i = 0; i < dfas.size() && alive; ++i) {
                auto lid = dfas[i].letter_id(letters[li]);
                if (lid < 0) {
                    alive = false;
                    break;
                }
                auto ns = dfas[i].step(cur[i], lid);
                if (ns < 0) alive = false;
                else nxt.push_back(ns);
            }
            if (!alive) continue;
            if (index.contains(nxt)) continue;
            auto id = static_cast<std::int32_t>(tuples.size());
            index.emplace(nxt, id);
            tuples.push_back(nxt);
            parent.emplace_back(u, static_cast<std::int32_t>(li));
            if (accept_all(nxt)) found = id;
            q.push_back(id);
        }
    }
    if (found < 0) return std::nullopt;
    std::vector<std::string> word;
    auto cur = found;
    while (parent[static_cast<std::size_t>(cur)].first >= 0) {
        word.push_back(letters[static_cast<std::size_t>(parent[static_cast<std::size_t>(cur)].second)]);
        cur = parent[static_cast<std::size_t>(cur)].first;
    }
    std::reverse(word.begin(), word.end());
    return word;
}

namespace {

/// States reachable by firing exactly this event-name sequence.
std::vector<StateId> replay(const Fsa& fsa, std::span<const std::string> word,
                            std::vector<std::string>& diag, const std::string& what) {
    std::vector<StateId> cur(fsa.initial.begin(), fsa.initial.end());
    for (auto& name : word) {
        auto e = fsa.event_id(name);
        if (e < 0) {
            diag.push_back(what + " uses unknown event '" + name + "'");
            return {};
        }
        std::set<StateId> nxt;
        for (auto s : cur)
            for (auto& t : fsa.out(s))
                if (t.event == e) nxt.insert(t.dst);
        cur.assign(nxt.begin(), nxt.end());
        if (cur.empty()) {
            diag.push_back(what + " is not generated by the automaton (stuck at '" + name + "')");
            return {};
        }
    }
    return cur;
}

bool fault_free(const Fsa& fsa, std::span<const std::string> word) {
    for (auto& name : word) {
        auto e = fsa.event_id(name);
        if (e >= 0 && fsa.is_faulty(e)) return false;
    }
    return true;
}

/// Every step of the path must be a transition of fsa.
bool check_spath(const Fsa& fsa, const SPath& p, const std::string& what,
                 std::vector<std::string>& diag) {
    if (p.states.size() != p.events.size() + 1) {
        diag.push_back(what + " has mismatched state and event counts");
        return false;
    }
    for (std::size_t i = 0; i < p.events.size(); ++i) {
        auto s = fsa.state_id(p.states[i]);
        auto e = fsa.event_id(p.events[i]);
        auto d = fsa.state_id(p.states[i + 1]);
        bool found = false;
        if (s >= 0 && e >= 0 && d >= 0)
            for (auto& t : fsa.out(s))
                if (t.event == e && t.dst == d) found = true;
        if (!found) {
            diag.push_back(what + ": the automaton has no transition (" + p.states[i] + ", " +
                           p.events[i] + ", " + p.states[i + 1] + ")");
            return false;
        }
    }
    return true;
}

}  // namespace

CheckResult check_certificate(const Fsa& fsa, const ObserverSet* obs_in, const Certificate& cert,
                              const PumpEvidence* evidence) {
    CheckResult res;
    auto fail = [&](std::string msg) {
        res.ok = false;
        res.diagnostics.push_back(std::move(msg));
    };

    ObserverSet obs;
    if (cert.centralized) {
        obs = full_observer(fsa);
        if (cert.observer_names != std::vector<std::string>{obs.observers[0].name})
            fail("a certificate against the automaton's own output must name exactly '" +
                 obs.observers[0].name + "'");
    } else {
        if (!obs_in || obs_in->size() == 0) {
            fail("certificate names local observers but none were supplied");
            return res;
        }
        obs = *obs_in;
        std::vector<std::string> names;
        for (auto& o : obs.observers) names.push_back(o.name);
        if (cert.observer_names != names) {
            fail("certificate observer names do not match the supplied observer set");
            return res;
        }
    }
    const auto L = obs.size();

    const bool is_detection = cert.property == Property::strong_detectability ||
                              cert.property == Property::co_detectability;
    const bool is_diagnosis = cert.property == Property::diagnosability ||
                              cert.property == Property::co_diagnosability;
    const bool is_prediction = !is_detection && !is_diagnosis;
    if (centralized(cert.property) != cert.centralized)
        fail("property and centralized flag disagree");

    Fsa normalized;  // normal part, built once when a property needs it
    std::vector<View> comps;
    bool diamond = is_detection;
    if (is_detection) {
        comps = detection_views(fsa, obs);
    } else {
        normalized = normal_subautomaton(fsa);
        if (is_diagnosis) comps.push_back({&fsa, global_labeling(fsa)});
        else comps.push_back({&normalized, global_labeling(fsa)});
        for (std::size_t j = 0; j < L; ++j)
            comps.push_back({&normalized, observer_labeling(fsa, obs, j)});
    }
    const Fsa& tail_fsa = is_detection ? fsa : normalized;

    // shape of the route
    std::vector<Certificate::Segment::Kind> kinds;
    for (auto& seg : cert.route) kinds.push_back(seg.kind);
    using K = Certificate::Segment::Kind;
    bool shape_ok = true;
    if (is_detection) {
        shape_ok = kinds.size() == 1 + 2 * L && kinds[0] == K::Prefix;
        for (std::size_t i = 0; shape_ok && i < L; ++i)
            shape_ok = kinds[1 + 2 * i] == K::Cycle && kinds[2 + 2 * i] == K::Link;
        if (shape_ok) {
            std::set<int> charged;
            for (auto& seg : cert.route)
                if (seg.kind == K::Cycle) charged.insert(seg.observer);
            std::set<int> expected;
            for (std::size_t j = 0; j < L; ++j) expected.insert(static_cast<int>(j));
            if (charged != expected) {
                fail("detection route must charge every observer exactly once");
                return res;
            }
        }
    } else if (is_diagnosis) {
        shape_ok = kinds == std::vector<K>{K::Prefix, K::Fault, K::Link, K::Cycle};
    } else {
        shape_ok = kinds == std::vector<K>{K::Prefix};
    }
    if (!shape_ok) {
        fail("route segments do not form the pattern required by the property");
        return res;
    }

    // unused attachments must be absent
    if (!is_prediction && (cert.fault_transition || !cert.observer_tails.empty()))
        fail("only prediction certificates carry a fault transition and observer tails");
    if (!is_detection && (cert.tail_path || cert.tail_cycle))
        fail("only detection certificates carry a reference tail");

    // walk the route
    Budget b{10'000'000};
    std::vector<std::string> cur;
    bool first = true;
    for (std::size_t si = 0; si < cert.route.size(); ++si) {
        auto& seg = cert.route[si];
        auto& p = seg.path;
        if (p.states.size() != p.events.size() + 1 || p.states.empty()) {
            fail("segment " + std::to_string(si) + " is not a well-formed path");
            return res;
        }
        for (auto& v : p.states)
            if (v.size() != L + 1) {
                fail("segment " + std::to_string(si) + " has a state vector of the wrong width");
                return res;
            }
        if (first) {
            cur = p.states.front();
            for (std::size_t i = 0; i <= L; ++i) {
                auto s = comps[i].fsa->state_id(cur[i]);
                if (s < 0 || !comps[i].fsa->is_initial(s)) {
                    fail("route does not start in an initial state vector (entry " +
                         std::to_string(i) + " is '" + cur[i] + "')");
                    return res;
                }
            }
            first = false;
        } else if (p.states.front() != cur) {
            fail("segment " + std::to_string(si) + " does not continue where the previous one ended");
            return res;
        }
        for (std::size_t i = 0; i < p.events.size(); ++i) {
            if (p.events[i].size() != L + 1) {
                fail("segment " + std::to_string(si) + " has an event vector of the wrong width");
                return res;
            }
            auto step = step_dests(comps, diamond, p.states[i], p.events[i], b);
            if (step.dests.empty()) {
                fail("segment " + std::to_string(si) + " step " + std::to_string(i) + ": " +
                     step.error);
                return res;
            }
            if (std::find(step.dests.begin(), step.dests.end(), p.states[i + 1]) ==
                step.dests.end()) {
                fail("segment " + std::to_string(si) + " step " + std::to_string(i) +
                     " does not lead to the recorded next vector");
                return res;
            }
        }
        cur = p.states.back();

        if (seg.kind == K::Cycle) {
            if (p.events.empty() || p.states.front() != p.states.back()) {
                fail("segment " + std::to_string(si) + " is not a closed non-trivial cycle");
                return res;
            }
            if (is_detection) {
                auto j = static_cast<std::size_t>(seg.observer);
                auto lab = observer_labeling(fsa, obs, j);
                bool produces = false;
                for (auto& ev : p.events) {
                    auto& name = ev[j + 1];
                    if (name.empty() || name == kDeadToken) continue;
                    auto id = fsa.event_id(name);
                    if (id >= 0 && !lab.silent(id)) produces = true;
                }
                if (!produces)
                    fail("cycle for observer '" + cert.observer_names[j] +
                         "' produces no output for it");
            } else {
                bool moves = false;
                for (auto& ev : p.events)
                    if (!ev[0].empty()) moves = true;
                if (!moves) fail("the cycle never moves the faulty run");
            }
        }
        if (seg.kind == K::Fault) {
            if (p.events.size() != 1) {
                fail("the fault segment must be a single step");
                return res;
            }
            auto id = fsa.event_id(p.events[0][0]);
            if (p.events[0][0].empty() || id < 0 || !fsa.is_faulty(id))
                fail("the fault segment does not fire a faulty event");
        }
    }

    if (is_detection) {
        for (std::size_t j = 1; j <= L; ++j)
            if (cur[j] != kDeadToken)
                fail("route ends with tracked entry " + std::to_string(j) + " still alive");
        if (!cert.tail_path || !cert.tail_cycle) {
            fail("detection certificate lacks the reference tail");
            return res;
        }
        if (cert.tail_path->states.empty() || cert.tail_path->states.front() != cur[0])
            fail("reference tail does not start at the terminal reference state");
        if (check_spath(fsa, *cert.tail_path, "reference tail", res.diagnostics) &&
            check_spath(fsa, *cert.tail_cycle, "reference tail cycle", res.diagnostics)) {
            if (cert.tail_cycle->events.empty() ||
                cert.tail_cycle->states.front() != cert.tail_cycle->states.back())
                fail("reference tail cycle is not a closed non-trivial cycle");
            else if (cert.tail_path->states.back() != cert.tail_cycle->states.front())
                fail("reference tail does not reach its cycle");
        } else {
            res.ok = false;
        }
    }

    if (is_prediction) {
        if (!cert.fault_transition) {
            fail("prediction certificate lacks its fault transition");
            return res;
        }
        auto& ft = *cert.fault_transition;
        if (ft[0] != cur[0])
            fail("fault transition does not leave the final reference state");
        auto s = fsa.state_id(ft[0]);
        auto e = fsa.event_id(ft[1]);
        auto d = fsa.state_id(ft[2]);
        bool found = false;
        if (s >= 0 && e >= 0 && d >= 0)
            for (auto& t : fsa.out(s))
                if (t.event == e && t.dst == d) found = true;
        if (!found)
            fail("the automaton has no transition (" + ft[0] + ", " + ft[1] + ", " + ft[2] + ")");
        else if (!fsa.is_faulty(e))
            fail("the claimed fault transition fires a non-faulty event");

        std::set<int> seen_tails;
        for (auto& tail : cert.observer_tails) seen_tails.insert(tail.observer);
        std::set<int> expected;
        for (std::size_t j = 0; j < L; ++j) expected.insert(static_cast<int>(j));
        if (seen_tails != expected || cert.observer_tails.size() != L) {
            fail("prediction certificate must carry exactly one tail per observer");
            return res;
        }
        for (auto& tail : cert.observer_tails) {
            auto what = "tail of observer '" + cert.observer_names[static_cast<std::size_t>(tail.observer)] + "'";
            if (tail.path.states.empty() ||
                tail.path.states.front() != cur[static_cast<std::size_t>(tail.observer) + 1]) {
                fail(what + " does not start at that entry's final state");
                continue;
            }
            if (check_spath(tail_fsa, tail.path, what, res.diagnostics) &&
                check_spath(tail_fsa, tail.cycle, what + " cycle", res.diagnostics)) {
                if (tail.cycle.events.empty() ||
                    tail.cycle.states.front() != tail.cycle.states.back())
                    fail(what + " cycle is not a closed non-trivial cycle");
                else if (tail.path.states.back() != tail.cycle.states.front())
                    fail(what + " does not reach its cycle");
            } else {
                res.ok = false;
            }
        }
    }

    // evidence, when supplied
    if (evidence) {
        auto& ev = *evidence;
        if (is_detection) {
            if (replay(fsa, ev.word, res.diagnostics, "the pumped word").empty() && !ev.word.empty())
                res.ok = false;
            if (ev.observers.size() != L) fail("evidence must cover every observer");
            for (auto& po : ev.observers) {
                std::size_t j = L;
                for (std::size_t i = 0; i < L; ++i)
                    if (obs.observers[i].name == po.observer) j = i;
                if (j == L) {
                    fail("evidence names unknown observer '" + po.observer + "'");
                    continue;
                }
                auto lab = observer_labeling(fsa, obs, j);
                bool is_prefix = false;
                try {
                    for (std::size_t p = 0; p <= ev.word.size() && !is_prefix; ++p) {
                        std::span<const std::string> head(ev.word.data(), p);
                        if (project(fsa, lab, head) == po.sigma) is_prefix = true;
                    }
                } catch (const std::invalid_argument& ex) {
                    fail(std::string("projection failed: ") + ex.what());
                    continue;
                }
                if (!is_prefix)
                    fail("observer '" + po.observer +
                         "': sigma is not the view of any prefix of the word");
                if (po.sigma.size() < static_cast<std::size_t>(ev.k))
                    fail("observer '" + po.observer + "': sigma is shorter than the pump count");
                auto est = exhaustive_estimate(fsa, lab, po.sigma);
                std::vector<std::string> est_names;
                for (auto sid : est) est_names.push_back(fsa.state_name(sid));
                if (est_names != po.estimate)
                    fail("observer '" + po.observer + "': claimed estimate is wrong");
                if (est.size() < 2)
                    fail("observer '" + po.observer + "': the estimate is not ambiguous");
            }
        } else if (is_diagnosis) {
            if (replay(fsa, ev.word, res.diagnostics, "the faulty word").empty() && !ev.word.empty())
                res.ok = false;
            if (fault_free(fsa, ev.word)) fail("the claimed faulty word fires no faulty event");
            if (ev.observers.size() != L) fail("evidence must cover every observer");
            for (auto& po : ev.observers) {
                std::size_t j = L;
                for (std::size_t i = 0; i < L; ++i)
                    if (obs.observers[i].name == po.observer) j = i;
                if (j == L) {
                    fail("evidence names unknown observer '" + po.observer + "'");
                    continue;
                }
                if (!fault_free(fsa, po.run))
                    fail("observer '" + po.observer + "': the confusing run is not fault-free");
                if (replay(normalized, po.run, res.diagnostics,
                           "observer '" + po.observer + "' run").empty() && !po.run.empty())
                    res.ok = false;
                auto lab = observer_labeling(fsa, obs, j);
                try {
                    if (project(fsa, lab, po.run) != project(fsa, lab, ev.word))
                        fail("observer '" + po.observer +
                             "': the runs disagree under its view");
                } catch (const std::invalid_argument& ex) {
                    fail(std::string("projection failed: ") + ex.what());
                }
            }
        } else {
            if (!fault_free(fsa, ev.word)) fail("the pre-fault word must be fault-free");
            auto reached = replay(fsa, ev.word, res.diagnostics, "the pre-fault word");
            if (reached.empty() && !ev.word.empty()) res.ok = false;
            if (!ev.fault_event) {
                fail("prediction evidence lacks the enabled faulty event");
            } else {
                auto e = fsa.event_id(*ev.fault_event);
                bool enabled = false;
                if (e >= 0 && fsa.is_faulty(e))
                    for (auto s : reached)
                        for (auto& t : fsa.out(s))
                            if (t.event == e) enabled = true;
                if (!enabled)
                    fail("the claimed faulty event is not enabled after the word");
            }
            for (auto& po : ev.observers) {
                std::size_t j = L;
                for (std::size_t i = 0; i < L; ++i)
                    if (obs.observers[i].name == po.observer) j = i;
                if (j == L) {
                    fail("evidence names unknown observer '" + po.observer + "'");
                    continue;
                }
                auto full_run = po.run;
                full_run.insert(full_run.end(), po.continuation.begin(), po.continuation.end());
                if (!fault_free(fsa, full_run))
                    fail("observer '" + po.observer + "': the continued run is not fault-free");
                if (replay(normalized, full_run, res.diagnostics,
                           "observer '" + po.observer + "' continued run").empty() &&
                    !full_run.empty())
                    res.ok = false;
                auto lab = observer_labeling(fsa, obs, j);
                try {
                    if (project(fsa, lab, po.run) != project(fsa, lab, ev.word))
                        fail("observer '" + po.observer + "': the runs disagree under its view");
                } catch (const std::invalid_argument& ex) {
                    fail(std::string("projection failed: ") + ex.what());
                }
                if (po.continuation.size() < static_cast<std::size_t>(std::max(ev.k, 1)))
                    fail("observer '" + po.observer + "': the continuation is too short");
            }
            if (ev.observers.size() != L) fail("evidence must cover every observer");
        }
    }
    return res;
}

}  // namespace ccdes
