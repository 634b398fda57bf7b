#include "ccdes/verify.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <queue>
#include <stdexcept>
#include <utility>

#include "ccdes/detail/graph.hpp"

namespace ccdes {

std::string property_name(Property p) {
    switch (p) {
        case Property::strong_detectability: return "strong-detectability";
        case Property::co_detectability: return "co-detectability";
        case Property::diagnosability: return "diagnosability";
        case Property::co_diagnosability: return "co-diagnosability";
        case Property::predictability: return "predictability";
        case Property::co_predictability: return "co-predictability";
    }
    return "?";
}

std::optional<Property> property_from_name(std::string_view name) {
    for (auto p : kAllProperties)
        if (property_name(p) == name) return p;
    return std::nullopt;
}

bool centralized(Property p) {
    return p == Property::strong_detectability || p == Property::diagnosability ||
           p == Property::predictability;
}

namespace {

std::vector<std::string> state_entries(const Composition& comp, std::int32_t s) {
    std::vector<std::string> out;
    auto& v = comp.states[static_cast<std::size_t>(s)];
    for (int i = 0; i <= comp.L; ++i) {
        auto x = v[static_cast<std::size_t>(i)];
        out.push_back(x == Composition::kDead
                          ? kDeadToken
                          : comp.comp_states[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)]);
    }
    return out;
}

std::vector<std::string> event_entries(const Composition& comp, std::int32_t evec) {
    std::vector<std::string> out;
    auto& v = comp.evecs[static_cast<std::size_t>(evec)];
    for (int i = 0; i <= comp.L; ++i) {
        auto x = v[static_cast<std::size_t>(i)];
        if (x == Composition::kEps)
            out.emplace_back();
        else if (x == Composition::kKill)
            out.emplace_back(kDeadToken);
        else
            out.push_back(comp.comp_events[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)]);
    }
    return out;
}

CompPath path_from_edges(const Composition& comp, std::int32_t start,
                         const std::vector<std::int32_t>& edge_idxs) {
    CompPath p;
    p.states.push_back(state_entries(comp, start));
    auto cur = start;
    for (auto idx : edge_idxs) {
        auto& e = comp.edges[static_cast<std::size_t>(idx)];
        if (e.src != cur) throw std::logic_error("disconnected witness path");
        p.events.push_back(event_entries(comp, e.evec));
        cur = e.dst;
        p.states.push_back(state_entries(comp, cur));
    }
    return p;
}

struct CompBfs {
    std::vector<std::int32_t> dist, parent_edge, parent_node;
};

CompBfs comp_bfs(const Composition& comp, const std::vector<std::int32_t>& seeds,
                 const std::int32_t* restrict_scc = nullptr,
                 const std::vector<std::int32_t>* scc_of = nullptr) {
    CompBfs b;
    b.dist.assign(comp.n(), -1);
    b.parent_edge.assign(comp.n(), -1);
    b.parent_node.assign(comp.n(), -1);
    std::deque<std::int32_t> queue;
    for (auto s : seeds) {
        if (b.dist[static_cast<std::size_t>(s)] < 0) {
            b.dist[static_cast<std::size_t>(s)] = 0;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        auto u = queue.front();
        queue.pop_front();
        auto begin = comp.out_begin[static_cast<std::size_t>(u)];
        auto end = comp.out_begin[static_cast<std::size_t>(u) + 1];
        for (auto idx = begin; idx != end; ++idx) {
            auto& e = comp.edges[static_cast<std::size_t>(idx)];
            if (restrict_scc && (*scc_of)[static_cast<std::size_t>(e.dst)] != *restrict_scc) continue;
            if (b.dist[static_cast<std::size_t>(e.dst)] < 0) {
                b.dist[static_cast<std::size_t>(e.dst)] = b.dist[static_cast<std::size_t>(u)] + 1;
                b.parent_edge[static_cast<std::size_t>(e.dst)] = idx;
                b.parent_node[static_cast<std::size_t>(e.dst)] = u;
                queue.push_back(e.dst);
            }
        }
    }
    return b;
}

std::vector<std::int32_t> backtrack(const CompBfs& b, const Composition& comp, std::int32_t to) {
    std::vector<std::int32_t> edges;
    auto cur = to;
    while (b.parent_edge[static_cast<std::size_t>(cur)] >= 0) {
        edges.push_back(b.parent_edge[static_cast<std::size_t>(cur)]);
        cur = b.parent_node[static_cast<std::size_t>(cur)];
    }
    std::reverse(edges.begin(), edges.end());
    (void)comp;
    return edges;
}

std::int32_t bfs_origin(const CompBfs& b, std::int32_t to) {
    auto cur = to;
    while (b.parent_edge[static_cast<std::size_t>(cur)] >= 0)
        cur = b.parent_node[static_cast<std::size_t>(cur)];
    return cur;
}

/// Shortest closed walk through anchor inside its SCC containing an edge
/// satisfying pred, deterministic by edge order. Minimality guarantees that
/// deleting any single step leaves no valid qualifying cycle.
template <typename Pred>
std::vector<std::int32_t> cycle_at(const Composition& comp, const std::vector<std::int32_t>& scc_of,
                                   std::int32_t anchor, Pred pred) {
    auto cid = scc_of[static_cast<std::size_t>(anchor)];
    auto from_anchor = comp_bfs(comp, {anchor}, &cid, &scc_of);
    // dist(v, anchor) over SCC edges, via reverse BFS from the anchor
    std::vector<std::int32_t> to_anchor(comp.n(), -1);
    {
        std::vector<std::vector<std::int32_t>> rev(comp.n());
        for (auto& e : comp.edges)
            if (scc_of[static_cast<std::size_t>(e.src)] == cid &&
                scc_of[static_cast<std::size_t>(e.dst)] == cid)
                rev[static_cast<std::size_t>(e.dst)].push_back(e.src);
        std::deque<std::int32_t> queue{anchor};
        to_anchor[static_cast<std::size_t>(anchor)] = 0;
        while (!queue.empty()) {
            auto u = queue.front();
            queue.pop_front();
            for (auto v : rev[static_cast<std::size_t>(u)])
                if (to_anchor[static_cast<std::size_t>(v)] < 0) {
                    to_anchor[static_cast<std::size_t>(v)] =
                        to_anchor[static_cast<std::size_t>(u)] + 1;
                    queue.push_back(v);
                }
        }
    }
    std::int32_t best = -1;
    std::int32_t best_cost = 0;
    for (std::size_t idx = 0; idx < comp.edges.size(); ++idx) {
        auto& e = comp.edges[idx];
        if (scc_of[static_cast<std::size_t>(e.src)] != cid ||
            scc_of[static_cast<std::size_t>(e.dst)] != cid)
            continue;
        if (from_anchor.dist[static_cast<std::size_t>(e.src)] < 0) continue;
        if (to_anchor[static_cast<std::size_t>(e.dst)] < 0) continue;
        if (!pred(e)) continue;
        auto cost = from_anchor.dist[static_cast<std::size_t>(e.src)] + 1 +
                    to_anchor[static_cast<std::size_t>(e.dst)];
        if (best < 0 || cost < best_cost) {
            best = static_cast<std::int32_t>(idx);
            best_cost = cost;
        }
    }
    if (best < 0) throw std::logic_error("no qualifying cycle through the chosen anchor");
    auto& be = comp.edges[static_cast<std::size_t>(best)];
    auto edges = backtrack(from_anchor, comp, be.src);
    edges.push_back(best);
    if (be.dst != anchor) {
        auto back = comp_bfs(comp, {be.dst}, &cid, &scc_of);
        if (back.dist[static_cast<std::size_t>(anchor)] < 0)
            throw std::logic_error("SCC member cannot return to the anchor");
        auto tail = backtrack(back, comp, anchor);
        edges.insert(edges.end(), tail.begin(), tail.end());
    }
    return edges;
}

struct FsaBfs {
    std::vector<std::int32_t> dist, parent_trans, parent_node;
};

FsaBfs fsa_bfs(const Fsa& fsa, const std::vector<StateId>& seeds) {
    FsaBfs b;
    b.dist.assign(fsa.n_states(), -1);
    b.parent_trans.assign(fsa.n_states(), -1);
    b.parent_node.assign(fsa.n_states(), -1);
    std::deque<StateId> queue;
    for (auto s : seeds) {
        if (b.dist[static_cast<std::size_t>(s)] < 0) {
            b.dist[static_cast<std::size_t>(s)] = 0;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        auto u = queue.front();
        queue.pop_front();
        auto begin = fsa.out_begin[static_cast<std::size_t>(u)];
        auto end = fsa.out_begin[static_cast<std::size_t>(u) + 1];
        for (auto idx = begin; idx != end; ++idx) {
            auto& t = fsa.transitions[static_cast<std::size_t>(idx)];
            if (b.dist[static_cast<std::size_t>(t.dst)] < 0) {
                b.dist[static_cast<std::size_t>(t.dst)] = b.dist[static_cast<std::size_t>(u)] + 1;
                b.parent_trans[static_cast<std::size_t>(t.dst)] = idx;
                b.parent_node[static_cast<std::size_t>(t.dst)] = u;
                queue.push_back(t.dst);
            }
        }
    }
    return b;
}

SPath fsa_path(const Fsa& fsa, const FsaBfs& b, StateId to) {
    std::vector<std::int32_t> trans;
    auto cur = to;
    while (b.parent_trans[static_cast<std::size_t>(cur)] >= 0) {
        trans.push_back(b.parent_trans[static_cast<std::size_t>(cur)]);
        cur = b.parent_node[static_cast<std::size_t>(cur)];
    }
    std::reverse(trans.begin(), trans.end());
    SPath p;
    p.states.push_back(fsa.state_name(cur));
    for (auto idx : trans) {
        auto& t = fsa.transitions[static_cast<std::size_t>(idx)];
        p.events.push_back(fsa.event_name(t.event));
        p.states.push_back(fsa.state_name(t.dst));
    }
    return p;
}

/// Shortest transition cycle through anchor, deterministic.
SPath fsa_cycle_at(const Fsa& fsa, StateId anchor) {
    auto b = fsa_bfs(fsa, {anchor});
    std::int32_t best = -1, best_dist = -1;
    for (std::size_t idx = 0; idx < fsa.transitions.size(); ++idx) {
        auto& t = fsa.transitions[idx];
        if (t.dst != anchor) continue;
        if (b.dist[static_cast<std::size_t>(t.src)] < 0) continue;
        if (best < 0 || b.dist[static_cast<std::size_t>(t.src)] < best_dist) {
            best = static_cast<std::int32_t>(idx);
            best_dist = b.dist[static_cast<std::size_t>(t.src)];
        }
    }
    if (best < 0) throw std::logic_error("anchor state lies on no cycle");
    auto& bt = fsa.transitions[static_cast<std::size_t>(best)];
    auto p = fsa_path(fsa, b, bt.src);
    p.events.push_back(fsa.event_name(bt.event));
    p.states.push_back(fsa.state_name(bt.dst));
    return p;
}

/// First on-cycle state reachable from start, by (distance, id).
StateId nearest_cycle_state(const Fsa& fsa, const FsaBfs& b, const std::vector<char>& on_cycle) {
    StateId best = -1;
    for (std::size_t s = 0; s < fsa.n_states(); ++s) {
        if (!on_cycle[s] || b.dist[s] < 0) continue;
        if (best < 0 || b.dist[s] < b.dist[static_cast<std::size_t>(best)])
            best = static_cast<StateId>(s);
    }
    return best;
}

struct SccView {
    std::vector<std::int32_t> of;           ///< scc id per composition state
    std::vector<std::uint64_t> output_mask; ///< per scc: bit j set when some internal
                                            ///< edge's reference event is visible to observer j
};

SccView composition_sccs(const Composition& comp) {
    std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
    pairs.reserve(comp.edges.size());
    for (auto& e : comp.edges) pairs.emplace_back(e.src, e.dst);
    auto csr = detail::make_csr(comp.n(), pairs);
    auto scc = detail::tarjan_scc(csr);
    SccView view;
    view.of = std::move(scc.comp);
    view.output_mask.assign(static_cast<std::size_t>(scc.count), 0);
    for (auto& e : comp.edges) {
        auto cid = view.of[static_cast<std::size_t>(e.src)];
        if (cid != view.of[static_cast<std::size_t>(e.dst)]) continue;
        for (int j = 0; j < comp.L; ++j) {
            if (comp.tracked_output(j, e.evec) >= 0 && comp.alive(e.src, j + 1))
                view.output_mask[static_cast<std::size_t>(cid)] |= 1ull << j;
        }
    }
    return view;
}

bool all_tracked_dead(const Composition& comp, std::int32_t s) {
    for (int j = 1; j <= comp.L; ++j)
        if (comp.alive(s, j)) return false;
    return true;
}

std::optional<std::string> finite_behavior_note(const Fsa& fsa) {
    auto reach = can_reach_cycle(fsa);
    for (auto s : fsa.initial)
        if (reach[static_cast<std::size_t>(s)]) return std::nullopt;
    return "the instance generates only finite behavior, so detection holds vacuously";
}

/// Shared layout for both detection verifiers: the route is rebuilt from the
/// op sequence (composition edges interleaved with observer charges).
Certificate detection_certificate(Property prop, bool central, const Composition& comp,
                                  const Fsa& fsa, const std::vector<std::string>& observer_names,
                                  const SccView& scc, std::int32_t start,
                                  const std::vector<std::pair<std::int32_t, std::int32_t>>& ops) {
    // ops: (edge index, -1) for a move, (-1, j) for a charge at the current state
    Certificate cert;
    cert.property = prop;
    cert.centralized = central;
    cert.observer_names = observer_names;

    auto cur = start;
    std::vector<std::int32_t> pending;
    for (auto& [edge, charge] : ops) {
        if (edge >= 0) {
            pending.push_back(edge);
            cur = comp.edges[static_cast<std::size_t>(edge)].dst;
            continue;
        }
        auto kind = cert.route.empty() ? Certificate::Segment::Kind::Prefix
                                       : Certificate::Segment::Kind::Link;
        auto seg_start = pending.empty()
                             ? cur
                             : comp.edges[static_cast<std::size_t>(pending.front())].src;
        cert.route.push_back({kind, -1, path_from_edges(comp, seg_start, pending)});
        pending.clear();

        auto cyc = cycle_at(comp, scc.of, cur, [&](const Composition::Edge& e) {
            return comp.tracked_output(charge, e.evec) >= 0;
        });
        cert.route.push_back({Certificate::Segment::Kind::Cycle, charge,
                              path_from_edges(comp, cur, cyc)});
    }
    auto seg_start = pending.empty() ? cur : comp.edges[static_cast<std::size_t>(pending.front())].src;
    if (cert.route.empty())
        cert.route.push_back({Certificate::Segment::Kind::Prefix, -1,
                              path_from_edges(comp, seg_start, pending)});
    else
        cert.route.push_back({Certificate::Segment::Kind::Link, -1,
                              path_from_edges(comp, seg_start, pending)});

    auto ref = comp.states[static_cast<std::size_t>(cur)][0];
    auto on_cyc = on_cycle_states(fsa);
    auto b = fsa_bfs(fsa, {ref});
    auto anchor = nearest_cycle_state(fsa, b, on_cyc);
    if (anchor < 0) throw std::logic_error("terminal reference entry reaches no cycle");
    cert.tail_path = fsa_path(fsa, b, anchor);
    cert.tail_cycle = fsa_cycle_at(fsa, anchor);
    return cert;
}

Verdict codetectability_impl(Property prop, bool central, const Fsa& fsa, const ObserverSet& obs) {
    const int L = static_cast<int>(obs.size());
    if (L == 0) throw std::invalid_argument("detection requires at least one observer");
    if (L > 62) throw std::invalid_argument("more than 62 observers are not supported");

    Verdict v{prop, true, std::nullopt, finite_behavior_note(fsa)};
    auto comp = diamond_composition(fsa, obs);
    if (comp.n() == 0) return v;
    if (static_cast<double>(comp.n()) * static_cast<double>(1ull << L) > 1.2e7)
        throw std::invalid_argument("observer count too large for this instance");

    auto scc = composition_sccs(comp);
    auto tail_ok = can_reach_cycle(fsa);
    const std::uint64_t full = (1ull << L) - 1;
    const std::size_t nodes = static_cast<std::size_t>(comp.n()) << L;

    // Least-cost search over (composition state, set of charged observers).
    // Edges cost one step; charging costs nothing at a consensus state (the
    // charged entry equals the reference) and a step-dominating penalty
    // elsewhere, so the reported witness pumps its cycles at consensus states
    // whenever the instance admits that, like the shortest plain route would.
    const std::int64_t kBig = static_cast<std::int64_t>(nodes) + 65;
    const std::int64_t kUnseen = std::numeric_limits<std::int64_t>::max();
    std::vector<std::int64_t> dist(nodes, kUnseen);
    std::vector<std::uint32_t> parent_key(nodes, 0);
    // op per node: -2 unvisited, -1 root, else edge index or -(3+j) for a charge of j
    std::vector<std::int32_t> parent_op(nodes, -2);
    using PqItem = std::pair<std::int64_t, std::uint64_t>;
    std::priority_queue<PqItem, std::vector<PqItem>, std::greater<PqItem>> queue;
    auto key_of = [L](std::int32_t s, std::uint64_t b) {
        return (static_cast<std::uint64_t>(s) << L) | b;
    };
    for (auto s : comp.initial) {
        auto k = key_of(s, 0);
        dist[k] = 0;
        parent_op[k] = -1;
        queue.emplace(0, k);
    }

    auto relax = [&](std::uint64_t from, std::uint64_t to, std::int64_t cost, std::int32_t op) {
        auto nd = dist[from] + cost;
        if (nd < dist[to]) {
            dist[to] = nd;
            parent_key[to] = static_cast<std::uint32_t>(from);
            parent_op[to] = op;
            queue.emplace(nd, to);
        }
    };

    std::int64_t accept_key = -1;
    while (!queue.empty() && accept_key < 0) {
        auto [d, key] = queue.top();
        queue.pop();
        if (d != dist[key]) continue;
        auto s = static_cast<std::int32_t>(key >> L);
        auto b = key & full;

        if (b == full && all_tracked_dead(comp, s) && tail_ok[static_cast<std::size_t>(comp.states[static_cast<std::size_t>(s)][0])]) {
            accept_key = static_cast<std::int64_t>(key);
            break;
        }
        auto mask = scc.output_mask[static_cast<std::size_t>(scc.of[static_cast<std::size_t>(s)])];
        auto& entries = comp.states[static_cast<std::size_t>(s)];
        for (int j = 0; j < L; ++j) {
            if ((b >> j & 1) || !(mask >> j & 1)) continue;
            bool consensus = entries[static_cast<std::size_t>(j) + 1] == entries[0];
            relax(key, key_of(s, b | (1ull << j)), consensus ? 0 : kBig, -(3 + j));
        }
        auto begin = comp.out_begin[static_cast<std::size_t>(s)];
        auto end = comp.out_begin[static_cast<std::size_t>(s) + 1];
        for (auto idx = begin; idx != end; ++idx)
            relax(key, key_of(comp.edges[static_cast<std::size_t>(idx)].dst, b), 1, idx);
    }
    if (accept_key < 0) return v;

    std::vector<std::pair<std::int32_t, std::int32_t>> ops;
    auto cur = static_cast<std::uint64_t>(accept_key);
    while (parent_op[cur] != -1) {
        auto op = parent_op[cur];
        if (op <= -3)
            ops.emplace_back(-1, static_cast<std::int32_t>(-op - 3));
        else
            ops.emplace_back(static_cast<std::int32_t>(op), -1);
        cur = parent_key[cur];
    }
    std::reverse(ops.begin(), ops.end());

    std::vector<std::string> names;
    for (auto& o : obs.observers) names.push_back(o.name);
    v.holds = false;
    v.certificate = detection_certificate(prop, central, comp, fsa, names, scc,
                                          static_cast<std::int32_t>(cur >> L), ops);
    return v;
}

Verdict codiagnosability_impl(Property prop, bool central, const Fsa& fsa, const ObserverSet& obs) {
    if (obs.size() == 0) throw std::invalid_argument("diagnosis requires at least one observer");
    Verdict v{prop, true, std::nullopt, std::nullopt};
    auto dc = composition_for_diagnosis(fsa, obs);
    auto& comp = dc.comp;
    if (comp.n() == 0) return v;

    auto scc = composition_sccs(comp);
    std::vector<char> positive(comp.n(), 0);
    {
        std::vector<char> scc_pos(comp.n(), 0);  // indexed by scc id (bounded by n)
        for (auto& e : comp.edges) {
            if (scc.of[static_cast<std::size_t>(e.src)] != scc.of[static_cast<std::size_t>(e.dst)]) continue;
            if (comp.evecs[static_cast<std::size_t>(e.evec)][0] != Composition::kEps)
                scc_pos[static_cast<std::size_t>(scc.of[static_cast<std::size_t>(e.src)])] = 1;
        }
        for (std::size_t s = 0; s < comp.n(); ++s)
            positive[s] = scc_pos[static_cast<std::size_t>(scc.of[s])];
    }
    // states that can reach a positive-cycle state
    std::vector<char> good(positive.begin(), positive.end());
    {
        std::vector<std::vector<std::int32_t>> rev(comp.n());
        for (auto& e : comp.edges) rev[static_cast<std::size_t>(e.dst)].push_back(e.src);
        std::deque<std::int32_t> queue;
        for (std::size_t s = 0; s < comp.n(); ++s)
            if (good[s]) queue.push_back(static_cast<std::int32_t>(s));
        while (!queue.empty()) {
            auto s = queue.front();
            queue.pop_front();
            for (auto p : rev[static_cast<std::size_t>(s)]) {
                if (!good[static_cast<std::size_t>(p)]) {
                    good[static_cast<std::size_t>(p)] = 1;
                    queue.push_back(p);
                }
            }
        }
    }

    std::int32_t fault_edge = -1;
    for (std::size_t idx = 0; idx < comp.edges.size(); ++idx) {
        auto& e = comp.edges[idx];
        auto e0 = comp.evecs[static_cast<std::size_t>(e.evec)][0];
        if (e0 == Composition::kEps || !fsa.is_faulty(e0)) continue;
        if (!good[static_cast<std::size_t>(e.dst)]) continue;
        fault_edge = static_cast<std::int32_t>(idx);
        break;
    }
    if (fault_edge < 0) return v;

    auto& fe = comp.edges[static_cast<std::size_t>(fault_edge)];
    auto init_bfs = comp_bfs(comp, comp.initial);
    auto prefix = backtrack(init_bfs, comp, fe.src);
    auto post_bfs = comp_bfs(comp, {fe.dst});
    std::int32_t anchor = -1;
    for (std::size_t s = 0; s < comp.n(); ++s) {
        if (!positive[s] || post_bfs.dist[s] < 0) continue;
        if (anchor < 0 || post_bfs.dist[s] < post_bfs.dist[static_cast<std::size_t>(anchor)])
            anchor = static_cast<std::int32_t>(s);
    }
    if (anchor < 0) throw std::logic_error("fault target lost its positive cycle");
    auto link = backtrack(post_bfs, comp, anchor);
    auto cyc = cycle_at(comp, scc.of, anchor, [&](const Composition::Edge& e) {
        return comp.evecs[static_cast<std::size_t>(e.evec)][0] != Composition::kEps;
    });

    Certificate cert;
    cert.property = prop;
    cert.centralized = central;
    for (auto& o : obs.observers) cert.observer_names.push_back(o.name);
    cert.route.push_back({Certificate::Segment::Kind::Prefix, -1,
                          path_from_edges(comp, bfs_origin(init_bfs, fe.src), prefix)});
    cert.route.push_back({Certificate::Segment::Kind::Fault, -1,
                          path_from_edges(comp, fe.src, {fault_edge})});
    cert.route.push_back({Certificate::Segment::Kind::Link, -1, path_from_edges(comp, fe.dst, link)});
    cert.route.push_back({Certificate::Segment::Kind::Cycle, -1, path_from_edges(comp, anchor, cyc)});
    v.holds = false;
    v.certificate = std::move(cert);
    return v;
}

Verdict copredictability_impl(Property prop, bool central, const Fsa& fsa, const ObserverSet& obs) {
    if (obs.size() == 0) throw std::invalid_argument("prediction requires at least one observer");
    Verdict v{prop, true, std::nullopt, std::nullopt};
    auto dc = composition_for_prediction(fsa, obs);
    auto& comp = dc.comp;
    auto& normal = dc.normal;
    if (comp.n() == 0) return v;

    auto reach_cycle = can_reach_cycle(normal);
    // distance from each state of the normal automaton to its nearest cycle
    // state, so the witness picked below carries the shortest observer tails
    std::vector<std::int64_t> cycle_dist(normal.n_states(), -1);
    {
        std::vector<std::vector<std::int32_t>> rev(normal.n_states());
        for (auto& t : normal.transitions) rev[static_cast<std::size_t>(t.dst)].push_back(t.src);
        auto on_cyc = on_cycle_states(normal);
        std::deque<std::int32_t> queue;
        for (std::size_t s = 0; s < normal.n_states(); ++s) {
            if (!on_cyc[s]) continue;
            cycle_dist[s] = 0;
            queue.push_back(static_cast<std::int32_t>(s));
        }
        while (!queue.empty()) {
            auto s = queue.front();
            queue.pop_front();
            for (auto p : rev[static_cast<std::size_t>(s)]) {
                if (cycle_dist[static_cast<std::size_t>(p)] >= 0) continue;
                cycle_dist[static_cast<std::size_t>(p)] = cycle_dist[static_cast<std::size_t>(s)] + 1;
                queue.push_back(p);
            }
        }
    }
    // first faulty transition out of each state of the original automaton
    std::vector<std::int32_t> fault_at(fsa.n_states(), -1);
    for (std::size_t idx = 0; idx < fsa.transitions.size(); ++idx) {
        auto& t = fsa.transitions[idx];
        if (fsa.is_faulty(t.event) && fault_at[static_cast<std::size_t>(t.src)] < 0)
            fault_at[static_cast<std::size_t>(t.src)] = static_cast<std::int32_t>(idx);
    }

    std::int32_t witness = -1;
    std::int64_t witness_tails = 0;
    for (std::size_t s = 0; s < comp.n(); ++s) {
        auto& vec = comp.states[s];
        if (fault_at[static_cast<std::size_t>(vec[0])] < 0) continue;
        bool ok = true;
        std::int64_t tails = 0;
        for (int j = 1; j <= comp.L && ok; ++j) {
            auto entry = vec[static_cast<std::size_t>(j)];
            ok = reach_cycle[static_cast<std::size_t>(entry)];
            if (ok) tails += cycle_dist[static_cast<std::size_t>(entry)];
        }
        if (!ok) continue;
        if (witness < 0 || tails < witness_tails) {
            witness = static_cast<std::int32_t>(s);
            witness_tails = tails;
        }
    }
    if (witness < 0) return v;

    auto init_bfs = comp_bfs(comp, comp.initial);
    auto prefix = backtrack(init_bfs, comp, witness);

    Certificate cert;
    cert.property = prop;
    cert.centralized = central;
    for (auto& o : obs.observers) cert.observer_names.push_back(o.name);
    cert.route.push_back({Certificate::Segment::Kind::Prefix, -1,
                          path_from_edges(comp, bfs_origin(init_bfs, witness), prefix)});
    auto ref_entry = comp.states[static_cast<std::size_t>(witness)][0];
    auto& ft = fsa.transitions[static_cast<std::size_t>(fault_at[static_cast<std::size_t>(ref_entry)])];
    cert.fault_transition = {fsa.state_name(ft.src), fsa.event_name(ft.event), fsa.state_name(ft.dst)};

    auto on_cyc = on_cycle_states(normal);
    for (int j = 0; j < comp.L; ++j) {
        auto entry = comp.states[static_cast<std::size_t>(witness)][static_cast<std::size_t>(j) + 1];
        auto b = fsa_bfs(normal, {entry});
        auto anchor = nearest_cycle_state(normal, b, on_cyc);
        if (anchor < 0) throw std::logic_error("tracked entry lost its cycle");
        cert.observer_tails.push_back({j, fsa_path(normal, b, anchor), fsa_cycle_at(normal, anchor)});
    }
    v.holds = false;
    v.certificate = std::move(cert);
    return v;
}

}  // namespace

Verdict verify_co_detectability(const Fsa& fsa, const ObserverSet& obs) {
    return codetectability_impl(Property::co_detectability, false, fsa, obs);
}

Verdict verify_strong_detectability(const Fsa& fsa) {
    // two-phase search instead of the subset walk: reach a state of an
    // output-positive SCC, then reach a terminal with the tracked copy dead
    auto obs = full_observer(fsa);
    Verdict v{Property::strong_detectability, true, std::nullopt, finite_behavior_note(fsa)};
    auto comp = diamond_composition(fsa, obs);
    if (comp.n() == 0) return v;
    auto scc = composition_sccs(comp);
    auto tail_ok = can_reach_cycle(fsa);

    std::vector<std::int32_t> anchors;
    for (std::size_t s = 0; s < comp.n(); ++s)
        if (scc.output_mask[static_cast<std::size_t>(scc.of[s])] & 1)
            anchors.push_back(static_cast<std::int32_t>(s));

    auto init_bfs = comp_bfs(comp, comp.initial);
    std::vector<std::int32_t> reachable_anchors;
    for (auto a : anchors)
        if (init_bfs.dist[static_cast<std::size_t>(a)] >= 0) reachable_anchors.push_back(a);
    if (reachable_anchors.empty()) return v;

    auto from_anchors = comp_bfs(comp, reachable_anchors);
    std::int32_t terminal = -1;
    for (std::size_t s = 0; s < comp.n(); ++s) {
        if (from_anchors.dist[s] < 0 || !all_tracked_dead(comp, static_cast<std::int32_t>(s))) continue;
        if (!tail_ok[static_cast<std::size_t>(comp.states[s][0])]) continue;
        if (terminal < 0 || from_anchors.dist[s] < from_anchors.dist[static_cast<std::size_t>(terminal)])
            terminal = static_cast<std::int32_t>(s);
    }
    if (terminal < 0) return v;

    auto anchor = bfs_origin(from_anchors, terminal);
    std::vector<std::pair<std::int32_t, std::int32_t>> ops;
    for (auto e : backtrack(init_bfs, comp, anchor)) ops.emplace_back(e, -1);
    ops.emplace_back(-1, 0);
    for (auto e : backtrack(from_anchors, comp, terminal)) ops.emplace_back(e, -1);

    v.holds = false;
    v.certificate = detection_certificate(Property::strong_detectability, true, comp, fsa, {"global"},
                                          scc, bfs_origin(init_bfs, anchor), ops);
    return v;
}

Verdict verify_co_diagnosability(const Fsa& fsa, const ObserverSet& obs) {
    return codiagnosability_impl(Property::co_diagnosability, false, fsa, obs);
}

Verdict verify_diagnosability(const Fsa& fsa) {
    return codiagnosability_impl(Property::diagnosability, true, fsa, full_observer(fsa));
}

Verdict verify_co_predictability(const Fsa& fsa, const ObserverSet& obs) {
    return copredictability_impl(Property::co_predictability, false, fsa, obs);
}

Verdict verify_predictability(const Fsa& fsa) {
    return copredictability_impl(Property::predictability, true, fsa, full_observer(fsa));
}

Verdict verify_property(Property p, const Fsa& fsa, const ObserverSet* obs) {
    if (centralized(p)) {
        switch (p) {
            case Property::strong_detectability: return verify_strong_detectability(fsa);
            case Property::diagnosability: return verify_diagnosability(fsa);
            default: return verify_predictability(fsa);
        }
    }
    if (!obs || obs->size() == 0)
        throw std::invalid_argument("property '" + property_name(p) + "' requires observers");
    switch (p) {
        case Property::co_detectability: return verify_co_detectability(fsa, *obs);
        case Property::co_diagnosability: return verify_co_diagnosability(fsa, *obs);
        default: return verify_co_predictability(fsa, *obs);
    }
}

namespace {

std::vector<std::string> ref_events_of(const std::vector<std::vector<std::string>>& steps) {
    std::vector<std::string> out;
    for (auto& ev : steps)
        if (!ev[0].empty()) out.push_back(ev[0]);
    return out;
}

}  // namespace

PumpEvidence pump_certificate(const Fsa& fsa, const ObserverSet* obs_in, const Certificate& cert,
                              int k) {
    if (k < 0) throw std::invalid_argument("pump count must be non-negative");
    ObserverSet obs = cert.centralized ? full_observer(fsa) : (obs_in ? *obs_in : ObserverSet{});
    if (obs.size() != cert.observer_names.size())
        throw std::invalid_argument("certificate does not match the observer set");
    for (std::size_t i = 0; i < obs.size(); ++i)
        if (!cert.centralized && obs.observers[i].name != cert.observer_names[i])
            throw std::invalid_argument("certificate names observer '" + cert.observer_names[i] +
                                        "', got '" + obs.observers[i].name + "'");
    const int L = static_cast<int>(obs.size());

    PumpEvidence ev;
    ev.k = k;

    auto is_detection = cert.property == Property::strong_detectability ||
                        cert.property == Property::co_detectability;
    auto is_diagnosis = cert.property == Property::diagnosability ||
                        cert.property == Property::co_diagnosability;

    if (is_detection || is_diagnosis) {
        // pumped step stream over the route
        std::vector<std::vector<std::string>> steps;
        std::vector<int> charge_order;
        for (auto& seg : cert.route) {
            int reps = seg.kind == Certificate::Segment::Kind::Cycle ? k : 1;
            if (seg.kind == Certificate::Segment::Kind::Cycle && seg.observer >= 0)
                charge_order.push_back(seg.observer);
            for (int r = 0; r < reps; ++r)
                for (auto& e : seg.path.events) steps.push_back(e);
        }
        ev.word = ref_events_of(steps);

        if (is_detection) {
            // cut each observer's output just before its entry dies
            std::vector<std::size_t> death(static_cast<std::size_t>(L), steps.size());
            for (std::size_t i = 0; i < steps.size(); ++i) {
                for (int j = 0; j < L; ++j) {
                    if (steps[i][static_cast<std::size_t>(j) + 1] == kDeadToken &&
                        death[static_cast<std::size_t>(j)] == steps.size())
                        death[static_cast<std::size_t>(j)] = i;
                }
            }
            for (auto j : charge_order) {
                PumpEvidence::PerObserver po;
                po.observer = obs.observers[static_cast<std::size_t>(j)].name;
                std::vector<std::string> prefix_events;
                for (std::size_t i = 0; i < death[static_cast<std::size_t>(j)]; ++i)
                    if (!steps[i][0].empty()) prefix_events.push_back(steps[i][0]);
                auto lab = observer_labeling(fsa, obs, static_cast<std::size_t>(j));
                po.sigma = project(fsa, lab, prefix_events);
                for (auto s : current_state_estimate(fsa, lab, po.sigma))
                    po.estimate.push_back(fsa.state_name(s));
                ev.observers.push_back(std::move(po));
            }
        } else {
            for (int j = 0; j < L; ++j) {
                PumpEvidence::PerObserver po;
                po.observer = obs.observers[static_cast<std::size_t>(j)].name;
                for (auto& st : steps) {
                    auto& e = st[static_cast<std::size_t>(j) + 1];
                    if (!e.empty() && e != kDeadToken) po.run.push_back(e);
                }
                ev.observers.push_back(std::move(po));
            }
        }
        return ev;
    }

    // prediction
    if (cert.route.size() != 1 || !cert.fault_transition)
        throw std::invalid_argument("prediction certificate lacks its prefix or fault transition");
    auto& steps = cert.route.front().path.events;
    for (auto& st : steps)
        if (!st[0].empty()) ev.word.push_back(st[0]);
    ev.fault_event = (*cert.fault_transition)[1];
    for (auto& tail : cert.observer_tails) {
        PumpEvidence::PerObserver po;
        po.observer = obs.observers.at(static_cast<std::size_t>(tail.observer)).name;
        for (auto& st : steps) {
            auto& e = st[static_cast<std::size_t>(tail.observer) + 1];
            if (!e.empty() && e != kDeadToken) po.run.push_back(e);
        }
        po.continuation = tail.path.events;
        if (tail.cycle.events.empty())
            throw std::invalid_argument("prediction certificate with an empty cycle");
        do {
            po.continuation.insert(po.continuation.end(), tail.cycle.events.begin(),
                                   tail.cycle.events.end());
        } while (po.continuation.size() < static_cast<std::size_t>(k));
        ev.observers.push_back(std::move(po));
    }
    return ev;
}

}  // namespace ccdes
