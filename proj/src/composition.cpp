#include "ccdes/composition.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "ccdes/detail/graph.hpp"

namespace ccdes {

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<std::int32_t>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (auto x : v) {
            h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(x));
            h *= 1099511628211ull;
        }
        return h;
    }
};

/// A tracked component's move under its labeling: emitted label, own event, target.
struct Move {
    std::int32_t label;
    std::int32_t event;
    std::int32_t dst;
    auto operator<=>(const Move&) const = default;
};

struct Builder {
    const ComponentView& ref;
    const std::vector<ComponentView>& tracked;
    bool diamond;
    int L;
    Composition c;

    std::map<std::string, std::int32_t> label_ids;
    std::vector<std::vector<std::vector<Move>>> moves;  ///< [comp][state], sorted, visible only
    std::vector<std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>>> eps_moves;
    std::vector<std::vector<std::int32_t>> visible_js;  ///< per ref event: tracked ids, ascending

    std::unordered_map<std::vector<std::int32_t>, std::int32_t, VecHash> state_ids;
    std::unordered_map<std::vector<std::int32_t>, std::int32_t, VecHash> evec_ids;

    Builder(const ComponentView& r, const std::vector<ComponentView>& t, bool dia)
        : ref(r), tracked(t), diamond(dia), L(static_cast<int>(t.size())) {}

    std::int32_t intern_label(const std::string& s) {
        auto [it, inserted] = label_ids.try_emplace(s, static_cast<std::int32_t>(c.labels.size()));
        if (inserted) c.labels.push_back(s);
        return it->second;
    }

    const ComponentView& comp(int i) const { return i == 0 ? ref : tracked[static_cast<std::size_t>(i - 1)]; }

    void prepare() {
        c.diamond = diamond;
        c.L = L;
        for (int i = 0; i <= L; ++i) {
            auto& v = comp(i);
            c.component_names.push_back(v.name);
            c.comp_states.push_back(v.fsa->states);
            std::vector<std::string> evs;
            for (auto& e : v.fsa->events) evs.push_back(e.name);
            c.comp_events.push_back(std::move(evs));

            std::vector<std::int32_t> lab(v.fsa->n_events(), -1);
            for (std::size_t e = 0; e < v.fsa->n_events(); ++e) {
                if (auto& l = v.labeling.of(static_cast<EventId>(e))) lab[e] = intern_label(*l);
            }
            c.event_label.push_back(std::move(lab));
        }
        for (int j = 0; j < L; ++j) {
            auto& v = tracked[static_cast<std::size_t>(j)];
            std::vector<std::int32_t> bl(ref.fsa->n_events(), -1);
            for (std::size_t e = 0; e < ref.fsa->n_events(); ++e) {
                auto own = v.fsa->event_id(ref.fsa->event_name(static_cast<EventId>(e)));
                if (own >= 0) bl[e] = c.event_label[static_cast<std::size_t>(j + 1)][static_cast<std::size_t>(own)];
            }
            c.base_label.push_back(std::move(bl));
        }
        visible_js.assign(ref.fsa->n_events(), {});
        for (std::size_t e = 0; e < ref.fsa->n_events(); ++e) {
            for (int j = 0; j < L; ++j)
                if (c.base_label[static_cast<std::size_t>(j)][e] >= 0) visible_js[e].push_back(j);
        }

        moves.resize(static_cast<std::size_t>(L) + 1);
        eps_moves.resize(static_cast<std::size_t>(L) + 1);
        for (int i = 0; i <= L; ++i) {
            auto& v = comp(i);
            auto& mv = moves[static_cast<std::size_t>(i)];
            auto& ev = eps_moves[static_cast<std::size_t>(i)];
            mv.resize(v.fsa->n_states());
            ev.resize(v.fsa->n_states());
            for (std::size_t s = 0; s < v.fsa->n_states(); ++s) {
                for (auto& t : v.fsa->out(static_cast<StateId>(s))) {
                    auto lab = c.event_label[static_cast<std::size_t>(i)][static_cast<std::size_t>(t.event)];
                    if (lab < 0)
                        ev[s].emplace_back(t.event, t.dst);
                    else
                        mv[s].push_back({lab, t.event, t.dst});
                }
                std::sort(mv[s].begin(), mv[s].end());
            }
        }

        double bound = static_cast<double>(ref.fsa->n_states());
        for (int j = 0; j < L; ++j) {
            auto sz = static_cast<double>(tracked[static_cast<std::size_t>(j)].fsa->n_states());
            bound *= diamond ? sz + 1.0 : sz;
        }
        c.state_bound = bound;
    }

    std::int32_t intern_state(const std::vector<std::int32_t>& v, std::deque<std::int32_t>& queue) {
        auto [it, inserted] = state_ids.try_emplace(v, static_cast<std::int32_t>(c.states.size()));
        if (inserted) {
            c.states.push_back(v);
            queue.push_back(it->second);
        }
        return it->second;
    }

    std::int32_t intern_evec(const std::vector<std::int32_t>& v) {
        auto [it, inserted] = evec_ids.try_emplace(v, static_cast<std::int32_t>(c.evecs.size()));
        if (inserted) c.evecs.push_back(v);
        return it->second;
    }

    /// Plain-product moves of the sub-product restricted to the active tracked
    /// components. Inactive entries stay silent in the emitted vectors.
    void gen_moves(const std::vector<std::int32_t>& v, const std::vector<char>& active,
                   std::vector<std::pair<std::vector<std::int32_t>, std::vector<std::int32_t>>>& out) {
        const std::size_t width = static_cast<std::size_t>(L) + 1;
        std::vector<std::int32_t> evec(width, Composition::kEps);
        std::vector<std::int32_t> dst(v);

        auto quiet_under_active = [&](EventId e) {
            for (auto j : visible_js[static_cast<std::size_t>(e)])
                if (active[static_cast<std::size_t>(j)]) return false;
            return true;
        };

        // rule (a), reference alone
        for (auto& t : ref.fsa->out(v[0])) {
            if (!quiet_under_active(t.event)) continue;
            evec[0] = t.event;
            dst[0] = t.dst;
            out.emplace_back(evec, dst);
            evec[0] = Composition::kEps;
            dst[0] = v[0];
        }
        // rule (a), one tracked component alone
        for (int j = 0; j < L; ++j) {
            if (!active[static_cast<std::size_t>(j)]) continue;
            auto idx = static_cast<std::size_t>(j) + 1;
            for (auto& [e, y] : eps_moves[idx][static_cast<std::size_t>(v[idx])]) {
                evec[idx] = e;
                dst[idx] = y;
                out.emplace_back(evec, dst);
                evec[idx] = Composition::kEps;
                dst[idx] = v[idx];
            }
        }
        // rule (b)
        std::vector<int> vis;
        std::vector<std::pair<std::size_t, std::size_t>> ranges;  // per vis entry into moves
        for (auto& t : ref.fsa->out(v[0])) {
            vis.clear();
            for (auto j : visible_js[static_cast<std::size_t>(t.event)])
                if (active[static_cast<std::size_t>(j)]) vis.push_back(j);
            if (vis.empty()) continue;
            ranges.clear();
            bool blocked = false;
            for (auto j : vis) {
                auto idx = static_cast<std::size_t>(j) + 1;
                auto req = c.base_label[static_cast<std::size_t>(j)][static_cast<std::size_t>(t.event)];
                auto& mv = moves[idx][static_cast<std::size_t>(v[idx])];
                auto lo = std::lower_bound(mv.begin(), mv.end(), Move{req, 0, 0},
                                           [](const Move& a, const Move& b) { return a.label < b.label; });
                auto hi = std::upper_bound(mv.begin(), mv.end(), Move{req, 0, 0},
                                           [](const Move& a, const Move& b) { return a.label < b.label; });
                if (lo == hi) {
                    blocked = true;
                    break;
                }
                ranges.emplace_back(static_cast<std::size_t>(lo - mv.begin()),
                                    static_cast<std::size_t>(hi - mv.begin()));
            }
            if (blocked) continue;

            evec[0] = t.event;
            dst[0] = t.dst;
            std::vector<std::size_t> pick(vis.size());
            for (std::size_t i = 0; i < vis.size(); ++i) pick[i] = ranges[i].first;
            while (true) {
                for (std::size_t i = 0; i < vis.size(); ++i) {
                    auto idx = static_cast<std::size_t>(vis[i]) + 1;
                    auto& m = moves[idx][static_cast<std::size_t>(v[idx])][pick[i]];
                    evec[idx] = m.event;
                    dst[idx] = m.dst;
                }
                out.emplace_back(evec, dst);
                // odometer, last position fastest
                std::size_t i = vis.size();
                while (i > 0) {
                    --i;
                    if (++pick[i] < ranges[i].second) break;
                    pick[i] = ranges[i].first;
                    if (i == 0) {
                        i = vis.size() + 1;  // finished
                        break;
                    }
                }
                if (i == vis.size() + 1) break;
            }
            for (auto j : vis) {
                auto idx = static_cast<std::size_t>(j) + 1;
                evec[idx] = Composition::kEps;
                dst[idx] = v[idx];
            }
            evec[0] = Composition::kEps;
            dst[0] = v[0];
        }
    }

    void build() {
        prepare();
        const std::size_t width = static_cast<std::size_t>(L) + 1;

        // initial vectors: lexicographic product of the components' initial sets
        std::deque<std::int32_t> queue;
        std::vector<std::vector<std::int32_t>> inits{{}};
        for (int i = 0; i <= L; ++i) {
            std::vector<std::vector<std::int32_t>> next;
            for (auto& prefix : inits) {
                for (auto s : comp(i).fsa->initial) {
                    auto ext = prefix;
                    ext.push_back(s);
                    next.push_back(std::move(ext));
                }
            }
            inits = std::move(next);
        }
        for (auto& v : inits) c.initial.push_back(intern_state(v, queue));

        std::vector<std::pair<std::vector<std::int32_t>, std::vector<std::int32_t>>> plain;
        while (!queue.empty()) {
            auto sid = queue.front();
            queue.pop_front();
            auto v = c.states[static_cast<std::size_t>(sid)];  // copy: c.states may reallocate

            bool some_dead = false, some_disagree = false;
            for (int j = 1; j <= L; ++j) {
                auto x = v[static_cast<std::size_t>(j)];
                if (x == Composition::kDead)
                    some_dead = true;
                else if (x != v[0])
                    some_disagree = true;
            }

            plain.clear();
            if (!some_dead) {
                std::vector<char> all(static_cast<std::size_t>(L), 1);
                gen_moves(v, all, plain);
                for (auto& [evec, dst] : plain)
                    c.edges.push_back({sid, intern_evec(evec), intern_state(dst, queue)});
            }
            if (diamond && (some_dead || some_disagree)) {
                std::vector<char> active(static_cast<std::size_t>(L), 0);
                bool kills_alive = false;
                for (int j = 0; j < L; ++j) {
                    auto x = v[static_cast<std::size_t>(j) + 1];
                    if (x != Composition::kDead && x == v[0])
                        active[static_cast<std::size_t>(j)] = 1;
                    else if (x != Composition::kDead)
                        kills_alive = true;
                }
                plain.clear();
                gen_moves(v, active, plain);
                // the all-silent sub-move; kept only when it kills something alive
                if (kills_alive)
                    plain.emplace_back(std::vector<std::int32_t>(width, Composition::kEps), v);
                for (auto& [evec, dst] : plain) {
                    auto kvec = evec;
                    auto kdst = dst;
                    for (int j = 0; j < L; ++j) {
                        if (active[static_cast<std::size_t>(j)]) continue;
                        kvec[static_cast<std::size_t>(j) + 1] = Composition::kKill;
                        kdst[static_cast<std::size_t>(j) + 1] = Composition::kDead;
                    }
                    c.edges.push_back({sid, intern_evec(kvec), intern_state(kdst, queue)});
                }
            }
        }
        finalize();
    }

    void finalize() {
        auto& c2 = c;
        std::sort(c.edges.begin(), c.edges.end(),
                  [&c2](const Composition::Edge& a, const Composition::Edge& b) {
                      if (a.src != b.src) return a.src < b.src;
                      auto& ea = c2.evecs[static_cast<std::size_t>(a.evec)];
                      auto& eb = c2.evecs[static_cast<std::size_t>(b.evec)];
                      if (ea != eb) return ea < eb;
                      return c2.states[static_cast<std::size_t>(a.dst)] < c2.states[static_cast<std::size_t>(b.dst)];
                  });
        for (std::size_t i = 1; i < c.edges.size(); ++i) {
            auto& a = c.edges[i - 1];
            auto& b = c.edges[i];
            if (a.src == b.src && a.evec == b.evec && a.dst == b.dst)
                throw std::logic_error("composition produced a duplicate transition");
        }
        for (auto& e : c.edges) {
            auto& src = c.states[static_cast<std::size_t>(e.src)];
            auto& dst = c.states[static_cast<std::size_t>(e.dst)];
            for (int j = 1; j <= c.L; ++j) {
                if (src[static_cast<std::size_t>(j)] == Composition::kDead &&
                    dst[static_cast<std::size_t>(j)] != Composition::kDead)
                    throw std::logic_error("composition revived a dead entry");
            }
        }
        c.out_begin.assign(c.n() + 1, 0);
        for (auto& e : c.edges) c.out_begin[static_cast<std::size_t>(e.src) + 1]++;
        for (std::size_t i = 1; i <= c.n(); ++i) c.out_begin[i] += c.out_begin[i - 1];
    }
};

}  // namespace

ComponentView as_component(const Fsa& fsa, std::string name) {
    return {&fsa, global_labeling(fsa), std::move(name)};
}

ComponentView observed_component(const Fsa& fsa, const ObserverSet& obs, std::size_t i) {
    return {&fsa, observer_labeling(fsa, obs, i), obs.observers.at(i).name};
}

Composition concurrent_composition(const ComponentView& reference,
                                   const std::vector<ComponentView>& tracked) {
    if (tracked.empty())
        throw std::invalid_argument("composition requires at least one tracked component");
    Builder b(reference, tracked, false);
    b.build();
    return std::move(b.c);
}

Composition diamond_composition(const Fsa& fsa, const ObserverSet& obs) {
    if (obs.size() == 0)
        throw std::invalid_argument("composition requires at least one observer");
    std::vector<ComponentView> tracked;
    for (std::size_t i = 0; i < obs.size(); ++i) tracked.push_back(observed_component(fsa, obs, i));
    ComponentView reference = as_component(fsa, "ref");
    Builder b(reference, tracked, true);
    b.build();
    return std::move(b.c);
}

DiagnosisComposition composition_for_diagnosis(const Fsa& fsa, const ObserverSet& obs) {
    if (obs.size() == 0)
        throw std::invalid_argument("composition requires at least one observer");
    DiagnosisComposition out{normal_subautomaton(fsa), {}};
    std::vector<ComponentView> tracked;
    for (std::size_t i = 0; i < obs.size(); ++i)
        tracked.push_back(observed_component(out.normal, obs, i));
    ComponentView reference = as_component(fsa, "ref");
    Builder b(reference, tracked, false);
    b.build();
    out.comp = std::move(b.c);
    return out;
}

DiagnosisComposition composition_for_prediction(const Fsa& fsa, const ObserverSet& obs) {
    if (obs.size() == 0)
        throw std::invalid_argument("composition requires at least one observer");
    DiagnosisComposition out{normal_subautomaton(fsa), {}};
    std::vector<ComponentView> tracked;
    for (std::size_t i = 0; i < obs.size(); ++i)
        tracked.push_back(observed_component(out.normal, obs, i));
    ComponentView reference = as_component(out.normal, "ref");
    Builder b(reference, tracked, false);
    b.build();
    out.comp = std::move(b.c);
    return out;
}

std::string Composition::render_state(std::int32_t s) const {
    std::ostringstream os;
    auto& v = states[static_cast<std::size_t>(s)];
    for (int i = 0; i <= L; ++i) {
        if (i) os << '|';
        auto x = v[static_cast<std::size_t>(i)];
        if (x == kDead)
            os << kDeadToken;
        else
            os << comp_states[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)];
    }
    return os.str();
}

std::string Composition::render_evec(std::int32_t e) const {
    std::ostringstream os;
    auto& v = evecs[static_cast<std::size_t>(e)];
    os << '(';
    for (int i = 0; i <= L; ++i) {
        if (i) os << ',';
        auto x = v[static_cast<std::size_t>(i)];
        if (x == kEps)
            os << "ε";
        else if (x == kKill)
            os << kDeadToken;
        else
            os << comp_events[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)];
    }
    os << ')';
    return os.str();
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out.push_back('\\');
        out.push_back(ch);
    }
    return out;
}

}  // namespace

std::string export_dot(const Fsa& fsa) {
    std::ostringstream os;
    os << "digraph fsa {\n  rankdir=LR;\n";
    for (std::size_t s = 0; s < fsa.n_states(); ++s) {
        os << "  \"" << dot_escape(fsa.states[s]) << "\"";
        if (fsa.is_initial(static_cast<StateId>(s))) os << " [penwidth=2]";
        os << ";\n";
    }
    for (auto& t : fsa.transitions) {
        auto& name = fsa.event_name(t.event);
        std::string label = name;
        auto& l = fsa.label(t.event);
        if (!l)
            label += "/ε";
        else if (*l != name)
            label += "/" + *l;
        os << "  \"" << dot_escape(fsa.state_name(t.src)) << "\" -> \""
           << dot_escape(fsa.state_name(t.dst)) << "\" [label=\"" << dot_escape(label) << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

std::string export_dot(const Composition& comp) {
    std::ostringstream os;
    os << "digraph composition {\n  rankdir=LR;\n";
    for (std::size_t s = 0; s < comp.n(); ++s) {
        os << "  s" << s << " [label=\"" << dot_escape(comp.render_state(static_cast<std::int32_t>(s)))
           << "\"";
        if (std::binary_search(comp.initial.begin(), comp.initial.end(), static_cast<std::int32_t>(s)))
            os << ", penwidth=2";
        os << "];\n";
    }
    for (auto& e : comp.edges) {
        os << "  s" << e.src << " -> s" << e.dst << " [label=\""
           << dot_escape(comp.render_evec(e.evec)) << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

std::string composition_to_json(const Composition& comp) {
    std::ostringstream os;
    auto entry_name = [&](int i, std::int32_t x) -> std::string {
        if (x == Composition::kDead || x == Composition::kKill) return kDeadToken;
        return comp.comp_states[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)];
    };
    auto quote = [](const std::string& s) {
        std::string out = "\"";
        for (char ch : s) {
            if (ch == '"' || ch == '\\') out.push_back('\\');
            out.push_back(ch);
        }
        return out + "\"";
    };
    os << "{\n  \"kind\": " << (comp.diamond ? "\"diamond\"" : "\"plain\"") << ",\n  \"components\": [";
    for (int i = 0; i <= comp.L; ++i) os << (i ? ", " : "") << quote(comp.component_names[static_cast<std::size_t>(i)]);
    os << "],\n  \"states\": [";
    for (std::size_t s = 0; s < comp.n(); ++s) {
        os << (s ? ", " : "") << "[";
        for (int i = 0; i <= comp.L; ++i)
            os << (i ? ", " : "") << quote(entry_name(i, comp.states[s][static_cast<std::size_t>(i)]));
        os << "]";
    }
    os << "],\n  \"initial\": [";
    for (std::size_t i = 0; i < comp.initial.size(); ++i) os << (i ? ", " : "") << comp.initial[i];
    os << "],\n  \"transitions\": [";
    for (std::size_t k = 0; k < comp.edges.size(); ++k) {
        auto& e = comp.edges[k];
        os << (k ? ", " : "") << "[" << e.src << ", [";
        auto& v = comp.evecs[static_cast<std::size_t>(e.evec)];
        for (int i = 0; i <= comp.L; ++i) {
            os << (i ? ", " : "");
            auto x = v[static_cast<std::size_t>(i)];
            if (x == Composition::kEps)
                os << "\"\"";
            else if (x == Composition::kKill)
                os << quote(kDeadToken);
            else
                os << quote(comp.comp_events[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)]);
        }
        os << "], " << e.dst << "]";
    }
    os << "]\n}\n";
    return os.str();
}

namespace {

/// Re-derives, straight from the views, what a tracked labeling emits for a
/// reference event (nullopt when silent or absent).
std::optional<std::string> tracked_view_of_ref_event(const ComponentView& view, const Fsa& ref,
                                                     EventId e) {
    auto own = view.fsa->event_id(ref.event_name(e));
    if (own < 0) return std::nullopt;
    return view.labeling.of(own);
}

}  // namespace

InvariantReport check_composition_invariants(const Composition& comp, const ComponentView& reference,
                                             const std::vector<ComponentView>& tracked) {
    InvariantReport rep;
    auto violation = [&](std::string msg) {
        rep.ok = false;
        if (rep.violations.size() < 50) rep.violations.push_back(std::move(msg));
    };
    const int L = comp.L;
    if (static_cast<std::size_t>(L) != tracked.size()) {
        violation("tracked component count mismatch");
        return rep;
    }

    if (static_cast<double>(comp.n()) > comp.state_bound + 0.5)
        violation("state count exceeds the product bound");

    // initial vectors are exactly the product of the components' initial sets
    {
        std::size_t expect = reference.fsa->initial.size();
        for (auto& t : tracked) expect *= t.fsa->initial.size();
        if (comp.initial.size() != expect) violation("initial set is not the full product");
        for (auto id : comp.initial) {
            auto& v = comp.states[static_cast<std::size_t>(id)];
            if (!reference.fsa->is_initial(v[0])) violation("initial vector with non-initial reference entry");
            for (int j = 1; j <= L; ++j) {
                auto x = v[static_cast<std::size_t>(j)];
                if (x == Composition::kDead || !tracked[static_cast<std::size_t>(j - 1)].fsa->is_initial(x))
                    violation("initial vector with non-initial tracked entry");
            }
        }
    }

    std::vector<char> reached(comp.n(), 0);
    {
        std::deque<std::int32_t> queue(comp.initial.begin(), comp.initial.end());
        for (auto s : comp.initial) reached[static_cast<std::size_t>(s)] = 1;
        while (!queue.empty()) {
            auto s = queue.front();
            queue.pop_front();
            for (auto& e : comp.out(s)) {
                if (!reached[static_cast<std::size_t>(e.dst)]) {
                    reached[static_cast<std::size_t>(e.dst)] = 1;
                    queue.push_back(e.dst);
                }
            }
        }
        for (std::size_t s = 0; s < comp.n(); ++s)
            if (!reached[s]) violation("state " + comp.render_state(static_cast<std::int32_t>(s)) +
                                       " is not reachable from the initial vectors");
    }

    auto has_trans = [](const Fsa& f, StateId s, EventId e, StateId d) {
        auto out = f.out(s);
        return std::binary_search(out.begin(), out.end(), Fsa::Trans{s, e, d});
    };

    for (auto& edge : comp.edges) {
        auto& src = comp.states[static_cast<std::size_t>(edge.src)];
        auto& dst = comp.states[static_cast<std::size_t>(edge.dst)];
        auto& ev = comp.evecs[static_cast<std::size_t>(edge.evec)];
        auto where = [&]() {
            return comp.render_state(edge.src) + " " + comp.render_evec(edge.evec) + " " +
                   comp.render_state(edge.dst);
        };

        // reference entry
        std::optional<std::string> ref_out;
        if (ev[0] == Composition::kKill) {
            violation("reference entry killed: " + where());
            continue;
        }
        if (ev[0] == Composition::kEps) {
            if (dst[0] != src[0]) violation("silent reference entry moved: " + where());
        } else {
            if (!has_trans(*reference.fsa, src[0], ev[0], dst[0]))
                violation("reference step is not a transition: " + where());
            ref_out = reference.labeling.of(ev[0]);
        }

        bool any_kill = false, any_nonkill_move = false;
        int movers = 0;
        if (ev[0] != Composition::kEps) movers++;
        std::vector<int> visible_now;  // tracked components that see the reference event
        for (int j = 1; j <= L; ++j) {
            auto& view = tracked[static_cast<std::size_t>(j - 1)];
            auto sx = src[static_cast<std::size_t>(j)];
            auto dx = dst[static_cast<std::size_t>(j)];
            auto ex = ev[static_cast<std::size_t>(j)];
            if (ex == Composition::kKill) {
                any_kill = true;
                if (dx != Composition::kDead) violation("kill marker without dead target: " + where());
                if (sx != Composition::kDead && sx == src[0])
                    violation("agreeing entry killed: " + where());
                continue;
            }
            if (sx == Composition::kDead) {
                violation("dead entry took a non-kill step: " + where());
                continue;
            }
            std::optional<std::string> own_out;
            if (ex == Composition::kEps) {
                if (dx != sx) violation("silent tracked entry moved: " + where());
            } else {
                movers++;
                any_nonkill_move = true;
                if (!has_trans(*view.fsa, sx, ex, dx))
                    violation("tracked step is not a transition: " + where());
                own_out = view.labeling.of(ex);
            }
            // per-step projection consistency for entries that stay alive
            std::optional<std::string> seen;
            if (ev[0] != Composition::kEps)
                seen = tracked_view_of_ref_event(view, *reference.fsa, ev[0]);
            if (seen != own_out) violation("projection mismatch for tracked entry: " + where());
            if (seen) visible_now.push_back(j);
        }
        (void)any_nonkill_move;

        if (!any_kill) {
            // exactly one formation rule
            bool rule_a = movers == 1 && visible_now.empty();
            bool rule_b = ev[0] != Composition::kEps && !visible_now.empty();
            if (rule_b) {
                // every tracked component that sees the event must have moved
                for (auto j : visible_now) {
                    if (ev[static_cast<std::size_t>(j)] == Composition::kEps)
                        violation("visible tracked entry stayed silent: " + where());
                }
                // and nothing else moved
                for (int j = 1; j <= L; ++j) {
                    bool vis = std::find(visible_now.begin(), visible_now.end(), j) != visible_now.end();
                    if (!vis && ev[static_cast<std::size_t>(j)] != Composition::kEps)
                        violation("blind tracked entry moved in a synchronized step: " + where());
                }
            }
            if (rule_a == rule_b) violation("transition satisfies " +
                                            std::string(rule_a ? "both" : "neither") +
                                            " formation rule: " + where());
            if (comp.diamond) {
                bool src_dead = false;
                for (int j = 1; j <= L; ++j)
                    if (src[static_cast<std::size_t>(j)] == Composition::kDead) src_dead = true;
                if (src_dead) violation("plain transition out of a partially dead state: " + where());
            }
        } else {
            if (!comp.diamond) violation("kill marker in a plain product: " + where());
            // every non-agreeing entry dies at once
            for (int j = 1; j <= L; ++j) {
                auto sx = src[static_cast<std::size_t>(j)];
                bool disagrees = sx == Composition::kDead || sx != src[0];
                bool killed = ev[static_cast<std::size_t>(j)] == Composition::kKill;
                if (disagrees != killed)
                    violation(std::string(disagrees ? "non-agreeing entry survived a kill step: "
                                                    : "agreeing entry killed: ") +
                              where());
            }
            // the surviving sub-vector is all-silent or a plain move of the sub-product;
            // all-silent self-loops that kill nothing alive must have been omitted
            bool sub_silent = ev[0] == Composition::kEps;
            for (int j = 1; j <= L && sub_silent; ++j)
                if (ev[static_cast<std::size_t>(j)] != Composition::kKill &&
                    ev[static_cast<std::size_t>(j)] != Composition::kEps)
                    sub_silent = false;
            if (sub_silent) {
                bool kills_alive = false;
                for (int j = 1; j <= L; ++j)
                    if (ev[static_cast<std::size_t>(j)] == Composition::kKill &&
                        src[static_cast<std::size_t>(j)] != Composition::kDead)
                        kills_alive = true;
                if (!kills_alive) violation("all-silent kill step that kills nothing alive: " + where());
            } else {
                // formation of the surviving sub-vector, restricted to survivors
                int sub_movers = ev[0] == Composition::kEps ? 0 : 1;
                std::vector<int> sub_visible;
                for (int j = 1; j <= L; ++j) {
                    auto ex = ev[static_cast<std::size_t>(j)];
                    if (ex == Composition::kKill) continue;
                    if (ex != Composition::kEps) sub_movers++;
                    if (ev[0] != Composition::kEps &&
                        tracked_view_of_ref_event(tracked[static_cast<std::size_t>(j - 1)],
                                                  *reference.fsa, ev[0]))
                        sub_visible.push_back(j);
                }
                bool rule_a = sub_movers == 1 && sub_visible.empty();
                bool rule_b = ev[0] != Composition::kEps && !sub_visible.empty();
                if (rule_b) {
                    for (auto j : sub_visible)
                        if (ev[static_cast<std::size_t>(j)] == Composition::kEps)
                            violation("visible surviving entry stayed silent in a kill step: " + where());
                }
                if (rule_a == rule_b)
                    violation("kill step whose surviving sub-vector satisfies " +
                              std::string(rule_a ? "both" : "neither") + " formation rule: " + where());
            }
        }

        // death is permanent
        for (int j = 1; j <= L; ++j) {
            if (src[static_cast<std::size_t>(j)] == Composition::kDead &&
                dst[static_cast<std::size_t>(j)] != Composition::kDead)
                violation("dead entry revived: " + where());
        }
    }

    // uniform liveness within each SCC of the dead-marker variant
    if (comp.diamond && comp.n() > 0) {
        std::vector<std::pair<std::int32_t, std::int32_t>> plain_edges;
        plain_edges.reserve(comp.edges.size());
        for (auto& e : comp.edges) plain_edges.emplace_back(e.src, e.dst);
        auto csr = detail::make_csr(comp.n(), plain_edges);
        auto scc = detail::tarjan_scc(csr);
        std::vector<std::int32_t> rep_state(static_cast<std::size_t>(scc.count), -1);
        for (std::size_t s = 0; s < comp.n(); ++s) {
            auto cid = static_cast<std::size_t>(scc.comp[s]);
            if (rep_state[cid] < 0) {
                rep_state[cid] = static_cast<std::int32_t>(s);
                continue;
            }
            auto& a = comp.states[s];
            auto& b = comp.states[static_cast<std::size_t>(rep_state[cid])];
            for (int j = 1; j <= L; ++j) {
                bool da = a[static_cast<std::size_t>(j)] == Composition::kDead;
                bool db = b[static_cast<std::size_t>(j)] == Composition::kDead;
                if (da != db)
                    violation("SCC mixes alive and dead copies of entry " + std::to_string(j));
            }
        }
    }
    return rep;
}

}  // namespace ccdes
