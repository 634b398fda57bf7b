#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace ccdes::detail {

/// CSR digraph over nodes 0..n-1.
struct Csr {
    std::vector<std::int32_t> begin; ///< n+1 offsets
    std::vector<std::int32_t> to;

    std::size_t n() const { return begin.empty() ? 0 : begin.size() - 1; }
    std::span<const std::int32_t> out(std::int32_t v) const {
        auto b = static_cast<std::size_t>(begin[static_cast<std::size_t>(v)]);
        auto e = static_cast<std::size_t>(begin[static_cast<std::size_t>(v) + 1]);
        return {to.data() + b, e - b};
    }
};

inline Csr make_csr(std::size_t n, std::span<const std::pair<std::int32_t, std::int32_t>> edges) {
    Csr g;
    g.begin.assign(n + 1, 0);
    for (auto& [u, v] : edges) g.begin[static_cast<std::size_t>(u) + 1]++;
    for (std::size_t i = 1; i <= n; ++i) g.begin[i] += g.begin[i - 1];
    g.to.resize(edges.size());
    std::vector<std::int32_t> fill(g.begin.begin(), g.begin.end() - 1);
    for (auto& [u, v] : edges) g.to[static_cast<std::size_t>(fill[static_cast<std::size_t>(u)]++)] = v;
    return g;
}

struct SccResult {
    std::vector<std::int32_t> comp; ///< component id per node
    std::int32_t count = 0;
};

/// Iterative Tarjan. Component ids carry no ordering guarantee.
inline SccResult tarjan_scc(const Csr& g) {
    const auto n = g.n();
    SccResult res;
    res.comp.assign(n, -1);
    std::vector<std::int32_t> index(n, -1), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<std::int32_t> stack;
    std::int32_t next_index = 0;

    struct Frame {
        std::int32_t v;
        std::size_t edge;
    };
    std::vector<Frame> call;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        call.push_back({static_cast<std::int32_t>(root), 0});
        while (!call.empty()) {
            auto& fr = call.back();
            const auto v = fr.v;
            if (fr.edge == 0) {
                index[static_cast<std::size_t>(v)] = low[static_cast<std::size_t>(v)] = next_index++;
                stack.push_back(v);
                on_stack[static_cast<std::size_t>(v)] = 1;
            }
            auto succ = g.out(v);
            bool descended = false;
            while (fr.edge < succ.size()) {
                auto w = succ[fr.edge++];
                if (index[static_cast<std::size_t>(w)] == -1) {
                    call.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[static_cast<std::size_t>(w)])
                    low[static_cast<std::size_t>(v)] =
                        std::min(low[static_cast<std::size_t>(v)], index[static_cast<std::size_t>(w)]);
            }
            if (descended) continue;
            if (low[static_cast<std::size_t>(v)] == index[static_cast<std::size_t>(v)]) {
                while (true) {
                    auto w = stack.back();
                    stack.pop_back();
                    on_stack[static_cast<std::size_t>(w)] = 0;
                    res.comp[static_cast<std::size_t>(w)] = res.count;
                    if (w == v) break;
                }
                res.count++;
            }
            call.pop_back();
            if (!call.empty()) {
                auto& parent = call.back();
                low[static_cast<std::size_t>(parent.v)] =
                    std::min(low[static_cast<std::size_t>(parent.v)], low[static_cast<std::size_t>(v)]);
            }
        }
    }
    return res;
}

}  // namespace ccdes::detail
