#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <queue>
#include <set>
#include <vector>

#include "bits.hpp"
#include "graph.hpp"

namespace parity {

/// `n` vertex-disjoint paths from `sources` to `targets` using only `allowed`
/// edges of `g`, none with an inner vertex in either set, or nullopt when no
/// such family exists. A vertex in both sets yields a one-vertex path.
///
/// Unit-capacity max-flow on the vertex-split graph with breadth-first
/// augmentation in ascending id order, so the result is deterministic.
inline std::optional<std::vector<Path>> disjoint_paths(const Multigraph& g, const EdgeSet& allowed,
                                                       const std::set<int>& sources, const std::set<int>& targets,
                                                       std::size_t n)
{
    if (n == 0) return std::vector<Path>{};
    for (int v : sources)
        if (!g.has_vertex(v)) return std::nullopt;
    for (int v : targets)
        if (!g.has_vertex(v)) return std::nullopt;

    // Node layout: 2i = in(v_i), 2i+1 = out(v_i), then source and sink.
    const int nv = static_cast<int>(g.num_vertices());
    const int src = 2 * nv, snk = 2 * nv + 1;
    struct ArcRec {
        int to;
        int cap;
        int rev;
        int edge; // graph edge id or -1
    };
    std::vector<std::vector<ArcRec>> adj(static_cast<std::size_t>(2 * nv + 2));
    auto add = [&](int a, int b, int edge) {
        adj[a].push_back({b, 1, static_cast<int>(adj[b].size()), edge});
        adj[b].push_back({a, 0, static_cast<int>(adj[a].size()) - 1, edge});
    };
    for (int i = 0; i < nv; ++i) add(2 * i, 2 * i + 1, -1);
    for (int s : sources) add(src, 2 * g.vertex_index(s), -1);
    for (int t : targets) add(2 * g.vertex_index(t) + 1, snk, -1);
    for (const auto& e : g.edges()) {
        if (!allowed.test(e.id) || e.is_loop()) continue;
        int a = g.vertex_index(e.u), b = g.vertex_index(e.v);
        add(2 * a + 1, 2 * b, e.id);
        add(2 * b + 1, 2 * a, e.id);
    }

    std::size_t flow = 0;
    while (flow < n) {
        std::vector<std::pair<int, int>> via(adj.size(), {-1, -1});
        std::vector<char> seen(adj.size(), 0);
        std::queue<int> q;
        q.push(src);
        seen[src] = 1;
        while (!q.empty() && !seen[snk]) {
            int x = q.front();
            q.pop();
            for (std::size_t k = 0; k < adj[x].size(); ++k) {
                const auto& a = adj[x][k];
                if (a.cap <= 0 || seen[a.to]) continue;
                seen[a.to] = 1;
                via[a.to] = {x, static_cast<int>(k)};
                q.push(a.to);
            }
        }
        if (!seen[snk]) return std::nullopt;
        for (int y = snk; y != src;) {
            auto [x, k] = via[y];
            auto& a = adj[x][k];
            a.cap -= 1;
            adj[a.to][a.rev].cap += 1;
            y = x;
        }
        ++flow;
    }

    // Net flow per graph-edge direction; opposite units cancel.
    std::vector<std::vector<std::pair<int, int>>> next(static_cast<std::size_t>(nv)); // (vertex index, edge)
    for (int i = 0; i < nv; ++i)
        for (const auto& a : adj[2 * i + 1])
            if (a.edge >= 0 && a.to % 2 == 0 && a.cap == 0) next[i].push_back({a.to / 2, a.edge});
    for (int i = 0; i < nv; ++i) {
        for (auto it = next[i].begin(); it != next[i].end();) {
            auto& back = next[it->first];
            auto jt = std::find(back.begin(), back.end(), std::pair{i, it->second});
            if (jt != back.end()) {
                back.erase(jt);
                it = next[i].erase(it);
            } else {
                ++it;
            }
        }
    }

    std::vector<char> to_sink(static_cast<std::size_t>(nv), 0);
    for (int i = 0; i < nv; ++i)
        for (const auto& b : adj[2 * i + 1])
            if (b.to == snk && b.cap == 0) to_sink[i] = 1;

    std::vector<Path> out;
    for (const auto& a : adj[src]) {
        if (a.to == snk || a.cap != 0) continue; // unused source arc
        int i = a.to / 2;
        Path p;
        p.vertices.push_back(g.vertices()[static_cast<std::size_t>(i)]);
        // Vertex capacity 1 leaves each vertex at most one outgoing unit.
        while (!to_sink[i] && !next[i].empty()) {
            auto [j, edge] = next[i].front();
            p.edges.push_back(edge);
            p.vertices.push_back(g.vertices()[static_cast<std::size_t>(j)]);
            i = j;
        }
        // Trim to the last source vertex and the first target after it.
        std::size_t from = 0;
        for (std::size_t k = 0; k < p.vertices.size(); ++k)
            if (sources.count(p.vertices[k])) from = k;
        std::size_t to = from;
        while (!targets.count(p.vertices[to])) ++to;
        Path trimmed;
        trimmed.vertices.assign(p.vertices.begin() + static_cast<std::ptrdiff_t>(from),
                                p.vertices.begin() + static_cast<std::ptrdiff_t>(to) + 1);
        trimmed.edges.assign(p.edges.begin() + static_cast<std::ptrdiff_t>(from),
                             p.edges.begin() + static_cast<std::ptrdiff_t>(to));
        out.push_back(std::move(trimmed));
    }
    return out;
}

} // namespace parity
