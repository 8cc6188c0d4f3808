#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"
#include "graph.hpp"

namespace parity {

inline constexpr std::size_t kDefaultCircuitCap = 100000;

enum class Parity : std::uint8_t { even = 0, odd = 1 };

inline Parity parity_of(std::size_t n) { return (n % 2 == 0) ? Parity::even : Parity::odd; }
inline Parity operator+(Parity a, Parity b)
{
    return static_cast<Parity>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}
inline const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

/// One position of a circuit traversal: leave `vertex` along `edge`.
struct Step {
    int vertex = 0;
    int edge = 0;
    friend bool operator==(const Step&, const Step&) = default;
};

/// A connected 2-regular edge set together with one traversal sense.
struct Circuit {
    EdgeSet edges;
    std::vector<Step> sense;

    [[nodiscard]] std::size_t length() const { return sense.size(); }
    [[nodiscard]] bool is_even() const { return length() % 2 == 0; }
    [[nodiscard]] std::vector<int> edge_ids() const { return edges.to_vector(); }

    friend bool operator==(const Circuit& a, const Circuit& b) { return a.edges == b.edges; }
};

/// Length first, then lexicographic edge ids.
inline bool circuit_order(const EdgeSet& a, const EdgeSet& b)
{
    auto ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    return a < b;
}

/// Validates that `edges` forms a circuit of `g` and fixes its sense: start at
/// the smallest vertex and leave it along the smaller incident circuit edge.
inline std::optional<Circuit> try_make_circuit(const Multigraph& g, const EdgeSet& edges)
{
    if (edges.empty()) return std::nullopt;
    std::map<int, std::vector<int>> at; // vertex -> incident circuit edges
    bool bad = false;
    edges.for_each([&](int id) {
        if (!g.has_edge(id)) {
            bad = true;
            return;
        }
        const auto& e = g.edge(id);
        at[e.u].push_back(id);
        at[e.v].push_back(id); // a loop lands twice on the same vertex
    });
    if (bad) return std::nullopt;
    for (auto& [v, ids] : at)
        if (ids.size() != 2) return std::nullopt;

    Circuit c;
    c.edges = edges;
    int start = at.begin()->first;
    auto first_ids = at.begin()->second;
    int edge = std::min(first_ids[0], first_ids[1]);
    int vertex = start;
    const auto len = edges.count();
    for (std::size_t k = 0; k < len; ++k) {
        c.sense.push_back({vertex, edge});
        int next = g.edge(edge).other(vertex);
        const auto& ids = at[next];
        int next_edge = (ids[0] == edge) ? ids[1] : ids[0];
        vertex = next;
        edge = next_edge;
        if (vertex == start && k + 1 < len) return std::nullopt; // closed early: not connected
    }
    if (vertex != start) return std::nullopt;
    return c;
}

inline Circuit make_circuit(const Multigraph& g, const EdgeSet& edges)
{
    auto c = try_make_circuit(g, edges);
    if (!c) {
        std::string ids;
        for (int id : edges.to_vector()) ids += " " + std::to_string(id);
        throw InputError("edge set {" + ids + " } is not a circuit of the graph");
    }
    return *c;
}

/// Every circuit of `g`, each once, sorted by length and then edge ids.
///
/// Backtracking: for each non-loop edge s, list the paths from one end of s
/// to the other that use only edges with larger id; every circuit is found
/// exactly once, from its smallest edge.
inline std::vector<Circuit> enumerate_circuits(const Multigraph& g, std::size_t cap = kDefaultCircuitCap)
{
    if (cap == 0) throw InputError("circuit cap must be positive");
    std::vector<EdgeSet> found;
    auto push = [&](EdgeSet s) {
        found.push_back(std::move(s));
        if (found.size() > cap)
            throw ResourceError("more than " + std::to_string(cap) + " circuits (circuit cap " + std::to_string(cap) +
                                ")");
    };
    for (const auto& e : g.edges())
        if (e.is_loop()) push(EdgeSet{e.id});

    const auto n = g.num_vertices();
    std::vector<char> on_path(n, 0);
    std::vector<int> path_edges;
    std::vector<int> live_degree(n, 0);
    for (const auto& s : g.edges()) {
        if (s.is_loop()) continue;
        // Vertices with fewer than two usable edges can only be path ends.
        std::fill(live_degree.begin(), live_degree.end(), 0);
        for (const auto& e : g.edges()) {
            if (e.id < s.id || e.is_loop()) continue;
            ++live_degree[g.vertex_index(e.u)];
            ++live_degree[g.vertex_index(e.v)];
        }
        const int target = s.u;
        auto dfs = [&](auto&& self, int x) -> void {
            for (int id : g.incident(x)) {
                if (id <= s.id) continue;
                const auto& e = g.edge(id);
                if (e.is_loop()) continue;
                int y = e.other(x);
                if (y == target) {
                    EdgeSet c{s.id};
                    for (int pe : path_edges) c.set(pe);
                    c.set(id);
                    push(std::move(c));
                    continue;
                }
                int yi = g.vertex_index(y);
                if (on_path[yi] || live_degree[yi] < 2) continue;
                on_path[yi] = 1;
                path_edges.push_back(id);
                self(self, y);
                path_edges.pop_back();
                on_path[yi] = 0;
            }
        };
        on_path[g.vertex_index(s.u)] = 1;
        on_path[g.vertex_index(s.v)] = 1;
        dfs(dfs, s.v);
        on_path[g.vertex_index(s.u)] = 0;
        on_path[g.vertex_index(s.v)] = 0;
    }
    std::sort(found.begin(), found.end(), circuit_order);
    std::vector<Circuit> out;
    out.reserve(found.size());
    for (const auto& f : found) out.push_back(make_circuit(g, f));
    return out;
}

inline std::vector<Circuit> even_circuits(const Multigraph& g, std::size_t cap = kDefaultCircuitCap)
{
    auto all = enumerate_circuits(g, cap);
    std::vector<Circuit> out;
    for (auto& c : all)
        if (c.is_even()) out.push_back(std::move(c));
    return out;
}

/// Parity of the number of edges of an even circuit directed along its sense.
/// The value does not depend on which of the two senses is stored.
inline Parity clockwise_parity(const Orientation& o, const Circuit& c)
{
    if (!c.is_even())
        throw ContractError("clockwise parity is only defined for even circuits (length " +
                            std::to_string(c.length()) + ")");
    std::size_t agree = 0;
    for (const auto& st : c.sense)
        if (o.at(st.edge).tail == st.vertex) ++agree;
    return parity_of(agree);
}

/// Fundamental circuits of a breadth-first spanning tree (ascending ids), one
/// per non-tree edge.
inline std::vector<EdgeSet> cycle_space_basis(const Multigraph& g)
{
    if (!is_connected(g)) throw InputError("cycle space basis requires a connected graph");
    const auto n = g.num_vertices();
    std::vector<int> parent_edge(n, -1), depth(n, 0);
    std::vector<char> seen(n, 0);
    EdgeSet tree;
    if (n > 0) {
        std::vector<int> queue{0};
        seen[0] = 1;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int xi = queue[qi];
            int x = g.vertices()[static_cast<std::size_t>(xi)];
            for (int id : g.incident(x)) {
                const auto& e = g.edge(id);
                if (e.is_loop()) continue;
                int yi = g.vertex_index(e.other(x));
                if (seen[yi]) continue;
                seen[yi] = 1;
                parent_edge[yi] = id;
                depth[yi] = depth[xi] + 1;
                tree.set(id);
                queue.push_back(yi);
            }
        }
    }
    std::vector<EdgeSet> basis;
    for (const auto& e : g.edges()) {
        if (tree.test(e.id)) continue;
        EdgeSet c{e.id};
        int a = g.vertex_index(e.u), b = g.vertex_index(e.v);
        while (a != b) {
            if (depth[a] >= depth[b]) {
                int pe = parent_edge[a];
                c.flip(pe);
                a = g.vertex_index(g.edge(pe).other(g.vertices()[static_cast<std::size_t>(a)]));
            } else {
                int pe = parent_edge[b];
                c.flip(pe);
                b = g.vertex_index(g.edge(pe).other(g.vertices()[static_cast<std::size_t>(b)]));
            }
        }
        basis.push_back(std::move(c));
    }
    return basis;
}

/// Outcome of an even-circuit-connectivity test. When the answer is no,
/// `separated` is one side of an edge bipartition that no even circuit crosses.
struct EvenConnectivity {
    bool connected = false;
    std::optional<EdgeSet> separated;
    explicit operator bool() const { return connected; }
};

/// Even-circuit-connectivity of the subgraph spanned by `edges`, given even
/// circuits of a supergraph (only those inside `edges` are used).
inline EvenConnectivity even_circuit_connectivity(const EdgeSet& edges, const std::vector<Circuit>& evens)
{
    auto ids = edges.to_vector();
    if (ids.empty()) return {false, std::nullopt};
    std::map<int, int> pos;
    for (std::size_t i = 0; i < ids.size(); ++i) pos[ids[i]] = static_cast<int>(i);
    detail::UnionFind uf(ids.size());
    std::vector<char> covered(ids.size(), 0);
    for (const auto& c : evens) {
        if (!c.edges.is_subset_of(edges)) continue;
        int first = -1;
        c.edges.for_each([&](int id) {
            int p = pos[id];
            covered[p] = 1;
            if (first < 0)
                first = p;
            else
                uf.unite(first, p);
        });
    }
    for (std::size_t i = 0; i < ids.size(); ++i)
        if (!covered[i]) return {false, EdgeSet{ids[i]}};
    EdgeSet side;
    int root = uf.find(0);
    for (std::size_t i = 0; i < ids.size(); ++i)
        if (uf.find(static_cast<int>(i)) == root) side.set(ids[i]);
    if (side == edges) return {true, std::nullopt};
    return {false, side};
}

/// True iff every bipartition of the edge set into two nonempty parts is
/// crossed by an even circuit. Graphs without even circuits are not
/// even-circuit-connected.
inline EvenConnectivity even_circuit_connectivity(const Multigraph& g, std::size_t cap = kDefaultCircuitCap)
{
    for (int v : g.vertices())
        if (g.incident(v).empty()) throw InputError("vertex " + std::to_string(v) + " is isolated");
    return even_circuit_connectivity(g.edge_set(), even_circuits(g, cap));
}

inline bool is_even_circuit_connected(const Multigraph& g, std::size_t cap = kDefaultCircuitCap)
{
    return even_circuit_connectivity(g, cap).connected;
}

} // namespace parity
