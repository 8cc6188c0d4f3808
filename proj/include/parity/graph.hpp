#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"

namespace parity {

struct Edge {
    int id = 0;
    int u = 0; ///< smaller endpoint
    int v = 0; ///< larger endpoint (equal to u for a loop)

    [[nodiscard]] bool is_loop() const { return u == v; }
    [[nodiscard]] int other(int x) const { return x == u ? v : u; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected multigraph with explicit vertex and edge identifiers.
///
/// Vertex ids are a sorted set of non-negative integers; edges are stored in
/// ascending id order with their endpoints normalized so that `u <= v`. Parallel
/// edges and loops are allowed. Instances are immutable once built.
class Multigraph {
public:
    Multigraph() = default;

    /// Builds a graph from vertex ids and (id, u, v) edge records. Vertices that
    /// appear only as endpoints are added implicitly.
    Multigraph(std::vector<int> vertices, std::vector<Edge> edges)
    {
        for (auto& e : edges) {
            if (e.u > e.v) std::swap(e.u, e.v);
            if (e.u < 0) throw InputError("negative vertex id " + std::to_string(e.u));
            if (e.id < 0) throw InputError("negative edge id " + std::to_string(e.id));
            vertices.push_back(e.u);
            vertices.push_back(e.v);
        }
        for (int v : vertices)
            if (v < 0) throw InputError("negative vertex id " + std::to_string(v));
        std::sort(vertices.begin(), vertices.end());
        vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
        std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
        for (std::size_t i = 1; i < edges.size(); ++i)
            if (edges[i].id == edges[i - 1].id) throw InputError("duplicate edge id " + std::to_string(edges[i].id));
        vertices_ = std::move(vertices);
        edges_ = std::move(edges);
        index();
    }

    /// Convenience: edges numbered 1..m in the given order.
    static Multigraph from_pairs(const std::vector<std::pair<int, int>>& pairs)
    {
        std::vector<Edge> edges;
        int id = 1;
        for (auto [u, v] : pairs) edges.push_back({id++, u, v});
        return Multigraph({}, std::move(edges));
    }

    [[nodiscard]] const std::vector<int>& vertices() const { return vertices_; }
    [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
    [[nodiscard]] std::size_t num_vertices() const { return vertices_.size(); }
    [[nodiscard]] std::size_t num_edges() const { return edges_.size(); }

    [[nodiscard]] bool has_vertex(int v) const
    {
        return v >= 0 && static_cast<std::size_t>(v) < vertex_pos_.size() && vertex_pos_[v] >= 0;
    }
    [[nodiscard]] bool has_edge(int id) const
    {
        return id >= 0 && static_cast<std::size_t>(id) < edge_pos_.size() && edge_pos_[id] >= 0;
    }
    [[nodiscard]] const Edge& edge(int id) const
    {
        if (!has_edge(id)) throw InputError("unknown edge id " + std::to_string(id));
        return edges_[static_cast<std::size_t>(edge_pos_[id])];
    }
    /// Position of a vertex in `vertices()`.
    [[nodiscard]] int vertex_index(int v) const
    {
        if (!has_vertex(v)) throw InputError("unknown vertex id " + std::to_string(v));
        return vertex_pos_[v];
    }
    /// Incident edge ids in ascending order; a loop is listed once.
    [[nodiscard]] const std::vector<int>& incident(int v) const
    {
        return incident_[static_cast<std::size_t>(vertex_index(v))];
    }
    /// Degree with loops counted twice.
    [[nodiscard]] int degree(int v) const
    {
        int d = 0;
        for (int id : incident(v)) d += edge(id).is_loop() ? 2 : 1;
        return d;
    }
    [[nodiscard]] int max_vertex_id() const { return vertices_.empty() ? -1 : vertices_.back(); }
    [[nodiscard]] int max_edge_id() const { return edges_.empty() ? 0 : edges_.back().id; }
    [[nodiscard]] EdgeSet edge_set() const
    {
        EdgeSet s;
        for (const auto& e : edges_) s.set(e.id);
        return s;
    }
    [[nodiscard]] std::size_t num_loops() const
    {
        return static_cast<std::size_t>(std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_loop(); }));
    }

    friend bool operator==(const Multigraph& a, const Multigraph& b)
    {
        return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
    }

private:
    void index()
    {
        int maxv = vertices_.empty() ? -1 : vertices_.back();
        vertex_pos_.assign(static_cast<std::size_t>(maxv + 1), -1);
        for (std::size_t i = 0; i < vertices_.size(); ++i) vertex_pos_[vertices_[i]] = static_cast<int>(i);
        int maxe = edges_.empty() ? -1 : edges_.back().id;
        edge_pos_.assign(static_cast<std::size_t>(maxe + 1), -1);
        incident_.assign(vertices_.size(), {});
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            const auto& e = edges_[i];
            edge_pos_[e.id] = static_cast<int>(i);
            incident_[vertex_pos_[e.u]].push_back(e.id);
            if (!e.is_loop()) incident_[vertex_pos_[e.v]].push_back(e.id);
        }
    }

    std::vector<int> vertices_;
    std::vector<Edge> edges_;
    std::vector<int> vertex_pos_;
    std::vector<int> edge_pos_;
    std::vector<std::vector<int>> incident_;
};

struct Arc {
    int tail = -1;
    int head = -1;
    friend bool operator==(const Arc&, const Arc&) = default;
};

/// Direction chosen for every edge of a graph.
class Orientation {
public:
    Orientation() = default;

    /// Tail is the smaller endpoint; parallel edges all point the same way.
    static Orientation reference(const Multigraph& g)
    {
        Orientation o;
        for (const auto& e : g.edges()) o.set(e.id, {e.u, e.v});
        return o;
    }

    void set(int edge_id, Arc a)
    {
        if (static_cast<std::size_t>(edge_id) >= arcs_.size()) arcs_.resize(static_cast<std::size_t>(edge_id) + 1);
        if (arcs_[edge_id].tail < 0) ++size_;
        arcs_[edge_id] = a;
    }
    [[nodiscard]] bool has(int edge_id) const
    {
        return edge_id >= 0 && static_cast<std::size_t>(edge_id) < arcs_.size() && arcs_[edge_id].tail >= 0;
    }
    [[nodiscard]] Arc at(int edge_id) const
    {
        if (!has(edge_id)) throw InputError("orientation has no edge " + std::to_string(edge_id));
        return arcs_[edge_id];
    }
    void reverse(int edge_id)
    {
        auto a = at(edge_id);
        arcs_[edge_id] = {a.head, a.tail};
    }
    [[nodiscard]] std::size_t size() const { return size_; }

    /// True iff the domain is exactly the edge set of `g` and every arc is a
    /// permutation of its edge's endpoints.
    [[nodiscard]] bool orients(const Multigraph& g) const
    {
        if (size_ != g.num_edges()) return false;
        for (const auto& e : g.edges()) {
            if (!has(e.id)) return false;
            auto a = arcs_[e.id];
            bool ok = (a.tail == e.u && a.head == e.v) || (a.tail == e.v && a.head == e.u);
            if (!ok) return false;
        }
        return true;
    }

    friend bool operator==(const Orientation&, const Orientation&) = default;

private:
    std::vector<Arc> arcs_;
    std::size_t size_ = 0;
};

/// Bookkeeping produced by edge contraction.
struct ContractionMap {
    std::map<int, int> vertex_image;    ///< old vertex id -> new vertex id
    std::map<int, int> surviving_edges; ///< old edge id -> new edge id (ids are preserved)
};

/// Subgraph spanned by an edge set: isolated vertices are dropped, ids preserved.
inline Multigraph subgraph(const Multigraph& g, const EdgeSet& keep)
{
    std::vector<Edge> edges;
    keep.for_each([&](int id) { edges.push_back(g.edge(id)); });
    return Multigraph({}, std::move(edges));
}

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x)
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent[b] = a;
        return true;
    }
};

} // namespace detail

/// Identifies the endpoints of every contracted edge. Each merged class takes
/// the smallest old vertex id; surviving edges keep their ids, so edges whose
/// endpoints merge become loops.
inline std::pair<Multigraph, ContractionMap> contract_edges(const Multigraph& g, const EdgeSet& contracted)
{
    detail::UnionFind uf(g.num_vertices());
    contracted.for_each([&](int id) {
        const auto& e = g.edge(id);
        uf.unite(g.vertex_index(e.u), g.vertex_index(e.v));
    });
    ContractionMap map;
    std::vector<int> vertices;
    for (std::size_t i = 0; i < g.num_vertices(); ++i) {
        int image = g.vertices()[static_cast<std::size_t>(uf.find(static_cast<int>(i)))];
        map.vertex_image[g.vertices()[i]] = image;
        vertices.push_back(image);
    }
    std::vector<Edge> edges;
    for (const auto& e : g.edges()) {
        if (contracted.test(e.id)) continue;
        edges.push_back({e.id, map.vertex_image[e.u], map.vertex_image[e.v]});
        map.surviving_edges[e.id] = e.id;
    }
    return {Multigraph(std::move(vertices), std::move(edges)), std::move(map)};
}

/// Connected components as lists of vertex ids (ascending, by smallest member).
inline std::vector<std::vector<int>> components(const Multigraph& g)
{
    detail::UnionFind uf(g.num_vertices());
    for (const auto& e : g.edges()) uf.unite(g.vertex_index(e.u), g.vertex_index(e.v));
    std::map<int, std::vector<int>> groups;
    for (std::size_t i = 0; i < g.num_vertices(); ++i) groups[uf.find(static_cast<int>(i))].push_back(g.vertices()[i]);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    return out;
}

inline bool is_connected(const Multigraph& g)
{
    return g.num_vertices() <= 1 || components(g).size() == 1;
}

/// Result of a bipartiteness test; `odd_circuit` is set when the graph is not bipartite.
struct BipartiteResult {
    bool bipartite = true;
    std::optional<EdgeSet> odd_circuit;
    explicit operator bool() const { return bipartite; }
};

/// Breadth-first 2-colouring. A loop is an odd circuit of length 1.
inline BipartiteResult is_bipartite(const Multigraph& g)
{
    for (const auto& e : g.edges())
        if (e.is_loop()) return {false, EdgeSet{e.id}};

    const auto n = g.num_vertices();
    std::vector<int> colour(n, -1), parent_edge(n, -1), depth(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
        if (colour[s] >= 0) continue;
        colour[s] = 0;
        std::queue<int> q;
        q.push(static_cast<int>(s));
        while (!q.empty()) {
            int xi = q.front();
            q.pop();
            int x = g.vertices()[static_cast<std::size_t>(xi)];
            for (int id : g.incident(x)) {
                int y = g.edge(id).other(x);
                int yi = g.vertex_index(y);
                if (colour[yi] < 0) {
                    colour[yi] = 1 - colour[xi];
                    parent_edge[yi] = id;
                    depth[yi] = depth[xi] + 1;
                    q.push(yi);
                } else if (colour[yi] == colour[xi]) {
                    // Tree paths from x and y to their common ancestor plus this edge.
                    EdgeSet circuit{id};
                    int a = xi, b = yi;
                    while (a != b) {
                        if (depth[a] >= depth[b]) {
                            int pe = parent_edge[a];
                            circuit.set(pe);
                            a = g.vertex_index(g.edge(pe).other(g.vertices()[static_cast<std::size_t>(a)]));
                        } else {
                            int pe = parent_edge[b];
                            circuit.set(pe);
                            b = g.vertex_index(g.edge(pe).other(g.vertices()[static_cast<std::size_t>(b)]));
                        }
                    }
                    return {false, circuit};
                }
            }
        }
    }
    return {true, std::nullopt};
}

/// True iff the graph is connected and has no cutvertex. Loops are ignored.
/// Two vertices joined by at least two parallel edges count as 2-connected;
/// a single edge or a single vertex does not.
inline bool is_two_connected(const Multigraph& g)
{
    const auto n = g.num_vertices();
    if (n < 2 || !is_connected(g)) return false;
    if (n == 2) {
        std::size_t links = g.num_edges() - g.num_loops();
        return links >= 2;
    }
    // Iterative Hopcroft-Tarjan articulation point search.
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<int> parent_edge(n, -1);
    int timer = 0;
    struct Frame {
        int v;
        std::size_t next;
    };
    std::vector<Frame> stack;
    stack.push_back({0, 0});
    disc[0] = low[0] = timer++;
    int root_children = 0;
    while (!stack.empty()) {
        auto& f = stack.back();
        int x = g.vertices()[static_cast<std::size_t>(f.v)];
        const auto& inc = g.incident(x);
        if (f.next < inc.size()) {
            int id = inc[f.next++];
            const auto& e = g.edge(id);
            if (e.is_loop() || id == parent_edge[f.v]) continue;
            int yi = g.vertex_index(e.other(x));
            if (disc[yi] < 0) {
                disc[yi] = low[yi] = timer++;
                parent_edge[yi] = id;
                if (f.v == 0) ++root_children;
                stack.push_back({yi, 0});
            } else {
                low[f.v] = std::min(low[f.v], disc[yi]);
            }
        } else {
            int child = f.v;
            stack.pop_back();
            if (stack.empty()) break;
            int p = stack.back().v;
            low[p] = std::min(low[p], low[child]);
            if (p != 0 && low[child] >= disc[p]) return false;
        }
    }
    return root_children <= 1;
}

/// A path given by its vertex sequence and the edges between consecutive vertices.
/// A single-vertex path has no edges.
struct Path {
    std::vector<int> vertices;
    std::vector<int> edges;

    [[nodiscard]] int front() const { return vertices.front(); }
    [[nodiscard]] int back() const { return vertices.back(); }
    [[nodiscard]] std::size_t length() const { return edges.size(); }
    [[nodiscard]] EdgeSet edge_set() const { return EdgeSet::from_range(edges); }
    friend bool operator==(const Path&, const Path&) = default;
};

/// Breadth-first shortest path between two vertices using only `allowed` edges
/// and avoiding the `blocked` vertices (endpoints excepted). Ties are broken
/// by ascending edge id, so the result is deterministic.
inline std::optional<Path> shortest_path(const Multigraph& g, int from, int to, const EdgeSet& allowed,
                                         const std::set<int>& blocked = {})
{
    if (!g.has_vertex(from) || !g.has_vertex(to)) return std::nullopt;
    if (from == to) return Path{{from}, {}};
    const auto n = g.num_vertices();
    std::vector<int> via(n, -1);
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    seen[g.vertex_index(from)] = 1;
    q.push(from);
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (int id : g.incident(x)) {
            if (!allowed.test(id)) continue;
            const auto& e = g.edge(id);
            if (e.is_loop()) continue;
            int y = e.other(x);
            int yi = g.vertex_index(y);
            if (seen[yi]) continue;
            if (y != to && blocked.count(y)) continue;
            seen[yi] = 1;
            via[yi] = id;
            if (y == to) {
                Path p;
                int cur = to;
                p.vertices.push_back(cur);
                while (cur != from) {
                    int pe = via[g.vertex_index(cur)];
                    p.edges.push_back(pe);
                    cur = g.edge(pe).other(cur);
                    p.vertices.push_back(cur);
                }
                std::reverse(p.vertices.begin(), p.vertices.end());
                std::reverse(p.edges.begin(), p.edges.end());
                return p;
            }
            q.push(y);
        }
    }
    return std::nullopt;
}

/// Vertices incident to at least one edge of the set.
inline std::set<int> vertices_of(const Multigraph& g, const EdgeSet& edges)
{
    std::set<int> out;
    edges.for_each([&](int id) {
        const auto& e = g.edge(id);
        out.insert(e.u);
        out.insert(e.v);
    });
    return out;
}

} // namespace parity
