#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "circuits.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "isomorphism.hpp"
#include "solver.hpp"

namespace parity {

/// Contraction of the two edges at a degree-2 vertex.
struct Degree2Contraction {
    int vertex = 0;
    int edge_a = 0;
    int edge_b = 0;
    friend bool operator==(const Degree2Contraction&, const Degree2Contraction&) = default;
};

/// Contraction of an odd circuit to a single vertex.
struct OddCircuitContraction {
    EdgeSet circuit;
    friend bool operator==(const OddCircuitContraction&, const OddCircuitContraction&) = default;
};

using TraceStep = std::variant<Degree2Contraction, OddCircuitContraction>;

/// A replayable chain of contractions from `from_graph` to `to_graph`.
struct SplittingTrace {
    Multigraph from_graph;
    Multigraph to_graph;
    std::vector<TraceStep> steps;
};

/// Contracts both edges at `v`. The merged vertex takes the smaller id of the
/// two far endpoints, so `v` itself disappears.
inline std::pair<Multigraph, ContractionMap> contract_degree2_pair(const Multigraph& g, int v)
{
    if (!g.has_vertex(v)) throw InputError("unknown vertex " + std::to_string(v));
    const auto& inc = g.incident(v);
    if (g.degree(v) != 2 || inc.size() != 2)
        throw InputError("vertex " + std::to_string(v) + " does not have degree 2");
    const auto& a = g.edge(inc[0]);
    const auto& b = g.edge(inc[1]);
    if (a.is_loop() || b.is_loop()) throw InputError("vertex " + std::to_string(v) + " carries a loop");
    int x = a.other(v), y = b.other(v);
    int m = std::min(x, y);
    ContractionMap map;
    std::vector<int> vertices;
    for (int w : g.vertices()) {
        int image = (w == v || w == x || w == y) ? m : w;
        map.vertex_image[w] = image;
        vertices.push_back(image);
    }
    std::vector<Edge> edges;
    for (const auto& e : g.edges()) {
        if (e.id == a.id || e.id == b.id) continue;
        edges.push_back({e.id, map.vertex_image[e.u], map.vertex_image[e.v]});
        map.surviving_edges[e.id] = e.id;
    }
    return {Multigraph(std::move(vertices), std::move(edges)), std::move(map)};
}

/// Replaces edge `e` by a path of three edges through two new vertices. The
/// new vertices get the next free ids; the middle and far edges get fresh ids
/// while the first keeps the id of `e`.
inline Multigraph subdivide_edge_twice(const Multigraph& g, int e)
{
    const auto& old = g.edge(e);
    int p = g.max_vertex_id() + 1, q = p + 1;
    int id1 = g.max_edge_id() + 1, id2 = id1 + 1;
    std::vector<Edge> edges;
    for (const auto& f : g.edges()) {
        if (f.id == e) {
            edges.push_back({e, old.u, p});
            edges.push_back({id1, p, q});
            edges.push_back({id2, q, old.v});
        } else {
            edges.push_back(f);
        }
    }
    return Multigraph(g.vertices(), std::move(edges));
}

/// Contracts an odd circuit of `g`; chords of the circuit become loops.
inline std::pair<Multigraph, ContractionMap> contract_odd_circuit(const Multigraph& g, const EdgeSet& circuit)
{
    auto c = try_make_circuit(g, circuit);
    if (!c || c->is_even()) throw InputError("edge set " + describe_edges(circuit) + " is not an odd circuit");
    return contract_edges(g, circuit);
}

inline std::pair<Multigraph, ContractionMap> apply_step(const Multigraph& g, const TraceStep& step)
{
    if (const auto* d = std::get_if<Degree2Contraction>(&step)) {
        const auto& inc = g.has_vertex(d->vertex) ? g.incident(d->vertex) : std::vector<int>{};
        if (inc.size() != 2 || std::min(inc[0], inc[1]) != d->edge_a || std::max(inc[0], inc[1]) != d->edge_b)
            throw InputError("trace step does not match the graph at vertex " + std::to_string(d->vertex));
        return contract_degree2_pair(g, d->vertex);
    }
    return contract_odd_circuit(g, std::get<OddCircuitContraction>(step).circuit);
}

/// Graphs visited when replaying a trace: front is `from_graph`, back is the result.
inline std::vector<Multigraph> replay(const SplittingTrace& t)
{
    std::vector<Multigraph> out{t.from_graph};
    for (const auto& s : t.steps) out.push_back(apply_step(out.back(), s).first);
    return out;
}

/// Lifts an even circuit of the graph after `step` back to `before`: the unique
/// even circuit of `before` whose intersection with the surviving edges is `c_h`.
inline Circuit lift_even_circuit(const Multigraph& before, const TraceStep& step, const EdgeSet& c_h)
{
    auto after = apply_step(before, step).first;
    auto ch = try_make_circuit(after, c_h);
    if (!ch || !ch->is_even())
        throw InputError("edge set " + describe_edges(c_h) + " is not an even circuit of the contracted graph");
    if (auto direct = try_make_circuit(before, c_h); direct && direct->is_even()) return *direct;
    if (const auto* d = std::get_if<Degree2Contraction>(&step)) {
        EdgeSet c = c_h;
        c.set(d->edge_a);
        c.set(d->edge_b);
        return make_circuit(before, c);
    }
    // Odd circuit: the two circuit edges at the merged vertex attach at distinct
    // vertices p, q of A; close up with the even-length side of A.
    const auto& a = std::get<OddCircuitContraction>(step).circuit;
    auto ac = make_circuit(before, a);
    auto on_a = vertices_of(before, a);
    std::vector<int> attach;
    c_h.for_each([&](int id) {
        const auto& e = before.edge(id);
        if (on_a.count(e.u)) attach.push_back(e.u);
        if (on_a.count(e.v)) attach.push_back(e.v);
    });
    if (attach.size() != 2 || attach[0] == attach[1])
        throw ContractError("lift across odd circuit found no attachment pair");
    // Walk A along its sense; positions of p and q split it into two paths.
    std::size_t pp = 0, pq = 0;
    for (std::size_t k = 0; k < ac.sense.size(); ++k) {
        if (ac.sense[k].vertex == attach[0]) pp = k;
        if (ac.sense[k].vertex == attach[1]) pq = k;
    }
    std::size_t lo = std::min(pp, pq), hi = std::max(pp, pq);
    EdgeSet inner, outer;
    for (std::size_t k = 0; k < ac.sense.size(); ++k) (k >= lo && k < hi ? inner : outer).set(ac.sense[k].edge);
    EdgeSet c = c_h | ((hi - lo) % 2 == 0 ? inner : outer);
    return make_circuit(before, c);
}

/// Lifts an even circuit of `t.to_graph` back to `t.from_graph`.
inline Circuit lift_through(const SplittingTrace& t, const EdgeSet& c)
{
    auto graphs = replay(t);
    EdgeSet cur = c;
    for (std::size_t k = t.steps.size(); k-- > 0;) cur = lift_even_circuit(graphs[k], t.steps[k], cur).edges;
    return make_circuit(t.from_graph, cur);
}

/// Assignment induced on the contracted graph: each even circuit gets the
/// parity of its lift. Constant assignments stay constant.
inline ParityAssignment induce_assignment(const Multigraph& before, const TraceStep& step, const ParityAssignment& j,
                                          std::size_t cap = kDefaultCircuitCap)
{
    if (j.kind() != ParityAssignment::Kind::explicit_map) return j;
    auto after = apply_step(before, step).first;
    auto out = ParityAssignment::explicit_map();
    for (const auto& c : even_circuits(after, cap)) out.set(c.edges, j.at(lift_even_circuit(before, step, c.edges).edges));
    return out;
}

inline constexpr std::size_t kMaxSplittingVertices = 14;

namespace detail {

inline std::size_t cycle_rank(const Multigraph& g)
{
    return g.num_edges() + components(g).size() - g.num_vertices();
}

inline int max_degree(const Multigraph& g)
{
    int d = 0;
    for (int v : g.vertices()) d = std::max(d, g.degree(v));
    return d;
}

inline int min_degree(const Multigraph& g)
{
    int d = 1 << 30;
    for (int v : g.vertices()) d = std::min(d, g.degree(v));
    return d;
}

/// Depth-first search over degree-2 contractions reaching a graph isomorphic
/// to `b`. In subdivision mode only contractions at v whose path continues
/// through another degree-2 vertex are allowed (inverse of subdividing twice).
inline std::optional<SplittingTrace> splitting_search(const Multigraph& h, const Multigraph& b, bool subdivision_only)
{
    if (h.num_vertices() > kMaxSplittingVertices)
        throw CapabilityError("splitting search supports at most " + std::to_string(kMaxSplittingVertices) +
                              " vertices");
    if (h.num_edges() < b.num_edges() || (h.num_edges() - b.num_edges()) % 2 != 0) return std::nullopt;
    if (h.num_vertices() < b.num_vertices() || h.num_vertices() - b.num_vertices() != h.num_edges() - b.num_edges())
        return std::nullopt;
    if (cycle_rank(h) != cycle_rank(b) || h.num_loops() > b.num_loops()) return std::nullopt;
    const std::size_t k = (h.num_edges() - b.num_edges()) / 2;
    const auto b_loops = b.num_loops();
    const int b_max_degree = max_degree(b);

    std::unordered_set<EdgeSet, BitSetHash> dead;
    std::vector<TraceStep> steps;
    std::optional<Multigraph> result;
    auto dfs = [&](auto&& self, const Multigraph& g, std::size_t depth) -> bool {
        if (depth == k) {
            if (isomorphic(g, b)) {
                result = g;
                return true;
            }
            return false;
        }
        auto key = g.edge_set();
        if (dead.count(key)) return false;
        for (int v : g.vertices()) {
            const auto& inc = g.incident(v);
            if (inc.size() != 2 || g.degree(v) != 2) continue;
            const auto& ea = g.edge(inc[0]);
            const auto& eb = g.edge(inc[1]);
            if (ea.is_loop() || eb.is_loop()) continue;
            int x = ea.other(v), y = eb.other(v);
            if (x == y) continue; // would collapse a digon and drop the cycle rank
            if (subdivision_only && g.degree(x) != 2 && g.degree(y) != 2) continue;
            auto next = contract_degree2_pair(g, v).first;
            if (next.num_loops() > b_loops) continue;
            if (min_degree(next) >= 2 && max_degree(next) > b_max_degree) continue;
            steps.push_back(Degree2Contraction{v, std::min(ea.id, eb.id), std::max(ea.id, eb.id)});
            if (self(self, next, depth + 1)) return true;
            steps.pop_back();
        }
        dead.insert(std::move(key));
        return false;
    };
    if (!dfs(dfs, h, 0)) return std::nullopt;
    return SplittingTrace{h, *result, steps};
}

} // namespace detail

/// Trace of degree-2 contractions from `h` to a graph isomorphic to `b`, or
/// nullopt when `h` is not an even splitting of `b`.
inline std::optional<SplittingTrace> is_even_splitting_of(const Multigraph& h, const Multigraph& b)
{
    return detail::splitting_search(h, b, false);
}

/// As is_even_splitting_of, restricted to undoing double subdivisions.
inline std::optional<SplittingTrace> is_even_subdivision_of(const Multigraph& h, const Multigraph& b)
{
    return detail::splitting_search(h, b, true);
}

/// Replays the trace and checks the result against `to_graph` and, if given, `base`.
inline bool trace_is_valid(const SplittingTrace& t, const Multigraph* base = nullptr)
{
    try {
        auto graphs = replay(t);
        if (!isomorphic(graphs.back(), t.to_graph)) return false;
        return base == nullptr || isomorphic(graphs.back(), *base);
    } catch (const InputError&) {
        return false;
    }
}

} // namespace parity
