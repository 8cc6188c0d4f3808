#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "circuits.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "menger.hpp"

namespace parity {

/// The circuit adjoined at one stage together with its arcs relative to the
/// previous stage.
struct Adjunction {
    Circuit circuit;
    std::vector<Path> arcs;
};

struct ArcDecomposition {
    std::vector<EdgeSet> stages;         ///< EG_0 ⊂ EG_1 ⊂ ... ⊂ EG_k
    std::vector<Adjunction> adjunctions; ///< adjunctions[i - 1] builds stage i
};

/// Maximal subpaths of `c` outside `h_edges` whose ends lie in V(h) and whose
/// inner vertices do not, in the order met along the circuit's sense.
inline std::vector<Path> arcs_of(const Multigraph& g, const Circuit& c, const EdgeSet& h_edges)
{
    auto hv = vertices_of(g, h_edges);
    const auto n = c.sense.size();
    // Start the walk at a vertex of H so no arc wraps around the end.
    std::size_t start = n;
    for (std::size_t k = 0; k < n; ++k)
        if (hv.count(c.sense[k].vertex)) {
            start = k;
            break;
        }
    std::vector<Path> out;
    if (start == n) return out;
    Path cur;
    for (std::size_t step = 0; step < n; ++step) {
        const auto& st = c.sense[(start + step) % n];
        bool in_h = hv.count(st.vertex) != 0;
        if (in_h && !cur.edges.empty()) {
            cur.vertices.push_back(st.vertex);
            out.push_back(std::move(cur));
            cur = Path{};
        }
        if (h_edges.test(st.edge)) continue;
        if (cur.edges.empty())
            cur.vertices = {st.vertex};
        else
            cur.vertices.push_back(st.vertex);
        cur.edges.push_back(st.edge);
    }
    if (!cur.edges.empty()) {
        cur.vertices.push_back(c.sense[start].vertex);
        out.push_back(std::move(cur));
    }
    return out;
}

namespace detail {

/// Every even circuit of `stage` meeting `added` contains all of `added`.
inline bool containment_holds(const EdgeSet& stage, const EdgeSet& added, const std::vector<Circuit>& evens)
{
    for (const auto& c : evens) {
        if (!c.edges.is_subset_of(stage) || !c.edges.intersects(added)) continue;
        if (!added.is_subset_of(c.edges)) return false;
    }
    return true;
}

/// Direct construction for the single-arc case: the smallest edge e
/// outside H, two disjoint paths P, Q from its ends to V(H) avoiding EH, and a
/// shortest path R in H closing the circuit. Returns the circuit when it is even.
inline std::optional<Circuit> constructed_single_arc(const Multigraph& g, const EdgeSet& h_edges)
{
    auto outside = g.edge_set() - h_edges;
    if (outside.empty()) return std::nullopt;
    const auto& e = g.edge(outside.first());
    if (e.is_loop()) return std::nullopt;
    auto hv = vertices_of(g, h_edges);
    auto allowed = outside;
    allowed.reset(e.id);
    auto pq = disjoint_paths(g, allowed, {e.u, e.v}, hv, 2);
    if (!pq) return std::nullopt;
    int u = -1, v = -1;
    EdgeSet c{e.id};
    for (const auto& p : *pq) {
        c |= p.edge_set();
        (p.front() == e.u ? u : v) = p.back();
    }
    if (u < 0 || v < 0 || u == v) return std::nullopt;
    auto r = shortest_path(g, u, v, h_edges);
    if (!r) return std::nullopt;
    c |= r->edge_set();
    auto circuit = try_make_circuit(g, c);
    if (!circuit || !circuit->is_even()) return std::nullopt;
    return circuit;
}

} // namespace detail

/// An even circuit meeting `h_edges`, leaving it, with one or two arcs, whose
/// union with H satisfies the containment property. With `max_arcs == 1` only
/// single-arc adjunctions are returned. Candidates are tried in circuit order.
inline std::optional<Adjunction> find_adjunction(const Multigraph& g, const EdgeSet& h_edges,
                                                 const std::vector<Circuit>& evens, std::size_t max_arcs = 2)
{
    if (h_edges.empty() || !h_edges.is_subset_of(g.edge_set()) || h_edges == g.edge_set())
        throw ContractError("adjunction needs a proper nonempty stage");
    auto accept = [&](const Circuit& c) -> std::optional<Adjunction> {
        if (!c.edges.intersects(h_edges) || c.edges.is_subset_of(h_edges)) return std::nullopt;
        auto arcs = arcs_of(g, c, h_edges);
        if (arcs.empty() || arcs.size() > max_arcs) return std::nullopt;
        auto added = c.edges - h_edges;
        if (arcs.size() == 2 && !detail::containment_holds(h_edges | c.edges, added, evens)) return std::nullopt;
        return Adjunction{c, std::move(arcs)};
    };
    if (max_arcs == 1)
        if (auto c = detail::constructed_single_arc(g, h_edges))
            if (auto a = accept(*c)) return a;
    for (const auto& c : evens)
        if (auto a = accept(c)) return a;
    return std::nullopt;
}

/// Builds an arc decomposition of an even-circuit-connected graph. Bipartite
/// graphs grow by single arcs from their first even circuit; otherwise stage 1
/// is the first 2-arc adjunction (over pairs of even circuits in order) that
/// yields a non-bipartite stage, and every later stage adds one arc.
inline ArcDecomposition decompose(const Multigraph& g, std::size_t cap = kDefaultCircuitCap)
{
    auto ecc = even_circuit_connectivity(g, cap);
    if (!ecc.connected) {
        std::string side = ecc.separated ? describe_edges(*ecc.separated) : std::string("{}");
        throw InputError("graph is not even-circuit-connected: no even circuit crosses the bipartition " + side +
                         " / rest");
    }
    auto evens = even_circuits(g, cap);
    const auto all = g.edge_set();
    ArcDecomposition d;
    EdgeSet stage;
    if (is_bipartite(g).bipartite) {
        stage = evens.front().edges;
        d.stages.push_back(stage);
    } else {
        bool found = false;
        for (std::size_t i = 0; i < evens.size() && !found; ++i) {
            for (std::size_t j = 0; j < evens.size() && !found; ++j) {
                if (i == j) continue;
                const auto& c0 = evens[i].edges;
                const auto& c = evens[j];
                if (!c.edges.intersects(c0)) continue;
                auto arcs = arcs_of(g, c, c0);
                if (arcs.size() != 2) continue;
                auto g1 = c0 | c.edges;
                if (is_bipartite(subgraph(g, g1)).bipartite) continue;
                if (!detail::containment_holds(g1, c.edges - c0, evens)) continue;
                d.stages.push_back(c0);
                d.stages.push_back(g1);
                d.adjunctions.push_back({c, std::move(arcs)});
                stage = g1;
                found = true;
            }
        }
        if (!found) throw ContractError("no non-bipartite 2-arc adjunction found");
    }
    while (stage != all) {
        auto a = find_adjunction(g, stage, evens, 1);
        if (!a) throw ContractError("no single-arc adjunction extends stage " + std::to_string(d.stages.size() - 1));
        stage |= a->circuit.edges;
        d.stages.push_back(stage);
        d.adjunctions.push_back(std::move(*a));
    }
    return d;
}

/// Rechecks every decomposition invariant from scratch. Returns the first
/// violation, or nullopt when the decomposition conforms.
inline std::optional<std::string> validate(const Multigraph& g, const ArcDecomposition& d,
                                           std::size_t cap = kDefaultCircuitCap)
{
    if (d.stages.empty()) return "no stages";
    if (d.adjunctions.size() + 1 != d.stages.size()) return "adjunction count does not match stage count";
    auto evens = even_circuits(g, cap);
    auto g0 = try_make_circuit(g, d.stages.front());
    if (!g0 || !g0->is_even()) return std::string("EG0 is not an even circuit");
    if (d.stages.back() != g.edge_set()) return std::string("last stage is not the whole graph");
    for (std::size_t i = 0; i < d.stages.size(); ++i) {
        const auto& s = d.stages[i];
        auto label = "stage " + std::to_string(i);
        if (!s.is_subset_of(g.edge_set())) return label + " has edges outside the graph";
        if (!even_circuit_connectivity(s, evens).connected) return label + " is not even-circuit-connected";
        if (i == 0) continue;
        const auto& prev = d.stages[i - 1];
        if (!prev.is_subset_of(s) || prev == s) return label + " does not strictly grow the previous stage";
        const auto& adj = d.adjunctions[i - 1];
        auto c = try_make_circuit(g, adj.circuit.edges);
        if (!c || !c->is_even()) return label + ": adjoined edge set is not an even circuit";
        auto added = s - prev;
        if (!added.is_subset_of(c->edges)) return label + ": circuit does not include the new edges";
        if ((prev | c->edges) != s) return label + ": stage is not the previous stage plus the circuit";
        if (!c->edges.intersects(prev)) return label + ": circuit does not meet the previous stage";
        auto arcs = arcs_of(g, *c, prev);
        if (arcs.empty() || arcs.size() > 2) return label + ": circuit has " + std::to_string(arcs.size()) + " arcs";
        EdgeSet arc_edges;
        for (const auto& p : arcs) arc_edges |= p.edge_set();
        if (arc_edges != added) return label + ": arcs do not cover the new edges";
        EdgeSet stored;
        for (const auto& p : adj.arcs) stored |= p.edge_set();
        if (stored != added || adj.arcs.size() != arcs.size()) return label + ": recorded arcs are wrong";
        if (!detail::containment_holds(s, added, evens))
            return label + ": an even circuit meets the new edges without containing them";
        if (arcs.size() == 2 && i != 1)
            return label + ": 2-arc adjunction after stage 1 (only stage 1 may add two arcs)";
    }
    return std::nullopt;
}

/// Number of arcs adjoined at each stage (index 0 is stage 1).
inline std::vector<std::size_t> arc_counts(const ArcDecomposition& d)
{
    std::vector<std::size_t> out;
    for (const auto& a : d.adjunctions) out.push_back(a.arcs.size());
    return out;
}

} // namespace parity
