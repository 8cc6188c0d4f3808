#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "circuits.hpp"
#include "errors.hpp"
#include "gf2.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "isomorphism.hpp"
#include "solver.hpp"

namespace parity {

/// Which count of prescribed clockwise-even circuits makes a base graph incompatible.
enum class ParityRule { even_count, odd_count };

struct CatalogEntry {
    std::string name;
    std::string text;          ///< graph file contents
    std::size_t even_circuit_count = 0;
    ParityRule rule = ParityRule::odd_count;
    bool theorem_base = true;  ///< false for the auxiliary A graphs
    Multigraph graph;
};

namespace detail {

inline const char* const kO1 = "c O1: K_{2,3}\n"
                               "p parity-graph 5 6\n"
                               "e 1 1 3\ne 2 1 4\ne 3 1 5\ne 4 2 3\ne 5 2 4\ne 6 2 5\n";
inline const char* const kO2 = "c O2: K_4 with the three edges at vertex 4 subdivided once\n"
                               "p parity-graph 7 9\n"
                               "e 1 1 2\ne 2 1 3\ne 3 2 3\ne 4 1 5\ne 5 4 5\ne 6 2 6\ne 7 4 6\ne 8 3 7\ne 9 4 7\n";
inline const char* const kE1 = "c E1: three parallel edges\n"
                               "p parity-graph 2 3\n"
                               "e 1 1 2\ne 2 1 2\ne 3 1 2\n";
inline const char* const kE2 = "c E2: K_4\n"
                               "p parity-graph 4 6\n"
                               "e 1 1 2\ne 2 1 3\ne 3 1 4\ne 4 2 3\ne 5 2 4\ne 6 3 4\n";
inline const char* const kE3 = "c E3: K_4 with the 4-circuit 1-2-3-4 subdivided once per edge\n"
                               "p parity-graph 8 10\n"
                               "e 1 1 5\ne 2 2 5\ne 3 2 6\ne 4 3 6\ne 5 3 7\ne 6 4 7\ne 7 4 8\ne 8 1 8\n"
                               "e 9 1 3\ne 10 2 4\n";
inline const char* const kD1 = "c D1: three triangles joined in a ring by single edges\n"
                               "p parity-graph 9 12\n"
                               "e 1 1 2\ne 2 1 3\ne 3 2 3\ne 4 4 5\ne 5 4 6\ne 6 5 6\ne 7 7 8\ne 8 7 9\n"
                               "e 9 8 9\ne 10 2 4\ne 11 5 7\ne 12 1 8\n";
inline const char* const kD2 = "c D2: D1 with one joining edge contracted\n"
                               "p parity-graph 8 11\n"
                               "e 1 1 2\ne 2 1 3\ne 3 2 3\ne 4 4 5\ne 5 4 6\ne 6 5 6\ne 7 1 7\ne 8 7 8\n"
                               "e 9 1 8\ne 10 2 4\ne 11 5 7\n";
inline const char* const kD3 = "c D3: D1 with two joining edges contracted\n"
                               "p parity-graph 7 10\n"
                               "e 1 1 2\ne 2 1 3\ne 3 2 3\ne 4 2 4\ne 5 2 5\ne 6 4 5\ne 7 1 6\ne 8 1 7\n"
                               "e 9 6 7\ne 10 4 6\n";
inline const char* const kD4 = "c D4: D1 with all three joining edges contracted\n"
                               "p parity-graph 6 9\n"
                               "e 1 1 2\ne 2 1 3\ne 3 2 3\ne 4 2 4\ne 5 2 5\ne 6 4 5\ne 7 1 4\ne 8 1 6\n"
                               "e 9 4 6\n";
inline const char* const kA1 = "c A1: two triangles joined by two single edges\n"
                               "p parity-graph 6 8\n"
                               "e 1 1 2\ne 2 1 3\ne 3 2 3\ne 4 4 5\ne 5 4 6\ne 6 5 6\ne 7 1 4\ne 8 2 5\n";
inline const char* const kA2 = "c A2: two triangles joined by paths of lengths 1 and 2\n"
                               "p parity-graph 7 9\n"
                               "e 1 1 2\ne 2 1 3\ne 3 2 3\ne 4 4 5\ne 5 4 6\ne 6 5 6\ne 7 1 4\ne 8 2 7\n"
                               "e 9 5 7\n";
inline const char* const kA3 = "c A3: two triangles joined by two paths of length 2\n"
                               "p parity-graph 8 10\n"
                               "e 1 1 2\ne 2 1 3\ne 3 2 3\ne 4 4 5\ne 5 4 6\ne 6 5 6\ne 7 1 7\ne 8 4 7\n"
                               "e 9 2 8\ne 10 5 8\n";
inline const char* const kA4 = "c A4: two triangles sharing a vertex, joined by a single edge\n"
                               "p parity-graph 5 7\n"
                               "e 1 1 2\ne 2 1 3\ne 3 2 3\ne 4 1 4\ne 5 1 5\ne 6 4 5\ne 7 2 4\n";
inline const char* const kA5 = "c A5: two triangles sharing a vertex, joined by a path of length 2\n"
                               "p parity-graph 6 8\n"
                               "e 1 1 2\ne 2 1 3\ne 3 2 3\ne 4 1 4\ne 5 1 5\ne 6 4 5\ne 7 2 6\ne 8 4 6\n";

inline CatalogEntry make_entry(const char* name, const char* text, std::size_t evens, ParityRule rule, bool base)
{
    return CatalogEntry{name, text, evens, rule, base, parse_graph(text)};
}

} // namespace detail

/// The nine base graphs followed by the five auxiliary graphs, in fixed order.
inline const std::vector<CatalogEntry>& catalog()
{
    using detail::make_entry;
    static const std::vector<CatalogEntry> entries = {
        make_entry("O1", detail::kO1, 3, ParityRule::even_count, true),
        make_entry("O2", detail::kO2, 3, ParityRule::even_count, true),
        make_entry("E1", detail::kE1, 3, ParityRule::odd_count, true),
        make_entry("E2", detail::kE2, 3, ParityRule::odd_count, true),
        make_entry("E3", detail::kE3, 3, ParityRule::odd_count, true),
        make_entry("D1", detail::kD1, 4, ParityRule::odd_count, true),
        make_entry("D2", detail::kD2, 4, ParityRule::odd_count, true),
        make_entry("D3", detail::kD3, 4, ParityRule::odd_count, true),
        make_entry("D4", detail::kD4, 4, ParityRule::odd_count, true),
        make_entry("A1", detail::kA1, 2, ParityRule::odd_count, false),
        make_entry("A2", detail::kA2, 2, ParityRule::odd_count, false),
        make_entry("A3", detail::kA3, 2, ParityRule::odd_count, false),
        make_entry("A4", detail::kA4, 2, ParityRule::odd_count, false),
        make_entry("A5", detail::kA5, 2, ParityRule::odd_count, false),
    };
    return entries;
}

inline const CatalogEntry& catalog_entry(const std::string& name)
{
    for (const auto& e : catalog())
        if (e.name == name) return e;
    throw InputError("no catalog entry named '" + name + "'");
}

/// True iff J makes a base graph incompatible under its rule, given the
/// number of its even circuits prescribed clockwise even.
inline bool rule_predicts_incompatible(ParityRule rule, std::size_t prescribed_even)
{
    return rule == ParityRule::even_count ? prescribed_even % 2 == 0 : prescribed_even % 2 == 1;
}

namespace detail {

/// Subdivides every listed edge once; new vertices get fresh ids.
inline Multigraph subdivide_once(const Multigraph& g, const EdgeSet& edges)
{
    int next_vertex = g.max_vertex_id() + 1;
    int next_edge = g.max_edge_id() + 1;
    std::vector<Edge> out;
    for (const auto& e : g.edges()) {
        if (!edges.test(e.id)) {
            out.push_back(e);
            continue;
        }
        int w = next_vertex++;
        out.push_back({e.id, e.u, w});
        out.push_back({next_edge++, w, e.v});
    }
    return Multigraph(g.vertices(), std::move(out));
}

inline bool contracts_from(const Multigraph& big, const Multigraph& small)
{
    const auto drop = big.num_edges() - small.num_edges();
    auto ids = big.edge_set().to_vector();
    std::vector<char> pick(ids.size(), 0);
    std::fill(pick.end() - static_cast<std::ptrdiff_t>(drop), pick.end(), 1);
    do {
        EdgeSet s;
        for (std::size_t i = 0; i < ids.size(); ++i)
            if (pick[i]) s.set(ids[i]);
        if (isomorphic(contract_edges(big, s).first, small)) return true;
    } while (std::next_permutation(pick.begin(), pick.end()));
    return false;
}

} // namespace detail

/// Recomputes every catalog invariant and returns one line per check. Throws
/// FixtureError naming the entry at the first failure.
inline std::vector<std::string> catalog_selfcheck()
{
    std::vector<std::string> report;
    auto require = [&](bool ok, const std::string& entry, const std::string& what) {
        if (!ok) throw FixtureError("catalog entry " + entry + ": " + what);
        report.push_back(entry + ": " + what);
    };
    auto k4 = Multigraph::from_pairs({{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
    auto k23 = Multigraph::from_pairs({{1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});

    for (const auto& e : catalog()) {
        const auto& g = e.graph;
        require(emit_graph(g) == e.text.substr(e.text.find('\n') + 1), e.name, "text is canonical");
        auto evens = even_circuits(g);
        require(evens.size() == e.even_circuit_count, e.name,
                std::to_string(e.even_circuit_count) + " even circuits");
        require(is_even_circuit_connected(g), e.name, "even-circuit-connected");

        if (e.theorem_base) {
            Gf2Matrix m(static_cast<std::size_t>(g.max_edge_id()) + 1);
            for (const auto& c : evens) m.add_row(c.edges);
            auto deps = nullspace_combinations(m);
            require(deps.size() == 1 && deps[0].size() == evens.size(), e.name,
                    "the set of all even circuits is the only dependent set");
            // Every explicit assignment of the even circuits.
            const std::size_t n = evens.size();
            for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
                auto j = ParityAssignment::explicit_map();
                std::size_t prescribed_even = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    bool even = (mask >> i) & 1U;
                    j.set(evens[i].edges, even ? Parity::even : Parity::odd);
                    prescribed_even += even ? 1 : 0;
                }
                bool incompatible = std::holds_alternative<Incompatible>(decide(g, j));
                if (incompatible != rule_predicts_incompatible(e.rule, prescribed_even))
                    throw FixtureError("catalog entry " + e.name + ": assignment pattern " + std::to_string(mask) +
                                       " disagrees with the parity rule");
            }
            report.push_back(e.name + ": incompatibility pattern over all " +
                             std::to_string(std::size_t{1} << n) + " assignments");
        } else {
            require(!is_bipartite(g).bipartite, e.name, "non-bipartite");
        }
    }

    require(isomorphic(catalog_entry("O1").graph, k23), "O1", "isomorphic to K_{2,3}");
    require(isomorphic(catalog_entry("E2").graph, k4), "E2", "isomorphic to K_4");
    const auto& e1 = catalog_entry("E1").graph;
    require(e1.num_vertices() == 2 && e1.num_edges() == 3 && e1.num_loops() == 0, "E1", "three parallel edges");
    require(isomorphic(catalog_entry("O2").graph, detail::subdivide_once(k4, EdgeSet{3, 5, 6})), "O2",
            "K_4 with the edges at one vertex subdivided");
    require(isomorphic(catalog_entry("E3").graph, detail::subdivide_once(k4, EdgeSet{1, 4, 6, 3})), "E3",
            "K_4 with an even circuit subdivided");
    const auto& d1 = catalog_entry("D1").graph;
    for (const char* name : {"D2", "D3", "D4"})
        require(detail::contracts_from(d1, catalog_entry(name).graph), name, "obtained from D1 by contraction");
    return report;
}

} // namespace parity
