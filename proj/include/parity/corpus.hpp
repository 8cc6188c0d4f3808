#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "circuits.hpp"
#include "graph.hpp"
#include "isomorphism.hpp"
#include "solver.hpp"

namespace parity {

inline constexpr std::uint32_t kDefaultSeed = 20240611;

struct SmallCorpusOptions {
    std::size_t max_vertices = 5;
    std::size_t max_edges = 8;
    bool loops = true;
};

/// Every connected multigraph within the bounds, one per isomorphism class,
/// on vertices 1..n with edges numbered 1..m in ascending endpoint order.
/// Graphs come ordered by (n, m) and then by canonical code.
inline std::vector<Multigraph> small_corpus(const SmallCorpusOptions& opt = {})
{
    std::vector<Multigraph> out;
    for (std::size_t n = 1; n <= opt.max_vertices; ++n) {
        std::vector<std::pair<int, int>> slots;
        for (int u = 1; u <= static_cast<int>(n); ++u)
            for (int v = u; v <= static_cast<int>(n); ++v)
                if (u != v || opt.loops) slots.push_back({u, v});
        std::vector<int> verts;
        for (int v = 1; v <= static_cast<int>(n); ++v) verts.push_back(v);

        auto build = [&](const std::vector<int>& mult) {
            std::vector<Edge> edges;
            int id = 1;
            for (std::size_t s = 0; s < slots.size(); ++s)
                for (int k = 0; k < mult[s]; ++k) edges.push_back({id++, slots[s].first, slots[s].second});
            return Multigraph(verts, std::move(edges));
        };

        // Level m holds one multiplicity vector per class of m-edge graphs;
        // every such graph is some (m-1)-edge graph plus one edge.
        std::map<std::vector<int>, std::vector<int>> level{{canonical_code(build(std::vector<int>(slots.size(), 0))),
                                                            std::vector<int>(slots.size(), 0)}};
        for (std::size_t m = 0;; ++m) {
            for (const auto& [code, mult] : level) {
                auto g = build(mult);
                if (is_connected(g)) out.push_back(std::move(g));
            }
            if (m == opt.max_edges) break;
            std::map<std::vector<int>, std::vector<int>> next;
            for (const auto& [code, mult] : level)
                for (std::size_t s = 0; s < slots.size(); ++s) {
                    auto grown = mult;
                    ++grown[s];
                    auto c = canonical_code(build(grown));
                    next.emplace(std::move(c), std::move(grown));
                }
            level = std::move(next);
        }
    }
    return out;
}

/// Connected loopless graph on vertices 1..n with m edges: a random spanning
/// tree plus random extra edges, which may repeat an existing pair.
inline Multigraph random_connected_graph(std::mt19937& rng, int n, int m)
{
    auto pick = [&](int k) { return static_cast<int>(rng() % static_cast<std::uint32_t>(k)); };
    std::vector<std::pair<int, int>> pairs;
    for (int v = 2; v <= n; ++v) pairs.push_back({1 + pick(v - 1), v});
    while (static_cast<int>(pairs.size()) < m) {
        int u = 1 + pick(n), v = 1 + pick(n);
        if (u != v) pairs.push_back({std::min(u, v), std::max(u, v)});
    }
    return Multigraph::from_pairs(pairs);
}

/// `count` graphs with 7 or 8 vertices and n+1..n+5 edges from `seed`.
inline std::vector<Multigraph> random_corpus(std::uint32_t seed = kDefaultSeed, std::size_t count = 200)
{
    std::mt19937 rng(seed);
    std::vector<Multigraph> out;
    for (std::size_t i = 0; i < count; ++i) {
        int n = 7 + static_cast<int>(rng() % 2);
        int m = n + 1 + static_cast<int>(rng() % 5);
        out.push_back(random_connected_graph(rng, n, m));
    }
    return out;
}

/// Explicit assignment giving each even circuit of `g` an independent fair
/// coin flip.
inline ParityAssignment random_assignment(const Multigraph& g, std::mt19937& rng,
                                          std::size_t cap = kDefaultCircuitCap)
{
    auto j = ParityAssignment::explicit_map();
    for (const auto& c : even_circuits(g, cap)) j.set(c.edges, (rng() & 1U) ? Parity::odd : Parity::even);
    return j;
}

} // namespace parity
