#pragma once

// Brute-force reference implementations used only by the tests. None of them
// call the library algorithms they are compared against.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "parity/parity.hpp"

namespace oracle {

using parity::EdgeSet;
using parity::Multigraph;

/// Edge subsets that form a single circuit: connected, every touched vertex of
/// degree two (a loop counts twice). Exhaustive over 2^m subsets.
inline std::vector<EdgeSet> circuits(const Multigraph& g)
{
    const auto m = g.num_edges();
    std::vector<EdgeSet> out;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
        std::map<int, int> deg;
        std::map<int, int> parent;
        std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
        EdgeSet s;
        for (std::size_t i = 0; i < m; ++i) {
            if (!(mask >> i & 1U)) continue;
            const auto& e = g.edges()[i];
            s.set(e.id);
            deg[e.u] += 1;
            deg[e.v] += 1;
            parent.try_emplace(e.u, e.u);
            parent.try_emplace(e.v, e.v);
            parent[find(e.u)] = find(e.v);
        }
        bool ok = true;
        std::set<int> roots;
        for (auto [v, d] : deg) {
            if (d != 2) ok = false;
            roots.insert(find(v));
        }
        if (ok && roots.size() == 1) out.push_back(s);
    }
    return out;
}

inline std::vector<EdgeSet> even_circuits(const Multigraph& g)
{
    std::vector<EdgeSet> out;
    for (auto& c : oracle::circuits(g))
        if (c.count() % 2 == 0) out.push_back(c);
    return out;
}

/// Clockwise parity of an even circuit when edge i (position in g.edges()) is
/// directed from its smaller to its larger endpoint iff bit i of `dir` is 0.
inline bool clockwise_odd(const Multigraph& g, const EdgeSet& c, std::uint64_t dir)
{
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < g.num_edges(); ++i)
        if (c.test(g.edges()[i].id)) pos.push_back(i);
    std::vector<char> used(pos.size(), 0);
    const auto& first = g.edges()[pos[0]];
    int at = first.v;
    int agree = (dir >> pos[0] & 1U) ? 0 : 1;
    used[0] = 1;
    for (std::size_t step = 1; step < pos.size(); ++step)
        for (std::size_t k = 0; k < pos.size(); ++k) {
            if (used[k]) continue;
            const auto& e = g.edges()[pos[k]];
            if (e.u != at && e.v != at) continue;
            bool forward_ref = e.u == at; // traversal goes u -> v
            bool reversed = dir >> pos[k] & 1U;
            if (forward_ref != reversed) ++agree;
            at = e.other(at);
            used[k] = 1;
            break;
        }
    return agree % 2 == 1;
}

/// True iff some orientation among all 2^m gives each even circuit the parity
/// `target(c)` (true = odd).
template <class Target>
bool compatible(const Multigraph& g, const std::vector<EdgeSet>& evens, Target target)
{
    const auto m = g.num_edges();
    std::vector<bool> want;
    for (const auto& c : evens) want.push_back(target(c));
    for (std::uint64_t dir = 0; dir < (std::uint64_t{1} << m); ++dir) {
        bool ok = true;
        for (std::size_t i = 0; i < evens.size() && ok; ++i) ok = clockwise_odd(g, evens[i], dir) == want[i];
        if (ok) return true;
    }
    return false;
}

/// Some even circuit exists and every bipartition of E(g) into two nonempty
/// parts is crossed by an even circuit, checked bipartition by bipartition.
inline bool even_circuit_connected(const Multigraph& g)
{
    const auto m = g.num_edges();
    auto evens = oracle::even_circuits(g);
    if (evens.empty()) return false;
    std::vector<std::uint64_t> masks;
    for (const auto& c : evens) {
        std::uint64_t mk = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (c.test(g.edges()[i].id)) mk |= std::uint64_t{1} << i;
        masks.push_back(mk);
    }
    const std::uint64_t all = (std::uint64_t{1} << m) - 1;
    // Fixing edge 0 on side A covers each unordered bipartition once.
    for (std::uint64_t a = 1; a < all; a += 2) {
        bool crossed = false;
        for (auto mk : masks)
            if ((mk & a) && (mk & ~a & all)) {
                crossed = true;
                break;
            }
        if (!crossed) return false;
    }
    return true;
}

/// Perfect matchings as edge subsets of size |V|/2 covering every vertex.
inline std::size_t perfect_matching_count(const Multigraph& g)
{
    const auto n = g.num_vertices();
    if (n % 2 != 0) return 0;
    std::size_t count = 0;
    std::set<int> covered;
    auto rec = [&](auto&& self, std::size_t from) -> void {
        if (covered.size() == n) {
            ++count;
            return;
        }
        for (std::size_t i = from; i < g.num_edges(); ++i) {
            const auto& e = g.edges()[i];
            if (e.is_loop() || covered.count(e.u) || covered.count(e.v)) continue;
            covered.insert(e.u);
            covered.insert(e.v);
            self(self, i + 1);
            covered.erase(e.u);
            covered.erase(e.v);
        }
    };
    rec(rec, 0);
    return count;
}

/// Connected after deleting any single vertex, with at least two vertices.
inline bool two_connected(const Multigraph& g)
{
    auto connected_without = [&](int skip) {
        std::set<int> seen;
        std::vector<int> stack;
        for (int v : g.vertices())
            if (v != skip) {
                stack.push_back(v);
                seen.insert(v);
                break;
            }
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (const auto& e : g.edges()) {
                if (e.u != x && e.v != x) continue;
                int y = e.other(x);
                if (y == skip || seen.count(y)) continue;
                seen.insert(y);
                stack.push_back(y);
            }
        }
        return seen.size() + (skip >= 0 ? 1 : 0) == g.num_vertices();
    };
    if (g.num_vertices() < 2) return false;
    if (!connected_without(-1)) return false;
    if (g.num_vertices() == 2) {
        std::size_t links = 0;
        for (const auto& e : g.edges()) links += e.is_loop() ? 0 : 1;
        return links >= 2;
    }
    for (int v : g.vertices())
        if (!connected_without(v)) return false;
    return true;
}

} // namespace oracle
