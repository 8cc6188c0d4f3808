#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"

namespace parity {

/// Largest vertex count accepted by the exhaustive isomorphism routines.
inline constexpr std::size_t kMaxIsomorphismVertices = 12;

namespace detail {

/// Edge multiplicities between vertex positions; the diagonal counts loops.
inline std::vector<std::vector<int>> multiplicity_matrix(const Multigraph& g)
{
    const auto n = g.num_vertices();
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (const auto& e : g.edges()) {
        int a = g.vertex_index(e.u), b = g.vertex_index(e.v);
        ++m[a][b];
        if (a != b) ++m[b][a];
    }
    return m;
}

/// Iterated colour refinement seeded with (degree, loops). Returns a colour per
/// vertex position; colours are comparable across graphs because they are
/// ranks of canonical signatures computed jointly.
inline std::vector<std::vector<long long>> refine_colours(const std::vector<std::vector<std::vector<int>>>& mats)
{
    std::vector<std::vector<long long>> colours(mats.size());
    for (std::size_t k = 0; k < mats.size(); ++k) {
        const auto& m = mats[k];
        colours[k].resize(m.size());
        for (std::size_t i = 0; i < m.size(); ++i) {
            long long deg = 0;
            for (std::size_t j = 0; j < m.size(); ++j) deg += (i == j) ? 2 * m[i][j] : m[i][j];
            colours[k][i] = deg * 1000 + m[i][i];
        }
    }
    for (int round = 0; round < 16; ++round) {
        std::map<std::vector<long long>, long long> rank;
        std::vector<std::vector<std::vector<long long>>> sigs(mats.size());
        for (std::size_t k = 0; k < mats.size(); ++k) {
            const auto& m = mats[k];
            sigs[k].resize(m.size());
            for (std::size_t i = 0; i < m.size(); ++i) {
                std::vector<long long> neigh;
                for (std::size_t j = 0; j < m.size(); ++j)
                    if (j != i && m[i][j]) neigh.push_back(colours[k][j] * 64 + m[i][j]);
                std::sort(neigh.begin(), neigh.end());
                std::vector<long long> sig{colours[k][i]};
                sig.insert(sig.end(), neigh.begin(), neigh.end());
                sigs[k][i] = std::move(sig);
                rank.emplace(sigs[k][i], 0);
            }
        }
        long long r = 0;
        for (auto& [sig, value] : rank) value = r++;
        bool changed = false;
        for (std::size_t k = 0; k < mats.size(); ++k) {
            std::vector<long long> next(mats[k].size());
            for (std::size_t i = 0; i < next.size(); ++i) next[i] = rank[sigs[k][i]];
            if (next != colours[k]) changed = true;
            colours[k] = std::move(next);
        }
        if (!changed) break;
    }
    return colours;
}

} // namespace detail

/// Vertex bijection g1 -> g2 preserving edge multiplicities (loops included),
/// or nullopt when the graphs are not isomorphic. Exhaustive backtracking over
/// vertices of matching refined colour.
inline std::optional<std::map<int, int>> find_isomorphism(const Multigraph& g1, const Multigraph& g2)
{
    if (g1.num_vertices() > kMaxIsomorphismVertices || g2.num_vertices() > kMaxIsomorphismVertices)
        throw CapabilityError("isomorphism test supports at most " + std::to_string(kMaxIsomorphismVertices) +
                              " vertices");
    if (g1.num_vertices() != g2.num_vertices() || g1.num_edges() != g2.num_edges()) return std::nullopt;
    const auto n = g1.num_vertices();
    auto m1 = detail::multiplicity_matrix(g1);
    auto m2 = detail::multiplicity_matrix(g2);
    auto colours = detail::refine_colours({m1, m2});
    {
        auto a = colours[0], b = colours[1];
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return std::nullopt;
    }
    // Map rarest colours first, then by position.
    std::map<long long, int> freq;
    for (auto c : colours[0]) ++freq[c];
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return std::pair{freq[colours[0][a]], colours[0][a]} < std::pair{freq[colours[0][b]], colours[0][b]};
    });

    std::vector<int> image(n, -1);
    std::vector<char> used(n, 0);
    auto extend = [&](auto&& self, std::size_t depth) -> bool {
        if (depth == n) return true;
        int x = order[depth];
        for (std::size_t y = 0; y < n; ++y) {
            if (used[y] || colours[1][y] != colours[0][x]) continue;
            if (m1[x][x] != m2[y][y]) continue;
            bool ok = true;
            for (std::size_t d = 0; d < depth && ok; ++d) {
                int px = order[d];
                if (m1[x][px] != m2[y][image[px]]) ok = false;
            }
            if (!ok) continue;
            image[x] = static_cast<int>(y);
            used[y] = 1;
            if (self(self, depth + 1)) return true;
            used[y] = 0;
            image[x] = -1;
        }
        return false;
    };
    if (!extend(extend, 0)) return std::nullopt;
    std::map<int, int> out;
    for (std::size_t i = 0; i < n; ++i) out[g1.vertices()[i]] = g2.vertices()[static_cast<std::size_t>(image[i])];
    return out;
}

inline bool isomorphic(const Multigraph& g1, const Multigraph& g2)
{
    return find_isomorphism(g1, g2).has_value();
}

/// Canonical code of a small multigraph: the lexicographically least
/// upper-triangular multiplicity sequence over all vertex orders compatible
/// with the refined colour partition. Two graphs are isomorphic iff their codes
/// are equal.
inline std::vector<int> canonical_code(const Multigraph& g)
{
    if (g.num_vertices() > kMaxIsomorphismVertices)
        throw CapabilityError("canonical form supports at most " + std::to_string(kMaxIsomorphismVertices) +
                              " vertices");
    const auto n = g.num_vertices();
    auto m = detail::multiplicity_matrix(g);
    auto colour = detail::refine_colours({m})[0];

    // Cells ordered by colour; permutations are tried within each cell.
    std::map<long long, std::vector<int>> cells;
    for (std::size_t i = 0; i < n; ++i) cells[colour[i]].push_back(static_cast<int>(i));
    double work = 1;
    for (auto& [c, members] : cells)
        for (std::size_t k = 2; k <= members.size(); ++k) work *= static_cast<double>(k);
    if (work > 5e6) throw CapabilityError("canonical form: colour classes too large for exhaustive search");

    std::vector<std::vector<int>> groups;
    for (auto& [c, members] : cells) groups.push_back(members);
    std::vector<int> best;
    bool have_best = false;
    std::vector<int> order;
    auto emit = [&]() {
        std::vector<int> code;
        code.reserve(n * (n + 1) / 2 + 1);
        code.push_back(static_cast<int>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) code.push_back(m[order[i]][order[j]]);
        if (!have_best || code < best) {
            best = std::move(code);
            have_best = true;
        }
    };
    auto rec = [&](auto&& self, std::size_t gi) -> void {
        if (gi == groups.size()) {
            emit();
            return;
        }
        auto cell = groups[gi];
        std::sort(cell.begin(), cell.end());
        do {
            auto mark = order.size();
            order.insert(order.end(), cell.begin(), cell.end());
            self(self, gi + 1);
            order.resize(mark);
        } while (std::next_permutation(cell.begin(), cell.end()));
    };
    rec(rec, 0);
    if (!have_best) best.push_back(0);
    return best;
}

} // namespace parity
