#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "circuits.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "solver.hpp"

namespace parity {

inline constexpr std::size_t kDefaultMatchingCap = 1'000'000;

struct PerfectMatching {
    EdgeSet edges;
    friend bool operator==(const PerfectMatching&, const PerfectMatching&) = default;
};

/// All perfect matchings, found by always covering the smallest uncovered
/// vertex with its incident edges in ascending id order.
inline std::vector<PerfectMatching> enumerate_perfect_matchings(const Multigraph& g,
                                                                std::size_t cap = kDefaultMatchingCap)
{
    std::vector<PerfectMatching> out;
    const auto n = g.num_vertices();
    if (n % 2 != 0) return out;
    std::vector<char> covered(n, 0);
    EdgeSet current;
    auto rec = [&](auto&& self, std::size_t from) -> void {
        while (from < n && covered[from]) ++from;
        if (from == n) {
            out.push_back({current});
            if (out.size() > cap)
                throw ResourceError("more than " + std::to_string(cap) + " perfect matchings (matching cap)");
            return;
        }
        int x = g.vertices()[from];
        covered[from] = 1;
        for (int id : g.incident(x)) {
            const auto& e = g.edge(id);
            if (e.is_loop()) continue;
            auto yi = static_cast<std::size_t>(g.vertex_index(e.other(x)));
            if (covered[yi]) continue;
            covered[yi] = 1;
            current.set(id);
            self(self, from + 1);
            current.reset(id);
            covered[yi] = 0;
        }
        covered[from] = 0;
    };
    rec(rec, 0);
    return out;
}

/// Circuits equal to the symmetric difference of two distinct perfect
/// matchings, each once, in circuit order.
inline std::vector<Circuit> alternating_circuits(const Multigraph& g, std::size_t cap = kDefaultMatchingCap)
{
    auto ms = enumerate_perfect_matchings(g, cap);
    std::set<EdgeSet, bool (*)(const EdgeSet&, const EdgeSet&)> found(circuit_order);
    for (std::size_t i = 0; i < ms.size(); ++i)
        for (std::size_t j = i + 1; j < ms.size(); ++j) {
            auto diff = ms[i].edges ^ ms[j].edges;
            if (try_make_circuit(g, diff)) found.insert(diff);
        }
    std::vector<Circuit> out;
    for (const auto& s : found) out.push_back(make_circuit(g, s));
    return out;
}

/// An orientation making every alternating circuit clockwise odd, or a set of
/// alternating circuits proving none exists.
inline Verdict find_pfaffian_orientation(const Multigraph& g, std::size_t cap = kDefaultMatchingCap)
{
    auto circuits = alternating_circuits(g, cap);
    std::vector<Parity> targets(circuits.size(), Parity::odd);
    auto base = Orientation::reference(g);
    return decide_system(build_system_for(g, std::move(circuits), std::move(targets), base), base);
}

/// Entry (u, v) counts edges oriented u -> v minus edges oriented v -> u;
/// rows and columns follow ascending vertex id.
inline std::vector<std::vector<long long>> skew_adjacency(const Multigraph& g, const Orientation& o)
{
    if (!o.orients(g)) throw ContractError("orientation does not orient the graph");
    const auto n = g.num_vertices();
    std::vector<std::vector<long long>> m(n, std::vector<long long>(n, 0));
    for (const auto& e : g.edges()) {
        if (e.is_loop()) continue;
        auto a = o.at(e.id);
        int t = g.vertex_index(a.tail), h = g.vertex_index(a.head);
        ++m[t][h];
        --m[h][t];
    }
    return m;
}

/// Exact determinant by fraction-free (Bareiss) elimination in 128-bit integers.
inline __int128 determinant(std::vector<std::vector<long long>> a)
{
    const auto n = a.size();
    if (n == 0) return 1;
    std::vector<std::vector<__int128>> m(n, std::vector<__int128>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
    __int128 sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                __int128 x = 0, y = 0, z = 0;
                if (__builtin_mul_overflow(m[i][j], m[k][k], &x) || __builtin_mul_overflow(m[i][k], m[k][j], &y) ||
                    __builtin_sub_overflow(x, y, &z))
                    throw CapabilityError("determinant exceeds 128-bit range");
                m[i][j] = z / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

namespace detail {

inline std::uint64_t exact_sqrt(__int128 v)
{
    if (v < 0) throw ContractError("negative determinant: orientation is not Pfaffian");
    unsigned __int128 lo = 0, hi = (unsigned __int128)1 << 64;
    while (lo + 1 < hi) {
        auto mid = (lo + hi) / 2;
        if (mid * mid <= static_cast<unsigned __int128>(v))
            lo = mid;
        else
            hi = mid;
    }
    if (lo * lo != static_cast<unsigned __int128>(v))
        throw ContractError("determinant is not a perfect square: orientation is not Pfaffian");
    return static_cast<std::uint64_t>(lo);
}

} // namespace detail

/// Number of perfect matchings as the square root of det of the skew
/// adjacency matrix under a Pfaffian orientation.
inline std::uint64_t kasteleyn_count(const Multigraph& g, const Orientation& o)
{
    return detail::exact_sqrt(determinant(skew_adjacency(g, o)));
}

} // namespace parity
