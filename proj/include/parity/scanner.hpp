#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "catalog.hpp"
#include "circuits.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "solver.hpp"
#include "transforms.hpp"

namespace parity {

/// A subgraph certifying incompatibility: after the optional odd-circuit
/// contraction it is an even splitting of `base_name`, and J satisfies the
/// base's parity rule on its lifted even circuits.
struct ForbiddenWitness {
    std::string base_name;
    EdgeSet subgraph_edges;
    std::optional<EdgeSet> odd_circuit_contracted;
    SplittingTrace splitting_trace;
    std::vector<Circuit> circuits; ///< the 3 or 4 even circuits, as circuits of the scanned graph
    std::vector<Parity> circuit_parities;
};

enum class ScanMode {
    theorem, ///< all nine base graphs, even splittings
    all_odd, ///< even subdivisions of O1 (three even paths)
    all_even ///< even subdivisions of E1 (three odd paths) or E3
};

struct ScanOptions {
    std::size_t circuit_cap = kDefaultCircuitCap;
    std::size_t budget = 1'000'000; ///< candidate subgraphs examined per graph
    bool odd_contraction = true;
};

namespace detail {

/// A J-independent match of a candidate subgraph against a base graph.
struct Structure {
    std::string base;
    ParityRule rule = ParityRule::odd_count;
    EdgeSet edges;
    std::optional<EdgeSet> odd_circuit;
    SplittingTrace trace;
    std::vector<Circuit> circuits;
};

inline bool structure_order(const Structure& a, const Structure& b)
{
    if (a.edges.count() != b.edges.count()) return a.edges.count() < b.edges.count();
    return a.edges < b.edges;
}

/// True iff `s` spans a single path; its length is |s|.
inline bool is_path(const Multigraph& g, const EdgeSet& s)
{
    if (s.empty()) return false;
    std::map<int, int> deg;
    s.for_each([&](int id) {
        const auto& e = g.edge(id);
        ++deg[e.u];
        ++deg[e.v];
    });
    if (deg.size() != s.count() + 1) return false;
    for (auto [v, d] : deg)
        if (d > 2) return false;
    return is_connected(subgraph(g, s));
}

class StructureFinder {
public:
    StructureFinder(ScanMode mode, const ScanOptions& opts, std::size_t& examined)
        : mode_(mode), opts_(opts), examined_(examined)
    {
    }

    /// Structures contained directly in `g`, sorted by (size, edge ids).
    std::vector<Structure> find(const Multigraph& g) const
    {
        auto evens = even_circuits(g, opts_.circuit_cap);
        std::unordered_map<EdgeSet, std::size_t, BitSetHash> index;
        for (std::size_t i = 0; i < evens.size(); ++i) index.emplace(evens[i].edges, i);

        std::vector<Structure> out;
        std::set<EdgeSet> seen;
        auto consider = [&](const EdgeSet& h) {
            if (!seen.insert(h).second) return;
            tick();
            if (auto s = match(g, h)) out.push_back(std::move(*s));
        };
        const auto n = evens.size();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const auto& a = evens[i].edges;
                const auto& b = evens[j].edges;
                auto x = a ^ b;
                if (index.count(x) != 0U && prefilter_pair(g, a, b)) consider(a | b);
                if (mode_ != ScanMode::theorem) continue;
                for (std::size_t k = j + 1; k < n; ++k) {
                    auto y = x ^ evens[k].edges;
                    auto it = index.find(y);
                    if (it != index.end() && it->second > k) consider(a | b | evens[k].edges);
                }
            }
        }
        std::sort(out.begin(), out.end(), structure_order);
        return out;
    }

private:
    void tick() const
    {
        if (++examined_ > opts_.budget)
            throw ResourceError("scan budget of " + std::to_string(opts_.budget) +
                                " candidate subgraphs exhausted; the search was partial and found no witness "
                                "among the candidates examined");
    }

    /// Fast theta test for the constant-assignment modes: the shared part of the two
    /// circuits must be one path whose length has the required parity.
    bool prefilter_pair(const Multigraph& g, const EdgeSet& a, const EdgeSet& b) const
    {
        if (mode_ == ScanMode::theorem) return true;
        auto shared = a & b;
        if (!is_path(g, shared)) return false;
        bool even_path = shared.count() % 2 == 0;
        if (mode_ == ScanMode::all_odd) return even_path;
        return true; // E3 candidates need both parities; E1 is decided in match()
    }

    std::optional<Structure> match(const Multigraph& g, const EdgeSet& h_edges) const
    {
        auto h = subgraph(g, h_edges);
        auto rank = cycle_rank(h);
        std::optional<std::vector<Circuit>> h_evens;
        for (const auto& entry : catalog()) {
            if (!entry.theorem_base || !wanted(entry.name)) continue;
            if (cycle_rank(entry.graph) != rank) continue;
            if (!h_evens) h_evens = even_circuits(h, opts_.circuit_cap);
            if (h_evens->size() != entry.even_circuit_count) continue;
            auto trace = mode_ == ScanMode::theorem ? is_even_splitting_of(h, entry.graph)
                                                    : is_even_subdivision_of(h, entry.graph);
            if (!trace) continue;
            return Structure{entry.name, entry.rule, h_edges, std::nullopt, std::move(*trace), *h_evens};
        }
        return std::nullopt;
    }

    [[nodiscard]] bool wanted(const std::string& name) const
    {
        switch (mode_) {
        case ScanMode::theorem: return true;
        case ScanMode::all_odd: return name == "O1";
        case ScanMode::all_even: return name == "E1" || name == "E3";
        }
        return false;
    }

    ScanMode mode_;
    const ScanOptions& opts_;
    std::size_t& examined_;
};

} // namespace detail

/// Searches one graph for forbidden substructures. Structural matches do not
/// depend on J, so they are computed once and reused across assignments.
class ForbiddenScanner {
public:
    ForbiddenScanner(Multigraph g, ScanMode mode = ScanMode::theorem, ScanOptions opts = {})
        : g_(std::move(g)), mode_(mode), opts_(opts)
    {
    }

    /// First witness in search order: direct matches by (size, edge ids), then,
    /// only if none applies, matches after contracting one odd circuit (odd
    /// circuits in enumeration order).
    std::optional<ForbiddenWitness> scan(const ParityAssignment& j)
    {
        if (!direct_) direct_ = finder().find(g_);
        if (auto w = first_applicable(*direct_, j)) return w;
        if (!opts_.odd_contraction) return std::nullopt;
        if (!contracted_) contracted_ = contracted_structures();
        return first_applicable(*contracted_, j);
    }

    [[nodiscard]] const Multigraph& graph() const { return g_; }
    [[nodiscard]] std::size_t candidates_examined() const { return examined_; }

private:
    detail::StructureFinder finder() { return detail::StructureFinder(mode_, opts_, examined_); }

    std::vector<detail::Structure> contracted_structures()
    {
        std::vector<detail::Structure> out;
        for (const auto& a : enumerate_circuits(g_, opts_.circuit_cap)) {
            if (a.is_even()) continue;
            if (a.length() == 1) continue; // contracting a loop changes nothing
            TraceStep step = OddCircuitContraction{a.edges};
            auto [contracted, map] = contract_odd_circuit(g_, a.edges);
            int merged = map.vertex_image.at(a.sense.front().vertex);
            auto found = finder().find(contracted);
            for (auto& s : found) {
                if (vertices_of(contracted, s.edges).count(merged) == 0) continue; // already a direct match
                detail::Structure lifted;
                lifted.base = s.base;
                lifted.rule = s.rule;
                lifted.edges = s.edges | a.edges;
                lifted.odd_circuit = a.edges;
                for (const auto& c : s.circuits) lifted.circuits.push_back(lift_even_circuit(g_, step, c.edges));
                lifted.trace.from_graph = subgraph(g_, lifted.edges);
                lifted.trace.to_graph = s.trace.to_graph;
                lifted.trace.steps.push_back(step);
                lifted.trace.steps.insert(lifted.trace.steps.end(), s.trace.steps.begin(), s.trace.steps.end());
                out.push_back(std::move(lifted));
            }
        }
        return out;
    }

    static std::optional<ForbiddenWitness> first_applicable(const std::vector<detail::Structure>& list,
                                                            const ParityAssignment& j)
    {
        for (const auto& s : list) {
            std::vector<Parity> ps;
            std::size_t evens = 0;
            for (const auto& c : s.circuits) {
                ps.push_back(j.at(c.edges));
                if (ps.back() == Parity::even) ++evens;
            }
            if (!rule_predicts_incompatible(s.rule, evens)) continue;
            return ForbiddenWitness{s.base, s.edges, s.odd_circuit, s.trace, s.circuits, std::move(ps)};
        }
        return std::nullopt;
    }

    Multigraph g_;
    ScanMode mode_;
    ScanOptions opts_;
    std::size_t examined_ = 0;
    std::optional<std::vector<detail::Structure>> direct_;
    std::optional<std::vector<detail::Structure>> contracted_;
};

/// Searches `g` for an even splitting of one of the nine base graphs whose
/// even circuits receive a forbidden parity pattern from `j`.
inline std::optional<ForbiddenWitness> scan_theorem_main(const Multigraph& g, const ParityAssignment& j,
                                                         const ScanOptions& opts = {})
{
    return ForbiddenScanner(g, ScanMode::theorem, opts).scan(j);
}

/// Even subdivision of K_{2,3}, possibly after contracting one odd circuit.
inline std::optional<ForbiddenWitness> scan_all_odd(const Multigraph& g, const ScanOptions& opts = {})
{
    return ForbiddenScanner(g, ScanMode::all_odd, opts).scan(ParityAssignment::all_odd());
}

/// Even subdivision of E1 or E3, possibly after contracting one odd circuit.
inline std::optional<ForbiddenWitness> scan_all_even(const Multigraph& g, const ScanOptions& opts = {})
{
    return ForbiddenScanner(g, ScanMode::all_even, opts).scan(ParityAssignment::all_even());
}

/// Independent re-verification of a witness against `g` and `j`. Returns the
/// first failed check, or nullopt when the witness holds.
inline std::optional<std::string> verify_witness(const Multigraph& g, const ParityAssignment& j,
                                                 const ForbiddenWitness& w, std::size_t cap = kDefaultCircuitCap)
{
    const CatalogEntry* entry = nullptr;
    for (const auto& e : catalog())
        if (e.name == w.base_name && e.theorem_base) entry = &e;
    if (entry == nullptr) return "unknown base graph " + w.base_name;
    if (!w.subgraph_edges.is_subset_of(g.edge_set())) return "subgraph edges not in the graph";
    auto h = subgraph(g, w.subgraph_edges);
    if (!(w.splitting_trace.from_graph == h)) return "trace does not start at the witness subgraph";
    std::size_t odd_steps = 0;
    for (const auto& s : w.splitting_trace.steps)
        if (const auto* o = std::get_if<OddCircuitContraction>(&s)) {
            ++odd_steps;
            if (!w.odd_circuit_contracted || !(o->circuit == *w.odd_circuit_contracted))
                return "odd contraction in the trace does not match the witness";
        }
    if (odd_steps != (w.odd_circuit_contracted ? 1U : 0U)) return "wrong number of odd-circuit contractions";
    if (!w.splitting_trace.steps.empty() && w.odd_circuit_contracted &&
        !std::holds_alternative<OddCircuitContraction>(w.splitting_trace.steps.front()))
        return "odd-circuit contraction must come first";
    if (!trace_is_valid(w.splitting_trace, &entry->graph)) return "trace does not reach the base graph";

    std::set<EdgeSet> lifted;
    auto end = replay(w.splitting_trace).back();
    for (const auto& c : even_circuits(end, cap)) lifted.insert(lift_through(w.splitting_trace, c.edges).edges);
    if (lifted.size() != entry->even_circuit_count) return "wrong number of even circuits";
    std::set<EdgeSet> claimed;
    for (const auto& c : w.circuits) claimed.insert(c.edges);
    if (claimed != lifted) return "recorded circuits are not the lifted even circuits";
    std::size_t evens = 0;
    for (std::size_t i = 0; i < w.circuits.size(); ++i) {
        auto c = try_make_circuit(g, w.circuits[i].edges);
        if (!c || !c->is_even()) return "recorded circuit is not an even circuit of the graph";
        auto p = j.at(c->edges);
        if (i >= w.circuit_parities.size() || w.circuit_parities[i] != p) return "recorded parities differ from J";
        if (p == Parity::even) ++evens;
    }
    if (!rule_predicts_incompatible(entry->rule, evens)) return "parity rule of " + w.base_name + " not satisfied";
    return std::nullopt;
}

} // namespace parity
