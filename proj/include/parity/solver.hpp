#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "circuits.hpp"
#include "errors.hpp"
#include "gf2.hpp"
#include "graph.hpp"

namespace parity {

/// Assignment of clockwise parities to even circuits: constant odd, constant
/// even, or an explicit table keyed by circuit edge set.
class ParityAssignment {
public:
    enum class Kind { all_odd, all_even, explicit_map };

    static ParityAssignment all_odd() { return ParityAssignment(Kind::all_odd); }
    static ParityAssignment all_even() { return ParityAssignment(Kind::all_even); }
    static ParityAssignment explicit_map(std::map<EdgeSet, Parity> entries = {},
                                         std::optional<Parity> fallback = std::nullopt)
    {
        ParityAssignment j(Kind::explicit_map);
        for (auto& [k, v] : entries) j.set(k, v);
        j.fallback_ = fallback;
        return j;
    }

    void set(const EdgeSet& circuit, Parity p)
    {
        if (kind_ != Kind::explicit_map) throw ContractError("only explicit assignments hold per-circuit entries");
        if (circuit.count() % 2 != 0)
            throw InputError("assignment key " + describe_edges(circuit) + " has odd cardinality");
        entries_[circuit] = p;
    }
    void set_fallback(std::optional<Parity> p) { fallback_ = p; }

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] const std::map<EdgeSet, Parity>& entries() const { return entries_; }
    [[nodiscard]] std::optional<Parity> fallback() const { return fallback_; }

    [[nodiscard]] Parity at(const EdgeSet& circuit) const
    {
        switch (kind_) {
        case Kind::all_odd: return Parity::odd;
        case Kind::all_even: return Parity::even;
        case Kind::explicit_map: break;
        }
        auto it = entries_.find(circuit);
        if (it != entries_.end()) return it->second;
        if (fallback_) return *fallback_;
        throw InputError("assignment has no parity for even circuit " + describe_edges(circuit));
    }

private:
    explicit ParityAssignment(Kind k) : kind_(k) {}

    Kind kind_;
    std::map<EdgeSet, Parity> entries_;
    std::optional<Parity> fallback_;
};

/// Set of even circuits with empty symmetric difference whose clockwise-even
/// count parity under an orientation differs from the count prescribed.
struct IntractableCertificate {
    std::vector<Circuit> circuits;
    std::vector<Parity> prescribed;   ///< target parity per circuit
    std::vector<Parity> observed;     ///< clockwise parity per circuit under the reference orientation
    Parity observed_even_count_parity = Parity::even;
    Parity prescribed_even_count_parity = Parity::even;
};

/// The linear system whose solutions are edge reversals of `base` reaching the
/// prescribed parities. Column k stands for edge `columns[k]`.
struct ConstraintSystem {
    Gf2Matrix matrix;
    BitSet rhs;
    std::vector<Circuit> circuits;
    std::vector<int> columns;
    std::vector<Parity> prescribed;
    std::vector<Parity> observed;
};

/// Builds one row per circuit over the edges lying on any of them; the rhs bit
/// is set iff the circuit's clockwise parity under `base` differs from its target.
inline ConstraintSystem build_system_for(const Multigraph& g, std::vector<Circuit> circuits,
                                         std::vector<Parity> targets, const Orientation& base)
{
    if (!base.orients(g)) throw ContractError("reference orientation does not orient the graph");
    ConstraintSystem sys;
    EdgeSet used;
    for (const auto& c : circuits) used |= c.edges;
    sys.columns = used.to_vector();
    std::map<int, int> col;
    for (std::size_t k = 0; k < sys.columns.size(); ++k) col[sys.columns[k]] = static_cast<int>(k);
    sys.matrix = Gf2Matrix(sys.columns.size());
    for (std::size_t i = 0; i < circuits.size(); ++i) {
        BitSet row;
        circuits[i].edges.for_each([&](int id) { row.set(col[id]); });
        sys.matrix.add_row(std::move(row));
        auto obs = clockwise_parity(base, circuits[i]);
        sys.observed.push_back(obs);
        if (obs != targets[i]) sys.rhs.set(static_cast<int>(i));
    }
    sys.circuits = std::move(circuits);
    sys.prescribed = std::move(targets);
    return sys;
}

inline ConstraintSystem build_system(const Multigraph& g, const ParityAssignment& j, const Orientation& base,
                                     std::size_t cap = kDefaultCircuitCap)
{
    auto evens = even_circuits(g, cap);
    std::vector<Parity> targets;
    targets.reserve(evens.size());
    for (const auto& c : evens) targets.push_back(j.at(c.edges));
    return build_system_for(g, std::move(evens), std::move(targets), base);
}

struct Compatible {
    Orientation orientation;
};
struct Incompatible {
    IntractableCertificate certificate;
};
using Verdict = std::variant<Compatible, Incompatible>;

namespace detail {

inline Parity count_parity(const std::vector<Parity>& ps, const std::vector<int>& rows)
{
    std::size_t evens = 0;
    for (int r : rows)
        if (ps[static_cast<std::size_t>(r)] == Parity::even) ++evens;
    return parity_of(evens);
}

/// Shrinks an inconsistent row combination until it has no proper dependent
/// subset: any dependency T inside S splits S into T and S - T, and exactly
/// one of them keeps the parity mismatch.
inline std::vector<int> minimize_combination(const ConstraintSystem& sys, std::vector<int> rows)
{
    for (;;) {
        Gf2Matrix sub(sys.matrix.width());
        for (int r : rows) sub.add_row(sys.matrix.row(static_cast<std::size_t>(r)));
        auto basis = left_nullspace_basis(sub);
        std::vector<int> next;
        for (const auto& dep : basis) {
            if (dep.size() == rows.size()) continue;
            std::vector<int> t;
            for (int k : dep) t.push_back(rows[static_cast<std::size_t>(k)]);
            bool mismatch = false;
            for (int r : t) mismatch ^= sys.rhs.test(r);
            if (mismatch) {
                next = std::move(t);
            } else {
                std::vector<char> in(rows.size(), 0);
                for (int k : dep) in[static_cast<std::size_t>(k)] = 1;
                for (std::size_t k = 0; k < rows.size(); ++k)
                    if (!in[k]) next.push_back(rows[k]);
            }
            break;
        }
        if (next.empty()) return rows;
        rows = std::move(next);
    }
}

} // namespace detail

/// Solves the system; on success the orientation is `base` with every edge
/// whose variable is 1 reversed, otherwise a minimized certificate is returned.
inline Verdict decide_system(const ConstraintSystem& sys, const Orientation& base)
{
    auto result = solve(sys.matrix, sys.rhs);
    if (auto* x = std::get_if<BitSet>(&result)) {
        Orientation o = base;
        x->for_each([&](int k) { o.reverse(sys.columns[static_cast<std::size_t>(k)]); });
        return Compatible{std::move(o)};
    }
    auto rows = detail::minimize_combination(sys, std::get<Inconsistency>(result).row_combination);
    IntractableCertificate cert;
    for (int r : rows) {
        cert.circuits.push_back(sys.circuits[static_cast<std::size_t>(r)]);
        cert.prescribed.push_back(sys.prescribed[static_cast<std::size_t>(r)]);
        cert.observed.push_back(sys.observed[static_cast<std::size_t>(r)]);
    }
    cert.observed_even_count_parity = detail::count_parity(sys.observed, rows);
    cert.prescribed_even_count_parity = detail::count_parity(sys.prescribed, rows);
    return Incompatible{std::move(cert)};
}

/// Decides whether `g` has an orientation giving every even circuit the parity
/// prescribed by `j`. Edges on no even circuit keep the reference direction.
/// A graph without even circuits is compatible.
inline Verdict decide(const Multigraph& g, const ParityAssignment& j, std::size_t cap = kDefaultCircuitCap)
{
    auto base = Orientation::reference(g);
    auto sys = build_system(g, j, base, cap);
    return decide_system(sys, base);
}

/// First even circuit whose clockwise parity under `o` differs from `j`, if any.
inline std::optional<Circuit> verify_orientation(const Multigraph& g, const ParityAssignment& j, const Orientation& o,
                                                 std::size_t cap = kDefaultCircuitCap)
{
    if (!o.orients(g)) throw ContractError("orientation does not orient the graph");
    for (const auto& c : even_circuits(g, cap))
        if (clockwise_parity(o, c) != j.at(c.edges)) return c;
    return std::nullopt;
}

/// Checks the intractability condition for a set of even circuits under the
/// reference orientation (the observed parity is orientation independent).
inline bool is_intractable_set(const Multigraph& g, const ParityAssignment& j, const std::vector<EdgeSet>& circuits,
                               const Orientation* orientation = nullptr)
{
    auto ref = Orientation::reference(g);
    const Orientation& o = orientation != nullptr ? *orientation : ref;
    if (!o.orients(g)) throw ContractError("orientation does not orient the graph");
    if (circuits.empty()) return false;
    EdgeSet sum;
    std::size_t observed_even = 0, prescribed_even = 0;
    for (const auto& s : circuits) {
        auto c = make_circuit(g, s);
        if (!c.is_even()) throw InputError("circuit " + describe_edges(s) + " is odd");
        sum ^= s;
        if (clockwise_parity(o, c) == Parity::even) ++observed_even;
        if (j.at(s) == Parity::even) ++prescribed_even;
    }
    return sum.empty() && (observed_even % 2) != (prescribed_even % 2);
}

/// Re-checks a certificate's invariants under an arbitrary orientation of `g`:
/// empty symmetric difference, and the observed clockwise-even count parity
/// equal to the recorded one and different from the prescribed one.
inline bool certificate_holds(const Multigraph& g, const IntractableCertificate& cert, const Orientation& o)
{
    if (cert.circuits.empty()) return false;
    EdgeSet sum;
    std::size_t observed_even = 0, prescribed_even = 0;
    for (std::size_t i = 0; i < cert.circuits.size(); ++i) {
        const auto& c = cert.circuits[i];
        auto rebuilt = try_make_circuit(g, c.edges);
        if (!rebuilt || !rebuilt->is_even()) return false;
        sum ^= c.edges;
        if (clockwise_parity(o, *rebuilt) == Parity::even) ++observed_even;
        if (cert.prescribed[i] == Parity::even) ++prescribed_even;
    }
    return sum.empty() && parity_of(observed_even) == cert.observed_even_count_parity &&
           parity_of(prescribed_even) == cert.prescribed_even_count_parity &&
           cert.observed_even_count_parity != cert.prescribed_even_count_parity;
}

} // namespace parity
