#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"

namespace parity {

/// Dense matrix over GF(2) with bit-packed rows.
class Gf2Matrix {
public:
    Gf2Matrix() = default;
    explicit Gf2Matrix(std::size_t width) : width_(width) {}
    Gf2Matrix(std::size_t width, std::vector<BitSet> rows) : width_(width), rows_(std::move(rows))
    {
        for (const auto& r : rows_)
            if (r.extent() > static_cast<int>(width_)) throw InputError("GF(2) row wider than matrix");
    }

    void add_row(BitSet row)
    {
        if (row.extent() > static_cast<int>(width_)) throw InputError("GF(2) row wider than matrix");
        rows_.push_back(std::move(row));
    }

    [[nodiscard]] std::size_t width() const { return width_; }
    [[nodiscard]] std::size_t num_rows() const { return rows_.size(); }
    [[nodiscard]] const std::vector<BitSet>& rows() const { return rows_; }
    [[nodiscard]] const BitSet& row(std::size_t i) const { return rows_.at(i); }

private:
    std::size_t width_ = 0;
    std::vector<BitSet> rows_;
};

/// Row indices whose sum is the zero vector while their right-hand sides sum to 1.
struct Inconsistency {
    std::vector<int> row_combination;
};

using SolveResult = std::variant<BitSet, Inconsistency>;

namespace detail {

struct Elimination {
    std::vector<BitSet> rows;
    std::vector<char> rhs;
    std::vector<BitSet> combination; ///< original rows summed into each working row
    std::vector<int> pivot_col;      ///< -1 for rows that reduced to zero
    std::size_t rank = 0;
};

/// Gauss-Jordan elimination choosing, for each column in ascending order, the
/// lowest-index unused row as pivot. Tracks row combinations so every reduced
/// row knows which original rows it is the sum of.
inline Elimination eliminate(const Gf2Matrix& a, const BitSet* b)
{
    Elimination el;
    el.rows = a.rows();
    const auto n = el.rows.size();
    el.rhs.assign(n, 0);
    if (b != nullptr)
        for (std::size_t i = 0; i < n; ++i) el.rhs[i] = b->test(static_cast<int>(i)) ? 1 : 0;
    el.combination.resize(n);
    for (std::size_t i = 0; i < n; ++i) el.combination[i].set(static_cast<int>(i));
    el.pivot_col.assign(n, -1);
    std::vector<char> used(n, 0);
    for (std::size_t col = 0; col < a.width(); ++col) {
        std::size_t p = n;
        for (std::size_t r = 0; r < n; ++r) {
            if (!used[r] && el.rows[r].test(static_cast<int>(col))) {
                p = r;
                break;
            }
        }
        if (p == n) continue;
        used[p] = 1;
        el.pivot_col[p] = static_cast<int>(col);
        ++el.rank;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == p || !el.rows[r].test(static_cast<int>(col))) continue;
            el.rows[r] ^= el.rows[p];
            el.rhs[r] ^= el.rhs[p];
            el.combination[r] ^= el.combination[p];
        }
    }
    return el;
}

} // namespace detail

/// Solves a·x = b. Free variables are set to 0; on failure the returned
/// Inconsistency comes from the lowest-index row that reduced to 0 = 1.
inline SolveResult solve(const Gf2Matrix& a, const BitSet& b)
{
    if (b.extent() > static_cast<int>(a.num_rows()))
        throw InputError("right-hand side has " + std::to_string(b.extent()) + " bits for " +
                         std::to_string(a.num_rows()) + " rows");
    auto el = detail::eliminate(a, &b);
    for (std::size_t r = 0; r < el.rows.size(); ++r) {
        if (el.pivot_col[r] < 0 && el.rhs[r]) return Inconsistency{el.combination[r].to_vector()};
    }
    BitSet x;
    for (std::size_t r = 0; r < el.rows.size(); ++r)
        if (el.pivot_col[r] >= 0 && el.rhs[r]) x.set(el.pivot_col[r]);
    return x;
}

inline std::size_t rank(const Gf2Matrix& a) { return detail::eliminate(a, nullptr).rank; }

/// Basis of the left null space: each entry is a set of row indices summing to zero.
inline std::vector<std::vector<int>> left_nullspace_basis(const Gf2Matrix& a)
{
    auto el = detail::eliminate(a, nullptr);
    std::vector<std::vector<int>> out;
    for (std::size_t r = 0; r < el.rows.size(); ++r)
        if (el.pivot_col[r] < 0) out.push_back(el.combination[r].to_vector());
    return out;
}

inline constexpr std::size_t kExhaustiveRowLimit = 64;
inline constexpr std::size_t kExhaustiveNullityLimit = 20;

/// All nonempty row subsets summing to zero, sorted by size then
/// lexicographically. Falls back to a basis of the left null space when the
/// matrix has more than 64 rows or the null space is too large to list.
inline std::vector<std::vector<int>> nullspace_combinations(const Gf2Matrix& a)
{
    auto basis = left_nullspace_basis(a);
    if (a.num_rows() > kExhaustiveRowLimit || basis.size() > kExhaustiveNullityLimit) return basis;
    std::vector<BitSet> vecs;
    for (const auto& b : basis) vecs.push_back(BitSet::from_range(b));
    std::vector<BitSet> all;
    const std::size_t total = std::size_t{1} << vecs.size();
    BitSet cur;
    // Gray-code walk visits every nonzero combination once.
    for (std::size_t i = 1; i < total; ++i) {
        int flip = __builtin_ctzll(i);
        cur ^= vecs[static_cast<std::size_t>(flip)];
        all.push_back(cur);
    }
    std::sort(all.begin(), all.end(), [](const BitSet& x, const BitSet& y) {
        auto cx = x.count(), cy = y.count();
        if (cx != cy) return cx < cy;
        return x < y;
    });
    std::vector<std::vector<int>> out;
    out.reserve(all.size());
    for (const auto& s : all) out.push_back(s.to_vector());
    return out;
}

} // namespace parity
