#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace parity;

namespace {

Gf2Matrix matrix(std::size_t width, std::vector<BitSet> rows) { return Gf2Matrix(width, std::move(rows)); }

BitSet row_sum(const Gf2Matrix& a, const std::vector<int>& rows)
{
    BitSet s;
    for (int r : rows) s ^= a.row(static_cast<std::size_t>(r));
    return s;
}

Gf2Matrix circuit_rows(const Multigraph& g)
{
    Gf2Matrix a(static_cast<std::size_t>(g.edge_set().extent()));
    for (const auto& c : even_circuits(g)) a.add_row(c.edges);
    return a;
}

} // namespace

TEST(Gf2Solve, Identity)
{
    auto a = matrix(2, {BitSet{0}, BitSet{1}});
    auto r = solve(a, BitSet{0});
    ASSERT_TRUE(std::holds_alternative<BitSet>(r));
    EXPECT_EQ(std::get<BitSet>(r), BitSet{0});
}

TEST(Gf2Solve, EqualRowsUnequalTargets)
{
    auto a = matrix(2, {BitSet{0, 1}, BitSet{0, 1}});
    auto r = solve(a, BitSet{1});
    ASSERT_TRUE(std::holds_alternative<Inconsistency>(r));
    EXPECT_EQ(std::get<Inconsistency>(r).row_combination, (std::vector<int>{0, 1}));
}

TEST(Gf2Solve, ThreeRowCycle)
{
    auto a = matrix(3, {BitSet{0, 1}, BitSet{1, 2}, BitSet{0, 2}});
    auto r = solve(a, BitSet{0, 1, 2});
    ASSERT_TRUE(std::holds_alternative<Inconsistency>(r));
    EXPECT_EQ(std::get<Inconsistency>(r).row_combination, (std::vector<int>{0, 1, 2}));
}

TEST(Gf2Solve, FreeVariablesAreZero)
{
    auto a = matrix(3, {BitSet{0, 1, 2}});
    auto r = solve(a, BitSet{0});
    ASSERT_TRUE(std::holds_alternative<BitSet>(r));
    EXPECT_EQ(std::get<BitSet>(r), BitSet{0});
}

TEST(Gf2Solve, DimensionMismatch)
{
    auto a = matrix(2, {BitSet{0}});
    EXPECT_THROW(solve(a, BitSet{3}), InputError);
    EXPECT_THROW(Gf2Matrix(2, {BitSet{5}}), InputError);
}

TEST(Gf2Solve, RandomSystemsVerify)
{
    std::mt19937 rng(1);
    for (int t = 0; t < 2000; ++t) {
        std::size_t rows = 1 + rng() % 12, width = 1 + rng() % 12;
        Gf2Matrix a(width);
        for (std::size_t r = 0; r < rows; ++r) {
            BitSet row;
            for (std::size_t c = 0; c < width; ++c)
                if (rng() % 3 == 0) row.set(static_cast<int>(c));
            a.add_row(row);
        }
        BitSet b;
        for (std::size_t r = 0; r < rows; ++r)
            if (rng() & 1U) b.set(static_cast<int>(r));
        auto res = solve(a, b);
        if (const auto* x = std::get_if<BitSet>(&res)) {
            for (std::size_t r = 0; r < rows; ++r) {
                BitSet dot = a.row(r);
                dot &= *x;
                EXPECT_EQ(dot.count() % 2 == 1, b.test(static_cast<int>(r)));
            }
        } else {
            const auto& combo = std::get<Inconsistency>(res).row_combination;
            EXPECT_TRUE(row_sum(a, combo).empty());
            bool rhs = false;
            for (int r : combo) rhs ^= b.test(r);
            EXPECT_TRUE(rhs);
        }
        EXPECT_EQ(rank(a) + left_nullspace_basis(a).size(), rows);
        EXPECT_EQ(solve(a, b).index(), res.index());
    }
}

TEST(Gf2Rank, Examples)
{
    EXPECT_EQ(rank(matrix(3, {BitSet{}, BitSet{}})), 0U);
    EXPECT_EQ(rank(matrix(4, {BitSet{0}, BitSet{1}, BitSet{2}, BitSet{3}})), 4U);
    auto k23 = Multigraph::from_pairs({{1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});
    EXPECT_EQ(rank(circuit_rows(k23)), 2U);
}

TEST(Gf2Nullspace, Examples)
{
    EXPECT_TRUE(nullspace_combinations(matrix(3, {BitSet{0}, BitSet{1}})).empty());
    auto k23 = Multigraph::from_pairs({{1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});
    EXPECT_EQ(nullspace_combinations(circuit_rows(k23)), (std::vector<std::vector<int>>{{0, 1, 2}}));
    for (const char* d : {"D1", "D2", "D3", "D4"})
        EXPECT_EQ(nullspace_combinations(circuit_rows(catalog_entry(d).graph)),
                  (std::vector<std::vector<int>>{{0, 1, 2, 3}}))
            << d;
}

TEST(Gf2Nullspace, EnumeratesEveryDependency)
{
    std::mt19937 rng(4);
    for (int t = 0; t < 300; ++t) {
        std::size_t rows = 1 + rng() % 8, width = 1 + rng() % 5;
        Gf2Matrix a(width);
        for (std::size_t r = 0; r < rows; ++r) {
            BitSet row;
            for (std::size_t c = 0; c < width; ++c)
                if (rng() & 1U) row.set(static_cast<int>(c));
            a.add_row(row);
        }
        std::vector<std::vector<int>> brute;
        for (std::uint32_t mask = 1; mask < (1U << rows); ++mask) {
            std::vector<int> s;
            for (std::size_t r = 0; r < rows; ++r)
                if (mask >> r & 1U) s.push_back(static_cast<int>(r));
            if (row_sum(a, s).empty()) brute.push_back(s);
        }
        auto lib = nullspace_combinations(a);
        std::sort(brute.begin(), brute.end());
        std::sort(lib.begin(), lib.end());
        EXPECT_EQ(lib, brute);
    }
}
