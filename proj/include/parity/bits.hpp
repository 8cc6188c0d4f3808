#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace parity {

/// Dynamically sized bit set used both as an edge-id set and as a GF(2) vector.
///
/// Storage is kept normalized (no trailing zero words), so equality, hashing and
/// ordering only depend on the set of bits that are on.
class BitSet {
public:
    using word_type = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    BitSet() = default;
    BitSet(std::initializer_list<int> bits)
    {
        for (int b : bits) set(b);
    }
    template <class Range>
    static BitSet from_range(const Range& bits)
    {
        BitSet s;
        for (int b : bits) s.set(b);
        return s;
    }

    void set(int bit)
    {
        auto w = static_cast<std::size_t>(bit) / word_bits;
        if (w >= words_.size()) words_.resize(w + 1, 0);
        words_[w] |= word_type{1} << (static_cast<std::size_t>(bit) % word_bits);
    }
    void reset(int bit)
    {
        auto w = static_cast<std::size_t>(bit) / word_bits;
        if (w >= words_.size()) return;
        words_[w] &= ~(word_type{1} << (static_cast<std::size_t>(bit) % word_bits));
        trim();
    }
    void flip(int bit)
    {
        if (test(bit))
            reset(bit);
        else
            set(bit);
    }
    [[nodiscard]] bool test(int bit) const
    {
        if (bit < 0) return false;
        auto w = static_cast<std::size_t>(bit) / word_bits;
        if (w >= words_.size()) return false;
        return (words_[w] >> (static_cast<std::size_t>(bit) % word_bits)) & 1U;
    }

    [[nodiscard]] bool empty() const { return words_.empty(); }
    [[nodiscard]] std::size_t count() const
    {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }
    /// One past the highest set bit (0 when empty).
    [[nodiscard]] int extent() const
    {
        if (words_.empty()) return 0;
        auto top = words_.back();
        return static_cast<int>((words_.size() - 1) * word_bits + (word_bits - std::countl_zero(top)));
    }

    BitSet& operator^=(const BitSet& o)
    {
        if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
        for (std::size_t i = 0; i < o.words_.size(); ++i) words_[i] ^= o.words_[i];
        trim();
        return *this;
    }
    BitSet& operator|=(const BitSet& o)
    {
        if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
        for (std::size_t i = 0; i < o.words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    BitSet& operator&=(const BitSet& o)
    {
        if (words_.size() > o.words_.size()) words_.resize(o.words_.size());
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        trim();
        return *this;
    }
    /// Removes every bit of `o` from this set.
    BitSet& subtract(const BitSet& o)
    {
        auto n = std::min(words_.size(), o.words_.size());
        for (std::size_t i = 0; i < n; ++i) words_[i] &= ~o.words_[i];
        trim();
        return *this;
    }

    friend BitSet operator^(BitSet a, const BitSet& b) { return a ^= b; }
    friend BitSet operator|(BitSet a, const BitSet& b) { return a |= b; }
    friend BitSet operator&(BitSet a, const BitSet& b) { return a &= b; }
    friend BitSet operator-(BitSet a, const BitSet& b) { return a.subtract(b); }

    [[nodiscard]] bool intersects(const BitSet& o) const
    {
        auto n = std::min(words_.size(), o.words_.size());
        for (std::size_t i = 0; i < n; ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }
    [[nodiscard]] bool is_subset_of(const BitSet& o) const
    {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            word_type other = i < o.words_.size() ? o.words_[i] : 0;
            if (words_[i] & ~other) return false;
        }
        return true;
    }

    /// Set bits in ascending order.
    [[nodiscard]] std::vector<int> to_vector() const
    {
        std::vector<int> out;
        for_each([&](int b) { out.push_back(b); });
        return out;
    }
    template <class F>
    void for_each(F&& f) const
    {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            auto w = words_[i];
            while (w) {
                int b = std::countr_zero(w);
                f(static_cast<int>(i * word_bits) + b);
                w &= w - 1;
            }
        }
    }
    /// Lowest set bit, or -1.
    [[nodiscard]] int first() const
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return static_cast<int>(i * word_bits) + std::countr_zero(words_[i]);
        return -1;
    }

    [[nodiscard]] const std::vector<word_type>& words() const { return words_; }

    friend bool operator==(const BitSet&, const BitSet&) = default;

    /// Lexicographic comparison of the ascending lists of set bits.
    friend std::strong_ordering operator<=>(const BitSet& a, const BitSet& b)
    {
        auto n = std::max(a.words_.size(), b.words_.size());
        for (std::size_t i = 0; i < n; ++i) {
            word_type x = i < a.words_.size() ? a.words_[i] : 0;
            word_type y = i < b.words_.size() ? b.words_[i] : 0;
            if (x == y) continue;
            // The lowest differing bit decides: the list holding it sorts first
            // unless the other list has already ended.
            word_type diff = x ^ y;
            word_type low = diff & (~diff + 1);
            bool a_has = (x & low) != 0;
            word_type below = low - 1;
            // Bits above `low` in the word, plus any later word, tell whether the
            // list without `low` continues.
            bool a_rest = (x & ~below & ~low) != 0 || later_nonzero(a, i);
            bool b_rest = (y & ~below & ~low) != 0 || later_nonzero(b, i);
            if (a_has) return b_rest ? std::strong_ordering::less : std::strong_ordering::greater;
            return a_rest ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        return std::strong_ordering::equal;
    }

    [[nodiscard]] std::size_t hash() const
    {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (auto w : words_) {
            h ^= std::hash<word_type>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }

private:
    static bool later_nonzero(const BitSet& s, std::size_t i)
    {
        for (std::size_t k = i + 1; k < s.words_.size(); ++k)
            if (s.words_[k]) return true;
        return false;
    }
    void trim()
    {
        while (!words_.empty() && words_.back() == 0) words_.pop_back();
    }

    std::vector<word_type> words_;
};

using EdgeSet = BitSet;

/// Renders an edge set as "{1 2 3}".
inline std::string describe_edges(const EdgeSet& s)
{
    std::string out = "{";
    bool first = true;
    s.for_each([&](int id) {
        out += first ? "" : " ";
        out += std::to_string(id);
        first = false;
    });
    return out + "}";
}

struct BitSetHash {
    std::size_t operator()(const BitSet& s) const { return s.hash(); }
};

} // namespace parity
