// Finite subsets of [0, n) as packed bit vectors.
//
// Used for both sets of valuations (subsets of an enumerated valuation
// universe) and sets of formula classes (subsets of a clone).  The size is
// the universe the set lives in; operations require both operands to share
// it.  Ordering compares the sets as big-endian integers, which fixes the
// canonical order used everywhere for deterministic output.

#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace pivotal {

class IndexSet {
public:
    IndexSet() = default;

    explicit IndexSet(std::size_t universe_size)
        : size_(universe_size), words_((universe_size + 63) / 64, 0) {}

    static IndexSet full(std::size_t universe_size) {
        IndexSet s(universe_size);
        for (auto& w : s.words_) w = ~std::uint64_t{0};
        s.trim();
        return s;
    }

    static IndexSet singleton(std::size_t universe_size, std::size_t i) {
        IndexSet s(universe_size);
        s.insert(i);
        return s;
    }

    std::size_t universe_size() const { return size_; }

    std::size_t count() const {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    bool empty() const {
        for (auto w : words_)
            if (w != 0) return false;
        return true;
    }

    bool is_full() const { return count() == size_; }

    bool contains(std::size_t i) const {
        assert(i < size_);
        return (words_[i / 64] >> (i % 64)) & 1u;
    }

    void insert(std::size_t i) {
        assert(i < size_);
        words_[i / 64] |= std::uint64_t{1} << (i % 64);
    }

    void erase(std::size_t i) {
        assert(i < size_);
        words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
    }

    bool subset_of(const IndexSet& other) const {
        assert(size_ == other.size_);
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & ~other.words_[k]) return false;
        return true;
    }

    IndexSet operator&(const IndexSet& other) const {
        assert(size_ == other.size_);
        IndexSet r(size_);
        for (std::size_t k = 0; k < words_.size(); ++k)
            r.words_[k] = words_[k] & other.words_[k];
        return r;
    }

    IndexSet operator|(const IndexSet& other) const {
        assert(size_ == other.size_);
        IndexSet r(size_);
        for (std::size_t k = 0; k < words_.size(); ++k)
            r.words_[k] = words_[k] | other.words_[k];
        return r;
    }

    IndexSet operator-(const IndexSet& other) const {
        assert(size_ == other.size_);
        IndexSet r(size_);
        for (std::size_t k = 0; k < words_.size(); ++k)
            r.words_[k] = words_[k] & ~other.words_[k];
        return r;
    }

    IndexSet complement() const {
        IndexSet r(size_);
        for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] = ~words_[k];
        r.trim();
        return r;
    }

    IndexSet& operator&=(const IndexSet& other) { return *this = *this & other; }
    IndexSet& operator|=(const IndexSet& other) { return *this = *this | other; }

    bool operator==(const IndexSet& other) const {
        return size_ == other.size_ && words_ == other.words_;
    }
    bool operator!=(const IndexSet& other) const { return !(*this == other); }

    // Canonical order: compare as big-endian integers (empty set first).
    bool operator<(const IndexSet& other) const {
        assert(size_ == other.size_);
        for (std::size_t k = words_.size(); k-- > 0;)
            if (words_[k] != other.words_[k]) return words_[k] < other.words_[k];
        return false;
    }

    std::vector<std::size_t> members() const {
        std::vector<std::size_t> out;
        out.reserve(count());
        for (std::size_t i = 0; i < size_; ++i)
            if (contains(i)) out.push_back(i);
        return out;
    }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t i = 0; i < size_; ++i)
            if (contains(i)) fn(i);
    }

    // Builds the set over [0, universe_size) whose membership mask is the
    // little-endian bit pattern of `mask`.  Handy for exhaustive loops over
    // all subsets of small universes.
    static IndexSet from_mask(std::size_t universe_size, std::uint64_t mask) {
        assert(universe_size <= 64);
        IndexSet s(universe_size);
        if (!s.words_.empty()) s.words_[0] = mask;
        s.trim();
        return s;
    }

    std::uint64_t to_mask() const {
        assert(size_ <= 64);
        return words_.empty() ? 0 : words_[0];
    }

private:
    void trim() {
        if (size_ % 64 != 0 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace pivotal
