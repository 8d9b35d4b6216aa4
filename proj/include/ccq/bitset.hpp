#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

namespace ccq {

/// Runtime-sized bitset. Vertex sets throughout the library are stored this
/// way so neighborhood intersections and triangle scans run word-at-a-time.
class Bitset {
public:
    using Word = std::uint64_t;
    static constexpr int kWordBits = 64;

    Bitset() = default;
    explicit Bitset(int capacity)
        : capacity_(capacity), words_((capacity + kWordBits - 1) / kWordBits, 0) {}

    int capacity() const { return capacity_; }

    bool test(int i) const {
        assert(i >= 0 && i < capacity_);
        return (words_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1u;
    }
    void set(int i) {
        assert(i >= 0 && i < capacity_);
        words_[static_cast<std::size_t>(i) >> 6] |= Word{1} << (i & 63);
    }
    void reset(int i) {
        assert(i >= 0 && i < capacity_);
        words_[static_cast<std::size_t>(i) >> 6] &= ~(Word{1} << (i & 63));
    }
    void set_first_n(int n) {
        for (int i = 0; i < n; ++i) set(i);
    }
    void clear() { words_.assign(words_.size(), 0); }

    int count() const {
        int c = 0;
        for (Word w : words_) c += std::popcount(w);
        return c;
    }
    bool any() const {
        for (Word w : words_)
            if (w) return true;
        return false;
    }

    /// Index of the first set bit at or after `from`, or -1 if none.
    int next_set(int from) const {
        if (from >= capacity_) return -1;
        std::size_t k = static_cast<std::size_t>(from) >> 6;
        Word w = words_[k] & (~Word{0} << (from & 63));
        while (true) {
            if (w) return static_cast<int>(k * kWordBits + std::countr_zero(w));
            if (++k == words_.size()) return -1;
            w = words_[k];
        }
    }

    Bitset& operator&=(const Bitset& o) {
        assert(capacity_ == o.capacity_);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) {
        assert(capacity_ == o.capacity_);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
        return *this;
    }
    /// Removes every bit set in `o`.
    Bitset& subtract(const Bitset& o) {
        assert(capacity_ == o.capacity_);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
        return *this;
    }

    std::size_t num_words() const { return words_.size(); }
    Word word(std::size_t k) const { return words_[k]; }

    friend bool operator==(const Bitset&, const Bitset&) = default;

private:
    int capacity_ = 0;
    std::vector<Word> words_;
};

}  // namespace ccq
