#ifndef INCOMPLETE_BITSET_HPP
#define INCOMPLETE_BITSET_HPP

#include <bit>
#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace incomplete {

/// Fixed-width dynamic bitset. Used both for subsets of finite carriers
/// (atom index sets) and for per-observation membership indicators.
class Bitset {
public:
    Bitset() = default;

    explicit Bitset(std::size_t nbits)
        : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    static Bitset from_mask(std::size_t nbits, std::uint64_t mask) {
        if (nbits > 64) throw std::invalid_argument("Bitset::from_mask: width > 64");
        Bitset b(nbits);
        if (nbits > 0) b.words_[0] = mask & Bitset(nbits).full_word(0);
        return b;
    }

    static Bitset full(std::size_t nbits) {
        Bitset b(nbits);
        for (std::size_t w = 0; w < b.words_.size(); ++w) b.words_[w] = b.full_word(w);
        return b;
    }

    std::size_t size() const { return nbits_; }

    bool test(std::size_t i) const {
        check_index(i);
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i, bool value = true) {
        check_index(i);
        const std::uint64_t bit = std::uint64_t{1} << (i & 63);
        if (value) words_[i >> 6] |= bit;
        else       words_[i >> 6] &= ~bit;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }

    bool any() const {
        for (auto w : words_) if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    bool is_subset_of(const Bitset& other) const {
        check_same_size(other);
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w] & ~other.words_[w]) return false;
        return true;
    }

    bool intersects(const Bitset& other) const {
        check_same_size(other);
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w] & other.words_[w]) return true;
        return false;
    }

    std::size_t count_and(const Bitset& other) const {
        check_same_size(other);
        std::size_t c = 0;
        for (std::size_t w = 0; w < words_.size(); ++w)
            c += std::popcount(words_[w] & other.words_[w]);
        return c;
    }

    Bitset operator&(const Bitset& other) const {
        check_same_size(other);
        Bitset r(nbits_);
        for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] = words_[w] & other.words_[w];
        return r;
    }

    Bitset operator|(const Bitset& other) const {
        check_same_size(other);
        Bitset r(nbits_);
        for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] = words_[w] | other.words_[w];
        return r;
    }

    Bitset& operator|=(const Bitset& other) {
        check_same_size(other);
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
        return *this;
    }

    Bitset complement() const {
        Bitset r(nbits_);
        for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] = ~words_[w] & full_word(w);
        return r;
    }

    bool operator==(const Bitset& other) const {
        return nbits_ == other.nbits_ && words_ == other.words_;
    }
    bool operator!=(const Bitset& other) const { return !(*this == other); }

    /// Numeric comparison treating the bitset as a little-endian integer;
    /// used for deterministic "smallest mask" tie-breaking.
    bool less_as_integer(const Bitset& other) const {
        check_same_size(other);
        for (std::size_t w = words_.size(); w-- > 0;)
            if (words_[w] != other.words_[w]) return words_[w] < other.words_[w];
        return false;
    }

    std::uint64_t low_word() const { return words_.empty() ? 0 : words_[0]; }

    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < nbits_; ++i)
            if (test(i)) out.push_back(i);
        return out;
    }

private:
    std::uint64_t full_word(std::size_t w) const {
        const std::size_t used = (w + 1 == words_.size() && (nbits_ & 63))
            ? (nbits_ & 63) : 64;
        return used == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << used) - 1);
    }
    void check_index(std::size_t i) const {
        if (i >= nbits_)
            throw std::out_of_range("Bitset index " + std::to_string(i) +
                                    " out of range (size " + std::to_string(nbits_) + ")");
    }
    void check_same_size(const Bitset& other) const {
        if (nbits_ != other.nbits_)
            throw std::invalid_argument("Bitset size mismatch: " + std::to_string(nbits_) +
                                        " vs " + std::to_string(other.nbits_));
    }

    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace incomplete

#endif
