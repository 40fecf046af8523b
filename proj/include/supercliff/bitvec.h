#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace supercliff {

// Fixed-length bit vector packed into 64-bit words. Bits past n_bits() are
// kept zero so whole-word XOR/AND/popcount never needs masking on read.
class BitVec {
  public:
    static constexpr size_t kWordBits = 64;

    BitVec() = default;
    explicit BitVec(size_t n_bits) : n_bits_(n_bits), words_((n_bits + kWordBits - 1) / kWordBits, 0) {}

    static BitVec unit(size_t n_bits, size_t index) {
        BitVec v(n_bits);
        v.set(index, true);
        return v;
    }

    size_t n_bits() const { return n_bits_; }
    size_t word_count() const { return words_.size(); }
    uint64_t *words() { return words_.data(); }
    const uint64_t *words() const { return words_.data(); }

    bool get(size_t i) const {
        return (words_[i / kWordBits] >> (i % kWordBits)) & 1;
    }
    void set(size_t i, bool value) {
        uint64_t mask = uint64_t{1} << (i % kWordBits);
        if (value) {
            words_[i / kWordBits] |= mask;
        } else {
            words_[i / kWordBits] &= ~mask;
        }
    }
    void flip(size_t i) {
        words_[i / kWordBits] ^= uint64_t{1} << (i % kWordBits);
    }

    BitVec &operator^=(const BitVec &other) {
        for (size_t k = 0; k < words_.size(); k++) {
            words_[k] ^= other.words_[k];
        }
        return *this;
    }

    bool all_zero() const {
        for (uint64_t w : words_) {
            if (w) {
                return false;
            }
        }
        return true;
    }

    size_t popcount() const {
        size_t total = 0;
        for (uint64_t w : words_) {
            total += static_cast<size_t>(std::popcount(w));
        }
        return total;
    }

    bool operator==(const BitVec &other) const = default;

    // '0'/'1' characters, character i = bit i.
    std::string to_string() const {
        std::string s(n_bits_, '0');
        for (size_t i = 0; i < n_bits_; i++) {
            if (get(i)) {
                s[i] = '1';
            }
        }
        return s;
    }

    static BitVec from_string(const std::string &s) {
        BitVec v(s.size());
        for (size_t i = 0; i < s.size(); i++) {
            if (s[i] == '1') {
                v.set(i, true);
            } else if (s[i] != '0') {
                throw std::invalid_argument("bit string must contain only '0'/'1' characters");
            }
        }
        return v;
    }

  private:
    size_t n_bits_ = 0;
    std::vector<uint64_t> words_;
};

// Parity of popcount(a AND b). Used for all GF(2) inner products.
inline bool and_parity(const BitVec &a, const BitVec &b) {
    uint64_t acc = 0;
    const uint64_t *wa = a.words();
    const uint64_t *wb = b.words();
    for (size_t k = 0; k < a.word_count(); k++) {
        acc ^= wa[k] & wb[k];
    }
    return std::popcount(acc) & 1;
}

}  // namespace supercliff
