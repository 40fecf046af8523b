#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "supercliff/bitvec.h"

namespace supercliff::gf2 {

// Dense bit matrix, row-major, each row packed into 64-bit words with zero
// padding past `cols`.
class BitMatrix {
  public:
    BitMatrix() = default;
    BitMatrix(size_t rows, size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), data_(rows * wpr_, 0) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    size_t words_per_row() const { return wpr_; }

    uint64_t *row(size_t r) { return data_.data() + r * wpr_; }
    const uint64_t *row(size_t r) const { return data_.data() + r * wpr_; }

    bool get(size_t r, size_t c) const {
        return (row(r)[c / 64] >> (c % 64)) & 1;
    }
    void set(size_t r, size_t c, bool value) {
        uint64_t mask = uint64_t{1} << (c % 64);
        if (value) {
            row(r)[c / 64] |= mask;
        } else {
            row(r)[c / 64] &= ~mask;
        }
    }

    void xor_row_into(size_t src, size_t dst) {
        const uint64_t *s = row(src);
        uint64_t *d = row(dst);
        for (size_t k = 0; k < wpr_; k++) {
            d[k] ^= s[k];
        }
    }

    void swap_rows(size_t a, size_t b) {
        if (a == b) {
            return;
        }
        uint64_t *ra = row(a);
        uint64_t *rb = row(b);
        for (size_t k = 0; k < wpr_; k++) {
            std::swap(ra[k], rb[k]);
        }
    }

    // Copies a packed bit vector into row r starting at bit offset `dst_bit`.
    void blit_row(size_t r, size_t dst_bit, const BitVec &src);

    bool operator==(const BitMatrix &other) const = default;

  private:
    size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<uint64_t> data_;
};

enum class RowOpKind : uint8_t {
    Swap,  // exchange rows i and j
    Add,   // row i ^= row j
};

// Invoked immediately before each row operation is applied, in execution
// order, so callers can mirror the operation on parallel state.
using RowOpCallback = std::function<void(RowOpKind, size_t i, size_t j)>;

// Rank over GF(2). Works on an internal copy; the input is never modified.
size_t rank(const BitMatrix &m);

// Gaussian elimination to row echelon form, pivoting only on columns in
// [pivot_col_begin, pivot_col_end). Pivots are chosen as the first row with a
// nonzero entry in the current column (no heuristics). Returns the reduced
// matrix and the rank of the pivot-column block. Replaying the reported row
// operations on a copy of the input reproduces the returned matrix exactly.
std::pair<BitMatrix, size_t> row_echelon_with_callback(
    const BitMatrix &m,
    size_t pivot_col_begin,
    size_t pivot_col_end,
    const RowOpCallback &on_row_op);

BitMatrix transpose(const BitMatrix &m);

}  // namespace supercliff::gf2
