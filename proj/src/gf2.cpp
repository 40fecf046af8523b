#include "supercliff/gf2.h"

#include <cstring>

namespace supercliff::gf2 {

void BitMatrix::blit_row(size_t r, size_t dst_bit, const BitVec &src) {
    uint64_t *d = row(r);
    size_t word = dst_bit / 64;
    size_t shift = dst_bit % 64;
    const uint64_t *s = src.words();
    size_t nw = src.word_count();
    if (shift == 0) {
        std::memcpy(d + word, s, nw * sizeof(uint64_t));
        return;
    }
    for (size_t k = 0; k < nw; k++) {
        d[word + k] |= s[k] << shift;
        if (word + k + 1 < wpr_) {
            d[word + k + 1] |= s[k] >> (64 - shift);
        }
    }
}

namespace {

// Core elimination, in place. Row operations XOR only from the pivot word
// onward; everything to the left is already zero.
size_t eliminate(BitMatrix &m, size_t col_begin, size_t col_end, const RowOpCallback &on_row_op) {
    size_t pivot_row = 0;
    for (size_t c = col_begin; c < col_end && pivot_row < m.rows(); c++) {
        size_t r = pivot_row;
        while (r < m.rows() && !m.get(r, c)) {
            r++;
        }
        if (r == m.rows()) {
            continue;
        }
        if (r != pivot_row) {
            if (on_row_op) {
                on_row_op(RowOpKind::Swap, pivot_row, r);
            }
            m.swap_rows(pivot_row, r);
        }
        size_t word0 = c / 64;
        const uint64_t *pivot = m.row(pivot_row);
        for (size_t r2 = pivot_row + 1; r2 < m.rows(); r2++) {
            if (!m.get(r2, c)) {
                continue;
            }
            if (on_row_op) {
                on_row_op(RowOpKind::Add, r2, pivot_row);
            }
            uint64_t *dst = m.row(r2);
            for (size_t k = word0; k < m.words_per_row(); k++) {
                dst[k] ^= pivot[k];
            }
        }
        pivot_row++;
    }
    return pivot_row;
}

}  // namespace

size_t rank(const BitMatrix &m) {
    BitMatrix scratch = m;
    return eliminate(scratch, 0, m.cols(), nullptr);
}

std::pair<BitMatrix, size_t> row_echelon_with_callback(
    const BitMatrix &m,
    size_t pivot_col_begin,
    size_t pivot_col_end,
    const RowOpCallback &on_row_op) {
    if (pivot_col_end > m.cols() || pivot_col_begin > pivot_col_end) {
        throw std::invalid_argument("pivot column range out of bounds");
    }
    BitMatrix out = m;
    size_t k = eliminate(out, pivot_col_begin, pivot_col_end, on_row_op);
    return {std::move(out), k};
}

BitMatrix transpose(const BitMatrix &m) {
    BitMatrix out(m.cols(), m.rows());
    // 64x64 word blocks; i/j loops stay in cache for the sizes we use.
    for (size_t rb = 0; rb < m.rows(); rb += 64) {
        size_t r_hi = std::min(rb + 64, m.rows());
        for (size_t cb = 0; cb < m.cols(); cb += 64) {
            size_t c_hi = std::min(cb + 64, m.cols());
            for (size_t r = rb; r < r_hi; r++) {
                uint64_t w = m.row(r)[cb / 64];
                if (!w) {
                    continue;
                }
                for (size_t c = cb; c < c_hi; c++) {
                    if ((w >> (c - cb)) & 1) {
                        out.set(c, r, true);
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace supercliff::gf2
