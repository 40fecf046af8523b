#pragma once

#include <string>

#include "supercliff/bitvec.h"

namespace supercliff {

// One super-stabilizer generator over N sites: a sign bit and per-site X/Z
// exponents, representing (-1)^sign * prod_i X_i^{x_i} Z_i^{z_i} with the
// per-site factor order fixed as X before Z.
struct SuperPauli {
    bool sign = false;
    BitVec x_bits;
    BitVec z_bits;

    SuperPauli() = default;
    SuperPauli(bool sign, BitVec x, BitVec z);

    static SuperPauli identity(size_t n) { return SuperPauli(false, BitVec(n), BitVec(n)); }

    size_t n_sites() const { return x_bits.n_bits(); }

    bool operator==(const SuperPauli &other) const = default;

    // Debug rendering, e.g. "-XZ.X." (one site per '.'-terminated group).
    std::string to_string() const;
};

// Canonical-form product. Moving each X factor of b left past each Z factor
// of a at the same site contributes one -1, hence the extra parity term.
SuperPauli multiply(const SuperPauli &a, const SuperPauli &b);

// True iff the symplectic form sum_i (a.x_i b.z_i + a.z_i b.x_i) vanishes
// mod 2, i.e. the two operators commute.
bool symplectic_commutes(const SuperPauli &a, const SuperPauli &b);

// Identifies one X/Y basis operator: bit i = 0 means X at site i, 1 means Y.
struct BasisOperatorLabel {
    BitVec bits;

    static BasisOperatorLabel all_x(size_t n) { return {BitVec(n)}; }

    size_t n_sites() const { return bits.n_bits(); }

    bool operator==(const BasisOperatorLabel &other) const = default;
};

}  // namespace supercliff
