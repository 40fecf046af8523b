#include "supercliff/pauli.h"

namespace supercliff {

namespace {

void require_same_length(const SuperPauli &a, const SuperPauli &b) {
    if (a.n_sites() != b.n_sites()) {
        throw std::invalid_argument(
            "super-Pauli length mismatch: " + std::to_string(a.n_sites()) + " vs " +
            std::to_string(b.n_sites()));
    }
}

}  // namespace

SuperPauli::SuperPauli(bool sign, BitVec x, BitVec z)
    : sign(sign), x_bits(std::move(x)), z_bits(std::move(z)) {
    if (x_bits.n_bits() != z_bits.n_bits() || x_bits.n_bits() == 0) {
        throw std::invalid_argument("x and z bit vectors must have equal nonzero length");
    }
}

SuperPauli multiply(const SuperPauli &a, const SuperPauli &b) {
    require_same_length(a, b);
    SuperPauli out = a;
    out.x_bits ^= b.x_bits;
    out.z_bits ^= b.z_bits;
    out.sign = a.sign ^ b.sign ^ and_parity(a.z_bits, b.x_bits);
    return out;
}

bool symplectic_commutes(const SuperPauli &a, const SuperPauli &b) {
    require_same_length(a, b);
    return !(and_parity(a.x_bits, b.z_bits) ^ and_parity(a.z_bits, b.x_bits));
}

std::string SuperPauli::to_string() const {
    std::string s(1, sign ? '-' : '+');
    for (size_t i = 0; i < n_sites(); i++) {
        if (x_bits.get(i)) {
            s += 'X';
        }
        if (z_bits.get(i)) {
            s += 'Z';
        }
        s += '.';
    }
    return s;
}

}  // namespace supercliff
