#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "supercliff/pauli.h"

namespace supercliff {

enum class GateKind : uint8_t { T, TInv, Swap, C3 };

// One gate instance from the {T, SWAP, C3} set (plus the inverse of T, which
// the echo construction needs). For C3 the first index is the control.
struct GateOp {
    GateKind kind = GateKind::T;
    std::array<uint32_t, 3> qubits{};

    static GateOp t(uint32_t q) { return {GateKind::T, {q, 0, 0}}; }
    static GateOp t_inv(uint32_t q) { return {GateKind::TInv, {q, 0, 0}}; }
    static GateOp swap(uint32_t a, uint32_t b) { return {GateKind::Swap, {a, b, 0}}; }
    static GateOp c3(uint32_t control, uint32_t target1, uint32_t target2) {
        return {GateKind::C3, {control, target1, target2}};
    }

    size_t arity() const { return kind == GateKind::C3 ? 3 : kind == GateKind::Swap ? 2 : 1; }

    // The gate realizing the inverse action (T <-> TInv; SWAP and C3 are
    // their own inverses).
    GateOp inverse() const;

    // Throws if any index is >= n_qubits or indices repeat.
    void validate(size_t n_qubits) const;

    bool operator==(const GateOp &other) const = default;

    std::string to_string() const;
};

// N super-stabilizer generators of an operator in the X/Y-string subspace.
// Storage is column-sliced: for each site we keep the x and z exponents of
// all N generators as packed bit columns, so a gate touches at most three
// sites' columns and costs O(N/64) words. Signs are one bit per generator.
class Tableau {
  public:
    explicit Tableau(const BasisOperatorLabel &label);

    size_t n_qubits() const { return n_; }

    // Generator index alpha, assembled from the column slices.
    SuperPauli generator(size_t alpha) const;

    // Packed slices: bit alpha of x_column(i) is generator alpha's X exponent
    // at site i.
    const BitVec &x_column(size_t site) const { return x_cols_[site]; }
    const BitVec &z_column(size_t site) const { return z_cols_[site]; }
    const BitVec &signs() const { return signs_; }

    void flip_sign(size_t alpha) { signs_.flip(alpha); }

    void apply_gate(const GateOp &g);

    // Applies gates front to back; with reversed_inverse, applies the inverse
    // of each gate in reverse order (undoing a prior forward application
    // restores the tableau bit-exactly).
    void apply_sequence(std::span<const GateOp> gates, bool reversed_inverse = false);

    // Both tableau invariants: pairwise commuting generators and GF(2)
    // independence of their (x, z) vectors. O(N^3), intended for tests.
    bool is_valid() const;

    bool operator==(const Tableau &other) const = default;

    // Versioned JSON checkpoint format; round trips bit-exactly.
    std::string to_json() const;
    static Tableau from_json(const std::string &text);

  private:
    Tableau() = default;

    size_t n_ = 0;
    std::vector<BitVec> x_cols_;
    std::vector<BitVec> z_cols_;
    BitVec signs_;
};

Tableau new_computational(const BasisOperatorLabel &label);

}  // namespace supercliff
