#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>

#include "supercliff/tableau.h"

namespace supercliff::dense {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Site 0 is the most significant bit of a basis index throughout.
inline uint64_t site_mask(size_t n, size_t site) {
    return uint64_t{1} << (n - 1 - site);
}

uint64_t label_index(const BitVec &bits);

// 2^n x 2^n unitary of one physical gate. C3 is expanded into its
// CX/CZ/T^6 factors rather than taken from its super-space action.
Mat physical_gate_matrix(const GateOp &g, size_t n);

// Product of the gates' matrices in list order (first gate leftmost), i.e.
// conjugating an operator by the list applies the first gate's conjugation
// innermost.
Mat circuit_unitary(std::span<const GateOp> gates, size_t n);

// Pauli string with X (bit 0) or Y (bit 1) at every site, unnormalized.
Mat xy_string_matrix(const BitVec &bits);

}  // namespace supercliff::dense
