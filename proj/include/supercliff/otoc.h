#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "supercliff/tableau.h"

namespace supercliff {

// Exact dyadic correlator value: 0, or 2^(-k/2) with integer 0 <= k <= N.
struct OtocValue {
    bool is_zero = false;
    uint32_t k = 0;

    static OtocValue zero() { return {true, 0}; }

    double as_double() const { return is_zero ? 0.0 : std::pow(2.0, -0.5 * double(k)); }

    bool operator==(const OtocValue &other) const {
        return is_zero == other.is_zero && (is_zero || k == other.k);
    }
};

// Builds the tableau of the echoed operator: starting from the all-X basis
// operator, conjugate by the basis rotation selecting w0, the circuit, the
// probe V, the inverse circuit, and the inverse basis rotation. Evaluating
// this tableau against the all-zeros basis operator yields the correlator
//   F(t) = (1/2^N) Tr(W(t)^dag V^dag W(t) V)
// for W(0) the basis operator labelled w0 and V the product of v_gates.
//
// The basis rotation applies T twice per site where w0 has a Y; the squared
// T maps that site's X to -Y and the stray sign cancels because W enters the
// correlator twice.
Tableau echo_tableau(std::span<const GateOp> circuit,
                     std::span<const GateOp> v_gates,
                     const BasisOperatorLabel &w0);

// Stabilizer inner product of the tableau's operator with one basis operator.
// Forms the N x 2N matrix (X|Z) with one generator per row, row-reduces the
// X block while mirroring every row operation on the generators (so signs
// stay exact), and reads the result off the pure-Z rows: any sign mismatch
// against the target gives exactly zero, otherwise 2^(-k/2) with k the rank
// of the X block.
OtocValue inner_product_with_basis(const Tableau &t, const BasisOperatorLabel &target);

// Correlator at each requested time, re-running the echo from scratch per
// time over the first `t` timesteps of the realized circuit.
std::vector<OtocValue> otoc_trace(const std::vector<std::vector<GateOp>> &steps,
                                  std::span<const GateOp> v_gates,
                                  const BasisOperatorLabel &w0,
                                  std::span<const size_t> times);

// Number of qubits spanned by the gate list (max index + 1); 0 when empty.
size_t support_size(std::span<const GateOp> gates);

// Late-time plateau: the average of Tr(P V^dag P V) over the 2^n normalized
// X/Y strings P on the region, with V built densely from the physical gate
// definitions. Requires region_size <= 5 and v_gates supported on the first
// region_size qubits.
double plateau_value(std::span<const GateOp> v_gates, size_t region_size);

}  // namespace supercliff
