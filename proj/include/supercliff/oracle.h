#pragma once

#include <string>

#include "supercliff/dense.h"
#include "supercliff/entropy.h"
#include "supercliff/rng.h"

namespace supercliff::oracle {

// Brute-force state over the X/Y string basis (site 0 = most significant
// bit). Capped at 12 qubits.
struct DenseSuperState {
    size_t n = 0;
    dense::Vec amps;

    static DenseSuperState computational(const BasisOperatorLabel &label);

    double norm_error() const { return std::abs(amps.norm() - 1.0); }
};

// Applies one gate's action on the operator subspace as a small dense matrix
// on the addressed tensor factors.
void dense_apply(DenseSuperState &state, const GateOp &g);

// Schmidt-based von Neumann entropy across the region, base-2 logarithm.
double dense_entropy(const DenseSuperState &state, const Region &a);

// Literal Heisenberg conjugation: builds the 2^N x 2^N matrix of the basis
// operator and conjugates it gate by gate with the physical unitaries
// (C3 expanded into CX/CZ/T^6 factors). Capped at 6 qubits.
dense::Mat conjugation_oracle(const BasisOperatorLabel &w0, std::span<const GateOp> gates);

// Amplitudes Tr(sigma_b^dag W) / 2^N over the X/Y string basis.
dense::Vec project_onto_xy_basis(const dense::Mat &w);

// (1/2^N) Tr(W^dag V^dag W V); the imaginary part must vanish numerically.
double otoc_trace_formula(const dense::Mat &w_t, const dense::Mat &v);

bool stabilizes(const DenseSuperState &state, const SuperPauli &g, double tol = 1e-10);

// Uniform random circuit over the gate set (arities capped by n). This is
// the case distribution shared by all differential checks.
std::vector<GateOp> random_circuit(size_t n, size_t length, Rng &rng);
BasisOperatorLabel random_label(size_t n, Rng &rng);
Region random_region(size_t n, Rng &rng);

struct CheckReport {
    std::string name;
    size_t cases = 0;
    size_t failures = 0;
    std::string detail;

    bool passed() const { return failures == 0; }
    std::string summary() const;
};

// Tableau generators stabilize the dense super-state after every gate of
// random circuits.
CheckReport check_tableau_stabilization(size_t n, size_t n_circuits, size_t length, uint64_t seed);

// Physical-gate conjugation agrees with dense super-state evolution on every
// basis amplitude (and stays inside the subspace). n <= 6.
CheckReport check_conjugation_equivalence(size_t n, size_t n_circuits, size_t length, uint64_t seed);

// Rank-based region entropy equals dense Schmidt entropy exactly, is
// invariant under generator sign flips, and is identical across initial
// basis labels.
CheckReport check_entropy_agreement(size_t n, size_t n_cases, size_t length, uint64_t seed);

// Echoed-tableau correlator equals the dense trace formula. n <= 6; cycles
// through the catalog probes and both reference initial operators.
CheckReport check_otoc_agreement(size_t n, size_t n_cases, uint64_t seed);

}  // namespace supercliff::oracle
