#pragma once

#include <vector>

#include "supercliff/tableau.h"

namespace supercliff {

// Qubit index set identifying one side of a bipartition. Canonical form:
// sorted, distinct, nonempty, strict subset of {0..N-1}.
struct Region {
    std::vector<uint32_t> sites;

    static Region prefix(size_t n_a);

    void validate(size_t n_qubits) const;
};

// Operator entanglement entropy (base-2) of the first n_a qubits: rank over
// GF(2) of the 2*n_a site-component rows of the stabilizer matrix, minus n_a.
// Exact integer; the tableau is not modified.
int prefix_entropy(const Tableau &t, size_t n_a);

// Same for an arbitrary site set, via row selection (equivalent to permuting
// the region to the front).
int region_entropy(const Tableau &t, const Region &a);

}  // namespace supercliff
