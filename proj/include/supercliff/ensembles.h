#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "supercliff/rng.h"
#include "supercliff/tableau.h"

namespace supercliff {

enum class CircuitFamily : uint8_t { Parallel, NearestNeighbor };

std::string family_name(CircuitFamily f);
CircuitFamily parse_family(const std::string &name);

// Exact subsystem fraction m, e.g. 1/4. The entropy region is the first
// floor(m*N) qubits.
struct Fraction {
    uint32_t num = 1;
    uint32_t den = 4;

    double value() const { return double(num) / double(den); }
    std::string to_string() const { return std::to_string(num) + "/" + std::to_string(den); }
    static Fraction parse(const std::string &text);

    bool operator==(const Fraction &other) const = default;
};

// Full description of one random-circuit Monte Carlo experiment.
// max_t == 0 and entropy_cadence == 0 select the documented defaults
// (ceil(40 ln N) and 1 for N <= 520 / 5 above, respectively).
struct EnsembleSpec {
    size_t n_qubits = 120;
    CircuitFamily family = CircuitFamily::Parallel;
    size_t realizations = 500;
    size_t max_t = 0;
    uint64_t master_seed = 1;
    Fraction entropy_fraction{1, 4};
    double epsilon = 10.0;
    size_t entropy_cadence = 0;

    size_t region_size() const { return entropy_fraction.num * n_qubits / entropy_fraction.den; }
    double saturation_entropy() const { return entropy_fraction.value() * double(n_qubits); }
    size_t resolved_max_t() const;
    size_t resolved_cadence() const { return entropy_cadence ? entropy_cadence : (n_qubits <= 520 ? 1 : 5); }

    // Copy with max_t and entropy_cadence made concrete.
    EnsembleSpec resolved() const;

    void validate() const;

    std::string to_json() const;
    static EnsembleSpec from_json(const std::string &text);

    bool operator==(const EnsembleSpec &other) const = default;
};

// One timestep of the all-to-all parallel circuit: draw Gamma of n/10 qubits,
// apply C3 to a shuffled 3/4 of them in consecutive triples (control chosen
// uniformly within each triple) and T to the remainder. Requires 40 | n.
std::vector<GateOp> sample_parallel_step(size_t n, Rng &rng);

// One timestep of the nearest-neighbour baseline: T on a uniform qubit, then
// C3 on a uniform window (j, j+1, j+2) with a uniform control among the
// three. Requires n >= 3.
std::vector<GateOp> sample_nn_step(size_t n, Rng &rng);

std::vector<GateOp> sample_step(const EnsembleSpec &spec, Rng &rng);

// Deterministic per-realization seed stream: splitmix64(master ^ splitmix64(index)).
uint64_t realization_seed(uint64_t master_seed, uint64_t realization_index);

}  // namespace supercliff
