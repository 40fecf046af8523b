#include "supercliff/ensembles.h"

#include <cmath>
#include <nlohmann/json.hpp>

namespace supercliff {

std::string family_name(CircuitFamily f) {
    return f == CircuitFamily::Parallel ? "parallel" : "nearest_neighbor";
}

CircuitFamily parse_family(const std::string &name) {
    if (name == "parallel") {
        return CircuitFamily::Parallel;
    }
    if (name == "nearest_neighbor" || name == "nn") {
        return CircuitFamily::NearestNeighbor;
    }
    throw std::invalid_argument("unknown circuit family '" + name + "' (want parallel|nn)");
}

Fraction Fraction::parse(const std::string &text) {
    size_t slash = text.find('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 == text.size()) {
        throw std::invalid_argument("fraction must look like 'p/q', got '" + text + "'");
    }
    Fraction f;
    try {
        f.num = static_cast<uint32_t>(std::stoul(text.substr(0, slash)));
        f.den = static_cast<uint32_t>(std::stoul(text.substr(slash + 1)));
    } catch (const std::exception &) {
        throw std::invalid_argument("fraction must look like 'p/q', got '" + text + "'");
    }
    if (f.den == 0) {
        throw std::invalid_argument("fraction denominator must be nonzero");
    }
    return f;
}

size_t EnsembleSpec::resolved_max_t() const {
    if (max_t) {
        return max_t;
    }
    return static_cast<size_t>(std::ceil(40.0 * std::log(double(n_qubits))));
}

EnsembleSpec EnsembleSpec::resolved() const {
    EnsembleSpec s = *this;
    s.max_t = resolved_max_t();
    s.entropy_cadence = resolved_cadence();
    return s;
}

void EnsembleSpec::validate() const {
    if (family == CircuitFamily::Parallel && n_qubits % 40 != 0) {
        throw std::invalid_argument(
            "parallel circuit family requires N divisible by 40, got N=" +
            std::to_string(n_qubits));
    }
    if (family == CircuitFamily::NearestNeighbor && n_qubits < 3) {
        throw std::invalid_argument("nearest-neighbour family requires N >= 3");
    }
    if (2 * entropy_fraction.num >= entropy_fraction.den) {
        throw std::invalid_argument(
            "subsystem fraction must satisfy 0 < m < 1/2, got " + entropy_fraction.to_string());
    }
    if (entropy_fraction.num == 0 || region_size() == 0) {
        throw std::invalid_argument("subsystem fraction m*N must select at least one qubit");
    }
    if (realizations == 0) {
        throw std::invalid_argument("need at least one realization");
    }
    if (!(epsilon > 0)) {
        throw std::invalid_argument("epsilon must be positive");
    }
}

std::string EnsembleSpec::to_json() const {
    nlohmann::json j{
        {"schema", "supercliff-ensemble"},
        {"version", 1},
        {"n", n_qubits},
        {"family", family_name(family)},
        {"realizations", realizations},
        {"max_t", max_t},
        {"master_seed", master_seed},
        {"m", entropy_fraction.to_string()},
        {"epsilon", epsilon},
        {"entropy_cadence", entropy_cadence},
    };
    return j.dump();
}

EnsembleSpec EnsembleSpec::from_json(const std::string &text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.value("schema", "") != "supercliff-ensemble" || j.value("version", 0) != 1) {
        throw std::invalid_argument("unrecognized ensemble spec schema");
    }
    EnsembleSpec s;
    s.n_qubits = j.at("n").get<size_t>();
    s.family = parse_family(j.at("family").get<std::string>());
    s.realizations = j.at("realizations").get<size_t>();
    s.max_t = j.at("max_t").get<size_t>();
    s.master_seed = j.at("master_seed").get<uint64_t>();
    s.entropy_fraction = Fraction::parse(j.at("m").get<std::string>());
    s.epsilon = j.at("epsilon").get<double>();
    s.entropy_cadence = j.at("entropy_cadence").get<size_t>();
    return s;
}

std::vector<GateOp> sample_parallel_step(size_t n, Rng &rng) {
    if (n % 40 != 0 || n == 0) {
        throw std::invalid_argument(
            "parallel step requires N divisible by 40, got N=" + std::to_string(n));
    }
    uint32_t gamma_size = static_cast<uint32_t>(n / 10);
    uint32_t c3_count = 3 * gamma_size / 4;
    // Gamma comes out of the partial shuffle in uniformly random order, so
    // its first 3/4 are a uniform shuffled selection: chunk them into triples.
    std::vector<uint32_t> gamma = rng.sample_distinct(static_cast<uint32_t>(n), gamma_size);
    std::vector<GateOp> step;
    step.reserve(c3_count / 3 + (gamma_size - c3_count));
    for (uint32_t i = 0; i < c3_count; i += 3) {
        uint32_t control = static_cast<uint32_t>(rng.below(3));
        uint32_t triple[3] = {gamma[i], gamma[i + 1], gamma[i + 2]};
        step.push_back(GateOp::c3(triple[control], triple[(control + 1) % 3], triple[(control + 2) % 3]));
    }
    for (uint32_t i = c3_count; i < gamma_size; i++) {
        step.push_back(GateOp::t(gamma[i]));
    }
    return step;
}

std::vector<GateOp> sample_nn_step(size_t n, Rng &rng) {
    if (n < 3) {
        throw std::invalid_argument("nearest-neighbour step requires N >= 3");
    }
    std::vector<GateOp> step;
    step.reserve(2);
    step.push_back(GateOp::t(static_cast<uint32_t>(rng.below(n))));
    uint32_t j = static_cast<uint32_t>(rng.below(n - 2));
    uint32_t control = j + static_cast<uint32_t>(rng.below(3));
    uint32_t window[3] = {j, j + 1, j + 2};
    uint32_t targets[2];
    size_t w = 0;
    for (uint32_t q : window) {
        if (q != control) {
            targets[w++] = q;
        }
    }
    step.push_back(GateOp::c3(control, targets[0], targets[1]));
    return step;
}

std::vector<GateOp> sample_step(const EnsembleSpec &spec, Rng &rng) {
    return spec.family == CircuitFamily::Parallel ? sample_parallel_step(spec.n_qubits, rng)
                                                  : sample_nn_step(spec.n_qubits, rng);
}

uint64_t realization_seed(uint64_t master_seed, uint64_t realization_index) {
    return splitmix64(master_seed ^ splitmix64(realization_index));
}

}  // namespace supercliff
