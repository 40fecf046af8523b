#include "supercliff/dense.h"

#include <functional>
#include <numbers>
#include <unsupported/Eigen/KroneckerProduct>

namespace supercliff::dense {

namespace {

using namespace std::complex_literals;

Mat embedded_diagonal(size_t n, const std::function<std::complex<double>(uint64_t)> &phase) {
    size_t dim = size_t{1} << n;
    Mat m = Mat::Zero(dim, dim);
    for (uint64_t j = 0; j < dim; j++) {
        m(j, j) = phase(j);
    }
    return m;
}

Mat embedded_permutation(size_t n, const std::function<uint64_t(uint64_t)> &image) {
    size_t dim = size_t{1} << n;
    Mat m = Mat::Zero(dim, dim);
    for (uint64_t j = 0; j < dim; j++) {
        m(image(j), j) = 1.0;
    }
    return m;
}

Mat embedded_cx(size_t n, size_t control, size_t target) {
    uint64_t cm = site_mask(n, control);
    uint64_t tm = site_mask(n, target);
    return embedded_permutation(n, [=](uint64_t j) { return (j & cm) ? j ^ tm : j; });
}

Mat embedded_cz(size_t n, size_t a, size_t b) {
    uint64_t am = site_mask(n, a);
    uint64_t bm = site_mask(n, b);
    return embedded_diagonal(n, [=](uint64_t j) -> std::complex<double> {
        return ((j & am) && (j & bm)) ? -1.0 : 1.0;
    });
}

Mat embedded_phase(size_t n, size_t q, std::complex<double> phase) {
    uint64_t qm = site_mask(n, q);
    return embedded_diagonal(n, [=](uint64_t j) { return (j & qm) ? phase : 1.0; });
}

}  // namespace

uint64_t label_index(const BitVec &bits) {
    uint64_t idx = 0;
    for (size_t i = 0; i < bits.n_bits(); i++) {
        idx = (idx << 1) | uint64_t{bits.get(i)};
    }
    return idx;
}

Mat physical_gate_matrix(const GateOp &g, size_t n) {
    g.validate(n);
    if (n > 16) {
        throw std::invalid_argument("dense gate matrices are limited to n <= 16");
    }
    const std::complex<double> t_phase = std::polar(1.0, std::numbers::pi / 4);
    switch (g.kind) {
        case GateKind::T:
            return embedded_phase(n, g.qubits[0], t_phase);
        case GateKind::TInv:
            return embedded_phase(n, g.qubits[0], std::conj(t_phase));
        case GateKind::Swap: {
            uint64_t am = site_mask(n, g.qubits[0]);
            uint64_t bm = site_mask(n, g.qubits[1]);
            return embedded_permutation(n, [=](uint64_t j) {
                bool ba = j & am, bb = j & bm;
                return ba == bb ? j : j ^ am ^ bm;
            });
        }
        case GateKind::C3: {
            // CX21 CX31 CZ12 T1^6 T2^6 with "1" the control index; T^6 = Sdg.
            size_t q1 = g.qubits[0], q2 = g.qubits[1], q3 = g.qubits[2];
            std::complex<double> sdg = -1.0i;
            return embedded_cx(n, q2, q1) * embedded_cx(n, q3, q1) * embedded_cz(n, q1, q2) *
                   embedded_phase(n, q1, sdg) * embedded_phase(n, q2, sdg);
        }
    }
    throw std::logic_error("unreachable gate kind");
}

Mat circuit_unitary(std::span<const GateOp> gates, size_t n) {
    size_t dim = size_t{1} << n;
    Mat u = Mat::Identity(dim, dim);
    for (const GateOp &g : gates) {
        u = u * physical_gate_matrix(g, n);
    }
    return u;
}

Mat xy_string_matrix(const BitVec &bits) {
    Mat x(2, 2), y(2, 2);
    x << 0, 1, 1, 0;
    y << 0, -1.0i, 1.0i, 0;
    Mat m = Mat::Identity(1, 1);
    for (size_t i = 0; i < bits.n_bits(); i++) {
        // site 0 ends up as the leftmost (most significant) tensor factor
        m = Eigen::kroneckerProduct(m, bits.get(i) ? y : x).eval();
    }
    return m;
}

}  // namespace supercliff::dense
