#include "supercliff/otoc.h"

#include <cassert>
#include <cstring>

#include "supercliff/dense.h"
#include "supercliff/gf2.h"

namespace supercliff {

Tableau echo_tableau(std::span<const GateOp> circuit,
                     std::span<const GateOp> v_gates,
                     const BasisOperatorLabel &w0) {
    size_t n = w0.n_sites();
    Tableau t = new_computational(BasisOperatorLabel::all_x(n));
    for (size_t i = 0; i < n; i++) {
        if (w0.bits.get(i)) {
            t.apply_gate(GateOp::t(static_cast<uint32_t>(i)));
            t.apply_gate(GateOp::t(static_cast<uint32_t>(i)));
        }
    }
    t.apply_sequence(circuit, false);
    t.apply_sequence(v_gates, false);
    t.apply_sequence(circuit, true);
    for (size_t i = n; i-- > 0;) {
        if (w0.bits.get(i)) {
            t.apply_gate(GateOp::t_inv(static_cast<uint32_t>(i)));
            t.apply_gate(GateOp::t_inv(static_cast<uint32_t>(i)));
        }
    }
    return t;
}

OtocValue inner_product_with_basis(const Tableau &t, const BasisOperatorLabel &target) {
    size_t n = t.n_qubits();
    if (target.n_sites() != n) {
        throw std::invalid_argument("target label length does not match tableau");
    }

    // Site-major slices are rows of the transposed blocks; flip to
    // generator-major and concatenate as (X|Z).
    gf2::BitMatrix site_x(n, n), site_z(n, n);
    size_t wpr = site_x.words_per_row();
    for (size_t i = 0; i < n; i++) {
        std::memcpy(site_x.row(i), t.x_column(i).words(), wpr * sizeof(uint64_t));
        std::memcpy(site_z.row(i), t.z_column(i).words(), wpr * sizeof(uint64_t));
    }
    gf2::BitMatrix gen_x = gf2::transpose(site_x);
    gf2::BitMatrix gen_z = gf2::transpose(site_z);

    gf2::BitMatrix m(n, 2 * n);
    std::vector<SuperPauli> gens;
    gens.reserve(n);
    for (size_t a = 0; a < n; a++) {
        BitVec x(n), z(n);
        std::memcpy(x.words(), gen_x.row(a), wpr * sizeof(uint64_t));
        std::memcpy(z.words(), gen_z.row(a), wpr * sizeof(uint64_t));
        m.blit_row(a, 0, x);
        m.blit_row(a, n, z);
        gens.emplace_back(t.signs().get(a), std::move(x), std::move(z));
    }

    auto [echelon, k] = gf2::row_echelon_with_callback(
        m, 0, n, [&gens](gf2::RowOpKind kind, size_t i, size_t j) {
            if (kind == gf2::RowOpKind::Swap) {
                std::swap(gens[i], gens[j]);
            } else {
                gens[i] = multiply(gens[i], gens[j]);
            }
        });

    // The final N-k generators are pure-Z strings; each stabilizes |target>
    // only if its sign equals the parity of its Z support on the target's
    // Y sites.
    for (size_t a = k; a < n; a++) {
        assert(gens[a].x_bits.all_zero());
        if (gens[a].sign != and_parity(gens[a].z_bits, target.bits)) {
            return OtocValue::zero();
        }
    }
    return {false, static_cast<uint32_t>(k)};
}

std::vector<OtocValue> otoc_trace(const std::vector<std::vector<GateOp>> &steps,
                                  std::span<const GateOp> v_gates,
                                  const BasisOperatorLabel &w0,
                                  std::span<const size_t> times) {
    for (size_t i = 0; i + 1 < times.size(); i++) {
        if (times[i] >= times[i + 1]) {
            throw std::invalid_argument("evaluation times must be strictly increasing");
        }
    }
    if (!times.empty() && times.back() > steps.size()) {
        throw std::invalid_argument("evaluation time exceeds realized circuit length");
    }
    BasisOperatorLabel all_zeros = BasisOperatorLabel::all_x(w0.n_sites());
    std::vector<GateOp> flat;
    std::vector<OtocValue> out;
    out.reserve(times.size());
    size_t consumed = 0;
    for (size_t t : times) {
        while (consumed < t) {
            flat.insert(flat.end(), steps[consumed].begin(), steps[consumed].end());
            consumed++;
        }
        Tableau echo = echo_tableau(flat, v_gates, w0);
        out.push_back(inner_product_with_basis(echo, all_zeros));
    }
    return out;
}

size_t support_size(std::span<const GateOp> gates) {
    size_t n = 0;
    for (const GateOp &g : gates) {
        for (size_t i = 0; i < g.arity(); i++) {
            n = std::max(n, size_t{g.qubits[i]} + 1);
        }
    }
    return n;
}

double plateau_value(std::span<const GateOp> v_gates, size_t region_size) {
    if (region_size < 1 || region_size > 5) {
        throw std::invalid_argument("plateau region size must be between 1 and 5 qubits");
    }
    if (support_size(v_gates) > region_size) {
        throw std::invalid_argument("probe gates have support outside the plateau region");
    }
    size_t dim = size_t{1} << region_size;
    dense::Mat v = dense::circuit_unitary(v_gates, region_size);
    dense::Mat v_dag = v.adjoint();
    std::complex<double> acc = 0.0;
    for (uint64_t b = 0; b < dim; b++) {
        BitVec bits(region_size);
        for (size_t i = 0; i < region_size; i++) {
            bits.set(i, (b >> (region_size - 1 - i)) & 1);
        }
        dense::Mat sigma = dense::xy_string_matrix(bits);
        acc += (sigma * v_dag * sigma * v).trace() / double(dim);
    }
    std::complex<double> avg = acc / double(dim);
    if (std::abs(avg.imag()) > 1e-12) {
        throw std::runtime_error("plateau average has a non-real component");
    }
    return avg.real();
}

}  // namespace supercliff
