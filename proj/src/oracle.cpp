#include "supercliff/oracle.h"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "supercliff/otoc.h"

namespace supercliff::oracle {

namespace {

constexpr size_t kMaxSuperStateQubits = 12;
constexpr size_t kMaxConjugationQubits = 6;
constexpr double kInvSqrt2 = 0.70710678118654752440;

void require_super_state_size(size_t n) {
    if (n == 0 || n > kMaxSuperStateQubits) {
        throw std::invalid_argument(
            "dense super-state supports 1..=" + std::to_string(kMaxSuperStateQubits) +
            " qubits, got " + std::to_string(n));
    }
}

// Gate matrices on the operator subspace; index order matches the listed
// qubit order with the first qubit most significant.
dense::Mat super_gate_matrix(const GateOp &g) {
    switch (g.kind) {
        case GateKind::T: {
            dense::Mat m(2, 2);
            m << kInvSqrt2, kInvSqrt2, -kInvSqrt2, kInvSqrt2;
            return m;
        }
        case GateKind::TInv: {
            dense::Mat m(2, 2);
            m << kInvSqrt2, -kInvSqrt2, kInvSqrt2, kInvSqrt2;
            return m;
        }
        case GateKind::Swap: {
            dense::Mat m = dense::Mat::Zero(4, 4);
            m(0, 0) = m(3, 3) = m(1, 2) = m(2, 1) = 1.0;
            return m;
        }
        case GateKind::C3: {
            // Controlled Y x Y on the two targets.
            dense::Mat m = dense::Mat::Zero(8, 8);
            for (int b = 0; b < 4; b++) {
                m(b, b) = 1.0;
            }
            m(7, 4) = -1.0;
            m(6, 5) = 1.0;
            m(5, 6) = 1.0;
            m(4, 7) = -1.0;
            return m;
        }
    }
    throw std::logic_error("unreachable gate kind");
}

}  // namespace

DenseSuperState DenseSuperState::computational(const BasisOperatorLabel &label) {
    require_super_state_size(label.n_sites());
    DenseSuperState s;
    s.n = label.n_sites();
    s.amps = dense::Vec::Zero(int64_t{1} << s.n);
    s.amps[dense::label_index(label.bits)] = 1.0;
    return s;
}

void dense_apply(DenseSuperState &state, const GateOp &g) {
    require_super_state_size(state.n);
    g.validate(state.n);
    dense::Mat m = super_gate_matrix(g);
    size_t arity = g.arity();
    size_t local_dim = size_t{1} << arity;

    uint64_t mask = 0;
    uint64_t pos[3] = {};
    for (size_t i = 0; i < arity; i++) {
        pos[i] = dense::site_mask(state.n, g.qubits[i]);
        mask |= pos[i];
    }

    std::array<std::complex<double>, 8> local;
    uint64_t dim = uint64_t{1} << state.n;
    for (uint64_t base = 0; base < dim; base++) {
        if (base & mask) {
            continue;
        }
        for (uint64_t b = 0; b < local_dim; b++) {
            uint64_t idx = base;
            for (size_t i = 0; i < arity; i++) {
                if ((b >> (arity - 1 - i)) & 1) {
                    idx |= pos[i];
                }
            }
            local[b] = state.amps[idx];
        }
        for (uint64_t b_out = 0; b_out < local_dim; b_out++) {
            std::complex<double> acc = 0.0;
            for (uint64_t b_in = 0; b_in < local_dim; b_in++) {
                acc += m(b_out, b_in) * local[b_in];
            }
            uint64_t idx = base;
            for (size_t i = 0; i < arity; i++) {
                if ((b_out >> (arity - 1 - i)) & 1) {
                    idx |= pos[i];
                }
            }
            state.amps[idx] = acc;
        }
    }
}

double dense_entropy(const DenseSuperState &state, const Region &a) {
    require_super_state_size(state.n);
    a.validate(state.n);

    std::vector<uint32_t> complement;
    complement.reserve(state.n - a.sites.size());
    for (uint32_t i = 0; i < state.n; i++) {
        if (!std::binary_search(a.sites.begin(), a.sites.end(), i)) {
            complement.push_back(i);
        }
    }

    dense::Mat reshaped(int64_t{1} << a.sites.size(), int64_t{1} << complement.size());
    uint64_t dim = uint64_t{1} << state.n;
    for (uint64_t idx = 0; idx < dim; idx++) {
        uint64_t row = 0, col = 0;
        for (uint32_t s : a.sites) {
            row = (row << 1) | ((idx >> (state.n - 1 - s)) & 1);
        }
        for (uint32_t s : complement) {
            col = (col << 1) | ((idx >> (state.n - 1 - s)) & 1);
        }
        reshaped(row, col) = state.amps[idx];
    }

    Eigen::JacobiSVD<dense::Mat> svd(reshaped);
    double entropy = 0.0;
    for (double sigma : svd.singularValues()) {
        double p = sigma * sigma;
        if (p > 1e-14) {
            entropy -= p * std::log2(p);
        }
    }
    return entropy;
}

dense::Mat conjugation_oracle(const BasisOperatorLabel &w0, std::span<const GateOp> gates) {
    size_t n = w0.n_sites();
    if (n == 0 || n > kMaxConjugationQubits) {
        throw std::invalid_argument(
            "conjugation oracle supports 1..=" + std::to_string(kMaxConjugationQubits) +
            " qubits, got " + std::to_string(n));
    }
    dense::Mat w = dense::xy_string_matrix(w0.bits);
    for (const GateOp &g : gates) {
        dense::Mat u = dense::physical_gate_matrix(g, n);
        w = (u.adjoint() * w * u).eval();
    }
    return w;
}

dense::Vec project_onto_xy_basis(const dense::Mat &w) {
    size_t dim = static_cast<size_t>(w.rows());
    size_t n = static_cast<size_t>(std::round(std::log2(double(dim))));
    dense::Vec amps(dim);
    for (uint64_t b = 0; b < dim; b++) {
        BitVec bits(n);
        for (size_t i = 0; i < n; i++) {
            bits.set(i, (b >> (n - 1 - i)) & 1);
        }
        dense::Mat sigma = dense::xy_string_matrix(bits);
        amps[b] = (sigma.adjoint() * w).trace() / double(dim);
    }
    return amps;
}

double otoc_trace_formula(const dense::Mat &w_t, const dense::Mat &v) {
    std::complex<double> f =
        (w_t.adjoint() * v.adjoint() * w_t * v).trace() / double(w_t.rows());
    if (std::abs(f.imag()) > 1e-9) {
        throw std::runtime_error("trace-formula correlator has a non-real component");
    }
    return f.real();
}

bool stabilizes(const DenseSuperState &state, const SuperPauli &g, double tol) {
    // (prod X^x Z^z)|c> = (-1)^(z.c) |c ^ x>, so O|psi> = |psi> iff every
    // amplitude satisfies psi[c ^ x] = (-1)^(s + z.c) psi[c].
    uint64_t x_mask = 0, z_mask = 0;
    size_t n = state.n;
    for (size_t i = 0; i < n; i++) {
        if (g.x_bits.get(i)) {
            x_mask |= dense::site_mask(n, i);
        }
        if (g.z_bits.get(i)) {
            z_mask |= dense::site_mask(n, i);
        }
    }
    uint64_t dim = uint64_t{1} << n;
    for (uint64_t c = 0; c < dim; c++) {
        double sign = (g.sign ^ (std::popcount(z_mask & c) & 1)) ? -1.0 : 1.0;
        if (std::abs(state.amps[c ^ x_mask] - sign * state.amps[c]) > tol) {
            return false;
        }
    }
    return true;
}

std::vector<GateOp> random_circuit(size_t n, size_t length, Rng &rng) {
    std::vector<GateOp> gates;
    gates.reserve(length);
    size_t kinds = n >= 3 ? 4 : n == 2 ? 3 : 2;
    for (size_t i = 0; i < length; i++) {
        switch (rng.below(kinds)) {
            case 0:
                gates.push_back(GateOp::t(static_cast<uint32_t>(rng.below(n))));
                break;
            case 1:
                gates.push_back(GateOp::t_inv(static_cast<uint32_t>(rng.below(n))));
                break;
            case 2: {
                auto q = rng.sample_distinct(static_cast<uint32_t>(n), 2);
                gates.push_back(GateOp::swap(q[0], q[1]));
                break;
            }
            default: {
                auto q = rng.sample_distinct(static_cast<uint32_t>(n), 3);
                gates.push_back(GateOp::c3(q[0], q[1], q[2]));
                break;
            }
        }
    }
    return gates;
}

BasisOperatorLabel random_label(size_t n, Rng &rng) {
    BasisOperatorLabel label = BasisOperatorLabel::all_x(n);
    for (size_t i = 0; i < n; i++) {
        label.bits.set(i, rng.below(2));
    }
    return label;
}

Region random_region(size_t n, Rng &rng) {
    uint32_t size = 1 + static_cast<uint32_t>(rng.below(n - 1));
    Region r;
    r.sites = rng.sample_distinct(static_cast<uint32_t>(n), size);
    std::sort(r.sites.begin(), r.sites.end());
    return r;
}

std::string CheckReport::summary() const {
    std::string s = (passed() ? "pass  " : "FAIL  ") + name + "  (" + std::to_string(cases) +
                    " cases, " + std::to_string(failures) + " failures)";
    if (!detail.empty()) {
        s += "  " + detail;
    }
    return s;
}

CheckReport check_tableau_stabilization(size_t n, size_t n_circuits, size_t length, uint64_t seed) {
    CheckReport report;
    report.name = "tableau stabilizes dense state, n=" + std::to_string(n);
    for (size_t c = 0; c < n_circuits; c++) {
        Rng rng(splitmix64(seed ^ splitmix64(c)));
        BasisOperatorLabel label = random_label(n, rng);
        Tableau t = new_computational(label);
        DenseSuperState psi = DenseSuperState::computational(label);
        std::vector<GateOp> circuit = random_circuit(n, length, rng);
        bool ok = true;
        for (const GateOp &g : circuit) {
            t.apply_gate(g);
            dense_apply(psi, g);
            for (size_t a = 0; a < n && ok; a++) {
                ok = stabilizes(psi, t.generator(a));
            }
            if (!ok) {
                break;
            }
        }
        report.cases++;
        if (!ok) {
            report.failures++;
            if (report.detail.empty()) {
                report.detail = "first failure: circuit " + std::to_string(c);
            }
        }
    }
    return report;
}

CheckReport check_conjugation_equivalence(size_t n, size_t n_circuits, size_t length, uint64_t seed) {
    CheckReport report;
    report.name = "physical conjugation matches super-state, n=" + std::to_string(n);
    for (size_t c = 0; c < n_circuits; c++) {
        Rng rng(splitmix64(seed ^ splitmix64(c)));
        BasisOperatorLabel label = random_label(n, rng);
        DenseSuperState psi = DenseSuperState::computational(label);
        std::vector<GateOp> circuit = random_circuit(n, length, rng);
        dense::Mat w = conjugation_oracle(label, circuit);
        for (const GateOp &g : circuit) {
            dense_apply(psi, g);
        }
        dense::Vec projected = project_onto_xy_basis(w);
        bool ok = (projected - psi.amps).cwiseAbs().maxCoeff() <= 1e-10 &&
                  std::abs(projected.norm() - 1.0) <= 1e-10;
        report.cases++;
        if (!ok) {
            report.failures++;
            if (report.detail.empty()) {
                report.detail = "first failure: circuit " + std::to_string(c);
            }
        }
    }
    return report;
}

CheckReport check_entropy_agreement(size_t n, size_t n_cases, size_t length, uint64_t seed) {
    CheckReport report;
    report.name = "rank entropy matches Schmidt entropy, n=" + std::to_string(n);
    for (size_t c = 0; c < n_cases; c++) {
        Rng rng(splitmix64(seed ^ splitmix64(c)));
        BasisOperatorLabel label = random_label(n, rng);
        Tableau t = new_computational(label);
        DenseSuperState psi = DenseSuperState::computational(label);
        std::vector<GateOp> circuit = random_circuit(n, length, rng);
        for (const GateOp &g : circuit) {
            t.apply_gate(g);
            dense_apply(psi, g);
        }
        Region region = random_region(n, rng);

        int s_tableau = region_entropy(t, region);
        double s_dense = dense_entropy(psi, region);
        bool ok = std::abs(s_dense - double(s_tableau)) <= 1e-8;

        // Sign flips must not move the entropy.
        Tableau flipped = t;
        for (size_t a = 0; a < n; a++) {
            if (rng.below(2)) {
                flipped.flip_sign(a);
            }
        }
        ok = ok && region_entropy(flipped, region) == s_tableau;

        // Any other initial basis label gives the same trace.
        Tableau other = new_computational(random_label(n, rng));
        other.apply_sequence(circuit);
        ok = ok && region_entropy(other, region) == s_tableau;

        report.cases++;
        if (!ok) {
            report.failures++;
            if (report.detail.empty()) {
                report.detail = "first failure: case " + std::to_string(c);
            }
        }
    }
    return report;
}

CheckReport check_otoc_agreement(size_t n, size_t n_cases, uint64_t seed) {
    CheckReport report;
    report.name = "echo correlator matches trace formula, n=" + std::to_string(n);
    if (n < 3) {
        throw std::invalid_argument("correlator check needs n >= 3 for the probe catalog");
    }
    const std::vector<std::vector<GateOp>> probes = {
        {GateOp::c3(0, 1, 2)},
        {GateOp::t(2), GateOp::c3(0, 1, 2)},
    };
    for (size_t c = 0; c < n_cases; c++) {
        Rng rng(splitmix64(seed ^ splitmix64(c)));
        const std::vector<GateOp> &v = probes[c % probes.size()];
        BasisOperatorLabel w0 = BasisOperatorLabel::all_x(n);
        if ((c / probes.size()) % 2) {
            w0.bits.set(0, true);
        }
        std::vector<GateOp> circuit = random_circuit(n, rng.below(41), rng);

        Tableau echo = echo_tableau(circuit, v, w0);
        double f_tableau = inner_product_with_basis(echo, BasisOperatorLabel::all_x(n)).as_double();

        dense::Mat w_t = conjugation_oracle(w0, circuit);
        double f_oracle = otoc_trace_formula(w_t, dense::circuit_unitary(v, n));

        report.cases++;
        if (std::abs(f_tableau - f_oracle) > 1e-10) {
            report.failures++;
            if (report.detail.empty()) {
                report.detail = "first failure: case " + std::to_string(c);
            }
        }
    }
    return report;
}

}  // namespace supercliff::oracle
