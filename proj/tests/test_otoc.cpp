#include <doctest.h>

#include "supercliff/gf2.h"
#include "supercliff/oracle.h"
#include "supercliff/otoc.h"

using namespace supercliff;

namespace {

BasisOperatorLabel label_from(const std::string &bits) {
    return {BitVec::from_string(bits)};
}

}  // namespace

TEST_CASE("a computational tableau overlaps its own label with value one") {
    Rng rng(61);
    for (int trial = 0; trial < 10; trial++) {
        size_t n = 1 + rng.below(8);
        BasisOperatorLabel b = oracle::random_label(n, rng);
        Tableau t = new_computational(b);
        OtocValue v = inner_product_with_basis(t, b);
        CHECK_FALSE(v.is_zero);
        CHECK(v.k == 0);
        CHECK(v.as_double() == 1.0);
    }
}

TEST_CASE("distinct basis operators are orthogonal") {
    Rng rng(62);
    for (int trial = 0; trial < 10; trial++) {
        size_t n = 2 + rng.below(7);
        BasisOperatorLabel b = oracle::random_label(n, rng);
        BasisOperatorLabel other = b;
        other.bits.flip(rng.below(n));
        CHECK(inner_product_with_basis(new_computational(b), other).is_zero);
    }
}

TEST_CASE("the single-qubit +X tableau has overlap 2^(-1/2)") {
    Tableau t = new_computational(label_from("0"));
    // +Z -> -X -> ... -> two T gates later the generator is -Z; use three to
    // land on +X: Z -> -X -> -Z -> X
    t.apply_gate(GateOp::t(0));
    t.apply_gate(GateOp::t(0));
    t.apply_gate(GateOp::t(0));
    REQUIRE(t.generator(0).to_string() == "+X.");
    OtocValue v = inner_product_with_basis(t, label_from("0"));
    CHECK_FALSE(v.is_zero);
    CHECK(v.k == 1);
}

TEST_CASE("echo with no circuit and no probe is the all-zeros tableau") {
    Tableau t = echo_tableau({}, {}, label_from("0110"));
    CHECK(t == new_computational(label_from("0000")));
    CHECK(inner_product_with_basis(t, label_from("0000")).as_double() == 1.0);
}

TEST_CASE("C3 probe at time zero distinguishes initial operators") {
    std::vector<GateOp> v = {GateOp::c3(0, 1, 2)};

    Tableau all_x = echo_tableau({}, v, label_from("000"));
    CHECK(inner_product_with_basis(all_x, label_from("000")).as_double() == 1.0);

    Tableau y_first = echo_tableau({}, v, label_from("100"));
    CHECK(inner_product_with_basis(y_first, label_from("000")).is_zero);
}

TEST_CASE("identity probe gives one at every time") {
    Rng rng(63);
    std::vector<std::vector<GateOp>> steps;
    for (int s = 0; s < 12; s++) {
        steps.push_back(oracle::random_circuit(5, 6, rng));
    }
    std::vector<size_t> times = {0, 3, 7, 12};
    auto values = otoc_trace(steps, {}, oracle::random_label(5, rng), times);
    for (const OtocValue &v : values) {
        CHECK_FALSE(v.is_zero);
        CHECK(v.k == 0);
    }
}

TEST_CASE("trace values match the dense oracle on random circuits") {
    Rng rng(64);
    const std::vector<std::vector<GateOp>> probes = {
        {GateOp::c3(0, 1, 2)},
        {GateOp::t(2), GateOp::c3(0, 1, 2)},
    };
    for (int trial = 0; trial < 20; trial++) {
        size_t n = 3 + rng.below(3);
        std::vector<std::vector<GateOp>> steps;
        size_t horizon = rng.below(10);
        for (size_t s = 0; s < horizon; s++) {
            steps.push_back(oracle::random_circuit(n, 4, rng));
        }
        BasisOperatorLabel w0 = trial % 2 ? label_from(std::string(1, '1') + std::string(n - 1, '0'))
                                          : BasisOperatorLabel::all_x(n);
        const auto &v = probes[trial % probes.size()];
        std::vector<size_t> times;
        for (size_t t = 0; t <= horizon; t++) {
            times.push_back(t);
        }
        auto values = otoc_trace(steps, v, w0, times);

        std::vector<GateOp> flat;
        for (size_t t = 0; t <= horizon; t++) {
            if (t > 0) {
                flat.insert(flat.end(), steps[t - 1].begin(), steps[t - 1].end());
            }
            dense::Mat w_t = oracle::conjugation_oracle(w0, flat);
            double f = oracle::otoc_trace_formula(w_t, dense::circuit_unitary(v, n));
            CHECK(values[t].as_double() == doctest::Approx(f).epsilon(1e-10));
        }
    }
}

TEST_CASE("row-reduced generator sets stabilize the same operator") {
    Rng rng(66);
    for (int trial = 0; trial < 10; trial++) {
        BasisOperatorLabel label = oracle::random_label(6, rng);
        Tableau t = new_computational(label);
        oracle::DenseSuperState psi = oracle::DenseSuperState::computational(label);
        for (const GateOp &g : oracle::random_circuit(6, 30, rng)) {
            t.apply_gate(g);
            oracle::dense_apply(psi, g);
        }

        std::vector<SuperPauli> gens;
        gf2::BitMatrix m(6, 12);
        for (size_t a = 0; a < 6; a++) {
            gens.push_back(t.generator(a));
            m.blit_row(a, 0, gens[a].x_bits);
            m.blit_row(a, 6, gens[a].z_bits);
        }
        gf2::row_echelon_with_callback(m, 0, 6, [&](gf2::RowOpKind kind, size_t i, size_t j) {
            if (kind == gf2::RowOpKind::Swap) {
                std::swap(gens[i], gens[j]);
            } else {
                gens[i] = multiply(gens[i], gens[j]);
            }
        });
        for (const SuperPauli &g : gens) {
            CHECK(oracle::stabilizes(psi, g));
        }
    }
}

TEST_CASE("trace values match the super-space inner product up to ten qubits") {
    Rng rng(67);
    const std::vector<std::vector<GateOp>> probes = {
        {GateOp::c3(0, 1, 2)},
        {GateOp::t(2), GateOp::c3(0, 1, 2)},
    };
    for (int trial = 0; trial < 24; trial++) {
        size_t n = 3 + rng.below(8);  // up to 10
        BasisOperatorLabel w0 = trial % 2 ? label_from("1" + std::string(n - 1, '0'))
                                          : BasisOperatorLabel::all_x(n);
        const auto &v = probes[trial % probes.size()];
        std::vector<GateOp> circuit = oracle::random_circuit(n, rng.below(80), rng);

        // F = <W(t) | V^dag W(t) V> evaluated densely over the operator basis
        oracle::DenseSuperState psi = oracle::DenseSuperState::computational(w0);
        for (const GateOp &g : circuit) {
            oracle::dense_apply(psi, g);
        }
        oracle::DenseSuperState phi = psi;
        for (const GateOp &g : v) {
            oracle::dense_apply(phi, g);
        }
        std::complex<double> f_dense = psi.amps.dot(phi.amps);
        REQUIRE(std::abs(f_dense.imag()) < 1e-10);

        Tableau echo = echo_tableau(circuit, v, w0);
        double f_tab = inner_product_with_basis(echo, BasisOperatorLabel::all_x(n)).as_double();
        CHECK(f_tab == doctest::Approx(f_dense.real()).epsilon(1e-10));
    }
}

TEST_CASE("every correlator value is dyadic") {
    Rng rng(65);
    for (int trial = 0; trial < 30; trial++) {
        size_t n = 3 + rng.below(4);
        std::vector<GateOp> circuit = oracle::random_circuit(n, rng.below(60), rng);
        Tableau echo = echo_tableau(circuit, {{GateOp::c3(0, 1, 2)}}, oracle::random_label(n, rng));
        OtocValue v = inner_product_with_basis(echo, BasisOperatorLabel::all_x(n));
        if (!v.is_zero) {
            CHECK(v.k <= n);
        }
    }
}

TEST_CASE("plateau values") {
    CHECK(plateau_value({}, 1) == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<GateOp> c3 = {GateOp::c3(0, 1, 2)};
    CHECK(plateau_value(c3, 3) == doctest::Approx(0.5).epsilon(1e-12));

    std::vector<GateOp> t3c3 = {GateOp::t(2), GateOp::c3(0, 1, 2)};
    CHECK(plateau_value(t3c3, 3) == doctest::Approx(1.0 / std::sqrt(8.0)).epsilon(1e-12));
}

TEST_CASE("plateau validates region size and support") {
    std::vector<GateOp> c3 = {GateOp::c3(0, 1, 2)};
    CHECK_THROWS_AS(plateau_value(c3, 2), std::invalid_argument);
    CHECK_THROWS_AS(plateau_value(c3, 6), std::invalid_argument);
}

TEST_CASE("otoc_trace validates its time grid") {
    std::vector<std::vector<GateOp>> steps(3);
    std::vector<size_t> decreasing = {2, 1};
    CHECK_THROWS_AS(otoc_trace(steps, {}, label_from("000"), decreasing), std::invalid_argument);
    std::vector<size_t> too_far = {5};
    CHECK_THROWS_AS(otoc_trace(steps, {}, label_from("000"), too_far), std::invalid_argument);
}
