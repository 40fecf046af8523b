#include <doctest.h>

#include "supercliff/oracle.h"
#include "supercliff/otoc.h"

using namespace supercliff;
using oracle::DenseSuperState;

namespace {

BasisOperatorLabel label_from(const std::string &bits) {
    return {BitVec::from_string(bits)};
}

}  // namespace

TEST_CASE("super-T on |0> gives (|0> - |1>)/sqrt(2)") {
    DenseSuperState s = DenseSuperState::computational(label_from("0"));
    oracle::dense_apply(s, GateOp::t(0));
    CHECK(std::abs(s.amps[0] - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(s.amps[1] + 1.0 / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("super-SWAP exchanges |01> and |10>") {
    DenseSuperState s = DenseSuperState::computational(label_from("01"));
    oracle::dense_apply(s, GateOp::swap(0, 1));
    CHECK(std::abs(s.amps[2] - 1.0) < 1e-12);
}

TEST_CASE("super-C3 maps |100> to -|111>") {
    DenseSuperState s = DenseSuperState::computational(label_from("100"));
    oracle::dense_apply(s, GateOp::c3(0, 1, 2));
    CHECK(std::abs(s.amps[7] + 1.0) < 1e-12);
    CHECK(s.norm_error() < 1e-12);
}

TEST_CASE("dense entropy of product and Bell-like states") {
    DenseSuperState product = DenseSuperState::computational(label_from("01"));
    CHECK(oracle::dense_entropy(product, Region::prefix(1)) == doctest::Approx(0.0).epsilon(1e-9));

    DenseSuperState bell = DenseSuperState::computational(label_from("00"));
    bell.amps[0] = bell.amps[3] = 1.0 / std::sqrt(2.0);
    CHECK(oracle::dense_entropy(bell, Region::prefix(1)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("dense entropy after T then C3 is one bit") {
    DenseSuperState s = DenseSuperState::computational(label_from("000"));
    oracle::dense_apply(s, GateOp::t(0));
    oracle::dense_apply(s, GateOp::c3(0, 1, 2));
    CHECK(oracle::dense_entropy(s, Region::prefix(1)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("physical T conjugates X to (X - Y)/sqrt(2)") {
    dense::Mat w = oracle::conjugation_oracle(label_from("0"), std::vector<GateOp>{GateOp::t(0)});
    dense::Mat x = dense::xy_string_matrix(BitVec::from_string("0"));
    dense::Mat y = dense::xy_string_matrix(BitVec::from_string("1"));
    CHECK((w - (x - y) / std::sqrt(2.0)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("physical C3 conjugation of X1X2X3 matches the super-space action") {
    // Conjugating the all-X string by the CX/CZ/T^6 product leaves it fixed,
    // exactly like the controlled-YY action on |000>.
    dense::Mat w =
        oracle::conjugation_oracle(label_from("000"), std::vector<GateOp>{GateOp::c3(0, 1, 2)});
    dense::Vec amps = oracle::project_onto_xy_basis(w);
    DenseSuperState s = DenseSuperState::computational(label_from("000"));
    oracle::dense_apply(s, GateOp::c3(0, 1, 2));
    CHECK((amps - s.amps).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(amps[0] - 1.0) < 1e-12);
}

TEST_CASE("trace formula on a random circuit matches the tableau correlator") {
    Rng rng(41);
    for (int trial = 0; trial < 10; trial++) {
        std::vector<GateOp> circuit = oracle::random_circuit(4, 25, rng);
        std::vector<GateOp> v = {GateOp::c3(0, 1, 2)};
        BasisOperatorLabel w0 = oracle::random_label(4, rng);

        dense::Mat w_t = oracle::conjugation_oracle(w0, circuit);
        double f_dense = oracle::otoc_trace_formula(w_t, dense::circuit_unitary(v, 4));

        Tableau echo = echo_tableau(circuit, v, w0);
        double f_tab = inner_product_with_basis(echo, BasisOperatorLabel::all_x(4)).as_double();
        CHECK(f_tab == doctest::Approx(f_dense).epsilon(1e-10));
    }
}

TEST_CASE("xy-string projection is the basis unit vector") {
    BitVec bits = BitVec::from_string("101");
    dense::Vec amps = oracle::project_onto_xy_basis(dense::xy_string_matrix(bits));
    for (uint64_t b = 0; b < 8; b++) {
        CHECK(std::abs(amps[b] - (b == 5 ? 1.0 : 0.0)) < 1e-12);
    }
}

TEST_CASE("a corrupted generator sign is caught by the stabilization predicate") {
    Rng rng(42);
    BasisOperatorLabel label = oracle::random_label(4, rng);
    Tableau t = new_computational(label);
    DenseSuperState psi = DenseSuperState::computational(label);
    for (const GateOp &g : oracle::random_circuit(4, 20, rng)) {
        t.apply_gate(g);
        oracle::dense_apply(psi, g);
    }
    for (size_t a = 0; a < 4; a++) {
        CHECK(oracle::stabilizes(psi, t.generator(a)));
    }
    t.flip_sign(2);
    CHECK_FALSE(oracle::stabilizes(psi, t.generator(2)));
}

TEST_CASE("the check drivers pass on small sizes") {
    CHECK(oracle::check_tableau_stabilization(5, 5, 30, 7).passed());
    CHECK(oracle::check_conjugation_equivalence(4, 5, 30, 7).passed());
    CHECK(oracle::check_entropy_agreement(5, 5, 30, 7).passed());
    CHECK(oracle::check_otoc_agreement(4, 6, 7).passed());
}

TEST_CASE("size ceilings are enforced") {
    CHECK_THROWS_AS(DenseSuperState::computational(BasisOperatorLabel::all_x(13)),
                    std::invalid_argument);
    CHECK_THROWS_AS(oracle::conjugation_oracle(BasisOperatorLabel::all_x(7), {}),
                    std::invalid_argument);
}
