#include "supercliff/tableau.h"

#include <nlohmann/json.hpp>

#include "supercliff/gf2.h"

namespace supercliff {

GateOp GateOp::inverse() const {
    GateOp g = *this;
    if (kind == GateKind::T) {
        g.kind = GateKind::TInv;
    } else if (kind == GateKind::TInv) {
        g.kind = GateKind::T;
    }
    return g;
}

void GateOp::validate(size_t n_qubits) const {
    size_t a = arity();
    for (size_t i = 0; i < a; i++) {
        if (qubits[i] >= n_qubits) {
            throw std::invalid_argument(
                "gate " + to_string() + " has qubit index out of range for n=" +
                std::to_string(n_qubits));
        }
        for (size_t j = i + 1; j < a; j++) {
            if (qubits[i] == qubits[j]) {
                throw std::invalid_argument("gate " + to_string() + " has repeated qubit indices");
            }
        }
    }
}

std::string GateOp::to_string() const {
    switch (kind) {
        case GateKind::T:
            return "T(" + std::to_string(qubits[0]) + ")";
        case GateKind::TInv:
            return "Tinv(" + std::to_string(qubits[0]) + ")";
        case GateKind::Swap:
            return "SWAP(" + std::to_string(qubits[0]) + "," + std::to_string(qubits[1]) + ")";
        case GateKind::C3:
            return "C3(" + std::to_string(qubits[0]) + ";" + std::to_string(qubits[1]) + "," +
                   std::to_string(qubits[2]) + ")";
    }
    return "?";
}

Tableau::Tableau(const BasisOperatorLabel &label) {
    n_ = label.n_sites();
    if (n_ == 0) {
        throw std::invalid_argument("tableau needs at least one qubit");
    }
    x_cols_.assign(n_, BitVec(n_));
    z_cols_.reserve(n_);
    for (size_t i = 0; i < n_; i++) {
        z_cols_.push_back(BitVec::unit(n_, i));
    }
    signs_ = label.bits;
}

Tableau new_computational(const BasisOperatorLabel &label) {
    return Tableau(label);
}

SuperPauli Tableau::generator(size_t alpha) const {
    BitVec x(n_), z(n_);
    for (size_t i = 0; i < n_; i++) {
        x.set(i, x_cols_[i].get(alpha));
        z.set(i, z_cols_[i].get(alpha));
    }
    return SuperPauli(signs_.get(alpha), std::move(x), std::move(z));
}

void Tableau::apply_gate(const GateOp &g) {
    g.validate(n_);
    // All rules read pre-update column values; each case is one simultaneous
    // substitution across the N generators.
    switch (g.kind) {
        case GateKind::T: {
            // X_i -> Z_i, Z_i -> -X_i: swap columns, flip sign where the old
            // exponents were (x, z) = (0, 1).
            BitVec &x = x_cols_[g.qubits[0]];
            BitVec &z = z_cols_[g.qubits[0]];
            for (size_t k = 0; k < signs_.word_count(); k++) {
                signs_.words()[k] ^= ~x.words()[k] & z.words()[k];
            }
            std::swap(x, z);
            break;
        }
        case GateKind::TInv: {
            // Z_i -> X_i, X_i -> -Z_i: sign flips where old (x, z) = (1, 0).
            BitVec &x = x_cols_[g.qubits[0]];
            BitVec &z = z_cols_[g.qubits[0]];
            for (size_t k = 0; k < signs_.word_count(); k++) {
                signs_.words()[k] ^= x.words()[k] & ~z.words()[k];
            }
            std::swap(x, z);
            break;
        }
        case GateKind::Swap: {
            std::swap(x_cols_[g.qubits[0]], x_cols_[g.qubits[1]]);
            std::swap(z_cols_[g.qubits[0]], z_cols_[g.qubits[1]]);
            break;
        }
        case GateKind::C3: {
            BitVec &xa = x_cols_[g.qubits[0]];
            BitVec &za = z_cols_[g.qubits[0]];
            BitVec &xb = x_cols_[g.qubits[1]];
            BitVec &zb = z_cols_[g.qubits[1]];
            BitVec &xc = x_cols_[g.qubits[2]];
            BitVec &zc = z_cols_[g.qubits[2]];
            for (size_t k = 0; k < signs_.word_count(); k++) {
                uint64_t vax = xa.words()[k];
                // sign += v_ax * (1 + v_bx + v_cx), all old values
                signs_.words()[k] ^= vax & ~(xb.words()[k] ^ xc.words()[k]);
                za.words()[k] ^= xb.words()[k] ^ zb.words()[k] ^ xc.words()[k] ^ zc.words()[k];
                xb.words()[k] ^= vax;
                zb.words()[k] ^= vax;
                xc.words()[k] ^= vax;
                zc.words()[k] ^= vax;
            }
            break;
        }
    }
}

void Tableau::apply_sequence(std::span<const GateOp> gates, bool reversed_inverse) {
    if (reversed_inverse) {
        for (size_t i = gates.size(); i-- > 0;) {
            apply_gate(gates[i].inverse());
        }
    } else {
        for (const GateOp &g : gates) {
            apply_gate(g);
        }
    }
}

bool Tableau::is_valid() const {
    std::vector<SuperPauli> gens;
    gens.reserve(n_);
    for (size_t a = 0; a < n_; a++) {
        gens.push_back(generator(a));
    }
    for (size_t a = 0; a < n_; a++) {
        for (size_t b = a + 1; b < n_; b++) {
            if (!symplectic_commutes(gens[a], gens[b])) {
                return false;
            }
        }
    }
    gf2::BitMatrix m(n_, 2 * n_);
    for (size_t a = 0; a < n_; a++) {
        m.blit_row(a, 0, gens[a].x_bits);
        m.blit_row(a, n_, gens[a].z_bits);
    }
    return gf2::rank(m) == n_;
}

std::string Tableau::to_json() const {
    nlohmann::json gens = nlohmann::json::array();
    for (size_t a = 0; a < n_; a++) {
        SuperPauli g = generator(a);
        gens.push_back({{"x", g.x_bits.to_string()}, {"z", g.z_bits.to_string()}});
    }
    nlohmann::json j{
        {"format", "supercliff-tableau"},
        {"version", 1},
        {"n", n_},
        {"signs", signs_.to_string()},
        {"generators", gens},
    };
    return j.dump();
}

Tableau Tableau::from_json(const std::string &text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.value("format", "") != "supercliff-tableau" || j.value("version", 0) != 1) {
        throw std::invalid_argument("unrecognized tableau checkpoint format");
    }
    size_t n = j.at("n").get<size_t>();
    Tableau t;
    t.n_ = n;
    t.signs_ = BitVec::from_string(j.at("signs").get<std::string>());
    t.x_cols_.assign(n, BitVec(n));
    t.z_cols_.assign(n, BitVec(n));
    const auto &gens = j.at("generators");
    if (t.signs_.n_bits() != n || gens.size() != n) {
        throw std::invalid_argument("tableau checkpoint has inconsistent sizes");
    }
    for (size_t a = 0; a < n; a++) {
        BitVec x = BitVec::from_string(gens[a].at("x").get<std::string>());
        BitVec z = BitVec::from_string(gens[a].at("z").get<std::string>());
        if (x.n_bits() != n || z.n_bits() != n) {
            throw std::invalid_argument("tableau checkpoint has inconsistent sizes");
        }
        for (size_t i = 0; i < n; i++) {
            t.x_cols_[i].set(a, x.get(i));
            t.z_cols_[i].set(a, z.get(i));
        }
    }
    return t;
}

}  // namespace supercliff
