#include "supercliff/entropy.h"

#include <algorithm>
#include <cstring>

#include "supercliff/gf2.h"

namespace supercliff {

Region Region::prefix(size_t n_a) {
    Region r;
    r.sites.resize(n_a);
    for (size_t i = 0; i < n_a; i++) {
        r.sites[i] = static_cast<uint32_t>(i);
    }
    return r;
}

void Region::validate(size_t n_qubits) const {
    if (sites.empty() || sites.size() >= n_qubits) {
        throw std::invalid_argument("region must be a nonempty strict subset of the qubits");
    }
    if (!std::is_sorted(sites.begin(), sites.end()) ||
        std::adjacent_find(sites.begin(), sites.end()) != sites.end()) {
        throw std::invalid_argument("region sites must be sorted and distinct");
    }
    if (sites.back() >= n_qubits) {
        throw std::invalid_argument("region site index out of range");
    }
}

namespace {

// The x/z column slices of the tableau are exactly the site-component rows of
// the 2N x N stabilizer matrix, so the scratch submatrix is a row copy.
int rank_of_site_rows(const Tableau &t, const std::vector<uint32_t> &sites) {
    size_t n = t.n_qubits();
    gf2::BitMatrix m(2 * sites.size(), n);
    size_t wpr = m.words_per_row();
    for (size_t k = 0; k < sites.size(); k++) {
        std::memcpy(m.row(2 * k), t.x_column(sites[k]).words(), wpr * sizeof(uint64_t));
        std::memcpy(m.row(2 * k + 1), t.z_column(sites[k]).words(), wpr * sizeof(uint64_t));
    }
    return static_cast<int>(gf2::rank(m));
}

}  // namespace

int prefix_entropy(const Tableau &t, size_t n_a) {
    if (n_a < 1 || n_a >= t.n_qubits()) {
        throw std::invalid_argument("prefix size must satisfy 1 <= n_a < N");
    }
    Region r = Region::prefix(n_a);
    return rank_of_site_rows(t, r.sites) - static_cast<int>(n_a);
}

int region_entropy(const Tableau &t, const Region &a) {
    a.validate(t.n_qubits());
    return rank_of_site_rows(t, a.sites) - static_cast<int>(a.sites.size());
}

}  // namespace supercliff
