// entanglement.hpp — entanglement quantifiers at desk scale: Wootters
// concurrence and geometric entanglement for two qubits, the hashing lower
// bound, maximally correlated embeddings with certified exact values, and PPT
// separability witnessing.
#pragma once

#include "coherence.hpp"

namespace coherence_forge {

// State of the form sum_ij rho_ij |ii><jj| induced by a system state rho.
class maximally_correlated_state {
  public:
    explicit maximally_correlated_state(density_matrix coefficients)
        : coefficients_(std::move(coefficients)),
          bipartite_(make_bipartite(coefficients_)) {}

    std::size_t dim() const { return coefficients_.dim(); }
    const density_matrix& coefficients() const { return coefficients_; }
    const bipartite_state& bipartite() const { return bipartite_; }

    // composite indices of the |ii> diagonal
    std::vector<std::size_t> correlated_support() const {
        std::vector<std::size_t> idx(dim());
        for (std::size_t i = 0; i < dim(); ++i) idx[i] = i * dim() + i;
        return idx;
    }

  private:
    static bipartite_state make_bipartite(const density_matrix& rho) {
        const std::size_t d = rho.dim();
        complex_matrix m(d * d, d * d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                m(i * d + i, j * d + j) = rho(i, j);
        return bipartite_state(d, d, density_matrix(m));
    }

    density_matrix coefficients_;
    bipartite_state bipartite_;
};

inline maximally_correlated_state mc_embed(const density_matrix& rho) {
    return maximally_correlated_state(rho);
}

namespace detail {
inline complex_matrix spin_flip_two_qubit() {
    // Y tensor Y in the reference basis
    complex_matrix m(4, 4);
    m(0, 3) = -1.0;
    m(1, 2) = 1.0;
    m(2, 1) = 1.0;
    m(3, 0) = -1.0;
    return m;
}
}  // namespace detail

// Wootters concurrence: descending square roots of the spectrum of
// rho (Y tensor Y) rho* (Y tensor Y), evaluated through the Hermitian form
// sqrt(rho) (Y tensor Y) rho* (Y tensor Y) sqrt(rho).
inline double concurrence_two_qubit(const bipartite_state& rho) {
    if (rho.dim_system() != 2 || rho.dim_ancilla() != 2)
        throw dimension_mismatch_error("concurrence_two_qubit: state is not two qubits");
    const complex_matrix& m = rho.matrix();
    const complex_matrix flip = detail::spin_flip_two_qubit();
    const complex_matrix s = matrix_sqrt_psd(m);
    const complex_matrix t = (s * flip * m.conjugate() * flip * s).hermitized();
    eig_decomposition e = hermitian_eig(t);
    std::vector<double> lambdas(4);
    for (std::size_t k = 0; k < 4; ++k)
        lambdas[k] = std::sqrt(std::max(0.0, e.eigenvalues[3 - k]));  // descending
    const double c = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
    return std::min(1.0, std::max(0.0, c));
}

// E_g of a two-qubit state in closed form over the concurrence.
inline double e_geometric_two_qubit(const bipartite_state& rho) {
    const double c = concurrence_two_qubit(rho);
    return 0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - c * c)));
}

// Coherent-information lower bound H(rho^S) - H(rho^SA) on the distillable
// (hence relative-entropy) entanglement. May be negative; the bound is then
// vacuous but still reported.
inline double hashing_lower_bound(const bipartite_state& rho) {
    return von_neumann_entropy(rho.marginal(subsystem::system).matrix()) -
           von_neumann_entropy(rho.matrix());
}

// Exact relative entropy of entanglement of a maximally correlated state.
// The hashing bound from below and H(rho_mc || sum_i rho_ii |ii><ii|) from
// above pinch the value H(rho_d) - H(rho); the sandwich is recomputed
// numerically and certified to close within 1e-9.
inline double e_rel_entropy_mc(const maximally_correlated_state& mc) {
    const density_matrix& rho = mc.coefficients();
    const double value = c_rel_entropy(rho);

    const double lower = hashing_lower_bound(mc.bipartite());

    const std::size_t d = rho.dim();
    complex_matrix closest(d * d, d * d);
    for (std::size_t i = 0; i < d; ++i)
        closest(i * d + i, i * d + i) = rho(i, i).real();
    const double upper = relative_entropy(mc.bipartite().matrix(), closest);

    const double gap = upper - lower;
    if (!(gap <= 1e-9) || std::abs(upper - value) > 1e-9) {
        std::ostringstream os;
        os << "e_rel_entropy_mc: sandwich failed to certify (lower " << lower
           << ", value " << value << ", upper " << upper << ")";
        throw certification_failed_error(os.str());
    }
    return value;
}

// E_g of a maximally correlated state: 1 - max fidelity against separable
// maximally correlated states sum_i q_i |ii><ii|, a simplex optimization in
// the full d^2-dimensional space.
inline double e_geometric_mc(const maximally_correlated_state& mc,
                             const optimizer_options& opts = {}) {
    std::vector<double> warm(mc.dim());
    for (std::size_t i = 0; i < mc.dim(); ++i) warm[i] = mc.coefficients()(i, i).real();
    const simplex_opt_result res = maximize_fidelity_over_diagonal(
        mc.bipartite().matrix(), mc.correlated_support(), warm, opts);
    if (res.converged_starts == 0)
        throw no_convergence_error("e_geometric_mc: no start reached stationarity");
    return std::max(0.0, 1.0 - res.value);
}

// Positive partial transpose test (necessary for separability in any
// dimension).
inline bool ppt_check(const bipartite_state& rho) {
    const complex_matrix pt = partial_transpose(
        rho.matrix(), rho.dim_system(), rho.dim_ancilla(), subsystem::ancilla);
    const eig_decomposition e = hermitian_eig(pt);
    return e.eigenvalues.front() >= -1e-10;
}

// In 2x2, 2x3 and 3x2 the PPT condition is also sufficient, so this decides
// separability; other shapes raise unsupported_dims_error (use ppt_check for
// the one-sided test there).
inline bool ppt_is_separable_small(const bipartite_state& rho) {
    const std::size_t s = rho.dim_system();
    const std::size_t a = rho.dim_ancilla();
    const bool supported = (s == 2 && a == 2) || (s == 2 && a == 3) || (s == 3 && a == 2);
    if (!supported)
        throw unsupported_dims_error(
            "ppt_is_separable_small: PPT is decisive only for 2x2, 2x3, 3x2");
    return ppt_check(rho);
}

}  // namespace coherence_forge
