// states.hpp — density matrices, pure states, bipartite tagging, the
// reference-basis incoherence predicates, and seeded random state ensembles.
//
// The reference basis is always the computational basis; callers working in
// another basis rotate into it before constructing states here.
#pragma once

#include <random>
#include <sstream>

#include "linalg.hpp"

namespace coherence_forge {

class pure_state {
  public:
    pure_state(std::size_t dim, std::vector<cx> amplitudes)
        : dim_(dim), amplitudes_(std::move(amplitudes)) {
        if (dim_ == 0) throw validation_error("pure_state: dim must be positive");
        if (amplitudes_.size() != dim_)
            throw validation_error("pure_state: amplitude count differs from dim");
        double norm_sq = 0.0;
        for (const cx& c : amplitudes_) norm_sq += std::norm(c);
        if (std::abs(norm_sq - 1.0) > 1e-12) {
            std::ostringstream os;
            os << "pure_state: squared norm " << norm_sq << " not 1 within 1e-12";
            throw validation_error(os.str());
        }
    }

    std::size_t dim() const { return dim_; }
    const std::vector<cx>& amplitudes() const { return amplitudes_; }

  private:
    std::size_t dim_;
    std::vector<cx> amplitudes_;
};

class density_matrix {
  public:
    explicit density_matrix(complex_matrix m) : matrix_(std::move(m)) {
        if (!matrix_.is_square() || matrix_.rows() == 0)
            throw validation_error("density_matrix: matrix must be square and nonempty");
        const double defect = matrix_.hermiticity_defect();
        if (defect > tol::validation) {
            std::ostringstream os;
            os << "density_matrix: hermiticity defect " << defect << " exceeds 1e-10";
            throw validation_error(os.str());
        }
        const cx tr = matrix_.trace();
        if (std::abs(tr - cx(1.0, 0.0)) > tol::validation) {
            std::ostringstream os;
            os << "density_matrix: trace " << tr.real() << " not 1 within 1e-10";
            throw validation_error(os.str());
        }
        const eig_decomposition e = hermitian_eig(matrix_);
        if (e.eigenvalues.front() < -tol::validation) {
            std::ostringstream os;
            os << "density_matrix: eigenvalue " << e.eigenvalues.front()
               << " below -1e-10";
            throw validation_error(os.str());
        }
    }

    static density_matrix from_pure(const pure_state& psi) {
        return density_matrix(outer_product(psi.amplitudes(), psi.amplitudes()));
    }

    std::size_t dim() const { return matrix_.rows(); }
    const complex_matrix& matrix() const { return matrix_; }
    const cx& operator()(std::size_t i, std::size_t j) const { return matrix_(i, j); }

  private:
    complex_matrix matrix_;
};

class bipartite_state {
  public:
    bipartite_state(std::size_t d_s, std::size_t d_a, density_matrix state)
        : d_s_(d_s), d_a_(d_a), state_(std::move(state)) {
        if (d_s_ == 0 || d_a_ == 0)
            throw validation_error("bipartite_state: subsystem dims must be positive");
        if (d_s_ * d_a_ != state_.dim())
            throw validation_error(
                "bipartite_state: d_s * d_a differs from state dimension");
    }

    std::size_t dim_system() const { return d_s_; }
    std::size_t dim_ancilla() const { return d_a_; }
    const density_matrix& state() const { return state_; }
    const complex_matrix& matrix() const { return state_.matrix(); }

    density_matrix marginal(subsystem keep) const {
        return density_matrix(partial_trace(state_.matrix(), d_s_, d_a_, keep));
    }

  private:
    std::size_t d_s_;
    std::size_t d_a_;
    density_matrix state_;
};

// Projection onto the diagonal in the reference basis.
inline density_matrix dephase(const density_matrix& rho) {
    complex_matrix out(rho.dim(), rho.dim());
    for (std::size_t i = 0; i < rho.dim(); ++i) out(i, i) = rho(i, i).real();
    return density_matrix(out);
}

inline bool is_incoherent(const density_matrix& rho, double tol) {
    for (std::size_t i = 0; i < rho.dim(); ++i)
        for (std::size_t j = 0; j < rho.dim(); ++j)
            if (i != j && std::abs(rho(i, j)) > tol) return false;
    return true;
}

// Diagonality in the product reference basis; equivalent to membership in the
// convex hull of products of incoherent states.
inline bool is_bipartite_incoherent(const bipartite_state& rho, double tol) {
    return is_incoherent(rho.state(), tol);
}

inline pure_state maximally_coherent(std::size_t d) {
    if (d == 0) throw validation_error("maximally_coherent: dim must be positive");
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    return pure_state(d, std::vector<cx>(d, cx(amp, 0.0)));
}

namespace detail {
inline cx standard_complex_gaussian(std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double re = normal(rng);
    const double im = normal(rng);
    return cx(re, im);
}
}  // namespace detail

// Haar-distributed pure state: normalized vector of iid standard complex
// Gaussians. Deterministic per seed.
inline pure_state random_pure(std::size_t d, std::uint64_t seed) {
    if (d == 0) throw validation_error("random_pure: dim must be positive");
    std::mt19937_64 rng(seed);
    std::vector<cx> amps(d);
    double norm_sq = 0.0;
    for (cx& a : amps) {
        a = detail::standard_complex_gaussian(rng);
        norm_sq += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (cx& a : amps) a *= inv;
    return pure_state(d, std::move(amps));
}

// Hilbert-Schmidt-induced ensemble (Ginibre construction): G G^dagger
// normalized to unit trace for a d x rank complex Gaussian G.
inline density_matrix random_mixed(std::size_t d, std::size_t rank,
                                   std::uint64_t seed) {
    if (d == 0) throw validation_error("random_mixed: dim must be positive");
    if (rank == 0 || rank > d)
        throw validation_error("random_mixed: rank must be in [1, dim]");
    std::mt19937_64 rng(seed);
    complex_matrix g(d, rank);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < rank; ++j)
            g(i, j) = detail::standard_complex_gaussian(rng);
    complex_matrix rho = (g * g.adjoint()).hermitized();
    const double tr = rho.trace().real();
    rho *= cx(1.0 / tr, 0.0);
    return density_matrix(rho);
}

}  // namespace coherence_forge
