// linalg.hpp — dense complex linear algebra for small Hermitian matrices:
// cyclic Jacobi eigensolver, PSD square root, Uhlmann fidelity, entropies,
// Kronecker product, partial trace/transpose.
//
// Everything here is a pure function of its inputs; matrices are plain value
// types. Dimensions are desk scale (d <= 32), so all algorithms are the
// simple O(d^3) ones.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "common.hpp"

namespace coherence_forge {

class complex_matrix {
  public:
    complex_matrix() = default;
    complex_matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cx(0.0, 0.0)) {}

    static complex_matrix identity(std::size_t d) {
        complex_matrix m(d, d);
        for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cx& operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    const std::vector<cx>& data() const { return data_; }
    std::vector<cx>& data() { return data_; }

    complex_matrix adjoint() const {
        complex_matrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out(j, i) = std::conj((*this)(i, j));
        return out;
    }

    complex_matrix conjugate() const {
        complex_matrix out(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k)
            out.data_[k] = std::conj(data_[k]);
        return out;
    }

    cx trace() const {
        cx t(0.0, 0.0);
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const cx& z : data_) s += std::norm(z);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const cx& z : data_) m = std::max(m, std::abs(z));
        return m;
    }

    // max |M - M^dagger| over entries; 0 for exactly Hermitian input
    double hermiticity_defect() const {
        double m = 0.0;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i; j < cols_; ++j)
                m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return m;
    }

    complex_matrix& operator+=(const complex_matrix& o) {
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    complex_matrix& operator-=(const complex_matrix& o) {
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    complex_matrix& operator*=(cx s) {
        for (cx& z : data_) z *= s;
        return *this;
    }

    friend complex_matrix operator+(complex_matrix a, const complex_matrix& b) {
        return a += b;
    }
    friend complex_matrix operator-(complex_matrix a, const complex_matrix& b) {
        return a -= b;
    }
    friend complex_matrix operator*(complex_matrix a, cx s) { return a *= s; }
    friend complex_matrix operator*(cx s, complex_matrix a) { return a *= s; }

    friend complex_matrix operator*(const complex_matrix& a, const complex_matrix& b) {
        if (a.cols_ != b.rows_)
            throw dimension_mismatch_error("matrix product: inner dimensions differ");
        complex_matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cx aik = a(i, k);
                if (aik == cx(0.0, 0.0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
            }
        }
        return out;
    }

    // (M + M^dagger)/2; removes hermiticity drift accumulated by products
    complex_matrix hermitized() const {
        complex_matrix out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
        return out;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cx> data_;
};

// y = M x
inline std::vector<cx> apply_matrix(const complex_matrix& m, const std::vector<cx>& x) {
    if (m.cols() != x.size())
        throw dimension_mismatch_error("apply_matrix: size mismatch");
    std::vector<cx> y(m.rows(), cx(0.0, 0.0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) y[i] += m(i, j) * x[j];
    return y;
}

inline complex_matrix outer_product(const std::vector<cx>& u, const std::vector<cx>& v) {
    complex_matrix out(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out(i, j) = u[i] * std::conj(v[j]);
    return out;
}

inline complex_matrix diagonal_matrix(const std::vector<double>& d) {
    complex_matrix out(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) out(i, i) = d[i];
    return out;
}

struct eig_decomposition {
    std::vector<double> eigenvalues;  // ascending
    complex_matrix eigenvectors;      // orthonormal columns, same order
};

// Hermitian eigendecomposition by cyclic Jacobi rotations. Each rotation
// zeroes one off-diagonal pair through a phased plane rotation; off-diagonal
// mass decreases monotonically and the iteration stops once it falls below
// 1e-14 relative to the matrix scale.
inline eig_decomposition hermitian_eig(const complex_matrix& m,
                                       double tol = tol::validation) {
    if (!m.is_square())
        throw dimension_mismatch_error("hermitian_eig: matrix not square");
    const std::size_t d = m.rows();
    const double defect = m.hermiticity_defect();
    if (defect > tol) {
        std::ostringstream os;
        os << "hermitian_eig: asymmetry " << defect << " exceeds tolerance " << tol;
        throw not_hermitian_error(os.str());
    }

    complex_matrix a = m.hermitized();
    complex_matrix v = complex_matrix::identity(d);

    const double scale = std::max(1.0, a.frobenius_norm());
    const double stop = 1e-14 * scale;
    const double skip = stop / (2.0 * static_cast<double>(std::max<std::size_t>(d, 2)));
    const int max_sweeps = 60;

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t p = 0; p < d; ++p)
            for (std::size_t q = p + 1; q < d; ++q) s += 2.0 * std::norm(a(p, q));
        return std::sqrt(s);
    };

    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (off_norm() <= stop) break;
        for (std::size_t p = 0; p + 1 < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                const cx beta = a(p, q);
                const double ab = std::abs(beta);
                if (ab <= skip) continue;

                // phase makes the 2x2 pivot block real symmetric
                const cx phase = beta / ab;
                const double alpha = a(p, p).real();
                const double gamma = a(q, q).real();
                const double tau = (gamma - alpha) / (2.0 * ab);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cx jp = phase * c;   // J(p,p)
                const cx jq = phase * s;   // J(p,q)

                // A <- J^dagger A J, V <- V J  (J differs from identity on p,q only)
                for (std::size_t k = 0; k < d; ++k) {
                    const cx akp = a(k, p);
                    const cx akq = a(k, q);
                    a(k, p) = akp * jp - akq * s;
                    a(k, q) = akp * jq + akq * c;
                }
                for (std::size_t k = 0; k < d; ++k) {
                    const cx apk = a(p, k);
                    const cx aqk = a(q, k);
                    a(p, k) = std::conj(jp) * apk - s * aqk;
                    a(q, k) = std::conj(jq) * apk + c * aqk;
                }
                for (std::size_t k = 0; k < d; ++k) {
                    const cx vkp = v(k, p);
                    const cx vkq = v(k, q);
                    v(k, p) = vkp * jp - vkq * s;
                    v(k, q) = vkp * jq + vkq * c;
                }
                a(p, q) = cx(0.0, 0.0);
                a(q, p) = cx(0.0, 0.0);
            }
        }
    }
    if (sweep == max_sweeps && off_norm() > stop)
        throw no_convergence_error("hermitian_eig: Jacobi sweep budget exhausted");

    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    eig_decomposition out;
    out.eigenvalues.resize(d);
    out.eigenvectors = complex_matrix(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        out.eigenvalues[j] = a(order[j], order[j]).real();
        for (std::size_t i = 0; i < d; ++i) out.eigenvectors(i, j) = v(i, order[j]);
    }
    return out;
}

// V f(diag) V^dagger for a scalar function applied to the spectrum
inline complex_matrix spectral_map(const eig_decomposition& e,
                                   const std::vector<double>& mapped) {
    const std::size_t d = e.eigenvalues.size();
    complex_matrix out(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            cx acc(0.0, 0.0);
            for (std::size_t k = 0; k < d; ++k)
                acc += e.eigenvectors(i, k) * mapped[k] * std::conj(e.eigenvectors(j, k));
            out(i, j) = acc;
        }
    }
    return out;
}

// Principal square root of a Hermitian PSD matrix. Eigenvalues in [-tol, 0)
// are treated as exact zeros; more negative input raises not_psd_error.
inline complex_matrix matrix_sqrt_psd(const complex_matrix& m,
                                      double tol = tol::validation) {
    const eig_decomposition e = hermitian_eig(m, tol);
    std::vector<double> roots(e.eigenvalues.size());
    for (std::size_t k = 0; k < e.eigenvalues.size(); ++k) {
        const double lam = e.eigenvalues[k];
        if (lam < -tol) {
            std::ostringstream os;
            os << "matrix_sqrt_psd: eigenvalue " << lam << " below -" << tol;
            throw not_psd_error(os.str());
        }
        roots[k] = lam > 0.0 ? std::sqrt(lam) : 0.0;
    }
    return spectral_map(e, roots).hermitized();
}

// Uhlmann fidelity given a precomputed sqrt(rho); the hot path for the
// simplex optimizers, which evaluate many sigmas against one rho.
inline double fidelity_with_sqrt(const complex_matrix& sqrt_rho,
                                 const complex_matrix& sigma) {
    const complex_matrix inner = (sqrt_rho * sigma * sqrt_rho).hermitized();
    const eig_decomposition e = hermitian_eig(inner);
    double root_sum = 0.0;
    for (double lam : e.eigenvalues)
        if (lam > 0.0) root_sum += std::sqrt(lam);
    return root_sum * root_sum;
}

// F(rho, sigma) = (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2
inline double fidelity(const complex_matrix& rho, const complex_matrix& sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
        throw dimension_mismatch_error("fidelity: dimension mismatch");
    return fidelity_with_sqrt(matrix_sqrt_psd(rho), sigma);
}

// Base-2 von Neumann entropy; 0 log 0 = 0, eigenvalues in [-1e-10, 0) clipped.
inline double von_neumann_entropy(const complex_matrix& rho) {
    const eig_decomposition e = hermitian_eig(rho);
    double h = 0.0;
    for (double lam : e.eigenvalues) {
        if (lam < -tol::validation) {
            std::ostringstream os;
            os << "von_neumann_entropy: eigenvalue " << lam << " below -1e-10";
            throw not_psd_error(os.str());
        }
        if (lam > 0.0) h -= lam * std::log2(lam);
    }
    return std::max(0.0, h);
}

// Quantum relative entropy H(rho||sigma) = Tr[rho log2 rho] - Tr[rho log2 sigma].
// Returns +infinity exactly when rho has weight above the support threshold in
// the kernel of sigma.
inline double relative_entropy(const complex_matrix& rho, const complex_matrix& sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
        throw dimension_mismatch_error("relative_entropy: dimension mismatch");
    const eig_decomposition er = hermitian_eig(rho);
    const eig_decomposition es = hermitian_eig(sigma);
    const std::size_t d = rho.rows();

    double tr_rho_log_rho = 0.0;
    for (double lam : er.eigenvalues)
        if (lam > 0.0) tr_rho_log_rho += lam * std::log2(lam);

    double tr_rho_log_sigma = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        const double mu = es.eigenvalues[j];
        // weight of rho along sigma's j-th eigenvector
        cx quad(0.0, 0.0);
        for (std::size_t i = 0; i < d; ++i) {
            cx row(0.0, 0.0);
            for (std::size_t k = 0; k < d; ++k) row += rho(i, k) * es.eigenvectors(k, j);
            quad += std::conj(es.eigenvectors(i, j)) * row;
        }
        const double w = std::max(0.0, quad.real());
        if (mu < tol::support) {
            if (w > tol::support) return std::numeric_limits<double>::infinity();
            continue;
        }
        tr_rho_log_sigma += w * std::log2(mu);
    }
    return std::max(0.0, tr_rho_log_rho - tr_rho_log_sigma);
}

inline complex_matrix kron(const complex_matrix& a, const complex_matrix& b) {
    complex_matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ia = 0; ia < a.rows(); ++ia)
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            const cx f = a(ia, ja);
            if (f == cx(0.0, 0.0)) continue;
            for (std::size_t ib = 0; ib < b.rows(); ++ib)
                for (std::size_t jb = 0; jb < b.cols(); ++jb)
                    out(ia * b.rows() + ib, ja * b.cols() + jb) = f * b(ib, jb);
        }
    return out;
}

enum class subsystem { system, ancilla };

// Partial trace of a (d_s * d_a)-dimensional matrix in the product basis
// |s> tensor |a|, composite index s * d_a + a.
inline complex_matrix partial_trace(const complex_matrix& m, std::size_t d_s,
                                    std::size_t d_a, subsystem keep) {
    if (!m.is_square() || m.rows() != d_s * d_a)
        throw dimension_mismatch_error("partial_trace: dims inconsistent with matrix");
    if (keep == subsystem::system) {
        complex_matrix out(d_s, d_s);
        for (std::size_t i = 0; i < d_s; ++i)
            for (std::size_t j = 0; j < d_s; ++j)
                for (std::size_t a = 0; a < d_a; ++a)
                    out(i, j) += m(i * d_a + a, j * d_a + a);
        return out;
    }
    complex_matrix out(d_a, d_a);
    for (std::size_t a = 0; a < d_a; ++a)
        for (std::size_t b = 0; b < d_a; ++b)
            for (std::size_t s = 0; s < d_s; ++s)
                out(a, b) += m(s * d_a + a, s * d_a + b);
    return out;
}

// Partial transpose over the chosen subsystem (same index convention).
inline complex_matrix partial_transpose(const complex_matrix& m, std::size_t d_s,
                                        std::size_t d_a, subsystem which) {
    if (!m.is_square() || m.rows() != d_s * d_a)
        throw dimension_mismatch_error("partial_transpose: dims inconsistent with matrix");
    complex_matrix out(m.rows(), m.cols());
    for (std::size_t s = 0; s < d_s; ++s)
        for (std::size_t a = 0; a < d_a; ++a)
            for (std::size_t t = 0; t < d_s; ++t)
                for (std::size_t b = 0; b < d_a; ++b) {
                    if (which == subsystem::ancilla)
                        out(s * d_a + a, t * d_a + b) = m(s * d_a + b, t * d_a + a);
                    else
                        out(s * d_a + a, t * d_a + b) = m(t * d_a + a, s * d_a + b);
                }
    return out;
}

}  // namespace coherence_forge
