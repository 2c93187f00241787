// coherence.hpp — the coherence quantifiers: l1 norm, relative entropy,
// geometric coherence (closed form for qubits, simplex optimization in
// general), and the g(F) distance family built on the same maximal fidelity.
#pragma once

#include <functional>
#include <random>

#include "report.hpp"
#include "states.hpp"

namespace coherence_forge {

// A probability vector parameterizing a diagonal incoherent state.
class simplex_point {
  public:
    simplex_point(std::size_t dim, std::vector<double> weights)
        : dim_(dim), weights_(std::move(weights)) {
        if (dim_ == 0 || weights_.size() != dim_)
            throw validation_error("simplex_point: weight count differs from dim");
        double sum = 0.0;
        for (double w : weights_) {
            if (w < 0.0) throw validation_error("simplex_point: negative weight");
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw validation_error("simplex_point: weights do not sum to 1");
    }

    // Flat Dirichlet draw: normalized iid Exp(1) coordinates.
    static simplex_point dirichlet(std::size_t dim, std::mt19937_64& rng) {
        std::exponential_distribution<double> exp1(1.0);
        std::vector<double> w(dim);
        double sum = 0.0;
        for (double& x : w) {
            x = exp1(rng);
            sum += x;
        }
        for (double& x : w) x /= sum;
        return simplex_point(dim, std::move(w));
    }

    std::size_t dim() const { return dim_; }
    const std::vector<double>& weights() const { return weights_; }

    density_matrix diagonal_state() const {
        return density_matrix(diagonal_matrix(weights_));
    }

  private:
    std::size_t dim_;
    std::vector<double> weights_;
};

// Euclidean projection onto the probability simplex (sort-based pivot).
inline std::vector<double> project_to_simplex(std::vector<double> v) {
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double running = 0.0;
    double theta = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        running += u[k];
        const double candidate = (running - 1.0) / static_cast<double>(k + 1);
        if (u[k] - candidate > 0.0) {
            theta = candidate;
            count = k + 1;
        }
    }
    (void)count;
    for (double& x : v) x = std::max(0.0, x - theta);
    return v;
}

struct optimizer_options {
    int starts = 20;        // random Dirichlet starts beside the warm start
    int max_iters = 5000;   // per start
    double tol = 1e-10;     // stop once a step improves by less than this
    std::uint64_t seed = 0;
};

struct simplex_opt_result {
    std::vector<double> weights;
    double value = 0.0;
    long iterations = 0;     // summed over starts
    int converged_starts = 0;
};

namespace detail {

// Projected gradient ascent for a concave objective on the simplex. Gradients
// are central differences with step 1e-6 (one-sided at the boundary); the
// step length backtracks until the move improves the objective. A start
// counts as converged when it reaches a point with no improving step or when
// the last improvement falls below opts.tol.
template <typename Objective>
void ascend_from(const Objective& f, std::vector<double> w, const optimizer_options& opts,
                 simplex_opt_result& best) {
    const std::size_t d = w.size();
    const double h = 1e-6;
    double fw = f(w);
    double alpha = 0.25;
    bool converged = false;

    for (int iter = 0; iter < opts.max_iters; ++iter) {
        ++best.iterations;
        std::vector<double> grad(d);
        for (std::size_t i = 0; i < d; ++i) {
            std::vector<double> probe = w;
            if (w[i] >= h) {
                probe[i] = w[i] + h;
                const double fp = f(probe);
                probe[i] = w[i] - h;
                const double fm = f(probe);
                grad[i] = (fp - fm) / (2.0 * h);
            } else {
                probe[i] = w[i] + h;
                grad[i] = (f(probe) - fw) / h;
            }
        }

        double trial_alpha = std::min(1.0, alpha * 2.0);
        bool improved = false;
        while (trial_alpha >= 1e-14) {
            std::vector<double> next = w;
            for (std::size_t i = 0; i < d; ++i) next[i] += trial_alpha * grad[i];
            next = project_to_simplex(std::move(next));
            const double fn = f(next);
            if (fn > fw) {
                const double gain = fn - fw;
                w = std::move(next);
                fw = fn;
                alpha = trial_alpha;
                improved = true;
                if (gain < opts.tol) converged = true;
                break;
            }
            trial_alpha *= 0.5;
        }
        if (!improved) {
            converged = true;  // no ascent direction of any tried length
            break;
        }
        if (converged) break;
    }

    if (converged) ++best.converged_starts;
    if (fw > best.value) {
        best.value = fw;
        best.weights = std::move(w);
    }
}

}  // namespace detail

// Maximizes a concave objective over the probability simplex with multistart
// projected gradient ascent: the provided warm start plus opts.starts flat
// Dirichlet starts.
template <typename Objective>
simplex_opt_result maximize_over_simplex(const Objective& f, std::size_t dim,
                                         const optimizer_options& opts,
                                         const std::vector<double>& warm_start) {
    simplex_opt_result best;
    best.value = -std::numeric_limits<double>::infinity();
    detail::ascend_from(f, project_to_simplex(warm_start), opts, best);
    std::mt19937_64 rng(opts.seed);
    for (int s = 0; s < opts.starts; ++s)
        detail::ascend_from(f, simplex_point::dirichlet(dim, rng).weights(), opts, best);
    return best;
}

namespace detail {

// F(rho, sigma(w)) where sigma(w) has weights w on the given diagonal support
// indices and zeros elsewhere; sqrt_rho is precomputed.
inline double fidelity_on_diagonal_support(const complex_matrix& sqrt_rho,
                                           const std::vector<std::size_t>& support,
                                           const std::vector<double>& w) {
    const std::size_t d = sqrt_rho.rows();
    complex_matrix inner(d, d);
    for (std::size_t t = 0; t < support.size(); ++t) {
        const std::size_t k = support[t];
        const double wt = w[t];
        if (wt == 0.0) continue;
        for (std::size_t i = 0; i < d; ++i) {
            const cx left = sqrt_rho(i, k) * wt;
            if (left == cx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < d; ++j) inner(i, j) += left * sqrt_rho(k, j);
        }
    }
    const eig_decomposition e = hermitian_eig(inner.hermitized());
    double root_sum = 0.0;
    for (double lam : e.eigenvalues)
        if (lam > 0.0) root_sum += std::sqrt(lam);
    return root_sum * root_sum;
}

}  // namespace detail

// Maximal fidelity between rho and states diagonal on the given support
// indices, parameterized by a simplex weight vector. Used for the geometric
// coherence (support = the whole basis) and for maximally correlated states
// (support = the |ii> diagonal). Rank-1 targets short-circuit to an exact
// vertex scan since the objective is then linear in the weights.
inline simplex_opt_result maximize_fidelity_over_diagonal(
    const complex_matrix& rho, const std::vector<std::size_t>& support,
    const std::vector<double>& warm_start, const optimizer_options& opts) {
    const eig_decomposition e = hermitian_eig(rho);
    std::vector<double> roots(e.eigenvalues.size());
    for (std::size_t k = 0; k < roots.size(); ++k)
        roots[k] = e.eigenvalues[k] > 0.0 ? std::sqrt(e.eigenvalues[k]) : 0.0;
    const complex_matrix sqrt_rho = spectral_map(e, roots).hermitized();

    const std::size_t n = support.size();
    const bool rank_one =
        e.eigenvalues.size() >= 2 && e.eigenvalues[e.eigenvalues.size() - 2] <= tol::support;

    auto objective = [&](const std::vector<double>& w) {
        return detail::fidelity_on_diagonal_support(sqrt_rho, support, w);
    };

    if (rank_one) {
        simplex_opt_result best;
        best.value = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> vertex(n, 0.0);
            vertex[i] = 1.0;
            const double fi = objective(vertex);
            ++best.iterations;
            if (fi > best.value) {
                best.value = fi;
                best.weights = std::move(vertex);
            }
        }
        best.converged_starts = 1;
        return best;
    }

    return maximize_over_simplex(objective, n, opts, warm_start);
}

// C_l1(rho) = sum of off-diagonal moduli.
inline double c_l1(const density_matrix& rho) {
    double sum = 0.0;
    for (std::size_t i = 0; i < rho.dim(); ++i)
        for (std::size_t j = 0; j < rho.dim(); ++j)
            if (i != j) sum += std::abs(rho(i, j));
    return sum;
}

// C_r(rho) = H(rho_d) - H(rho); nonnegative up to rounding, clipped at zero.
inline double c_rel_entropy(const density_matrix& rho) {
    const double c = von_neumann_entropy(dephase(rho).matrix()) -
                     von_neumann_entropy(rho.matrix());
    return std::max(0.0, c);
}

// Monte Carlo witness that the dephased state attains the incoherent-state
// minimum of H(rho||sigma): samples diagonal sigmas and records the worst
// margin H(rho||sigma) - H(rho||rho_d) seen.
inline verification_record c_rel_entropy_is_minimum(const density_matrix& rho,
                                                    int n_samples,
                                                    std::uint64_t seed) {
    const double reference = relative_entropy(rho.matrix(), dephase(rho).matrix());
    std::mt19937_64 rng(seed);
    double worst_margin = std::numeric_limits<double>::infinity();
    double worst_value = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n_samples; ++k) {
        const simplex_point sigma = simplex_point::dirichlet(rho.dim(), rng);
        const double value = relative_entropy(rho.matrix(), sigma.diagonal_state().matrix());
        const double margin = value - reference;
        if (margin < worst_margin) {
            worst_margin = margin;
            worst_value = value;
        }
    }

    fnv1a_hasher hasher;
    for (const cx& z : rho.matrix().data()) hasher.feed(z);

    verification_record rec;
    rec.check = "cr_dephased_is_minimum";
    rec.seed = seed;
    rec.input_hash = hasher.hex();
    rec.lhs = worst_value;
    rec.rhs = reference;
    rec.margin = worst_margin;
    rec.pass = worst_margin >= -1e-9;
    return rec;
}

// Closed-form geometric coherence of a qubit: (1 - sqrt(1 - 4|rho01|^2)) / 2.
inline double c_geometric_qubit(const density_matrix& rho) {
    if (rho.dim() != 2)
        throw dimension_mismatch_error("c_geometric_qubit: state is not a qubit");
    const double r = std::abs(rho(0, 1));
    const double inner = std::max(0.0, 1.0 - 4.0 * r * r);
    return 0.5 * (1.0 - std::sqrt(inner));
}

// Maximal fidelity between rho and the incoherent (diagonal) states.
inline simplex_opt_result max_fidelity_incoherent(const density_matrix& rho,
                                                  const optimizer_options& opts = {}) {
    std::vector<std::size_t> support(rho.dim());
    std::iota(support.begin(), support.end(), 0);
    std::vector<double> warm(rho.dim());
    for (std::size_t i = 0; i < rho.dim(); ++i) warm[i] = rho(i, i).real();
    simplex_opt_result res = maximize_fidelity_over_diagonal(rho.matrix(), support, warm, opts);
    if (res.converged_starts == 0)
        throw no_convergence_error("max_fidelity_incoherent: no start reached stationarity");
    return res;
}

// C_g(rho) = 1 - max over incoherent sigma of F(rho, sigma).
inline double c_geometric(const density_matrix& rho, const optimizer_options& opts = {}) {
    const double c = 1.0 - max_fidelity_incoherent(rho, opts).value;
    return std::max(0.0, c);
}

enum class fidelity_map { geometric, bures, groverian };

inline double apply_fidelity_map(fidelity_map g, double f) {
    switch (g) {
        case fidelity_map::geometric: return 1.0 - f;
        case fidelity_map::bures: return 2.0 * (1.0 - std::sqrt(std::max(0.0, f)));
        case fidelity_map::groverian: return std::sqrt(std::max(0.0, 1.0 - f));
    }
    throw validation_error("apply_fidelity_map: unknown map");
}

// C_{g(F)}(rho) = g(F*) for the same maximal fidelity F*; every nonincreasing
// g is optimized by the same sigma, so one optimization serves the family.
inline double c_gf(const density_matrix& rho, fidelity_map g,
                   const optimizer_options& opts = {}) {
    const double f_star = max_fidelity_incoherent(rho, opts).value;
    return std::max(0.0, apply_fidelity_map(g, std::min(1.0, f_star)));
}

}  // namespace coherence_forge
