// channels.hpp — Kraus channels and incoherent instruments: completeness
// validation, structural incoherence certification, seeded random incoherent
// channels, selective application, the tripartite flag dilation, and the
// monotonicity/convexity Monte Carlo suites.
#pragma once

#include "coherence.hpp"

namespace coherence_forge {

class kraus_channel {
  public:
    kraus_channel(std::size_t d_in, std::size_t d_out, std::vector<complex_matrix> ops)
        : d_in_(d_in), d_out_(d_out), ops_(std::move(ops)) {
        if (ops_.empty()) throw validation_error("kraus_channel: no Kraus operators");
        for (const complex_matrix& k : ops_)
            if (k.rows() != d_out_ || k.cols() != d_in_)
                throw validation_error("kraus_channel: operator shape differs from (d_out, d_in)");
        complex_matrix sum(d_in_, d_in_);
        for (const complex_matrix& k : ops_) sum += k.adjoint() * k;
        const double defect = (sum - complex_matrix::identity(d_in_)).max_abs();
        if (defect > tol::validation) {
            std::ostringstream os;
            os << "kraus_channel: completeness defect " << defect << " exceeds 1e-10";
            throw validation_error(os.str());
        }
    }

    std::size_t d_in() const { return d_in_; }
    std::size_t d_out() const { return d_out_; }
    const std::vector<complex_matrix>& kraus_ops() const { return ops_; }

  private:
    std::size_t d_in_;
    std::size_t d_out_;
    std::vector<complex_matrix> ops_;
};

inline kraus_channel unitary_channel(const complex_matrix& u) {
    return kraus_channel(u.cols(), u.rows(), {u});
}

class incoherent_channel {
  public:
    const kraus_channel& base() const { return base_; }
    bool certified() const { return certified_; }

  private:
    friend incoherent_channel certify_incoherent(const kraus_channel&, double);
    incoherent_channel(kraus_channel base, bool certified)
        : base_(std::move(base)), certified_(certified) {}

    kraus_channel base_;
    bool certified_;
};

// Structural criterion: every Kraus operator carries at most one nonzero
// entry per column, so basis states map to (sub-normalized) basis states.
// The set condition K I K^dagger within I is cross-checked numerically on
// every basis projector.
inline incoherent_channel certify_incoherent(const kraus_channel& channel,
                                             double tol = tol::entry) {
    const auto& ops = channel.kraus_ops();
    for (std::size_t l = 0; l < ops.size(); ++l) {
        const complex_matrix& k = ops[l];
        for (std::size_t j = 0; j < k.cols(); ++j) {
            std::size_t nonzero = 0;
            for (std::size_t i = 0; i < k.rows(); ++i)
                if (std::abs(k(i, j)) > tol) ++nonzero;
            if (nonzero > 1) {
                std::ostringstream os;
                os << "certify_incoherent: operator " << l << " column " << j
                   << " has " << nonzero << " nonzero entries";
                throw not_incoherent_error(os.str());
            }
        }
        // cross-check: K |i><i| K^dagger stays diagonal
        for (std::size_t j = 0; j < k.cols(); ++j) {
            for (std::size_t a = 0; a < k.rows(); ++a)
                for (std::size_t b = 0; b < k.rows(); ++b) {
                    if (a == b) continue;
                    if (std::abs(k(a, j) * std::conj(k(b, j))) > tol) {
                        std::ostringstream os;
                        os << "certify_incoherent: operator " << l
                           << " maps basis state " << j << " off the diagonal";
                        throw not_incoherent_error(os.str());
                    }
                }
        }
    }
    return incoherent_channel(channel, true);
}

// Random incoherent channel: each Kraus operator routes column j to row
// f_l(j) with a Gaussian amplitude, normalized so the amplitudes of column j
// across operators carry unit weight. The column targets f_l are sampled as
// permutations; arbitrary target functions would break the completeness
// relation through row collisions within an operator.
inline incoherent_channel random_incoherent_channel(std::size_t d, std::size_t n_kraus,
                                                    std::uint64_t seed) {
    if (d == 0) throw validation_error("random_incoherent_channel: dim must be positive");
    if (n_kraus == 0)
        throw validation_error("random_incoherent_channel: need at least one Kraus operator");
    std::mt19937_64 rng(seed);

    std::vector<std::vector<std::size_t>> targets(n_kraus);
    for (auto& perm : targets) {
        perm.resize(d);
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t i = d; i > 1; --i) {
            const std::size_t j = rng() % i;
            std::swap(perm[i - 1], perm[j]);
        }
    }

    std::vector<std::vector<cx>> amps(n_kraus, std::vector<cx>(d));
    for (std::size_t j = 0; j < d; ++j) {
        double weight = 0.0;
        for (std::size_t l = 0; l < n_kraus; ++l) {
            amps[l][j] = detail::standard_complex_gaussian(rng);
            weight += std::norm(amps[l][j]);
        }
        const double inv = 1.0 / std::sqrt(weight);
        for (std::size_t l = 0; l < n_kraus; ++l) amps[l][j] *= inv;
    }

    std::vector<complex_matrix> ops;
    ops.reserve(n_kraus);
    for (std::size_t l = 0; l < n_kraus; ++l) {
        complex_matrix k(d, d);
        for (std::size_t j = 0; j < d; ++j) k(targets[l][j], j) = amps[l][j];
        ops.push_back(std::move(k));
    }
    return certify_incoherent(kraus_channel(d, d, std::move(ops)));
}

inline density_matrix apply(const kraus_channel& channel, const density_matrix& rho) {
    if (channel.d_in() != rho.dim())
        throw dimension_mismatch_error("apply: channel input dim differs from state");
    complex_matrix out(channel.d_out(), channel.d_out());
    for (const complex_matrix& k : channel.kraus_ops()) out += k * rho.matrix() * k.adjoint();
    return density_matrix(out.hermitized());
}

inline density_matrix apply(const incoherent_channel& channel, const density_matrix& rho) {
    return apply(channel.base(), rho);
}

struct selective_outcome {
    double probability;
    density_matrix state;
};

// Branch-wise application; outcomes below probability 1e-12 are dropped.
inline std::vector<selective_outcome> apply_selective(const kraus_channel& channel,
                                                      const density_matrix& rho) {
    if (channel.d_in() != rho.dim())
        throw dimension_mismatch_error("apply_selective: channel input dim differs from state");
    std::vector<selective_outcome> outcomes;
    for (const complex_matrix& k : channel.kraus_ops()) {
        complex_matrix branch = (k * rho.matrix() * k.adjoint()).hermitized();
        const double p = branch.trace().real();
        if (p < tol::support) continue;
        branch *= cx(1.0 / p, 0.0);
        outcomes.push_back({p, density_matrix(branch)});
    }
    return outcomes;
}

inline std::vector<selective_outcome> apply_selective(const incoherent_channel& channel,
                                                      const density_matrix& rho) {
    return apply_selective(channel.base(), rho);
}

namespace detail {
// incoherent shift unitary on the flag register: |j> -> |mod(i+j, d_b)>
inline complex_matrix flag_shift(std::size_t i, std::size_t d_b) {
    complex_matrix u(d_b, d_b);
    for (std::size_t j = 0; j < d_b; ++j) u((i + j) % d_b, j) = 1.0;
    return u;
}
}  // namespace detail

// Tripartite flag dilation: branch i of the instrument is composed with an
// optional per-branch incoherent channel and tagged into flag sector |i> of a
// register of dimension d_b through the incoherent shift unitaries. Applied
// to rho tensor |0><0| the output is sum_i Lambda_i[K_i rho K_i^dagger]
// tensor |i><i|.
inline incoherent_channel tripartite_flag_dilation(
    const incoherent_channel& instrument,
    const std::vector<incoherent_channel>& branch_channels, std::size_t d_b) {
    const kraus_channel& inst = instrument.base();
    const std::size_t branches = inst.kraus_ops().size();
    if (d_b < branches)
        throw unsupported_dims_error(
            "tripartite_flag_dilation: flag register smaller than the branch count");
    if (!branch_channels.empty() && branch_channels.size() != branches)
        throw validation_error(
            "tripartite_flag_dilation: need one branch channel per Kraus operator");

    std::vector<complex_matrix> ops;
    for (std::size_t i = 0; i < branches; ++i) {
        const complex_matrix shift = detail::flag_shift(i, d_b);
        if (branch_channels.empty()) {
            ops.push_back(kron(inst.kraus_ops()[i], shift));
            continue;
        }
        const kraus_channel& follow = branch_channels[i].base();
        if (follow.d_in() != inst.d_out())
            throw dimension_mismatch_error(
                "tripartite_flag_dilation: branch channel dim differs from instrument output");
        for (const complex_matrix& l : follow.kraus_ops())
            ops.push_back(kron(l * inst.kraus_ops()[i], shift));
    }
    return certify_incoherent(
        kraus_channel(inst.d_in() * d_b, inst.d_out() * d_b, std::move(ops)));
}

inline incoherent_channel tripartite_flag_dilation(const incoherent_channel& instrument,
                                                   std::size_t d_b) {
    return tripartite_flag_dilation(instrument, {}, d_b);
}

enum class coherence_measure { l1, rel_entropy, geometric };

inline const char* measure_name(coherence_measure m) {
    switch (m) {
        case coherence_measure::l1: return "l1";
        case coherence_measure::rel_entropy: return "rel_entropy";
        case coherence_measure::geometric: return "geometric";
    }
    return "unknown";
}

inline double evaluate_measure(coherence_measure m, const density_matrix& rho,
                               const optimizer_options& opts = {}) {
    switch (m) {
        case coherence_measure::l1: return c_l1(rho);
        case coherence_measure::rel_entropy: return c_rel_entropy(rho);
        case coherence_measure::geometric: return c_geometric(rho, opts);
    }
    throw validation_error("evaluate_measure: unknown measure");
}

namespace detail {
inline std::string hash_state_and_channel(const density_matrix& rho,
                                          const kraus_channel* channel) {
    fnv1a_hasher h;
    for (const cx& z : rho.matrix().data()) h.feed(z);
    if (channel)
        for (const complex_matrix& k : channel->kraus_ops())
            for (const cx& z : k.data()) h.feed(z);
    return h.hex();
}
}  // namespace detail

// (C2)/(C3) Monte Carlo: per trial a random full-rank state and a random
// incoherent channel with 1..4 Kraus operators; emits one record for the
// deterministic inequality and one for the selective average.
inline std::vector<verification_record> monotonicity_suite(coherence_measure measure,
                                                           int trials,
                                                           std::uint64_t seed,
                                                           std::size_t dim,
                                                           unsigned threads = 1) {
    std::vector<verification_record> records(2 * static_cast<std::size_t>(trials));
    parallel_for_indexed(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
        const std::uint64_t trial_seed = mix_seed(seed, t);
        std::mt19937_64 rng(trial_seed);
        const density_matrix rho = random_mixed(dim, dim, rng());
        const std::size_t n_kraus = 1 + rng() % 4;
        const incoherent_channel channel = random_incoherent_channel(dim, n_kraus, rng());

        optimizer_options opts;
        opts.seed = rng();
        const double c_in = evaluate_measure(measure, rho, opts);
        const double c_out = evaluate_measure(measure, apply(channel, rho), opts);

        double c_avg = 0.0;
        for (const selective_outcome& o : apply_selective(channel, rho))
            c_avg += o.probability * evaluate_measure(measure, o.state, opts);

        const std::string hash = detail::hash_state_and_channel(rho, &channel.base());
        verification_record c2;
        c2.check = std::string("monotonicity_c2_") + measure_name(measure);
        c2.seed = trial_seed;
        c2.input_hash = hash;
        c2.lhs = c_out;
        c2.rhs = c_in;
        c2.margin = c_in - c_out;
        c2.pass = c2.margin >= -1e-8;

        verification_record c3 = c2;
        c3.check = std::string("monotonicity_c3_") + measure_name(measure);
        c3.lhs = c_avg;
        c3.margin = c_in - c_avg;
        c3.pass = c3.margin >= -1e-8;

        records[2 * t] = std::move(c2);
        records[2 * t + 1] = std::move(c3);
    });
    return records;
}

// (C4) Monte Carlo: mixtures of 2..4 random states under Dirichlet weights.
inline std::vector<verification_record> convexity_suite(coherence_measure measure,
                                                        int trials,
                                                        std::uint64_t seed,
                                                        std::size_t dim,
                                                        unsigned threads = 1) {
    std::vector<verification_record> records(static_cast<std::size_t>(trials));
    parallel_for_indexed(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
        const std::uint64_t trial_seed = mix_seed(seed, t);
        std::mt19937_64 rng(trial_seed);
        const std::size_t parts = 2 + rng() % 3;

        std::vector<density_matrix> states;
        states.reserve(parts);
        for (std::size_t k = 0; k < parts; ++k)
            states.push_back(random_mixed(dim, dim, rng()));
        const std::vector<double> weights = simplex_point::dirichlet(parts, rng).weights();

        complex_matrix mix(dim, dim);
        for (std::size_t k = 0; k < parts; ++k) {
            complex_matrix scaled = states[k].matrix();
            scaled *= cx(weights[k], 0.0);
            mix += scaled;
        }
        const density_matrix mixture(mix.hermitized());

        optimizer_options opts;
        opts.seed = rng();
        const double c_mix = evaluate_measure(measure, mixture, opts);
        double c_avg = 0.0;
        for (std::size_t k = 0; k < parts; ++k)
            c_avg += weights[k] * evaluate_measure(measure, states[k], opts);

        fnv1a_hasher h;
        for (const density_matrix& s : states)
            for (const cx& z : s.matrix().data()) h.feed(z);
        for (double w : weights) h.feed(w);

        verification_record rec;
        rec.check = std::string("convexity_c4_") + measure_name(measure);
        rec.seed = trial_seed;
        rec.input_hash = h.hex();
        rec.lhs = c_mix;
        rec.rhs = c_avg;
        rec.margin = c_avg - c_mix;
        rec.pass = rec.margin >= -1e-8;
        records[t] = std::move(rec);
    });
    return records;
}

}  // namespace coherence_forge
