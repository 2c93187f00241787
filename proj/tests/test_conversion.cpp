#include <catch2/catch_amalgamated.hpp>

#include <coherence_forge/conversion.hpp>

#include "test_support.hpp"

using namespace coherence_forge;
using namespace test_support;
using Catch::Matchers::WithinAbs;

TEST_CASE("generalized_cnot") {
    SECTION("two qubits: reproduces the CNOT truth table") {
        auto u = generalized_cnot(2, 2).matrix();
        // |1>|0> -> |1>|1>, i.e. column 2 has its unit entry at row 3
        REQUIRE_THAT(std::abs(u(3, 2)), WithinAbs(1.0, 0.0));
        // |0>|j> fixed
        REQUIRE_THAT(std::abs(u(0, 0)), WithinAbs(1.0, 0.0));
        REQUIRE_THAT(std::abs(u(1, 1)), WithinAbs(1.0, 0.0));
        // |1>|1> -> |1>|0>
        REQUIRE_THAT(std::abs(u(2, 3)), WithinAbs(1.0, 0.0));
    }
    SECTION("ancilla levels at and above d_s are fixed") {
        auto u = generalized_cnot(2, 3).matrix();
        for (std::size_t i = 0; i < 2; ++i) {
            const std::size_t idx = i * 3 + 2;  // ancilla level j = 2
            REQUIRE_THAT(std::abs(u(idx, idx)), WithinAbs(1.0, 0.0));
        }
    }
    SECTION("maps every product basis state to a product basis state") {
        for (std::size_t d = 2; d <= 4; ++d) {
            auto u = generalized_cnot(d, d).matrix();
            for (std::size_t col = 0; col < d * d; ++col) {
                std::size_t hits = 0;
                for (std::size_t row = 0; row < d * d; ++row) {
                    const cx e = u(row, col);
                    if (e == cx(0.0, 0.0)) continue;
                    REQUIRE(e == cx(1.0, 0.0));
                    ++hits;
                }
                REQUIRE(hits == 1);
            }
        }
    }
    SECTION("is unitary and flagged incoherent") {
        auto u = generalized_cnot(3, 4);
        REQUIRE(u.incoherent());
        REQUIRE(u.dim() == 12);
    }
    SECTION("rejects an ancilla smaller than the system") {
        REQUIRE_THROWS_AS(generalized_cnot(3, 2), dimension_mismatch_error);
    }
}

TEST_CASE("unitary_matrix validation") {
    SECTION("rejects non-unitary input") {
        complex_matrix m = complex_matrix::identity(2);
        m(0, 0) = 0.5;
        REQUIRE_THROWS_AS(unitary_matrix(m), validation_error);
    }
    SECTION("incoherent flag rejects superposition columns") {
        const double r = std::sqrt(0.5);
        complex_matrix h(2, 2);
        h(0, 0) = r;
        h(0, 1) = r;
        h(1, 0) = r;
        h(1, 1) = -r;
        REQUIRE_NOTHROW(unitary_matrix(h, false));
        REQUIRE_THROWS_AS(unitary_matrix(h, true), validation_error);
    }
}

TEST_CASE("convert") {
    SECTION("plus state converts to the Bell state") {
        auto out = convert(density_matrix::from_pure(maximally_coherent(2)), 2);
        auto bell = density_matrix::from_pure(bell_state());
        REQUIRE(max_entry_distance(out.matrix(), bell.matrix()) <= 1e-12);
    }
    SECTION("diagonal input converts to a separable classically correlated state") {
        auto out = convert(density_matrix(diag2(0.3, 0.7)), 2);
        REQUIRE(is_bipartite_incoherent(out, 1e-12));
        REQUIRE(ppt_is_separable_small(out));
    }
    SECTION("conversion preserves the spectrum") {
        std::mt19937_64 rng(211);
        auto rho = random_mixed(3, 3, rng());
        auto in_spec = hermitian_eig(rho.matrix()).eigenvalues;
        auto out_spec = hermitian_eig(convert(rho, 3).matrix()).eigenvalues;
        // nonzero part of the output spectrum matches the input spectrum
        for (std::size_t k = 0; k < 3; ++k)
            REQUIRE_THAT(out_spec[out_spec.size() - 1 - k],
                         WithinAbs(in_spec[2 - k], 1e-10));
    }
    SECTION("first d_s ancilla levels carry the embed, the rest zeros") {
        std::mt19937_64 rng(223);
        auto rho = random_mixed(2, 2, rng());
        auto padded = convert(rho, 4);
        auto embed = mc_embed(rho).bipartite();
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t a = 0; a < 4; ++a)
                for (std::size_t j = 0; j < 2; ++j)
                    for (std::size_t b = 0; b < 4; ++b) {
                        const cx got = padded.matrix()(i * 4 + a, j * 4 + b);
                        const cx want = (a < 2 && b < 2)
                                            ? embed.matrix()(i * 2 + a, j * 2 + b)
                                            : cx(0.0, 0.0);
                        REQUIRE(std::abs(got - want) <= 1e-12);
                    }
    }
    SECTION("marginal over the ancilla is the dephased input") {
        std::mt19937_64 rng(227);
        auto rho = random_mixed(3, 3, rng());
        auto out = convert(rho, 3);
        REQUIRE(max_entry_distance(out.marginal(subsystem::system).matrix(),
                                   dephase(rho).matrix()) <= 1e-10);
    }
    SECTION("rejects too-small ancilla") {
        REQUIRE_THROWS_AS(convert(density_matrix(diag2(0.5, 0.5)), 1),
                          dimension_mismatch_error);
    }
}

TEST_CASE("verify_theorem1") {
    auto cnot = generalized_cnot_channel(2, 2);

    SECTION("incoherent input: both sides vanish") {
        auto rec = verify_theorem1(density_matrix(diag2(0.4, 0.6)), cnot,
                                   bound_pair::geometric);
        REQUIRE(rec.pass);
        REQUIRE_THAT(rec.lhs, WithinAbs(0.0, 1e-9));
        REQUIRE_THAT(rec.rhs, WithinAbs(0.0, 1e-9));
    }
    SECTION("plus state through the CNOT saturates the bound") {
        auto rec = verify_theorem1(qubit(0.5, 0.5), cnot, bound_pair::geometric);
        REQUIRE(rec.pass);
        REQUIRE_THAT(rec.lhs, WithinAbs(0.5, 1e-7));
        REQUIRE_THAT(rec.rhs, WithinAbs(0.5, 1e-7));
        REQUIRE_THAT(rec.margin, WithinAbs(0.0, 1e-7));
    }
    SECTION("random states and channels never violate the bound") {
        std::mt19937_64 rng(229);
        for (int trial = 0; trial < 100; ++trial) {
            auto rho = random_mixed(2, 2, rng());
            auto channel = random_incoherent_channel(4, 1 + trial % 4, rng());
            auto rec = verify_theorem1(rho, channel, bound_pair::geometric, trial);
            REQUIRE(rec.pass);
        }
    }
    SECTION("relative-entropy family via the hashing score") {
        std::mt19937_64 rng(233);
        for (int trial = 0; trial < 50; ++trial) {
            auto rho = random_mixed(3, 3, rng());
            auto channel = random_incoherent_channel(9, 1 + trial % 3, rng());
            auto rec = verify_theorem1(rho, channel, bound_pair::rel_entropy_mc_family);
            REQUIRE(rec.pass);
        }
        // the generalized CNOT saturates: hashing equals C_r exactly
        auto rho = random_mixed(3, 3, rng());
        auto rec = verify_theorem1(rho, generalized_cnot_channel(3, 3),
                                   bound_pair::rel_entropy_mc_family);
        REQUIRE(rec.pass);
        REQUIRE_THAT(rec.margin, WithinAbs(0.0, 1e-9));
    }
    SECTION("geometric pair rejects non-qubit shapes") {
        std::mt19937_64 rng(239);
        auto rho = random_mixed(3, 3, rng());
        REQUIRE_THROWS_AS(verify_theorem1(rho, generalized_cnot_channel(3, 3),
                                          bound_pair::geometric),
                          unsupported_dims_error);
    }
}

TEST_CASE("verify_equality_cr") {
    SECTION("plus state: both sides 1") {
        auto rec = verify_equality_cr(density_matrix::from_pure(maximally_coherent(2)));
        REQUIRE(rec.pass);
        REQUIRE_THAT(rec.lhs, WithinAbs(1.0, 1e-9));
        REQUIRE_THAT(rec.rhs, WithinAbs(1.0, 1e-9));
    }
    SECTION("diagonal state: both sides 0") {
        auto rec = verify_equality_cr(density_matrix(diag2(0.2, 0.8)));
        REQUIRE(rec.pass);
        REQUIRE_THAT(rec.lhs, WithinAbs(0.0, 1e-9));
    }
    SECTION("random qutrits agree within 1e-9") {
        std::mt19937_64 rng(241);
        for (int trial = 0; trial < 100; ++trial) {
            auto rec = verify_equality_cr(random_mixed(3, 3, rng()), trial);
            REQUIRE(rec.pass);
        }
    }
}

TEST_CASE("verify_theorem2") {
    SECTION("maximally mixed diagonal input stays separable") {
        auto rec = verify_theorem2(density_matrix(diag2(0.5, 0.5)), 1e-12);
        REQUIRE(rec.pass);
        REQUIRE(rec.check == "theorem2_incoherent");
    }
    SECTION("coherent qubit converts to concurrence 2|rho01|") {
        auto rec = verify_theorem2(qubit(0.5, 0.3), 1e-12);
        REQUIRE(rec.pass);
        REQUIRE(rec.check == "theorem2_coherent");
        REQUIRE_THAT(rec.lhs, WithinAbs(0.6, 1e-9));
    }
    SECTION("maximally coherent qutrit converts with hashing bound log2(3)") {
        auto rec = verify_theorem2(density_matrix::from_pure(maximally_coherent(3)), 1e-12);
        REQUIRE(rec.pass);
        REQUIRE_THAT(rec.lhs, WithinAbs(std::log2(3.0), 1e-9));
    }
    SECTION("random diagonal qutrits convert to PPT outputs") {
        std::mt19937_64 rng(251);
        for (int trial = 0; trial < 50; ++trial) {
            auto sigma = simplex_point::dirichlet(3, rng).diagonal_state();
            auto rec = verify_theorem2(sigma, 1e-12, trial);
            REQUIRE(rec.pass);
        }
    }
}

TEST_CASE("c_e_lower_bound") {
    SECTION("the CNOT alone reproduces the geometric coherence of qubits") {
        std::mt19937_64 rng(257);
        for (int trial = 0; trial < 50; ++trial) {
            auto rho = random_mixed(2, 2, rng());
            const double bound = c_e_lower_bound(rho, {generalized_cnot_channel(2, 2)},
                                                 output_entanglement::geometric);
            REQUIRE_THAT(bound, WithinAbs(c_geometric_qubit(rho), 1e-9));
        }
    }
    SECTION("identity on SA yields a product output and bound 0") {
        std::mt19937_64 rng(263);
        auto rho = random_mixed(2, 2, rng());
        auto identity_sa =
            certify_incoherent(unitary_channel(complex_matrix::identity(4)));
        REQUIRE_THAT(c_e_lower_bound(rho, {identity_sa}, output_entanglement::geometric),
                     WithinAbs(0.0, 1e-9));
    }
    SECTION("no random channel beats the CNOT") {
        std::mt19937_64 rng(269);
        for (int trial = 0; trial < 10; ++trial) {
            auto rho = random_mixed(2, 2, rng());
            std::vector<incoherent_channel> channels = {generalized_cnot_channel(2, 2)};
            for (int k = 0; k < 50; ++k)
                channels.push_back(random_incoherent_channel(4, 1 + k % 4, rng()));
            const double bound =
                c_e_lower_bound(rho, channels, output_entanglement::geometric);
            const double cnot_value = c_geometric_qubit(rho);
            REQUIRE(bound <= cnot_value + 1e-8);
            REQUIRE(bound >= cnot_value - 1e-9);
        }
    }
    SECTION("empty channel set is rejected") {
        REQUIRE_THROWS_AS(c_e_lower_bound(density_matrix(diag2(0.5, 0.5)), {},
                                          output_entanglement::geometric),
                          validation_error);
    }
}
