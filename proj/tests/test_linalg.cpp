#include <catch2/catch_amalgamated.hpp>

#include <coherence_forge/linalg.hpp>
#include <coherence_forge/states.hpp>

#include "test_support.hpp"

using namespace coherence_forge;
using namespace test_support;
using Catch::Matchers::WithinAbs;

TEST_CASE("hermitian_eig on small fixed matrices") {
    SECTION("identity(2) has eigenvalues [1, 1]") {
        auto e = hermitian_eig(complex_matrix::identity(2));
        REQUIRE_THAT(e.eigenvalues[0], WithinAbs(1.0, 1e-12));
        REQUIRE_THAT(e.eigenvalues[1], WithinAbs(1.0, 1e-12));
    }
    SECTION("Pauli X has eigenvalues [-1, 1]") {
        auto e = hermitian_eig(pauli_x());
        REQUIRE_THAT(e.eigenvalues[0], WithinAbs(-1.0, 1e-12));
        REQUIRE_THAT(e.eigenvalues[1], WithinAbs(1.0, 1e-12));
    }
    SECTION("diagonal input is already solved") {
        auto e = hermitian_eig(diag2(0.2, 0.8));
        REQUIRE_THAT(e.eigenvalues[0], WithinAbs(0.2, 1e-12));
        REQUIRE_THAT(e.eigenvalues[1], WithinAbs(0.8, 1e-12));
        // eigenvectors are basis vectors (a permutation of the identity)
        for (std::size_t j = 0; j < 2; ++j) {
            std::size_t nonzero = 0;
            for (std::size_t i = 0; i < 2; ++i)
                if (std::abs(e.eigenvectors(i, j)) > 1e-12) ++nonzero;
            REQUIRE(nonzero == 1);
        }
    }
    SECTION("rejects non-Hermitian input") {
        complex_matrix m(2, 2);
        m(0, 1) = 1.0;
        REQUIRE_THROWS_AS(hermitian_eig(m, 1e-10), not_hermitian_error);
    }
    SECTION("rejects non-square input") {
        REQUIRE_THROWS_AS(hermitian_eig(complex_matrix(2, 3)), dimension_mismatch_error);
    }
    SECTION("1x1 matrices decompose trivially") {
        complex_matrix m(1, 1);
        m(0, 0) = 0.7;
        auto e = hermitian_eig(m);
        REQUIRE_THAT(e.eigenvalues[0], WithinAbs(0.7, 1e-15));
        REQUIRE_THAT(std::abs(e.eigenvectors(0, 0)), WithinAbs(1.0, 1e-15));
    }
}

TEST_CASE("hermitian_eig reconstruction on random matrices") {
    std::mt19937_64 rng(20240601);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t d = 2 + static_cast<std::size_t>(rng() % 7);  // up to 8
        complex_matrix m = random_hermitian(d, rng);
        auto e = hermitian_eig(m);

        complex_matrix rebuilt = spectral_map(e, e.eigenvalues);
        const double scale = std::max(1.0, m.frobenius_norm());
        REQUIRE((rebuilt - m).frobenius_norm() / scale <= 1e-10);

        complex_matrix gram = e.eigenvectors.adjoint() * e.eigenvectors;
        REQUIRE((gram - complex_matrix::identity(d)).max_abs() <= 1e-10);

        REQUIRE(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()));
    }
}

TEST_CASE("matrix_sqrt_psd") {
    SECTION("identity is its own root") {
        auto r = matrix_sqrt_psd(complex_matrix::identity(3));
        REQUIRE(max_entry_distance(r, complex_matrix::identity(3)) <= 1e-12);
    }
    SECTION("diagonal root") {
        auto r = matrix_sqrt_psd(diag2(4.0, 9.0));
        REQUIRE(max_entry_distance(r, diag2(2.0, 3.0)) <= 1e-12);
    }
    SECTION("rank-1 projector is idempotent") {
        auto proj = density_matrix::from_pure(plus_state()).matrix();
        auto r = matrix_sqrt_psd(proj);
        REQUIRE(max_entry_distance(r, proj) <= 1e-10);
    }
    SECTION("rejects indefinite input") {
        REQUIRE_THROWS_AS(matrix_sqrt_psd(pauli_z(), 1e-10), not_psd_error);
    }
    SECTION("round trip on random PSD matrices") {
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t d = 2 + static_cast<std::size_t>(rng() % 5);
            complex_matrix m = random_psd(d, rng);
            complex_matrix r = matrix_sqrt_psd(m);
            const double scale = std::max(1.0, m.frobenius_norm());
            REQUIRE((r * r - m).frobenius_norm() / scale <= 1e-9);
        }
    }
}

TEST_CASE("fidelity") {
    auto plus = density_matrix::from_pure(plus_state());
    auto mixed = density_matrix(diag2(0.5, 0.5));

    SECTION("identical states give 1") {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 20; ++trial) {
            auto rho = random_mixed(3, 3, rng());
            REQUIRE_THAT(fidelity(rho.matrix(), rho.matrix()), WithinAbs(1.0, 1e-9));
        }
    }
    SECTION("orthogonal pure states give 0") {
        auto zero = density_matrix(diag2(1.0, 0.0));
        auto one = density_matrix(diag2(0.0, 1.0));
        REQUIRE_THAT(fidelity(zero.matrix(), one.matrix()), WithinAbs(0.0, 1e-12));
    }
    SECTION("pure versus maximally mixed") {
        // for pure rho, F = <psi|sigma|psi> = 1/2
        REQUIRE_THAT(fidelity(plus.matrix(), mixed.matrix()), WithinAbs(0.5, 1e-10));
    }
    SECTION("commuting diagonal states: F = (sum_i sqrt(p_i q_i))^2") {
        auto p = density_matrix(diag2(0.3, 0.7));
        auto q = density_matrix(diag2(0.6, 0.4));
        const double expected =
            std::pow(std::sqrt(0.3 * 0.6) + std::sqrt(0.7 * 0.4), 2.0);
        REQUIRE_THAT(fidelity(p.matrix(), q.matrix()), WithinAbs(expected, 1e-10));
    }
    SECTION("bounds and symmetry on random pairs") {
        std::mt19937_64 rng(13);
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t d = 2 + static_cast<std::size_t>(rng() % 3);
            auto a = random_mixed(d, d, rng());
            auto b = random_mixed(d, d, rng());
            const double fab = fidelity(a.matrix(), b.matrix());
            const double fba = fidelity(b.matrix(), a.matrix());
            REQUIRE(fab >= 0.0);
            REQUIRE(fab <= 1.0 + 1e-12);
            REQUIRE_THAT(fab, WithinAbs(fba, 1e-9));
        }
    }
    SECTION("dimension mismatch is rejected") {
        REQUIRE_THROWS_AS(fidelity(plus.matrix(), complex_matrix::identity(3)),
                          dimension_mismatch_error);
    }
}

TEST_CASE("von_neumann_entropy") {
    SECTION("pure state has zero entropy") {
        REQUIRE_THAT(von_neumann_entropy(diag2(1.0, 0.0)), WithinAbs(0.0, 1e-12));
    }
    SECTION("maximally mixed qubit has entropy 1") {
        REQUIRE_THAT(von_neumann_entropy(diag2(0.5, 0.5)), WithinAbs(1.0, 1e-12));
    }
    SECTION("maximally mixed two qubits has entropy 2") {
        complex_matrix m(4, 4);
        for (std::size_t i = 0; i < 4; ++i) m(i, i) = 0.25;
        REQUIRE_THAT(von_neumann_entropy(m), WithinAbs(2.0, 1e-12));
    }
    SECTION("additivity over tensor products") {
        std::mt19937_64 rng(17);
        for (int trial = 0; trial < 100; ++trial) {
            auto a = random_mixed(2, 2, rng());
            auto b = random_mixed(3, 3, rng());
            const double joint = von_neumann_entropy(kron(a.matrix(), b.matrix()));
            const double split =
                von_neumann_entropy(a.matrix()) + von_neumann_entropy(b.matrix());
            REQUIRE_THAT(joint, WithinAbs(split, 1e-9));
        }
    }
}

TEST_CASE("relative_entropy") {
    auto plus = density_matrix::from_pure(plus_state());

    SECTION("identical states give 0") {
        std::mt19937_64 rng(19);
        auto rho = random_mixed(3, 3, rng());
        REQUIRE_THAT(relative_entropy(rho.matrix(), rho.matrix()), WithinAbs(0.0, 1e-10));
    }
    SECTION("pure plus against maximally mixed gives 1") {
        REQUIRE_THAT(relative_entropy(plus.matrix(), diag2(0.5, 0.5)),
                     WithinAbs(1.0, 1e-10));
    }
    SECTION("disjoint supports give +infinity") {
        const double h = relative_entropy(diag2(1.0, 0.0), diag2(0.0, 1.0));
        REQUIRE(std::isinf(h));
        REQUIRE(h > 0.0);
    }
    SECTION("nonnegative on random pairs") {
        std::mt19937_64 rng(23);
        for (int trial = 0; trial < 100; ++trial) {
            auto a = random_mixed(3, 3, rng());
            auto b = random_mixed(3, 3, rng());
            REQUIRE(relative_entropy(a.matrix(), b.matrix()) >= 0.0);
        }
    }
    SECTION("zero sigma-eigenvalue with no rho weight there stays finite") {
        // rho supported inside sigma's support: finite relative entropy
        complex_matrix rho(3, 3);
        rho(0, 0) = 0.5;
        rho(1, 1) = 0.5;
        complex_matrix sigma(3, 3);
        sigma(0, 0) = 0.25;
        sigma(1, 1) = 0.25;
        sigma(2, 2) = 0.5;
        const double h = relative_entropy(rho, sigma);
        REQUIRE(std::isfinite(h));
        REQUIRE_THAT(h, WithinAbs(1.0, 1e-10));  // 0.5*log(2) + 0.5*log(2)

        // flipping the roles puts rho weight on sigma's kernel
        REQUIRE(std::isinf(relative_entropy(sigma, rho)));
    }
    SECTION("contracts under dephasing") {
        std::mt19937_64 rng(29);
        for (int trial = 0; trial < 100; ++trial) {
            auto a = random_mixed(3, 3, rng());
            auto b = random_mixed(3, 3, rng());
            const double before = relative_entropy(a.matrix(), b.matrix());
            const double after =
                relative_entropy(dephase(a).matrix(), dephase(b).matrix());
            if (std::isinf(before)) continue;
            REQUIRE(after <= before + 1e-9);
        }
    }
}

TEST_CASE("kron") {
    SECTION("identity times identity") {
        auto out = kron(complex_matrix::identity(2), complex_matrix::identity(2));
        REQUIRE(max_entry_distance(out, complex_matrix::identity(4)) == 0.0);
    }
    SECTION("basis projectors combine by index arithmetic") {
        auto out = kron(basis_projector(2, 0), basis_projector(2, 1));
        REQUIRE(max_entry_distance(out, basis_projector(4, 1)) == 0.0);
    }
    SECTION("X tensor X maps |00> to |11>") {
        auto xx = kron(pauli_x(), pauli_x());
        std::vector<cx> e00 = {1.0, 0.0, 0.0, 0.0};
        auto mapped = apply_matrix(xx, e00);
        REQUIRE_THAT(std::abs(mapped[3]), WithinAbs(1.0, 1e-15));
        REQUIRE_THAT(std::abs(mapped[0]) + std::abs(mapped[1]) + std::abs(mapped[2]),
                     WithinAbs(0.0, 1e-15));
    }
}

TEST_CASE("partial_trace") {
    SECTION("product state reduces to its factors") {
        std::mt19937_64 rng(31);
        auto a = random_mixed(2, 2, rng());
        auto b = random_mixed(3, 3, rng());
        auto joint = kron(a.matrix(), b.matrix());
        REQUIRE(max_entry_distance(partial_trace(joint, 2, 3, subsystem::system),
                                   a.matrix()) <= 1e-12);
        REQUIRE(max_entry_distance(partial_trace(joint, 2, 3, subsystem::ancilla),
                                   b.matrix()) <= 1e-12);
    }
    SECTION("Bell marginals are maximally mixed on both sides") {
        auto bell = density_matrix::from_pure(bell_state()).matrix();
        REQUIRE(max_entry_distance(partial_trace(bell, 2, 2, subsystem::system),
                                   diag2(0.5, 0.5)) <= 1e-12);
        REQUIRE(max_entry_distance(partial_trace(bell, 2, 2, subsystem::ancilla),
                                   diag2(0.5, 0.5)) <= 1e-12);
    }
    SECTION("trace is preserved") {
        std::mt19937_64 rng(37);
        auto rho = random_mixed(6, 6, rng());
        auto red = partial_trace(rho.matrix(), 2, 3, subsystem::system);
        REQUIRE_THAT(red.trace().real(), WithinAbs(1.0, 1e-12));
    }
    SECTION("inconsistent dims are rejected") {
        REQUIRE_THROWS_AS(partial_trace(complex_matrix::identity(5), 2, 3,
                                        subsystem::system),
                          dimension_mismatch_error);
    }
}
