// Walkthrough: measure the coherence of a few states, convert each through
// the generalized CNOT, and show that the output entanglement matches.
#include <cstdio>

#include <coherence_forge/conversion.hpp>

namespace cf = coherence_forge;

namespace {

void report(const char* label, const cf::density_matrix& rho) {
    const double c_r = cf::c_rel_entropy(rho);
    const double c_g = rho.dim() == 2 ? cf::c_geometric_qubit(rho) : cf::c_geometric(rho);

    const cf::bipartite_state converted = cf::convert(rho, rho.dim());
    const double e_r = cf::e_rel_entropy_mc(cf::mc_embed(rho));
    const double hashing = cf::hashing_lower_bound(converted);

    std::printf("%-28s C_r %.6f -> E_r %.6f   C_g %.6f", label, c_r, e_r, c_g);
    if (rho.dim() == 2)
        std::printf(" -> E_g %.6f", cf::e_geometric_two_qubit(converted));
    std::printf("   (hashing %.6f)\n", hashing);
}

}  // namespace

int main() {
    std::printf("coherence in, entanglement out (ancilla = system dimension)\n\n");

    report("plus state", cf::density_matrix::from_pure(cf::maximally_coherent(2)));
    report("maximally coherent qutrit",
           cf::density_matrix::from_pure(cf::maximally_coherent(3)));

    cf::complex_matrix m(2, 2);
    m(0, 0) = 0.5;
    m(1, 1) = 0.5;
    m(0, 1) = 0.3;
    m(1, 0) = 0.3;
    report("qubit, rho01 = 0.3", cf::density_matrix(m));

    report("random mixed qutrit", cf::random_mixed(3, 3, 42));

    cf::complex_matrix diag(2, 2);
    diag(0, 0) = 0.8;
    diag(1, 1) = 0.2;
    report("incoherent qubit", cf::density_matrix(diag));

    std::printf("\nno incoherent channel beats the generalized CNOT:\n");
    const cf::density_matrix rho = cf::random_mixed(2, 2, 7);
    std::vector<cf::incoherent_channel> channels = {cf::generalized_cnot_channel(2, 2)};
    for (int k = 0; k < 32; ++k)
        channels.push_back(cf::random_incoherent_channel(4, 1 + k % 4, 1000 + k));
    std::printf("  C_g(rho)          = %.9f\n", cf::c_geometric_qubit(rho));
    std::printf("  best over %zu ops  = %.9f\n", channels.size(),
                cf::c_e_lower_bound(rho, channels, cf::output_entanglement::geometric));
    return 0;
}
