// Small tour of the library: a riffle shuffle of four cards, its spectrum,
// and the expected number of descents after a few shuffles.

#include "hopf/chain.hpp"
#include "hopf/presets.hpp"
#include "hopf/shuffle.hpp"
#include "hopf/spectral.hpp"

#include <iostream>

using namespace hopf;

int main() {
    ShuffleAlgebra deck(Alphabet::distinct(4));
    const Word ascending = deck.parse("1234");
    const CppSpec riffle = expand_preset("riffle", {Rational(2)}, 4);

    auto k = build_transition_matrix(deck, riffle, deck.deck_states(ascending));
    std::cout << k.size() << " states, beta = " << k.beta.str() << "\n";

    const Spectrum s = spectrum(riffle, content_profile({1, 1, 1, 1}));
    for (const auto& [lam, mult] : s.by_eigenvalue()) std::cout << "  eigenvalue " << lam.str() << " x" << mult << "\n";
    std::cout << "matrix agrees: " << (verify_spectrum(k.kernel, s).ok() ? "yes" : "no") << "\n";

    auto descents = expectation_series<Word>(k, point_mass(k, ascending), 4,
                                             [](const Word& w) { return Rational(descent_count(w)); });
    for (std::size_t t = 0; t < descents.size(); ++t) std::cout << "  E[des] at t=" << t << ": " << descents[t].str() << "\n";
}
