#ifndef HOPF_CPP_SPEC_HPP
#define HOPF_CPP_SPEC_HPP

// Non-negative convolutions of projections: sum_D alpha_D Proj_{d1} * ... * Proj_{da},
// stored as a finite list of (composition, weight) terms at a fixed degree n.

#include "hopf/rational.hpp"

#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopf {

using Composition = std::vector<int>;

inline std::string to_string(const Composition& d) {
    std::string s = "(";
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(d[i]);
    }
    return s + ")";
}

struct SpecTerm {
    Composition composition;
    Rational weight;
    friend bool operator==(const SpecTerm&, const SpecTerm&) = default;
};

struct CppSpec {
    int n = 0;
    std::vector<SpecTerm> terms;
    friend bool operator==(const CppSpec&, const CppSpec&) = default;
};

/// Raised when a spec breaks non-negativity or the non-scalar condition.
class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// n! / (d_1! ... d_a!)
inline Integer multinomial(int n, const Composition& d) {
    Integer r = factorial(static_cast<unsigned>(n));
    for (int x : d) r /= factorial(static_cast<unsigned>(x));
    return r;
}

/// Strips zero parts, merges coinciding compositions and validates. The
/// result is sorted by composition and has no zero-weight terms.
inline CppSpec normalize_spec(const CppSpec& raw) {
    if (raw.n < 1) throw SpecError("spec degree must be positive, got " + std::to_string(raw.n));
    std::map<Composition, Rational> merged;
    for (const auto& term : raw.terms) {
        int total = 0;
        Composition stripped;
        for (int d : term.composition) {
            if (d < 0) throw SpecError("negative part in composition " + to_string(term.composition));
            total += d;
            if (d > 0) stripped.push_back(d);
        }
        if (total != raw.n)
            throw SpecError("composition " + to_string(term.composition) + " does not sum to n=" +
                            std::to_string(raw.n));
        if (term.weight.sign() < 0)
            throw SpecError("negative weight " + term.weight.str() + " on composition " +
                            to_string(term.composition));
        merged[stripped] += term.weight;
    }
    CppSpec out;
    out.n = raw.n;
    bool nonscalar = false;
    for (auto& [comp, w] : merged) {
        if (w.is_zero()) continue;
        if (comp.size() >= 2) nonscalar = true;
        out.terms.push_back({comp, w});
    }
    if (!nonscalar) {
        std::string offending = out.terms.empty() ? std::string("<no positive terms>")
                                                  : to_string(out.terms.front().composition);
        throw SpecError("no positive weight on a composition without a part equal to n (" + offending +
                        ")");
    }
    return out;
}

/// sum_D alpha_D * multinomial(n; D)
inline Rational beta_n(const CppSpec& spec) {
    Rational b;
    for (const auto& t : spec.terms) b += t.weight * Rational(multinomial(spec.n, t.composition));
    return b;
}

/// Probability of each (stripped) composition in the cut step.
inline std::map<Composition, Rational> composition_law(const CppSpec& spec) {
    const Rational beta = beta_n(spec);
    std::map<Composition, Rational> law;
    for (const auto& t : spec.terms) {
        Composition stripped;
        for (int d : t.composition)
            if (d > 0) stripped.push_back(d);
        law[stripped] += t.weight * Rational(multinomial(spec.n, t.composition)) / beta;
    }
    std::erase_if(law, [](const auto& kv) { return kv.second.is_zero(); });
    return law;
}

}  // namespace hopf

#endif  // HOPF_CPP_SPEC_HPP
