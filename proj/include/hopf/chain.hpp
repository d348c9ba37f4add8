#ifndef HOPF_CHAIN_HPP
#define HOPF_CHAIN_HPP

// Markov chains driven by a non-negative convolution of projections, via the
// Doob transform: K[x][y] = c_xy eta(y) / (beta_n eta(x)), where c_xy is the
// coefficient of y in the operator applied to x.

#include "hopf/algebra.hpp"
#include "hopf/cpp_spec.hpp"
#include "hopf/matrix.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopf {

using Distribution = std::vector<Rational>;

template <class Key>
struct TransitionMatrix {
    std::vector<Key> states;
    std::vector<std::string> labels;  ///< state encodings, same order as states
    RatMatrix kernel;
    std::vector<Rational> scalings;   ///< eta per state
    Rational beta;
    CppSpec spec;

    std::size_t size() const { return states.size(); }

    std::size_t index_of(const Key& k) const {
        auto it = std::lower_bound(sorted_.begin(), sorted_.end(), k,
                                   [](const auto& entry, const Key& key) { return entry.first < key; });
        if (it == sorted_.end() || !(it->first == k)) throw std::out_of_range("state not in the state space");
        return it->second;
    }

    bool contains(const Key& k) const {
        auto it = std::lower_bound(sorted_.begin(), sorted_.end(), k,
                                   [](const auto& entry, const Key& key) { return entry.first < key; });
        return it != sorted_.end() && it->first == k;
    }

    void build_index() {
        sorted_.clear();
        for (std::size_t i = 0; i < states.size(); ++i) sorted_.emplace_back(states[i], i);
        std::sort(sorted_.begin(), sorted_.end());
        for (std::size_t i = 1; i < sorted_.size(); ++i)
            if (sorted_[i].first == sorted_[i - 1].first) throw std::invalid_argument("duplicate state");
    }

private:
    std::vector<std::pair<Key, std::size_t>> sorted_;
};

class StateSpaceTooLarge : public std::length_error {
public:
    using std::length_error::length_error;
};

struct BuildOptions {
    std::size_t max_states = 1000;
};

/// Transition matrix on the given states. The states must be closed under the
/// operator (a union of the components the chain can move within).
template <HopfAlgebra A>
TransitionMatrix<typename A::Key> build_transition_matrix(const A& alg, const CppSpec& raw_spec,
                                                          std::vector<typename A::Key> states,
                                                          const BuildOptions& options = {}) {
    using Key = typename A::Key;
    const CppSpec spec = normalize_spec(raw_spec);
    if (states.empty()) throw std::invalid_argument("build_transition_matrix: empty state space");
    if (states.size() > options.max_states)
        throw StateSpaceTooLarge("state space has " + std::to_string(states.size()) + " states, cap is " +
                                 std::to_string(options.max_states));
    TransitionMatrix<Key> tm;
    tm.spec = spec;
    tm.beta = beta_n(spec);
    tm.states = std::move(states);
    tm.build_index();
    const std::size_t n = tm.states.size();
    for (const auto& s : tm.states) {
        if (alg.degree(s) != spec.n)
            throw std::invalid_argument("state " + std::string(alg.encode(s)) + " has degree " +
                                        std::to_string(alg.degree(s)) + ", spec degree is " +
                                        std::to_string(spec.n));
        tm.labels.push_back(alg.encode(s));
        tm.scalings.push_back(eta(alg, s));
    }
    tm.kernel = RatMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto image = apply_cpp(alg, LinComb<Key>(tm.states[i]), spec);
        Rational row_sum;
        for (const auto& [y, c] : image) {
            if (!tm.contains(y))
                throw std::invalid_argument("state space not closed: " + tm.labels[i] + " reaches " +
                                            alg.encode(y));
            const std::size_t j = tm.index_of(y);
            Rational p = c * tm.scalings[j] / (tm.beta * tm.scalings[i]);
            if (p.sign() < 0) throw std::logic_error("negative transition probability from " + tm.labels[i]);
            tm.kernel(i, j) += p;
            row_sum += p;
        }
        if (row_sum != Rational(1))
            throw std::logic_error("row " + tm.labels[i] + " sums to " + row_sum.str() + ", not 1");
    }
    return tm;
}

template <HopfAlgebra A>
TransitionMatrix<typename A::Key> build_transition_matrix(const A& alg, const CppSpec& spec,
                                                          const BuildOptions& options = {}) {
    return build_transition_matrix(alg, spec, alg.basis(spec.n), options);
}

template <class Key>
Distribution point_mass(const TransitionMatrix<Key>& k, const Key& state) {
    Distribution d(k.size());
    d[k.index_of(state)] = Rational(1);
    return d;
}

template <class Key>
Distribution uniform_distribution(const TransitionMatrix<Key>& k) {
    return Distribution(k.size(), Rational(1, static_cast<long>(k.size())));
}

/// start * K^t
template <class Key>
Distribution evolve(const TransitionMatrix<Key>& k, const Distribution& start, unsigned t) {
    if (start.size() != k.size()) throw std::invalid_argument("evolve: distribution size mismatch");
    Distribution d = start;
    for (unsigned s = 0; s < t; ++s) d = vec_mul(d, k.kernel);
    return d;
}

template <class Key>
using Statistic = std::function<Rational(const Key&)>;

template <class Key>
Rational expectation(const TransitionMatrix<Key>& k, const Distribution& start, unsigned t,
                     const Statistic<Key>& stat) {
    const Distribution d = evolve(k, start, t);
    Rational e;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (!d[i].is_zero()) e += d[i] * stat(k.states[i]);
    return e;
}

/// Expectations at t = 0..t_max, reusing each evolution step.
template <class Key>
std::vector<Rational> expectation_series(const TransitionMatrix<Key>& k, const Distribution& start,
                                         unsigned t_max, const Statistic<Key>& stat) {
    std::vector<Rational> values(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) values[i] = stat(k.states[i]);
    std::vector<Rational> out;
    Distribution d = start;
    for (unsigned t = 0; t <= t_max; ++t) {
        Rational e;
        for (std::size_t i = 0; i < d.size(); ++i)
            if (!d[i].is_zero()) e += d[i] * values[i];
        out.push_back(e);
        if (t < t_max) d = vec_mul(d, k.kernel);
    }
    return out;
}

struct StationaryDistribution {
    std::vector<std::string> multiset;  ///< degree-1 basis elements c_1..c_n
    Distribution weights;
};

/// One distribution per multiset {c_1..c_n} of degree-1 basis elements whose
/// products land in `states`: pi(x) = eta(x)/n!^2 * sum over orderings sigma of
/// the coefficient of x in c_sigma(1) ... c_sigma(n).
template <HopfAlgebra A>
std::vector<StationaryDistribution> stationary_distributions(const A& alg,
                                                             const std::vector<typename A::Key>& states) {
    using Key = typename A::Key;
    if (states.empty()) return {};
    const int n = alg.degree(states.front());
    const auto singles = alg.basis(1);
    if (singles.empty()) throw std::invalid_argument("stationary_distributions: no degree-1 basis elements");
    std::map<Key, std::size_t> index;
    for (std::size_t i = 0; i < states.size(); ++i) index.emplace(states[i], i);

    std::vector<Rational> etas;
    for (const auto& s : states) etas.push_back(eta(alg, s));
    const Rational nfact2 = Rational(factorial(static_cast<unsigned>(n)) * factorial(static_cast<unsigned>(n)));

    auto ordered_product = [&](const std::vector<std::size_t>& idx) {
        LinComb<Key> acc(alg.unit());
        for (auto i : idx) acc = product(alg, acc, LinComb<Key>(singles[i]));
        return acc;
    };

    std::vector<StationaryDistribution> out;
    std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
    while (true) {
        // pick is a non-decreasing index sequence, i.e. a multiset.
        const auto probe = ordered_product(pick);
        bool hits = false;
        for (const auto& [y, c] : probe)
            if (index.count(y)) hits = true;
        if (hits) {
            Integer repeat(1);
            for (std::size_t i = 0; i < pick.size();) {
                std::size_t j = i;
                while (j < pick.size() && pick[j] == pick[i]) ++j;
                repeat *= factorial(static_cast<unsigned>(j - i));
                i = j;
            }
            LinComb<Key> total;
            auto arrangement = pick;
            do {
                total.add(ordered_product(arrangement));
            } while (std::next_permutation(arrangement.begin(), arrangement.end()));
            total *= Rational(repeat);

            StationaryDistribution sd;
            for (auto i : pick) sd.multiset.push_back(alg.encode(singles[i]));
            sd.weights.assign(states.size(), Rational(0));
            Rational mass;
            for (const auto& [y, c] : total) {
                auto it = index.find(y);
                if (it == index.end())
                    throw std::invalid_argument("stationary_distributions: state space not closed, missing " +
                                                std::string(alg.encode(y)));
                sd.weights[it->second] = etas[it->second] * c / nfact2;
                mass += sd.weights[it->second];
            }
            if (mass != Rational(1))
                throw std::logic_error("stationary distribution has mass " + mass.str());
            out.push_back(std::move(sd));
        }
        // next multiset
        int pos = n - 1;
        while (pos >= 0 && pick[static_cast<std::size_t>(pos)] == singles.size() - 1) --pos;
        if (pos < 0) break;
        const std::size_t v = pick[static_cast<std::size_t>(pos)] + 1;
        for (std::size_t i = static_cast<std::size_t>(pos); i < pick.size(); ++i) pick[i] = v;
    }
    return out;
}

template <HopfAlgebra A>
std::vector<StationaryDistribution> stationary_distributions(const A& alg, int n) {
    return stationary_distributions(alg, alg.basis(n));
}

/// pi K == pi, exactly.
template <class Key>
bool is_stationary(const TransitionMatrix<Key>& k, const Distribution& pi) {
    return vec_mul(pi, k.kernel) == pi;
}

struct LumpingWitness {
    std::string state_a, state_b, target_class;
    Rational mass_a, mass_b;
};

struct LumpingResult {
    bool lumpable = false;
    std::vector<std::string> classes;  ///< quotient state labels, sorted
    RatMatrix quotient;
    std::optional<LumpingWitness> witness;
};

/// Strong lumpability of K under `label`: every state in a class must send the
/// same total mass into each class.
template <class Key>
LumpingResult lumping_check(const TransitionMatrix<Key>& k, const std::function<std::string(const Key&)>& label) {
    LumpingResult res;
    std::vector<std::string> lab;
    for (const auto& s : k.states) lab.push_back(label(s));
    res.classes = lab;
    std::sort(res.classes.begin(), res.classes.end());
    res.classes.erase(std::unique(res.classes.begin(), res.classes.end()), res.classes.end());
    std::map<std::string, std::size_t> cls;
    for (std::size_t i = 0; i < res.classes.size(); ++i) cls[res.classes[i]] = i;
    const std::size_t m = res.classes.size();

    std::vector<std::optional<std::size_t>> representative(m);
    res.quotient = RatMatrix(m, m);
    for (std::size_t i = 0; i < k.size(); ++i) {
        std::vector<Rational> mass(m);
        for (std::size_t j = 0; j < k.size(); ++j)
            if (!k.kernel(i, j).is_zero()) mass[cls[lab[j]]] += k.kernel(i, j);
        const std::size_t c = cls[lab[i]];
        if (!representative[c]) {
            representative[c] = i;
            for (std::size_t d = 0; d < m; ++d) res.quotient(c, d) = mass[d];
            continue;
        }
        for (std::size_t d = 0; d < m; ++d) {
            if (mass[d] != res.quotient(c, d)) {
                res.witness = LumpingWitness{k.labels[*representative[c]], k.labels[i], res.classes[d],
                                             res.quotient(c, d), mass[d]};
                res.quotient = RatMatrix();
                return res;
            }
        }
    }
    res.lumpable = true;
    return res;
}

}  // namespace hopf

#endif  // HOPF_CHAIN_HPP
