#ifndef HOPF_ALGEBRA_HPP
#define HOPF_ALGEBRA_HPP

// Generic operations on graded connected Hopf algebras with a distinguished
// basis: iterated (co)products, convolutions of projections, the Doob
// rescaling eta, and checks of the state-space-basis axioms.

#include "hopf/cpp_spec.hpp"
#include "hopf/lincomb.hpp"
#include "hopf/rational.hpp"

#include <concepts>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopf {

/// A graded connected Hopf algebra described on a basis. `product` and
/// `coproduct` act on basis keys and are extended bilinearly / linearly by
/// the free functions below. `basis(n)` lists B_n in canonical order.
template <class A>
concept HopfAlgebra = requires(const A& alg, const typename A::Key& k, int n) {
    typename A::Key;
    { alg.name() } -> std::convertible_to<std::string>;
    { alg.degree(k) } -> std::convertible_to<int>;
    { alg.unit() } -> std::same_as<typename A::Key>;
    { alg.basis(n) } -> std::same_as<std::vector<typename A::Key>>;
    { alg.product(k, k) } -> std::same_as<LinComb<typename A::Key>>;
    { alg.coproduct(k) } -> std::same_as<TensorComb<typename A::Key>>;
    { alg.encode(k) } -> std::convertible_to<std::string>;
};

/// A basis element with eta = 0, i.e. the basis is not a state space basis.
class StateSpaceError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

template <HopfAlgebra A>
LinComb<typename A::Key> product(const A& alg, const LinComb<typename A::Key>& w,
                                 const LinComb<typename A::Key>& z) {
    LinComb<typename A::Key> out;
    for (const auto& [u, cu] : w)
        for (const auto& [v, cv] : z) out.add(alg.product(u, v), cu * cv);
    return out;
}

template <HopfAlgebra A>
TensorComb<typename A::Key> coproduct(const A& alg, const LinComb<typename A::Key>& x) {
    TensorComb<typename A::Key> out;
    for (const auto& [k, c] : x) out.add(alg.coproduct(k), c);
    return out;
}

/// Delta^[1] = id; Delta^[a] = (id (x) ... (x) id (x) Delta) Delta^[a-1].
template <HopfAlgebra A>
TensorComb<typename A::Key> iterated_coproduct(const A& alg, const LinComb<typename A::Key>& x, int a) {
    if (a < 1) throw std::invalid_argument("iterated_coproduct: a must be >= 1");
    TensorComb<typename A::Key> cur;
    for (const auto& [k, c] : x) cur.add({k}, c);
    for (int step = 1; step < a; ++step) {
        TensorComb<typename A::Key> next;
        for (const auto& [legs, c] : cur) {
            for (const auto& [pair, d] : alg.coproduct(legs.back())) {
                auto t = legs;
                t.back() = pair[0];
                t.push_back(pair[1]);
                next.add(std::move(t), c * d);
            }
        }
        cur = std::move(next);
    }
    return cur;
}

/// m^[1] = id; m^[a] = m(m^[a-1] (x) id): legs multiplied left to right.
template <HopfAlgebra A>
LinComb<typename A::Key> iterated_product(const A& alg, const TensorComb<typename A::Key>& t) {
    using Key = typename A::Key;
    LinComb<Key> out;
    for (const auto& [legs, c] : t) {
        if (legs.empty()) continue;
        LinComb<Key> acc(legs.front());
        for (std::size_t i = 1; i < legs.size(); ++i) acc = product(alg, acc, LinComb<Key>(legs[i]));
        out.add(acc, c);
    }
    return out;
}

/// Multiplication in the tensor square: (a (x) b)(c (x) d) = ac (x) bd.
template <HopfAlgebra A>
TensorComb<typename A::Key> tensor_square_product(const A& alg, const TensorComb<typename A::Key>& s,
                                                  const TensorComb<typename A::Key>& t) {
    TensorComb<typename A::Key> out;
    for (const auto& [l1, c1] : s)
        for (const auto& [l2, c2] : t) {
            auto left = alg.product(l1.at(0), l2.at(0));
            auto right = alg.product(l1.at(1), l2.at(1));
            for (const auto& [u, cu] : left)
                for (const auto& [v, cv] : right) out.add({u, v}, c1 * c2 * cu * cv);
        }
    return out;
}

/// (Proj_{d1} (x) ... (x) Proj_{da}) Delta^[a] (x) for a basis key, computed by
/// peeling off one graded leg at a time. Equal to filtering the full iterated
/// coproduct, by coassociativity.
template <HopfAlgebra A>
TensorComb<typename A::Key> graded_split(const A& alg, const typename A::Key& x, const Composition& d) {
    using Key = typename A::Key;
    TensorComb<Key> out;
    if (d.empty()) return out;
    if (d.size() == 1) {
        if (alg.degree(x) == d[0]) out.add({x}, Rational(1));
        return out;
    }
    Composition rest(d.begin() + 1, d.end());
    for (const auto& [pair, c] : alg.coproduct(x)) {
        if (alg.degree(pair[0]) != d[0]) continue;
        for (const auto& [legs, e] : graded_split(alg, pair[1], rest)) {
            std::vector<Key> t;
            t.reserve(d.size());
            t.push_back(pair[0]);
            t.insert(t.end(), legs.begin(), legs.end());
            out.add(std::move(t), c * e);
        }
    }
    return out;
}

template <HopfAlgebra A>
int homogeneous_degree(const A& alg, const LinComb<typename A::Key>& x) {
    int deg = -1;
    for (const auto& [k, c] : x) {
        int dk = alg.degree(k);
        if (deg >= 0 && dk != deg) throw std::invalid_argument("element is not homogeneous");
        deg = dk;
    }
    return deg;
}

/// m^[a] (Proj_{d1} (x) ... (x) Proj_{da}) Delta^[a] (x).
template <HopfAlgebra A>
LinComb<typename A::Key> apply_proj_convolution(const A& alg, const LinComb<typename A::Key>& x,
                                                const Composition& d) {
    int total = 0;
    for (int p : d) total += p;
    int deg = homogeneous_degree(alg, x);
    if (deg >= 0 && deg != total)
        throw std::invalid_argument("apply_proj_convolution: degree " + std::to_string(deg) +
                                    " does not match composition " + to_string(d));
    LinComb<typename A::Key> out;
    for (const auto& [k, c] : x) out.add(iterated_product(alg, graded_split(alg, k, d)), c);
    return out;
}

/// sum_D alpha_D Proj_{d1} * ... * Proj_{da} applied to x.
template <HopfAlgebra A>
LinComb<typename A::Key> apply_cpp(const A& alg, const LinComb<typename A::Key>& x, const CppSpec& spec) {
    int deg = homogeneous_degree(alg, x);
    if (deg >= 0 && deg != spec.n)
        throw std::invalid_argument("apply_cpp: element degree " + std::to_string(deg) +
                                    " does not match spec degree " + std::to_string(spec.n));
    LinComb<typename A::Key> out;
    for (const auto& term : spec.terms) {
        if (term.weight.is_zero()) continue;
        out.add(apply_proj_convolution(alg, x, term.composition), term.weight);
    }
    return out;
}

/// Coefficient sum of Proj_1^{(x)n} Delta^[n] (x).
template <HopfAlgebra A>
Rational eta(const A& alg, const typename A::Key& x) {
    const int n = alg.degree(x);
    if (n < 1) throw std::invalid_argument("eta: degree must be >= 1");
    Rational total;
    for (const auto& [legs, c] : graded_split(alg, x, Composition(static_cast<std::size_t>(n), 1))) total += c;
    if (total.is_zero())
        throw StateSpaceError("eta(" + std::string(alg.encode(x)) + ") = 0: not a state space basis");
    return total;
}

/// Checks non-negative structure constants and the absence of primitive basis
/// elements above degree 1, for every degree up to n_max. Returns the list of
/// violations; empty means the basis passes.
template <HopfAlgebra A>
std::vector<std::string> check_state_space_basis(const A& alg, int n_max) {
    using Key = typename A::Key;
    std::vector<std::string> violations;
    std::vector<std::vector<Key>> by_degree;
    for (int n = 0; n <= n_max; ++n) by_degree.push_back(alg.basis(n));
    if (by_degree[0].size() != 1) violations.push_back("degree 0 is not one-dimensional");

    for (int i = 0; i <= n_max; ++i)
        for (int j = 0; i + j <= n_max; ++j)
            for (const auto& w : by_degree[i])
                for (const auto& z : by_degree[j])
                    for (const auto& [y, c] : alg.product(w, z)) {
                        if (c.sign() < 0)
                            violations.push_back("negative product coefficient: " + std::string(alg.encode(w)) +
                                                 " * " + alg.encode(z) + " -> " + c.str() + " " + alg.encode(y));
                        if (alg.degree(y) != i + j)
                            violations.push_back("product not degree-additive: " + std::string(alg.encode(w)) +
                                                 " * " + alg.encode(z));
                    }

    const Key one = alg.unit();
    for (int n = 1; n <= n_max; ++n)
        for (const auto& x : by_degree[n]) {
            auto dx = alg.coproduct(x);
            for (const auto& [legs, c] : dx) {
                if (c.sign() < 0)
                    violations.push_back("negative coproduct coefficient in Delta(" + std::string(alg.encode(x)) + ")");
                if (alg.degree(legs[0]) + alg.degree(legs[1]) != n)
                    violations.push_back("coproduct not graded: Delta(" + std::string(alg.encode(x)) + ")");
            }
            if (n > 1) {
                TensorComb<Key> primitive;
                primitive.add({one, x}, Rational(1));
                primitive.add({x, one}, Rational(1));
                if (dx == primitive)
                    violations.push_back("primitive basis element in degree " + std::to_string(n) + ": " +
                                         alg.encode(x));
            }
        }
    return violations;
}

}  // namespace hopf

#endif  // HOPF_ALGEBRA_HPP
