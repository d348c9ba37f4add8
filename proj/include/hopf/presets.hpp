#ifndef HOPF_PRESETS_HPP
#define HOPF_PRESETS_HPP

// Named shuffle operators, expanded to explicit specs at a given degree.

#include "hopf/cpp_spec.hpp"
#include "hopf/rational.hpp"

#include <functional>
#include <string>
#include <vector>

namespace hopf {

namespace detail {

// Weak compositions of n into exactly k parts, lexicographic.
inline std::vector<Composition> weak_compositions(int n, int k) {
    std::vector<Composition> out;
    Composition cur;
    std::function<void(int, int)> rec = [&](int rest, int parts) {
        if (parts == 1) {
            cur.push_back(rest);
            out.push_back(cur);
            cur.pop_back();
            return;
        }
        for (int d = 0; d <= rest; ++d) {
            cur.push_back(d);
            rec(rest - d, parts - 1);
            cur.pop_back();
        }
    };
    if (k >= 1) rec(n, k);
    return out;
}

inline int as_count(const Rational& r, const std::string& what) {
    if (!r.is_integer() || r.sign() <= 0 || r > Rational(1000))
        throw SpecError(what + " must be a positive integer, got " + r.str());
    return static_cast<int>(r.numerator().get_si());
}

inline void require_probability(const Rational& q, const std::string& what) {
    if (q.sign() < 0 || q > Rational(1)) throw SpecError(what + " must lie in [0,1], got " + q.str());
}

}  // namespace detail

inline const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"riffle",          "biased",           "top-to-random",
                                                "top-m-ordered",   "top-m-unordered", "top-or-bottom",
                                                "trinomial"};
    return names;
}

/// Expands a preset at degree n. Parameters:
///   riffle a            every weak composition into a parts, weight 1
///   biased q_1..q_a     weight prod q_i^d_i; a missing last q is 1 - sum
///   top-to-random       (1, n-1)
///   top-m-ordered m     (m, n-m)
///   top-m-unordered m   (1^m, n-m)
///   top-or-bottom q     (1, n-1) with q, (n-1, 1) with 1-q
///   trinomial q1 q2 q3  (1^m1, m2, 1^m3) with q1^m1 q2^m2 q3^m3 / (m1! m3!)
inline CppSpec expand_preset(const std::string& name, const std::vector<Rational>& params, int n) {
    if (n < 1) throw SpecError("degree must be positive");
    auto arity = [&](std::size_t lo, std::size_t hi) {
        if (params.size() < lo || params.size() > hi)
            throw SpecError("preset " + name + " takes " +
                            (lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi)) +
                            " parameter(s), got " + std::to_string(params.size()));
    };
    CppSpec s;
    s.n = n;
    if (name == "riffle") {
        arity(0, 1);
        const int a = params.empty() ? 2 : detail::as_count(params[0], "riffle hands");
        for (auto& d : detail::weak_compositions(n, a)) s.terms.push_back({std::move(d), Rational(1)});
    } else if (name == "biased") {
        arity(1, 16);
        std::vector<Rational> q = params;
        Rational sum;
        for (const auto& x : q) {
            detail::require_probability(x, "biased cut probability");
            sum += x;
        }
        if (sum > Rational(1)) throw SpecError("biased cut probabilities sum to " + sum.str() + " > 1");
        if (sum < Rational(1)) q.push_back(Rational(1) - sum);
        for (auto& d : detail::weak_compositions(n, static_cast<int>(q.size()))) {
            Rational w(1);
            for (std::size_t i = 0; i < d.size(); ++i) w *= pow(q[i], static_cast<unsigned>(d[i]));
            s.terms.push_back({std::move(d), w});
        }
    } else if (name == "top-to-random") {
        arity(0, 0);
        s.terms.push_back({{1, n - 1}, Rational(1)});
    } else if (name == "top-m-ordered") {
        arity(1, 1);
        const int m = detail::as_count(params[0], "m");
        if (m >= n) throw SpecError("top-m-ordered needs m < n");
        s.terms.push_back({{m, n - m}, Rational(1)});
    } else if (name == "top-m-unordered") {
        arity(1, 1);
        const int m = detail::as_count(params[0], "m");
        if (m > n) throw SpecError("top-m-unordered needs m <= n");
        Composition d(static_cast<std::size_t>(m), 1);
        d.push_back(n - m);
        s.terms.push_back({d, Rational(1)});
    } else if (name == "top-or-bottom") {
        arity(1, 1);
        detail::require_probability(params[0], "q");
        s.terms.push_back({{1, n - 1}, params[0]});
        s.terms.push_back({{n - 1, 1}, Rational(1) - params[0]});
    } else if (name == "trinomial") {
        arity(3, 3);
        Rational sum;
        for (const auto& x : params) {
            detail::require_probability(x, "trinomial parameter");
            sum += x;
        }
        if (sum != Rational(1)) throw SpecError("trinomial parameters must sum to 1, got " + sum.str());
        for (int m1 = 0; m1 <= n; ++m1)
            for (int m3 = 0; m1 + m3 <= n; ++m3) {
                const int m2 = n - m1 - m3;
                Composition d(static_cast<std::size_t>(m1), 1);
                d.push_back(m2);
                d.insert(d.end(), static_cast<std::size_t>(m3), 1);
                Rational w = pow(params[0], static_cast<unsigned>(m1)) * pow(params[1], static_cast<unsigned>(m2)) *
                             pow(params[2], static_cast<unsigned>(m3)) /
                             Rational(factorial(static_cast<unsigned>(m1)) * factorial(static_cast<unsigned>(m3)));
                s.terms.push_back({std::move(d), w});
            }
    } else {
        std::string known;
        for (const auto& p : preset_names()) known += (known.empty() ? "" : ", ") + p;
        throw SpecError("unknown preset '" + name + "' (known: " + known + ")");
    }
    return normalize_spec(s);
}

}  // namespace hopf

#endif  // HOPF_PRESETS_HPP
