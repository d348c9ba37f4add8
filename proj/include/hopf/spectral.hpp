#ifndef HOPF_SPECTRAL_HPP
#define HOPF_SPECTRAL_HPP

// Closed-form spectra of descent-operator chains, Hilbert-series inversion,
// primitive subspaces, and the eigenvector families of the top-or-bottom
// operator on the free associative algebra.

#include "hopf/algebra.hpp"
#include "hopf/chain.hpp"
#include "hopf/cpp_spec.hpp"
#include "hopf/matrix.hpp"
#include "hopf/shuffle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopf {

/// Weakly decreasing positive parts.
using Partition = std::vector<int>;

/// All partitions of n, in decreasing lexicographic order: (n), (n-1,1), ...
inline std::vector<Partition> partitions(int n) {
    std::vector<Partition> out;
    Partition cur;
    std::function<void(int, int)> rec = [&](int rest, int max_part) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, max_part); p >= 1; --p) {
            cur.push_back(p);
            rec(rest - p, p);
            cur.pop_back();
        }
    };
    if (n < 0) throw std::invalid_argument("partitions: negative size");
    rec(n, n);
    return out;
}

/// Number of ways to send each part of lambda to a block of D so that block i
/// sums to d_i.
inline Integer pairing_count(const Partition& lambda, const Composition& d) {
    const int ls = std::accumulate(lambda.begin(), lambda.end(), 0);
    const int ds = std::accumulate(d.begin(), d.end(), 0);
    if (ls != ds) throw std::invalid_argument("pairing_count: sizes differ");
    std::vector<int> room = d;
    Integer count(0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == lambda.size()) {
            // every block full since the totals agree
            ++count;
            return;
        }
        for (auto& r : room) {
            if (r < lambda[i]) continue;
            r -= lambda[i];
            rec(i + 1);
            r += lambda[i];
        }
    };
    rec(0);
    return count;
}

struct PartitionEigenvalue {
    Partition partition;
    Rational eigenvalue;  ///< beta_lambda / beta_n
};

/// beta_lambda / beta_n for every partition lambda of n.
inline std::vector<PartitionEigenvalue> eigenvalues(const CppSpec& raw_spec) {
    const CppSpec spec = normalize_spec(raw_spec);
    const Rational beta = beta_n(spec);
    std::vector<PartitionEigenvalue> out;
    for (auto& lambda : partitions(spec.n)) {
        Rational b;
        for (const auto& t : spec.terms) b += t.weight * Rational(pairing_count(lambda, t.composition));
        out.push_back({std::move(lambda), b / beta});
    }
    return out;
}

// Hilbert series inversion ------------------------------------------------

/// sum_n dims[n] t^n = prod_i (1 - t^i)^(-b[i]); b[0] is unused and 0.
struct HilbertProfile {
    std::vector<Integer> dims;
    std::vector<Integer> b;
};

namespace detail {

using Multidegree = std::vector<int>;
using MultiSeries = std::map<Multidegree, Integer>;

inline int total_degree(const Multidegree& v) { return std::accumulate(v.begin(), v.end(), 0); }

// Every nonzero multidegree below `cap` (componentwise), ordered by total
// degree then lexicographically.
inline std::vector<Multidegree> box(const Multidegree& cap) {
    std::vector<Multidegree> out;
    Multidegree v(cap.size(), 0);
    while (true) {
        std::size_t i = 0;
        while (i < v.size() && v[i] == cap[i]) v[i++] = 0;
        if (i == v.size()) break;
        ++v[i];
        out.push_back(v);
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return total_degree(a) < total_degree(b); });
    return out;
}

// series *= (1 - x^rho)^e, truncated to the box
inline void multiply_power_factor(MultiSeries& s, const Multidegree& rho, const Integer& e,
                                  const Multidegree& cap) {
    if (e == 0) return;
    if (e < 0) throw std::domain_error("Hilbert inversion produced a negative exponent");
    MultiSeries out;
    for (const auto& [v, c] : s) {
        Multidegree w = v;
        for (long k = 0;; ++k) {
            bool inside = true;
            for (std::size_t i = 0; i < w.size(); ++i) inside = inside && w[i] <= cap[i];
            if (!inside) break;
            Integer coeff = binomial(e.get_si(), k);
            if (coeff == 0) break;
            if (k % 2) coeff = -coeff;
            out[w] += coeff * c;
            for (std::size_t i = 0; i < w.size(); ++i) w[i] += rho[i];
            if (total_degree(rho) == 0) break;
        }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    s = std::move(out);
}

}  // namespace detail

/// Exponents b_nu of a multigraded series prod_nu (1 - x^nu)^(-b_nu), for nu in
/// the box below `cap`. `dim` gives the dimension of each graded piece.
class GradedProfile {
public:
    GradedProfile() = default;

    static GradedProfile invert(const std::function<Integer(const detail::Multidegree&)>& dim,
                                const detail::Multidegree& cap) {
        GradedProfile p;
        p.cap_ = cap;
        const auto degrees = detail::box(cap);
        detail::MultiSeries s;
        s[detail::Multidegree(cap.size(), 0)] = 1;
        for (const auto& v : degrees) s[v] = dim(v);
        std::size_t i = 0;
        while (i < degrees.size()) {
            const int level = detail::total_degree(degrees[i]);
            std::size_t j = i;
            for (; j < degrees.size() && detail::total_degree(degrees[j]) == level; ++j) {
                auto it = s.find(degrees[j]);
                Integer b = it == s.end() ? Integer(0) : it->second;
                if (b < 0) throw std::domain_error("Hilbert inversion produced a negative exponent");
                p.b_[degrees[j]] = b;
            }
            for (std::size_t k = i; k < j; ++k) detail::multiply_power_factor(s, degrees[k], p.b_[degrees[k]], cap);
            i = j;
        }
        return p;
    }

    /// Single grading from a dims list.
    static GradedProfile from_hilbert(const HilbertProfile& h) {
        GradedProfile p;
        p.cap_ = {static_cast<int>(h.b.size()) - 1};
        for (std::size_t i = 1; i < h.b.size(); ++i) p.b_[{static_cast<int>(i)}] = h.b[i];
        return p;
    }

    const detail::Multidegree& cap() const { return cap_; }
    const std::map<detail::Multidegree, Integer>& exponents() const { return b_; }

    Integer exponent(const detail::Multidegree& v) const {
        auto it = b_.find(v);
        return it == b_.end() ? Integer(0) : it->second;
    }

    /// Coefficient of x_lambda in prod (1 - x_{|nu|} y^nu)^(-b_nu) at y^cap:
    /// the number of PBW monomials of shape lambda.
    Integer multiplicity(const Partition& lambda) const {
        std::vector<detail::Multidegree> gens;
        for (const auto& [v, b] : b_)
            if (b > 0) gens.push_back(v);
        std::map<int, int> need;
        for (int p : lambda) ++need[p];
        Integer total(0);
        detail::Multidegree rest = cap_;
        std::function<void(std::size_t, const Integer&)> rec = [&](std::size_t g, const Integer& weight) {
            if (detail::total_degree(rest) == 0) {
                if (std::all_of(need.begin(), need.end(), [](const auto& kv) { return kv.second == 0; }))
                    total += weight;
                return;
            }
            if (g == gens.size()) return;
            const auto& v = gens[g];
            const int size = detail::total_degree(v);
            rec(g + 1, weight);
            int m = 0;
            while (need[size] > 0) {
                bool fits = true;
                for (std::size_t i = 0; i < v.size(); ++i) fits = fits && rest[i] >= v[i];
                if (!fits) break;
                for (std::size_t i = 0; i < v.size(); ++i) rest[i] -= v[i];
                --need[size];
                ++m;
                rec(g + 1, weight * multichoose(exponent(v).get_si(), m));
            }
            for (std::size_t i = 0; i < v.size(); ++i) rest[i] += m * v[i];
            need[size] += m;
        };
        rec(0, Integer(1));
        return total;
    }

private:
    detail::Multidegree cap_;
    std::map<detail::Multidegree, Integer> b_;
};

/// b_i from dim H_0..dim H_N (dims[0] must be 1).
inline HilbertProfile hilbert_invert(const std::vector<Integer>& dims) {
    if (dims.empty() || dims[0] != 1) throw std::invalid_argument("hilbert_invert: dims[0] must be 1");
    const int cap = static_cast<int>(dims.size()) - 1;
    auto g = GradedProfile::invert([&](const detail::Multidegree& v) { return dims[static_cast<std::size_t>(v[0])]; },
                                   {cap});
    HilbertProfile h;
    h.dims = dims;
    h.b.assign(dims.size(), Integer(0));
    for (int i = 1; i <= cap; ++i) h.b[static_cast<std::size_t>(i)] = g.exponent({i});
    return h;
}

/// prod_i multichoose(b_i, m_i), m_i = number of parts equal to i.
inline Integer multiplicity(const Partition& lambda, const HilbertProfile& profile) {
    std::map<int, long> m;
    for (int p : lambda) ++m[p];
    Integer r(1);
    for (const auto& [part, count] : m) {
        if (part >= static_cast<int>(profile.b.size())) return Integer(0);
        r *= multichoose(profile.b[static_cast<std::size_t>(part)].get_si(), count);
    }
    return r;
}

/// Profile for the words with the letter content of `deck`: dim at content nu
/// is the multinomial |nu|! / prod nu_i!.
inline GradedProfile content_profile(const std::vector<int>& content) {
    return GradedProfile::invert(
        [](const detail::Multidegree& v) { return multinomial(detail::total_degree(v), v); }, content);
}

/// Single-graded profile of an algebra, from its basis counts up to n.
template <HopfAlgebra A>
GradedProfile degree_profile(const A& alg, int n) {
    std::vector<Integer> dims;
    for (int i = 0; i <= n; ++i) dims.emplace_back(static_cast<unsigned long>(alg.basis(i).size()));
    return GradedProfile::from_hilbert(hilbert_invert(dims));
}

// Spectrum -----------------------------------------------------------------

struct SpectrumRow {
    Partition partition;
    Rational eigenvalue;
    Integer multiplicity;
};

struct Spectrum {
    std::vector<SpectrumRow> rows;

    /// Distinct eigenvalues with positive multiplicity, summed.
    std::map<Rational, Integer> by_eigenvalue() const {
        std::map<Rational, Integer> out;
        for (const auto& r : rows)
            if (r.multiplicity > 0) out[r.eigenvalue] += r.multiplicity;
        return out;
    }

    Integer total() const {
        Integer t(0);
        for (const auto& r : rows) t += r.multiplicity;
        return t;
    }
};

inline Spectrum spectrum(const CppSpec& spec, const GradedProfile& profile) {
    Spectrum s;
    for (auto& pe : eigenvalues(spec))
        s.rows.push_back({pe.partition, pe.eigenvalue, profile.multiplicity(pe.partition)});
    return s;
}

struct EigenspaceCheck {
    Rational eigenvalue;
    Integer claimed;
    std::size_t actual = 0;  ///< states - rank(K - eigenvalue I)
};

struct SpectrumReport {
    std::vector<EigenspaceCheck> eigenspaces;
    Integer claimed_total;
    std::size_t states = 0;
    bool annihilated = false;

    bool dimensions_match() const {
        return std::all_of(eigenspaces.begin(), eigenspaces.end(),
                           [](const auto& e) { return e.claimed == static_cast<unsigned long>(e.actual); });
    }
    bool ok() const {
        return dimensions_match() && annihilated && claimed_total == static_cast<unsigned long>(states);
    }
};

/// Rank-based eigenspace dimensions and the annihilation product, against the
/// claimed spectrum.
inline SpectrumReport verify_spectrum(const RatMatrix& kernel, const Spectrum& s) {
    SpectrumReport rep;
    rep.states = kernel.rows();
    rep.claimed_total = s.total();
    std::vector<Rational> values;
    for (const auto& [lam, mult] : s.by_eigenvalue()) {
        values.push_back(lam);
        rep.eigenspaces.push_back({lam, mult, kernel.rows() - rank(kernel.shifted(lam))});
    }
    rep.annihilated = annihilation_check(kernel, values);
    return rep;
}

// Primitives ---------------------------------------------------------------

/// Basis of ker(reduced coproduct) inside the span of `keys`, all of one degree.
template <HopfAlgebra A>
std::vector<LinComb<typename A::Key>> primitive_basis(const A& alg, const std::vector<typename A::Key>& keys) {
    using Key = typename A::Key;
    if (keys.empty()) return {};
    if (alg.degree(keys.front()) == 1) {
        std::vector<LinComb<Key>> out;
        for (const auto& k : keys) out.emplace_back(k);
        return out;
    }
    const Key one = alg.unit();
    std::map<std::vector<Key>, std::size_t> row_of;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> columns(keys.size());
    for (std::size_t c = 0; c < keys.size(); ++c) {
        for (const auto& [legs, v] : alg.coproduct(keys[c])) {
            if (legs[0] == one || legs[1] == one) continue;
            auto [it, inserted] = row_of.emplace(legs, row_of.size());
            columns[c].emplace_back(it->second, v);
        }
    }
    RatMatrix m(row_of.size(), keys.size());
    for (std::size_t c = 0; c < keys.size(); ++c)
        for (const auto& [r, v] : columns[c]) m(r, c) += v;
    std::vector<LinComb<Key>> out;
    if (row_of.empty()) {
        for (const auto& k : keys) out.emplace_back(k);
        return out;
    }
    for (const auto& vec : nullspace(m)) {
        LinComb<Key> p;
        for (std::size_t i = 0; i < vec.size(); ++i) p.add(keys[i], vec[i]);
        out.push_back(std::move(p));
    }
    return out;
}

template <HopfAlgebra A>
std::vector<LinComb<typename A::Key>> primitive_basis(const A& alg, int n) {
    return primitive_basis(alg, alg.basis(n));
}

// Eigenvectors on the free associative algebra ------------------------------

struct Eigenvector {
    LinComb<Word> vector;
    Rational eigenvalue;
    int j = 0;
    std::vector<std::string> letters;     ///< the degree-1 primitives c_1..c_j
    std::vector<std::string> primitives;  ///< higher primitives, as "content#index"
};

/// (1/n)(q Proj_1*id + (1-q) id*Proj_1) at degree n.
inline CppSpec top_or_bottom_spec(int n, const Rational& q) {
    if (n < 2) throw std::invalid_argument("top-or-bottom operator needs n >= 2");
    CppSpec s;
    s.n = n;
    s.terms.push_back({{1, n - 1}, q});
    s.terms.push_back({{n - 1, 1}, Rational(1) - q});
    return normalize_spec(s);
}

class EigenvectorError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

namespace detail {

// Sub-multisets of `content` with total size k, as content vectors.
inline void sub_contents(const std::vector<int>& content, int k, std::size_t i, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
    if (i == content.size()) {
        if (k == 0) out.push_back(cur);
        return;
    }
    for (int take = std::min(k, content[i]); take >= 0; --take) {
        cur[i] = take;
        sub_contents(content, k - take, i + 1, cur, out);
    }
    cur[i] = 0;
}

inline Word word_of_content(const std::vector<int>& content) {
    Word w;
    for (std::size_t i = 0; i < content.size(); ++i)
        for (int r = 0; r < content[i]; ++r) w.letters.push_back(static_cast<int>(i));
    return w;
}

inline std::string content_string(const Alphabet& abc, const std::vector<int>& content) {
    return abc.encode(word_of_content(content));
}

}  // namespace detail

/// Primitive bases of the free associative algebra for every content below
/// `cap` of total degree >= 2, keyed by content.
inline std::map<std::vector<int>, std::vector<LinComb<Word>>> primitive_bases_by_content(
    const FreeAssociativeAlgebra& fa, const std::vector<int>& cap) {
    std::map<std::vector<int>, std::vector<LinComb<Word>>> out;
    for (const auto& v : detail::box(cap)) {
        if (detail::total_degree(v) < 2) continue;
        auto basis = primitive_basis(fa, fa.deck_states(detail::word_of_content(v)));
        if (!basis.empty()) out.emplace(v, std::move(basis));
    }
    return out;
}

/// E_j for the words with letter content `content`: one vector per multiset of
/// j letters and multiset of higher primitives filling the rest. Each output is
/// checked against the top-or-bottom(q) operator with eigenvalue j/n.
inline std::vector<Eigenvector> build_E_j(const FreeAssociativeAlgebra& fa, const std::vector<int>& content, int j,
                                          const Rational& q) {
    const int n = detail::total_degree(content);
    if (j < 0 || j > n) throw std::invalid_argument("build_E_j: j out of range");
    if (q.sign() < 0 || q > Rational(1)) throw std::invalid_argument("build_E_j: q must lie in [0,1]");
    const Alphabet& abc = fa.alphabet();
    const auto bases = primitive_bases_by_content(fa, content);
    const CppSpec op = top_or_bottom_spec(n, q);
    const Rational beta = beta_n(op);
    const Rational target(j, n);

    // flatten higher primitives into an indexed list
    struct Prim {
        std::vector<int> content;
        std::size_t index;
        const LinComb<Word>* vec;
    };
    std::vector<Prim> prims;
    for (const auto& [v, list] : bases)
        for (std::size_t i = 0; i < list.size(); ++i) prims.push_back({v, i, &list[i]});

    std::vector<Eigenvector> out;
    std::vector<std::vector<int>> letter_choices;
    std::vector<int> cur(content.size(), 0);
    detail::sub_contents(content, j, 0, cur, letter_choices);

    for (const auto& letters : letter_choices) {
        std::vector<int> rest(content.size());
        for (std::size_t i = 0; i < content.size(); ++i) rest[i] = content[i] - letters[i];

        // multisets of prims (non-increasing index) with contents summing to rest
        std::vector<std::size_t> chosen;
        std::function<void(std::vector<int>&, std::size_t)> fill = [&](std::vector<int>& left, std::size_t max_i) {
            if (detail::total_degree(left) == 0) {
                // P = sum over orderings of the chosen primitives
                LinComb<Word> middle;
                auto order = chosen;
                std::sort(order.begin(), order.end());
                do {
                    LinComb<Word> acc(Word{});
                    for (auto i : order) acc = product(fa, acc, *prims[i].vec);
                    middle.add(acc);
                } while (std::next_permutation(order.begin(), order.end()));

                Word letter_word = detail::word_of_content(letters);
                LinComb<Word> v;
                auto sigma = letter_word.letters;
                std::sort(sigma.begin(), sigma.end());
                Integer repeats(1);
                for (int c : letters) repeats *= factorial(static_cast<unsigned>(c));
                do {
                    for (int i = 0; i <= j; ++i) {
                        Rational w = Rational(binomial(j, i)) * pow(q, static_cast<unsigned>(i)) *
                                     pow(Rational(1) - q, static_cast<unsigned>(j - i));
                        if (w.is_zero()) continue;
                        Word head, tail;
                        head.letters.assign(sigma.begin(), sigma.begin() + i);
                        tail.letters.assign(sigma.begin() + i, sigma.end());
                        v.add(product(fa, product(fa, LinComb<Word>(head), middle), LinComb<Word>(tail)), w);
                    }
                } while (std::next_permutation(sigma.begin(), sigma.end()));
                v *= Rational(repeats);

                Eigenvector ev;
                ev.vector = std::move(v);
                ev.eigenvalue = target;
                ev.j = j;
                for (int l : letter_word.letters) ev.letters.push_back(abc.label(l));
                for (auto i : chosen)
                    ev.primitives.push_back(detail::content_string(abc, prims[i].content) + "#" +
                                            std::to_string(prims[i].index));
                auto image = apply_cpp(fa, ev.vector, op);
                image *= Rational(1) / beta;
                if (ev.vector.empty() || !(image == ev.vector * target)) {
                    std::string what = "eigen-equation fails for letters {";
                    for (const auto& l : ev.letters) what += l;
                    what += "} primitives {";
                    for (const auto& p : ev.primitives) what += p + " ";
                    throw EigenvectorError(what + "}");
                }
                out.push_back(std::move(ev));
                return;
            }
            for (std::size_t i = max_i + 1; i-- > 0;) {
                const auto& pc = prims[i].content;
                bool fits = true;
                for (std::size_t k = 0; k < left.size(); ++k) fits = fits && left[k] >= pc[k];
                if (!fits) continue;
                for (std::size_t k = 0; k < left.size(); ++k) left[k] -= pc[k];
                chosen.push_back(i);
                fill(left, i);
                chosen.pop_back();
                for (std::size_t k = 0; k < left.size(); ++k) left[k] += pc[k];
            }
        };
        if (detail::total_degree(rest) == 0 || !prims.empty()) fill(rest, prims.empty() ? 0 : prims.size() - 1);
    }
    return out;
}

/// Rank of the coefficient vectors over `states`.
inline std::size_t span_dimension(const std::vector<Eigenvector>& vs, const std::vector<Word>& states) {
    std::map<Word, std::size_t> col;
    for (std::size_t i = 0; i < states.size(); ++i) col[states[i]] = i;
    RatMatrix m(vs.size(), states.size());
    for (std::size_t r = 0; r < vs.size(); ++r)
        for (const auto& [w, c] : vs[r].vector) m(r, col.at(w)) = c;
    return rank(m);
}

struct EigenCheck {
    std::size_t checked = 0;
    std::size_t failed = 0;
    std::vector<std::string> failures;
    bool ok() const { return failed == 0; }
};

/// Each v must satisfy (1/beta_n) op(v) = expected(v) * v.
inline EigenCheck check_eigen_equation(const FreeAssociativeAlgebra& fa, const std::vector<Eigenvector>& vs,
                                       const CppSpec& op, const std::function<Rational(const Eigenvector&)>& expected) {
    EigenCheck rep;
    const Rational beta = beta_n(normalize_spec(op));
    for (const auto& v : vs) {
        ++rep.checked;
        auto image = apply_cpp(fa, v.vector, op);
        image *= Rational(1) / beta;
        if (!(image == v.vector * expected(v))) {
            ++rep.failed;
            std::string what = "j=" + std::to_string(v.j) + " letters {";
            for (const auto& l : v.letters) what += l;
            rep.failures.push_back(what + "}");
        }
    }
    return rep;
}

/// Proj_1^{*m} * id at degree n: the single composition (1^m, n-m).
inline CppSpec proj1_power_spec(int n, int m) {
    if (m < 1 || m > n) throw std::invalid_argument("proj1_power_spec: need 1 <= m <= n");
    CppSpec s;
    s.n = n;
    Composition d(static_cast<std::size_t>(m), 1);
    if (n - m > 0) d.push_back(n - m);
    s.terms.push_back({d, Rational(1)});
    return normalize_spec(s);
}

/// Vectors built with q = 1 are eigenvectors of Proj_1^{*m} * id with
/// eigenvalue C(j,m)/C(n,m).
inline EigenCheck polynomial_eigenvalue_check(const FreeAssociativeAlgebra& fa, const std::vector<Eigenvector>& vs,
                                              int n, int m) {
    return check_eigen_equation(fa, vs, proj1_power_spec(n, m), [&](const Eigenvector& v) {
        return Rational(binomial(v.j, m)) / Rational(binomial(n, m));
    });
}

}  // namespace hopf

#endif  // HOPF_SPECTRAL_HPP
