#ifndef HOPF_VERIFY_HPP
#define HOPF_VERIFY_HPP

// The desk-scale acceptance suite: ten criteria, each returning a status line
// plus details. Shared by the acceptance test binary and `hopfchain verify`.

#include "hopf/algebra.hpp"
#include "hopf/chain.hpp"
#include "hopf/forest.hpp"
#include "hopf/presets.hpp"
#include "hopf/shuffle.hpp"
#include "hopf/simulate.hpp"
#include "hopf/spectral.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace hopf::acceptance {

// Pinned tolerances and sizes.
inline constexpr double kSigmaFlag = 3.0;
inline constexpr double kSigmaFail = 4.0;
inline constexpr double kChiSquareZ = 3.0902;  // normal 0.999 quantile
inline constexpr long kDraws = 100000;
inline constexpr std::uint64_t kSeed = 20240611;
inline constexpr double kLimitStructure = 60.0;
inline constexpr double kLimitSpectrum = 300.0;
inline constexpr double kLimitSimulation = 300.0;

enum class Status { pass, flag, fail };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::pass: return "PASS";
        case Status::flag: return "FLAG";
        case Status::fail: return "FAIL";
    }
    return "?";
}

struct CriterionResult {
    int id = 0;
    std::string title;
    Status status = Status::pass;
    std::string summary;
    std::vector<std::string> details;
    double seconds = 0;

    void fail(const std::string& why) {
        status = Status::fail;
        details.push_back("FAIL " + why);
    }
    void flag(const std::string& why) {
        if (status == Status::pass) status = Status::flag;
        details.push_back("FLAG " + why);
    }
    void note(const std::string& what) { details.push_back(what); }
};

inline std::string format_line(const CriterionResult& r) {
    std::ostringstream os;
    os << "criterion " << r.id << ": " << to_string(r.status) << "  " << r.title;
    if (!r.summary.empty()) os << "  [" << r.summary << "]";
    os << "  (" << std::fixed;
    os.precision(1);
    os << r.seconds << "s)";
    return os.str();
}

// Grid ---------------------------------------------------------------------

struct PresetCall {
    std::string name;
    std::vector<Rational> params;
    std::string label() const {
        std::string s = name + "(";
        for (std::size_t i = 0; i < params.size(); ++i) s += (i ? "," : "") + params[i].str();
        return s + ")";
    }
};

inline std::vector<PresetCall> grid_presets() {
    return {{"riffle", {Rational(2)}},
            {"riffle", {Rational(3)}},
            {"biased", {Rational(1, 3)}},
            {"top-m-ordered", {Rational(2)}},
            {"top-m-unordered", {Rational(2)}},
            {"top-or-bottom", {Rational(1, 2)}},
            {"trinomial", {Rational(1, 4), Rational(1, 2), Rational(1, 4)}}};
}

struct ShuffleSpace {
    std::string name;
    std::shared_ptr<ShuffleAlgebra> alg;
    std::vector<Word> states;
    std::vector<int> content;
    int n = 0;
};

inline ShuffleSpace distinct_space(int n) {
    ShuffleSpace s;
    s.name = "shuffle distinct n=" + std::to_string(n);
    s.alg = std::make_shared<ShuffleAlgebra>(Alphabet::distinct(n));
    Word start;
    for (int i = 0; i < n; ++i) start.letters.push_back(i);
    s.states = s.alg->deck_states(start);
    s.content.assign(static_cast<std::size_t>(n), 1);
    s.n = n;
    return s;
}

inline ShuffleSpace deck_space(const std::string& deck) {
    ShuffleSpace s;
    s.name = "shuffle deck " + deck;
    s.alg = std::make_shared<ShuffleAlgebra>(Alphabet::from_deck(deck));
    const Word w = s.alg->parse(deck);
    s.states = s.alg->deck_states(w);
    s.content = content(w, s.alg->alphabet().size());
    s.n = static_cast<int>(deck.size());
    return s;
}

struct ForestSpace {
    std::string name;
    ForestAlgebra alg;
    std::vector<Forest> states;
    int n = 0;
};

inline ForestSpace forest_space(int n) {
    ForestSpace s;
    s.name = "forests n=" + std::to_string(n);
    s.states = s.alg.basis(n);
    s.n = n;
    return s;
}

template <class Space, class Key>
struct Cell {
    const Space* space;
    PresetCall preset;
    CppSpec spec;
    TransitionMatrix<Key> matrix;
    std::string label() const { return space->name + " / " + preset.label(); }
};

struct Grid {
    std::vector<ShuffleSpace> shuffle_spaces;
    std::vector<ForestSpace> forest_spaces;
    std::vector<Cell<ShuffleSpace, Word>> shuffle_cells;
    std::vector<Cell<ForestSpace, Forest>> forest_cells;
    std::vector<std::string> build_errors;
};

/// Builds every (preset, state space) matrix once. Failures to build, including
/// a row that does not sum to 1, are recorded rather than thrown.
inline Grid build_grid() {
    Grid g;
    for (int n : {3, 4, 5}) g.shuffle_spaces.push_back(distinct_space(n));
    g.shuffle_spaces.push_back(deck_space("aabb"));
    for (int n : {3, 4}) g.forest_spaces.push_back(forest_space(n));
    for (const auto& space : g.shuffle_spaces)
        for (const auto& p : grid_presets()) {
            try {
                CppSpec spec = expand_preset(p.name, p.params, space.n);
                auto k = build_transition_matrix(*space.alg, spec, space.states);
                g.shuffle_cells.push_back({&space, p, spec, std::move(k)});
            } catch (const std::exception& e) {
                g.build_errors.push_back(space.name + " / " + p.label() + ": " + e.what());
            }
        }
    for (const auto& space : g.forest_spaces)
        for (const auto& p : grid_presets()) {
            try {
                CppSpec spec = expand_preset(p.name, p.params, space.n);
                auto k = build_transition_matrix(space.alg, spec, space.states);
                g.forest_cells.push_back({&space, p, spec, std::move(k)});
            } catch (const std::exception& e) {
                g.build_errors.push_back(space.name + " / " + p.label() + ": " + e.what());
            }
        }
    return g;
}

namespace detail {

inline std::string spectrum_string(const std::map<Rational, Integer>& m) {
    std::string s = "{";
    bool first = true;
    for (auto it = m.rbegin(); it != m.rend(); ++it) {
        s += (first ? "" : ", ") + it->first.str() + ":" + it->second.get_str();
        first = false;
    }
    return s + "}";
}

inline std::map<Rational, Integer> matrix_spectrum(const RatMatrix& k, const std::vector<Rational>& candidates) {
    std::map<Rational, Integer> out;
    for (const auto& lam : candidates) {
        const std::size_t dim = k.rows() - rank(k.shifted(lam));
        if (dim) out[lam] = Integer(static_cast<unsigned long>(dim));
    }
    return out;
}

// Number of permutations of n with exactly f fixed points.
inline Integer permutations_with_fixed_points(int n, int f) {
    std::vector<Integer> d{Integer(1), Integer(0)};  // derangement counts
    for (int m = 2; m <= n; ++m) d.push_back(Integer(m - 1) * (d[static_cast<std::size_t>(m - 1)] + d[static_cast<std::size_t>(m - 2)]));
    if (f < 0 || f > n) return Integer(0);
    return binomial(n, f) * d[static_cast<std::size_t>(n - f)];
}

template <class Fn>
CriterionResult timed(int id, const std::string& title, Fn&& body, double limit_seconds = 0) {
    CriterionResult r;
    r.id = id;
    r.title = title;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(r);
    } catch (const std::exception& e) {
        r.fail(std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_seconds > 0 && r.seconds > limit_seconds)
        r.fail("runtime " + std::to_string(r.seconds) + " s over the " + std::to_string(limit_seconds) + " s limit");
    return r;
}

inline std::string descent_label(const Word& w) {
    std::string s;
    for (int i : descent_peak_sets(w).descents) s += std::to_string(i) + ".";
    return s;
}

}  // namespace detail

// Criteria -------------------------------------------------------------------

/// State space axioms, bialgebra compatibility, coassociativity, degrees <= 5.
inline CriterionResult criterion_1() {
    return detail::timed(1, "structure axioms", [](CriterionResult& r) {
        const int n_max = 5;
        long checks = 0;
        auto run = [&](const auto& alg, const std::string& name) {
            using Key = typename std::decay_t<decltype(alg)>::Key;
            for (const auto& v : check_state_space_basis(alg, n_max)) r.fail(name + ": " + v);
            std::vector<std::vector<Key>> by_degree;
            for (int d = 0; d <= n_max; ++d) by_degree.push_back(alg.basis(d));
            for (int d = 0; d <= n_max; ++d)
                for (const auto& x : by_degree[static_cast<std::size_t>(d)]) {
                    // (id (x) Delta) Delta == (Delta (x) id) Delta
                    TensorComb<Key> right, left;
                    for (const auto& [legs, c] : alg.coproduct(x)) {
                        for (const auto& [l2, c2] : alg.coproduct(legs[1])) right.add({legs[0], l2[0], l2[1]}, c * c2);
                        for (const auto& [l2, c2] : alg.coproduct(legs[0])) left.add({l2[0], l2[1], legs[1]}, c * c2);
                    }
                    ++checks;
                    if (!(left == right)) r.fail(name + ": coassociativity fails at " + alg.encode(x));
                }
            for (int i = 0; i <= n_max; ++i)
                for (int j = 0; i + j <= n_max; ++j)
                    for (const auto& w : by_degree[static_cast<std::size_t>(i)])
                        for (const auto& z : by_degree[static_cast<std::size_t>(j)]) {
                            ++checks;
                            auto lhs = coproduct(alg, alg.product(w, z));
                            auto rhs = tensor_square_product(alg, alg.coproduct(w), alg.coproduct(z));
                            if (!(lhs == rhs))
                                r.fail(name + ": compatibility fails at " + alg.encode(w) + " * " + alg.encode(z));
                        }
        };
        run(ShuffleAlgebra(Alphabet::from_deck("abc")), "shuffle{a,b,c}");
        run(FreeAssociativeAlgebra(Alphabet::from_deck("ab")), "free-associative{a,b}");
        run(ForestAlgebra(), "forests");
        r.summary = std::to_string(checks) + " coassociativity/compatibility checks, degrees <= 5";
    }, kLimitStructure);
}

/// Every grid matrix is row-stochastic with non-negative entries; the Doob
/// identity sum_y c_xy eta(y) = beta eta(x) holds row by row.
inline CriterionResult criterion_2(const Grid& g) {
    return detail::timed(2, "row-stochasticity / Doob identity", [&](CriterionResult& r) {
        for (const auto& e : g.build_errors) r.fail(e);
        std::size_t rows = 0;
        auto check = [&](const auto& cell) {
            const auto& k = cell.matrix;
            for (std::size_t i = 0; i < k.size(); ++i) {
                Rational sum;
                for (std::size_t j = 0; j < k.size(); ++j) {
                    if (k.kernel(i, j).sign() < 0) r.fail(cell.label() + ": negative entry in row " + k.labels[i]);
                    sum += k.kernel(i, j);
                }
                ++rows;
                if (sum != Rational(1)) r.fail(cell.label() + ": row " + k.labels[i] + " sums to " + sum.str());
            }
        };
        for (const auto& c : g.shuffle_cells) check(c);
        for (const auto& c : g.forest_cells) check(c);
        r.summary = std::to_string(g.shuffle_cells.size() + g.forest_cells.size()) + " matrices, " +
                    std::to_string(rows) + " rows";
    });
}

/// Formula spectrum against rank-derived eigenspace dimensions and the
/// annihilation product.
inline CriterionResult criterion_3(const Grid& g) {
    return detail::timed(3, "spectrum vs matrix", [&](CriterionResult& r) {
        std::size_t verified = 0;
        auto check = [&](const auto& cell, const GradedProfile& profile) {
            const Spectrum s = spectrum(cell.spec, profile);
            const SpectrumReport rep = verify_spectrum(cell.matrix.kernel, s);
            ++verified;
            if (rep.claimed_total != static_cast<unsigned long>(rep.states))
                r.fail(cell.label() + ": multiplicities sum to " + rep.claimed_total.get_str() + ", states " +
                       std::to_string(rep.states));
            for (const auto& e : rep.eigenspaces)
                if (e.claimed != static_cast<unsigned long>(e.actual))
                    r.fail(cell.label() + ": eigenvalue " + e.eigenvalue.str() + " claimed " + e.claimed.get_str() +
                           ", matrix " + std::to_string(e.actual));
            if (!rep.annihilated) r.fail(cell.label() + ": product of (K - lambda I) does not vanish");
        };
        for (const auto& c : g.shuffle_cells) check(c, content_profile(c.space->content));
        for (const auto& c : g.forest_cells) check(c, degree_profile(c.space->alg, c.space->n));

        // named spectra
        auto named = [&](int n, const std::string& preset, std::vector<Rational> params,
                         const std::map<Rational, Integer>& expected) {
            auto space = distinct_space(n);
            auto spec = expand_preset(preset, params, n);
            auto k = build_transition_matrix(*space.alg, spec, space.states);
            auto formula = spectrum(spec, content_profile(space.content)).by_eigenvalue();
            std::vector<Rational> candidates;
            for (const auto& pe : eigenvalues(spec)) candidates.push_back(pe.eigenvalue);
            auto actual = detail::matrix_spectrum(k.kernel, candidates);
            const std::string what = preset + " distinct n=" + std::to_string(n);
            if (formula != expected) r.fail(what + ": formula spectrum " + detail::spectrum_string(formula));
            if (actual != expected) r.fail(what + ": matrix spectrum " + detail::spectrum_string(actual));
            r.note(what + ": matrix spectrum " + detail::spectrum_string(actual));
            return actual;
        };
        auto ttr = named(4, "top-to-random", {},
                         {{Rational(1), Integer(1)}, {Rational(1, 2), Integer(6)}, {Rational(1, 4), Integer(8)},
                          {Rational(0), Integer(9)}});
        named(3, "riffle", {Rational(2)},
              {{Rational(1), Integer(1)}, {Rational(1, 2), Integer(3)}, {Rational(1, 4), Integer(2)}});

        // which fixed-point phrasing the top-to-random matrix confirms
        bool exactly = true, complement = true;
        for (int j = 0; j <= 4; ++j) {
            Integer m = ttr.count(Rational(j, 4)) ? ttr[Rational(j, 4)] : Integer(0);
            exactly = exactly && m == detail::permutations_with_fixed_points(4, j);
            complement = complement && m == detail::permutations_with_fixed_points(4, 4 - j);
        }
        r.note(std::string("top-to-random multiplicity of j/n = #permutations with exactly j fixed points: ") +
               (exactly ? "confirmed" : "refuted") + "; with n-j fixed points: " + (complement ? "confirmed" : "refuted"));
        r.summary = std::to_string(verified) + " grid matrices";
    }, kLimitSpectrum);
}

/// Stationary distributions are fixed by every grid kernel at their degree.
inline CriterionResult criterion_4(const Grid& g) {
    return detail::timed(4, "stationary distributions", [&](CriterionResult& r) {
        std::size_t fixed_checks = 0;
        auto independent = [&](const std::vector<StationaryDistribution>& pis, const std::string& where) {
            if (pis.empty()) {
                r.fail(where + ": no stationary distribution returned");
                return;
            }
            RatMatrix m(pis.size(), pis.front().weights.size());
            for (std::size_t i = 0; i < pis.size(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = pis[i].weights[j];
            if (rank(m) != pis.size()) r.fail(where + ": stationary distributions are linearly dependent");
        };
        for (const auto& space : g.shuffle_spaces) {
            auto pis = stationary_distributions(*space.alg, space.states);
            independent(pis, space.name);
            if (space.name.find("distinct") != std::string::npos) {
                const Rational u = Rational(1) / Rational(factorial(static_cast<unsigned>(space.n)));
                for (const auto& pi : pis)
                    for (const auto& w : pi.weights)
                        if (w != u) r.fail(space.name + ": stationary distribution is not uniform");
            }
            for (const auto& c : g.shuffle_cells) {
                if (c.space != &space) continue;
                for (const auto& pi : pis) {
                    ++fixed_checks;
                    if (!is_stationary(c.matrix, pi.weights)) r.fail(c.label() + ": pi K != pi");
                }
            }
        }
        for (const auto& space : g.forest_spaces) {
            auto pis = stationary_distributions(space.alg, space.states);
            independent(pis, space.name);
            for (const auto& c : g.forest_cells) {
                if (c.space != &space) continue;
                for (const auto& pi : pis) {
                    ++fixed_checks;
                    if (!is_stationary(c.matrix, pi.weights)) r.fail(c.label() + ": pi K != pi");
                }
            }
        }
        // all words over {a,b} at n=3: one distribution per letter content
        ShuffleAlgebra ab(Alphabet::from_deck("ab"));
        auto words = ab.basis(3);
        auto pis = stationary_distributions(ab, words);
        if (pis.size() != 4) r.fail("all words over {a,b}, n=3: expected 4 distributions, got " + std::to_string(pis.size()));
        independent(pis, "all words over {a,b}, n=3");
        for (const auto& p : grid_presets()) {
            auto k = build_transition_matrix(ab, expand_preset(p.name, p.params, 3), words);
            for (const auto& pi : pis) {
                ++fixed_checks;
                if (!is_stationary(k, pi.weights)) r.fail("all words over {a,b} / " + p.label() + ": pi K != pi");
            }
        }
        r.summary = std::to_string(fixed_checks) + " fixed-point checks";
    });
}

/// Weighted descents and peaks under top-or-bottom(q) from the ascending deck.
inline CriterionResult criterion_5() {
    return detail::timed(5, "weighted descent/peak expectations", [](CriterionResult& r) {
        std::size_t checks = 0;
        for (int n : {4, 5}) {
            auto space = distinct_space(n);
            const Word start = space.states.front();
            for (const Rational& q : {Rational(0), Rational(1, 3), Rational(1, 2), Rational(1)}) {
                auto k = build_transition_matrix(*space.alg, expand_preset("top-or-bottom", {q}, n), space.states);
                const auto d0 = point_mass(k, start);
                auto des = expectation_series<Word>(k, d0, 6, [&](const Word& w) { return weighted_descent_stat(w, q); });
                auto pk = expectation_series<Word>(k, d0, 6, [&](const Word& w) { return weighted_peak_stat(w, q); });
                for (unsigned t = 0; t <= 6; ++t) {
                    const Rational want_d = (Rational(1) - pow(Rational(n - 2, n), t)) / Rational(2);
                    const Rational want_p = (Rational(1) - pow(Rational(n - 3, n), t)) / Rational(3);
                    checks += 2;
                    const std::string at = "n=" + std::to_string(n) + " q=" + q.str() + " t=" + std::to_string(t);
                    if (des[t] != want_d) r.fail(at + ": descents " + des[t].str() + " != " + want_d.str());
                    if (pk[t] != want_p) r.fail(at + ": peaks " + pk[t].str() + " != " + want_p.str());
                }
            }
        }
        r.summary = std::to_string(checks) + " exact identities";
    });
}

/// Descent and peak counts under a-handed riffles.
inline CriterionResult criterion_6() {
    return detail::timed(6, "riffle descent/peak counts", [](CriterionResult& r) {
        std::size_t checks = 0;
        for (int a : {2, 3})
            for (int n : {4, 5}) {
                auto space = distinct_space(n);
                auto k = build_transition_matrix(*space.alg, expand_preset("riffle", {Rational(a)}, n), space.states);
                const auto d0 = point_mass(k, space.states.front());
                auto des = expectation_series<Word>(k, d0, 4, [](const Word& w) { return Rational(descent_count(w)); });
                auto pk = expectation_series<Word>(k, d0, 4, [](const Word& w) { return Rational(peak_count(w)); });
                for (unsigned t = 0; t <= 4; ++t) {
                    const Rational want_d = (Rational(1) - pow(Rational(1, a), t)) * Rational(n - 1, 2);
                    const Rational want_p = (Rational(1) - pow(Rational(1, a), 2 * t)) * Rational(n - 2, 3);
                    checks += 2;
                    const std::string at = "a=" + std::to_string(a) + " n=" + std::to_string(n) + " t=" + std::to_string(t);
                    if (des[t] != want_d) r.fail(at + ": descents " + des[t].str() + " != " + want_d.str());
                    if (pk[t] != want_p) r.fail(at + ": peaks " + pk[t].str() + " != " + want_p.str());
                }
            }
        r.summary = std::to_string(checks) + " exact identities";
    });
}

/// Eigenvector families on the free associative algebra.
inline CriterionResult criterion_7() {
    return detail::timed(7, "eigenvector families E_j", [](CriterionResult& r) {
        std::size_t vectors = 0, tri_checked = 0, tri_failed = 0, tri_complement_ok = 0;
        const std::vector<std::vector<Rational>> trinomials{{Rational(1, 4), Rational(1, 2), Rational(1, 4)},
                                                            {Rational(1, 2), Rational(1, 4), Rational(1, 4)},
                                                            {Rational(1, 3), Rational(1, 3), Rational(1, 3)}};
        for (int n = 2; n <= 4; ++n) {
            FreeAssociativeAlgebra fa(Alphabet::distinct(n));
            const std::vector<int> content(static_cast<std::size_t>(n), 1);
            Word start;
            for (int i = 0; i < n; ++i) start.letters.push_back(i);
            const auto states = fa.deck_states(start);
            ShuffleAlgebra sh(Alphabet::distinct(n));

            auto family = [&](const Rational& q) {
                std::vector<Eigenvector> all;
                for (int j = 0; j <= n; ++j) {
                    auto e = build_E_j(fa, content, j, q);  // throws on a failed eigen-equation
                    if (j == n - 1 && !e.empty())
                        r.fail("n=" + std::to_string(n) + ": E_{n-1} has " + std::to_string(e.size()) + " vectors");
                    all.insert(all.end(), e.begin(), e.end());
                }
                return all;
            };

            for (const Rational& q : {Rational(0), Rational(1, 3), Rational(1)}) {
                auto all = family(q);
                vectors += all.size();
                const std::string at = "n=" + std::to_string(n) + " q=" + q.str();
                const Integer nfact = factorial(static_cast<unsigned>(n));
                if (Integer(static_cast<unsigned long>(all.size())) != nfact)
                    r.fail(at + ": " + std::to_string(all.size()) + " vectors, expected " + nfact.get_str());
                if (span_dimension(all, states) != all.size()) r.fail(at + ": vectors are linearly dependent");

                // right eigenfunctions of the shuffle chain: f(x) = coefficient of x
                auto k = build_transition_matrix(sh, top_or_bottom_spec(n, q), states);
                for (const auto& v : all) {
                    std::vector<Rational> f(states.size());
                    for (std::size_t i = 0; i < states.size(); ++i) f[i] = v.vector.coefficient(states[i]);
                    auto kf = mat_vec(k.kernel, f);
                    for (std::size_t i = 0; i < f.size(); ++i)
                        if (kf[i] != v.eigenvalue * f[i]) {
                            r.fail(at + ": K f != (j/n) f for j=" + std::to_string(v.j));
                            break;
                        }
                }

                if (q == Rational(1) && n >= 2) {
                    auto pc = polynomial_eigenvalue_check(fa, all, n, 2);
                    for (const auto& f : pc.failures) r.fail(at + ": Proj_1^{*2}*id eigenvalue fails at " + f);
                }
            }

            for (const auto& tq : trinomials) {
                const Rational q = tq[0] / (tq[0] + tq[2]);
                auto all = family(q);
                const CppSpec tri = expand_preset("trinomial", tq, n);
                auto claimed = check_eigen_equation(fa, all, tri, [&](const Eigenvector& v) {
                    return pow(tq[1], static_cast<unsigned>(v.j));
                });
                auto complement = check_eigen_equation(fa, all, tri, [&](const Eigenvector& v) {
                    return pow(tq[1], static_cast<unsigned>(n - v.j));
                });
                tri_checked += claimed.checked;
                tri_failed += claimed.failed;
                if (complement.ok()) ++tri_complement_ok;
                if (!claimed.ok()) {
                    std::string js;
                    for (const auto& f : claimed.failures) js += (js.empty() ? "" : ", ") + f;
                    r.fail("trinomial(" + tq[0].str() + "," + tq[1].str() + "," + tq[2].str() + ") n=" +
                           std::to_string(n) + ": eigenvalue q2^j fails on " + std::to_string(claimed.failed) + "/" +
                           std::to_string(claimed.checked) + " vectors (" + js + ")");
                }
            }
        }
        r.details.insert(r.details.begin(), "diagnostic: trinomial eigenvalue q2^(n-j) holds on all vectors for " +
                                                std::to_string(tri_complement_ok) + " of 9 (n, parameter) cases");
        r.summary = std::to_string(vectors) + " vectors; trinomial q2^j: " + std::to_string(tri_checked - tri_failed) +
                    "/" + std::to_string(tri_checked) + " hold";
    });
}

/// The descent set lumps every grid shuffle chain on distinct decks n=4,5.
inline CriterionResult criterion_8(const Grid& g) {
    return detail::timed(8, "descent-set lumping", [&](CriterionResult& r) {
        std::size_t checked = 0;
        for (const auto& c : g.shuffle_cells) {
            if (c.space->name.find("distinct") == std::string::npos || c.space->n < 4) continue;
            auto res = lumping_check<Word>(c.matrix, detail::descent_label);
            ++checked;
            if (!res.lumpable) {
                const auto& w = *res.witness;
                r.fail(c.label() + ": " + w.state_a + " sends " + w.mass_a.str() + " to class {" + w.target_class +
                       "}, " + w.state_b + " sends " + w.mass_b.str());
            } else if (res.classes.size() > (std::size_t{1} << (c.space->n - 1))) {
                r.fail(c.label() + ": quotient has too many states");
            }
        }
        r.summary = std::to_string(checked) + " chains";
    });
}

/// Decay bound for f_j on forests under trinomial chains.
inline CriterionResult criterion_9() {
    return detail::timed(9, "forest f_j bound", [](CriterionResult& r) {
        const std::vector<std::vector<Rational>> params{{Rational(1, 4), Rational(1, 2), Rational(1, 4)},
                                                        {Rational(1, 2), Rational(1, 4), Rational(1, 4)},
                                                        {Rational(1, 3), Rational(1, 3), Rational(1, 3)}};
        ForestAlgebra fa;
        std::size_t checked = 0, failed = 0, vacuous = 0, unweighted_failed = 0, unweighted_checked = 0;
        double worst = 0;
        std::string worst_at;
        for (int n = 2; n <= 5; ++n) {
            const auto states = fa.basis(n);
            for (const auto& tq : params) {
                auto k = build_transition_matrix(fa, expand_preset("trinomial", tq, n), states);
                for (const auto& x0 : states) {
                    if (!x0.is_tree()) continue;
                    const auto info = vertex_stats(x0);
                    for (int j : {2, 3}) {
                        Integer max_factor(0);
                        bool any = false;
                        for (const auto& v : info)
                            if (v.desc >= j) {
                                any = true;
                                max_factor = std::max(max_factor, binomial(v.component, v.anc - 1));
                            }
                        auto stat = [&](const Forest& f) { return f_j_statistic(f, j, tq[0], tq[2]); };
                        auto plain = [&](const Forest& f) { return f_j_statistic(f, j, Rational(1), Rational(1)); };
                        auto series = expectation_series<Forest>(k, point_mass(k, x0), 4, stat);
                        auto plain_series = expectation_series<Forest>(k, point_mass(k, x0), 4, plain);
                        for (unsigned t = 0; t <= 4; ++t) {
                            if (!any) {
                                ++vacuous;
                                if (!series[t].is_zero())
                                    r.fail("vacuous case " + x0.encoding() + " has nonzero expectation");
                                continue;
                            }
                            const Rational decay = pow(tq[1], static_cast<unsigned>(j) * t);
                            const Rational bound = decay * stat(x0) * Rational(max_factor);
                            const Rational plain_bound = decay * plain(x0) * Rational(max_factor);
                            ++checked;
                            ++unweighted_checked;
                            if (plain_series[t] > plain_bound) ++unweighted_failed;
                            if (series[t] > bound) {
                                ++failed;
                                const double ratio = (series[t] / bound).to_double();
                                if (ratio > worst) {
                                    worst = ratio;
                                    worst_at = x0.encoding() + " j=" + std::to_string(j) + " t=" + std::to_string(t) +
                                               " q=(" + tq[0].str() + "," + tq[1].str() + "," + tq[2].str() +
                                               "): E=" + series[t].str() + " > bound " + bound.str();
                                }
                            }
                        }
                    }
                }
            }
        }
        if (failed) {
            r.fail(std::to_string(failed) + " of " + std::to_string(checked) + " bounds violated; worst " + worst_at);
        }
        if (vacuous) r.flag(std::to_string(vacuous) + " vacuous cases (no vertex with desc >= j), not counted as passes");
        r.note("diagnostic: with q1 = q3 = 1 in f_j and its bound, " + std::to_string(unweighted_failed) + " of " +
               std::to_string(unweighted_checked) + " bounds are violated");
        r.summary = std::to_string(checked - failed) + "/" + std::to_string(checked) + " bounds hold, " +
                    std::to_string(vacuous) + " vacuous";
    });
}

/// Simulation against exact rows and exact expectations; determinism.
inline CriterionResult criterion_10() {
    return detail::timed(10, "simulation consistency", [](CriterionResult& r) {
        auto space = distinct_space(4);
        std::size_t rows = 0, flagged = 0;
        const std::vector<std::string> from{"1234", "3142"};
        std::uint64_t stream = 0;
        for (const auto& p : grid_presets()) {
            const CppSpec spec = expand_preset(p.name, p.params, 4);
            auto k = build_transition_matrix(*space.alg, spec, space.states);
            DeckStepper stepper(spec);
            std::function<Word(const Word&, RngStream&)> step = [&](const Word& w, RngStream& rng) { return stepper(w, rng); };
            for (const auto& f : from) {
                RngStream rng(kSeed, stream++);
                auto rc = empirical_row_check<Word>(k, space.alg->parse(f), kDraws, step, rng);
                ++rows;
                const std::string at = p.label() + " row " + f;
                if (rc.stray) r.fail(at + ": " + std::to_string(rc.stray) + " draws on impossible states");
                if (rc.max_abs_z > kSigmaFail) r.fail(at + ": max |z| = " + std::to_string(rc.max_abs_z));
                else if (rc.max_abs_z > kSigmaFlag) {
                    ++flagged;
                    r.flag(at + ": max |z| = " + std::to_string(rc.max_abs_z));
                }
                const double limit = chi_square_quantile(rc.degrees_of_freedom, kChiSquareZ);
                if (rc.chi_square > limit)
                    r.fail(at + ": chi-square " + std::to_string(rc.chi_square) + " above 0.999 quantile " +
                           std::to_string(limit));
            }
        }

        // Monte Carlo means against exact expectations
        std::size_t means = 0;
        auto compare = [&](const TrajectoryReport& rep, const std::vector<std::vector<Rational>>& exact,
                           const std::string& what) {
            for (std::size_t s = 0; s < rep.statistics.size(); ++s)
                for (std::size_t t = 0; t < exact[s].size(); ++t) {
                    const auto& m = rep.moments[s][t];
                    ++means;
                    const double se = m.standard_error();
                    const std::string at = what + " " + rep.statistics[s] + " t=" + std::to_string(t);
                    if (se == 0) {
                        if (m.mean() != exact[s][t]) r.fail(at + ": constant sample mean " + m.mean().str());
                        continue;
                    }
                    const double z = (m.mean().to_double() - exact[s][t].to_double()) / se;
                    if (std::abs(z) > kSigmaFail) r.fail(at + ": z = " + std::to_string(z));
                    else if (std::abs(z) > kSigmaFlag) r.flag(at + ": z = " + std::to_string(z));
                }
        };
        const unsigned steps = 6;
        for (const Rational& q : {Rational(1, 3), Rational(1, 2)}) {
            const CppSpec spec = expand_preset("top-or-bottom", {q}, 4);
            DeckStepper stepper(spec);
            std::function<Word(const Word&, RngStream&)> step = [&](const Word& w, RngStream& rng) { return stepper(w, rng); };
            std::vector<NamedStatistic<Word>> stats{
                {"weighted-descents", [q](const Word& w) { return weighted_descent_stat(w, q); }},
                {"weighted-peaks", [q](const Word& w) { return weighted_peak_stat(w, q); }}};
            auto rep = run_trajectories<Word>(space.states.front(), steps, kDraws, step, stats, kSeed + 1);
            std::vector<std::vector<Rational>> exact(2);
            for (unsigned t = 0; t <= steps; ++t) {
                exact[0].push_back((Rational(1) - pow(Rational(2, 4), t)) / Rational(2));
                exact[1].push_back((Rational(1) - pow(Rational(1, 4), t)) / Rational(3));
            }
            compare(rep, exact, "top-or-bottom(" + q.str() + ")");
            if (q == Rational(1, 2)) {
                auto again = run_trajectories<Word>(space.states.front(), steps, kDraws, step, stats, kSeed + 1, 1);
                if (!(again == rep)) r.fail("same seed produced a different report");
            }
        }
        {
            auto five = distinct_space(5);
            const CppSpec spec = expand_preset("riffle", {Rational(2)}, 5);
            DeckStepper stepper(spec);
            std::function<Word(const Word&, RngStream&)> step = [&](const Word& w, RngStream& rng) { return stepper(w, rng); };
            std::vector<NamedStatistic<Word>> stats{{"descents", [](const Word& w) { return Rational(descent_count(w)); }}};
            auto rep = run_trajectories<Word>(five.states.front(), 2, kDraws, step, stats, kSeed + 2);
            std::vector<std::vector<Rational>> exact{{Rational(0), Rational(1), Rational(3, 2)}};
            compare(rep, exact, "riffle(2) n=5");
        }
        r.summary = std::to_string(rows) + " rows x " + std::to_string(kDraws) + " draws, " + std::to_string(means) +
                    " Monte Carlo means";
    }, kLimitSimulation);
}

using Reporter = std::function<void(const CriterionResult&)>;

/// Runs all ten criteria in order, reporting each as it completes.
inline std::vector<CriterionResult> run_all(const Reporter& report = {}) {
    std::vector<CriterionResult> out;
    auto push = [&](CriterionResult r) {
        if (report) report(r);
        out.push_back(std::move(r));
    };
    push(criterion_1());
    Grid grid;
    auto build = detail::timed(0, "grid", [&](CriterionResult&) { grid = build_grid(); });
    auto c2 = criterion_2(grid);
    c2.seconds += build.seconds;
    push(std::move(c2));
    push(criterion_3(grid));
    push(criterion_4(grid));
    push(criterion_5());
    push(criterion_6());
    push(criterion_7());
    push(criterion_8(grid));
    push(criterion_9());
    push(criterion_10());
    return out;
}

}  // namespace hopf::acceptance

#endif  // HOPF_VERIFY_HPP
