#include "hopf/chain.hpp"
#include "hopf/forest.hpp"
#include "hopf/presets.hpp"
#include "hopf/spectral.hpp"

#include <catch_amalgamated.hpp>

using namespace hopf;

namespace {

int mobius(int n) {
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        result = -result;
    }
    return n > 1 ? -result : result;
}

// Lyndon words of length n over k letters
Integer necklaces(int k, int n) {
    Integer s(0);
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) s += Integer(mobius(d)) * pow(Rational(k), static_cast<unsigned>(n / d)).numerator();
    return s / n;
}

// unsigned Stirling numbers of the first kind
Integer stirling1(int n, int k) {
    std::vector<std::vector<Integer>> c(n + 1, std::vector<Integer>(n + 1, Integer(0)));
    c[0][0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + Integer(i - 1) * c[i - 1][j];
    return c[n][k];
}

Integer derangements(int n) {
    Integer d0(1), d1(0);
    if (n == 0) return d0;
    for (int i = 2; i <= n; ++i) {
        Integer next = Integer(i - 1) * (d0 + d1);
        d0 = d1;
        d1 = next;
    }
    return d1;
}

std::vector<int> distinct_content(int n) { return std::vector<int>(static_cast<std::size_t>(n), 1); }

}  // namespace

TEST_CASE("partition counts", "[spectral]") {
    const std::vector<std::size_t> p{1, 1, 2, 3, 5, 7, 11, 15, 22};
    for (int n = 0; n < static_cast<int>(p.size()); ++n) CHECK(partitions(n).size() == p[n]);
    CHECK(partitions(3) == std::vector<Partition>{{3}, {2, 1}, {1, 1, 1}});
    CHECK(pairing_count({1, 1}, {1, 1}) == 2);
    CHECK(pairing_count({2, 1}, {1, 2}) == 1);
    CHECK(pairing_count({3}, {1, 2}) == 0);
}

TEST_CASE("Hilbert inversion recovers generator counts", "[spectral]") {
    for (int k = 1; k <= 3; ++k) {
        std::vector<Integer> dims;
        for (int n = 0; n <= 7; ++n) dims.push_back(pow(Rational(k), static_cast<unsigned>(n)).numerator());
        auto h = hilbert_invert(dims);
        for (int n = 1; n <= 7; ++n) CHECK(h.b[n] == necklaces(k, n));
    }
    // forests on n vertices are generated by trees on n vertices
    ForestAlgebra fo;
    auto g = degree_profile(fo, 7);
    const std::vector<long> trees{0, 1, 1, 2, 4, 9, 20, 48};
    for (int n = 1; n <= 7; ++n) CHECK(g.exponent({n}) == trees[n]);
    CHECK_THROWS_AS(hilbert_invert({Integer(2)}), std::invalid_argument);
}

TEST_CASE("content-graded multiplicities", "[spectral]") {
    auto g = content_profile({2, 2});
    std::vector<Integer> mults;
    for (const auto& lambda : partitions(4)) mults.push_back(g.multiplicity(lambda));
    CHECK(mults == std::vector<Integer>{1, 2, 1, 1, 1});
    // distinct letters: one multiplicity per permutation cycle type class
    for (int n = 1; n <= 6; ++n) {
        auto d = content_profile(distinct_content(n));
        Integer total(0);
        for (const auto& lambda : partitions(n)) total += d.multiplicity(lambda);
        CHECK(total == factorial(static_cast<unsigned>(n)));
    }
}

TEST_CASE("riffle spectrum is given by Stirling numbers", "[spectral]") {
    for (int n = 2; n <= 7; ++n) {
        auto s = spectrum(expand_preset("riffle", {}, n), content_profile(distinct_content(n)));
        auto by = s.by_eigenvalue();
        for (int k = 1; k <= n; ++k) {
            // partitions with k parts have eigenvalue 2^(k-n)
            const Rational lam = pow(Rational(1, 2), static_cast<unsigned>(n - k));
            CHECK(by[lam] == stirling1(n, k));
        }
    }
}

TEST_CASE("top-to-random multiplicities count fixed points", "[spectral]") {
    for (int n = 2; n <= 7; ++n) {
        auto by = spectrum(expand_preset("top-to-random", {}, n), content_profile(distinct_content(n))).by_eigenvalue();
        for (int j = 0; j <= n; ++j) {
            const Integer expected = binomial(n, j) * derangements(n - j);
            const Rational lam(j, n);
            INFO("n=" << n << " j=" << j);
            CHECK((by.count(lam) ? by[lam] : Integer(0)) == expected);
        }
    }
}

TEST_CASE("predicted spectra match matrix ranks", "[spectral]") {
    ShuffleAlgebra sh(Alphabet({"a", "b", "c"}));
    ForestAlgebra fo;
    const std::vector<std::pair<std::string, std::vector<Rational>>> presets{
        {"riffle", {}},
        {"riffle", {Rational(3)}},
        {"top-or-bottom", {Rational(2, 5)}},
        {"top-m-unordered", {Rational(2)}},
        {"top-m-ordered", {Rational(2)}},
        {"biased", {Rational(1, 3), Rational(1, 2)}},
        {"trinomial", {Rational(1, 4), Rational(1, 2), Rational(1, 4)}}};
    for (const auto& [name, params] : presets) {
        for (const std::string deck : {"aabb", "abc", "aabc"}) {
            const int n = static_cast<int>(deck.size());
            auto spec = expand_preset(name, params, n);
            auto k = build_transition_matrix(sh, spec, sh.deck_states(sh.parse(deck)));
            auto w = sh.parse(deck);
            auto rep = verify_spectrum(k.kernel, spectrum(spec, content_profile(content(w, 3))));
            INFO(name << " " << deck);
            CHECK(rep.ok());
        }
        for (int n = 3; n <= 5; ++n) {
            auto spec = expand_preset(name, params, n);
            auto k = build_transition_matrix(fo, spec);
            INFO(name << " forests n=" << n);
            CHECK(verify_spectrum(k.kernel, spectrum(spec, degree_profile(fo, n))).ok());
        }
    }
}

TEST_CASE("a wrong spectrum is rejected", "[spectral]") {
    ShuffleAlgebra sh(Alphabet::distinct(3));
    auto k = build_transition_matrix(sh, expand_preset("riffle", {}, 3), sh.deck_states(sh.parse("123")));
    Spectrum bogus{{{{3}, Rational(1), Integer(1)}, {{2, 1}, Rational(1, 2), Integer(5)}}};
    auto rep = verify_spectrum(k.kernel, bogus);
    CHECK_FALSE(rep.ok());
    CHECK_FALSE(rep.annihilated);
}

TEST_CASE("primitives", "[spectral]") {
    FreeAssociativeAlgebra fa(Alphabet({"a", "b"}));
    // degree 2: only the commutator ab - ba
    auto p2 = primitive_basis(fa, 2);
    REQUIRE(p2.size() == 1);
    CHECK(p2[0].coefficient(fa.parse("ab")) == -p2[0].coefficient(fa.parse("ba")));
    // free Lie algebra dimensions match necklace counts
    for (int n = 1; n <= 5; ++n) CHECK(Integer(static_cast<unsigned long>(primitive_basis(fa, n).size())) == necklaces(2, n));
    // shuffle algebra: primitives only in degree 1
    ShuffleAlgebra sh(Alphabet({"a", "b"}));
    CHECK(primitive_basis(sh, 1).size() == 2);
    CHECK(primitive_basis(sh, 2).empty());
}

TEST_CASE("eigenvectors of top-or-bottom", "[spectral]") {
    Alphabet abc = Alphabet::distinct(4);
    FreeAssociativeAlgebra fa(abc);
    for (int n = 2; n <= 4; ++n) {
        const auto c = distinct_content(n);
        Word deck;
        for (int i = 0; i < n; ++i) deck.letters.push_back(i);
        for (const auto& q : {Rational(1), Rational(1, 3), Rational(0)}) {
            std::vector<Eigenvector> all;
            for (int j = 0; j <= n; ++j) {
                auto ej = build_E_j(fa, c, j, q);
                if (j == n - 1) CHECK(ej.empty());
                // |E_j| is the number of permutations with j fixed points
                CHECK(Integer(static_cast<unsigned long>(ej.size())) == binomial(n, j) * derangements(n - j));
                for (const auto& v : ej) CHECK(v.eigenvalue == Rational(j, n));
                all.insert(all.end(), ej.begin(), ej.end());
            }
            CHECK(all.size() == factorial(static_cast<unsigned>(n)).get_ui());
            CHECK(span_dimension(all, fa.deck_states(deck)) == all.size());
            auto check = check_eigen_equation(fa, all, top_or_bottom_spec(n, q),
                                              [](const Eigenvector& v) { return v.eigenvalue; });
            CHECK(check.ok());
            if (q == Rational(1) && n >= 2) CHECK(polynomial_eigenvalue_check(fa, all, n, 2).ok());
        }
    }
}

TEST_CASE("trinomial operator on top-or-bottom eigenvectors", "[spectral]") {
    // with q = q1/(q1+q3) the E_j vectors are trinomial eigenvectors with
    // eigenvalue q2^(n-j), computed here exactly
    FreeAssociativeAlgebra fa(Alphabet::distinct(4));
    const Rational q1(1, 4), q2(1, 2), q3(1, 4);
    for (int n = 2; n <= 4; ++n) {
        std::vector<Eigenvector> all;
        for (int j = 0; j <= n; ++j) {
            auto ej = build_E_j(fa, distinct_content(n), j, q1 / (q1 + q3));
            all.insert(all.end(), ej.begin(), ej.end());
        }
        auto spec = expand_preset("trinomial", {q1, q2, q3}, n);
        auto check = check_eigen_equation(fa, all, spec, [&](const Eigenvector& v) {
            return pow(q2, static_cast<unsigned>(n - v.j));
        });
        INFO("n=" << n);
        CHECK(check.ok());
    }
}

TEST_CASE("words with repeated letters", "[spectral]") {
    FreeAssociativeAlgebra fa(Alphabet({"a", "b"}));
    std::vector<Eigenvector> all;
    for (int j = 0; j <= 4; ++j) {
        auto ej = build_E_j(fa, {2, 2}, j, Rational(1, 2));
        all.insert(all.end(), ej.begin(), ej.end());
    }
    CHECK(all.size() == 6);
    CHECK(span_dimension(all, fa.deck_states(fa.parse("aabb"))) == 6);
}
