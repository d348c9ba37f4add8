// Bialgebra axioms and the descent-operator machinery, checked on all three
// algebras in low degree.

#include "hopf/algebra.hpp"
#include "hopf/cpp_spec.hpp"
#include "hopf/forest.hpp"
#include "hopf/shuffle.hpp"

#include <catch_amalgamated.hpp>

using namespace hopf;

namespace {

template <class A>
void check_compatibility(const A& alg, int max_degree) {
    using Key = typename A::Key;
    std::vector<Key> small;
    for (int n = 0; n <= max_degree; ++n)
        for (const auto& k : alg.basis(n)) small.push_back(k);
    for (const auto& x : small)
        for (const auto& y : small) {
            if (alg.degree(x) + alg.degree(y) > max_degree + 1) continue;
            auto lhs = coproduct(alg, alg.product(x, y));
            auto rhs = tensor_square_product(alg, alg.coproduct(x), alg.coproduct(y));
            INFO(alg.encode(x) << " * " << alg.encode(y));
            CHECK(lhs == rhs);
        }
}

template <class A>
void check_coassociative(const A& alg, int n) {
    using Key = typename A::Key;
    for (const auto& x : alg.basis(n)) {
        // (Delta (x) id) Delta
        TensorComb<Key> left;
        for (const auto& [legs, c] : alg.coproduct(x))
            for (const auto& [inner, d] : alg.coproduct(legs[0])) left.add({inner[0], inner[1], legs[1]}, c * d);
        INFO(alg.encode(x));
        CHECK(left == iterated_coproduct(alg, LinComb<Key>(x), 3));
    }
}

template <class A>
void check_counit(const A& alg, int n) {
    using Key = typename A::Key;
    const Key one = alg.unit();
    for (const auto& x : alg.basis(n)) {
        auto dx = alg.coproduct(x);
        CHECK(dx.coefficient({x, one}) == Rational(1));
        CHECK(dx.coefficient({one, x}) == Rational(1));
        for (const auto& [legs, c] : dx) CHECK(alg.degree(legs[0]) + alg.degree(legs[1]) == n);
    }
}

// graded_split against filtering the full iterated coproduct
template <class A>
void check_graded_split(const A& alg, int n) {
    using Key = typename A::Key;
    for (const auto& x : alg.basis(n))
        for (const Composition& d : {Composition{1, n - 1}, Composition{n - 1, 1}, Composition(n, 1)}) {
            TensorComb<Key> filtered;
            for (const auto& [legs, c] : iterated_coproduct(alg, LinComb<Key>(x), static_cast<int>(d.size()))) {
                bool ok = true;
                for (std::size_t i = 0; i < d.size(); ++i) ok = ok && alg.degree(legs[i]) == d[i];
                if (ok) filtered.add(legs, c);
            }
            CHECK(filtered == graded_split(alg, x, d));
        }
}

// multiplies prod by every subtree size of a tree encoding
void subtree_sizes_product(const std::string& tree, Integer& prod) {
    std::vector<int> open;
    for (char ch : tree) {
        if (ch == '(') {
            open.push_back(1);
            continue;
        }
        const int size = open.back();
        open.pop_back();
        prod *= size;
        if (!open.empty()) open.back() += size;
    }
}

}  // namespace

TEST_CASE("shuffle algebra is a bialgebra", "[hopf]") {
    ShuffleAlgebra sh(Alphabet({"a", "b"}));
    check_compatibility(sh, 3);
    check_coassociative(sh, 4);
    check_counit(sh, 3);
    check_graded_split(sh, 4);
}

TEST_CASE("free associative algebra is a bialgebra", "[hopf]") {
    FreeAssociativeAlgebra fa(Alphabet({"a", "b"}));
    check_compatibility(fa, 3);
    check_coassociative(fa, 4);
    check_counit(fa, 3);
    check_graded_split(fa, 3);
}

TEST_CASE("forest algebra is a bialgebra", "[hopf]") {
    ForestAlgebra fo;
    check_compatibility(fo, 3);
    check_coassociative(fo, 5);
    check_counit(fo, 4);
    check_graded_split(fo, 4);
}

TEST_CASE("state space bases pass the basis check", "[hopf]") {
    CHECK(check_state_space_basis(ShuffleAlgebra(Alphabet({"a", "b"})), 4).empty());
    CHECK(check_state_space_basis(ForestAlgebra{}, 5).empty());
}

TEST_CASE("eta on words and forests", "[hopf]") {
    ShuffleAlgebra sh(Alphabet::distinct(4));
    for (const auto& w : sh.basis(3)) CHECK(eta(sh, w) == Rational(1));
    // forests: eta counts leaf-removal orders, n! / prod subtree sizes
    ForestAlgebra fo;
    for (int n = 1; n <= 6; ++n)
        for (const auto& f : fo.basis(n)) {
            Integer prod(1);
            for (const auto& t : f.trees()) subtree_sizes_product(t, prod);
            INFO(f.encoding());
            CHECK(eta(fo, f) == Rational(factorial(static_cast<unsigned>(n)) / prod));
        }
}

TEST_CASE("spec normalization", "[spec]") {
    CppSpec raw{4, {{{0, 4}, Rational(1)}, {{4, 0}, Rational(1)}, {{2, 0, 2}, Rational(1, 2)}, {{2, 2}, Rational(1, 2)}}};
    auto s = normalize_spec(raw);
    REQUIRE(s.terms.size() == 2);
    CHECK(s.terms[0] == SpecTerm{{2, 2}, Rational(1)});
    CHECK(s.terms[1] == SpecTerm{{4}, Rational(2)});
    CHECK(beta_n(s) == Rational(6 + 2));

    auto law = composition_law(s);
    Rational total;
    for (const auto& [d, p] : law) total += p;
    CHECK(total == Rational(1));
    CHECK(law.at({2, 2}) == Rational(3, 4));

    CHECK_THROWS_AS(normalize_spec(CppSpec{3, {{{1, 1}, Rational(1)}}}), SpecError);
    CHECK_THROWS_AS(normalize_spec(CppSpec{3, {{{1, 2}, Rational(-1)}}}), SpecError);
    CHECK_THROWS_AS(normalize_spec(CppSpec{3, {{{3}, Rational(1)}}}), SpecError);
    CHECK_THROWS_AS(normalize_spec(CppSpec{3, {{{3, 0}, Rational(1)}, {{1, 2}, Rational(0)}}}), SpecError);
    CHECK_THROWS_AS(normalize_spec(CppSpec{0, {}}), SpecError);
}

TEST_CASE("descent operators on the shuffle algebra", "[hopf]") {
    ShuffleAlgebra sh(Alphabet::distinct(3));
    auto x = LinComb<Word>(sh.parse("123"));
    // top card inserted anywhere
    auto y = apply_proj_convolution(sh, x, {1, 2});
    CHECK(y == LinComb<Word>{{sh.parse("123"), Rational(1)}, {sh.parse("213"), Rational(1)},
                             {sh.parse("231"), Rational(1)}});
    // Proj_1 * Proj_1 * Proj_1 is the sum of all n! rearrangements
    auto z = apply_proj_convolution(sh, x, {1, 1, 1});
    CHECK(z.size() == 6);
    CHECK(z.coefficient_sum() == Rational(6));
    CHECK_THROWS_AS(apply_proj_convolution(sh, x, {1, 1}), std::invalid_argument);
}
