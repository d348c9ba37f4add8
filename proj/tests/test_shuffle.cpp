#include "hopf/shuffle.hpp"

#include <catch_amalgamated.hpp>

using namespace hopf;

TEST_CASE("alphabets parse and encode", "[shuffle]") {
    auto abc = Alphabet::from_deck("baab");
    CHECK(abc.labels() == std::vector<std::string>{"a", "b"});
    CHECK(abc.encode(abc.parse("abba")) == "abba");
    CHECK_THROWS_AS(abc.parse("abc"), std::invalid_argument);

    auto big = Alphabet::distinct(12);
    CHECK_FALSE(big.single_char());
    auto w = big.parse("12,3,10");
    CHECK(w.letters == std::vector<int>{11, 2, 9});
    CHECK(big.encode(w) == "12,3,10");
    CHECK_THROWS_AS(Alphabet({"a", "a"}), std::invalid_argument);
}

TEST_CASE("shuffle product counts interleavings", "[shuffle]") {
    ShuffleAlgebra sh(Alphabet::distinct(6));
    for (int p = 0; p <= 3; ++p)
        for (int q = 0; q <= 3; ++q) {
            Word u, v;
            for (int i = 0; i < p; ++i) u.letters.push_back(i);
            for (int i = 0; i < q; ++i) v.letters.push_back(3 + i);
            auto prod = sh.product(u, v);
            CHECK(prod.size() == static_cast<std::size_t>(binomial(p + q, p).get_si()));
            for (const auto& [w, c] : prod) CHECK(c == Rational(1));
        }
    // repeated letters accumulate: a sh a = 2 aa
    ShuffleAlgebra ab(Alphabet({"a", "b"}));
    CHECK(ab.product(ab.parse("a"), ab.parse("a")) == LinComb<Word>(ab.parse("aa"), Rational(2)));
    CHECK(ab.product(ab.parse("ab"), ab.parse("a")) ==
          LinComb<Word>{{ab.parse("aab"), Rational(2)}, {ab.parse("aba"), Rational(1)}});
}

TEST_CASE("deconcatenation and deshuffle are dual to concatenation and shuffle", "[shuffle]") {
    ShuffleAlgebra sh(Alphabet({"a", "b"}));
    FreeAssociativeAlgebra fa(Alphabet({"a", "b"}));
    std::vector<Word> words;
    for (int n = 0; n <= 3; ++n)
        for (const auto& w : sh.basis(n)) words.push_back(w);
    for (const auto& u : words)
        for (const auto& v : words) {
            // <w, u sh v> = <deshuffle(w), u (x) v>
            for (const auto& [w, c] : sh.product(u, v)) CHECK(fa.coproduct(w).coefficient({u, v}) == c);
            // <deconcat(w), u (x) v> = [w = uv]
            for (const auto& [w, c] : fa.product(u, v)) CHECK(sh.coproduct(w).coefficient({u, v}) == c);
        }
    CHECK(sh.coproduct(sh.parse("ab")).size() == 3);
    CHECK(fa.coproduct(fa.parse("ab")).size() == 4);
}

TEST_CASE("deck states are the rearrangements", "[shuffle]") {
    ShuffleAlgebra sh(Alphabet({"a", "b", "c"}));
    CHECK(sh.deck_states(sh.parse("aabc")).size() == 12);
    CHECK(sh.deck_states(sh.parse("cba")).size() == 6);
    auto states = sh.deck_states(sh.parse("abab"));
    REQUIRE(states.size() == 6);
    CHECK(sh.encode(states.front()) == "aabb");
    CHECK(sh.encode(states.back()) == "bbaa");
    CHECK(content(sh.parse("abcab"), 3) == std::vector<int>{2, 2, 1});
}

TEST_CASE("descent and peak sets", "[shuffle]") {
    Alphabet abc({"a", "b", "c"});
    // a peak is indexed by the card above the peak card
    CHECK(descent_peak_sets(abc.parse("acb")).peaks == std::vector<int>{1});
    CHECK(descent_peak_sets(abc.parse("acb")).descents == std::vector<int>{2});
    CHECK(descent_peak_sets(abc.parse("cba")).descents == std::vector<int>{1, 2});
    CHECK(descent_peak_sets(abc.parse("cba")).peaks.empty());
    Alphabet d = Alphabet::distinct(6);
    auto s = descent_peak_sets(d.parse("132546"));
    CHECK(s.descents == std::vector<int>{2, 4});
    CHECK(s.peaks == std::vector<int>{1, 3});
    CHECK(descent_count(d.parse("654321")) == 5);
    CHECK(peak_count(d.parse("123456")) == 0);
    // equal letters are neither descents nor peaks
    CHECK(descent_count(abc.parse("aa")) == 0);
}

TEST_CASE("weighted statistics", "[shuffle]") {
    Alphabet d = Alphabet::distinct(6);
    // binomial weights sum to one over every position
    for (int q = 0; q <= 4; ++q) {
        Rational x(q, 4);
        CHECK(weighted_descent_stat(d.parse("654321"), x) == Rational(1));
        CHECK(weighted_descent_stat(d.parse("123456"), x) == Rational(0));
    }
    // n=4, deck 1 3 2 4: Des={2}, weight C(2,1) q (1-q)
    Alphabet d4 = Alphabet::distinct(4);
    CHECK(weighted_descent_stat(d4.parse("1324"), Rational(1, 3)) == Rational(4, 9));
    // Peak={1}, weight C(1,0) (1-q)
    CHECK(weighted_peak_stat(d4.parse("1324"), Rational(1, 3)) == Rational(2, 3));
    // at q = 1 only the last admissible index counts
    CHECK(weighted_descent_stat(d.parse("213456"), Rational(1)) == Rational(0));
    CHECK(weighted_descent_stat(d.parse("123465"), Rational(1)) == Rational(1));
}
