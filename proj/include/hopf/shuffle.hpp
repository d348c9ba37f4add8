#ifndef HOPF_SHUFFLE_HPP
#define HOPF_SHUFFLE_HPP

// The shuffle algebra on words (decks of cards, top card first) and its graded
// dual, the free associative algebra. Both share the Word basis.

#include "hopf/lincomb.hpp"
#include "hopf/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hopf {

/// A deck: letters are indices into an Alphabet, position 0 is the top card.
struct Word {
    std::vector<int> letters;

    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
    int operator[](std::size_t i) const { return letters[i]; }

    friend auto operator<=>(const Word&, const Word&) = default;
    friend bool operator==(const Word&, const Word&) = default;
};

inline Word concat(const Word& a, const Word& b) {
    Word w = a;
    w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
    return w;
}

/// Ordered card labels; the order is the one used for descents and peaks.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> labels) : labels_(std::move(labels)) {
        if (labels_.empty()) throw std::invalid_argument("Alphabet: no labels");
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (labels_[i].empty()) throw std::invalid_argument("Alphabet: empty label");
            for (std::size_t j = 0; j < i; ++j)
                if (labels_[i] == labels_[j]) throw std::invalid_argument("Alphabet: repeated label " + labels_[i]);
        }
    }

    /// Labels 1 < 2 < ... < n.
    static Alphabet distinct(int n) {
        if (n < 1) throw std::invalid_argument("Alphabet::distinct: n must be >= 1");
        std::vector<std::string> l;
        for (int i = 1; i <= n; ++i) l.push_back(std::to_string(i));
        return Alphabet(std::move(l));
    }

    /// Letters of `deck` (one character per card), ordered lexicographically.
    static Alphabet from_deck(std::string_view deck) {
        std::vector<std::string> l;
        for (char c : deck) {
            std::string s(1, c);
            if (std::find(l.begin(), l.end(), s) == l.end()) l.push_back(s);
        }
        std::sort(l.begin(), l.end());
        return Alphabet(std::move(l));
    }

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int i) const { return labels_.at(static_cast<std::size_t>(i)); }

    bool single_char() const {
        return std::all_of(labels_.begin(), labels_.end(), [](const auto& s) { return s.size() == 1; });
    }

    int index(std::string_view label) const {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == label) return static_cast<int>(i);
        throw std::invalid_argument("unknown card label '" + std::string(label) + "'");
    }

    /// Concatenated labels, or comma-separated when some label is longer than
    /// one character.
    std::string encode(const Word& w) const {
        std::string s;
        const bool compact = single_char();
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (!compact && i) s += ",";
            s += label(w[i]);
        }
        return s;
    }

    Word parse(std::string_view text) const {
        Word w;
        if (text.empty()) return w;
        if (text.find(',') != std::string_view::npos || !single_char()) {
            std::size_t start = 0;
            while (start <= text.size()) {
                auto end = text.find(',', start);
                if (end == std::string_view::npos) end = text.size();
                w.letters.push_back(index(text.substr(start, end - start)));
                start = end + 1;
            }
        } else {
            for (char c : text) w.letters.push_back(index(std::string_view(&c, 1)));
        }
        return w;
    }

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::vector<std::string> labels_;
};

/// Letter multiplicities of a word.
inline std::vector<int> content(const Word& w, std::size_t alphabet_size) {
    std::vector<int> c(alphabet_size, 0);
    for (int x : w.letters) ++c.at(static_cast<std::size_t>(x));
    return c;
}

/// Sum of all interleavings of w and z, with multiplicity.
inline LinComb<Word> shuffle_product(const Word& w, const Word& z) {
    const std::size_t n = w.size() + z.size();
    std::map<Word, long> counts;
    // mask[i] == true: position i takes the next letter of w.
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + static_cast<long>(w.size()), true);
    std::sort(mask.begin(), mask.end());
    do {
        Word y;
        y.letters.reserve(n);
        std::size_t a = 0, b = 0;
        for (std::size_t i = 0; i < n; ++i) y.letters.push_back(mask[i] ? w[a++] : z[b++]);
        ++counts[y];
    } while (std::next_permutation(mask.begin(), mask.end()));
    LinComb<Word> out;
    for (const auto& [y, c] : counts) out.add(y, Rational(c));
    return out;
}

/// Sum of all deconcatenations prefix (x) suffix.
inline TensorComb<Word> deconcat_coproduct(const Word& w) {
    TensorComb<Word> out;
    for (std::size_t i = 0; i <= w.size(); ++i) {
        Word a, b;
        a.letters.assign(w.letters.begin(), w.letters.begin() + static_cast<long>(i));
        b.letters.assign(w.letters.begin() + static_cast<long>(i), w.letters.end());
        out.add({a, b}, Rational(1));
    }
    return out;
}

inline LinComb<Word> concat_product(const Word& w, const Word& z) { return LinComb<Word>(concat(w, z)); }

/// Sum over position subsets S of w|_S (x) w|_{complement of S}.
inline TensorComb<Word> deshuffle_coproduct(const Word& w) {
    if (w.size() > 24) throw std::length_error("deshuffle_coproduct: word too long");
    TensorComb<Word> out;
    const std::uint32_t subsets = 1u << w.size();
    for (std::uint32_t s = 0; s < subsets; ++s) {
        Word a, b;
        for (std::size_t i = 0; i < w.size(); ++i) (s >> i & 1u ? a : b).letters.push_back(w[i]);
        out.add({a, b}, Rational(1));
    }
    return out;
}

namespace detail {

inline std::vector<Word> all_words(std::size_t k, int n) {
    std::vector<Word> out;
    Word w;
    w.letters.assign(static_cast<std::size_t>(n), 0);
    if (n == 0) return {w};
    while (true) {
        out.push_back(w);
        int i = n - 1;
        while (i >= 0 && w.letters[static_cast<std::size_t>(i)] == static_cast<int>(k) - 1) {
            w.letters[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++w.letters[static_cast<std::size_t>(i)];
    }
    return out;
}

inline void sort_by_encoding(const Alphabet& abc, std::vector<Word>& words) {
    std::sort(words.begin(), words.end(), [&](const Word& a, const Word& b) {
        auto ea = abc.encode(a), eb = abc.encode(b);
        return ea != eb ? ea < eb : a < b;
    });
}

}  // namespace detail

/// Shared basis handling for the two word algebras.
class WordAlgebraBase {
public:
    using Key = Word;

    explicit WordAlgebraBase(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

    const Alphabet& alphabet() const { return alphabet_; }
    int degree(const Word& w) const { return static_cast<int>(w.size()); }
    Word unit() const { return {}; }
    std::string encode(const Word& w) const { return alphabet_.encode(w); }
    Word parse(std::string_view s) const { return alphabet_.parse(s); }

    /// All words of length n, ordered by encoding.
    std::vector<Word> basis(int n) const {
        auto words = detail::all_words(alphabet_.size(), n);
        detail::sort_by_encoding(alphabet_, words);
        return words;
    }

    /// All rearrangements of `deck`: the states reachable by any shuffle.
    std::vector<Word> deck_states(const Word& deck) const {
        Word w = deck;
        std::sort(w.letters.begin(), w.letters.end());
        std::vector<Word> out;
        do {
            out.push_back(w);
        } while (std::next_permutation(w.letters.begin(), w.letters.end()));
        detail::sort_by_encoding(alphabet_, out);
        return out;
    }

private:
    Alphabet alphabet_;
};

/// Shuffle product, deconcatenation coproduct. Commutative.
class ShuffleAlgebra : public WordAlgebraBase {
public:
    using WordAlgebraBase::WordAlgebraBase;
    std::string name() const { return "shuffle"; }
    LinComb<Word> product(const Word& w, const Word& z) const { return shuffle_product(w, z); }
    TensorComb<Word> coproduct(const Word& w) const { return deconcat_coproduct(w); }
};

/// Concatenation product, deshuffle coproduct. Cocommutative; dual to the
/// shuffle algebra under the pairing <w, z> = [w == z].
class FreeAssociativeAlgebra : public WordAlgebraBase {
public:
    using WordAlgebraBase::WordAlgebraBase;
    std::string name() const { return "free-associative"; }
    LinComb<Word> product(const Word& w, const Word& z) const { return concat_product(w, z); }
    TensorComb<Word> coproduct(const Word& w) const { return deshuffle_coproduct(w); }
};

// Deck statistics. Positions are 1-indexed from the top card.

struct DeckStatistics {
    std::vector<int> descents;  ///< i with w_i > w_{i+1}, subset of {1..n-1}
    std::vector<int> peaks;     ///< i with w_i < w_{i+1} > w_{i+2}, subset of {1..n-2}
    friend bool operator==(const DeckStatistics&, const DeckStatistics&) = default;
};

/// A peak is indexed by the position of the card just above the peak card,
/// so that Peak lies in {1, ..., n-2}.
inline DeckStatistics descent_peak_sets(const Word& w) {
    DeckStatistics s;
    const int n = static_cast<int>(w.size());
    for (int i = 1; i < n; ++i)
        if (w[i - 1] > w[i]) s.descents.push_back(i);
    for (int i = 1; i + 2 <= n; ++i)
        if (w[i - 1] < w[i] && w[i] > w[i + 1]) s.peaks.push_back(i);
    return s;
}

/// sum_{i in Des} C(n-2, i-1) q^(i-1) (1-q)^(n-1-i)
inline Rational weighted_descent_stat(const Word& w, const Rational& q) {
    const long n = static_cast<long>(w.size());
    Rational s;
    for (int i : descent_peak_sets(w).descents)
        s += Rational(binomial(n - 2, i - 1)) * pow(q, static_cast<unsigned>(i - 1)) *
             pow(Rational(1) - q, static_cast<unsigned>(n - 1 - i));
    return s;
}

/// sum_{i in Peak} C(n-3, i-1) q^(i-1) (1-q)^(n-2-i)
inline Rational weighted_peak_stat(const Word& w, const Rational& q) {
    const long n = static_cast<long>(w.size());
    Rational s;
    for (int i : descent_peak_sets(w).peaks)
        s += Rational(binomial(n - 3, i - 1)) * pow(q, static_cast<unsigned>(i - 1)) *
             pow(Rational(1) - q, static_cast<unsigned>(n - 2 - i));
    return s;
}

inline int descent_count(const Word& w) { return static_cast<int>(descent_peak_sets(w).descents.size()); }
inline int peak_count(const Word& w) { return static_cast<int>(descent_peak_sets(w).peaks.size()); }

}  // namespace hopf

#endif  // HOPF_SHUFFLE_HPP
