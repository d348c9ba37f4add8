#ifndef HOPF_FOREST_HPP
#define HOPF_FOREST_HPP

// Connes-Kreimer Hopf algebra of unlabelled rooted forests.
//
// A tree is encoded as "(" + sorted child encodings + ")", and a forest as
// its sorted tree encodings concatenated: "(()())" is a root with two leaf
// children and "()()" two isolated roots. The empty string is the empty
// forest, the unit. Sorting is plain string order, so isomorphic forests
// share one encoding.

#include "hopf/lincomb.hpp"
#include "hopf/rational.hpp"

#include <algorithm>
#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hopf {

namespace detail {

// Splits a forest encoding into its top-level tree encodings.
inline std::vector<std::string> split_trees(std::string_view enc) {
    std::vector<std::string> trees;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < enc.size(); ++i) {
        if (enc[i] == '(') {
            ++depth;
        } else if (enc[i] == ')') {
            if (--depth < 0) throw std::invalid_argument("forest encoding: unbalanced ')'");
            if (depth == 0) {
                trees.emplace_back(enc.substr(start, i - start + 1));
                start = i + 1;
            }
        } else {
            throw std::invalid_argument("forest encoding: unexpected character '" + std::string(1, enc[i]) + "'");
        }
    }
    if (depth != 0) throw std::invalid_argument("forest encoding: unbalanced '('");
    return trees;
}

inline std::string join_sorted(std::vector<std::string> trees) {
    std::sort(trees.begin(), trees.end());
    std::string out;
    for (const auto& t : trees) out += t;
    return out;
}

// Child encodings of a single tree "(...)".
inline std::vector<std::string> children_of(std::string_view tree) {
    return split_trees(tree.substr(1, tree.size() - 2));
}

inline std::string canonical_tree(std::string_view tree) {
    std::vector<std::string> kids;
    for (const auto& c : children_of(tree)) kids.push_back(canonical_tree(c));
    return "(" + join_sorted(std::move(kids)) + ")";
}

}  // namespace detail

/// Canonical unlabelled rooted forest.
class Forest {
public:
    Forest() = default;

    /// Parses and canonicalizes any parenthesized encoding.
    static Forest parse(std::string_view enc) {
        std::vector<std::string> trees;
        for (const auto& t : detail::split_trees(enc)) trees.push_back(detail::canonical_tree(t));
        return Forest(detail::join_sorted(std::move(trees)), 0);
    }

    /// Assumes the tree encodings are already canonical.
    static Forest from_trees(std::vector<std::string> trees) {
        return Forest(detail::join_sorted(std::move(trees)), 0);
    }

    const std::string& encoding() const { return enc_; }
    int degree() const { return static_cast<int>(std::count(enc_.begin(), enc_.end(), '(')); }
    bool empty() const { return enc_.empty(); }
    std::vector<std::string> trees() const { return detail::split_trees(enc_); }
    bool is_tree() const { return trees().size() == 1; }

    friend auto operator<=>(const Forest&, const Forest&) = default;
    friend bool operator==(const Forest&, const Forest&) = default;

private:
    Forest(std::string enc, int) : enc_(std::move(enc)) {}
    std::string enc_;
};

/// Canonical disjoint union, coefficient 1.
inline LinComb<Forest> forest_product(const Forest& f, const Forest& g) {
    auto trees = f.trees();
    auto more = g.trees();
    trees.insert(trees.end(), more.begin(), more.end());
    return LinComb<Forest>(Forest::from_trees(std::move(trees)));
}

namespace detail {

// All nonempty root-containing connected subtrees S of `tree`, with T \ S.
inline std::map<std::pair<std::string, std::string>, long> root_cuts(const std::string& tree) {
    struct Partial {
        std::vector<std::string> removed, kept_children;
        long count;
    };
    std::vector<Partial> partial{{{}, {}, 1}};
    for (const auto& child : children_of(tree)) {
        std::vector<Partial> next;
        for (const auto& p : partial) {
            Partial drop = p;
            drop.removed.push_back(child);
            next.push_back(std::move(drop));
            for (const auto& [cut, c] : root_cuts(child)) {
                Partial keep = p;
                auto removed = split_trees(cut.first);
                keep.removed.insert(keep.removed.end(), removed.begin(), removed.end());
                keep.kept_children.push_back(cut.second);
                keep.count *= c;
                next.push_back(std::move(keep));
            }
        }
        partial = std::move(next);
    }
    std::map<std::pair<std::string, std::string>, long> out;
    for (auto& p : partial)
        out[{join_sorted(std::move(p.removed)), "(" + join_sorted(std::move(p.kept_children)) + ")"}] += p.count;
    return out;
}

}  // namespace detail

/// Sum of (T \ S) (x) S over root-containing connected subtrees S (or S empty),
/// extended multiplicatively over the trees of a forest.
inline TensorComb<Forest> rootcut_coproduct(const Forest& f) {
    using Split = std::pair<std::vector<std::string>, std::vector<std::string>>;
    std::map<Split, long> acc;
    acc[Split{}] = 1;
    for (const auto& tree : f.trees()) {
        std::vector<std::pair<Split, long>> local;
        local.emplace_back(Split{{tree}, {}}, 1);
        for (const auto& [cut, c] : detail::root_cuts(tree))
            local.emplace_back(Split{detail::split_trees(cut.first), {cut.second}}, c);
        std::map<Split, long> next;
        for (const auto& [lr, c] : acc)
            for (const auto& [lr2, c2] : local) {
                auto left = lr.first, right = lr.second;
                left.insert(left.end(), lr2.first.begin(), lr2.first.end());
                right.insert(right.end(), lr2.second.begin(), lr2.second.end());
                std::sort(left.begin(), left.end());
                std::sort(right.begin(), right.end());
                next[Split{std::move(left), std::move(right)}] += c * c2;
            }
        acc = std::move(next);
    }
    TensorComb<Forest> out;
    for (const auto& [lr, c] : acc)
        out.add({Forest::from_trees(lr.first), Forest::from_trees(lr.second)}, Rational(c));
    return out;
}

namespace detail {

inline std::vector<std::string> enumerate_trees(int n);

// Forests of n vertices built from trees listed in `pool`, taking pool indices
// in non-increasing order so every multiset appears once.
inline void forests_from_pool(const std::vector<std::pair<int, std::string>>& pool, int remaining,
                              std::size_t max_index, std::vector<std::string>& acc,
                              std::vector<std::string>& out) {
    if (remaining == 0) {
        out.push_back(join_sorted(acc));
        return;
    }
    for (std::size_t i = 0; i <= max_index && i < pool.size(); ++i) {
        if (pool[i].first > remaining) continue;
        acc.push_back(pool[i].second);
        forests_from_pool(pool, remaining - pool[i].first, i, acc, out);
        acc.pop_back();
    }
}

inline std::vector<std::string> enumerate_forest_encodings(int n) {
    if (n == 0) return {""};
    std::vector<std::pair<int, std::string>> pool;
    for (int k = 1; k <= n; ++k)
        for (auto& t : enumerate_trees(k)) pool.emplace_back(k, std::move(t));
    std::vector<std::string> acc, out;
    forests_from_pool(pool, n, pool.size() - 1, acc, out);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::string> enumerate_trees(int n) {
    std::vector<std::string> out;
    for (const auto& f : enumerate_forest_encodings(n - 1)) out.push_back("(" + f + ")");
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

/// Every rooted forest with exactly n vertices, sorted by encoding.
inline std::vector<Forest> enumerate_forests(int n) {
    if (n < 0) throw std::invalid_argument("enumerate_forests: negative size");
    std::vector<Forest> out;
    for (const auto& e : detail::enumerate_forest_encodings(n)) out.push_back(Forest::parse(e));
    return out;
}

/// Per-vertex counts, both including the vertex itself.
struct VertexInfo {
    int desc;       ///< descendants
    int anc;        ///< ancestors
    int component;  ///< size of the vertex's tree
    friend bool operator==(const VertexInfo&, const VertexInfo&) = default;
};

/// Vertices listed in preorder, trees in encoding order.
inline std::vector<VertexInfo> vertex_stats(const Forest& f) {
    std::vector<VertexInfo> out;
    for (const auto& tree : f.trees()) {
        const int comp = static_cast<int>(std::count(tree.begin(), tree.end(), '('));
        // Walking the encoding: '(' opens a vertex at depth d (anc = d), its
        // descendant count is the number of '(' before the matching ')'.
        std::vector<std::size_t> open;
        std::vector<int> opened_at;
        int seen = 0;
        for (char ch : tree) {
            if (ch == '(') {
                open.push_back(out.size());
                opened_at.push_back(seen);
                out.push_back({0, static_cast<int>(open.size()), comp});
                ++seen;
            } else {
                out[open.back()].desc = seen - opened_at.back();
                open.pop_back();
                opened_at.pop_back();
            }
        }
    }
    return out;
}

/// sum_u q1^desc(u) q3^anc(u) C(desc(u), j)
inline Rational f_j_statistic(const Forest& f, int j, const Rational& q1, const Rational& q3) {
    if (j < 2) throw std::invalid_argument("f_j_statistic: j must be >= 2");
    if (q1.sign() < 0 || q3.sign() < 0) throw std::invalid_argument("f_j_statistic: negative parameter");
    Rational s;
    for (const auto& v : vertex_stats(f)) {
        if (v.desc < j) continue;
        s += pow(q1, static_cast<unsigned>(v.desc)) * pow(q3, static_cast<unsigned>(v.anc)) *
             Rational(binomial(v.desc, j));
    }
    return s;
}

/// Disjoint-union product, root-cut coproduct. Commutative.
class ForestAlgebra {
public:
    using Key = Forest;
    std::string name() const { return "forests"; }
    int degree(const Forest& f) const { return f.degree(); }
    Forest unit() const { return {}; }
    std::vector<Forest> basis(int n) const { return enumerate_forests(n); }
    LinComb<Forest> product(const Forest& f, const Forest& g) const { return forest_product(f, g); }
    TensorComb<Forest> coproduct(const Forest& f) const { return rootcut_coproduct(f); }
    std::string encode(const Forest& f) const { return f.encoding(); }
    Forest parse(std::string_view s) const { return Forest::parse(s); }
};

}  // namespace hopf

#endif  // HOPF_FOREST_HPP
