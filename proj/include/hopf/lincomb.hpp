#ifndef HOPF_LINCOMB_HPP
#define HOPF_LINCOMB_HPP

// Formal linear combinations of basis keys and of tensors of basis keys.

#include "hopf/rational.hpp"

#include <initializer_list>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hopf {

/// Finitely supported map Key -> nonzero Rational. Zero coefficients are never
/// stored.
template <class Key>
class LinComb {
public:
    using map_type = std::map<Key, Rational>;
    using const_iterator = typename map_type::const_iterator;

    LinComb() = default;
    explicit LinComb(const Key& k, Rational c = Rational(1)) { add(k, c); }
    LinComb(std::initializer_list<std::pair<const Key, Rational>> terms) {
        for (const auto& [k, c] : terms) add(k, c);
    }

    void add(const Key& k, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    void add(const LinComb& other, const Rational& scale = Rational(1)) {
        if (scale.is_zero()) return;
        for (const auto& [k, c] : other.terms_) add(k, c * scale);
    }

    Rational coefficient(const Key& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational coefficient_sum() const {
        Rational s;
        for (const auto& [k, c] : terms_) s += c;
        return s;
    }

    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const_iterator begin() const { return terms_.begin(); }
    const_iterator end() const { return terms_.end(); }
    const map_type& terms() const { return terms_; }

    LinComb& operator+=(const LinComb& o) { add(o); return *this; }
    LinComb& operator-=(const LinComb& o) { add(o, Rational(-1)); return *this; }
    LinComb& operator*=(const Rational& s) {
        if (s.is_zero()) {
            terms_.clear();
        } else {
            for (auto& [k, c] : terms_) c *= s;
        }
        return *this;
    }

    friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
    friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
    friend LinComb operator*(LinComb a, const Rational& s) { return a *= s; }
    friend LinComb operator*(const Rational& s, LinComb a) { return a *= s; }
    friend bool operator==(const LinComb&, const LinComb&) = default;

private:
    map_type terms_;
};

/// Linear combination of fixed-arity tensors key_1 (x) ... (x) key_a.
template <class Key>
class TensorComb {
public:
    using Tensor = std::vector<Key>;
    using map_type = std::map<Tensor, Rational>;
    using const_iterator = typename map_type::const_iterator;

    TensorComb() = default;

    void add(Tensor t, const Rational& c) {
        if (c.is_zero()) return;
        if (arity_ == 0) {
            arity_ = t.size();
        } else if (t.size() != arity_) {
            throw std::invalid_argument("TensorComb: mixed tensor arity");
        }
        auto [it, inserted] = terms_.try_emplace(std::move(t), c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    void add(const TensorComb& other, const Rational& scale = Rational(1)) {
        for (const auto& [t, c] : other.terms_) add(t, c * scale);
    }

    Rational coefficient(const Tensor& t) const {
        auto it = terms_.find(t);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Zero when empty.
    std::size_t arity() const { return terms_.empty() ? 0 : arity_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const_iterator begin() const { return terms_.begin(); }
    const_iterator end() const { return terms_.end(); }

    friend bool operator==(const TensorComb& a, const TensorComb& b) { return a.terms_ == b.terms_; }

private:
    std::size_t arity_ = 0;
    map_type terms_;
};

}  // namespace hopf

#endif  // HOPF_LINCOMB_HPP
