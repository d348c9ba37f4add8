#ifndef HOPF_RATIONAL_HPP
#define HOPF_RATIONAL_HPP

// Exact rational scalars backed by GMP.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hopf {

using Integer = mpz_class;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
class Rational {
public:
    Rational() = default;
    Rational(int v) : v_(v) {}
    Rational(long v) : v_(v) {}
    Rational(long long v) : v_(Integer(std::to_string(v))) {}
    Rational(unsigned v) : v_(v) {}
    Rational(unsigned long v) : v_(v) {}
    Rational(const Integer& v) : v_(v) {}

    Rational(const Integer& num, const Integer& den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

    /// Parses "p", "p/q" or "-p/q".
    static Rational parse(std::string_view text) {
        std::string s(text);
        auto trim = [](std::string& x) {
            auto b = x.find_first_not_of(" \t");
            auto e = x.find_last_not_of(" \t");
            x = (b == std::string::npos) ? std::string() : x.substr(b, e - b + 1);
        };
        trim(s);
        if (s.empty()) throw std::invalid_argument("Rational: empty string");
        auto slash = s.find('/');
        Integer num, den(1);
        try {
            if (slash == std::string::npos) {
                num = Integer(s, 10);
            } else {
                std::string a = s.substr(0, slash), b = s.substr(slash + 1);
                trim(a);
                trim(b);
                num = Integer(a, 10);
                den = Integer(b, 10);
            }
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("Rational: cannot parse '" + s + "'");
        }
        return Rational(num, den);
    }

    Integer numerator() const { return v_.get_num(); }
    Integer denominator() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }
    double to_double() const { return v_.get_d(); }

    /// "p/q", or "p" when q = 1.
    std::string str() const {
        if (is_integer()) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) {
        Rational r;
        r.v_ = -a.v_;
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class v_;
};

/// Integer power; pow(x, 0) == 1 for every x including 0.
inline Rational pow(const Rational& base, unsigned exponent) {
    Rational result(1), b = base;
    while (exponent) {
        if (exponent & 1u) result *= b;
        b *= b;
        exponent >>= 1u;
    }
    return result;
}

inline Integer factorial(unsigned n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Integer binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return Integer(0);
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

/// Multiset coefficient: number of size-k multisets from n kinds.
inline Integer multichoose(long n, long k) {
    if (k == 0) return Integer(1);
    if (n <= 0) return Integer(0);
    return binomial(n + k - 1, k);
}

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

}  // namespace hopf

template <>
struct std::hash<hopf::Rational> {
    std::size_t operator()(const hopf::Rational& r) const {
        return std::hash<std::string>{}(r.str());
    }
};

#endif  // HOPF_RATIONAL_HPP
