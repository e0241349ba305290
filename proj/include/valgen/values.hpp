#pragma once

// Exact values of rank-1 valuations and the finitely generated subgroups of Q
// they generate.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "valgen/error.hpp"

namespace valgen {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// A reduced fraction num/den with den >= 1.
class Value {
public:
    Value() = default;
    Value(std::int64_t n) : q_(n) {} // NOLINT(google-explicit-constructor)
    Value(const BigInt& n) : q_(n) {} // NOLINT(google-explicit-constructor)
    Value(const BigInt& num, const BigInt& den) {
        if (den == 0) fail(ErrorKind::BadParams, "zero denominator");
        q_ = BigRational(num, den);
    }
    explicit Value(BigRational q) : q_(std::move(q)) {}

    BigInt numerator() const { return boost::multiprecision::numerator(q_); }
    BigInt denominator() const { return boost::multiprecision::denominator(q_); }
    const BigRational& rational() const noexcept { return q_; }

    bool is_zero() const { return q_ == 0; }
    bool is_integer() const { return denominator() == 1; }
    int sign() const { return q_.sign(); }

    /// Exact integer value; BadParams when the value is not integral.
    BigInt to_integer() const {
        if (!is_integer()) fail(ErrorKind::BadParams, "value " + str() + " is not an integer");
        return numerator();
    }

    std::string str() const {
        if (is_integer()) return numerator().str();
        return numerator().str() + "/" + denominator().str();
    }

    static Value parse(const std::string& s) {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Value(BigInt(s));
            return Value(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
        } catch (const std::runtime_error&) {
            fail(ErrorKind::Parse, "bad value literal '" + s + "'");
        }
    }

    Value& operator+=(const Value& o) { q_ += o.q_; return *this; }
    Value& operator-=(const Value& o) { q_ -= o.q_; return *this; }
    Value& operator*=(const Value& o) { q_ *= o.q_; return *this; }
    Value& operator/=(const Value& o) {
        if (o.is_zero()) fail(ErrorKind::BadParams, "division by zero value");
        q_ /= o.q_;
        return *this;
    }
    friend Value operator+(Value a, const Value& b) { return a += b; }
    friend Value operator-(Value a, const Value& b) { return a -= b; }
    friend Value operator*(Value a, const Value& b) { return a *= b; }
    friend Value operator/(Value a, const Value& b) { return a /= b; }
    friend Value operator-(const Value& a) { return Value(BigRational(-a.q_)); }

    friend bool operator==(const Value& a, const Value& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Value& a, const Value& b) {
        if (a.q_ < b.q_) return std::strong_ordering::less;
        if (a.q_ > b.q_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
    friend std::ostream& operator<<(std::ostream& os, const Value& v) { return os << v.str(); }

private:
    BigRational q_{0};
};

inline BigInt ipow(const BigInt& base, std::uint64_t e) {
    BigInt r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r *= base;
    return r;
}

/// base^e for any integer exponent (negative exponents give fractions).
inline Value vpow(const Value& base, std::int64_t e) {
    if (e >= 0) {
        Value r(1);
        for (std::int64_t i = 0; i < e; ++i) r *= base;
        return r;
    }
    return Value(1) / vpow(base, -e);
}

inline BigInt gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }
inline BigInt lcm(const BigInt& a, const BigInt& b) { return boost::multiprecision::lcm(a, b); }

/// Exponent of p in n (n != 0).
inline std::uint64_t padic_valuation(BigInt n, const BigInt& p) {
    if (n == 0) fail(ErrorKind::BadParams, "p-adic valuation of zero");
    if (n < 0) n = -n;
    std::uint64_t k = 0;
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    return k;
}

/// log_p(n) if n is a power of p, otherwise -1.
inline std::int64_t exact_log(const BigInt& n, const BigInt& p) {
    if (n <= 0) return -1;
    BigInt m = n;
    std::int64_t k = 0;
    while (m % p == 0) {
        m /= p;
        ++k;
    }
    return m == 1 ? k : -1;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// The cyclic group g*Z inside Q, g >= 0 (g == 0 is the trivial group).
///
/// Every finitely generated subgroup of Q is of this form. When 1 lies in the
/// group, g = 1/d and `denominator()` returns d.
class ValueGroup {
public:
    ValueGroup() : gen_(1) {}
    explicit ValueGroup(Value generator) : gen_(generator.sign() < 0 ? -generator : generator) {}

    static ValueGroup integers() { return ValueGroup(Value(1)); }
    static ValueGroup trivial() { return ValueGroup(Value(0)); }
    /// (1/d)Z
    static ValueGroup with_denominator(const BigInt& d) { return ValueGroup(Value(BigInt(1), d)); }
    static ValueGroup generated_by(const std::vector<Value>& gens) {
        ValueGroup g = trivial();
        for (const auto& v : gens) g = g.join(v);
        return g;
    }

    const Value& generator() const noexcept { return gen_; }
    bool is_trivial() const { return gen_.is_zero(); }

    /// d with G = (1/d)Z. BadParams when 1 is not a generator-multiple of this form.
    BigInt denominator() const {
        if (is_trivial() || gen_.numerator() != 1)
            fail(ErrorKind::BadParams, "group " + str() + " is not of the form (1/d)Z");
        return gen_.denominator();
    }

    bool contains(const Value& v) const {
        if (is_trivial()) return v.is_zero();
        return (v / gen_).is_integer();
    }

    /// Smallest group containing this one and v: gcd of the two generators in Q.
    ValueGroup join(const Value& v) const {
        Value w = v.sign() < 0 ? -v : v;
        if (w.is_zero()) return *this;
        if (is_trivial()) return ValueGroup(w);
        const BigInt a = gen_.numerator() * w.denominator();
        const BigInt b = w.numerator() * gen_.denominator();
        return ValueGroup(Value(gcd(a, b), gen_.denominator() * w.denominator()));
    }

    std::string str() const {
        if (is_trivial()) return "0";
        if (gen_ == Value(1)) return "Z";
        return "(" + gen_.str() + ")Z";
    }

    friend bool operator==(const ValueGroup& a, const ValueGroup& b) { return a.gen_ == b.gen_; }

private:
    Value gen_;
};

inline ValueGroup group_join(const ValueGroup& g, const Value& v) {
    if (v.sign() < 0) fail(ErrorKind::BadParams, "group_join expects a nonnegative value");
    return g.join(v);
}

/// [big : small]
inline BigInt group_index(const ValueGroup& big, const ValueGroup& small) {
    if (small.is_trivial()) {
        if (big.is_trivial()) return 1;
        fail(ErrorKind::NotSubgroup, "index of the trivial group in " + big.str() + " is infinite");
    }
    if (big.is_trivial()) fail(ErrorKind::NotSubgroup, small.str() + " is not inside the trivial group");
    const Value ratio = small.generator() / big.generator();
    if (!ratio.is_integer())
        fail(ErrorKind::NotSubgroup, small.str() + " is not a subgroup of " + big.str());
    return ratio.numerator();
}

/// Smallest n >= 1 with n*v in G.
inline BigInt order_in_quotient(const Value& v, const ValueGroup& g) {
    if (v.is_zero()) return 1;
    if (g.is_trivial()) fail(ErrorKind::NotSubgroup, "nonzero value has infinite order modulo the trivial group");
    return (v / g.generator()).denominator();
}

// U-sequence values. gamma_0 = 1, gamma_1 = 1/p, then
//   gamma_j = (p^{2j-2} + gamma_{j-1}) / p     (j odd)
//   gamma_j = (p^{2j-1} + gamma_{j-1}) / p^3   (j even)
inline Value gamma_bar_recursive(unsigned j, std::uint64_t p) {
    const Value P(static_cast<std::int64_t>(p));
    Value g(1);
    if (j == 0) return g;
    g = Value(1) / P;
    for (unsigned i = 2; i <= j; ++i) {
        if (i % 2 == 1)
            g = (vpow(P, 2 * i - 2) + g) / P;
        else
            g = (vpow(P, 2 * i - 1) + g) / vpow(P, 3);
    }
    return g;
}

// Closed form: with i = j - 1,
//   gamma_j = p^{2i-2} * sum_{t=0}^{i} p^{-4t}   (i odd)
//   gamma_j = p^{2i-1} * sum_{t=0}^{i} p^{-4t}   (i even)
inline Value gamma_bar_closed(unsigned j, std::uint64_t p) {
    if (j == 0) return Value(1);
    const Value P(static_cast<std::int64_t>(p));
    const std::int64_t i = static_cast<std::int64_t>(j) - 1;
    Value sum(0);
    for (std::int64_t t = 0; t <= i; ++t) sum += vpow(P, -4 * t);
    return vpow(P, i % 2 == 1 ? 2 * i - 2 : 2 * i - 1) * sum;
}

inline Value gamma_bar(unsigned j, std::uint64_t p) { return gamma_bar_recursive(j, p); }

// Q/P-sequence values: beta_0 = 1 and p^2 beta_j = p^{2j-2} + beta_{j-1} for
// j >= 2, beta_1 = 1/p^2.
inline Value beta_bar_recursive(unsigned j, std::uint64_t p) {
    const Value P(static_cast<std::int64_t>(p));
    Value b(1);
    if (j == 0) return b;
    b = Value(1) / vpow(P, 2);
    for (unsigned i = 2; i <= j; ++i) b = (vpow(P, 2 * i - 2) + b) / vpow(P, 2);
    return b;
}

/// beta_j = p^{2j-4} * sum_{t=0}^{j-1} p^{-4t} for j >= 1.
inline Value beta_bar_closed(unsigned j, std::uint64_t p) {
    if (j == 0) return Value(1);
    const Value P(static_cast<std::int64_t>(p));
    Value sum(0);
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(j); ++t) sum += vpow(P, -4 * t);
    return vpow(P, 2 * static_cast<std::int64_t>(j) - 4) * sum;
}

/// Expected stage Gamma_{i-1} of the U-sequence: (1/p^{2i-2})Z for i odd,
/// (1/p^{2i-3})Z for i even (i >= 1).
inline ValueGroup u_stage_group(unsigned i, std::uint64_t p) {
    if (i == 0) fail(ErrorKind::BadParams, "stage index starts at 1");
    const unsigned e = (i % 2 == 1) ? 2 * i - 2 : 2 * i - 3;
    return ValueGroup::with_denominator(ipow(BigInt(p), e));
}

} // namespace valgen
