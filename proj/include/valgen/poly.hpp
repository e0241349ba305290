#pragma once

// Sparse bivariate polynomials k[x,y] over F_q. The second variable plays the
// role of y (or v) in every chart; division is always Euclidean in y over k[x].

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "valgen/error.hpp"
#include "valgen/field.hpp"

namespace valgen {

/// Exponent pair keyed (y-degree, x-degree) so the map's tail holds the
/// leading y-terms.
struct Exp2 {
    std::int64_t y = 0;
    std::int64_t x = 0;
    friend auto operator<=>(const Exp2&, const Exp2&) = default;
};

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::Overflow, "exponent overflow");
    return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) fail(ErrorKind::Overflow, "exponent overflow");
    return r;
}

struct VarNames {
    std::string x = "x";
    std::string y = "y";
};

class Poly2 {
public:
    using Terms = std::map<Exp2, FieldElem>;

    Poly2() = default;
    explicit Poly2(Field f) : field_(std::move(f)) {}

    static Poly2 constant(const Field& f, FieldElem c) {
        Poly2 r(f);
        if (c != 0) r.terms_[{0, 0}] = c;
        return r;
    }
    static Poly2 monomial(const Field& f, FieldElem c, std::int64_t xdeg, std::int64_t ydeg) {
        Poly2 r(f);
        if (xdeg < 0 || ydeg < 0) fail(ErrorKind::BadParams, "negative exponent in monomial");
        if (c != 0) r.terms_[{ydeg, xdeg}] = c;
        return r;
    }
    static Poly2 x(const Field& f, std::int64_t k = 1) { return monomial(f, 1, k, 0); }
    static Poly2 y(const Field& f, std::int64_t k = 1) { return monomial(f, 1, 0, k); }

    const Field& field() const noexcept { return field_; }
    const Terms& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    FieldElem coeff(std::int64_t xdeg, std::int64_t ydeg) const {
        auto it = terms_.find({ydeg, xdeg});
        return it == terms_.end() ? 0 : it->second;
    }
    FieldElem constant_term() const { return coeff(0, 0); }

    /// Add c*x^i*y^j in place.
    void add_term(FieldElem c, std::int64_t xdeg, std::int64_t ydeg) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(Exp2{ydeg, xdeg}, c);
        if (!inserted) {
            it->second = field_.add(it->second, c);
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::int64_t deg_y() const {
        if (is_zero()) return -1;
        return terms_.rbegin()->first.y;
    }
    std::int64_t deg_x() const {
        std::int64_t d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, e.x);
        return d;
    }

    /// Coefficient of y^j as a polynomial in x alone.
    Poly2 y_coeff(std::int64_t j) const {
        Poly2 r(field_);
        for (auto it = terms_.lower_bound({j, INT64_MIN}); it != terms_.end() && it->first.y == j; ++it)
            r.terms_.emplace_hint(r.terms_.end(), Exp2{0, it->first.x}, it->second);
        return r;
    }

    Poly2& operator+=(const Poly2& o) {
        for (const auto& [e, c] : o.terms_) add_term(c, e.x, e.y);
        return *this;
    }
    Poly2& operator-=(const Poly2& o) {
        for (const auto& [e, c] : o.terms_) add_term(field_.neg(c), e.x, e.y);
        return *this;
    }
    friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
    friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
    friend Poly2 operator-(const Poly2& a) { return a.scaled(a.field_.neg(1)); }

    friend Poly2 operator*(const Poly2& a, const Poly2& b) {
        Poly2 r(a.field_);
        const Poly2& small = a.size() <= b.size() ? a : b;
        const Poly2& big = a.size() <= b.size() ? b : a;
        for (const auto& [es, cs] : small.terms_)
            for (const auto& [eb, cb] : big.terms_)
                r.add_term(a.field_.mul(cs, cb), checked_add(es.x, eb.x), checked_add(es.y, eb.y));
        return r;
    }
    Poly2& operator*=(const Poly2& o) { return *this = *this * o; }

    Poly2 scaled(FieldElem c) const {
        Poly2 r(field_);
        if (c == 0) return r;
        for (const auto& [e, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, field_.mul(v, c));
        return r;
    }

    /// this * c * x^i * y^j
    Poly2 shifted(FieldElem c, std::int64_t i, std::int64_t j) const {
        Poly2 r(field_);
        if (c == 0) return r;
        for (const auto& [e, v] : terms_)
            r.terms_.emplace_hint(r.terms_.end(), Exp2{checked_add(e.y, j), checked_add(e.x, i)}, field_.mul(v, c));
        return r;
    }

    /// this^p, computed coefficientwise (characteristic p).
    Poly2 frobenius() const {
        Poly2 r(field_);
        const std::int64_t p = field_.characteristic();
        for (const auto& [e, v] : terms_)
            r.terms_.emplace_hint(r.terms_.end(), Exp2{checked_mul(e.y, p), checked_mul(e.x, p)},
                                  field_.frobenius(v));
        return r;
    }

    /// this^e, splitting e into base-p digits so that p-th powers are Frobenius.
    Poly2 pow(std::uint64_t e) const {
        Poly2 result = constant(field_, 1);
        Poly2 base = *this;
        const std::uint64_t p = field_.characteristic();
        while (e) {
            const std::uint64_t digit = e % p;
            if (digit) {
                Poly2 t = constant(field_, 1);
                for (std::uint64_t i = 0; i < digit; ++i) t = t * base;
                result = result * t;
            }
            e /= p;
            if (e) base = base.frobenius();
        }
        return result;
    }

    /// Exact division by x^k; NonPolynomial if some term has x-degree < k.
    Poly2 div_x_power(std::int64_t k) const {
        Poly2 r(field_);
        for (const auto& [e, v] : terms_) {
            if (e.x < k) fail(ErrorKind::NonPolynomial, "polynomial is not divisible by x^" + std::to_string(k));
            r.terms_.emplace_hint(r.terms_.end(), Exp2{e.y, e.x - k}, v);
        }
        return r;
    }

    /// Terms with x-degree < m (reduction mod x^m).
    Poly2 truncate_x(std::int64_t m) const {
        Poly2 r(field_);
        for (const auto& [e, v] : terms_)
            if (e.x < m) r.terms_.emplace_hint(r.terms_.end(), e, v);
        return r;
    }

    /// f(0, y)
    Poly2 at_x_zero() const { return truncate_x(1); }

    /// Substitute y := g (x unchanged).
    Poly2 substitute_y(const Poly2& g) const { return substitute(Poly2::x(field_), g); }

    /// Substitute x := gx, y := gy.
    Poly2 substitute(const Poly2& gx, const Poly2& gy) const {
        std::map<std::int64_t, Poly2> ypow, xpow;
        auto power = [](std::map<std::int64_t, Poly2>& cache, const Poly2& base, std::int64_t k) -> const Poly2& {
            auto it = cache.find(k);
            if (it == cache.end()) it = cache.emplace(k, base.pow(static_cast<std::uint64_t>(k))).first;
            return it->second;
        };
        // group by y-degree: sum_j (sum_i c_ij gx^i) gy^j
        Poly2 r(field_);
        auto it = terms_.begin();
        while (it != terms_.end()) {
            const std::int64_t j = it->first.y;
            Poly2 coeff(field_);
            for (; it != terms_.end() && it->first.y == j; ++it)
                coeff += power(xpow, gx, it->first.x).scaled(it->second);
            r += coeff * power(ypow, gy, j);
        }
        return r;
    }

    std::string str(const VarNames& names = {}) const {
        if (is_zero()) return "0";
        std::string s;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            std::string mono;
            auto factor = [&](const std::string& v, std::int64_t k) {
                if (k == 0) return;
                if (!mono.empty()) mono += "*";
                mono += v;
                if (k > 1) mono += "^" + std::to_string(k);
            };
            factor(names.x, e.x);
            factor(names.y, e.y);
            std::string coef = field_.to_string(c);
            std::string term;
            if (mono.empty())
                term = coef;
            else if (c == 1)
                term = mono;
            else
                term = coef + "*" + mono;
            s += s.empty() ? term : " + " + term;
        }
        return s;
    }

    friend bool operator==(const Poly2& a, const Poly2& b) { return a.terms_ == b.terms_; }

private:
    Field field_;
    Terms terms_;
};

/// Largest m with x^m | f.
inline std::int64_t x_order(const Poly2& f) {
    if (f.is_zero()) fail(ErrorKind::Indeterminate, "x-order of the zero polynomial");
    std::int64_t m = INT64_MAX;
    for (const auto& [e, c] : f.terms()) m = std::min(m, e.x);
    return m;
}

/// y-adic order of f(0, y).
inline std::int64_t y_order_mod_x(const Poly2& f) {
    for (const auto& [e, c] : f.terms())
        if (e.x == 0) return e.y; // map is ordered by y first
    fail(ErrorKind::DivisibleByX, "f(0,y) = 0; strip the power of x first");
}

struct DivRem {
    Poly2 quotient;
    Poly2 remainder;
};

/// f = q*g + r with deg_y r < deg_y g. g must have a constant nonzero leading y-coefficient.
inline DivRem divrem_y(const Poly2& f, const Poly2& g) {
    if (g.is_zero() || g.deg_y() < 0) fail(ErrorKind::NotMonic, "division by zero");
    const std::int64_t dg = g.deg_y();
    const Poly2 lead = g.y_coeff(dg);
    if (lead.size() != 1 || lead.terms().begin()->first.x != 0)
        fail(ErrorKind::NotMonic, "leading y-coefficient of divisor is not a nonzero constant");
    const Field& F = f.field();
    const FieldElem lead_inv = F.inv(lead.terms().begin()->second);

    DivRem out{Poly2(F), f};
    Poly2& r = out.remainder;
    while (!r.is_zero() && r.deg_y() >= dg) {
        const std::int64_t top = r.deg_y();
        const Poly2 c = r.y_coeff(top);
        for (const auto& [e, v] : c.terms()) {
            const FieldElem q = F.mul(v, lead_inv);
            out.quotient.add_term(q, e.x, top - dg);
            r -= g.shifted(q, e.x, top - dg);
        }
    }
    return out;
}

} // namespace valgen
