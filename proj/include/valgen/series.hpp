#pragma once

// x-adically truncated series with polynomial coefficients in y: elements of
// k[[x]][y] known modulo x^M (and optionally modulo y^N when a unit involving
// y has been inverted).

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>

#include "valgen/poly.hpp"

namespace valgen {

class XSeries {
public:
    static constexpr std::int64_t kExactY = std::numeric_limits<std::int64_t>::max();

    XSeries(Poly2 body, std::int64_t precision, std::int64_t y_cutoff = kExactY)
        : precision_(precision), y_cutoff_(y_cutoff), body_(truncate(std::move(body), precision, y_cutoff)) {
        if (precision < 0) fail(ErrorKind::BadParams, "negative series precision");
    }

    const Poly2& body() const noexcept { return body_; }
    std::int64_t precision() const noexcept { return precision_; }
    std::int64_t y_cutoff() const noexcept { return y_cutoff_; }
    const Field& field() const noexcept { return body_.field(); }

    friend XSeries operator+(const XSeries& a, const XSeries& b) {
        return {a.body_ + b.body_, std::min(a.precision_, b.precision_), std::min(a.y_cutoff_, b.y_cutoff_)};
    }
    friend XSeries operator-(const XSeries& a, const XSeries& b) {
        return {a.body_ - b.body_, std::min(a.precision_, b.precision_), std::min(a.y_cutoff_, b.y_cutoff_)};
    }
    friend XSeries operator*(const XSeries& a, const XSeries& b) {
        const std::int64_t m = std::min(a.precision_, b.precision_);
        const std::int64_t n = std::min(a.y_cutoff_, b.y_cutoff_);
        Poly2 r(a.field());
        for (const auto& [ea, ca] : a.body_.terms())
            for (const auto& [eb, cb] : b.body_.terms()) {
                const std::int64_t xe = ea.x + eb.x;
                const std::int64_t ye = ea.y + eb.y;
                if (xe < m && ye < n) r.add_term(a.field().mul(ca, cb), xe, ye);
            }
        return {std::move(r), m, n};
    }

    /// True when this series is zero to its precision.
    bool is_zero() const noexcept { return body_.is_zero(); }

    std::string str(const VarNames& names = {}) const {
        std::string s = body_.str(names) + " + O(" + names.x + "^" + std::to_string(precision_) + ")";
        if (y_cutoff_ != kExactY) s += " mod " + names.y + "^" + std::to_string(y_cutoff_);
        return s;
    }

private:
    static Poly2 truncate(Poly2 p, std::int64_t m, std::int64_t n) {
        Poly2 r(p.field());
        for (const auto& [e, c] : p.terms())
            if (e.x < m && e.y < n) r.add_term(c, e.x, e.y);
        return r;
    }

    std::int64_t precision_;
    std::int64_t y_cutoff_;
    Poly2 body_;
};

/// Largest m with x^m dividing s; Indeterminate when s vanishes to its precision.
inline std::int64_t x_order(const XSeries& s) {
    if (s.is_zero())
        fail(ErrorKind::Indeterminate, "series is zero modulo x^" + std::to_string(s.precision()));
    return x_order(s.body());
}

/// Inverse of a unit u (u(0,0) != 0) modulo x^M. When u involves y the result
/// is also truncated modulo y^N (N defaults to M).
inline XSeries invert_unit(const XSeries& u, std::int64_t precision, std::int64_t y_cutoff = -1) {
    const Field& F = u.field();
    const FieldElem c0 = u.body().constant_term();
    if (c0 == 0) fail(ErrorKind::NotAUnit, "constant term is zero");
    if (y_cutoff < 0) y_cutoff = u.body().deg_y() > 0 ? precision : XSeries::kExactY;
    const std::int64_t m = std::min(precision, u.precision());
    const std::int64_t n = std::min(y_cutoff, u.y_cutoff());

    // u = c0 (1 - w) with w in the maximal ideal; 1/u = c0^{-1} sum w^k, and
    // w^k vanishes modulo (x^m, y^n) once k >= m + n (or k >= m if n is exact).
    const FieldElem c0inv = F.inv(c0);
    XSeries w(Poly2::constant(F, 1) - u.body().scaled(c0inv), m, n);
    XSeries term(Poly2::constant(F, 1), m, n);
    XSeries sum = term;
    const std::int64_t bound = n == XSeries::kExactY ? m : m + n;
    for (std::int64_t k = 1; k <= bound && !term.is_zero(); ++k) {
        term = term * w;
        sum = sum + term;
    }
    return XSeries(sum.body().scaled(c0inv), m, n);
}

inline XSeries invert_unit(const Poly2& u, std::int64_t precision, std::int64_t y_cutoff = -1) {
    return invert_unit(XSeries(u, precision), precision, y_cutoff);
}

} // namespace valgen
