#pragma once

// Finite fields F_q, q = p^m. Prime fields use plain modular arithmetic;
// extensions use a polynomial basis modulo a monic irreducible of degree m
// with log/antilog tables for multiplication.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "valgen/error.hpp"
#include "valgen/values.hpp"

namespace valgen {

/// Element of F_q encoded as the integer sum c_i p^i of its basis coordinates.
using FieldElem = std::uint32_t;

class Field {
public:
    Field() : Field(2, 1) {}

    Field(std::uint32_t p, std::uint32_t m = 1) : p_(p), m_(m) {
        if (!is_prime(p)) fail(ErrorKind::BadParams, "characteristic " + std::to_string(p) + " is not prime");
        if (m == 0) fail(ErrorKind::BadParams, "extension degree must be positive");
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < m; ++i) {
            q *= p;
            if (q > (1u << 16)) fail(ErrorKind::BadParams, "field size above 65536 is not supported");
        }
        q_ = static_cast<std::uint32_t>(q);
        if (m_ > 1) tables_ = build_tables();
    }

    /// F_q from q itself; q must be a prime power.
    static Field of_size(std::uint32_t q) {
        for (std::uint32_t p = 2; p <= q; ++p) {
            if (q % p != 0) continue;
            std::uint32_t m = 0, r = q;
            while (r % p == 0) {
                r /= p;
                ++m;
            }
            if (r != 1) break;
            return Field(p, m);
        }
        fail(ErrorKind::BadParams, "field size " + std::to_string(q) + " is not a prime power");
    }

    std::uint32_t characteristic() const noexcept { return p_; }
    std::uint32_t degree() const noexcept { return m_; }
    std::uint32_t size() const noexcept { return q_; }

    FieldElem zero() const noexcept { return 0; }
    FieldElem one() const noexcept { return 1; }

    FieldElem from_int(std::int64_t n) const noexcept {
        std::int64_t r = n % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return static_cast<FieldElem>(r);
    }

    FieldElem add(FieldElem a, FieldElem b) const noexcept {
        if (m_ == 1) {
            std::uint32_t s = a + b;
            return s >= p_ ? s - p_ : s;
        }
        FieldElem r = 0, scale = 1;
        for (std::uint32_t i = 0; i < m_; ++i) {
            r += ((a % p_ + b % p_) % p_) * scale;
            a /= p_;
            b /= p_;
            scale *= p_;
        }
        return r;
    }

    FieldElem neg(FieldElem a) const noexcept {
        if (m_ == 1) return a == 0 ? 0 : p_ - a;
        FieldElem r = 0, scale = 1;
        for (std::uint32_t i = 0; i < m_; ++i) {
            r += ((p_ - a % p_) % p_) * scale;
            a /= p_;
            scale *= p_;
        }
        return r;
    }

    FieldElem sub(FieldElem a, FieldElem b) const noexcept { return add(a, neg(b)); }

    FieldElem mul(FieldElem a, FieldElem b) const noexcept {
        if (a == 0 || b == 0) return 0;
        if (m_ == 1) return static_cast<FieldElem>((static_cast<std::uint64_t>(a) * b) % p_);
        const auto& t = *tables_;
        return t.exp[(t.log[a] + t.log[b]) % (q_ - 1)];
    }

    FieldElem inv(FieldElem a) const {
        if (a == 0) fail(ErrorKind::NotAUnit, "inverse of zero in F_" + std::to_string(q_));
        if (m_ == 1) return pow(a, p_ - 2);
        const auto& t = *tables_;
        return t.exp[(q_ - 1 - t.log[a]) % (q_ - 1)];
    }

    FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }

    FieldElem pow(FieldElem a, std::uint64_t e) const noexcept {
        FieldElem r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    /// Frobenius a -> a^p.
    FieldElem frobenius(FieldElem a) const noexcept { return m_ == 1 ? a : pow(a, p_); }

    /// Some b with b^n = a, or NotInField when a has no n-th root in F_q.
    FieldElem nth_root(FieldElem a, std::uint64_t n) const {
        if (n == 0) fail(ErrorKind::BadParams, "0-th root");
        for (FieldElem b = 0; b < q_; ++b)
            if (pow(b, n) == a) return b;
        fail(ErrorKind::NotInField, "no " + std::to_string(n) + "-th root of " + to_string(a) + " in F_" +
                                        std::to_string(q_));
    }

    std::string to_string(FieldElem a) const {
        if (m_ == 1) return std::to_string(a);
        // coordinates c_0 + c_1 t + ... in the polynomial basis
        std::string s;
        for (std::uint32_t i = 0; i < m_; ++i) {
            FieldElem c = a % p_;
            a /= p_;
            if (c == 0) continue;
            std::string term = i == 0 ? std::to_string(c)
                                      : (c == 1 ? "" : std::to_string(c) + "*") + (i == 1 ? "t" : "t^" + std::to_string(i));
            s = s.empty() ? term : term + "+" + s;
        }
        return s.empty() ? "0" : "(" + s + ")";
    }

    friend bool operator==(const Field& a, const Field& b) noexcept { return a.p_ == b.p_ && a.m_ == b.m_; }

private:
    struct Tables {
        std::vector<FieldElem> exp;
        std::vector<std::uint32_t> log;
        std::vector<std::uint32_t> modulus; // monic, degree m, low to high
    };

    // Multiply two basis-encoded polynomials modulo `mod` with schoolbook arithmetic.
    FieldElem slow_mul(FieldElem a, FieldElem b, const std::vector<std::uint32_t>& mod) const {
        std::vector<std::uint32_t> ca(m_), cb(m_), prod(2 * m_, 0);
        for (std::uint32_t i = 0; i < m_; ++i) {
            ca[i] = a % p_;
            a /= p_;
            cb[i] = b % p_;
            b /= p_;
        }
        for (std::uint32_t i = 0; i < m_; ++i)
            for (std::uint32_t j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
        for (std::uint32_t k = 2 * m_ - 1; k >= m_; --k) {
            const std::uint32_t c = prod[k];
            if (c == 0) continue;
            for (std::uint32_t i = 0; i <= m_; ++i)
                prod[k - m_ + i] = (prod[k - m_ + i] + (p_ - c) * mod[i]) % p_;
        }
        FieldElem r = 0, scale = 1;
        for (std::uint32_t i = 0; i < m_; ++i) {
            r += prod[i] * scale;
            scale *= p_;
        }
        return r;
    }

    // Search monic moduli in order until t is a generator of the unit group;
    // such a modulus is irreducible (primitive).
    std::shared_ptr<const Tables> build_tables() const {
        for (FieldElem low = 0; low < q_; ++low) {
            std::vector<std::uint32_t> mod(m_ + 1);
            FieldElem r = low;
            for (std::uint32_t i = 0; i < m_; ++i) {
                mod[i] = r % p_;
                r /= p_;
            }
            mod[m_] = 1;
            if (mod[0] == 0) continue;
            auto t = std::make_shared<Tables>();
            t->exp.assign(q_ - 1, 0);
            t->log.assign(q_, 0);
            t->modulus = mod;
            FieldElem cur = 1;
            bool primitive = true;
            std::vector<bool> seen(q_, false);
            for (std::uint32_t k = 0; k < q_ - 1; ++k) {
                if (seen[cur]) {
                    primitive = false;
                    break;
                }
                seen[cur] = true;
                t->exp[k] = cur;
                t->log[cur] = k;
                cur = slow_mul(cur, p_, mod); // multiply by t (encoded as p)
            }
            if (primitive && cur == 1) return t;
        }
        fail(ErrorKind::BadParams, "no primitive modulus found");
    }

    std::uint32_t p_ = 2;
    std::uint32_t m_ = 1;
    std::uint32_t q_ = 2;
    std::shared_ptr<const Tables> tables_;
};

} // namespace valgen
