#pragma once

// Text grammar for bivariate polynomials:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' integer)?
//   atom   := integer | variable | '(' expr ')'
// Integer coefficients are reduced mod p. `x` and `y` always name the two chart
// variables; a chart may add aliases (u, v).

#include <cctype>
#include <cstdint>
#include <map>
#include <string>

#include "valgen/poly.hpp"

namespace valgen {

class PolyParser {
public:
    /// aliases: extra variable name -> 0 (first variable) or 1 (second variable)
    PolyParser(Field field, std::map<std::string, int> aliases = {}) : field_(std::move(field)) {
        vars_ = {{"x", 0}, {"y", 1}};
        for (const auto& [name, idx] : aliases) vars_[name] = idx;
    }

    Poly2 parse(const std::string& text) {
        src_ = text;
        pos_ = 0;
        Poly2 r = expr();
        skip();
        if (pos_ != src_.size()) error("unexpected '" + std::string(1, src_[pos_]) + "'");
        return r;
    }

private:
    [[noreturn]] void error(const std::string& msg) const {
        fail(ErrorKind::Parse, msg + " at position " + std::to_string(pos_) + " in \"" + src_ + "\"");
    }

    void skip() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Poly2 expr() {
        Poly2 r(field_);
        bool negate = false;
        if (accept('-'))
            negate = true;
        else
            accept('+');
        Poly2 t = term();
        r = negate ? -t : t;
        for (;;) {
            if (accept('+'))
                r += term();
            else if (accept('-'))
                r -= term();
            else
                break;
        }
        return r;
    }

    Poly2 term() {
        Poly2 r = factor();
        while (accept('*')) r = r * factor();
        return r;
    }

    Poly2 factor() {
        Poly2 base = atom();
        if (accept('^')) {
            skip();
            const std::uint64_t e = integer();
            return base.pow(e);
        }
        return base;
    }

    std::uint64_t integer() {
        skip();
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) error("expected integer");
        std::uint64_t v = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            if (v > (UINT64_MAX - 9) / 10) error("integer literal too large");
            v = v * 10 + static_cast<std::uint64_t>(src_[pos_++] - '0');
        }
        return v;
    }

    Poly2 atom() {
        skip();
        if (pos_ >= src_.size()) error("unexpected end of input");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Poly2 r = expr();
            if (!accept(')')) error("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::uint64_t v = integer();
            return Poly2::constant(field_, field_.from_int(static_cast<std::int64_t>(v % field_.characteristic())));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name;
            while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) name += src_[pos_++];
            auto it = vars_.find(name);
            if (it == vars_.end()) {
                pos_ -= name.size();
                error("unknown variable '" + name + "'");
            }
            return it->second == 0 ? Poly2::x(field_) : Poly2::y(field_);
        }
        error("unexpected '" + std::string(1, c) + "'");
    }

    Field field_;
    std::map<std::string, int> vars_;
    std::string src_;
    std::size_t pos_ = 0;
};

inline Poly2 parse_poly(const std::string& text, const Field& field, std::map<std::string, int> aliases = {}) {
    return PolyParser(field, std::move(aliases)).parse(text);
}

} // namespace valgen
