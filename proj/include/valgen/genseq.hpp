#pragma once

// Generating sequences (key polynomials) of rank-1 valuations dominating
// k[x,y]_{(x,y)}: construction of the Artin-Schreier families, validity of the
// index/growth conditions, standard expansions, values, residues and value
// semigroups.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "valgen/error.hpp"
#include "valgen/field.hpp"
#include "valgen/poly.hpp"
#include "valgen/values.hpp"

namespace valgen {

enum class Family { Q, P, U, Custom };

inline std::string to_string(Family f) {
    switch (f) {
    case Family::Q: return "Q";
    case Family::P: return "P";
    case Family::U: return "U";
    case Family::Custom: return "custom";
    }
    return "?";
}

inline Family parse_family(const std::string& s) {
    if (s == "Q" || s == "q") return Family::Q;
    if (s == "P" || s == "p") return Family::P;
    if (s == "U" || s == "u") return Family::U;
    fail(ErrorKind::BadParams, "unknown family '" + s + "' (expected Q, P or U)");
}

/// Variable names of the chart a family lives in: S = k[x,y], R = k[u,v], A = k[x,v].
inline VarNames chart_names(Family f) {
    switch (f) {
    case Family::P: return {"u", "v"};
    case Family::U: return {"x", "v"};
    default: return {"x", "y"};
    }
}

inline std::string chart_label(Family f) {
    switch (f) {
    case Family::P: return "R";
    case Family::U: return "A";
    case Family::Q: return "S";
    default: return "custom";
    }
}

/// Integer power for exponent bookkeeping (overflow checked).
inline std::int64_t ipow64(std::int64_t base, std::int64_t e) {
    std::int64_t r = 1;
    for (std::int64_t i = 0; i < e; ++i) r = checked_mul(r, base);
    return r;
}

/// Step i >= 1 of a family recursion at transform level k >= 1:
///   K_{i+1} = K_i^{n} - (unit) * K_0^{E} * K_{i-1}
/// so that n * value(K_i) = E * value(K_0) + value(K_{i-1}).
struct RecursionStep {
    std::int64_t n = 1;
    std::int64_t e = 0;
};

inline RecursionStep family_step(Family f, std::int64_t p, unsigned level, unsigned i) {
    if (i == 0) fail(ErrorKind::BadParams, "recursion steps start at 1");
    const std::int64_t ii = i;
    switch (f) {
    case Family::Q:
    case Family::P:
        return {p * p, i == 1 ? 0 : ipow64(p, 2 * ii - 2)};
    case Family::U:
        if (level % 2 == 1) {
            if (i == 1) return {p, 0};
            return i % 2 == 1 ? RecursionStep{p, ipow64(p, 2 * ii - 2)} : RecursionStep{p * p * p, ipow64(p, 2 * ii - 1)};
        }
        if (i == 1) return {p * p * p, 0};
        return i % 2 == 1 ? RecursionStep{p * p * p, ipow64(p, 2 * ii - 2)} : RecursionStep{p, ipow64(p, 2 * ii - 3)};
    case Family::Custom: break;
    }
    fail(ErrorKind::BadParams, "custom sequences have no family recursion");
}

/// Values forced by a family recursion from value(K_0) = v0.
inline std::vector<Value> family_values(Family f, std::int64_t p, unsigned level, unsigned count, const Value& v0) {
    std::vector<Value> vals;
    if (count == 0) return vals;
    vals.push_back(v0);
    for (unsigned i = 1; i < count; ++i) {
        const RecursionStep s = family_step(f, p, level, i);
        const Value prev = i == 1 ? v0 : vals[i - 1];
        vals.push_back((Value(s.e) * v0 + prev) / Value(s.n));
    }
    return vals;
}

/// A monomial c * K_0^{m_0} * ... * K_k^{m_k} of a standard expansion.
struct ExpansionTerm {
    FieldElem coeff = 0;
    std::vector<std::int64_t> exps;
};

struct StandardExpansion {
    std::vector<ExpansionTerm> terms;
};

/// K_i^{n_i} = coeff * K^{monomial} + (terms of larger value).
struct KeyRelation {
    std::int64_t n = 1;
    std::vector<std::int64_t> monomial; // exponents over K_0 .. K_{i-1}
    FieldElem coeff = 1;
};

struct ValidityEntry {
    unsigned i = 0;
    BigInt computed_index = 1; // [Gamma_i : Gamma_{i-1}]
    BigInt declared_index = 1;
    bool index_ok = true;
    std::optional<bool> growth_ok; // value_{i+1} > n_i value_i, when K_{i+1} exists
    bool monic_ok = true;
    std::optional<bool> degree_ok; // deg K_{i+1} = n_i deg K_i, when K_{i+1} exists
    std::string note;
};

struct ValidityReport {
    bool ok = true;
    bool base_value_ok = true; // value(K_0) > 0
    std::vector<ValidityEntry> entries;
    std::string first_failure;
};

/// A rational element num/den of the chart's local ring with den a unit.
struct RationalElem {
    Poly2 num;
    Poly2 den;
};

struct ValueResult {
    Value value;
    ExpansionTerm min_term;
    std::size_t min_term_count = 0;
};

class GenSeq {
public:
    GenSeq() = default;

    /// A sequence from explicit keys and assigned values. Declared indices are
    /// read from the degree ratios deg K_{i+1} / deg K_i; the index of the last
    /// key is taken from the value group unless given.
    static GenSeq from_keys(Field field, std::vector<Poly2> keys, std::vector<Value> values, std::string label = "S",
                            VarNames names = {}, std::optional<BigInt> last_index = std::nullopt) {
        GenSeq g;
        g.field_ = std::move(field);
        g.keys_ = std::move(keys);
        g.values_ = std::move(values);
        g.label_ = std::move(label);
        g.names_ = std::move(names);
        g.family_ = Family::Custom;
        g.p_ = g.field_.characteristic();
        if (g.keys_.size() != g.values_.size() || g.keys_.size() < 2)
            fail(ErrorKind::BadParams, "a generating sequence needs at least two keys and one value per key");
        g.declared_.assign(g.keys_.size(), BigInt(1));
        for (std::size_t i = 1; i + 1 < g.keys_.size(); ++i) {
            const auto d0 = g.keys_[i].deg_y(), d1 = g.keys_[i + 1].deg_y();
            g.declared_[i] = (d0 > 0 && d1 % d0 == 0) ? BigInt(d1 / d0) : BigInt(0);
        }
        const std::size_t last = g.keys_.size() - 1;
        g.declared_[last] = last_index ? *last_index : g.computed_index(last);
        g.finish();
        return g;
    }

    const Field& field() const noexcept { return field_; }
    const std::vector<Poly2>& keys() const noexcept { return keys_; }
    const std::vector<Value>& values() const noexcept { return values_; }
    const std::vector<BigInt>& declared_indices() const noexcept { return declared_; }
    const std::string& chart() const noexcept { return label_; }
    const VarNames& names() const noexcept { return names_; }
    Family family() const noexcept { return family_; }
    std::int64_t prime() const noexcept { return p_; }
    std::size_t size() const noexcept { return keys_.size(); }
    unsigned last() const noexcept { return static_cast<unsigned>(keys_.size() - 1); }
    const ValidityReport& validity() const noexcept { return validity_; }
    bool valid() const noexcept { return validity_.ok; }

    /// Gamma_i: group generated by values 0..i.
    ValueGroup stage_group(unsigned i) const {
        return ValueGroup::generated_by(std::vector<Value>(values_.begin(), values_.begin() + i + 1));
    }

    BigInt computed_index(std::size_t i) const {
        if (i == 0) return 1;
        return group_index(stage_group(static_cast<unsigned>(i)), stage_group(static_cast<unsigned>(i - 1)));
    }

    const std::optional<KeyRelation>& relation(unsigned i) const { return relations_.at(i); }

    Value value_of_exps(const std::vector<std::int64_t>& exps) const {
        Value v(0);
        for (std::size_t i = 0; i < exps.size(); ++i)
            if (exps[i] != 0) v += Value(exps[i]) * values_.at(i);
        return v;
    }

    friend GenSeq build_paper_seq(Family family, std::uint32_t p, std::int64_t c, unsigned n, std::optional<Field> field);
    friend ValidityReport validate(const GenSeq& gs);

private:
    void finish();

    Field field_;
    std::vector<Poly2> keys_;
    std::vector<Value> values_;
    std::vector<BigInt> declared_;
    std::vector<std::optional<KeyRelation>> relations_;
    std::string label_;
    VarNames names_;
    Family family_ = Family::Custom;
    std::int64_t p_ = 0;
    ValidityReport validity_;
};

/// Per-key checks: index condition [Gamma_i : Gamma_{i-1}] = n_i, growth
/// value_{i+1} > n_i value_i, monicity and deg K_{i+1} = n_i deg K_i.
inline ValidityReport validate(const GenSeq& gs) {
    ValidityReport rep;
    const auto& keys = gs.keys_;
    const auto& vals = gs.values_;
    auto note_failure = [&](const std::string& msg) {
        if (rep.ok) rep.first_failure = msg;
        rep.ok = false;
    };
    if (vals.empty() || vals[0].sign() <= 0) {
        rep.base_value_ok = false;
        note_failure("value of K_0 must be positive");
    }
    if (keys.empty() || !(keys[0] == Poly2::x(gs.field_))) note_failure("K_0 must be the first chart variable");
    for (unsigned i = 1; i < keys.size(); ++i) {
        ValidityEntry e;
        e.i = i;
        e.declared_index = gs.declared_[i];
        try {
            e.computed_index = gs.computed_index(i);
        } catch (const Error&) {
            e.computed_index = 0;
        }
        e.index_ok = e.declared_index > 0 && e.computed_index == e.declared_index;
        if (!e.index_ok)
            note_failure("index condition fails at i=" + std::to_string(i) + ": [G_i:G_{i-1}]=" +
                         e.computed_index.str() + ", declared " + e.declared_index.str());
        const Poly2& k = keys[i];
        const std::int64_t d = k.deg_y();
        e.monic_ok = d >= 1 && k.y_coeff(d) == Poly2::constant(gs.field_, 1);
        if (!e.monic_ok) note_failure("K_" + std::to_string(i) + " is not monic in the second variable");
        if (i + 1 < keys.size()) {
            const Value bound = Value(e.declared_index) * vals[i];
            e.growth_ok = vals[i + 1] > bound;
            if (!*e.growth_ok)
                note_failure("growth condition fails at i=" + std::to_string(i) + ": " + vals[i + 1].str() +
                             " <= " + bound.str());
            e.degree_ok = BigInt(keys[i + 1].deg_y()) == e.declared_index * BigInt(d);
            if (!*e.degree_ok) note_failure("degree condition fails at i=" + std::to_string(i));
        }
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

namespace detail {

// Digits of f in base K_i (coefficients of degree < deg K_i), recursively
// expanded in K_0..K_{i-1}.
inline void expand_rec(const Poly2& f, unsigned i, const std::vector<Poly2>& keys, std::vector<std::int64_t>& exps,
                       std::vector<ExpansionTerm>& out) {
    if (f.is_zero()) return;
    if (i == 0) {
        for (const auto& [e, c] : f.terms()) {
            exps[0] = e.x;
            out.push_back({c, exps});
        }
        exps[0] = 0;
        return;
    }
    const Poly2& key = keys[i];
    if (f.deg_y() < key.deg_y()) {
        expand_rec(f, i - 1, keys, exps, out);
        return;
    }
    Poly2 q = f;
    std::int64_t m = 0;
    while (!q.is_zero()) {
        DivRem dr = divrem_y(q, key);
        exps[i] = m;
        expand_rec(dr.remainder, i - 1, keys, exps, out);
        q = std::move(dr.quotient);
        ++m;
    }
    exps[i] = 0;
}

} // namespace detail

/// Standard expansion f = sum c * x^{m_0} K_1^{m_1} ... K_k^{m_k}, 0 <= m_i < n_i.
inline StandardExpansion expand(const Poly2& f, const GenSeq& gs) {
    if (f.is_zero()) fail(ErrorKind::BadParams, "expansion of zero");
    const unsigned top = gs.last();
    const auto& keys = gs.keys();
    const BigInt span = gs.declared_indices()[top] * BigInt(keys[top].deg_y());
    if (BigInt(f.deg_y()) >= span)
        fail(ErrorKind::SequenceTooShort, "deg_y f = " + std::to_string(f.deg_y()) + " needs keys beyond K_" +
                                              std::to_string(top) + " (span " + span.str() + ")");
    StandardExpansion ex;
    std::vector<std::int64_t> exps(keys.size(), 0);
    detail::expand_rec(f, top, keys, exps, ex.terms);
    return ex;
}

inline void require_valid(const GenSeq& gs) {
    if (!gs.valid()) fail(ErrorKind::InvalidSequence, gs.validity().first_failure);
}

/// nu(f) = min over the standard expansion; the minimum is attained once.
inline ValueResult value_detail(const Poly2& f, const GenSeq& gs) {
    require_valid(gs);
    if (f.is_zero()) fail(ErrorKind::BadParams, "value of zero is infinite");
    const StandardExpansion ex = expand(f, gs);
    ValueResult r;
    bool first = true;
    for (const auto& t : ex.terms) {
        const Value v = gs.value_of_exps(t.exps);
        if (first || v < r.value) {
            r.value = v;
            r.min_term = t;
            r.min_term_count = 1;
            first = false;
        } else if (v == r.value) {
            ++r.min_term_count;
        }
    }
    return r;
}

inline Value value_of(const Poly2& f, const GenSeq& gs) { return value_detail(f, gs).value; }

inline Value value_of(const RationalElem& f, const GenSeq& gs) {
    if (f.den.constant_term() == 0) fail(ErrorKind::NotAUnit, "denominator is not a unit");
    return value_of(f.num, gs);
}

/// Residue of a value-zero Laurent monomial prod K_i^{e_i}, obtained by
/// rewriting with the key relations K_i^{n_i} = c_i K^{mono_i} + (higher).
inline FieldElem monomial_residue(std::vector<std::int64_t> exps, const GenSeq& gs) {
    const Field& F = gs.field();
    FieldElem res = 1;
    exps.resize(std::max(exps.size(), gs.size()), 0);
    for (std::size_t i = exps.size() - 1; i >= 1; --i) {
        if (exps[i] == 0) continue;
        if (i >= gs.size() || !gs.relation(static_cast<unsigned>(i)))
            fail(ErrorKind::Indeterminate, "no relation known for K_" + std::to_string(i));
        const KeyRelation& rel = *gs.relation(static_cast<unsigned>(i));
        if (exps[i] % rel.n != 0)
            fail(ErrorKind::ValueMismatch, "Laurent monomial does not have value zero");
        const std::int64_t k = exps[i] / rel.n;
        exps[i] = 0;
        for (std::size_t j = 0; j < rel.monomial.size(); ++j) exps[j] = checked_add(exps[j], checked_mul(k, rel.monomial[j]));
        const FieldElem ck = F.pow(rel.coeff, static_cast<std::uint64_t>(k < 0 ? -k : k));
        res = F.mul(res, k < 0 ? F.inv(ck) : ck);
    }
    if (exps[0] != 0) fail(ErrorKind::ValueMismatch, "Laurent monomial does not have value zero");
    return res;
}

/// Residue in k of f/g at the valuation, for nu(f) = nu(g).
inline FieldElem residue_of_quotient(const Poly2& f, const Poly2& g, const GenSeq& gs) {
    const ValueResult vf = value_detail(f, gs);
    const ValueResult vg = value_detail(g, gs);
    if (vf.value != vg.value)
        fail(ErrorKind::ValueMismatch, "values differ: " + vf.value.str() + " vs " + vg.value.str());
    std::vector<std::int64_t> diff(gs.size(), 0);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = vf.min_term.exps[i] - vg.min_term.exps[i];
    const FieldElem chi = monomial_residue(diff, gs);
    const Field& F = gs.field();
    return F.mul(F.div(vf.min_term.coeff, vg.min_term.coeff), chi);
}

struct ValSemigroup {
    Value bound;
    std::vector<Value> elements;

    bool contains(const Value& v) const { return std::binary_search(elements.begin(), elements.end(), v); }
};

/// S(nu) intersected with [0, B]: sums m_0 g_0 + sum m_i g_i with m_0 >= 0 and 0 <= m_i < n_i.
inline ValSemigroup semigroup(const GenSeq& gs, const Value& bound, std::size_t max_elements = 1000000) {
    require_valid(gs);
    std::set<Value> acc;
    const auto& vals = gs.values();
    const auto& n = gs.declared_indices();
    std::function<void(std::size_t, const Value&)> rec = [&](std::size_t i, const Value& partial) {
        if (partial > bound) return;
        if (i == 0) {
            for (Value v = partial; v <= bound; v += vals[0]) {
                acc.insert(v);
                if (acc.size() > max_elements) fail(ErrorKind::BadParams, "semigroup enumeration too large");
            }
            return;
        }
        Value v = partial;
        for (BigInt m = 0; m < n[i] && v <= bound; ++m, v += vals[i]) rec(i - 1, v);
    };
    if (bound.sign() >= 0) rec(vals.size() - 1, Value(0));
    return {bound, std::vector<Value>(acc.begin(), acc.end())};
}

/// Keys of the Q, P or U family in their own chart, with values normalized by
/// value(K_0) = 1. Family U requires (p-1) | c.
GenSeq build_paper_seq(Family family, std::uint32_t p, std::int64_t c, unsigned n,
                       std::optional<Field> field = std::nullopt);

inline GenSeq build_paper_seq(Family family, std::uint32_t p, std::int64_t c, unsigned n, std::optional<Field> field) {
    if (!is_prime(p)) fail(ErrorKind::BadParams, "p = " + std::to_string(p) + " is not prime");
    if (n < 2) fail(ErrorKind::BadParams, "sequence length N must be at least 2");
    if (family == Family::Custom) fail(ErrorKind::BadParams, "build_paper_seq needs a paper family");
    if (family == Family::U && (c <= 0 || c % (static_cast<std::int64_t>(p) - 1) != 0))
        fail(ErrorKind::BadParams, "(p-1) must divide c (p=" + std::to_string(p) + ", c=" + std::to_string(c) + ")");
    GenSeq g;
    g.field_ = field ? *field : Field(p);
    if (g.field_.characteristic() != p) fail(ErrorKind::BadParams, "field characteristic differs from p");
    g.family_ = family;
    g.p_ = p;
    g.names_ = chart_names(family);
    g.label_ = chart_label(family);
    const Field& F = g.field_;
    g.keys_.push_back(Poly2::x(F));
    g.keys_.push_back(Poly2::y(F));
    for (unsigned i = 1; i < n; ++i) {
        const RecursionStep s = family_step(family, p, 1, i);
        const Poly2 lower = i == 1 ? Poly2::constant(F, 1) : g.keys_[i - 1];
        // K_{i+1} = K_i^n - x^E K_{i-1}; for i = 1 the second term is K_0 = x.
        g.keys_.push_back(g.keys_[i].pow(static_cast<std::uint64_t>(s.n)) -
                          lower.shifted(1, i == 1 ? 1 : s.e, 0));
    }
    g.values_ = family_values(family, p, 1, n + 1, Value(1));
    g.declared_.assign(n + 1, BigInt(1));
    for (unsigned i = 1; i <= n; ++i) g.declared_[i] = family_step(family, p, 1, i).n;
    g.relations_.assign(n + 1, std::nullopt);
    for (unsigned i = 1; i <= n; ++i) {
        const RecursionStep s = family_step(family, p, 1, i);
        KeyRelation rel;
        rel.n = s.n;
        rel.monomial.assign(i, 0);
        if (i == 1) {
            rel.monomial[0] = 1;
        } else {
            rel.monomial[0] = s.e;
            rel.monomial[i - 1] = 1;
        }
        rel.coeff = 1;
        g.relations_[i] = rel;
    }
    g.validity_ = validate(g);
    return g;
}

inline void GenSeq::finish() {
    validity_ = validate(*this);
    relations_.assign(keys_.size(), std::nullopt);
    if (!validity_.ok) return;
    // K_i^{n_i} for i < N has degree deg K_{i+1}; its minimal term is the relation.
    for (unsigned i = 1; i + 1 < keys_.size(); ++i) {
        const Poly2 power = keys_[i].pow(static_cast<std::uint64_t>(declared_[i]));
        const ValueResult vr = value_detail(power, *this);
        KeyRelation rel;
        rel.n = static_cast<std::int64_t>(declared_[i]);
        rel.monomial.assign(vr.min_term.exps.begin(), vr.min_term.exps.begin() + i);
        if (vr.min_term.exps[i] != 0) continue; // not a relation among lower keys
        rel.coeff = vr.min_term.coeff;
        relations_[i] = rel;
    }
}

} // namespace valgen
