#pragma once

// Composite quadratic transforms along the valuation for the Q, P and U
// families, chart tables of leading forms, and stable-form invariants.
//
// A transformed key is a Laurent monomial in the base keys (KeyMonomial). In
// the chart reached after k transforms every base key K_i is described by its
// leading form: K_i = eps * X^a * Y^b + (higher terms) in the lexicographic
// order "X-order first, then Y-order of the quotient modulo X". For i <= k the
// leading form is exact (K_i is a unit times X^a Y^b); later keys get theirs
// from the defining recursion.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "valgen/error.hpp"
#include "valgen/genseq.hpp"
#include "valgen/values.hpp"

namespace valgen {

/// Exponent vector over the base keys K_0, K_1, ... (K_0 = x).
using KeyMonomial = std::vector<std::int64_t>;

inline KeyMonomial key_unit(std::size_t i) {
    KeyMonomial m(i + 1, 0);
    m[i] = 1;
    return m;
}

inline KeyMonomial key_combine(const KeyMonomial& a, std::int64_t s, const KeyMonomial& b, std::int64_t t) {
    KeyMonomial r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add(r[i], checked_mul(s, a[i]));
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = checked_add(r[i], checked_mul(t, b[i]));
    while (r.size() > 1 && r.back() == 0) r.pop_back();
    return r;
}

inline Value monomial_value(const KeyMonomial& m, const std::vector<Value>& base) {
    Value v(0);
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] != 0) {
            if (i >= base.size()) fail(ErrorKind::SequenceTooShort, "key K_" + std::to_string(i) + " not available");
            v += Value(m[i]) * base[i];
        }
    return v;
}

inline std::string monomial_str(const KeyMonomial& m, const std::string& key = "K", const std::string& x = "x") {
    std::string num, den;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        const std::string name = i == 0 ? x : key + "_" + std::to_string(i);
        const std::int64_t e = m[i] < 0 ? -m[i] : m[i];
        std::string f = name + (e == 1 ? "" : "^" + std::to_string(e));
        std::string& side = m[i] > 0 ? num : den;
        side += side.empty() ? f : "*" + f;
    }
    if (num.empty()) num = "1";
    return den.empty() ? num : num + "/(" + den + ")";
}

/// Key i of the family's generating sequence after level-1 transforms (level 1
/// is the original chart), as a Laurent monomial in the base keys.
inline KeyMonomial family_key(Family f, std::int64_t p, unsigned level, unsigned i) {
    if (level == 0) fail(ErrorKind::BadParams, "levels start at 1");
    if (f == Family::Custom) fail(ErrorKind::BadParams, "custom sequences have no family transform formulas");
    if (level == 1) return key_unit(i);
    if (i == 0) return family_key(f, p, level - 1, 1);
    const std::int64_t k = level;
    const std::int64_t j = i;
    KeyMonomial m = key_unit(static_cast<std::size_t>(j + k - 1));
    auto sub = [&](std::int64_t xe, std::int64_t lower_exp) {
        m[0] -= ipow64(p, xe);
        if (lower_exp >= 0) {
            const auto idx = static_cast<std::size_t>(k - 2);
            m[idx] -= ipow64(p, lower_exp);
        }
    };
    if (f == Family::Q || f == Family::P) {
        if (k == 2)
            sub(2 * (j - 1), -1);
        else
            sub(2 * (j + k - 3), 2 * (j - 1));
        return m;
    }
    // family U
    if (k == 2) {
        sub(j % 2 == 1 ? 2 * j - 2 : 2 * j - 1, -1);
    } else if (k % 2 == 1) {
        if (j % 2 == 1)
            sub(2 * (j + k) - 5, 2 * j - 2);
        else
            sub(2 * (j + k) - 6, 2 * j - 3);
    } else {
        if (j % 2 == 1)
            sub(2 * (j + k) - 6, 2 * j - 2);
        else
            sub(2 * (j + k) - 5, 2 * j - 1);
    }
    return m;
}

/// A generating sequence in the chart reached after (level - 1) transforms.
struct ChartSeq {
    Family family = Family::Custom;
    std::int64_t p = 0;
    unsigned level = 1;
    std::string chart;
    std::vector<KeyMonomial> keys;
    std::vector<Value> values; // declared
    std::vector<BigInt> indices;
};

inline ChartSeq level_one(const GenSeq& gs) {
    ChartSeq s;
    s.family = gs.family();
    s.p = gs.prime();
    s.level = 1;
    s.chart = gs.chart() + "1";
    for (unsigned i = 0; i < gs.size(); ++i) s.keys.push_back(key_unit(i));
    s.values = gs.values();
    s.indices = gs.declared_indices();
    return s;
}

/// Family formulas at the given level, with values declared by the level's
/// recursion from the previous level's declared value of key 1.
inline ChartSeq family_chart_seq(const GenSeq& base, unsigned level) {
    if (base.family() == Family::Custom) fail(ErrorKind::BadParams, "family formulas need a Q, P or U sequence");
    if (level == 0 || level > base.last()) fail(ErrorKind::SequenceTooShort, "level beyond the available keys");
    if (level == 1) return level_one(base);
    const ChartSeq prev = family_chart_seq(base, level - 1);
    ChartSeq s;
    s.family = base.family();
    s.p = base.prime();
    s.level = level;
    s.chart = base.chart() + std::to_string(level);
    const unsigned count = base.last() - level + 2;
    for (unsigned i = 0; i < count; ++i) s.keys.push_back(family_key(s.family, s.p, level, i));
    s.values = family_values(s.family, s.p, level, count, prev.values.at(1));
    s.indices.assign(count, BigInt(1));
    for (unsigned i = 1; i < count; ++i) s.indices[i] = family_step(s.family, s.p, level, i).n;
    return s;
}

/// Index and growth conditions of a chart sequence's declared values.
inline ValidityReport validate(const ChartSeq& s) {
    ValidityReport rep;
    if (s.values.empty() || s.values[0].sign() <= 0) {
        rep.ok = false;
        rep.base_value_ok = false;
        rep.first_failure = "value of key 0 must be positive";
    }
    for (unsigned i = 1; i < s.values.size(); ++i) {
        ValidityEntry e;
        e.i = i;
        e.declared_index = s.indices.at(i);
        const auto big = ValueGroup::generated_by(std::vector<Value>(s.values.begin(), s.values.begin() + i + 1));
        const auto small = ValueGroup::generated_by(std::vector<Value>(s.values.begin(), s.values.begin() + i));
        e.computed_index = group_index(big, small);
        e.index_ok = e.computed_index == e.declared_index;
        if (i + 1 < s.values.size()) e.growth_ok = s.values[i + 1] > Value(e.declared_index) * s.values[i];
        if ((!e.index_ok || (e.growth_ok && !*e.growth_ok)) && rep.ok) {
            rep.ok = false;
            rep.first_failure = "condition fails at i=" + std::to_string(i);
        }
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

/// Values of the keys pulled back to the base ring: sum of e_i * nu(K_i), with
/// nu(K_i) computed by expansion against the base sequence.
inline std::vector<Value> pulled_back_values(const ChartSeq& s, const GenSeq& base) {
    std::map<std::size_t, Value> cache;
    std::vector<Value> out;
    for (const auto& m : s.keys) {
        Value v(0);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (i >= base.size()) fail(ErrorKind::SequenceTooShort, "key K_" + std::to_string(i) + " not available");
            auto it = cache.find(i);
            if (it == cache.end()) it = cache.emplace(i, value_of(base.keys()[i], base)).first;
            v += Value(m[i]) * it->second;
        }
        out.push_back(v);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Leading forms

struct LeadForm {
    std::int64_t a = 0; // X-order
    std::int64_t b = 0; // Y-order of the quotient by X^a, modulo X
    FieldElem res = 1;  // leading coefficient
    friend bool operator==(const LeadForm&, const LeadForm&) = default;
};

inline LeadForm lf_mul(const Field& F, const LeadForm& x, const LeadForm& y) {
    return {checked_add(x.a, y.a), checked_add(x.b, y.b), F.mul(x.res, y.res)};
}

inline LeadForm lf_pow(const Field& F, const LeadForm& x, std::int64_t k) {
    const FieldElem r = F.pow(x.res, static_cast<std::uint64_t>(k < 0 ? -k : k));
    return {checked_mul(x.a, k), checked_mul(x.b, k), k < 0 ? F.inv(r) : r};
}

inline LeadForm lf_monomial(const Field& F, const KeyMonomial& m, const std::vector<LeadForm>& keys) {
    LeadForm r;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (i >= keys.size()) fail(ErrorKind::SequenceTooShort, "no leading form for K_" + std::to_string(i));
        r = lf_mul(F, r, lf_pow(F, keys[i], m[i]));
    }
    return r;
}

/// Leading form of a sum; Indeterminate if the lowest forms cancel.
inline LeadForm lf_sum(const Field& F, const std::vector<LeadForm>& terms) {
    if (terms.empty()) fail(ErrorKind::Indeterminate, "leading form of zero");
    std::int64_t a = terms[0].a, b = terms[0].b;
    for (const auto& t : terms)
        if (t.a < a || (t.a == a && t.b < b)) {
            a = t.a;
            b = t.b;
        }
    FieldElem res = 0;
    for (const auto& t : terms)
        if (t.a == a && t.b == b) res = F.add(res, t.res);
    if (res == 0) fail(ErrorKind::Indeterminate, "leading terms cancel; the unit factors are needed to decide");
    return {a, b, res};
}

/// Leading forms of all base keys in the chart after (level - 1) transforms.
struct ChartTable {
    Family family = Family::Custom;
    std::int64_t p = 0;
    unsigned level = 1;
    KeyMonomial x_param; // X_level
    KeyMonomial y_param; // Y_level
    std::vector<LeadForm> keys;
    std::int64_t ratio = 0;      // value(X) / value(Y)
    FieldElem ratio_residue = 1; // residue of X / Y^ratio
};

namespace detail {

// Leading forms of keys beyond `exact_upto` from K_{i+1} = K_i^n - x^E K_{i-1}.
inline void extend_recursively(const Field& F, Family f, std::int64_t p, std::vector<LeadForm>& keys,
                               unsigned exact_upto, unsigned last) {
    const FieldElem minus_one = F.neg(1);
    keys.resize(last + 1);
    for (unsigned i = exact_upto + 1; i <= last; ++i) {
        const RecursionStep s = family_step(f, p, 1, i - 1);
        const LeadForm power = lf_pow(F, keys[i - 1], s.n);
        LeadForm tail = i - 1 == 1 ? keys[0] : lf_mul(F, lf_pow(F, keys[0], s.e), keys[i - 2]);
        tail.res = F.mul(tail.res, minus_one);
        keys[i] = lf_sum(F, {power, tail});
    }
}

} // namespace detail

/// Chart tables for levels 1..max_level of a Q, P or U sequence.
inline std::vector<ChartTable> chart_tables(const GenSeq& base, unsigned max_level) {
    if (base.family() == Family::Custom) fail(ErrorKind::BadParams, "chart tables need a Q, P or U sequence");
    if (max_level == 0 || max_level > base.last()) fail(ErrorKind::SequenceTooShort, "level beyond the available keys");
    const Field& F = base.field();
    const Family fam = base.family();
    const std::int64_t p = base.prime();
    std::vector<ChartTable> out;
    ChartTable t;
    t.family = fam;
    t.p = p;
    t.level = 1;
    t.x_param = family_key(fam, p, 1, 0);
    t.y_param = family_key(fam, p, 1, 1);
    t.keys = {LeadForm{1, 0, 1}, LeadForm{0, 1, 1}};
    detail::extend_recursively(F, fam, p, t.keys, 1, base.last());
    for (unsigned k = 1;; ++k) {
        const Value vx = monomial_value(t.x_param, base.values());
        const Value vy = monomial_value(t.y_param, base.values());
        const Value q = vx / vy;
        if (!q.is_integer()) fail(ErrorKind::NotApplicable, "value ratio X/Y is not an integer at level " + std::to_string(k));
        t.ratio = static_cast<std::int64_t>(q.to_integer());
        t.ratio_residue = monomial_residue(key_combine(t.x_param, 1, t.y_param, -t.ratio), base);
        out.push_back(t);
        if (k == max_level) break;

        // X_k = r * Y_k^n * (unit), X_{k+1} = Y_k, Y_{k+1} = K_{k+1} / D.
        ChartTable nt;
        nt.family = fam;
        nt.p = p;
        nt.level = k + 1;
        nt.x_param = family_key(fam, p, k + 1, 0);
        nt.y_param = family_key(fam, p, k + 1, 1);
        nt.keys.resize(k + 2);
        for (unsigned i = 0; i <= k; ++i) {
            const LeadForm& e = t.keys[i];
            nt.keys[i] = {checked_add(checked_mul(t.ratio, e.a), e.b), 0,
                          F.mul(e.res, F.pow(t.ratio_residue, static_cast<std::uint64_t>(e.a)))};
        }
        const KeyMonomial denom = key_combine(key_unit(k + 1), 1, nt.y_param, -1);
        if (denom.size() > k + 1 && denom[k + 1] != 0) fail(ErrorKind::NonPolynomial, "Y parameter is not K/denominator");
        LeadForm d = lf_monomial(F, denom, nt.keys);
        nt.keys[k + 1] = {d.a, checked_add(d.b, 1), d.res};
        detail::extend_recursively(F, fam, p, nt.keys, k + 1, base.last());
        t = std::move(nt);
    }
    return out;
}

/// Leading form of f (a polynomial in the base chart) in the chart of `table`.
inline LeadForm lead_of(const Poly2& f, const GenSeq& gs, const ChartTable& table) {
    const StandardExpansion ex = expand(f, gs);
    std::vector<LeadForm> terms;
    terms.reserve(ex.terms.size());
    for (const auto& t : ex.terms) {
        LeadForm l = lf_monomial(gs.field(), t.exps, table.keys);
        l.res = gs.field().mul(l.res, t.coeff);
        terms.push_back(l);
    }
    return lf_sum(gs.field(), terms);
}

// ---------------------------------------------------------------------------
// Transforms

/// Old chart parameters in terms of the new ones:
///   X_old = X_new^exponent * (Ybar + translation),  Y_old = X_new.
struct ChartMap {
    std::string source;
    std::string target;
    std::int64_t exponent = 1;
    FieldElem translation = 1;
    bool translation_known = true;

    std::string str() const {
        return "x_" + source + " = x_" + target + "^" + std::to_string(exponent) + " * (ybar_" + target + " + " +
               std::to_string(translation) + "), y_" + source + " = x_" + target;
    }
};

struct KeyCheck {
    unsigned j = 0;
    KeyMonomial key;
    Value declared;
    Value pulled_back;
    bool value_ok = false;
    std::optional<Value> lambda_value;        // value of U/U~ (should be 0)
    std::optional<FieldElem> lambda_residue; // residue of U/U~ (should be 1)
    std::optional<LeadForm> lead;            // in the new chart
    std::optional<bool> strict_ok;           // X-order 0 and Y-degree equal to prod n_i
};

struct TransformResult {
    ChartMap map;
    ChartSeq next;
    std::vector<KeyCheck> checks;
    ValidityReport validity;
    bool ok = true;
};

/// One composite transform: the new chart has x' = K_1 and K_0 = x'^{n_1}(y'+r).
/// The generic new keys are K_{j+1} / K_1^{n_1...n_j}; for the built-in families
/// the declared keys are the family formulas, and their ratio to the generic
/// keys must be a unit with residue 1.
inline TransformResult composite_transform(const ChartSeq& cur, const GenSeq& base) {
    if (cur.keys.size() < 2) fail(ErrorKind::SequenceTooShort, "a transform needs at least two keys");
    const Field& F = base.field();
    const BigInt n1 = cur.indices.at(1);
    if (Value(n1) * cur.values[1] != cur.values[0])
        fail(ErrorKind::NotApplicable, "n_1 * value(K_1) differs from value(K_0)");
    const bool builtin = cur.family != Family::Custom;

    TransformResult out;
    out.map.source = cur.chart;
    out.map.exponent = static_cast<std::int64_t>(n1);

    // generic keys
    std::vector<KeyMonomial> generic{cur.keys[1]};
    std::vector<Value> generic_values{cur.values[1]};
    BigInt prod = 1;
    for (std::size_t j = 1; j + 1 < cur.keys.size(); ++j) {
        prod *= cur.indices[j];
        const auto e = static_cast<std::int64_t>(prod);
        generic.push_back(key_combine(cur.keys[j + 1], 1, cur.keys[1], -e));
        generic_values.push_back(cur.values[j + 1] - Value(prod) * cur.values[1]);
    }

    ChartSeq& next = out.next;
    std::optional<ChartTable> table;
    if (builtin) {
        next = family_chart_seq(base, cur.level + 1);
        table = chart_tables(base, cur.level + 1).back();
        out.map.translation = chart_tables(base, cur.level).back().ratio_residue;
    } else {
        next.family = Family::Custom;
        next.p = cur.p;
        next.level = cur.level + 1;
        next.chart = cur.chart + "'";
        next.keys = generic;
        next.values = generic_values;
        next.indices.assign(generic.size(), BigInt(1));
        for (std::size_t j = 1; j < generic.size(); ++j) next.indices[j] = cur.indices[j + 1];
        if (cur.level == 1 && base.size() > 2 && base.relation(1)) {
            out.map.translation = monomial_residue(key_combine(cur.keys[0], 1, cur.keys[1], -out.map.exponent), base);
        } else {
            out.map.translation = 1;
            out.map.translation_known = false;
        }
    }
    out.map.target = next.chart;
    if (next.keys.size() != generic.size()) fail(ErrorKind::Inconsistent, "transformed sequence has the wrong length");

    const std::vector<Value> pulled = pulled_back_values(next, base);
    BigInt degree = 1;
    for (unsigned j = 0; j < next.keys.size(); ++j) {
        KeyCheck c;
        c.j = j;
        c.key = next.keys[j];
        c.declared = next.values[j];
        c.pulled_back = pulled[j];
        c.value_ok = c.declared == c.pulled_back && c.declared == generic_values[j];
        if (builtin) {
            const KeyMonomial lambda = key_combine(next.keys[j], 1, generic[j], -1);
            c.lambda_value = monomial_value(lambda, base.values());
            if (c.lambda_value->is_zero()) c.lambda_residue = monomial_residue(lambda, base);
            const LeadForm l = lf_monomial(F, next.keys[j], table->keys);
            if (l.a < 0 || (l.a == 0 && l.b < 0))
                fail(ErrorKind::NonPolynomial, "key " + std::to_string(j) + " of level " + std::to_string(next.level) +
                                                   " is not in the new chart: " + monomial_str(next.keys[j]));
            c.lead = l;
            if (j == 0) {
                c.strict_ok = l.a == 1 && l.b == 0;
            } else {
                c.strict_ok = l.a == 0 && BigInt(l.b) == degree;
                degree *= next.indices[j];
            }
        }
        const bool lambda_ok = !c.lambda_value || (c.lambda_value->is_zero() && c.lambda_residue == FieldElem(1));
        if (!c.value_ok || !lambda_ok || (c.strict_ok && !*c.strict_ok)) out.ok = false;
        out.checks.push_back(std::move(c));
    }
    out.validity = validate(next);
    if (!out.validity.ok) out.ok = false;
    return out;
}

// ---------------------------------------------------------------------------
// Stable forms and defect

struct StableForm {
    std::int64_t a = 0;
    std::int64_t a_bar = 0;
    std::int64_t alpha = 0;
    std::int64_t b = 0;
    std::int64_t d = 0;
    std::int64_t beta = -1; // -1 when d is not a power of p
    FieldElem unit_residue = 1;

    bool d_is_p_power() const noexcept { return beta >= 0; }
};

inline StableForm make_stable_form(std::int64_t p, std::int64_t a, FieldElem unit_res, std::int64_t b, std::int64_t d) {
    if (a <= 0) fail(ErrorKind::NotMonomial, "u must have positive order");
    if (d <= 0) fail(ErrorKind::Indeterminate, "v is divisible by every power of x");
    StableForm s;
    s.a = a;
    s.alpha = padic_valuation(BigInt(a), p);
    s.a_bar = a / ipow64(p, s.alpha);
    s.b = b;
    s.d = d;
    const BigInt dd = d;
    s.beta = exact_log(dd, p);
    s.unit_residue = unit_res;
    return s;
}

/// Stable form from leading forms of u and v in the upper chart.
inline StableForm stable_form(const LeadForm& u, const LeadForm& v, std::int64_t p) {
    if (u.b != 0) fail(ErrorKind::NotMonomial, "u is not a unit times a power of x");
    if (v.a < 0 || u.a < 0) fail(ErrorKind::NonPolynomial, "element not in the chart");
    return make_stable_form(p, u.a, u.res, v.a, v.b);
}

/// Stable form of u = num/den (den a unit) and v in one chart.
inline StableForm stable_form(const RationalElem& u, const Poly2& v) {
    if (u.den.constant_term() == 0) fail(ErrorKind::NotAUnit, "denominator of u is not a unit");
    if (u.num.is_zero() || v.is_zero()) fail(ErrorKind::BadParams, "u and v must be nonzero");
    const std::int64_t a = x_order(u.num);
    const Poly2 unit = u.num.div_x_power(a);
    const FieldElem c0 = unit.constant_term();
    if (c0 == 0) fail(ErrorKind::NotMonomial, "u is not a unit times a power of x");
    const Field& F = u.num.field();
    const std::int64_t b = x_order(v);
    const std::int64_t d = y_order_mod_x(v.div_x_power(b));
    return make_stable_form(F.characteristic(), a, F.div(c0, u.den.constant_term()), b, d);
}

inline void require_p_power(const StableForm& s) {
    if (!s.d_is_p_power()) fail(ErrorKind::DNotPPower, "d = " + std::to_string(s.d) + " is not a power of p");
}

/// delta with p^delta = a * d * f_res / (e * f).
inline std::int64_t defect_from_stable(const StableForm& s, std::int64_t p, std::int64_t e, std::int64_t f,
                                       std::int64_t f_res = 1) {
    if (e < 1 || f < 1 || f_res < 1) fail(ErrorKind::BadParams, "e, f and f_res must be positive");
    const BigInt num = BigInt(s.a) * s.d * f_res;
    const BigInt den = BigInt(e) * f;
    if (num % den != 0) fail(ErrorKind::Inconsistent, "a*d*f_res is not divisible by e*f");
    const std::int64_t delta = exact_log(num / den, p);
    if (delta < 0) fail(ErrorKind::Inconsistent, "a*d*f_res/(e*f) = " + BigInt(num / den).str() + " is not a power of p");
    return delta;
}

} // namespace valgen
