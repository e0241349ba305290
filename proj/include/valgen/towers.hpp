#pragma once

// The Artin-Schreier tower K = k(u,v) -> K_1 = k(x,v) -> K* = k(x,y) with
//   u = x^p / (1 - x^{p-1}),  v = y^p - x^c y,  (p-1) | c,
// its generating sequences P (chart R), U (chart A), Q (chart S), and the
// identities relating them.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "valgen/error.hpp"
#include "valgen/genseq.hpp"
#include "valgen/poly.hpp"
#include "valgen/transforms.hpp"
#include "valgen/values.hpp"

namespace valgen {

struct Tower {
    std::int64_t p = 2;
    std::int64_t c = 1;
    unsigned n = 2;
    Field field;
    GenSeq q; // S = k[x,y]
    GenSeq u; // A = k[x,v]
    GenSeq pseq; // R = k[u,v]
    Poly2 v_def;               // y^p - x^c y
    std::vector<Poly2> u_in_xy; // U_i(x, y^p - x^c y)
};

inline Tower build_tower(std::int64_t p, std::int64_t c, unsigned n) {
    if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) fail(ErrorKind::BadParams, "p must be prime");
    if (c <= 0 || c % (p - 1) != 0)
        fail(ErrorKind::BadParams, "(p-1) must divide c (p=" + std::to_string(p) + ", c=" + std::to_string(c) + ")");
    if (n < 2) fail(ErrorKind::BadParams, "N must be at least 2");
    Tower t;
    t.p = p;
    t.c = c;
    t.n = n;
    t.field = Field(static_cast<std::uint32_t>(p));
    const auto pp = static_cast<std::uint32_t>(p);
    t.q = build_paper_seq(Family::Q, pp, c, n, t.field);
    t.u = build_paper_seq(Family::U, pp, c, n, t.field);
    t.pseq = build_paper_seq(Family::P, pp, c, n, t.field);
    t.v_def = Poly2::y(t.field, p) - Poly2::monomial(t.field, 1, c, 1);
    for (const auto& k : t.u.keys()) t.u_in_xy.push_back(k.substitute_y(t.v_def));
    return t;
}

/// P(u, v) with u = x^p/(1 - x^{p-1}), cleared of the unit denominator:
/// returns N(x, v) = P * (1 - x^{p-1})^D with D = deg_u P.
inline Poly2 clear_u(const Poly2& poly, std::int64_t p) {
    const Field& F = poly.field();
    std::int64_t deg = 0;
    for (const auto& [e, c] : poly.terms()) deg = std::max(deg, e.x);
    const Poly2 w = Poly2::constant(F, 1) - Poly2::x(F, p - 1);
    std::map<std::int64_t, Poly2> wpow;
    Poly2 out(F);
    for (const auto& [e, c] : poly.terms()) {
        auto it = wpow.find(deg - e.x);
        if (it == wpow.end()) it = wpow.emplace(deg - e.x, w.pow(static_cast<std::uint64_t>(deg - e.x))).first;
        out += it->second.shifted(c, checked_mul(p, e.x), e.y);
    }
    return out;
}

struct TowerCheck {
    bool ok = true;
    std::vector<std::string> failures;
    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            failures.push_back(what);
        }
    }
};

/// Validity of the three sequences and the stage groups of U.
inline TowerCheck validate_tower(const Tower& t) {
    TowerCheck r;
    r.expect(t.q.valid(), "Q: " + t.q.validity().first_failure);
    r.expect(t.u.valid(), "U: " + t.u.validity().first_failure);
    r.expect(t.pseq.valid(), "P: " + t.pseq.validity().first_failure);
    for (unsigned i = 1; i <= t.n + 1; ++i) {
        const ValueGroup g = t.u.stage_group(i - 1);
        r.expect(g == u_stage_group(i, static_cast<std::uint64_t>(t.p)),
                 "stage group Gamma_" + std::to_string(i - 1) + " = " + g.str());
    }
    return r;
}

// ---------------------------------------------------------------------------
// Expansion of U_{j+1} against Q_{j+1}

/// Exponent E_j of x in U_{j+1} - Q_{j+1} (j odd) or U_{j+1} - Q_{j+1}^p (j even).
inline Value lemma_exponent(unsigned j, std::int64_t p) {
    if (j == 0) fail(ErrorKind::BadParams, "j starts at 1");
    const std::int64_t jj = j;
    Value sum(0);
    if (j % 2 == 1) {
        for (std::int64_t t = 0; t <= (jj - 1) / 2; ++t) sum += vpow(Value(p), -4 * t);
        return vpow(Value(p), 2 * jj - 2) * sum;
    }
    for (std::int64_t t = 0; t <= jj / 2 - 1; ++t) sum += vpow(Value(p), -4 * t);
    return vpow(Value(p), 2 * jj - 1) * sum;
}

struct Lemma64Report {
    unsigned j = 0;
    std::int64_t exponent = 0;    // E
    std::int64_t precision = 0;   // M
    bool complete = false;        // truncation mod x^M dropped nothing
    bool divisible_by_xe = false; // x^E divides the difference
    bool x_divides_f = false;
    std::int64_t deg_y_f = 0;
    std::int64_t expected_deg_y = 0;
    Poly2 difference; // modulo x^M
    bool ok = false;
};

/// M <= 0 selects 1 + the largest x-exponent of the difference.
inline Lemma64Report verify_lemma64(const Tower& t, unsigned j, std::int64_t m = 0) {
    if (j < 1 || j + 1 > t.n) fail(ErrorKind::BadParams, "j must satisfy 1 <= j <= N-1");
    const Value ev = lemma_exponent(j, t.p);
    if (!ev.is_integer()) fail(ErrorKind::Inconsistent, "lemma exponent is not an integer");
    Lemma64Report r;
    r.j = j;
    r.exponent = static_cast<std::int64_t>(ev.to_integer());
    const Poly2& qk = t.q.keys()[j + 1];
    const Poly2 diff = t.u_in_xy[j + 1] - (j % 2 == 1 ? qk : qk.frobenius());
    r.precision = m > 0 ? m : diff.deg_x() + 1;
    if (r.precision <= r.exponent + 1)
        fail(ErrorKind::PrecisionTooLow, "need M > E + 1 = " + std::to_string(r.exponent + 1));
    r.complete = diff.deg_x() < r.precision;
    r.difference = diff.truncate_x(r.precision);
    r.expected_deg_y = ipow64(t.p, j % 2 == 1 ? 2 * j - 1 : 2 * j);
    if (!r.difference.is_zero()) {
        const std::int64_t xo = x_order(r.difference);
        r.divisible_by_xe = xo >= r.exponent;
        r.x_divides_f = xo >= r.exponent + 1;
        r.deg_y_f = r.difference.deg_y();
    }
    r.ok = r.divisible_by_xe && r.x_divides_f && r.deg_y_f == r.expected_deg_y;
    return r;
}

// ---------------------------------------------------------------------------
// Values of U_{j+1} in K*

inline Value beta_bar_q(const Tower& t, unsigned i) { return t.q.values().at(i); }

struct ValueComparison {
    unsigned j = 0;
    Value nu_u;       // value of U_{j+1}(x, y^p - x^c y) against Q
    Value expected;   // beta_{j+1} or p beta_{j+1}
    Value lemma_bound; // E_j + 1
    bool equal = false;
    bool bound_ok = false; // upper bound on the value
    std::optional<bool> lower_ok; // (93*)/(94*): beta_{j-1} (times p for even j) below the bound
    std::optional<bool> lower_closed_ok; // closed form of beta_{j-1}
    bool ok = false;
};

inline ValueComparison verify_value_comparison(const Tower& t, unsigned j) {
    if (j < 1 || j + 1 > t.n) fail(ErrorKind::BadParams, "j must satisfy 1 <= j <= N-1");
    const Value p(t.p);
    ValueComparison r;
    r.j = j;
    r.nu_u = value_of(t.u_in_xy[j + 1], t.q);
    const Value beta = beta_bar_q(t, j + 1);
    r.expected = j % 2 == 1 ? beta : p * beta;
    r.equal = r.nu_u == r.expected;
    const Value e = lemma_exponent(j, t.p);
    r.lemma_bound = e + Value(1);
    r.bound_ok = r.expected < r.lemma_bound;
    if (j >= 2) {
        const Value lower = j % 2 == 1 ? beta_bar_q(t, j - 1) : p * beta_bar_q(t, j - 1);
        // p^{2j-6} (resp. p^{2j-5}) times sum_{t=0}^{j-2} p^{-4t}
        Value s(0);
        for (std::int64_t k = 0; k <= static_cast<std::int64_t>(j) - 2; ++k) s += vpow(p, -4 * k);
        const Value closed = vpow(p, 2 * static_cast<std::int64_t>(j) - (j % 2 == 1 ? 6 : 5)) * s;
        r.lower_closed_ok = lower == closed;
        const Value top = j % 2 == 1 ? vpow(p, 2 * static_cast<std::int64_t>(j) - 2) : vpow(p, 2 * static_cast<std::int64_t>(j) - 1);
        r.lower_ok = lower < r.lemma_bound - top;
    }
    r.ok = r.equal && r.bound_ok && r.lower_ok.value_or(true) && r.lower_closed_ok.value_or(true);
    return r;
}

// ---------------------------------------------------------------------------
// Restriction of the valuation on K* to K_1

struct RestrictionSample {
    Poly2 g;
    Value nu1;
    Value nu_star;
};

struct RestrictionReport {
    std::size_t tested = 0;
    std::size_t mismatches = 0;
    std::vector<RestrictionSample> failures;
    bool ok() const noexcept { return mismatches == 0; }
};

/// Random sums of monomials c x^a U_1^{m_1} U_2^{m_2} U_3^{m_3}; each sample is
/// compared as an element of A (against U) and of S (against Q).
inline RestrictionReport verify_restriction(const Tower& t, std::size_t samples, const Value& bound,
                                            std::uint64_t seed = 1) {
    std::mt19937_64 rng(seed);
    const Field& F = t.field;
    const unsigned top = std::min(3u, t.n - 1);
    std::vector<std::int64_t> max_exp(top + 1, 0);
    for (unsigned i = 1; i <= top; ++i) max_exp[i] = static_cast<std::int64_t>(t.u.declared_indices()[i]) - 1;
    auto uniform = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
    RestrictionReport rep;
    std::size_t attempts = 0;
    while (rep.tested < samples && attempts < 20 * samples + 100) {
        ++attempts;
        Poly2 g(F);
        const auto terms = uniform(1, 4);
        for (std::int64_t k = 0; k < terms; ++k) {
            Poly2 term = Poly2::monomial(F, static_cast<FieldElem>(uniform(1, t.p - 1)), uniform(0, 3), 0);
            for (unsigned i = 1; i <= top; ++i) {
                const auto m = uniform(0, std::min<std::int64_t>(max_exp[i], 2));
                if (m > 0) term *= t.u.keys()[i].pow(static_cast<std::uint64_t>(m));
            }
            g += term;
        }
        if (g.is_zero()) continue;
        const Value nu1 = value_of(g, t.u);
        if (nu1 > bound) continue;
        const Value nus = value_of(g.substitute_y(t.v_def), t.q);
        ++rep.tested;
        if (nu1 != nus) {
            ++rep.mismatches;
            rep.failures.push_back({g, nu1, nus});
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Stable forms along the tower

struct LadderExtension {
    std::string name; // "S/A", "A/R", "S/R"
    StableForm form;
    std::int64_t delta = 0;
    std::int64_t expected_alpha = 0;
    std::int64_t expected_beta = 0;
    LeadForm u_lead;
    LeadForm v_lead;
    bool ok = false;
};

struct LadderRow {
    unsigned j = 0;
    LadderExtension upper; // A_j -> S_j
    LadderExtension lower; // R_j -> A_j
    LadderExtension total; // R_j -> S_j
    bool sums_ok = false;
    bool multiplicative_ok = false;
    bool ok = false;
};

namespace detail {

inline LadderExtension ladder_extension(const std::string& name, const KeyMonomial& u, const KeyMonomial& v,
                                        const std::vector<LeadForm>& keys, const Field& F, std::int64_t p,
                                        std::int64_t ea, std::int64_t eb) {
    LadderExtension x;
    x.name = name;
    x.u_lead = lf_monomial(F, u, keys);
    x.v_lead = lf_monomial(F, v, keys);
    x.form = stable_form(x.u_lead, x.v_lead, p);
    x.delta = defect_from_stable(x.form, p, 1, 1);
    x.expected_alpha = ea;
    x.expected_beta = eb;
    x.ok = x.form.alpha == ea && x.form.beta == eb;
    return x;
}

} // namespace detail

/// Stable forms of A_j -> S_j, R_j -> A_j and R_j -> S_j at level j.
/// e = f = 1 for every sub-extension (all value groups are (1/p^inf)Z and k is
/// algebraically closed), so p^delta = a * d.
inline LadderRow ladder_row(const Tower& t, unsigned j) {
    if (j < 1 || j > t.n) fail(ErrorKind::BadParams, "level must satisfy 1 <= j <= N");
    const Field& F = t.field;
    const std::int64_t p = t.p;
    const ChartTable s_tab = chart_tables(t.q, j).back();
    const ChartTable a_tab = chart_tables(t.u, j).back();

    std::vector<LeadForm> u_in_s, p_in_a, p_in_s;
    for (unsigned i = 0; i <= j; ++i) {
        u_in_s.push_back(lead_of(t.u_in_xy[i], t.q, s_tab));
        const Poly2 num = clear_u(t.pseq.keys()[i], p);
        p_in_a.push_back(lead_of(num, t.u, a_tab));
        p_in_s.push_back(lead_of(num.substitute_y(t.v_def), t.q, s_tab));
    }
    const bool odd = j % 2 == 1;
    const KeyMonomial ua = family_key(Family::U, p, j, 0), va = family_key(Family::U, p, j, 1);
    const KeyMonomial ur = family_key(Family::P, p, j, 0), vr = family_key(Family::P, p, j, 1);
    LadderRow row;
    row.j = j;
    row.upper = detail::ladder_extension("S/A", ua, va, u_in_s, F, p, odd ? 0 : 1, odd ? 1 : 0);
    row.lower = detail::ladder_extension("A/R", ur, vr, p_in_a, F, p, odd ? 1 : 0, odd ? 0 : 1);
    row.total = detail::ladder_extension("S/R", ur, vr, p_in_s, F, p, 1, 1);
    row.sums_ok = row.upper.form.alpha + row.upper.form.beta == 1 && row.lower.form.alpha + row.lower.form.beta == 1 &&
                  row.total.form.alpha == 1 && row.total.form.beta == 1;
    row.multiplicative_ok = row.total.delta == row.upper.delta + row.lower.delta && row.total.delta == 2 &&
                            row.upper.delta == 1 && row.lower.delta == 1;
    row.ok = row.upper.ok && row.lower.ok && row.total.ok && row.sums_ok && row.multiplicative_ok;
    return row;
}

inline std::vector<LadderRow> run_tower_ladder(const Tower& t, unsigned levels) {
    if (levels > t.n) fail(ErrorKind::BadParams, "levels must not exceed N");
    std::vector<LadderRow> rows;
    for (unsigned j = 1; j <= levels; ++j) rows.push_back(ladder_row(t, j));
    return rows;
}

// ---------------------------------------------------------------------------
// Parameters of A_{j+1} in S_{j+1} and of R_{j+1} in A_{j+1}

struct ParamRelations {
    unsigned j = 0;
    // values, normalized by nu(x) = 1
    Value x_a, x_s, v_a, y_s, u_r, v_r;
    bool values_ok = false;
    bool shapes_ok = false; // leading forms of x_A, v_A in S and of u_R, v_R in A
    bool units_ok = false;  // residues of the unit factors are nonzero
    bool ok = false;
    LadderRow row;
};

inline ParamRelations verify_param_relations(const Tower& t, unsigned j) {
    if (j < 1 || j + 1 > t.n) fail(ErrorKind::BadParams, "j must satisfy 1 <= j <= N-1");
    const Value p(t.p);
    const unsigned k = j + 1;
    ParamRelations r;
    r.j = j;
    const ChartSeq a = family_chart_seq(t.u, k), s = family_chart_seq(t.q, k), rr = family_chart_seq(t.pseq, k);
    r.x_a = a.values[0];
    r.v_a = a.values[1];
    r.x_s = s.values[0];
    r.y_s = s.values[1];
    // nu(u) = p in K*, so P-values scale by p
    r.u_r = p * rr.values[0];
    r.v_r = p * rr.values[1];
    const bool odd = j % 2 == 1;
    r.values_ok = (odd ? r.x_a == p * r.x_s && r.v_a == r.y_s : r.x_a == r.x_s && r.v_a == p * r.y_s) &&
                  (odd ? r.u_r == r.x_a && r.v_r == p * r.v_a : r.u_r == p * r.x_a && r.v_r == r.v_a);
    r.row = ladder_row(t, k);
    const auto& up = r.row.upper;
    const auto& lo = r.row.lower;
    const std::int64_t pp = t.p;
    r.shapes_ok = (odd ? up.u_lead.a == pp && up.v_lead == LeadForm{0, 1, up.v_lead.res}
                       : up.u_lead.a == 1 && up.v_lead == LeadForm{0, pp, up.v_lead.res}) &&
                  up.u_lead.b == 0 && lo.u_lead.b == 0 &&
                  (odd ? lo.u_lead.a == 1 && lo.v_lead == LeadForm{0, pp, lo.v_lead.res}
                       : lo.u_lead.a == pp && lo.v_lead == LeadForm{0, 1, lo.v_lead.res});
    r.units_ok = up.u_lead.res != 0 && up.v_lead.res != 0 && lo.u_lead.res != 0 && lo.v_lead.res != 0;
    r.ok = r.values_ok && r.shapes_ok && r.units_ok;
    return r;
}

} // namespace valgen
