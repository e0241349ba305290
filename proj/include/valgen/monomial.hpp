#pragma once

// Monomial extensions of two-dimensional regular local rings: exponent
// matrices, lattice indices, the Euclidean substitution procedure, graded-ring
// presentation data and the rank/transcendence case split.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "valgen/error.hpp"
#include "valgen/field.hpp"
#include "valgen/genseq.hpp"
#include "valgen/values.hpp"

namespace valgen {

/// Exponent matrix (a b; c d): u = x^a y^b * unit, v = x^c y^d * unit.
using Mat2 = std::array<std::array<std::int64_t, 2>, 2>;

inline std::int64_t det(const Mat2& m) {
    return checked_add(checked_mul(m[0][0], m[1][1]), -checked_mul(m[0][1], m[1][0]));
}

inline std::string mat_str(const Mat2& m) {
    return "((" + std::to_string(m[0][0]) + "," + std::to_string(m[0][1]) + "),(" + std::to_string(m[1][0]) + "," +
           std::to_string(m[1][1]) + "))";
}

struct MonomialExtension {
    Mat2 matrix{};
    std::optional<std::pair<FieldElem, FieldElem>> unit_residues;
    Value x_value;
    Value y_value;
};

/// e = |det A| = [Z^2 : A Z^2].
inline std::int64_t det_index(const Mat2& m) {
    const std::int64_t d = det(m);
    if (d == 0) fail(ErrorKind::Singular, "matrix " + mat_str(m) + " is singular");
    return std::llabs(d);
}

/// Invariant factors (d1, d2), d1 | d2, by elementary row and column operations.
inline std::pair<std::int64_t, std::int64_t> smith_normal_form(Mat2 m) {
    auto swap_rows = [&] { std::swap(m[0], m[1]); };
    auto swap_cols = [&] {
        std::swap(m[0][0], m[0][1]);
        std::swap(m[1][0], m[1][1]);
    };
    for (int guard = 0; guard < 10000; ++guard) {
        // move a nonzero entry of least absolute value to (0,0)
        std::int64_t best = -1;
        int bi = 0, bj = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (m[i][j] != 0 && (best < 0 || std::llabs(m[i][j]) < best)) {
                    best = std::llabs(m[i][j]);
                    bi = i;
                    bj = j;
                }
        if (best < 0) return {0, 0};
        if (bi == 1) swap_rows();
        if (bj == 1) swap_cols();
        const std::int64_t piv = m[0][0];
        const std::int64_t qr = m[1][0] / piv;
        m[1][0] -= qr * piv;
        m[1][1] -= qr * m[0][1];
        const std::int64_t qc = m[0][1] / piv;
        m[0][1] -= qc * piv;
        m[1][1] -= qc * m[1][0];
        if (m[1][0] != 0 || m[0][1] != 0) continue;
        if (m[1][1] % piv != 0) {
            // fold the remaining entry into the first row and reduce again
            m[0][1] = m[1][1];
            continue;
        }
        return {std::llabs(piv), std::llabs(m[1][1])};
    }
    fail(ErrorKind::NonTermination, "Smith normal form did not converge");
}

struct EuclidResult {
    std::int64_t s = 0;
    std::int64_t t1 = 0;
    std::int64_t t2 = 0;
    std::string step_log; // 'U': u <- u/v, 'V': v <- v/u, final 'N' (v1 = v/u) or 'M' (u1 = u/v)
    std::int64_t determinant = 0;
    bool identity_ok = false; // s |t1 - t2| = |det|
    Mat2 final_rows{};        // exponents of u1, v1
};

/// Substitutions u_i = u_{i+1} v_{i+1} or v_i = u_{i+1} v_{i+1} on the exponent
/// rows (x-exponent, y-exponent) of u and v until both x-exponents equal
/// s = gcd, then the normalization u1 = u, v1 = v/u (or its mirror).
inline EuclidResult euclidean_reduce(const Mat2& rows) {
    if (rows[0][0] <= 0 || rows[1][0] <= 0) fail(ErrorKind::BadParams, "first-column entries must be positive");
    std::array<std::int64_t, 2> u = rows[0], v = rows[1];
    EuclidResult r;
    r.determinant = det(rows);
    const std::int64_t limit = rows[0][0] + rows[1][0] + 2;
    while (u[0] != v[0]) {
        if (static_cast<std::int64_t>(r.step_log.size()) > limit) fail(ErrorKind::NonTermination, "substitution loop");
        if (u[0] > v[0]) {
            u[0] -= v[0];
            u[1] -= v[1];
            r.step_log += 'U';
        } else {
            v[0] -= u[0];
            v[1] -= u[1];
            r.step_log += 'V';
        }
    }
    r.s = u[0];
    r.t1 = u[1];
    r.t2 = v[1];
    r.identity_ok = checked_mul(r.s, std::llabs(r.t1 - r.t2)) == std::llabs(r.determinant);
    if (r.t2 > r.t1) {
        r.final_rows = {{{u[0], u[1]}, {0, v[1] - u[1]}}};
        r.step_log += 'N';
    } else if (r.t2 < r.t1) {
        r.final_rows = {{{0, u[1] - v[1]}, {v[0], v[1]}}};
        r.step_log += 'M';
    } else {
        fail(ErrorKind::Singular, "t1 = t2: the exponent matrix is singular");
    }
    return r;
}

/// Unimodular substitution x = x1^{m1} y1^{m1'}, y = x1^{n1} y1^{n1'} with
/// nu(y1) = 0, for values nu(x) = alpha, nu(y) = beta in a rank-1 group.
struct MonomialChart {
    std::int64_t m1 = 1, m1p = 0, n1 = 0, n1p = 1;
    Value x1_value;
};

inline MonomialChart monomial_chart(const Value& alpha, const Value& beta) {
    if (alpha.sign() <= 0 || beta.sign() <= 0) fail(ErrorKind::BadParams, "values must be positive");
    const Value q = alpha / beta;
    const BigInt num = q.numerator(), den = q.denominator();
    MonomialChart c;
    c.m1 = static_cast<std::int64_t>(num);
    c.n1 = static_cast<std::int64_t>(den);
    // extended Euclid: m1 * n1' - n1 * m1' = 1
    std::int64_t old_r = c.m1, r = c.n1, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        const std::int64_t k = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - k * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - k * s);
        std::tie(old_t, t) = std::make_pair(t, old_t - k * t);
    }
    c.n1p = old_s;  // m1 * old_s + n1 * old_t = 1
    c.m1p = -old_t;
    c.x1_value = alpha / Value(c.m1);
    return c;
}

// ---------------------------------------------------------------------------
// Graded presentations

struct GradedRelation {
    std::vector<std::int64_t> exponents; // (e) or (a, b)
    std::string unit_class;              // opaque token for [unit]^-1 [parameter]
};

struct GradedPresentation {
    int rank = 1;
    std::vector<GradedRelation> relations;
    std::int64_t degree = 1;
};

inline GradedPresentation graded_presentation_rank1(std::int64_t e, std::int64_t f) {
    if (e < 1 || f < 1) fail(ErrorKind::BadParams, "e and f must be positive");
    GradedPresentation g;
    g.rank = 1;
    g.relations.push_back({{e}, "[gamma1]^-1[u1]"});
    g.degree = checked_mul(e, f);
    return g;
}

inline GradedPresentation graded_presentation_rank2(const Mat2& m, std::int64_t f) {
    if (f < 1) fail(ErrorKind::BadParams, "f must be positive");
    GradedPresentation g;
    g.rank = 2;
    g.relations.push_back({{m[0][0], m[0][1]}, "[gamma1]^-1[u1]"});
    g.relations.push_back({{m[1][0], m[1][1]}, "[tau1]^-1[v1]"});
    g.degree = checked_mul(det_index(m), f);
    return g;
}

/// The values gamma + j * y_value (gamma in `gammas`, 0 <= j < e) are pairwise
/// distinct across different j.
inline bool check_min_formula(const std::vector<Value>& gammas, const ValueGroup& gamma_nu, const Value& y_value,
                              std::int64_t e) {
    if (e < 1) fail(ErrorKind::BadParams, "e must be positive");
    const BigInt ord = order_in_quotient(y_value, gamma_nu);
    if (ord != e)
        fail(ErrorKind::OrderMismatch, "order of " + y_value.str() + " modulo " + gamma_nu.str() + " is " + ord.str() +
                                           ", not " + std::to_string(e));
    std::set<Value> seen;
    std::set<Value> gs(gammas.begin(), gammas.end());
    for (std::int64_t j = 0; j < e; ++j)
        for (const auto& g : gs)
            if (!seen.insert(g + Value(j) * y_value).second) return false;
    return true;
}

/// Every element of S_big up to B - e*y_value is uniquely gamma + i*y_value
/// with gamma in the group of S_small and 0 <= i < e.
inline bool semigroup_decomposition(const ValSemigroup& big, const ValSemigroup& small, const Value& y_value,
                                    std::int64_t e, const Value& bound) {
    if (e < 1) return false;
    const ValueGroup g = ValueGroup::generated_by(small.elements);
    const Value top = bound - Value(e) * y_value;
    for (const auto& tau : big.elements) {
        if (tau > top) break;
        int hits = 0;
        for (std::int64_t i = 0; i < e; ++i)
            if (g.contains(tau - Value(i) * y_value)) ++hits;
        if (hits != 1) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Case split

enum class MonomialCase { DvrCase, Rank2Monomial, Rank1 };

struct CaseLabel {
    MonomialCase kind;
    std::string label;
    bool defectless; // forced by the case
};

inline CaseLabel classify_case(int rational_rank, int residue_transcendence) {
    if (rational_rank < 1 || rational_rank > 2 || residue_transcendence < 0 || residue_transcendence > 1)
        fail(ErrorKind::BadParams, "rational rank must be 1 or 2 and transcendence 0 or 1");
    if (rational_rank + residue_transcendence > 2)
        fail(ErrorKind::AbhyankarViolation, "rational rank + residue transcendence exceeds 2");
    if (residue_transcendence == 1) return {MonomialCase::DvrCase, "dvr", true};
    if (rational_rank == 2) return {MonomialCase::Rank2Monomial, "rank2-monomial", true};
    return {MonomialCase::Rank1, "rank1", false};
}

// ---------------------------------------------------------------------------
// Rank-1 monomial extensions u = x^e, v = y

struct Rank1Monomial {
    std::int64_t e = 1;
    std::int64_t m = 1; // nu*(y) = 1/m, gcd(m, e) = 1
    GenSeq upper;       // (x, y) with values (1/e, 1/m)
    GenSeq lower;       // (u, v) with values (1, 1/m)
};

inline Rank1Monomial rank1_monomial(const Field& F, std::int64_t e, std::int64_t m) {
    if (e < 1 || m < 1) fail(ErrorKind::BadParams, "e and m must be positive");
    if (std::gcd(e, m) != 1) fail(ErrorKind::BadParams, "e and m must be coprime");
    Rank1Monomial r;
    r.e = e;
    r.m = m;
    const std::vector<Poly2> keys{Poly2::x(F), Poly2::y(F)};
    r.upper = GenSeq::from_keys(F, keys, {Value(1, e), Value(1, m)}, "S", {"x", "y"});
    r.lower = GenSeq::from_keys(F, keys, {Value(1), Value(1, m)}, "R", {"u", "v"});
    return r;
}

} // namespace valgen
