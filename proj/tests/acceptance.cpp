// Acceptance run: one line per criterion with its verdict, elapsed time and
// time limit. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "instances.hpp"
#include "oracle.hpp"
#include "valgen/valgen.hpp"

using namespace valgen;

namespace {

Value V(std::int64_t n, std::int64_t d = 1) { return Value(BigInt(n), BigInt(d)); }

struct Outcome {
    bool ok = true;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double limit_s;
    std::function<Outcome()> run;
};

class Tally {
public:
    void check(bool cond, const std::string& what) {
        ++checks_;
        if (!cond) {
            ++failures_;
            if (first_.empty()) first_ = what;
        }
    }
    Outcome outcome(const std::string& summary) const {
        std::ostringstream os;
        os << summary << "; " << checks_ << " checks";
        if (failures_) os << ", " << failures_ << " failed (first: " << first_ << ")";
        return {failures_ == 0, os.str()};
    }

private:
    std::size_t checks_ = 0;
    std::size_t failures_ = 0;
    std::string first_;
};

// ---------------------------------------------------------------------------

Outcome gamma_bar_forms() {
    Tally t;
    for (std::uint64_t p : {2u, 3u, 5u}) {
        t.check(gamma_bar_recursive(0, p) == V(1), "gamma_0 = 1");
        t.check(gamma_bar_recursive(1, p) == V(1, static_cast<std::int64_t>(p)), "gamma_1 = 1/p");
        for (unsigned j = 0; j <= 20; ++j)
            t.check(gamma_bar_recursive(j, p) == gamma_bar_closed(j, p),
                    "p=" + std::to_string(p) + " j=" + std::to_string(j));
    }
    return t.outcome("j <= 20, p in {2,3,5}");
}

Outcome stage_groups() {
    Tally t;
    for (std::uint64_t p : {2u, 3u, 5u}) {
        ValueGroup prev = ValueGroup::integers();
        for (unsigned i = 1; i <= 10; ++i) {
            const std::string at = "p=" + std::to_string(p) + " i=" + std::to_string(i);
            const BigInt d = i % 2 == 1 ? ipow(BigInt(p), 2 * i - 2) : ipow(BigInt(p), 2 * i - 3);
            t.check(prev == ValueGroup::with_denominator(d), "group before " + at);
            const ValueGroup cur = group_join(prev, gamma_bar(i, p));
            const BigInt n = i % 2 == 1 ? BigInt(p) : BigInt(p * p * p);
            t.check(group_index(cur, prev) == n, "index " + at);
            prev = cur;
        }
    }
    return t.outcome("i <= 10, p in {2,3,5}");
}

Outcome sequence_validity() {
    Tally t;
    for (auto [p, c] : std::vector<std::pair<std::uint32_t, std::int64_t>>{{2, 1}, {2, 2}, {3, 2}})
        for (Family f : {Family::Q, Family::P, Family::U}) {
            const ValidityReport r = validate(build_paper_seq(f, p, c, 5, std::nullopt));
            t.check(r.ok, to_string(f) + " p=" + std::to_string(p) + " c=" + std::to_string(c) + ": " + r.first_failure);
        }
    return t.outcome("Q, P, U with N = 5 at (2,1), (2,2), (3,2)");
}

Outcome oracle_equivalence() {
    Tally t;
    std::mt19937_64 rng(20240501);
    std::size_t tested = 0;
    for (std::uint32_t p : {2u, 3u})
        for (Family f : {Family::Q, Family::P, Family::U}) {
            const char letter = f == Family::Q ? 'Q' : f == Family::P ? 'P' : 'U';
            const GenSeq g = build_paper_seq(f, p, p - 1, 4, std::nullopt);
            const auto rec = oracle::recursion(letter, p, 4);
            for (int k = 0; k < 100; ++k) {
                const Poly2 a = instances::random_poly(g.field(), rng, 8, 16, 6);
                if (a.is_zero()) continue;
                const ValueResult got = value_detail(a, g);
                const oracle::MinResult want = oracle::min_value(a, rec);
                t.check(got.value == want.value, a.str(g.names()));
                t.check(want.attaining == 1 && got.min_term_count == 1, "unique minimum for " + a.str(g.names()));
                ++tested;
            }
        }
    return t.outcome(std::to_string(tested) + " random polynomials, deg_y <= 16, F_2 and F_3");
}

Outcome tower_differences() {
    Tally t;
    for (auto [p, c, jmax] : std::vector<std::tuple<std::int64_t, std::int64_t, unsigned>>{{2, 1, 4}, {2, 2, 4}, {3, 2, 3}}) {
        const Tower tw = build_tower(p, c, jmax + 1);
        for (unsigned j = 1; j <= jmax; ++j) {
            const std::string at = "p=" + std::to_string(p) + " c=" + std::to_string(c) + " j=" + std::to_string(j);
            const Lemma64Report r = verify_lemma64(tw, j);
            t.check(r.complete, "precision " + at);
            t.check(r.divisible_by_xe, "x^E divides " + at);
            t.check(r.x_divides_f, "x | f " + at);
            const std::int64_t deg = ipow64(p, j % 2 == 1 ? 2 * j - 1 : 2 * j);
            t.check(r.deg_y_f == deg, "deg_y f " + at);
            t.check(r.ok, at);
        }
        // first difference: -x^{cp} y^p
        const Poly2 first = Poly2::monomial(tw.field, tw.field.neg(1), c * p, p);
        t.check(verify_lemma64(tw, 1).difference == first, "first difference");
    }
    return t.outcome("j <= 4 at p = 2 (c = 1, 2), j <= 3 at p = 3 (c = 2)");
}

Outcome value_comparison() {
    Tally t;
    for (std::int64_t c : {1, 2}) {
        const Tower tw = build_tower(2, c, 5);
        for (unsigned j = 1; j <= 4; ++j) {
            const ValueComparison v = verify_value_comparison(tw, j);
            const Value beta = tw.q.values().at(j + 1);
            const Value expect = j % 2 == 1 ? beta : V(2) * beta;
            const std::string at = "c=" + std::to_string(c) + " j=" + std::to_string(j);
            t.check(v.nu_u == expect, "value " + at);
            t.check(v.bound_ok, "upper bound " + at);
            t.check(!v.lower_ok || *v.lower_ok, "lower bound " + at);
            t.check(!v.lower_closed_ok || *v.lower_closed_ok, "closed form " + at);
        }
    }
    return t.outcome("j <= 4, p = 2, c in {1,2}");
}

Outcome restriction() {
    Tally t;
    std::size_t total = 0;
    for (auto [p, c] : std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 1}, {2, 2}, {3, 2}}) {
        const RestrictionReport r = verify_restriction(build_tower(p, c, 5), 200, V(1000), 99);
        total += r.tested;
        t.check(r.tested == 200, "sample count");
        t.check(r.mismatches == 0, std::to_string(r.mismatches) + " mismatches at p=" + std::to_string(p));
    }
    return t.outcome(std::to_string(total) + " samples over 3 configurations");
}

Outcome ladder() {
    Tally t;
    for (auto [p, c] : std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 1}, {3, 2}}) {
        const Tower tw = build_tower(p, c, 5);
        for (const LadderRow& r : run_tower_ladder(tw, 4)) {
            const bool even = r.j % 2 == 0;
            const std::string at = "p=" + std::to_string(p) + " j=" + std::to_string(r.j);
            // alternation table
            t.check(r.upper.form.alpha == (even ? 1 : 0), "alpha S/A " + at);
            t.check(r.upper.form.beta == (even ? 0 : 1), "beta S/A " + at);
            t.check(r.lower.form.alpha == (even ? 0 : 1), "alpha A/R " + at);
            t.check(r.lower.form.beta == (even ? 1 : 0), "beta A/R " + at);
            t.check(r.upper.form.alpha + r.upper.form.beta == 1, "sum S/A " + at);
            t.check(r.lower.form.alpha + r.lower.form.beta == 1, "sum A/R " + at);
            t.check(r.total.form.alpha == 1 && r.total.form.beta == 1, "total (1,1) " + at);
            t.check(r.upper.delta == 1 && r.lower.delta == 1 && r.total.delta == 2, "defects " + at);
            t.check(ipow64(p, r.total.delta) == ipow64(p, r.upper.delta) * ipow64(p, r.lower.delta),
                    "multiplicativity " + at);
        }
    }
    return t.outcome("p in {2,3}, c minimal, j <= 4");
}

Outcome degree_formula() {
    Tally t;
    std::mt19937_64 rng(4242);
    for (std::uint32_t p : {2u, 3u}) {
        const Field f(p);
        for (int k = 0; k < 50; ++k) {
            const auto inst = instances::random_rank1(f, rng);
            const ValueGroup gamma_nu =
                ValueGroup::generated_by({value_of(inst.u, inst.upper), value_of(inst.v, inst.upper)});
            const auto e = static_cast<std::int64_t>(order_in_quotient(value_of(Poly2::x(f), inst.upper), gamma_nu));
            const StableForm s = stable_form(inst.u, inst.v);
            const std::string at = "p=" + std::to_string(p) + " e=" + std::to_string(e) + " m=" + std::to_string(inst.m);
            t.check(e == inst.e_built, "index " + at);
            t.check(s.a == e, "a = e " + at);
            t.check(s.d == 1, "d = 1 " + at);
            t.check(defect_from_stable(s, p, e, 1) == 0, "defect " + at);
        }
    }
    return t.outcome("100 random rank-1 monomial instances");
}

Outcome rank2_index() {
    Tally t;
    std::mt19937_64 rng(555);
    std::uniform_int_distribution<std::int64_t> d(-50, 50);
    int tested = 0;
    while (tested < 200) {
        const Mat2 m{{{d(rng), d(rng)}, {d(rng), d(rng)}}};
        if (det(m) == 0) continue;
        const auto [d1, d2] = smith_normal_form(m);
        t.check(det_index(m) == d1 * d2, mat_str(m));
        ++tested;
    }
    return t.outcome("200 random matrices, |entries| <= 50");
}

Outcome min_formula_and_decomposition() {
    Tally t;
    int built = 0;
    for (std::uint32_t p : {2u, 3u}) {
        const Field f(p);
        for (std::int64_t e = 1; e <= 6; ++e)
            for (std::int64_t m = 2; m <= 7; ++m) {
                if (std::gcd(e, m) != 1) continue;
                const Rank1Monomial r = rank1_monomial(f, e, m);
                const ValSemigroup big = semigroup(r.upper, V(10)), small = semigroup(r.lower, V(10));
                const ValueGroup gn = ValueGroup::generated_by(small.elements);
                const std::string at = "e=" + std::to_string(e) + " m=" + std::to_string(m);
                t.check(check_min_formula(small.elements, gn, V(1, e), e), "min formula " + at);
                for (std::int64_t b = 1; b <= 10; ++b)
                    t.check(semigroup_decomposition(big, small, V(1, e), e, V(b)),
                            "decomposition " + at + " B=" + std::to_string(b));
                ++built;
            }
    }
    return t.outcome(std::to_string(built) + " extensions, e <= 6, B <= 10");
}

Outcome transform_round_trip() {
    Tally t;
    for (std::uint32_t p : {2u, 3u})
        for (Family f : {Family::Q, Family::P, Family::U}) {
            const GenSeq base = build_paper_seq(f, p, p - 1, 6, std::nullopt);
            ChartSeq cur = level_one(base);
            for (unsigned k = 1; k <= 4; ++k) {
                const TransformResult r = composite_transform(cur, base);
                const std::string at = to_string(f) + " p=" + std::to_string(p) + " level " + std::to_string(k + 1);
                for (const auto& c : r.checks) t.check(c.declared == c.pulled_back, at + " key " + std::to_string(c.j));
                t.check(r.ok, at);
                cur = r.next;
            }
        }
    return t.outcome("Q, P, U at p in {2,3}, levels 2..5");
}

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "gamma-bar recursion equals closed form", 1, gamma_bar_forms},
        {2, "stage group indices and groups", 1, stage_groups},
        {3, "generating-sequence validity", 10, sequence_validity},
        {4, "value_of equals rewrite-oracle minimum", 60, oracle_equivalence},
        {5, "tower difference identities", 300, tower_differences},
        {6, "value comparison and bounds", 60, value_comparison},
        {7, "restriction of the upper valuation", 60, restriction},
        {8, "alpha/beta ladder and defects", 300, ladder},
        {9, "degree formula a = e, d = 1", 10, degree_formula},
        {10, "rank-2 index equals Smith-form index", 5, rank2_index},
        {11, "min-formula distinctness and semigroup decomposition", 30, min_formula_and_decomposition},
        {12, "transform round trip", 120, transform_round_trip},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = s < c.limit_s;
        const bool pass = o.ok && in_time;
        if (!pass) ++failed;
        std::printf("%s  %2d  %-52s %8.3fs (limit %gs)  %s%s\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), s,
                    c.limit_s, o.detail.c_str(), in_time ? "" : " [time limit exceeded]");
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
