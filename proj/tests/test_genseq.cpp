#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "valgen/genseq.hpp"
#include "valgen/parse.hpp"

using namespace valgen;

namespace {

Value V(std::int64_t n, std::int64_t d = 1) { return Value(BigInt(n), BigInt(d)); }

Poly2 random_poly(const Field& f, std::mt19937_64& rng, int max_x, int max_y, int terms) {
    Poly2 r(f);
    std::uniform_int_distribution<int> dx(0, max_x), dy(0, max_y);
    std::uniform_int_distribution<std::uint32_t> dc(1, f.size() - 1);
    for (int i = 0; i < terms; ++i) r.add_term(dc(rng), dx(rng), dy(rng));
    return r;
}

Poly2 P(const std::string& s, const GenSeq& g) {
    return parse_poly(s, g.field(), {{g.names().x, 0}, {g.names().y, 1}});
}

char letter(Family f) { return f == Family::Q ? 'Q' : f == Family::P ? 'P' : 'U'; }

} // namespace

TEST(BuildSeq, UKeysAndValues) {
    const GenSeq g = build_paper_seq(Family::U, 2, 1, 2, std::nullopt);
    ASSERT_EQ(g.size(), 3u);
    EXPECT_EQ(g.keys()[0], P("x", g));
    EXPECT_EQ(g.keys()[1], P("v", g));
    EXPECT_EQ(g.keys()[2], P("v^2 + x", g));
    EXPECT_EQ(g.values()[1], V(1, 2));
    EXPECT_EQ(g.values()[2], V(17, 16));
}

TEST(BuildSeq, QKeysAndValues) {
    for (std::int64_t p : {2, 3}) {
        const GenSeq g = build_paper_seq(Family::Q, p, 0, 2, std::nullopt);
        EXPECT_EQ(g.keys()[2], Poly2::y(g.field(), p * p) - Poly2::x(g.field()));
        EXPECT_EQ(g.values()[1], V(1, p * p));
        EXPECT_EQ(g.values()[2], V(1) + V(1, p * p * p * p));
    }
}

TEST(BuildSeq, PKeys) {
    const GenSeq g = build_paper_seq(Family::P, 2, 0, 2, std::nullopt);
    EXPECT_EQ(g.keys()[2], P("v^4 + u", g));
    EXPECT_EQ(g.names().x, "u");
}

TEST(BuildSeq, MatchesOracleRecursion) {
    for (std::int64_t p : {2, 3})
        for (Family f : {Family::Q, Family::P, Family::U}) {
            const GenSeq g = build_paper_seq(f, p, p - 1, 5, std::nullopt);
            const auto rec = oracle::recursion(letter(f), p, 5);
            EXPECT_EQ(g.keys(), oracle::keys(g.field(), rec)) << to_string(f) << p;
            EXPECT_EQ(g.values(), oracle::values(rec)) << to_string(f) << p;
        }
}

TEST(BuildSeq, RejectsBadParams) {
    EXPECT_THROW(build_paper_seq(Family::U, 3, 1, 3, std::nullopt), Error);
    EXPECT_THROW(build_paper_seq(Family::Q, 4, 0, 3, std::nullopt), Error);
    EXPECT_THROW(build_paper_seq(Family::Q, 2, 0, 1, std::nullopt), Error);
}

TEST(Validate, BuiltInSequencesPass) {
    for (auto [p, c] : std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 1}, {2, 2}, {3, 2}})
        for (Family f : {Family::Q, Family::P, Family::U}) {
            const ValidityReport r = validate(build_paper_seq(f, p, c, 5, std::nullopt));
            EXPECT_TRUE(r.ok) << to_string(f) << " p=" << p << " c=" << c << ": " << r.first_failure;
        }
}

TEST(Validate, UIndicesAlternate) {
    const ValidityReport r = validate(build_paper_seq(Family::U, 2, 1, 5, std::nullopt));
    ASSERT_EQ(r.entries.size(), 5u);
    const std::vector<int> expect{2, 8, 2, 8, 2};
    for (std::size_t k = 0; k < 5; ++k) {
        EXPECT_EQ(r.entries[k].i, k + 1);
        EXPECT_EQ(r.entries[k].computed_index, expect[k]);
        EXPECT_EQ(r.entries[k].declared_index, expect[k]);
    }
}

TEST(Validate, QIndicesAreSquares) {
    const ValidityReport r = validate(build_paper_seq(Family::Q, 2, 0, 4, std::nullopt));
    EXPECT_TRUE(r.ok);
    for (const auto& e : r.entries) EXPECT_EQ(e.computed_index, 4);
}

TEST(Validate, GrowthBoundaryFails) {
    const Field f(2);
    const std::vector<Poly2> keys{Poly2::x(f), Poly2::y(f), parse_poly("y^4 + x", f)};
    const GenSeq g = GenSeq::from_keys(f, keys, {V(1), V(1, 4), V(1)});
    const ValidityReport r = validate(g);
    EXPECT_FALSE(r.ok);
    ASSERT_FALSE(r.entries.empty());
    EXPECT_EQ(r.entries[0].i, 1u);
    EXPECT_EQ(r.entries[0].growth_ok, std::optional<bool>(false));
    EXPECT_THROW(value_of(Poly2::y(f), g), Error);
}

TEST(Expand, Examples) {
    const GenSeq g = build_paper_seq(Family::Q, 2, 0, 3, std::nullopt);
    auto e = expand(P("x^3", g), g);
    ASSERT_EQ(e.terms.size(), 1u);
    EXPECT_EQ(e.terms[0].exps[0], 3);

    e = expand(P("y^4", g), g);
    ASSERT_EQ(e.terms.size(), 2u);
    std::set<std::vector<std::int64_t>> seen;
    for (const auto& t : e.terms) {
        auto m = t.exps;
        m.resize(4, 0);
        seen.insert(m);
    }
    EXPECT_TRUE(seen.count({0, 0, 1, 0}));
    EXPECT_TRUE(seen.count({1, 0, 0, 0}));

    e = expand(g.keys()[2] * P("y", g), g);
    ASSERT_EQ(e.terms.size(), 1u);
    auto m = e.terms[0].exps;
    m.resize(3, 0);
    EXPECT_EQ(m, (std::vector<std::int64_t>{0, 1, 1}));
}

TEST(Expand, TooShort) {
    const GenSeq g = build_paper_seq(Family::Q, 2, 0, 2, std::nullopt);
    try {
        expand(P("y^16", g), g);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SequenceTooShort);
    }
}

TEST(ValueOf, Examples) {
    const GenSeq u = build_paper_seq(Family::U, 2, 1, 3, std::nullopt);
    EXPECT_EQ(value_of(P("x", u), u), V(1));
    EXPECT_EQ(value_of(P("v", u), u), V(1, 2));
    const GenSeq q = build_paper_seq(Family::Q, 2, 0, 3, std::nullopt);
    EXPECT_EQ(value_of(P("y^4", q), q), V(1));
    EXPECT_EQ(value_of(P("y^4 + x", q), q), V(17, 16));
}

TEST(ValueOf, KeysRoundTrip) {
    for (Family f : {Family::Q, Family::P, Family::U}) {
        const GenSeq g = build_paper_seq(f, 2, 1, 4, std::nullopt);
        for (std::size_t j = 0; j < g.size(); ++j) EXPECT_EQ(value_of(g.keys()[j], g), g.values()[j]);
    }
}

TEST(ValueOf, UnitDenominator) {
    const GenSeq g = build_paper_seq(Family::Q, 2, 0, 3, std::nullopt);
    const RationalElem r{P("x*y", g), P("1 + x + y", g)};
    EXPECT_EQ(value_of(r, g), V(5, 4));
}

TEST(ValueOf, MatchesRewriteOracle) {
    std::mt19937_64 rng(2024);
    for (std::int64_t p : {2, 3})
        for (Family f : {Family::Q, Family::P, Family::U}) {
            const GenSeq g = build_paper_seq(f, p, p - 1, 4, std::nullopt);
            const auto rec = oracle::recursion(letter(f), p, 4);
            for (int t = 0; t < 60; ++t) {
                const Poly2 a = random_poly(g.field(), rng, 6, 16, 5);
                if (a.is_zero()) continue;
                const ValueResult got = value_detail(a, g);
                const oracle::MinResult want = oracle::min_value(a, rec);
                ASSERT_EQ(got.value, want.value) << a.str();
                EXPECT_EQ(want.attaining, 1u);
                EXPECT_EQ(got.min_term_count, 1u);
            }
        }
}

TEST(ValueOf, AdditiveAndUltrametric) {
    std::mt19937_64 rng(99);
    const GenSeq g = build_paper_seq(Family::U, 2, 1, 4, std::nullopt);
    for (int t = 0; t < 100; ++t) {
        const Poly2 a = random_poly(g.field(), rng, 4, 8, 3), b = random_poly(g.field(), rng, 4, 8, 3);
        if (a.is_zero() || b.is_zero()) continue;
        const Value va = value_of(a, g), vb = value_of(b, g);
        EXPECT_EQ(value_of(a * b, g), va + vb);
        const Poly2 s = a + b;
        if (s.is_zero()) continue;
        const Value vs = value_of(s, g);
        EXPECT_GE(vs, std::min(va, vb));
        if (va != vb) {
            EXPECT_EQ(vs, std::min(va, vb));
        }
    }
}

TEST(Residue, Examples) {
    const GenSeq u = build_paper_seq(Family::U, 2, 1, 3, std::nullopt);
    EXPECT_EQ(residue_of_quotient(P("v^2", u), P("x", u), u), 1u);
    EXPECT_EQ(residue_of_quotient(u.keys()[2], u.keys()[2], u), 1u);
    const GenSeq q3 = build_paper_seq(Family::Q, 3, 0, 3, std::nullopt);
    const Poly2 f = P("y^2 + x", q3);
    EXPECT_EQ(residue_of_quotient(f.scaled(2), f, q3), 2u);
    try {
        residue_of_quotient(P("x", u), P("v", u), u);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ValueMismatch);
    }
}

TEST(Semigroup, Examples) {
    const GenSeq q = build_paper_seq(Family::Q, 2, 0, 3, std::nullopt);
    EXPECT_EQ(semigroup(q, V(1)).elements, (std::vector<Value>{V(0), V(1, 4), V(1, 2), V(3, 4), V(1)}));
    EXPECT_EQ(semigroup(q, V(0)).elements, (std::vector<Value>{V(0)}));
    const GenSeq u = build_paper_seq(Family::U, 2, 1, 3, std::nullopt);
    EXPECT_EQ(semigroup(u, V(1, 2)).elements, (std::vector<Value>{V(0), V(1, 2)}));
}

TEST(Semigroup, ClosedUnderAddition) {
    for (Family f : {Family::Q, Family::U}) {
        const GenSeq g = build_paper_seq(f, 2, 1, 4, std::nullopt);
        const Value b(3);
        const ValSemigroup s = semigroup(g, b);
        for (const auto& a : s.elements)
            for (const auto& c : s.elements)
                if (a + c <= b) {
                    EXPECT_TRUE(s.contains(a + c)) << a << " + " << c;
                }
    }
}

TEST(Semigroup, ContainsValuesOfElements) {
    std::mt19937_64 rng(8);
    const GenSeq g = build_paper_seq(Family::U, 2, 1, 4, std::nullopt);
    const ValSemigroup s = semigroup(g, V(4));
    for (int t = 0; t < 100; ++t) {
        const Poly2 a = random_poly(g.field(), rng, 3, 6, 3);
        if (a.is_zero()) continue;
        const Value v = value_of(a, g);
        if (v <= V(4)) {
            EXPECT_TRUE(s.contains(v)) << a.str();
        }
    }
}
