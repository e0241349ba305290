#include <gtest/gtest.h>

#include <random>

#include "instances.hpp"
#include "valgen/monomial.hpp"

using namespace valgen;

namespace {

Value V(std::int64_t n, std::int64_t d = 1) { return Value(BigInt(n), BigInt(d)); }

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::Overflow;
}

// Lattice index of A Z^2 by counting residues: the points of Z^2 / A Z^2 in
// the box [0, |det|)^2 reduced modulo the lattice, independent of any
// elimination.
std::int64_t lattice_index_by_counting(const Mat2& m) {
    const std::int64_t d = std::llabs(m[0][0] * m[1][1] - m[0][1] * m[1][0]);
    if (d == 0) return 0;
    // (x, y) is in A Z^2 (columns) iff adj(A) (x, y) is divisible by det
    auto in_lattice = [&](std::int64_t x, std::int64_t y) {
        const std::int64_t s = m[1][1] * x - m[0][1] * y;
        const std::int64_t t = -m[1][0] * x + m[0][0] * y;
        return s % d == 0 && t % d == 0;
    };
    // count classes among the d^2 points of the box: each class meets the box
    // in exactly d^2 / index points, and (0,0) lies in the lattice
    std::int64_t hits = 0;
    for (std::int64_t x = 0; x < d; ++x)
        for (std::int64_t y = 0; y < d; ++y)
            if (in_lattice(x, y)) ++hits;
    return d * d / hits;
}

} // namespace

TEST(DetIndex, Examples) {
    EXPECT_EQ(det_index({{{1, 0}, {0, 1}}}), 1);
    EXPECT_EQ(det_index({{{3, 0}, {0, 1}}}), 3);
    EXPECT_EQ(det_index({{{2, 1}, {1, 3}}}), 5);
    EXPECT_EQ(smith_normal_form({{{2, 1}, {1, 3}}}), std::make_pair(std::int64_t{1}, std::int64_t{5}));
    EXPECT_EQ(kind_of([] { det_index({{{2, 0}, {0, 0}}}); }), ErrorKind::Singular);
}

TEST(DetIndex, SmithFormOnKnownMatrices) {
    EXPECT_EQ(smith_normal_form({{{2, 4}, {6, 8}}}), std::make_pair(std::int64_t{2}, std::int64_t{4}));
    EXPECT_EQ(smith_normal_form({{{2, 0}, {0, 3}}}), std::make_pair(std::int64_t{1}, std::int64_t{6}));
    EXPECT_EQ(smith_normal_form({{{4, 0}, {0, 6}}}), std::make_pair(std::int64_t{2}, std::int64_t{12}));
    EXPECT_EQ(smith_normal_form({{{0, 0}, {0, 0}}}), std::make_pair(std::int64_t{0}, std::int64_t{0}));
}

TEST(DetIndex, MatchesSmithFormOnRandomMatrices) {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<std::int64_t> d(-50, 50);
    int tested = 0;
    while (tested < 200) {
        const Mat2 m{{{d(rng), d(rng)}, {d(rng), d(rng)}}};
        if (det(m) == 0) continue;
        const auto [d1, d2] = smith_normal_form(m);
        EXPECT_EQ(det_index(m), d1 * d2) << mat_str(m);
        EXPECT_EQ(d2 % d1, 0) << mat_str(m);
        ++tested;
    }
}

TEST(DetIndex, MatchesCountingOnSmallMatrices) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> d(-6, 6);
    for (int t = 0; t < 100; ++t) {
        const Mat2 m{{{d(rng), d(rng)}, {d(rng), d(rng)}}};
        if (det(m) == 0) continue;
        EXPECT_EQ(det_index(m), lattice_index_by_counting(m)) << mat_str(m);
    }
}

TEST(EuclideanReduce, Examples) {
    EuclidResult r = euclidean_reduce({{{2, 0}, {2, 1}}});
    EXPECT_EQ(r.s, 2);
    EXPECT_EQ(r.step_log, "N");
    EXPECT_TRUE(r.identity_ok);

    r = euclidean_reduce({{{4, 1}, {6, 2}}});
    EXPECT_EQ(r.s, 2);
    EXPECT_EQ(r.t1, 0);
    EXPECT_EQ(r.t2, 1);
    EXPECT_EQ(r.step_log, "VUN");
    EXPECT_EQ(r.s * std::llabs(r.t1 - r.t2), std::llabs(4 * 2 - 1 * 6));

    r = euclidean_reduce({{{1, 0}, {1, 1}}});
    EXPECT_EQ(r.s, 1);
    EXPECT_EQ(r.step_log.size(), 1u);
    EXPECT_EQ(kind_of([] { euclidean_reduce({{{0, 1}, {1, 1}}}); }), ErrorKind::BadParams);
    EXPECT_EQ(kind_of([] { euclidean_reduce({{{2, 1}, {4, 2}}}); }), ErrorKind::Singular);
}

TEST(EuclideanReduce, IdentityOnRandomInputs) {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::int64_t> pos(1, 40), any(0, 40);
    for (int t = 0; t < 500; ++t) {
        const Mat2 m{{{pos(rng), any(rng)}, {pos(rng), any(rng)}}};
        if (det(m) == 0) continue;
        const EuclidResult r = euclidean_reduce(m);
        EXPECT_EQ(r.s, std::gcd(m[0][0], m[1][0])) << mat_str(m);
        EXPECT_TRUE(r.identity_ok) << mat_str(m);
        // the final pair has determinant of the same absolute value
        EXPECT_EQ(std::llabs(det(r.final_rows)), std::llabs(det(m))) << mat_str(m);
    }
}

TEST(MonomialChart, Unimodular) {
    for (auto [a, b] : std::vector<std::pair<Value, Value>>{{V(3, 2), V(1)}, {V(1), V(1, 4)}, {V(5, 7), V(3, 7)}}) {
        const MonomialChart c = monomial_chart(a, b);
        EXPECT_EQ(c.m1 * c.n1p - c.n1 * c.m1p, 1);
        EXPECT_EQ(Value(c.m1) * c.x1_value, a);
        EXPECT_EQ(Value(c.n1) * c.x1_value, b);
    }
}

TEST(GradedPresentation, Examples) {
    EXPECT_EQ(graded_presentation_rank1(1, 1).degree, 1);
    const GradedPresentation g = graded_presentation_rank1(3, 1);
    ASSERT_EQ(g.relations.size(), 1u);
    EXPECT_EQ(g.relations[0].exponents, std::vector<std::int64_t>{3});
    EXPECT_EQ(g.degree, 3);
    EXPECT_EQ(graded_presentation_rank1(2, 5).degree, 10);
    const GradedPresentation r2 = graded_presentation_rank2({{{2, 1}, {1, 3}}}, 2);
    EXPECT_EQ(r2.rank, 2);
    EXPECT_EQ(r2.degree, 10);
    EXPECT_EQ(kind_of([] { graded_presentation_rank1(0, 1); }), ErrorKind::BadParams);
}

TEST(MinFormula, Examples) {
    EXPECT_TRUE(check_min_formula({V(0), V(1)}, ValueGroup::integers(), V(1), 1));
    EXPECT_TRUE(check_min_formula({V(0), V(1), V(2)}, ValueGroup::integers(), V(1, 2), 2));
    EXPECT_EQ(kind_of([] { check_min_formula({V(0)}, ValueGroup::integers(), V(1), 2); }), ErrorKind::OrderMismatch);
}

TEST(SemigroupDecomposition, Examples) {
    const Field f(3);
    const Rank1Monomial x2 = rank1_monomial(f, 2, 3);
    const ValSemigroup big = semigroup(x2.upper, V(5)), small = semigroup(x2.lower, V(5));
    EXPECT_TRUE(semigroup_decomposition(big, small, V(1, 2), 2, V(5)));
    EXPECT_FALSE(semigroup_decomposition(big, small, V(1, 2), 3, V(5)));
    EXPECT_FALSE(semigroup_decomposition(big, small, V(1, 2), 1, V(5)));
    const Rank1Monomial id = rank1_monomial(f, 1, 2);
    const ValSemigroup s = semigroup(id.upper, V(5));
    EXPECT_TRUE(semigroup_decomposition(s, s, V(1), 1, V(5)));
}

TEST(SemigroupDecomposition, AllSmallExtensions) {
    const Field f(2);
    for (std::int64_t e = 1; e <= 6; ++e)
        for (std::int64_t m = 2; m <= 7; ++m) {
            if (std::gcd(e, m) != 1) continue;
            const Rank1Monomial r = rank1_monomial(f, e, m);
            const ValSemigroup big = semigroup(r.upper, V(10)), small = semigroup(r.lower, V(10));
            const ValueGroup gn = ValueGroup::generated_by(small.elements);
            EXPECT_EQ(order_in_quotient(V(1, e), gn), e);
            EXPECT_TRUE(check_min_formula(small.elements, gn, V(1, e), e)) << e << " " << m;
            for (std::int64_t b = 1; b <= 10; ++b)
                EXPECT_TRUE(semigroup_decomposition(big, small, V(1, e), e, V(b))) << e << " " << m << " " << b;
        }
}

TEST(ClassifyCase, Examples) {
    EXPECT_EQ(classify_case(2, 0).kind, MonomialCase::Rank2Monomial);
    EXPECT_TRUE(classify_case(2, 0).defectless);
    EXPECT_EQ(classify_case(1, 1).kind, MonomialCase::DvrCase);
    EXPECT_TRUE(classify_case(1, 1).defectless);
    EXPECT_EQ(classify_case(1, 0).kind, MonomialCase::Rank1);
    EXPECT_FALSE(classify_case(1, 0).defectless);
    EXPECT_EQ(kind_of([] { classify_case(2, 1); }), ErrorKind::AbhyankarViolation);
}

TEST(DegreeFormula, DefectlessRank1Instances) {
    std::mt19937_64 rng(314);
    for (std::uint32_t p : {2u, 3u}) {
        const Field f(p);
        for (int t = 0; t < 50; ++t) {
            const auto inst = instances::random_rank1(f, rng);
            const Value nu_x = value_of(Poly2::x(f), inst.upper);
            const ValueGroup gamma_nu =
                ValueGroup::generated_by({value_of(inst.u, inst.upper), value_of(inst.v, inst.upper)});
            const std::int64_t e = static_cast<std::int64_t>(order_in_quotient(nu_x, gamma_nu));
            EXPECT_EQ(e, inst.e_built);
            const StableForm s = stable_form(inst.u, inst.v);
            EXPECT_EQ(s.a, e);
            EXPECT_EQ(s.b, 0);
            EXPECT_EQ(s.d, 1);
            EXPECT_EQ(defect_from_stable(s, p, e, 1), 0);
            EXPECT_EQ(graded_presentation_rank1(e, 1).degree, s.a * s.d);
        }
    }
}
