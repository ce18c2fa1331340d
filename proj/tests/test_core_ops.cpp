#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "suq2/suq2.hpp"

using namespace suq2;

namespace {

const TruncationWindow kW1(10, 6, 1);

Vec xi(const Space& s, int k, int m) { return basis_vector(s, {{k, m}}); }

Operator random_op(const Space& s, std::uint64_t seed, int per_col = 3, int reach = 2, bool integral = false) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dk(-reach, reach), dm(-2, 2);
    std::normal_distribution<double> g;
    Operator::Builder b(s);
    int ck[3], rk[3], sm[3];
    for (int c = 0; c < s.classes(); ++c) {
        s.levels_of(c, ck);
        for (int e = 0; e < per_col; ++e) {
            for (int i = 0; i < s.order(); ++i) {
                rk[i] = ck[i] + dk(rng);
                sm[i] = dm(rng);
            }
            cplx v(g(rng), g(rng));
            if (integral) v = cplx(std::round(4 * v.real()), std::round(4 * v.imag()));
            b.add_levels(ck, rk, sm, v);
        }
    }
    return b.build();
}

}  // namespace

TEST(Window, RejectsDegenerateSizes) {
    EXPECT_THROW(TruncationWindow(3, 10, 1), std::invalid_argument);
    EXPECT_THROW(TruncationWindow(10, 3, 1), std::invalid_argument);
    EXPECT_THROW(TruncationWindow(10, 10, 4), std::invalid_argument);
}

TEST(Window, DimensionMatchesFormula) {
    for (int order = 1; order <= 3; ++order) {
        TruncationWindow w(6, 4, order);
        EXPECT_EQ(w.dimension(), static_cast<Index>(std::pow(6 * 9, order)));
        EXPECT_EQ(w.space().dim(), w.dimension());
    }
}

TEST(Window, InteriorKeepsLevelsBelowTopMargin) {
    TruncationWindow w(8, 5, 2);
    InteriorSet in(w.space(), 3);
    int k[2];
    for (int c : in.classes()) {
        w.space().levels_of(c, k);
        EXPECT_LT(k[0], 5);
        EXPECT_LT(k[1], 5);
    }
    EXPECT_EQ(in.classes().size(), 25u);
}

TEST(Apply, ShiftMovesLevelUp) {
    Operator T = gen_T(kW1);
    Vec out = T.apply(xi(T.space(), 0, 0));
    EXPECT_EQ((out - xi(T.space(), 1, 0)).norm(), 0.0);
}

TEST(Apply, IdentityIsIdentity) {
    Space s = kW1.space();
    Vec v = seeded_vector(s.dim(), 3);
    EXPECT_EQ((Operator::identity(s).apply(v) - v).norm(), 0.0);
}

TEST(Apply, TTstarKillsLevelZero) {
    Operator T = gen_T(kW1);
    Operator p = T * T.adjoint();
    for (int m = -6; m <= 6; ++m) EXPECT_EQ(p.apply(xi(p.space(), 0, m)).norm(), 0.0);
}

TEST(Apply, WindowMismatchThrows) {
    Operator T = gen_T(kW1);
    Vec v = Vec::Zero(5);
    EXPECT_THROW(T.apply(v), std::invalid_argument);
    Operator T2 = gen_T(TruncationWindow(8, 6, 1));
    EXPECT_THROW(T * T2, std::invalid_argument);
}

TEST(Apply, LazyProductIsRightToLeft) {
    Operator T = gen_T(kW1), S = gen_S(kW1);
    LazyOperator e = LazyOperator(T) * LazyOperator(S);
    Vec out = e.apply(xi(T.space(), 0, 2));
    EXPECT_NEAR((out - xi(T.space(), 1, 3)).norm(), 0.0, 0.0);
    Vec back = e.apply_adjoint(out);
    EXPECT_NEAR((back - xi(T.space(), 0, 2)).norm(), 0.0, 0.0);
}

TEST(Kernel, MatchesDenseArithmetic) {
    Space s(std::vector<LegShape>{{5, 3}, {4, 2}});
    Operator A = random_op(s, 11), B = random_op(s, 12);
    Eigen::MatrixXcd a = A.dense(), b = B.dense();
    EXPECT_LT((A.compose(B).dense() - a * b).norm(), 1e-12);
    EXPECT_LT((A.adjoint().dense() - a.adjoint()).norm(), 1e-14);
    EXPECT_LT(((A + B).dense() - (a + b)).norm(), 1e-14);
    Vec v = seeded_vector(s.dim(), 5);
    EXPECT_LT((A.apply(v) - a * v).norm(), 1e-12);
}

TEST(Kernel, KronEntryIsProductOfFactorEntries) {
    Space s1(std::vector<LegShape>{{4, 3}}), s2(std::vector<LegShape>{{3, 2}});
    Operator A = random_op(s1, 21), B = random_op(s2, 22);
    Eigen::MatrixXcd k = A.kron(B).dense();
    Eigen::MatrixXcd a = A.dense(), b = B.dense();
    // flat layout is (class1, class2, wind1, wind2), so compare through entries
    for (int r1 = 0; r1 < 4; ++r1)
        for (int c1 = 0; c1 < 4; ++c1)
            for (int r2 = 0; r2 < 3; ++r2)
                for (int c2 = 0; c2 < 3; ++c2)
                    for (int m = -1; m <= 1; ++m) {
                        cplx e = A.kron(B).entry({{r1, m}, {r2, 1}}, {{c1, 0}, {c2, 0}});
                        cplx want = A.entry({{r1, m}}, {{c1, 0}}) * B.entry({{r2, 1}}, {{c2, 0}});
                        EXPECT_EQ(e, want);
                    }
    EXPECT_NEAR(k.norm(), a.norm() * b.norm(), 1e-10);
}

// Integer amplitudes keep every product exact in floating point.
TEST(Kernel, KronIsAssociativeExactly) {
    Space s(std::vector<LegShape>{{3, 3}});
    Operator A = random_op(s, 31, 3, 2, true), B = random_op(s, 32, 3, 2, true), C = random_op(s, 33, 3, 2, true);
    Operator l = A.kron(B).kron(C), r = A.kron(B.kron(C));
    ASSERT_EQ(l.space(), r.space());
    for (int c = 0; c < l.space().classes(); ++c) {
        ASSERT_EQ(l.col_end(c) - l.col_begin(c), r.col_end(c) - r.col_begin(c));
        for (auto p = l.col_begin(c), q = r.col_begin(c); p != l.col_end(c); ++p, ++q) {
            EXPECT_EQ(p->row, q->row);
            EXPECT_EQ(p->shift, q->shift);
            EXPECT_EQ(p->val, q->val);
        }
    }
}

TEST(Kernel, AdjointIsConjugateTranspose) {
    Space s(std::vector<LegShape>{{5, 5}, {5, 5}});
    Operator A = random_op(s, 41);
    Operator As = A.adjoint();
    for (int k1 = 0; k1 < 5; ++k1)
        for (int k2 = 0; k2 < 5; ++k2)
            for (int m = -2; m <= 2; ++m) {
                std::vector<BasisIndex> r{{k1, m}, {k2, 0}}, c{{2, 0}, {1, 1}};
                EXPECT_EQ(As.entry(c, r), std::conj(A.entry(r, c)));
            }
}

// apply(adjoint(op), apply(op, v)) against apply(compose(adjoint(op), op), v)
TEST(Property, ComposeAgreesWithRepeatedAction) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Space s(std::vector<LegShape>{{8, 5}, {8, 5}});
        Operator A = random_op(s, 100 + seed);
        Operator AsA = A.adjoint() * A;
        InteriorSet in(s, 2);
        Operator As = A.adjoint();
        for (std::size_t i = 0; i < in.size(); i += 37) {
            Vec v = Vec::Zero(s.dim());
            v[in.indices()[i]] = 1.0;
            EXPECT_LT((As.apply(A.apply(v)) - AsA.apply(v)).norm(), 1e-12);
        }
    }
}

TEST(PowerProjection, IdempotentIsFixed) {
    Operator p = word_op(Word::J(0, 0, 0), kW1);
    auto r = power_projection(p, 0.3, 1e-8);
    EXPECT_GT(r.power, 1);
    EXPECT_LT((r.op - p).max_abs(), 1e-15);
}

TEST(PowerProjection, QZeroIsAlreadyTheLevelZeroProjection) {
    Operator b = phi_b(0.0, kW1);
    Operator x = b * b.adjoint();
    auto r = power_projection(x, 0.0, 1e-8);
    EXPECT_EQ(r.power, 1);
    EXPECT_LT((r.op - word_op(Word::J(0, 0, 0), kW1)).max_abs(), 1e-15);
}

TEST(PowerProjection, QHalfConvergesToLevelZero) {
    const double tol = 1e-8;
    Operator b = phi_b(0.5, kW1);
    auto r = power_projection(b * b.adjoint(), 0.25, tol);
    EXPECT_EQ(r.power, static_cast<int>(std::ceil(std::log(tol) / std::log(0.25))));
    EXPECT_LE(r.bound, tol);
    InteriorSet in(r.op.space(), 0);
    Operator diff = r.op - word_op(Word::J(0, 0, 0), kW1);
    EXPECT_LE(interior_residual(diff, in), r.bound);
    // invariants of the output
    EXPECT_LE(interior_residual(r.op * r.op - r.op, in), 2 * tol);
    EXPECT_LE(interior_residual(r.op - r.op.adjoint(), in), 1e-12);
}

TEST(PowerProjection, Errors) {
    Operator x = Operator::identity(kW1.space());
    EXPECT_THROW(power_projection(x, 1.0, 1e-8), std::invalid_argument);
    EXPECT_THROW(power_projection(x, 0.9, 1e-8, 10), BudgetExceeded);
}

TEST(InvSqrt, IdentityMapsToIdentity) {
    Operator I = Operator::identity(kW1.space());
    auto r = inv_sqrt(I, 0.75, 1e-10);
    EXPECT_LT((r.op - I).max_abs(), 1e-15);
}

TEST(InvSqrt, ScalarBlock) {
    Operator I = Operator::identity(kW1.space());
    auto r = inv_sqrt(I.scaled(0.75), 0.75, 1e-12);
    const double oracle = 1.0 / std::sqrt(0.75);
    EXPECT_NEAR(r.op.kernel(3, 3, 0).real(), oracle, 1e-12);
    EXPECT_NEAR(oracle, 1.1547005383792515, 1e-15);
    EXPECT_LE(r.bound, 1e-12);
}

TEST(InvSqrt, QZeroIsSingleTerm) {
    Operator I = Operator::identity(kW1.space());
    auto r = inv_sqrt(I, 1.0, 1e-8);
    EXPECT_EQ(r.terms, 1);
    EXPECT_EQ(r.bound, 0.0);
}

TEST(InvSqrt, Errors) {
    Operator I = Operator::identity(kW1.space());
    EXPECT_THROW(inv_sqrt(I, 0.0, 1e-8), std::invalid_argument);
    EXPECT_THROW(inv_sqrt(I.scaled(0.5), 0.01, 1e-12, 5), BudgetExceeded);
}

TEST(InvSqrt, RyRIsIdentity) {
    for (double q : {0.3, 0.5, 0.7}) {
        const double tol = 1e-8;
        Operator b = phi_b(q, kW1);
        Operator I = Operator::identity(kW1.space());
        Operator y = I - (b.adjoint() * b).scaled(q * q);
        auto r = inv_sqrt(y, 1 - q * q, tol);
        InteriorSet in(I.space(), 0);
        EXPECT_LE(interior_residual(r.op * y * r.op - I, in), 3 * tol) << q;
    }
}

TEST(NormEstimate, Isometry) {
    EXPECT_NEAR(norm_estimate(gen_T(kW1)).value, 1.0, 1e-12);
}

TEST(NormEstimate, ZeroOperator) {
    EXPECT_EQ(norm_estimate(Operator::zero(kW1.space())).value, 0.0);
}

TEST(NormEstimate, PhiBAtHalf) {
    auto e = norm_estimate(phi_b(0.5, kW1), 60);
    EXPECT_NEAR(e.value, 1.0, 1e-6);
    EXPECT_LE(e.value, 1.0 + 1e-12);
    EXPECT_GT(e.iterations, 0);
}

TEST(Dump, HeaderAndEntryLines) {
    TruncationWindow w(4, 4, 1);
    std::ostringstream os;
    dump_operator(os, gen_S(w), "S");
    std::istringstream is(os.str());
    std::string header, line;
    std::getline(is, header);
    EXPECT_NE(header.find("# S window [4 levels, 9 windings]"), std::string::npos);
    int lines = 0;
    while (std::getline(is, line)) {
        ++lines;
        int k1, m1, k0, m0;
        char bar1, bar2;
        double re, im;
        std::istringstream ls(line);
        ls >> k1 >> m1 >> bar1 >> k0 >> m0 >> bar2 >> re >> im;
        EXPECT_EQ(k1, 0);
        EXPECT_EQ(k0, 0);
        EXPECT_EQ(wrap(m1 - m0, 9), 1);
        EXPECT_EQ(re, 1.0);
    }
    EXPECT_EQ(lines, 9);
}
