#include <gtest/gtest.h>

#include <cmath>

#include "suq2/suq2.hpp"

using namespace suq2;

namespace {

const double kTol = 1e-8;

WordPolynomial t2(const Word& x, const Word& y, cplx c = 1.0) { return WordPolynomial::tensor_word({x, y}, c); }

Operator range_projection(const Space& s) {
    const std::vector<LegRep> legs = {LegRep::rho(s.leg(0).levels, s.leg(0).windings),
                                      LegRep::rho(s.leg(1).levels, s.leg(1).windings)};
    return synthesize(delta0_word(Word::J(0, 0, 0)), legs);
}

}  // namespace

TEST(Lambda, FirstValues) {
    const LambdaTable t = lambda_table(0.5, 0, 1e-12);
    EXPECT_EQ(t[0], 1.0);
    EXPECT_NEAR(t[1], 2.0 / 3.0, 1e-15);
    // 2/3 * 0.5^3 / (1 - 0.5^4)
    EXPECT_NEAR(t[2], 0.08888888888888889, 1e-15);
}

TEST(Lambda, ZeroIsDegenerate) {
    for (int n : {0, 3, 10}) {
        const LambdaTable t = lambda_table(0.0, n, kTol);
        EXPECT_EQ(t.k_cut(), 0);
        EXPECT_EQ(t[0], 1.0);
        EXPECT_EQ(t[1], 0.0);
        EXPECT_EQ(capital_lambda(0.0, n, kTol), 1.0);
    }
}

// Property: each successor is the recursion step applied in floating point,
// and every value obeys the closed-form bound.
TEST(Lambda, RecursionAndBound) {
    for (double q : {0.1, 0.3, 0.5, 0.7, 0.9, 0.97})
        for (int n = 0; n <= 20; ++n) {
            const LambdaTable t = lambda_table(q, n, 1e-12);
            for (int k = 0; k <= t.k_cut(); ++k) {
                if (k > 0) EXPECT_EQ(t[k], t[k - 1] * lambda_step(q, n, k - 1));
                EXPECT_LE(t[k], lambda_bound(q, n, k) * (1 + 1e-15)) << q << " " << n << " " << k;
            }
            EXPECT_LE(t.tail, 1e-12);
        }
}

TEST(Lambda, CutIsMinimal) {
    for (double q : {0.3, 0.7, 0.9}) {
        const LambdaTable t = lambda_table(q, 0, kTol);
        EXPECT_LE(lambda_bound_tail(q, 0, t.k_cut()), kTol);
        if (t.k_cut() > 0) EXPECT_GT(lambda_bound_tail(q, 0, t.k_cut() - 1), kTol);
    }
}

TEST(CapitalLambda, Values) {
    EXPECT_NEAR(capital_lambda(0.5, 0, 1e-12), 1.205136, 5e-7);
    EXPECT_LE(capital_lambda(0.5, 20, 1e-12) - 1.0, 1e-10);
    for (double q : {0.2, 0.6, 0.95})
        for (int n = 0; n < 10; ++n) EXPECT_GE(capital_lambda(q, n, kTol), 1.0);
}

TEST(FVector, ZeroIsBasisVector) {
    const Space s = TruncationWindow(6, 4, 2).space();
    const FVector f = f_vector(0.0, {2, 0, 0, 3}, s, kTol);
    ASSERT_EQ(f.coeff.size(), 1u);
    EXPECT_LT((f.to_vector(s) - basis_vector(s, {{2, 0}, {0, 3}})).norm(), 1e-15);
}

TEST(FVector, CoefficientsAtHalf) {
    const Space s = TruncationWindow(10, 4, 2).space();
    const FVector f = f_vector(0.5, {0, 0, 0, 0}, s, 1e-12);
    const double L = capital_lambda(0.5, 0, 1e-12);
    EXPECT_NEAR(f.coeff[0], 1.0 / L, 1e-15);
    EXPECT_NEAR(f.coeff[1], (2.0 / 3.0) / L, 1e-15);
    EXPECT_NEAR(f.coeff[2], 0.08888888888888889 / L, 1e-15);
    EXPECT_NEAR(f.to_vector(s).dot(basis_vector(s, {{1, -1}, {1, 1}})).real(), f.coeff[1], 1e-15);
    EXPECT_LE(f.norm, 1.0 + 1e-15);
    EXPECT_GE(f.norm, 1.0 - f.defect);
}

TEST(FVector, RejectsBadLabels) {
    const Space s = TruncationWindow(6, 4, 2).space();
    EXPECT_THROW(f_vector(0.5, {1, 0, 1, 0}, s, kTol), std::invalid_argument);
    EXPECT_THROW(f_vector(0.5, {6, 0, 0, 0}, s, kTol), std::invalid_argument);
    EXPECT_THROW(f_vector(0.5, {-1, 0, 0, 0}, s, kTol), std::invalid_argument);
    EXPECT_THROW(f_vector(0.5, {0, 0, 0, 0}, TruncationWindow(6, 4, 1).space(), kTol), std::invalid_argument);
}

// Property: distinct labels give orthonormal vectors.
TEST(FVector, GramIsIdentity) {
    for (double q : {0.3, 0.5, 0.7}) {
        const Space s = TruncationWindow(14, 4, 2).space();
        const auto labels = interior_labels(q, s, kTol, 2, 40);
        ASSERT_GE(labels.size(), 20u);
        std::vector<Vec> vs;
        double tail = 0.0;
        for (const auto& l : labels) {
            FVector f = f_vector(q, l, s, kTol);
            vs.push_back(f.to_vector(s));
            tail = std::max(tail, f.defect);
        }
        double worst = 0.0;
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = 0; j < vs.size(); ++j)
                worst = std::max(worst, std::abs(vs[i].dot(vs[j]) - (i == j ? 1.0 : 0.0)));
        EXPECT_LE(worst, 2 * std::max(tail, kTol)) << q;
    }
}

TEST(Kernel, ChecksPass) {
    for (double q : {0.0, 0.5, 0.7}) {
        const Space s = TruncationWindow(12, 4, 2).space();
        auto g = delta_q_generators(q, TruncationWindow(12, 4, 2));
        const auto rep = kernel_check(q, g.Da, interior_labels(q, s, kTol, 2, 30), kTol);
        for (const auto& c : rep) EXPECT_TRUE(c.passed()) << c.name << " q=" << q << " " << c.residual;
    }
}

TEST(Kernel, RatioMatchesRecursion) {
    const Space s = TruncationWindow(12, 4, 2).space();
    const FVector f = f_vector(0.5, {2, 0, 0, 1}, s, 1e-12);
    for (std::size_t k = 0; k + 1 < f.coeff.size(); ++k)
        EXPECT_NEAR(f.coeff[k + 1] / f.coeff[k], f.recursion_factor(static_cast<int>(k)), 1e-12);
}

TEST(ActionLaws, DeltaSMovesFVectors) {
    const TruncationWindow w(14, 4, 2);
    for (double q : {0.0, 0.5}) {
        const auto c = build_comultiplication(q, w);
        for (const auto& chk : action_law_checks(c, 3, kTol)) EXPECT_TRUE(chk.passed()) << chk.name << " " << q;
        const Space& s = c.space();
        const FVector f = f_vector(q, {0, 0, 2, 0}, s, kTol), g = f_vector(q, {0, 1, 1, 0}, s, kTol);
        EXPECT_LE((c.DS.apply(f.to_vector(s)) - g.to_vector(s)).norm(), kTol);
    }
}

TEST(UTilde, ZeroIsRangeProjection) {
    const Space s = TruncationWindow(8, 4, 2).space();
    const Operator P = range_projection(s);
    EXPECT_EQ((u_tilde_basis(0.0, s, kTol).op - P).max_abs(), 0.0);
    EXPECT_LE((u_tilde_series(0.0, s, kTol).op - P).max_abs(), 1e-15);
}

TEST(UTilde, DualConstructionsAgree) {
    for (double q : {0.3, 0.5, 0.7}) {
        const Space s = TruncationWindow(14, 4, 2).space();
        const auto a = u_tilde_basis(q, s, kTol);
        const auto b = u_tilde_series(q, s, kTol);
        const InteriorSet in(s, 2);
        EXPECT_LE(interior_residual(a.op - b.op, in), a.tail + b.tail + 1e-13) << q;
    }
}

// The basis map is a partial isometry with initial space the f^0 span.
TEST(UTilde, PartialIsometry) {
    const double q = 0.5;
    const Space s = TruncationWindow(14, 4, 2).space();
    const auto u = u_tilde_basis(q, s, kTol);
    const InteriorSet in(s, 4);
    EXPECT_LE(interior_residual(u.op.adjoint() * u.op - range_projection(s), in), 2 * kTol);
}

TEST(UTilde, RejectsTinyWindow) {
    EXPECT_THROW(u_tilde_basis(0.9, TruncationWindow(4, 4, 2).space(), kTol), std::invalid_argument);
}

// Membership in D: the symbol of U~ vanishes.
TEST(UTilde, QuotientSymbolVanishes) {
    const double q = 0.5;
    const Space s = TruncationWindow(symbol_level_for(q, kTol) + 6, 4, 2).space();
    const auto sym = quotient_symbol(u_tilde_basis(q, s, kTol).op, 2);
    EXPECT_LE(sym.max_abs(), kTol);
    const TruncationWindow w(s.leg(0).levels, 4, 2);
    const Operator lead = synthesize(t2(Word::Q(0, 0), Word::Q(0, 0)) - t2(Word::Q(1, 1), Word::Q(1, 1)), w);
    EXPECT_LE(quotient_symbol(lead, 2).max_abs(), 1e-15);
}

TEST(Uq, ZeroIsIdentity) {
    const TruncationWindow w(10, 4, 2);
    const auto c = build_comultiplication(0.0, w);
    const auto b = u_q(0.0, c, kTol);
    const InteriorSet in(w.space(), 1);
    EXPECT_LE(interior_residual(b.U - Operator::identity(w.space()), in), 1e-15);
}

TEST(Uq, IntertwinesAtHalf) {
    const double q = 0.5;
    const TruncationWindow w = theorem_window(q, kTol);
    const auto c = build_comultiplication(q, w);
    const auto b = u_q(q, c, kTol);
    const Space& s = w.space();
    // U_q f^0 = f^q and U_q restricted to the Delta_0(S*S) range is U~
    for (const auto& l : interior_labels(q, s, kTol, s.leg(0).levels - 6, 12)) {
        const FVector f0 = f_vector(0.0, l, s, kTol), fq = f_vector(q, l, s, kTol);
        EXPECT_LE((b.U.apply(f0.to_vector(s)) - fq.to_vector(s)).norm(), fq.defect + 1e-12);
    }
    const InteriorSet in(s, s.leg(0).levels - 4);
    EXPECT_LE(interior_residual(b.U * range_projection(s) - b.u_tilde, in), kTol);
    IntertwiningOptions o;
    o.samples = 20;
    const auto rep = verify_intertwining(c, b, {"S", "T", "S*", "T*", "ST", "TS*", "S*S"}, o);
    for (const auto& chk : rep) {
        EXPECT_TRUE(chk.passed()) << chk.name << " " << chk.residual << " / " << chk.budget;
        EXPECT_LE(chk.budget, 1e-6);
    }
}

TEST(Uq, TrivialResidualAtZero) {
    const TruncationWindow w(10, 4, 2);
    const auto c = build_comultiplication(0.0, w);
    const auto b = u_q(0.0, c, kTol);
    IntertwiningOptions o;
    o.samples = 5;
    for (const auto& chk : verify_intertwining(c, b, {"T", "S"}, o)) EXPECT_LE(chk.residual, 1e-14) << chk.name;
}

TEST(Letters, Parse) {
    EXPECT_EQ(parse_letters("TS*").size(), 2u);
    EXPECT_EQ(parse_letters("S*S")[0], Letter::Sstar);
    EXPECT_THROW(parse_letters("X"), std::invalid_argument);
    EXPECT_THROW(parse_letters(""), std::invalid_argument);
}
