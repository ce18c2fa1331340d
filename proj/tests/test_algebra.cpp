#include <gtest/gtest.h>

#include <cmath>

#include "suq2/suq2.hpp"

using namespace suq2;

namespace {

const TruncationWindow kW(10, 6, 1);

Vec xi(int k, int m) { return basis_vector(kW.space(), {{k, m}}); }

double dist(const Operator& a, const Operator& b) { return (a - b).max_abs(); }

Operator power(const Operator& x, int e) {
    Operator r = Operator::identity(x.space());
    for (int i = 0; i < e; ++i) r = r * x;
    return r;
}

// S-block per the conventions: S^j, S*^|j|, or S*S for j = 0.
Operator s_block(int j) {
    const Operator S = gen_S(kW);
    if (j == 0) return S.adjoint() * S;
    return j > 0 ? power(S, j) : power(S.adjoint(), -j);
}

}  // namespace

TEST(Generators, TShiftsLevelUp) {
    EXPECT_LT((gen_T(kW).apply(xi(2, -1)) - xi(3, -1)).norm(), 1e-15);
}

TEST(Generators, SKillsPositiveLevels) {
    EXPECT_EQ(gen_S(kW).apply(xi(1, 0)).norm(), 0.0);
}

TEST(Generators, SShiftsWindingAtLevelZero) {
    const TruncationWindow w(10, 8, 1);
    Vec v = basis_vector(w.space(), {{0, 5}});
    EXPECT_LT((gen_S(w).apply(v) - basis_vector(w.space(), {{0, 6}})).norm(), 1e-15);
}

TEST(WordOp, ZeroWordIsLevelZeroProjection) {
    const Operator P = word_op(Word::J(0, 0, 0), kW);
    EXPECT_LT((P.apply(xi(0, 3)) - xi(0, 3)).norm(), 1e-15);
    EXPECT_EQ(P.apply(xi(1, 3)).norm(), 0.0);
    EXPECT_EQ(dist(P, P * P), 0.0);
}

TEST(WordOp, ExampleMovesLevelZeroOnly) {
    const Operator W = word_op(Word::J(2, 1, 0), kW);
    EXPECT_LT((W.apply(xi(0, -2)) - xi(2, -1)).norm(), 1e-15);
    for (int k = 1; k < kW.k_max; ++k) EXPECT_EQ(W.apply(xi(k, 0)).norm(), 0.0);
}

TEST(WordOp, QuotientIdentity) {
    EXPECT_EQ(dist(word_op(Word::Q(0, 0), kW), Operator::identity(kW.space())), 0.0);
}

TEST(WordOp, DiagonalWordShiftsWinding) {
    for (int k = 0; k < 5; ++k) {
        const Operator W = word_op(Word::J(k, 1, k), kW);
        EXPECT_LT((W.apply(xi(k, 2)) - xi(k, 3)).norm(), 1e-15);
    }
}

TEST(WordOp, QuotientWordShiftsByDifference) {
    const Operator W = word_op(Word::Q(1, 3), kW);
    EXPECT_EQ(W.apply(xi(2, 0)).norm(), 0.0);
    EXPECT_LT((W.apply(xi(5, 0)) - xi(3, 0)).norm(), 1e-15);
}

// Property: word_op(m,j,n) = T^m S-block(j) T*^n, entry for entry.
TEST(WordOp, EqualsGeneratorComposition) {
    const Operator T = gen_T(kW), Ts = T.adjoint();
    for (int m = 0; m <= 3; ++m)
        for (int j = -3; j <= 3; ++j)
            for (int n = 0; n <= 3; ++n) {
                const Operator want = power(T, m) * s_block(j) * power(Ts, n);
                EXPECT_EQ(dist(word_op(Word::J(m, j, n), kW), want), 0.0) << m << " " << j << " " << n;
            }
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b) EXPECT_EQ(dist(word_op(Word::Q(a, b), kW), power(T, a) * power(Ts, b)), 0.0);
}

// Normal ordering must not change the operator.
TEST(Words, ProductsMatchOperatorProducts) {
    std::vector<Word> ws = {Word::Q(2, 1), Word::Q(1, 3), Word::J(1, 2, 0), Word::J(0, -1, 2), Word::J(2, 0, 2),
                            Word::Q(0, 2)};
    for (const auto& x : ws)
        for (const auto& y : ws) {
            WordPolynomial p = WordPolynomial::single(x) * WordPolynomial::single(y);
            EXPECT_LT(dist(synthesize(p, kW).restrict_columns(InteriorSet(kW.space(), 4).classes()),
                           (word_op(x, kW) * word_op(y, kW)).restrict_columns(InteriorSet(kW.space(), 4).classes())),
                      1e-14)
                << x.str() << " * " << y.str();
        }
}

TEST(Words, AdjointMatchesOperatorAdjoint) {
    for (const auto& w : {Word::J(2, -1, 1), Word::J(0, 3, 2), Word::Q(2, 1)})
        EXPECT_EQ(dist(word_op(adjoint(w), kW), word_op(w, kW).adjoint()), 0.0);
}

TEST(Phi, AtZeroEqualsGenerators) {
    EXPECT_EQ(dist(phi_a(0.0, kW), gen_T(kW).adjoint()), 0.0);
    EXPECT_EQ(dist(phi_b(0.0, kW), gen_S(kW)), 0.0);
}

TEST(Phi, ALowersLevelWithSqrtAmplitude) {
    const Vec out = phi_a(0.5, kW).apply(xi(1, 2));
    EXPECT_NEAR(out.dot(xi(0, 2)).real(), 0.8660254037844386, 1e-15);
    EXPECT_NEAR(out.norm(), std::sqrt(0.75), 1e-15);
}

TEST(Phi, AKillsLevelZero) {
    for (double q : {0.0, 0.3, 0.9}) EXPECT_EQ(phi_a(q, kW).apply(xi(0, 1)).norm(), 0.0);
}

// Property: phi_b has amplitude q^k on (k,m) -> (k,m+1) and nothing else.
TEST(Phi, BEntriesAreExactPowers) {
    const double q = 0.7;
    const Operator b = phi_b(q, kW);
    const Space& s = kW.space();
    std::size_t count = 0;
    for (int c = 0; c < s.classes(); ++c)
        for (auto p = b.col_begin(c); p != b.col_end(c); ++p) {
            ++count;
            EXPECT_EQ(p->row, c);
            EXPECT_EQ(s.signed_winding(0, p->shift), 1);
            EXPECT_EQ(p->val, cplx(std::pow(q, c)));
        }
    EXPECT_EQ(count, static_cast<std::size_t>(kW.k_max));
}

TEST(Phi, RejectsQOutsideRange) {
    EXPECT_THROW(phi_a(1.0, kW), std::invalid_argument);
    EXPECT_THROW(phi_b(-0.1, kW), std::invalid_argument);
}

TEST(PhiSeries, LeadingCoefficients) {
    const double q = 0.5;
    EXPECT_NEAR(phi_a_coeff(q, 0), std::sqrt(1 - q * q), 1e-15);
    // normal ordering folds every T^n T*^{n+1} onto T*, so the T* total telescopes
    auto a = phi_a_series_words(q, 1e-10);
    EXPECT_NEAR(a.words.coeff({Word::Q(0, 1)}).real(), 1.0 - a.tail, 1e-14);
    auto b = phi_b_series_words(q, 1e-10);
    EXPECT_EQ(b.words.coeff({Word::J(0, 1, 0)}), cplx(1.0));
}

TEST(PhiSeries, AgreesWithDirectMatrices) {
    const double tol = 1e-10;
    const InteriorSet in(kW.space(), 1);
    for (double q : {0.3, 0.5, 0.9}) {
        auto a = phi_a_series(q, kW, tol);
        auto b = phi_b_series(q, kW, tol);
        EXPECT_LE(interior_residual(a.op - phi_a(q, kW), in), std::max(2 * tol, a.tail)) << q;
        EXPECT_LE(interior_residual(b.op - phi_b(q, kW), in), std::max(2 * tol, b.tail)) << q;
    }
}

TEST(PhiSeries, RejectsZero) {
    EXPECT_THROW(phi_a_series(0.0, kW, 1e-8), std::invalid_argument);
    EXPECT_THROW(phi_b_series(0.0, kW, 1e-8), std::invalid_argument);
}

TEST(Relations, AlgebraA) {
    const TruncationWindow w(10, 10, 1);
    for (const auto& c : check_A_relations(w)) {
        EXPECT_TRUE(c.passed()) << c.name << " " << c.residual;
        EXPECT_LE(c.residual, 1e-12);
    }
}

TEST(Relations, SUq2AcrossGrid) {
    const TruncationWindow w(10, 10, 1);
    for (double q : {0.0, 0.3, 0.5, 0.7, 0.9})
        for (const auto& c : check_suq2_relations(q, w)) EXPECT_LE(c.residual, 1e-10) << c.name << " q=" << q;
}

// At q = 0 the first relation is literally TT* + S*S = I.
TEST(Relations, ZeroReducesToA) {
    const Operator a = phi_a(0.0, kW), b = phi_b(0.0, kW), T = gen_T(kW), S = gen_S(kW);
    EXPECT_EQ(dist(a.adjoint() * a + b.adjoint() * b, T * T.adjoint() + S.adjoint() * S), 0.0);
}

TEST(Counit, WordValues) {
    EXPECT_EQ(counit_char(Word::Q(3, 1)), cplx(1.0));
    EXPECT_EQ(counit_char(Word::J(0, 0, 0)), cplx(0.0));
    EXPECT_EQ(counit_char(Word::J(2, -3, 1)), cplx(0.0));
}

// Property: multiplicative on quotient words, zero on anything with an S factor.
TEST(Counit, Multiplicative) {
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    WordPolynomial p = WordPolynomial::single(Word::Q(a, b)) * WordPolynomial::single(Word::Q(c, d));
                    cplx e = 0.0;
                    for (const auto& [k, v] : p.terms()) e += v * counit_char(k[0]);
                    EXPECT_NEAR(std::abs(e - counit_char(Word::Q(a, b)) * counit_char(Word::Q(c, d))), 0.0, 1e-15);
                }
    WordPolynomial p = WordPolynomial::single(Word::Q(2, 0)) * WordPolynomial::single(Word::J(1, 1, 0));
    for (const auto& [k, v] : p.terms()) EXPECT_EQ(counit_char(k[0]), cplx(0.0));
}

TEST(Representations, OmegaMatchesCounitAtOne) {
    const Character w = rep_omega(1.0);
    EXPECT_EQ(w.T(), cplx(1.0));
    EXPECT_EQ(w.S(), cplx(0.0));
    EXPECT_EQ(w(Word::Q(2, 1)), counit_char(Word::Q(2, 1)));
}

TEST(Representations, RhoT) {
    const cplx i(0.0, 1.0);
    const LegRep r = LegRep::rho_t(i, 6);
    const Space s = space_of({r});
    const Vec e0 = basis_vector(s, {{0, 0}});
    EXPECT_LT((gen_T(r).apply(e0) - basis_vector(s, {{1, 0}})).norm(), 1e-15);
    EXPECT_LT((gen_S(r).apply(e0) - i * e0).norm(), 1e-15);
}

TEST(Representations, RejectNonUnitPhase) {
    EXPECT_THROW(rep_omega(cplx(0.5, 0.0)), std::invalid_argument);
    EXPECT_THROW(LegRep::rho_t(cplx(1.0, 1.0), 5), std::invalid_argument);
}

// Property: phi_a depends continuously on q (sampled, |q - q'| <= 1e-3).
TEST(Phi, ContinuousInQ) {
    const InteriorSet in(kW.space(), 1);
    for (double q : {0.1, 0.5, 0.8, 0.95}) {
        const double r = interior_residual(phi_a(q, kW) - phi_a(q + 1e-3, kW), in);
        EXPECT_LE(r, 0.1) << q;
    }
}
