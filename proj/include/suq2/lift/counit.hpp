#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "suq2/cocycle/intertwiner.hpp"
#include "suq2/comultiplication/delta0.hpp"
#include "suq2/comultiplication/delta_q.hpp"
#include "suq2/lift/extraction.hpp"

namespace suq2 {

struct CounitOptions {
    int max_power = 2;  // m, n <= max_power
    int max_shift = 2;  // |i| <= max_shift
    int radius = 6;
};

// Extraction region for U_q-carrying matrices: half the window, and never
// less than the quotient probe needs.
inline int counit_region(const Space& s, int radius) {
    const int K = s.leg(0).levels;
    return std::min(K, std::max(2 * radius + 4, K / 2));
}

// (eps x id) and (id x eps) of U_q Delta_0(T^m S^i T*^n) against rho(T^m S^i T*^n).
// One row per side, worst word reported.
inline ResidualReport verify_counit(const IntertwinerBundle& b, const CounitOptions& o = {}) {
    const Space& s = b.space();
    const int K = s.leg(0).levels;
    const int L = counit_region(s, o.radius);
    const int R = std::min(o.radius, (L - 2) / 2);
    ExtractionOptions eo;
    eo.margin = K - L;
    eo.radius = R;
    eo.tol = 1e300;  // acceptance is decided by the budget below, not by the decoder
    const LegRep leg = LegRep::rho(K, s.leg(0).windings);
    const Space s1 = space_of({leg});
    const InteriorSet cmp(s1, K - L + o.max_power);
    const std::vector<LegRep> legs = {leg, leg};
    const double eU = u_q_error(b);
    ResidualReport rep;
    for (int side : {0, 1}) {
        Stopwatch sw;
        double worst = 0.0, worst_budget = 0.0, gap = -1e300;
        bool ok = true;
        std::string at;
        for (int m = 0; m <= o.max_power; ++m)
            for (int i = -o.max_shift; i <= o.max_shift; ++i)
                for (int n = 0; n <= o.max_power; ++n) {
                    const Word w = Word::J(m, i, n);
                    const Operator x = b.U.compose(synthesize(delta0_word(w), legs));
                    const WordCoefficients c = decompose(x, {LegKind::A, LegKind::A}, eo);
                    const Operator e = eps_tensor_id(c, side, leg);
                    const double r = interior_residual(e - word_op(w, leg), cmp, 20);
                    const double budget =
                        static_cast<double>(2 * R + 1) * (2.0 * eU + c.spread) + c.residual + 1e-12;
                    ok = ok && r <= budget;
                    if (r - budget > gap) {
                        gap = r - budget;
                        worst = r;
                        worst_budget = budget;
                        at = w.str();
                    }
                }
        Check c = Check::gated(side == 0 ? "(eps x id)(Omega Delta_0(x)) = x" : "(id x eps)(Omega Delta_0(x)) = x",
                               side == 0 ? "(eps x id)(Omega_q) = I" : "(id x eps)(Omega_q) = I", worst,
                               worst_budget);
        if (!ok) c.verdict = Verdict::Fail;
        c.ms = sw.ms();
        c.anchor += ", worst at " + at;
        rep.push_back(c.with("q", b.q).with("k_max", K).with("region", L));
    }
    return rep;
}

// (omega_1 x rho) Delta_q(x) = rho(x) and (rho x omega_1) Delta_q(x) = rho(x)
// for x in {S, T}.
inline ResidualReport mixed_counit_checks(double q, const TruncationWindow& w, double tol,
                                          const CalculusOptions& co = {}) {
    const TruncationWindow w1(w.k_max, w.m_max, 1);
    const Operator S = gen_S(w1), T = gen_T(w1);
    const InteriorSet in(w1.space(), 2);
    ResidualReport rep;
    for (Side side : {Side::Left, Side::Right}) {
        Stopwatch sw;
        CalculusOptions o = co;
        o.tol = tol;
        const auto c = mixed_delta_q(q, side, 1.0, w1, o);
        const std::string s = side == Side::Left ? "(omega_1 x rho)" : "(rho x omega_1)";
        const double ms = sw.ms();
        for (const auto& [name, got, want] :
             {std::make_tuple(std::string("S"), squeeze_trivial_legs(c.DS), S),
              std::make_tuple(std::string("T"), squeeze_trivial_legs(c.DT), T)}) {
            Check k = Check::gated(s + " Delta_q(" + name + ") = rho(" + name + ")",
                                   "(eps x id) Delta_q = id = (id x eps) Delta_q",
                                   interior_residual(got - want, in), 3.0 * tol);
            k.ms = ms;
            rep.push_back(k.with("q", q));
        }
    }
    return rep;
}

}  // namespace suq2
