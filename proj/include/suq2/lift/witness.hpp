#pragma once

#include <algorithm>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "suq2/comultiplication/delta0.hpp"
#include "suq2/comultiplication/delta_q.hpp"

namespace suq2 {

// Delta_0(S T*^n)(S x T) = delta_{n,0} S^2 x I = delta_{n,0} (S x T + S^2 T* x S*) Delta_0(S),
// entrywise on the interior of a two-leg window.
inline ResidualReport density_witness_checks(const TruncationWindow& w, int max_n = 2) {
    const TruncationWindow w2(w.k_max, w.m_max, 2);
    const InteriorSet in(w2.space(), 3);
    const auto t2 = [](const Word& a, const Word& b) { return WordPolynomial::tensor_word({a, b}); };
    const Word S = Word::J(0, 1, 0), T = Word::Q(1, 0), S2 = Word::J(0, 2, 0), I = Word::identity();
    const Operator ST = synthesize(t2(S, T), w2);
    const Operator S2I = synthesize(t2(S2, I), w2);
    const auto entrywise = [&](const Operator& x) { return x.restrict_columns(in.classes()).max_abs(); };
    ResidualReport rep;
    for (int n = 0; n <= max_n; ++n) {
        Stopwatch sw;
        const Operator lhs = synthesize(delta0_word(Word::J(0, 1, n)), w2) * ST;
        const Operator want = n == 0 ? S2I : Operator::zero(w2.space());
        Check c = Check::gated("Delta_0(S T*^" + std::to_string(n) + ")(S x T)", "density witness, left factor",
                               entrywise(lhs - want), 1e-12);
        c.ms = sw.ms();
        rep.push_back(c.with("n", n));
    }
    Stopwatch sw;
    const Operator right = synthesize(t2(S, T) + t2(Word::J(0, 2, 1), adjoint(S)), w2) *
                           synthesize(delta0_word(S), w2);
    Check c = Check::gated("(S x T + S^2 T* x S*) Delta_0(S)", "density witness, right factor",
                           entrywise(right - S2I), 1e-12);
    c.ms = sw.ms();
    rep.push_back(c);
    return rep;
}

enum class WitnessPair { OmegaRho, RhoOmega, RhoRho };

inline const char* witness_pair_name(WitnessPair p) {
    switch (p) {
        case WitnessPair::OmegaRho: return "omega_t x rho_z";
        case WitnessPair::RhoOmega: return "rho_t x omega_z";
        case WitnessPair::RhoRho: return "rho_t x rho_z";
    }
    return "";
}

// Largest norm of d Delta_q(phi_q(b)) over d in {S* x I, I x S*, S* x S*}, all in D,
// evaluated in the given pair of irreducible representations.
inline double witness_norm(double q, WitnessPair p, cplx t, cplx z, int levels, const CalculusOptions& co = {}) {
    const LegRep l1 = p == WitnessPair::OmegaRho ? LegRep::omega(t) : LegRep::rho_t(t, levels);
    const LegRep l2 = p == WitnessPair::RhoOmega ? LegRep::omega(z) : LegRep::rho_t(z, levels);
    const auto c = build_comultiplication(q, l1, l2, co);
    const Word Ss = adjoint(Word::J(0, 1, 0)), I = Word::identity();
    double best = 0.0;
    for (const auto& d : {WordPolynomial::tensor_word({Ss, I}), WordPolynomial::tensor_word({I, Ss}),
                          WordPolynomial::tensor_word({Ss, Ss})}) {
        const Operator x = synthesize(d, {l1, l2}).compose(c.DS);
        best = std::max(best, norm_estimate(LazyOperator(x), 30).value);
    }
    return best;
}

inline std::vector<std::pair<cplx, cplx>> witness_points() {
    return {{1.0, 1.0}, {cplx(0.0, 1.0), -1.0}, {std::polar(1.0, 0.7), std::polar(1.0, 2.1)},
            {-1.0, std::polar(1.0, -1.3)}};
}

// None of the three representation pairs vanishes on D Delta_q(phi_q(b)).
inline ResidualReport nonvanishing_checks(double q, int levels = 12, double floor = 0.1,
                                          const CalculusOptions& co = {}) {
    ResidualReport rep;
    for (WitnessPair p : {WitnessPair::OmegaRho, WitnessPair::RhoOmega, WitnessPair::RhoRho}) {
        Stopwatch sw;
        double least = 1e300;
        for (const auto& [t, z] : witness_points()) least = std::min(least, witness_norm(q, p, t, z, levels, co));
        // gated as floor - norm <= 0
        Check c = Check::gated(std::string(witness_pair_name(p)) + " nonzero on D Delta_q(phi_q(b))",
                               "no irreducible pair vanishes on D Delta_q(phi_q(b))", std::max(0.0, floor - least),
                               0.0);
        c.ms = sw.ms();
        rep.push_back(c.with("q", q).with("min_norm", least).with("points", 4));
    }
    return rep;
}

}  // namespace suq2
