#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "suq2/cocycle/intertwiner.hpp"
#include "suq2/comultiplication/continuity.hpp"
#include "suq2/comultiplication/quotient_symbol.hpp"

namespace suq2 {

// Drops every level at or above `levels` in each leg; windings are kept.
inline Operator cut_levels(const Operator& x, int levels) {
    const Space& s = x.space();
    std::vector<LegShape> legs = s.legs();
    for (auto& l : legs) l.levels = std::min(l.levels, levels);
    const Space t(legs);
    Operator::Builder b(t);
    int ck[3], rk[3];
    for (int c = 0; c < s.classes(); ++c) {
        s.levels_of(c, ck);
        const int tc = t.class_of(ck);
        if (tc < 0) continue;
        for (auto p = x.col_begin(c); p != x.col_end(c); ++p) {
            s.levels_of(p->row, rk);
            const int tr = t.class_of(rk);
            if (tr >= 0) b.add(tc, tr, p->shift, p->val);
        }
    }
    return b.build();
}

// Probe level for the quotient symbol of Ad(U_q)(T x T): U_q - I is of order
// q^L at level L.
inline int stability_probe_level(double q, double tol) {
    if (q == 0.0) return 2;
    return static_cast<int>(std::ceil(std::log(0.1 * tol) / std::log(q))) + 1;
}

struct StabilityOptions {
    int radius = 2;
    int m_max = 4;
};

// Ad(Omega_q) fixes the T x T symbol: the image of U_q (T x T) U_q* in
// C(T) x C(T) is z1 z2.
inline ResidualReport symbol_stability_check(double q, double tol, const StabilityOptions& o = {},
                                             const CalculusOptions& co = {}) {
    Stopwatch sw;
    const int L = stability_probe_level(q, tol) + o.radius + 2;
    const TruncationWindow w = theorem_window(q, tol, L, o.m_max);
    CalculusOptions c2 = co;
    c2.tol = tol;
    const auto c = build_comultiplication(q, w, c2);
    const auto b = u_q(q, c, tol, c2.drop, c2.series_budget);
    const Operator TT = synthesize(WordPolynomial::tensor_word({Word::Q(1, 0), Word::Q(1, 0)}), w);
    const Operator x = cut_levels(b.U.compose(TT, c2.drop).compose(b.U.adjoint(), c2.drop), L);
    const QuotientSymbol sym = quotient_symbol(x, o.radius);
    const double eU = u_q_error(b);
    ResidualReport rep;
    Check lead = Check::gated("symbol of Omega (T x T) Omega* at (1,1)", "Ad(Omega_q) maps T x T into T x T + D",
                              std::abs(sym.at(1, 1) - 1.0), tol + 2.0 * eU);
    Check rest = Check::gated("symbol of Omega (T x T) Omega* off (1,1)", "Ad(Omega_q) maps T x T into T x T + D",
                              std::max({sym.max_except(1, 1), sym.spread, sym.off_diagonal}), tol + 2.0 * eU);
    for (Check* k : {&lead, &rest}) {
        k->ms = sw.ms();
        rep.push_back(k->with("q", q).with("probe_level", sym.probe_level).with("k_max", w.k_max));
    }
    return rep;
}

struct UContinuityOptions {
    int k_max = 30;
    int m_max = 4;
    int interior_levels = 10;
    std::vector<double> grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
};

inline const std::vector<std::pair<std::string, WordPolynomial>>& continuity_words() {
    static const std::vector<std::pair<std::string, WordPolynomial>> w = {
        {"S*S x S*S", WordPolynomial::tensor_word({Word::J(0, 0, 0), Word::J(0, 0, 0)})},
        {"T x S", WordPolynomial::tensor_word({Word::Q(1, 0), Word::J(0, 1, 0)})},
    };
    return w;
}

// q -> U_q (rho x rho)(w) on a fixed window: increments on a grid and on its
// refinement, strict topology sampled through the J x J word w.
inline ResidualReport u_continuity_checks(double tol, const UContinuityOptions& o = {}, const CalculusOptions& co = {}) {
    const TruncationWindow w(o.k_max, o.m_max, 2);
    std::map<double, Operator> cache;
    const auto U = [&](double q) -> const Operator& {
        auto it = cache.find(q);
        if (it != cache.end()) return it->second;
        CalculusOptions c2 = co;
        c2.tol = tol;
        const auto c = build_comultiplication(q, w, c2);
        return cache.emplace(q, u_q(q, c, tol, c2.drop, c2.series_budget).U).first->second;
    };
    ResidualReport rep;
    for (const auto& [name, word] : continuity_words()) {
        Stopwatch sw;
        const Operator x = synthesize(word, w);
        auto r = continuity_probe(
            "strict continuity of Omega_q (" + name + ")", [&](double q) { return U(q).compose(x); }, o.grid,
            o.k_max - o.interior_levels);
        r.check.anchor = "q -> Omega_q is strictly continuous";
        r.check.ms = sw.ms();
        rep.push_back(r.check.with("k_max", o.k_max));
    }
    return rep;
}

}  // namespace suq2
