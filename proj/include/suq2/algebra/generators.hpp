#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "suq2/algebra/representations.hpp"
#include "suq2/algebra/words.hpp"
#include "suq2/core/operator.hpp"

namespace suq2 {

inline void check_q(double q) {
    if (!(q >= 0.0 && q < 1.0)) throw std::invalid_argument("q must lie in [0,1)");
}

// Builds the operator of a word polynomial in the given leg representations.
inline Operator synthesize(const WordPolynomial& p, const std::vector<LegRep>& legs, double drop = 0.0) {
    if (static_cast<int>(legs.size()) != p.legs()) throw std::invalid_argument("synthesize: leg count mismatch");
    const Space s = space_of(legs);
    Operator::Builder b(s);
    const int L = p.legs();
    std::vector<std::vector<LegAction>> acts(static_cast<std::size_t>(L));
    int ck[3], rk[3], sm[3];
    for (const auto& [key, c] : p.terms()) {
        bool empty = false;
        for (int i = 0; i < L; ++i) {
            acts[static_cast<std::size_t>(i)] = leg_action(legs[static_cast<std::size_t>(i)], key[static_cast<std::size_t>(i)]);
            empty = empty || acts[static_cast<std::size_t>(i)].empty();
        }
        if (empty) continue;
        std::size_t n0 = acts[0].size(), n1 = L > 1 ? acts[1].size() : 1, n2 = L > 2 ? acts[2].size() : 1;
        for (std::size_t i0 = 0; i0 < n0; ++i0)
            for (std::size_t i1 = 0; i1 < n1; ++i1)
                for (std::size_t i2 = 0; i2 < n2; ++i2) {
                    const std::size_t ix[3] = {i0, i1, i2};
                    cplx amp = c;
                    for (int l = 0; l < L; ++l) {
                        const LegAction& a = acts[static_cast<std::size_t>(l)][ix[l]];
                        ck[l] = a.col;
                        rk[l] = a.row;
                        sm[l] = a.shift;
                        amp *= a.amp;
                    }
                    b.add_levels(ck, rk, sm, amp);
                }
    }
    return b.build(drop);
}

inline Operator synthesize(const WordPolynomial& p, const TruncationWindow& w) {
    return synthesize(p, std::vector<LegRep>(static_cast<std::size_t>(p.legs()), LegRep::rho(w)));
}

inline Operator word_op(const Word& w, const LegRep& leg) { return synthesize(WordPolynomial::single(w), {leg}); }
inline Operator word_op(const Word& w, const TruncationWindow& win) {
    return word_op(w, LegRep::rho(win.k_max, win.windings()));
}

// rho(T): xi(k,m) -> xi(k+1,m), built entry by entry.
inline Operator gen_T(const LegRep& leg) {
    Space s = space_of({leg});
    Operator::Builder b(s);
    if (leg.kind == LegRep::Kind::Omega) {
        b.add(0, 0, 0, leg.phase);
        return b.build();
    }
    for (int k = 0; k + 1 < leg.levels; ++k) b.add(k, k + 1, 0, 1.0);
    return b.build();
}

// rho(S): xi(0,m) -> xi(0,m+1), every other level is killed.
inline Operator gen_S(const LegRep& leg) {
    Space s = space_of({leg});
    Operator::Builder b(s);
    if (leg.kind == LegRep::Kind::Omega) return b.build();
    int one[1] = {1 % leg.windings};
    b.add(0, 0, s.wind_of(one), leg.phase);
    return b.build();
}

inline Operator gen_T(const TruncationWindow& w) { return gen_T(LegRep::rho(w.k_max, w.windings())); }
inline Operator gen_S(const TruncationWindow& w) { return gen_S(LegRep::rho(w.k_max, w.windings())); }

// Direct matrices of the images of the SU_q(2) generators:
//   a: xi(k) -> sqrt(1 - q^{2k}) xi(k-1),  b: xi(k,m) -> q^k xi(k,m+1).
inline Operator phi_a(double q, const LegRep& leg) {
    check_q(q);
    Space s = space_of({leg});
    Operator::Builder b(s);
    if (leg.kind == LegRep::Kind::Omega) {
        b.add(0, 0, 0, std::conj(leg.phase));
        return b.build();
    }
    for (int k = 1; k < leg.levels; ++k) b.add(k, k - 1, 0, std::sqrt(1.0 - std::pow(q, 2 * k)));
    return b.build();
}

inline Operator phi_b(double q, const LegRep& leg) {
    check_q(q);
    Space s = space_of({leg});
    Operator::Builder b(s);
    if (leg.kind == LegRep::Kind::Omega) return b.build();
    int one[1] = {1 % leg.windings};
    const int sh = s.wind_of(one);
    for (int k = 0; k < leg.levels; ++k) b.add(k, k, sh, leg.phase * std::pow(q, k));
    return b.build();
}

inline Operator phi_a(double q, const TruncationWindow& w) { return phi_a(q, LegRep::rho(w.k_max, w.windings())); }
inline Operator phi_b(double q, const TruncationWindow& w) { return phi_b(q, LegRep::rho(w.k_max, w.windings())); }

// n-th coefficient of the series for phi_q(a) in T^n T*^{n+1}.
inline double phi_a_coeff(double q, int n) {
    return std::sqrt(1.0 - std::pow(q, 2 * (n + 1))) - std::sqrt(1.0 - std::pow(q, 2 * n));
}

struct SeriesResult {
    WordPolynomial words;
    int terms = 0;
    double tail = 0.0;
};

inline void check_series_q(double q) {
    check_q(q);
    if (q == 0.0) throw std::invalid_argument("series form requires q in (0,1)");
}

// The telescoping tail sum_{n>N} c_n equals 1 - sqrt(1 - q^{2(N+1)}).
inline SeriesResult phi_a_series_words(double q, double tol, int max_terms = 100000) {
    check_series_q(q);
    SeriesResult r{WordPolynomial(1), 0, 0.0};
    for (int n = 0; n < max_terms; ++n) {
        r.words.add({Word::Q(n, n + 1)}, phi_a_coeff(q, n));
        r.terms = n + 1;
        r.tail = 1.0 - std::sqrt(1.0 - std::pow(q, 2 * (n + 1)));
        if (r.tail <= tol) break;
    }
    return r;
}

// Tail sum_{n>N} q^n = q^{N+1} / (1 - q).
inline SeriesResult phi_b_series_words(double q, double tol, int max_terms = 100000) {
    check_series_q(q);
    SeriesResult r{WordPolynomial(1), 0, 0.0};
    for (int n = 0; n < max_terms; ++n) {
        r.words.add({Word::J(n, 1, n)}, std::pow(q, n));
        r.terms = n + 1;
        r.tail = std::pow(q, n + 1) / (1.0 - q);
        if (r.tail <= tol) break;
    }
    return r;
}

struct SeriesOperator {
    Operator op;
    int terms = 0;
    double tail = 0.0;
};

inline SeriesOperator phi_a_series(double q, const TruncationWindow& w, double tol) {
    auto s = phi_a_series_words(q, tol);
    return {synthesize(s.words, w), s.terms, s.tail};
}
inline SeriesOperator phi_b_series(double q, const TruncationWindow& w, double tol) {
    auto s = phi_b_series_words(q, tol);
    return {synthesize(s.words, w), s.terms, s.tail};
}

}  // namespace suq2
