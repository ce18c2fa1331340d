#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "suq2/algebra/words.hpp"
#include "suq2/core/window.hpp"

namespace suq2 {

// A representation of A on one tensor leg.
//   Rho:   the faithful representation on l2(N x Z) (windings periodic), or
//          rho_t on l2(N) when windings == 1 and s_phase == t.
//   Omega: the character omega_t on C (one level, one winding).
struct LegRep {
    enum class Kind { Rho, Omega };
    Kind kind = Kind::Rho;
    int levels = 1;
    int windings = 1;
    cplx phase = 1.0;

    LegShape shape() const { return {levels, windings}; }

    static LegRep rho(const TruncationWindow& w) { return {Kind::Rho, w.k_max, w.windings(), 1.0}; }
    static LegRep rho(int levels, int windings) { return {Kind::Rho, levels, windings, 1.0}; }
    static LegRep rho_t(cplx t, int levels) {
        check_unit(t);
        if (levels < 1) throw std::invalid_argument("rho_t: need at least one level");
        return {Kind::Rho, levels, 1, t};
    }
    static LegRep omega(cplx t) {
        check_unit(t);
        return {Kind::Omega, 1, 1, t};
    }

    static void check_unit(cplx t) {
        if (std::abs(std::abs(t) - 1.0) > 1e-12) throw std::invalid_argument("representation parameter must have |t| = 1");
    }

    // S^j amplitude on level 0 (j = 0 is S*S).
    cplx s_power(int j) const {
        if (j >= 0) return std::pow(phase, j);
        return std::pow(std::conj(phase), -j);
    }
};

inline Space space_of(const std::vector<LegRep>& legs) {
    std::vector<LegShape> s;
    for (const auto& l : legs) s.push_back(l.shape());
    return Space(s);
}

// Matrix action of one word on one leg, as (col level, row level, winding
// shift, amplitude) quadruples.
struct LegAction {
    int col;
    int row;
    int shift;
    cplx amp;
};

inline std::vector<LegAction> leg_action(const LegRep& r, const Word& w) {
    std::vector<LegAction> out;
    if (r.kind == LegRep::Kind::Omega) {
        if (w.quotient) out.push_back({0, 0, 0, std::pow(r.phase, w.m) * std::pow(std::conj(r.phase), w.n)});
        return out;
    }
    if (!w.quotient) {
        if (w.n < r.levels && w.m < r.levels) out.push_back({w.n, w.m, w.j, r.s_power(w.j)});
        return out;
    }
    for (int k = w.n; k < r.levels; ++k) {
        int row = k + w.m - w.n;
        if (row < r.levels) out.push_back({k, row, 0, 1.0});
    }
    return out;
}

// Irreducible character omega_t: T -> t, S -> 0.
struct Character {
    cplx t = 1.0;
    explicit Character(cplx t_) : t(t_) { LegRep::check_unit(t); }
    cplx operator()(const Word& w) const {
        if (!w.quotient) return 0.0;
        return std::pow(t, w.m) * std::pow(std::conj(t), w.n);
    }
    cplx T() const { return t; }
    cplx S() const { return 0.0; }
};

inline Character rep_omega(cplx t) { return Character(t); }

}  // namespace suq2
