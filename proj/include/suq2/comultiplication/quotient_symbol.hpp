#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "suq2/core/operator.hpp"

namespace suq2 {

// Image under pi x pi (pi: A -> A/J = C(T)) read off Toeplitz diagonals at
// large levels.  Coefficient (d1, d2) multiplies z1^{d1} z2^{d2}; T has
// symbol z.
struct QuotientSymbol {
    std::map<std::pair<int, int>, cplx> coeff;
    double spread = 0.0;       // variation of each coefficient across probe columns
    double off_diagonal = 0.0;  // largest winding-shifting entry near the probe
    int probe_level = 0;
    int radius = 0;

    cplx at(int d1, int d2) const {
        auto it = coeff.find({d1, d2});
        return it == coeff.end() ? cplx(0.0) : it->second;
    }
    // Largest coefficient magnitude other than the listed degree.
    double max_except(int d1, int d2) const {
        double m = 0.0;
        for (const auto& [k, c] : coeff)
            if (k != std::make_pair(d1, d2)) m = std::max(m, std::abs(c));
        return m;
    }
    double max_abs() const {
        double m = 0.0;
        for (const auto& [k, c] : coeff) m = std::max(m, std::abs(c));
        return m;
    }
};

// Probe columns sit at the two highest levels L with L + radius still inside
// the window, in each leg; entries are averaged over those four columns.
inline QuotientSymbol quotient_symbol(const Operator& x, int radius) {
    const Space& s = x.space();
    if (s.order() != 2) throw std::invalid_argument("quotient_symbol: expects a two-leg operator");
    const int K1 = s.leg(0).levels, K2 = s.leg(1).levels;
    const int top1 = K1 - 1 - radius, top2 = K2 - 1 - radius;
    if (radius < 0 || top1 - 1 < radius || top2 - 1 < radius)
        throw std::invalid_argument("quotient_symbol: window too small for the probe radius");
    QuotientSymbol out;
    out.radius = radius;
    out.probe_level = std::min(top1, top2) - 1;
    std::map<std::pair<int, int>, std::vector<cplx>> samples;
    int probes = 0;
    for (int l1 : {top1, top1 - 1})
        for (int l2 : {top2, top2 - 1}) {
            int ck[2] = {l1, l2};
            const int c = s.class_of(ck);
            ++probes;
            for (auto p = x.col_begin(c); p != x.col_end(c); ++p) {
                int rk[2];
                s.levels_of(p->row, rk);
                const int d1 = rk[0] - l1, d2 = rk[1] - l2;
                if (std::abs(d1) > radius || std::abs(d2) > radius) continue;
                if (p->shift != 0) {
                    out.off_diagonal = std::max(out.off_diagonal, std::abs(p->val));
                    continue;
                }
                auto& v = samples[{d1, d2}];
                v.resize(4, 0.0);
                v[static_cast<std::size_t>(probes - 1)] = p->val;
            }
        }
    for (auto& [k, v] : samples) {
        cplx mean = 0.0;
        for (auto z : v) mean += z;
        mean /= 4.0;
        double sp = 0.0;
        for (auto z : v) sp = std::max(sp, std::abs(z - mean));
        out.spread = std::max(out.spread, sp);
        out.coeff[k] = mean;
    }
    return out;
}

// Level at which q^(2L) drops below tol; symbol probes need columns this high.
inline int symbol_level_for(double q, double tol) {
    if (q == 0.0) return 2;
    return static_cast<int>(std::ceil(std::log(tol) / (2.0 * std::log(q)))) + 1;
}

}  // namespace suq2
