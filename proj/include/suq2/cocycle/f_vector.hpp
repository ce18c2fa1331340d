#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "suq2/cocycle/lambda.hpp"
#include "suq2/core/window.hpp"

namespace suq2 {

struct FLabel {
    int n = 0, i = 0, m = 0, j = 0;
};

// f^q_{n,i,m,j} = sum_k Lambda(n+m)^{-1} lambda(n+m,k) xi(n+k,i-k) x xi(m+k,j+k),
// truncated by the window and by the lambda tail.
struct FVector {
    double q = 0.0;
    FLabel label;
    std::vector<double> coeff;  // k = 0, 1, ...
    double defect = 0.0;        // bound on ||f - stored||
    double norm = 1.0;

    Vec to_vector(const Space& s) const {
        Vec v = Vec::Zero(s.dim());
        for (std::size_t k = 0; k < coeff.size(); ++k) {
            const int kk = static_cast<int>(k);
            v[basis_flat(s, {{label.n + kk, label.i - kk}, {label.m + kk, label.j + kk}})] += coeff[k];
        }
        return v;
    }
    // Ratio of consecutive coefficients predicted by the kernel recursion at
    // step k -> k+1 (labels shifted along the chain).
    double recursion_factor(int k) const {
        const int n = label.n + k, m = label.m + k;
        return std::pow(q, n + m + 1) / std::sqrt(1.0 - std::pow(q, 2 * (n + 1))) /
               std::sqrt(1.0 - std::pow(q, 2 * (m + 1)));
    }
};

inline FVector f_vector(double q, const FLabel& l, const Space& s, double tol) {
    if (l.n * l.m != 0) throw std::invalid_argument("f_vector: one of n, m must vanish");
    if (l.n < 0 || l.m < 0) throw std::invalid_argument("f_vector: negative level");
    if (s.order() != 2) throw std::invalid_argument("f_vector: needs a two-leg space");
    if (l.n >= s.leg(0).levels || l.m >= s.leg(1).levels)
        throw std::invalid_argument("f_vector: leading term outside window");
    const int N = l.n + l.m;
    const LambdaTable t = lambda_table(q, N, tol);
    double L2 = 0.0;
    for (double v : t.values) L2 += v * v;
    const double L = std::sqrt(L2);
    FVector f;
    f.q = q;
    f.label = l;
    double dropped = 0.0;
    for (int k = 0; k <= t.k_cut(); ++k) {
        const double c = t[k] / L;
        if (l.n + k < s.leg(0).levels && l.m + k < s.leg(1).levels)
            f.coeff.push_back(c);
        else
            dropped += c * c;
    }
    f.defect = std::sqrt(dropped) + t.tail / L;
    double nn = 0.0;
    for (double c : f.coeff) nn += c * c;
    f.norm = std::sqrt(nn);
    return f;
}

// Labels whose whole lambda chain fits below the top `margin` levels.
inline std::vector<FLabel> interior_labels(double q, const Space& s, double tol, int margin, int max_labels,
                                           int wind_span = 1) {
    std::vector<FLabel> out;
    const int K = std::min(s.leg(0).levels, s.leg(1).levels);
    for (int lvl = 0; lvl < K && static_cast<int>(out.size()) < max_labels; ++lvl)
        for (int side = 0; side < (lvl == 0 ? 1 : 2); ++side) {
            const int n = side == 0 ? lvl : 0, m = side == 0 ? 0 : lvl;
            const int kc = lambda_table(q, n + m, tol).k_cut();
            if (std::max(n, m) + kc >= K - margin) continue;
            for (int i = -wind_span; i <= wind_span; ++i)
                for (int j = -wind_span; j <= wind_span; ++j)
                    if (static_cast<int>(out.size()) < max_labels) out.push_back({n, i, m, j});
        }
    return out;
}

}  // namespace suq2
