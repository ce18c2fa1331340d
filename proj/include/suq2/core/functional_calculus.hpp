#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include "suq2/core/lazy.hpp"
#include "suq2/core/operator.hpp"

namespace suq2 {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ProjectionResult {
    Operator op;
    int power = 1;
    double bound = 0.0;
};

// x^p approximates the spectral projection of x at the isolated point 1 when
// the rest of the spectrum lies in [0, gap].  gap == 0 means x is already a
// projection and is returned as is.
inline ProjectionResult power_projection(const Operator& x, double gap, double tol, int power_budget = 4096,
                                         double drop = 1e-18) {
    if (!(gap < 1.0)) throw std::invalid_argument("power_projection: gap must be < 1");
    if (gap < 0.0) throw std::invalid_argument("power_projection: gap must be >= 0");
    if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("power_projection: tol must lie in (0,1)");
    if (gap == 0.0) return {x, 1, 0.0};
    int p = static_cast<int>(std::ceil(std::log(tol) / std::log(gap)));
    if (p < 1) p = 1;
    if (p > power_budget)
        throw BudgetExceeded("power_projection: power " + std::to_string(p) + " exceeds budget " +
                             std::to_string(power_budget));
    Operator result;
    bool have = false;
    Operator base = x;
    for (int e = p; e > 0; e >>= 1) {
        if (e & 1) {
            result = have ? result.compose(base, drop) : base;
            have = true;
        }
        if (e > 1) base = base.compose(base, drop);
    }
    return {result, p, std::pow(gap, p)};
}

// Coefficients of (1 - z)^{-1/2} = sum c_k z^k, c_k = binom(2k,k) / 4^k.
inline double inv_sqrt_coeff(int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c *= (2.0 * i - 1.0) / (2.0 * i);
    return c;
}

struct InvSqrtResult {
    Operator op;
    int terms = 1;
    double bound = 0.0;
};

// y^{-1/2} for y = I - Z with ||Z|| <= 1 - lower, by the binomial series in Z.
// Every coefficient is positive, so the tail beyond P is at most
// c_{P+1} r^{P+1} / (1 - r) with r = 1 - lower.
inline InvSqrtResult inv_sqrt(const Operator& y, double lower, double tol, int series_budget = 4096,
                              double drop = 1e-18) {
    if (!(lower > 0.0)) throw std::invalid_argument("inv_sqrt: lower bound must be positive");
    if (lower > 1.0) throw std::invalid_argument("inv_sqrt: lower bound must not exceed 1");
    const Space& s = y.space();
    const Operator id = Operator::identity(s);
    const double r = 1.0 - lower;
    if (r == 0.0) return {id, 1, 0.0};
    const Operator z = id - y;
    int P = 0;
    double c = 1.0, rp = 1.0;
    for (;;) {
        double cn = c * (2.0 * (P + 1) - 1.0) / (2.0 * (P + 1));
        double tail = cn * rp * r / (1.0 - r);
        if (tail <= tol) break;
        ++P;
        c = cn;
        rp *= r;
        if (P > series_budget)
            throw BudgetExceeded("inv_sqrt: series length exceeds budget " + std::to_string(series_budget));
    }
    double cnext = inv_sqrt_coeff(P + 1);
    double bound = cnext * std::pow(r, P + 1) / (1.0 - r);
    Operator acc = id.scaled(inv_sqrt_coeff(P));
    for (int k = P - 1; k >= 0; --k) acc = id.scaled(inv_sqrt_coeff(k)) + z.compose(acc, drop);
    return {acc, P + 1, bound};
}

struct NormEstimate {
    double value = 0.0;
    int iterations = 0;
};

inline Vec seeded_vector(Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Vec v(n);
    for (Index i = 0; i < n; ++i) v[i] = cplx(g(rng), g(rng));
    return v;
}

// Power iteration on P A* A P, P the projection onto `support` (all basis
// vectors when null).  The Rayleigh quotients increase towards ||A P||^2, so
// the returned value is a lower bound.
inline NormEstimate norm_estimate(const LazyOperator& op, int iters = 40, const InteriorSet* support = nullptr,
                                  std::uint64_t seed = 7) {
    Vec v = seeded_vector(op.space().dim(), seed);
    if (support) v = support->mask(v);
    double nv = v.norm();
    if (nv == 0.0) return {0.0, 0};
    v /= nv;
    double best = 0.0;
    int it = 0;
    for (; it < iters; ++it) {
        Vec av = op.apply(v);
        double val = av.norm();
        best = std::max(best, val);
        if (val == 0.0) break;
        Vec w = op.apply_adjoint(av);
        if (support) w = support->mask(w);
        double nw = w.norm();
        if (nw == 0.0) break;
        v = w / nw;
    }
    return {best, it};
}

}  // namespace suq2
