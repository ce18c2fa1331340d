#pragma once

#include <cmath>
#include <vector>

#include "suq2/algebra/generators.hpp"

namespace suq2 {

// Right-hand side of the bound lambda_q(n,k) <= (q^{n+k} / (1 - q^2))^k.
inline double lambda_bound(double q, int n, int k) {
    if (k == 0) return 1.0;
    if (q == 0.0) return 0.0;
    const double lg = k * ((n + k) * std::log(q) - std::log1p(-q * q));
    return std::exp(lg);
}

// sum_{k > kc} lambda_bound(q, n, k); the terms decay like q^{k^2}.
inline double lambda_bound_tail(double q, int n, int kc) {
    if (q == 0.0) return 0.0;
    double s = 0.0;
    for (int k = kc + 1;; ++k) {
        const double t = lambda_bound(q, n, k);
        s += t;
        const bool decaying = std::pow(q, n + k) < 0.5 * (1.0 - q * q);
        if (decaying && (t == 0.0 || t < 1e-18 * s || t < 1e-300)) break;
        if (k > kc + 100000) break;
    }
    return s;
}

struct LambdaTable {
    double q = 0.0;
    int n = 0;
    std::vector<double> values;  // k = 0 .. k_cut
    double tail = 0.0;            // bound on sum of the omitted values

    int k_cut() const { return static_cast<int>(values.size()) - 1; }
    double operator[](int k) const { return k <= k_cut() ? values[static_cast<std::size_t>(k)] : 0.0; }
};

// One step of the recursion:
// lambda(n,k+1) = lambda(n,k) q^{n+2k+1} (1-q^{2(n+k+1)})^{-1/2} (1-q^{2(k+1)})^{-1/2}.
inline double lambda_step(double q, int n, int k) {
    return std::pow(q, n + 2 * k + 1) / std::sqrt(1.0 - std::pow(q, 2 * (n + k + 1))) /
           std::sqrt(1.0 - std::pow(q, 2 * (k + 1)));
}

inline LambdaTable lambda_table(double q, int n, double tol) {
    check_q(q);
    LambdaTable t;
    t.q = q;
    t.n = n;
    t.values.push_back(1.0);
    if (q == 0.0) return t;
    int kc = 0;
    while (lambda_bound_tail(q, n, kc) > tol) ++kc;
    for (int k = 0; k < kc; ++k) t.values.push_back(t.values.back() * lambda_step(q, n, k));
    t.tail = lambda_bound_tail(q, n, kc);
    return t;
}

// Lambda_q(n) = (sum_k lambda_q(n,k)^2)^{1/2}.
inline double capital_lambda(double q, int n, double tol) {
    const LambdaTable t = lambda_table(q, n, tol);
    double s = 0.0;
    for (double v : t.values) s += v * v;
    return std::sqrt(s);
}

}  // namespace suq2
