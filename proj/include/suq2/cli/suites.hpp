#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "suq2/suq2.hpp"

namespace suq2 {

// Numerical knobs shared by every suite.
struct SuiteConfig {
    int k_max = 10;
    int m_max = 10;
    double tol = kDefaultTol;
    int power_budget = 4096;
    int series_budget = 4096;
    int samples = 100;
    std::uint64_t seed = 2024;

    CalculusOptions calculus() const {
        CalculusOptions o;
        o.tol = tol;
        o.power_budget = power_budget;
        o.series_budget = series_budget;
        return o;
    }
};

// Runs a suite and spreads its wall time over rows that did not time themselves.
template <class F>
inline ResidualReport timed(F&& f) {
    Stopwatch sw;
    ResidualReport r = f();
    const double share = sw.ms() / static_cast<double>(std::max<std::size_t>(1, r.size()));
    for (auto& k : r)
        if (k.ms == 0.0) k.ms = share;
    return r;
}

// A and SU_q(2) relations on the configured window.
inline ResidualReport relations_suite(double q, const SuiteConfig& c, bool with_A = true) {
    const TruncationWindow w(c.k_max, c.m_max, 1);
    ResidualReport r;
    if (with_A) append(r, check_A_relations(w));
    append(r, check_suq2_relations(q, w));
    return r;
}

// Word series of phi_q(a), phi_q(b) against the direct matrices.
inline ResidualReport phi_series_suite(double q, const SuiteConfig& c) {
    ResidualReport r;
    if (q == 0.0) return r;  // the series are stated for q > 0
    const TruncationWindow w(c.k_max, c.m_max, 1);
    const InteriorSet in(w.space(), 1);
    const auto a = phi_a_series(q, w, c.tol);
    const auto b = phi_b_series(q, w, c.tol);
    r.push_back(Check::gated("phi_q(a): series vs matrix", "phi_q(a) = sum of displayed T-words",
                             interior_residual(a.op - phi_a(q, w), in), std::max(2.0 * c.tol, a.tail))
                    .with("q", q)
                    .with("tail", a.tail));
    r.push_back(Check::gated("phi_q(b): series vs matrix", "phi_q(b) = sum q^n T^n S T*^n",
                             interior_residual(b.op - phi_b(q, w), in), std::max(2.0 * c.tol, b.tail))
                    .with("q", q)
                    .with("tail", b.tail));
    return r;
}

// The closed-form upper bound on every tabulated lambda, Lambda_0 = 1, and the f^q Gram matrix.
inline ResidualReport lambda_suite(double q, const SuiteConfig& c, int n_max = 20, int min_labels = 20) {
    ResidualReport r;
    Stopwatch sw;
    double excess = 0.0;
    int values = 0;
    for (int n = 0; n <= n_max; ++n) {
        const LambdaTable t = lambda_table(q, n, c.tol);
        for (int k = 0; k <= t.k_cut(); ++k, ++values)
            excess = std::max(excess, t[k] - lambda_bound(q, n, k) * (1.0 + 1e-15));
    }
    Check b = Check::gated("lambda upper bound", "lambda_q(n,k) <= closed-form bound", excess, 0.0);
    b.ms = sw.ms();
    r.push_back(b.with("q", q).with("values", values));
    double l0 = 0.0;
    for (int n = 0; n <= n_max; ++n) l0 = std::max(l0, std::abs(capital_lambda(0.0, n, c.tol) - 1.0));
    r.push_back(Check::gated("Lambda_0(n) = 1", "Lambda_0(n) = 1", l0, 0.0).with("q", q));

    sw = Stopwatch();
    const Space s = TruncationWindow(14, 4, 2).space();
    const auto labels = interior_labels(q, s, c.tol, 2, 40);
    std::vector<Vec> vs;
    double tail = 0.0;
    for (const auto& l : labels) {
        const FVector f = f_vector(q, l, s, c.tol);
        vs.push_back(f.to_vector(s));
        tail = std::max(tail, f.defect);
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = 0; j < vs.size(); ++j)
            worst = std::max(worst, std::abs(vs[i].dot(vs[j]) - (i == j ? 1.0 : 0.0)));
    Check g = Check::gated("f^q Gram matrix", "the f^q form an orthonormal basis", worst, 2.0 * std::max(tail, c.tol));
    if (static_cast<int>(labels.size()) < min_labels) g.verdict = Verdict::Fail;
    g.ms = sw.ms();
    r.push_back(g.with("q", q).with("labels", static_cast<double>(labels.size())));
    return r;
}

// Kernel of Delta_q(phi_q(a)), the recursion factor, and the Delta_q(S) action laws.
inline ResidualReport kernel_suite(double q, const SuiteConfig& c) {
    ResidualReport r;
    const TruncationWindow w12(12, 4, 2);
    const auto g = delta_q_generators(q, w12);
    append(r, kernel_check(q, g.Da, interior_labels(q, w12.space(), c.tol, 2, 30), c.tol));
    const auto cs = build_comultiplication(q, TruncationWindow(14, 4, 2), c.calculus());
    append(r, action_law_checks(cs, 3, c.tol));
    return r;
}

// Basis-map and series constructions of U~, and its vanishing quotient symbol.
inline ResidualReport u_tilde_suite(double q, const SuiteConfig& c) {
    ResidualReport r;
    Stopwatch sw;
    const Space s = TruncationWindow(14, 4, 2).space();
    const auto a = u_tilde_basis(q, s, c.tol);
    const auto b = u_tilde_series(q, s, c.tol);
    Check d = Check::gated("U~: basis map vs word series", "U~ given by its word series",
                           interior_residual(a.op - b.op, InteriorSet(s, 2)), a.tail + b.tail + 1e-13);
    d.ms = sw.ms();
    r.push_back(d.with("q", q));
    sw = Stopwatch();
    const Space big = TruncationWindow(symbol_level_for(q, c.tol) + 6, 4, 2).space();
    const auto sym = quotient_symbol(u_tilde_basis(q, big, c.tol).op, 2);
    Check m = Check::gated("U~: quotient symbol vanishes", "U~ belongs to D",
                           std::max({sym.max_abs(), sym.spread, sym.off_diagonal}), c.tol);
    m.ms = sw.ms();
    r.push_back(m.with("q", q).with("probe_level", sym.probe_level));
    return r;
}

struct OmegaBuild {
    TruncationWindow window;
    ComultiplicationSet comult;
    IntertwinerBundle bundle;
    double ms = 0.0;
};

// U_q on a window tall enough for the interior checks; never below the configured height.
inline OmegaBuild build_omega(double q, const SuiteConfig& c) {
    Stopwatch sw;
    const TruncationWindow auto_w = theorem_window(q, c.tol);
    const TruncationWindow w(std::max(auto_w.k_max, c.k_max), auto_w.m_max, 2);
    const CalculusOptions co = c.calculus();
    OmegaBuild b{w, build_comultiplication(q, w, co), {}, 0.0};
    b.bundle = u_q(q, b.comult, c.tol, co.drop, c.series_budget);
    b.ms = sw.ms();
    return b;
}

inline const std::vector<std::string>& intertwining_words() {
    static const std::vector<std::string> w = {"S", "T", "S*", "T*", "ST", "TS*", "S*S"};
    return w;
}

// Delta_q = Ad(Omega_q) Delta_0 on sampled words, plus the unitarity defect.
inline ResidualReport intertwining_suite(const OmegaBuild& b, const SuiteConfig& c) {
    IntertwiningOptions o;
    o.samples = c.samples;
    o.seed = c.seed;
    ResidualReport r = verify_intertwining(b.comult, b.bundle, intertwining_words(), o);
    for (auto& k : r) k.ms += b.ms / static_cast<double>(r.size());
    return r;
}

// Counit of Omega_q on each leg and the mixed-representation counit identity.
inline ResidualReport counit_suite(const OmegaBuild& b, const SuiteConfig& c) {
    ResidualReport r = verify_counit(b.bundle);
    append(r, mixed_counit_checks(b.bundle.q, TruncationWindow(c.k_max, std::max(4, std::min(c.m_max, 6)), 1), c.tol,
                                  c.calculus()));
    return r;
}

// Ad(Omega_q) preserves the T x T symbol.
inline ResidualReport symbol_suite(double q, const SuiteConfig& c) {
    return symbol_stability_check(q, c.tol, {}, c.calculus());
}

// Strict continuity of Omega_q and Delta_q, sampled on a q grid.
inline ResidualReport continuity_suite(const SuiteConfig& c) {
    std::vector<double> grid;
    for (int i = 0; i <= 9; ++i) grid.push_back(0.1 * i);
    ResidualReport r;
    const TruncationWindow w(8, 4, 2);
    const CalculusOptions co = c.calculus();
    for (const auto& [name, f] : std::vector<std::pair<std::string, std::function<Operator(double)>>>{
             {"Delta_q(S)", [&](double q) { return delta_q_S(q, w, co); }},
             {"Delta_q(T)", [&](double q) { return delta_q_T(q, w, co); }},
             {"constant word", [&](double) { return synthesize(WordPolynomial::tensor_word({Word::J(0, 1, 0), Word::Q(1, 0)}), w); }}}) {
        Stopwatch sw;
        auto p = continuity_probe("strict continuity of " + name, f, grid, 2);
        p.check.ms = sw.ms();
        r.push_back(p.check);
    }
    UContinuityOptions uo;
    uo.grid = grid;
    append(r, u_continuity_checks(c.tol, uo, co));
    return r;
}

// Density witness identities and the nonvanishing of irreducible pairs.
inline ResidualReport witness_suite(double q, const SuiteConfig& c) {
    ResidualReport r = density_witness_checks(TruncationWindow(c.k_max, std::max(4, std::min(c.m_max, 6)), 2));
    for (auto& k : r) k.with("q", q);
    append(r, nonvanishing_checks(q, 12, 0.1, c.calculus()));
    return r;
}

// Pseudo-cocycle commutant (gate) and 2-cocycle residual (measurement) on the triple window.
inline ResidualReport cocycle_suite(double q, const SuiteConfig& c, int levels = 6, int m_max = 6) {
    ProbeOptions o;
    o.levels = levels;
    o.m_max = m_max;
    o.samples = c.samples;
    o.seed = c.seed;
    o.tol = c.tol;
    o.power_budget = c.power_budget;
    o.series_budget = c.series_budget;
    const auto ctx = cocycle_context(q, o);
    ResidualReport r = pseudo_cocycle_probe(*ctx, o);
    append(r, two_cocycle_residual(*ctx, o));
    for (auto& k : r) k.with("build_ms", ctx->build_ms);
    return r;
}

}  // namespace suq2
