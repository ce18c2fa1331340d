#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "suq2/algebra/generators.hpp"
#include "suq2/cocycle/f_vector.hpp"
#include "suq2/cocycle/lambda.hpp"
#include "suq2/comultiplication/delta0.hpp"
#include "suq2/comultiplication/delta_q.hpp"
#include "suq2/core/check.hpp"

namespace suq2 {

// Lambda_q(N)^{-1} lambda_q(N,k) for N = n + m, cached per N.
class NormalizedLambda {
public:
    NormalizedLambda(double q, double tol) : q_(q), tol_(tol) {}
    const std::vector<double>& row(int N) {
        auto it = rows_.find(N);
        if (it != rows_.end()) return it->second;
        LambdaTable t = lambda_table(q_, N, tol_);
        double s = 0.0;
        for (double v : t.values) s += v * v;
        const double L = std::sqrt(s);
        std::vector<double> r;
        for (double v : t.values) r.push_back(v / L);
        tails_[N] = t.tail / L;
        return rows_.emplace(N, r).first->second;
    }
    double tail(int N) {
        row(N);
        return tails_[N];
    }

private:
    double q_, tol_;
    std::map<int, std::vector<double>> rows_;
    std::map<int, double> tails_;
};

struct UTildeResult {
    Operator op;
    double tail = 0.0;  // largest per-column truncation bound
    int k_cut = 0;      // chain length used at N = 0
};

inline void check_u_tilde_window(double q, const Space& s, double tol) {
    const int K = std::min(s.leg(0).levels, s.leg(1).levels);
    if (lambda_table(q, 0, tol).k_cut() >= K)
        throw std::invalid_argument("u_tilde: window too small to host any complete f^q vector");
}

// Basis map f^0_{n,i,m,j} -> f^q_{n,i,m,j}; columns with nm != 0 vanish.
inline UTildeResult u_tilde_basis(double q, const Space& s, double tol) {
    if (s.order() != 2) throw std::invalid_argument("u_tilde: needs a two-leg space");
    check_u_tilde_window(q, s, tol);
    NormalizedLambda nl(q, tol);
    Operator::Builder b(s);
    UTildeResult r;
    const int K1 = s.leg(0).levels, K2 = s.leg(1).levels;
    for (int n = 0; n < K1; ++n)
        for (int m = 0; m < K2; ++m) {
            if (n * m != 0) continue;
            const auto& row = nl.row(n + m);
            r.tail = std::max(r.tail, nl.tail(n + m));
            for (std::size_t k = 0; k < row.size(); ++k) {
                const int kk = static_cast<int>(k);
                int ck[2] = {n, m}, rk[2] = {n + kk, m + kk}, sm[2] = {-kk, kk};
                b.add_levels(ck, rk, sm, row[k]);
            }
        }
    r.op = b.build();
    r.k_cut = static_cast<int>(nl.row(0).size()) - 1;
    return r;
}

// The word series
//   I x I - TT* x TT* + sum_{nm=0} (Lambda^{-1} - 1) T^n S*S T*^n x T^m S*S T*^m
//   + sum_{nm=0} Lambda^{-1} sum_{k>=1} lambda T^{n+k} S^{-k} T*^n x T^{m+k} S^k T*^m
// with n, m below `levels`.
inline WordPolynomial u_tilde_series_words(double q, int levels, double tol, double* tail = nullptr) {
    NormalizedLambda nl(q, tol);
    WordPolynomial p(2);
    p.add({Word::Q(0, 0), Word::Q(0, 0)}, 1.0);
    p.add({Word::Q(1, 1), Word::Q(1, 1)}, -1.0);
    double t = 0.0;
    for (int n = 0; n < levels; ++n)
        for (int m = 0; m < levels; ++m) {
            if (n * m != 0) continue;
            const auto& row = nl.row(n + m);
            t = std::max(t, nl.tail(n + m));
            p.add({Word::J(n, 0, n), Word::J(m, 0, m)}, row[0] - 1.0);
            for (std::size_t k = 1; k < row.size(); ++k) {
                const int kk = static_cast<int>(k);
                p.add({Word::J(n + kk, -kk, n), Word::J(m + kk, kk, m)}, row[k]);
            }
        }
    if (tail) *tail = t;
    return p;
}

inline UTildeResult u_tilde_series(double q, const Space& s, double tol) {
    check_u_tilde_window(q, s, tol);
    const int K = std::max(s.leg(0).levels, s.leg(1).levels);
    UTildeResult r;
    WordPolynomial p = u_tilde_series_words(q, K, tol, &r.tail);
    r.op = synthesize(p, {LegRep::rho(s.leg(0).levels, s.leg(0).windings), LegRep::rho(s.leg(1).levels, s.leg(1).windings)});
    r.k_cut = lambda_table(q, 0, tol).k_cut();
    return r;
}

struct IntertwinerBundle {
    double q = 0.0;
    Operator u_tilde;
    Operator U;
    double u_tilde_tail = 0.0;
    double tol = kDefaultTol;
    int terms = 0;
    double shift_bound = 0.0;  // series bound of the Delta_q(T) used in the sum

    const Space& space() const { return U.space(); }
};

// U_q = sum_k Delta_q(T)^k U~ Delta_0(T*)^k, evaluated in Horner form
// R <- U~ E^k + D R with E = T* x T*, D = Delta_q(T).  Every term with k at or
// above the window height K vanishes after compression.  D enters up to K
// times, so it is rebuilt here at tol / K.
inline IntertwinerBundle u_q(double q, const ComultiplicationSet& c, double tol, double drop = 1e-18,
                             int series_budget = 4096) {
    const Space& s = c.space();
    IntertwinerBundle b;
    b.q = q;
    b.tol = tol;
    UTildeResult ut = u_tilde_basis(q, s, tol);
    b.u_tilde = ut.op;
    b.u_tilde_tail = ut.tail;
    const int K = std::max(s.leg(0).levels, s.leg(1).levels);
    const std::vector<LegRep> legs = {LegRep::rho(s.leg(0).levels, s.leg(0).windings),
                                      LegRep::rho(s.leg(1).levels, s.leg(1).windings)};
    auto E = [&](int k) { return synthesize(WordPolynomial::tensor_word({Word::Q(0, k), Word::Q(0, k)}), legs); };
    CalculusOptions o;
    o.tol = tol / K;
    o.series_budget = series_budget;
    o.drop = drop;
    const InvSqrtResult polar = delta_q_polar_factor(q, c.Db, o);
    const Operator D = c.Da.adjoint().compose(polar.op, drop);
    b.shift_bound = polar.bound;
    Operator R = ut.op.compose(E(K - 1), drop);
    for (int k = K - 2; k >= 0; --k) R = ut.op.compose(E(k), drop) + D.compose(R, drop);
    b.U = R;
    b.terms = K;
    return b;
}

// Kernel of Delta_q(a) on f^q and the coefficient recursion.
inline ResidualReport kernel_check(double q, const Operator& Da, const std::vector<FLabel>& labels, double tol) {
    ResidualReport rep;
    double worst = 0.0, worst_budget = 0.0, worst_ratio = 0.0;
    bool ok = true;
    for (const auto& l : labels) {
        FVector f = f_vector(q, l, Da.space(), tol);
        const double r = Da.apply(f.to_vector(Da.space())).norm();
        // ||Delta_q(a)|| <= 1, so the truncated tail is all that can survive
        const double budget = f.defect + 1e-13;
        ok = ok && r <= budget;
        if (r - budget >= worst - worst_budget) {
            worst = r;
            worst_budget = budget;
        }
        for (std::size_t k = 0; k + 1 < f.coeff.size(); ++k) {
            if (f.coeff[k] == 0.0) continue;
            const double ratio = f.coeff[k + 1] / f.coeff[k];
            const double want = f.recursion_factor(static_cast<int>(k));
            worst_ratio = std::max(worst_ratio, std::abs(ratio - want) / std::max(1.0, std::abs(want)));
        }
    }
    Check c = Check::gated("kernel: Delta_q(a) f^q = 0", "Delta_q(a) annihilates f^q", worst, worst_budget);
    if (!ok) c.verdict = Verdict::Fail;
    rep.push_back(c.with("q", q).with("labels", static_cast<double>(labels.size())));
    rep.push_back(Check::gated("kernel: coefficient recursion", "c(n+1,i-1,m+1,j+1) = q^{n+m+1}(...)c(n,i,m,j)",
                               worst_ratio, 1e-12)
                      .with("q", q));
    return rep;
}

// Delta_q(S) f_{n,i,0,j} = f_{n+1,i,0,j+1}, Delta_q(S) f_{0,i,m,j} = f_{0,i+1,m-1,j}
// and the transition scalar <Delta_q(S) f_{n,i,0,j}, f_{n+1,i,0,j+1}> = 1.
inline ResidualReport action_law_checks(const ComultiplicationSet& c, int max_level, double tol) {
    const Space& s = c.space();
    const double q = c.q;
    ResidualReport rep;
    double r1 = 0, b1 = 0, r2 = 0, b2 = 0, scal = 0, imag = 0, bs = 0;
    bool ok1 = true, ok2 = true, pos = true;
    for (int lvl = 0; lvl <= max_level; ++lvl)
        for (int i = -1; i <= 1; ++i)
            for (int j = -1; j <= 1; ++j) {
                {
                    FVector f = f_vector(q, {lvl, i, 0, j}, s, tol);
                    FVector g = f_vector(q, {lvl + 1, i, 0, j + 1}, s, tol);
                    Vec img = c.DS.apply(f.to_vector(s));
                    Vec gv = g.to_vector(s);
                    const double r = (img - gv).norm();
                    const double budget = c.projection_bound + f.defect + g.defect + 1e-12;
                    ok1 = ok1 && r <= budget;
                    r1 = std::max(r1, r);
                    b1 = std::max(b1, budget);
                    const cplx z = gv.dot(img);
                    pos = pos && z.real() > 0.0;
                    scal = std::max(scal, std::abs(z.real() - 1.0));
                    imag = std::max(imag, std::abs(z.imag()));
                    bs = std::max(bs, budget);
                }
                if (lvl >= 1) {
                    FVector f = f_vector(q, {0, i, lvl, j}, s, tol);
                    FVector g = f_vector(q, {0, i + 1, lvl - 1, j}, s, tol);
                    const double r = (c.DS.apply(f.to_vector(s)) - g.to_vector(s)).norm();
                    const double budget = c.projection_bound + f.defect + g.defect + 1e-12;
                    ok2 = ok2 && r <= budget;
                    r2 = std::max(r2, r);
                    b2 = std::max(b2, budget);
                }
            }
    Check a = Check::gated("action: Delta_q(S) f_{n,i,0,j} = f_{n+1,i,0,j+1}",
                           "Delta_q(S)f^q_{n,i,0,j} = f^q_{n+1,i,0,j+1}", r1, b1);
    if (!ok1) a.verdict = Verdict::Fail;
    Check b = Check::gated("action: Delta_q(S) f_{0,i,m,j} = f_{0,i+1,m-1,j}",
                           "Delta_q(S)f^q_{0,i,m,j} = f^q_{0,i+1,m-1,j}", r2, b2);
    if (!ok2) b.verdict = Verdict::Fail;
    // the scalar must be real, positive and within tol of 1
    const double sres = std::max(scal, imag);
    Check d = Check::gated("action: transition scalar equals 1", "this scalar is a positive real number", sres,
                           std::max(tol, bs));
    if (!pos) d.verdict = Verdict::Fail;
    for (Check* x : {&a, &b, &d}) rep.push_back(x->with("q", q));
    return rep;
}

// Generator words used for Delta_q-images.
enum class Letter { S, T, Sstar, Tstar };
using Letters = std::vector<Letter>;

inline Letters parse_letters(const std::string& s) {
    Letters out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const bool star = i + 1 < s.size() && s[i + 1] == '*';
        if (s[i] == 'S')
            out.push_back(star ? Letter::Sstar : Letter::S);
        else if (s[i] == 'T')
            out.push_back(star ? Letter::Tstar : Letter::T);
        else
            throw std::invalid_argument("parse_letters: unknown generator in " + s);
        if (star) ++i;
    }
    if (out.empty()) throw std::invalid_argument("parse_letters: empty word");
    return out;
}

inline Word letter_word(Letter l) {
    switch (l) {
        case Letter::S: return Word::J(0, 1, 0);
        case Letter::T: return Word::Q(1, 0);
        case Letter::Sstar: return Word::J(0, -1, 0);
        case Letter::Tstar: return Word::Q(0, 1);
    }
    return Word::identity();
}

inline WordPolynomial letters_poly(const Letters& w) {
    WordPolynomial p = WordPolynomial::identity(1);
    for (Letter l : w) p = p * WordPolynomial::single(letter_word(l));
    return p;
}

// Delta_q image of a generator word, built from Delta_q(S), Delta_q(T).
inline Operator delta_q_image(const ComultiplicationSet& c, const Letters& w) {
    Operator DSs = c.DS.adjoint(), DTs = c.DT.adjoint();
    Operator out = Operator::identity(c.space());
    for (Letter l : w) {
        const Operator& f = l == Letter::S ? c.DS : l == Letter::T ? c.DT : l == Letter::Sstar ? DSs : DTs;
        out = out.compose(f);
    }
    return out;
}

// Construction error of a Delta_q image: each factor is a contraction, so
// errors add up letter by letter.
inline double delta_q_image_error(const ComultiplicationSet& c, const Letters& w) {
    double e = 0.0;
    for (Letter l : w) e += (l == Letter::S || l == Letter::Sstar) ? c.projection_bound : c.series_bound;
    return e;
}

inline Operator delta0_image(const Letters& w, const Space& s) {
    const std::vector<LegRep> legs = {LegRep::rho(s.leg(0).levels, s.leg(0).windings),
                                      LegRep::rho(s.leg(1).levels, s.leg(1).windings)};
    return synthesize(delta0(letters_poly(w)), legs);
}

// Order-2 window for the intertwining checks.  The compressed U_q leaks
// like q^(K - L) out of the interior levels L, so K is raised until that
// leak sits a decade below tol.
inline TruncationWindow theorem_window(double q, double tol, int interior_levels = 4, int m_max = 4,
                                       int min_levels = 10) {
    check_q(q);
    int K = interior_levels + 2;
    if (q > 0.0) K += static_cast<int>(std::ceil(std::log(0.1 * tol) / std::log(q)));
    return TruncationWindow(std::max(K, min_levels), m_max, 2);
}

struct IntertwiningOptions {
    int interior_levels = 4;  // interior vectors live on levels < this in both legs
    int samples = 100;
    std::uint64_t seed = 2024;
};

// Error of the compressed U_q: Delta_q(T) enters once per Horner step that
// can reach the interior, and the f^q chains are cut at the lambda tail.
inline double u_q_error(const IntertwinerBundle& b) { return b.terms * b.shift_bound + b.u_tilde_tail; }

inline double sampled_residual(const Operator& X, const InteriorSet& in, int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    double worst = 0.0;
    const Space& s = X.space();
    for (int i = 0; i < samples; ++i) {
        Vec v = Vec::Zero(s.dim());
        for (Index idx : in.indices()) v[idx] = cplx(g(rng), g(rng));
        v /= v.norm();
        worst = std::max(worst, X.apply(v).norm());
    }
    return worst;
}

inline ResidualReport verify_intertwining(const ComultiplicationSet& c, const IntertwinerBundle& b,
                                          const std::vector<std::string>& words, const IntertwiningOptions& o) {
    const Space& s = c.space();
    const int K = std::min(s.leg(0).levels, s.leg(1).levels);
    const InteriorSet in(s, K - o.interior_levels);
    const Operator Us = b.U.adjoint();
    const double eU = u_q_error(b);
    ResidualReport rep;
    for (const auto& name : words) {
        const Letters w = parse_letters(name);
        const Operator X = delta_q_image(c, w) - b.U.compose(delta0_image(w, s)).compose(Us);
        double r = X.max_column_norm(in.classes());
        r = std::max(r, sampled_residual(X, in, o.samples, o.seed));
        r = std::max(r, norm_estimate(LazyOperator(X), 25, &in).value);
        const double budget = delta_q_image_error(c, w) + 2.0 * eU + 1e-12;
        rep.push_back(Check::gated("intertwining: " + name, "Delta_q(x) = Omega_q Delta_0(x) Omega_q*", r, budget)
                          .with("q", c.q)
                          .with("k_max", K)
                          .with("samples", o.samples));
    }
    const Operator I = Operator::identity(s);
    const double d1 = interior_residual(Us.compose(b.U) - I, in);
    const double d2 = interior_residual(b.U.compose(Us) - I, in);
    rep.push_back(Check::gated("U_q unitarity defect", "U_q is unitary", std::max(d1, d2), 10.0 * b.tol)
                      .with("q", c.q)
                      .with("k_max", K));
    return rep;
}

}  // namespace suq2
