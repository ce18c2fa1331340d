#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "suq2/cocycle/intertwiner.hpp"
#include "suq2/comultiplication/delta0.hpp"
#include "suq2/lift/extraction.hpp"

namespace suq2 {

struct Compressed {
    Operator op;
    double dropped = 0.0;  // largest column norm of entries whose winding shift does not fit
};

// Restriction to fewer levels and re-encoding of the winding shifts in a
// (possibly smaller) cyclic group.  Shifts outside (-N/2, N/2] of the target
// cannot be represented and are dropped.
inline Compressed compress_to(const Operator& x, const Space& target) {
    const Space& s = x.space();
    if (s.order() != target.order()) throw std::invalid_argument("compress_to: order mismatch");
    Operator::Builder b(target);
    std::vector<double> lost(static_cast<std::size_t>(s.classes()), 0.0);
    int ck[3], rk[3], sm[3];
    for (int c = 0; c < s.classes(); ++c) {
        s.levels_of(c, ck);
        if (target.class_of(ck) < 0) continue;
        for (auto p = x.col_begin(c); p != x.col_end(c); ++p) {
            s.levels_of(p->row, rk);
            if (target.class_of(rk) < 0) continue;
            s.winds_of(p->shift, sm);
            bool fits = true;
            for (int i = 0; i < s.order(); ++i) {
                sm[i] = s.signed_winding(i, sm[i]);
                const int n = target.leg(i).windings;
                fits = fits && 2 * sm[i] <= n && 2 * sm[i] > -n;
            }
            if (fits)
                b.add_levels(ck, rk, sm, p->val);
            else
                lost[static_cast<std::size_t>(c)] += std::norm(p->val);
        }
    }
    Compressed out{b.build(), 0.0};
    for (double l : lost) out.dropped = std::max(out.dropped, std::sqrt(l));
    return out;
}

enum class LiftLeg { Left, Right };  // Delta_0 x id, id x Delta_0

inline int lifted_leg(LiftLeg l) { return l == LiftLeg::Left ? 0 : 1; }

inline WordPolynomial carrier_words(int a, int b) {
    return WordPolynomial::tensor_word({Word::J(a, 0, a), Word::J(b, 0, b)});
}

struct LiftPiece {
    Operator carrier;  // lifted carrier projection on the triple window
    Operator image;    // lifted x * carrier
};

struct LiftResult {
    Vec value;
    double residual = 0.0;  // extraction residual of x * carrier
};

// One carrier piece of (Delta_0 x id)(x) or (id x Delta_0)(x): extract the
// words of x * (j1 x j2), lift them symbolically, and synthesize on the
// three-leg window.
inline LiftPiece lift_piece(const Operator& x, LiftLeg leg, const Space& window3, int a, int b,
                            double* residual = nullptr) {
    const Space& s = x.space();
    if (s.order() != 2 || window3.order() != 3) throw std::invalid_argument("lift: needs a two-leg x and a triple window");
    const std::vector<LegRep> legs2 = detail::rho_legs(s);
    const std::vector<LegRep> legs3 = detail::rho_legs(window3);
    const Operator C = synthesize(carrier_words(a, b), legs2);
    ExtractionOptions o;
    o.margin = 0;
    o.tol = 1e-12;
    const WordCoefficients w = decompose(x.compose(C), {LegKind::J, LegKind::J}, o);
    if (!w.accepted()) throw ExtractionError("lift: carrier product not in J x J");
    if (residual) *residual = std::max(*residual, w.residual);
    // extracted words already have m, n below the window height, so every
    // lifted term can reach the window
    const int l = lifted_leg(leg);
    LiftPiece p;
    p.image = synthesize(delta0_on_leg(w.words, l), legs3);
    p.carrier = synthesize(delta0_on_leg(carrier_words(a, b), l), legs3);
    return p;
}

// Spec-level entry point: ((Delta_0 x id)(x)) ((Delta_0 x id)(j1 x j2)) v.
inline LiftResult lift_delta0_leg(const Operator& x, LiftLeg leg, const Space& window3, int a, int b, const Vec& v) {
    LiftResult r;
    LiftPiece p = lift_piece(x, leg, window3, a, b, &r.residual);
    r.value = p.image.apply(p.carrier.apply(v));
    return r;
}

// The lift evaluated strictly on every vector of the triple window: the
// lifted carriers with a, b below the window height are orthogonal
// projections summing to the identity there.
class LiftedMultiplier {
public:
    LiftedMultiplier(const Operator& x, LiftLeg leg, const Space& window3) : space_(window3) {
        const int L = window3.leg(0).levels;
        for (int a = 0; a < L; ++a)
            for (int b = 0; b < L; ++b) {
                const LiftPiece p = lift_piece(x, leg, window3, a, b, &residual_);
                pieces_.push_back(p.image.compose(p.carrier));
            }
    }
    Vec apply(const Vec& v) const {
        Vec out = Vec::Zero(space_.dim());
        for (const auto& p : pieces_) p.apply_into(v, out, 1.0);
        return out;
    }
    double extraction_residual() const { return residual_; }
    const Space& space() const { return space_; }

private:
    Space space_;
    std::vector<Operator> pieces_;  // lifted x * carrier, times the lifted carrier
    double residual_ = 0.0;
};

// Norm of the part of v sitting on the top level of any leg.
inline double top_band_mass(const Space& s, const Vec& v) {
    double m = 0.0;
    int k[3];
    for (int c = 0; c < s.classes(); ++c) {
        s.levels_of(c, k);
        bool top = false;
        for (int i = 0; i < s.order(); ++i) top = top || k[i] == s.leg(i).levels - 1;
        if (top) m += v.segment(s.flat(c, 0), s.winds()).squaredNorm();
    }
    return std::sqrt(m);
}

struct ProbeOptions {
    int levels = 6;   // triple window (levels, m_max)
    int m_max = 6;
    int samples = 8;
    int carrier_max = 2;  // carriers T^a S*S T*^a with a <= carrier_max
    std::uint64_t seed = 2024;
    double tol = kDefaultTol;
    int power_budget = 4096;
    int series_budget = 4096;
};

// Everything the two cocycle probes share for one q.
struct CocycleContext {
    double q = 0.0;
    Space window3;
    IntertwinerBundle bundle;
    Operator U2, U2s;       // U_q compressed to the triple legs
    Operator UI, IU, IUs;   // U x I, I x U, I x U*
    std::unique_ptr<LiftedMultiplier> lift_left_U, lift_right_U, lift_right_Us;
    double factor_error = 0.0;  // per unitary factor: construction plus winding overflow
    double build_ms = 0.0;
};

inline std::shared_ptr<CocycleContext> cocycle_context(double q, const ProbeOptions& o) {
    Stopwatch sw;
    auto ctx = std::make_shared<CocycleContext>();
    ctx->q = q;
    const TruncationWindow w3(o.levels, o.m_max, 3);
    ctx->window3 = w3.space();
    // U_q on a tall window with spare windings, then cut down
    const TruncationWindow tw = theorem_window(q, o.tol, o.levels, o.m_max + 4);
    CalculusOptions co;
    co.tol = o.tol;
    co.power_budget = o.power_budget;
    co.series_budget = o.series_budget;
    const ComultiplicationSet c = build_comultiplication(q, tw, co);
    ctx->bundle = u_q(q, c, o.tol, co.drop, o.series_budget);
    const Space s2 = TruncationWindow(o.levels, o.m_max, 2).space();
    Compressed cu = compress_to(ctx->bundle.U, s2);
    Compressed cus = compress_to(ctx->bundle.U.adjoint(), s2);
    ctx->U2 = cu.op;
    ctx->U2s = cus.op;
    ctx->factor_error = u_q_error(ctx->bundle) + std::max(cu.dropped, cus.dropped);
    const Operator I1 = Operator::identity(TruncationWindow(o.levels, o.m_max, 1).space());
    ctx->UI = ctx->U2.kron(I1);
    ctx->IU = I1.kron(ctx->U2);
    ctx->IUs = I1.kron(ctx->U2s);
    ctx->lift_left_U = std::make_unique<LiftedMultiplier>(ctx->U2, LiftLeg::Left, ctx->window3);
    ctx->lift_right_U = std::make_unique<LiftedMultiplier>(ctx->U2, LiftLeg::Right, ctx->window3);
    ctx->lift_right_Us = std::make_unique<LiftedMultiplier>(ctx->U2s, LiftLeg::Right, ctx->window3);
    ctx->build_ms = sw.ms();
    return ctx;
}

// Test vectors in the range of lifted carriers (Delta_0 x id)(T^a S*S T*^a x T^b S*S T*^b).
inline std::vector<Vec> carrier_samples(const CocycleContext& ctx, const ProbeOptions& o) {
    std::mt19937_64 rng(o.seed);
    std::normal_distribution<double> g;
    const Space& s = ctx.window3;
    const std::vector<LegRep> legs3 = detail::rho_legs(s);
    std::vector<Vec> out;
    int k[3];
    for (int i = 0; i < o.samples; ++i) {
        const int a = i % (o.carrier_max + 1), b = (i / (o.carrier_max + 1)) % (o.carrier_max + 1);
        const Operator C = synthesize(delta0_on_leg(carrier_words(a, b), 0), legs3);
        Vec v = Vec::Zero(s.dim());
        for (int c = 0; c < s.classes(); ++c) {
            s.levels_of(c, k);
            if (std::max({k[0], k[1], k[2]}) > o.carrier_max + 1) continue;
            for (int w = 0; w < s.winds(); ++w) v[s.flat(c, w)] = cplx(g(rng), g(rng));
        }
        v = C.apply(v);
        const double n = v.norm();
        if (n > 0.0) out.push_back(v / n);
    }
    return out;
}

// Applies a factor that is unitary before compression; the norm it loses is
// mass pushed out of the window.
struct Tracked {
    Vec v;
    double leak = 0.0;
    int factors = 0;
};

template <class F>
inline void step_unitary(Tracked& t, const F& f) {
    const double before = t.v.squaredNorm();
    t.v = f.apply(t.v);
    t.leak += std::sqrt(std::max(0.0, before - t.v.squaredNorm()));
    ++t.factors;
}

// c = (id x Delta_0)(U*) (I x U*) (U x I) (Delta_0 x id)(U)
inline Tracked apply_pseudo_cocycle(const CocycleContext& ctx, const Vec& v) {
    Tracked t{v, 0.0, 0};
    step_unitary(t, *ctx.lift_left_U);
    step_unitary(t, ctx.UI);
    step_unitary(t, ctx.IUs);
    step_unitary(t, *ctx.lift_right_Us);
    return t;
}

inline Operator double_delta0(const Word& x, const Space& window3) {
    return synthesize(delta0_on_leg(delta0_word(x), 0), detail::rho_legs(window3));
}

// Commutator of c with (Delta_0 x id) Delta_0(x), x in {S, T}.
inline ResidualReport pseudo_cocycle_probe(const CocycleContext& ctx, const ProbeOptions& o) {
    ResidualReport rep;
    const std::vector<Vec> samples = carrier_samples(ctx, o);
    for (const auto& [name, word] : {std::make_pair(std::string("S"), Word::J(0, 1, 0)),
                                     std::make_pair(std::string("T"), Word::Q(1, 0))}) {
        Stopwatch sw;
        const Operator X = double_delta0(word, ctx.window3);
        double worst = 0.0, worst_budget = 0.0, worst_gap = -1e300;
        bool ok = true;
        for (const Vec& w : samples) {
            // X raises levels by at most one, so only the top band can leave the window
            const Vec Xw = X.apply(w);
            const Tracked left = apply_pseudo_cocycle(ctx, Xw);
            const Tracked cw = apply_pseudo_cocycle(ctx, w);
            const Vec right = X.apply(cw.v);
            const double r = (left.v - right).norm();
            const double budget = 2.0 * 4.0 * ctx.factor_error + left.leak + cw.leak +
                                  top_band_mass(ctx.window3, cw.v) + top_band_mass(ctx.window3, w) + 1e-12;
            ok = ok && r <= budget;
            if (r - budget > worst_gap) {
                worst_gap = r - budget;
                worst = r;
                worst_budget = budget;
            }
        }
        Check c = Check::gated("pseudo-cocycle commutator: " + name,
                               "(id x Delta_0)(Omega*)(I x Omega*)(Omega x I)(Delta_0 x id)(Omega) commutes "
                               "with (Delta_0 x id)Delta_0(A)",
                               worst, worst_budget);
        if (!ok) c.verdict = Verdict::Fail;
        c.ms = sw.ms();
        rep.push_back(c.with("q", ctx.q)
                          .with("levels", ctx.window3.leg(0).levels)
                          .with("samples", static_cast<double>(samples.size())));
    }
    return rep;
}

// (U x I)(Delta_0 x id)(U) w against (I x U)(id x Delta_0)(U) w.  Measured only.
inline ResidualReport two_cocycle_residual(const CocycleContext& ctx, const ProbeOptions& o) {
    Stopwatch sw;
    const std::vector<Vec> samples = carrier_samples(ctx, o);
    double worst = 0.0, budget_at = 0.0, rms = 0.0;
    for (const Vec& w : samples) {
        Tracked l{w, 0.0, 0}, r{w, 0.0, 0};
        step_unitary(l, *ctx.lift_left_U);
        step_unitary(l, ctx.UI);
        step_unitary(r, *ctx.lift_right_U);
        step_unitary(r, ctx.IU);
        const double d = (l.v - r.v).norm();
        const double budget = 2.0 * 2.0 * ctx.factor_error + l.leak + r.leak + 1e-12;
        rms += d * d;
        if (d >= worst) {
            worst = d;
            budget_at = budget;
        }
    }
    Check c = Check::measured("2-cocycle residual", "(Omega x I)(Delta_0 x id)(Omega) = (I x Omega)(id x Delta_0)(Omega)",
                              worst, budget_at);
    c.ms = sw.ms();
    c.with("q", ctx.q)
        .with("levels", ctx.window3.leg(0).levels)
        .with("samples", static_cast<double>(samples.size()))
        .with("rms", samples.empty() ? 0.0 : std::sqrt(rms / static_cast<double>(samples.size())));
    return {c};
}

}  // namespace suq2
