#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "suq2/algebra/generators.hpp"
#include "suq2/comultiplication/delta0.hpp"
#include "suq2/core/check.hpp"
#include "suq2/core/functional_calculus.hpp"

namespace suq2 {

constexpr double kDefaultTol = 1e-8;

struct CalculusOptions {
    double tol = kDefaultTol;
    int power_budget = 4096;
    int series_budget = 4096;
    double drop = 1e-18;
};

// Images of Delta_q(phi_q(a)), Delta_q(phi_q(b)), Delta_q(S), Delta_q(T) in a
// pair of leg representations.
struct ComultiplicationSet {
    double q = 0.0;
    std::vector<LegRep> legs;
    Operator Da, Db;
    Operator projection;  // approximates the spectral projection of Db Db* at 1
    Operator DS, DT;
    int power = 1;
    double projection_bound = 0.0;
    int series_terms = 1;
    double series_bound = 0.0;
    double tol = kDefaultTol;

    const Space& space() const { return Da.space(); }
};

struct GeneratorPair {
    Operator Da, Db;
};

// Delta(a) = a x a - q b* x b,  Delta(b) = b x a + a* x b.
inline GeneratorPair delta_q_generators(double q, const LegRep& l1, const LegRep& l2) {
    check_q(q);
    const Operator a1 = phi_a(q, l1), b1 = phi_b(q, l1);
    const Operator a2 = phi_a(q, l2), b2 = phi_b(q, l2);
    Operator Da = a1.kron(a2) - b1.adjoint().kron(b2).scaled(q);
    Operator Db = b1.kron(a2) + a1.adjoint().kron(b2);
    return {Da, Db};
}

inline GeneratorPair delta_q_generators(double q, const TruncationWindow& w) {
    const LegRep l = LegRep::rho(w.k_max, w.windings());
    return delta_q_generators(q, l, l);
}

// Delta_q(S) = Delta_q(b) E({1}) with E the spectral projection of
// Delta_q(b b*), approximated by a power of it (gap q^2; exact at q = 0).
inline ProjectionResult delta_q_projection(double q, const Operator& Db, const CalculusOptions& o) {
    const Operator x = Db.compose(Db.adjoint(), o.drop);
    return power_projection(x, q * q, o.tol, o.power_budget, o.drop);
}

// Delta_q(T) = Delta_q(a)* (I - q^2 Delta_q(b)* Delta_q(b))^{-1/2}.
inline InvSqrtResult delta_q_polar_factor(double q, const Operator& Db, const CalculusOptions& o) {
    const Operator I = Operator::identity(Db.space());
    const Operator y = I - Db.adjoint().compose(Db, o.drop).scaled(q * q);
    return inv_sqrt(y, 1.0 - q * q, o.tol, o.series_budget, o.drop);
}

inline ComultiplicationSet build_comultiplication(double q, const LegRep& l1, const LegRep& l2,
                                                  const CalculusOptions& o = {}) {
    check_q(q);
    ComultiplicationSet c;
    c.q = q;
    c.legs = {l1, l2};
    c.tol = o.tol;
    auto g = delta_q_generators(q, l1, l2);
    c.Da = g.Da;
    c.Db = g.Db;
    auto p = delta_q_projection(q, c.Db, o);
    c.projection = p.op;
    c.power = p.power;
    c.projection_bound = p.bound;
    c.DS = c.Db.compose(p.op, o.drop);
    auto r = delta_q_polar_factor(q, c.Db, o);
    c.series_terms = r.terms;
    c.series_bound = r.bound;
    c.DT = c.Da.adjoint().compose(r.op, o.drop);
    return c;
}

inline ComultiplicationSet build_comultiplication(double q, const TruncationWindow& w,
                                                  const CalculusOptions& o = {}) {
    const LegRep l = LegRep::rho(w.k_max, w.windings());
    return build_comultiplication(q, l, l, o);
}

inline Operator delta_q_S(double q, const TruncationWindow& w, const CalculusOptions& o = {}) {
    auto g = delta_q_generators(q, w);
    return g.Db.compose(delta_q_projection(q, g.Db, o).op, o.drop);
}

inline Operator delta_q_T(double q, const TruncationWindow& w, const CalculusOptions& o = {}) {
    auto g = delta_q_generators(q, w);
    return g.Da.adjoint().compose(delta_q_polar_factor(q, g.Db, o).op, o.drop);
}

enum class Side { Left, Right };

// (omega_t x rho) Delta_q (Side::Left) or (rho x omega_t) Delta_q (Side::Right)
// on a single rho leg; the omega leg is one-dimensional.
inline ComultiplicationSet mixed_delta_q(double q, Side side, cplx t, const TruncationWindow& w,
                                         const CalculusOptions& o = {}) {
    const LegRep r = LegRep::rho(w.k_max, w.windings());
    const LegRep om = LegRep::omega(t);
    return side == Side::Left ? build_comultiplication(q, om, r, o) : build_comultiplication(q, r, om, o);
}

// The rest of the spectrum of Delta_q(b b*) must sit below the assumed gap:
// ||x (I - E)|| <= q^2 + tol on the interior.
inline Check projection_gap_check(const ComultiplicationSet& c, const InteriorSet& in) {
    const Operator x = c.Db.compose(c.Db.adjoint());
    const double r = interior_residual(x - x.compose(c.projection), in);
    return Check::gated("gap of Delta_q(bb*) at 1", "1 is an isolated point of the spectrum", r,
                        c.q * c.q + c.tol)
        .with("q", c.q);
}

}  // namespace suq2
