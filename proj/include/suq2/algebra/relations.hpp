#pragma once

#include <string>

#include "suq2/algebra/generators.hpp"
#include "suq2/core/check.hpp"

namespace suq2 {

constexpr double kARelationTol = 1e-12;
constexpr double kSuq2RelationTol = 1e-10;

inline ResidualReport check_A_relations(const TruncationWindow& w) {
    const Operator T = gen_T(w), S = gen_S(w);
    const Operator Ts = T.adjoint(), Ss = S.adjoint();
    const Operator I = Operator::identity(T.space());
    const InteriorSet in(T.space(), 2);
    ResidualReport r;
    r.push_back(Check::gated("A: T*T = I", "T*T = I", interior_residual(Ts * T - I, in), kARelationTol));
    r.push_back(Check::gated("A: S*S = SS*", "S*S = SS*", interior_residual(Ss * S - S * Ss, in), kARelationTol));
    r.push_back(Check::gated("A: TT* + S*S = I", "TT* + S*S = I", interior_residual(T * Ts + Ss * S - I, in),
                             kARelationTol));
    for (auto& c : r) c.with("k_max", w.k_max).with("m_max", w.m_max);
    return r;
}

inline ResidualReport check_suq2_relations(double q, const TruncationWindow& w) {
    check_q(q);
    const Operator a = phi_a(q, w), b = phi_b(q, w);
    const Operator as = a.adjoint(), bs = b.adjoint();
    const Operator I = Operator::identity(a.space());
    const InteriorSet in(a.space(), 2);
    ResidualReport r;
    r.push_back(Check::gated("SUq2: a*a + b*b = I", "a*a + b*b = I", interior_residual(as * a + bs * b - I, in),
                             kSuq2RelationTol));
    r.push_back(Check::gated("SUq2: ab = q ba", "ab = qba", interior_residual(a * b - (b * a).scaled(q), in),
                             kSuq2RelationTol));
    r.push_back(Check::gated("SUq2: aa* + q^2 b*b = I", "aa* + q^2b*b = I",
                             interior_residual(a * as + (bs * b).scaled(q * q) - I, in), kSuq2RelationTol));
    r.push_back(Check::gated("SUq2: ab* = q b*a", "ab* = qb*a", interior_residual(a * bs - (bs * a).scaled(q), in),
                             kSuq2RelationTol));
    r.push_back(Check::gated("SUq2: b*b = bb*", "b*b = bb*", interior_residual(bs * b - b * bs, in), kSuq2RelationTol));
    for (auto& c : r) c.with("q", q).with("k_max", w.k_max).with("m_max", w.m_max);
    return r;
}

}  // namespace suq2
