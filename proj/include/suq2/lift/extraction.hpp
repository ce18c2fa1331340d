#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "suq2/algebra/generators.hpp"
#include "suq2/core/check.hpp"

namespace suq2 {

// Which words a leg may carry: J admits T^m S^j T*^n only, A also admits
// the quotient words T^a, T*^b.
enum class LegKind { A, J };

struct ExtractionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExtractionOptions {
    double tol = 1e-8;
    int margin = 2;  // extraction region: levels below k_max - margin
    int radius = 6;  // largest quotient degree read on an A leg
};

struct WordCoefficients {
    WordPolynomial words;
    double tol = 0.0;
    double spread = 0.0;    // variation of the probed entries
    double residual = 0.0;  // synthesis residual on the extraction region
    int region = 0;

    bool accepted() const { return residual <= tol && spread <= tol; }
};

namespace detail {

// One-leg kernel restricted to the region: (col level, row level, shift) -> value.
using LegKernel = std::map<std::tuple<int, int, int>, cplx>;

struct LegDecode {
    std::map<Word, cplx> coeff;
    double spread = 0.0;
};

inline cplx lookup(const LegKernel& f, int n, int m, int j) {
    auto it = f.find({n, m, j});
    return it == f.end() ? cplx(0.0) : it->second;
}

// Left inverse of synthesis on one leg.  Quotient degrees are read off the
// two highest probe columns; the J part is what remains inside the region.
inline LegDecode decode_leg(const LegKernel& f, LegKind kind, int L, int R) {
    LegDecode out;
    std::map<int, cplx> sym;
    if (kind == LegKind::A) {
        const int P = L - 1 - R;
        if (P - 1 < R) throw std::invalid_argument("extraction: region too small for the quotient probe");
        for (int d = -R; d <= R; ++d) {
            const cplx u = lookup(f, P, P + d, 0), v = lookup(f, P - 1, P - 1 + d, 0);
            const cplx c = 0.5 * (u + v);
            out.spread = std::max(out.spread, 0.5 * std::abs(u - v));
            if (c != cplx(0.0)) sym[d] = c;
        }
    }
    for (const auto& [d, c] : sym) out.coeff[d >= 0 ? Word::Q(d, 0) : Word::Q(0, -d)] += c;
    std::map<std::tuple<int, int, int>, cplx> J(f.begin(), f.end());
    for (const auto& [d, c] : sym)
        for (int n = std::max(0, -d); n < L && n + d < L; ++n) J[{n, n + d, 0}] -= c;
    for (const auto& [k, c] : J)
        if (c != cplx(0.0)) out.coeff[Word::J(std::get<1>(k), std::get<2>(k), std::get<0>(k))] += c;
    return out;
}

inline std::vector<LegRep> rho_legs(const Space& s) {
    std::vector<LegRep> legs;
    for (const auto& l : s.legs()) legs.push_back(LegRep::rho(l.levels, l.windings));
    return legs;
}

inline int region_of(const Space& s, int margin) {
    int K = s.leg(0).levels;
    for (const auto& l : s.legs()) K = std::min(K, l.levels);
    const int L = K - margin;
    if (L < 1) throw std::invalid_argument("extraction: margin leaves no region");
    return L;
}

// Columns inside the region; with `both_sides` also rows, so that a pure
// lowering such as T* cannot pass as a finite sum of matrix units.
inline double synthesis_residual(const Operator& x, const WordPolynomial& p, int margin, bool both_sides) {
    const Operator d = x - synthesize(p, rho_legs(x.space()));
    const InteriorSet in(x.space(), margin);
    double r = interior_residual(d, in, 20);
    if (both_sides) r = std::max(r, interior_residual(d.adjoint(), in, 20));
    return r;
}

}  // namespace detail

// Coefficients of x in the words T^m S^j T*^n (and quotient words on A legs),
// without acceptance.
inline WordCoefficients decompose(const Operator& x, const std::vector<LegKind>& kinds, const ExtractionOptions& o) {
    const Space& s = x.space();
    if (static_cast<int>(kinds.size()) != s.order() || s.order() > 2)
        throw std::invalid_argument("extraction: one or two legs, one kind per leg");
    const int L = detail::region_of(s, o.margin);
    WordCoefficients out;
    out.tol = o.tol;
    out.region = L;
    out.words = WordPolynomial(s.order());
    int ck[2], rk[2], sm[2];
    if (s.order() == 1) {
        detail::LegKernel f;
        for (int c = 0; c < s.classes(); ++c)
            for (auto p = x.col_begin(c); p != x.col_end(c); ++p) {
                s.levels_of(c, ck);
                s.levels_of(p->row, rk);
                s.winds_of(p->shift, sm);
                if (ck[0] < L && rk[0] < L) f[{ck[0], rk[0], s.signed_winding(0, sm[0])}] += p->val;
            }
        auto d = detail::decode_leg(f, kinds[0], L, o.radius);
        for (const auto& [w, c] : d.coeff) out.words.add({w}, c);
        out.spread = d.spread;
    } else {
        // leg 0 first, for every leg-1 matrix unit; then leg 1 for every leg-0 word
        std::map<std::tuple<int, int, int>, detail::LegKernel> by_leg1;
        for (int c = 0; c < s.classes(); ++c)
            for (auto p = x.col_begin(c); p != x.col_end(c); ++p) {
                s.levels_of(c, ck);
                s.levels_of(p->row, rk);
                s.winds_of(p->shift, sm);
                if (std::max({ck[0], ck[1], rk[0], rk[1]}) >= L) continue;
                by_leg1[{ck[1], rk[1], s.signed_winding(1, sm[1])}][{ck[0], rk[0], s.signed_winding(0, sm[0])}] +=
                    p->val;
            }
        std::map<Word, detail::LegKernel> by_word0;
        for (const auto& [k1, f0] : by_leg1) {
            auto d = detail::decode_leg(f0, kinds[0], L, o.radius);
            out.spread = std::max(out.spread, d.spread);
            for (const auto& [w, c] : d.coeff) by_word0[w][k1] += c;
        }
        for (const auto& [w0, f1] : by_word0) {
            auto d = detail::decode_leg(f1, kinds[1], L, o.radius);
            out.spread = std::max(out.spread, d.spread);
            for (const auto& [w1, c] : d.coeff) out.words.add({w0, w1}, c);
        }
    }
    const bool pure_j = std::all_of(kinds.begin(), kinds.end(), [](LegKind k) { return k == LegKind::J; });
    out.residual = detail::synthesis_residual(x, out.words, o.margin, pure_j);
    return out;
}

// x in rho(J): coefficient of (m,j,n) is <xi(m,x+j), x xi(n,x)>.
inline WordCoefficients extract_J_coeffs(const Operator& x, const ExtractionOptions& o = {}) {
    if (x.space().order() != 1) throw std::invalid_argument("extract_J_coeffs: expects a single-leg operator");
    WordCoefficients w = decompose(x, {LegKind::J}, o);
    // entries must not depend on the winding of the column
    const Space& s = x.space();
    const int W = s.winds();
    for (int c = 0; c < std::min(s.classes(), w.region); ++c)
        for (int m = 0; m < W; ++m) {
            const Vec col = x.apply(basis_vector(s, {{c, s.signed_winding(0, m)}}));
            const Vec ref = x.apply(basis_vector(s, {{c, 0}}));
            for (Index i = 0; i < s.dim(); ++i) {
                const Index shifted = (i / W) * W + wrap(static_cast<int>(i % W) - m, W);
                w.spread = std::max(w.spread, std::abs(col[i] - ref[shifted]));
            }
        }
    if (!w.accepted()) throw ExtractionError("not in J within tolerance");
    return w;
}

inline WordCoefficients extract_tensor_coeffs(const Operator& x, const std::vector<LegKind>& kinds,
                                              const ExtractionOptions& o = {}) {
    if (x.space().order() != 2) throw std::invalid_argument("extract_tensor_coeffs: expects a two-leg operator");
    WordCoefficients w = decompose(x, kinds, o);
    if (!w.accepted()) throw ExtractionError("synthesis residual above tolerance");
    return w;
}

// (eps x id) for Side-like index 0, (id x eps) for 1: the counit is applied to
// that leg's coefficients and the other leg is rebuilt.
inline Operator eps_tensor_id(const WordCoefficients& w, int eps_leg, const LegRep& survivor) {
    if (w.words.legs() != 2) throw std::invalid_argument("eps_tensor_id: needs two-leg coefficients");
    const WordPolynomial p = w.words.contract_leg(eps_leg, [](const Word& x) { return counit_char(x); });
    return synthesize(p, {survivor});
}

struct CounitResult {
    Operator op;
    WordCoefficients coeffs;
};

inline CounitResult eps_tensor_id(const Operator& x, int eps_leg, const ExtractionOptions& o = {}) {
    CounitResult r;
    r.coeffs = extract_tensor_coeffs(x, {LegKind::A, LegKind::A}, o);
    const auto& l = x.space().leg(1 - eps_leg);
    r.op = eps_tensor_id(r.coeffs, eps_leg, LegRep::rho(l.levels, l.windings));
    return r;
}

}  // namespace suq2
