#pragma once

#include <map>
#include <mutex>

#include "suq2/algebra/words.hpp"

namespace suq2 {

namespace detail {

inline WordPolynomial tensor2(const Word& x, const Word& y, cplx c = 1.0) {
    return WordPolynomial::tensor_word({x, y}, c);
}

inline const WordPolynomial& delta0_T() {
    static const WordPolynomial p = tensor2(Word::Q(1, 0), Word::Q(1, 0));
    return p;
}
inline const WordPolynomial& delta0_Tstar() {
    static const WordPolynomial p = tensor2(Word::Q(0, 1), Word::Q(0, 1));
    return p;
}
// S -> S x T* + T x S
inline const WordPolynomial& delta0_S() {
    static const WordPolynomial p = tensor2(Word::J(0, 1, 0), Word::Q(0, 1)) + tensor2(Word::Q(1, 0), Word::J(0, 1, 0));
    return p;
}
inline const WordPolynomial& delta0_Sstar() {
    static const WordPolynomial p = delta0_S().adjoint();
    return p;
}

inline WordPolynomial power(const WordPolynomial& x, int e) {
    WordPolynomial r = WordPolynomial::identity(x.legs());
    for (int i = 0; i < e; ++i) r = r * x;
    return r;
}

}  // namespace detail

// Delta_0 of a single word, expanded multiplicatively from the generator
// images and normal-ordered.  Memoized; thread-safe.
inline WordPolynomial delta0_word(const Word& w) {
    static std::mutex mu;
    static std::map<Word, WordPolynomial> memo;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(w);
        if (it != memo.end()) return it->second;
    }
    WordPolynomial out(2);
    if (w.quotient) {
        out = detail::power(detail::delta0_T(), w.m) * detail::power(detail::delta0_Tstar(), w.n);
    } else {
        WordPolynomial s(2);
        if (w.j > 0)
            s = detail::power(detail::delta0_S(), w.j);
        else if (w.j < 0)
            s = detail::power(detail::delta0_Sstar(), -w.j);
        else
            s = detail::delta0_Sstar() * detail::delta0_S();
        out = detail::power(detail::delta0_T(), w.m) * s * detail::power(detail::delta0_Tstar(), w.n);
    }
    std::lock_guard<std::mutex> lock(mu);
    return memo.emplace(w, out).first->second;
}

// Delta_0 applied to leg `leg` of a polynomial.
inline WordPolynomial delta0_on_leg(const WordPolynomial& p, int leg) {
    return p.map_leg(leg, 2, [](const Word& w) { return delta0_word(w); });
}

inline WordPolynomial delta0(const WordPolynomial& p) {
    if (p.legs() != 1) throw std::invalid_argument("delta0: expects a single-leg polynomial");
    return delta0_on_leg(p, 0);
}

}  // namespace suq2
