#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "suq2/core/window.hpp"

namespace suq2 {

// Either an element T^m S^j T*^n of the ideal J (S^0 = S*S, S^{-1} = S*) or
// a quotient word T^a T*^b (stored as m = a, n = b, j = 0).
struct Word {
    bool quotient = false;
    int m = 0;
    int j = 0;
    int n = 0;

    static Word J(int m, int j, int n) {
        if (m < 0 || n < 0) throw std::invalid_argument("Word::J: negative T power");
        return {false, m, j, n};
    }
    static Word Q(int a, int b) {
        if (a < 0 || b < 0) throw std::invalid_argument("Word::Q: negative T power");
        return {true, a, 0, b};
    }
    static Word identity() { return Q(0, 0); }

    int a() const { return m; }
    int b() const { return n; }
    // Normal form: J-words, T^a and T*^b.
    bool normal() const { return !quotient || m == 0 || n == 0; }

    auto key() const { return std::make_tuple(quotient, m, j, n); }
    bool operator<(const Word& o) const { return key() < o.key(); }
    bool operator==(const Word& o) const { return key() == o.key(); }
    bool operator!=(const Word& o) const { return !(*this == o); }

    std::string str() const {
        std::ostringstream s;
        if (quotient)
            s << "Q(" << m << "," << n << ")";
        else
            s << "J(" << m << "," << j << "," << n << ")";
        return s.str();
    }
};

inline Word adjoint(const Word& w) {
    if (w.quotient) return Word::Q(w.n, w.m);
    return Word::J(w.n, -w.j, w.m);
}

// Counit: the character T -> 1, S -> 0.
inline cplx counit_char(const Word& w) { return w.quotient ? cplx(1.0) : cplx(0.0); }

using WordTerms = std::map<Word, cplx>;

// Expansion of a quotient word in normal form.
inline WordTerms normal_form(const Word& w) {
    WordTerms out;
    if (w.normal()) {
        out[w] = 1.0;
        return out;
    }
    const int a = w.m, b = w.n;
    if (a >= b) {
        // T^a T*^b = T^{a-b} (I - sum_{l<b} T^l S*S T*^l)
        out[Word::Q(a - b, 0)] += 1.0;
        for (int l = 0; l < b; ++l) out[Word::J(l + a - b, 0, l)] -= 1.0;
    } else {
        out[Word::Q(0, b - a)] += 1.0;
        for (int l = 0; l < a; ++l) out[Word::J(l, 0, l + b - a)] -= 1.0;
    }
    return out;
}

// Product of two words as a single (possibly non-normal) word, or nothing.
inline bool multiply_raw(const Word& x, const Word& y, Word& out) {
    if (!x.quotient && !y.quotient) {
        if (x.n != y.m) return false;
        out = Word::J(x.m, x.j + y.j, y.n);
        return true;
    }
    if (x.quotient && !y.quotient) {
        // T^a T*^b T^m S^j T*^n
        if (y.m < x.n) return false;
        out = Word::J(y.m + x.m - x.n, y.j, y.n);
        return true;
    }
    if (!x.quotient && y.quotient) {
        // T^m S^j T*^n T^a T*^b
        if (x.n < y.m) return false;
        out = Word::J(x.m, x.j, x.n - y.m + y.n);
        return true;
    }
    const int a = x.m, b = x.n, c = y.m, d = y.n;
    out = (c >= b) ? Word::Q(a + c - b, d) : Word::Q(a, d + b - c);
    return true;
}

inline WordTerms multiply(const Word& x, const Word& y) {
    Word w;
    if (!multiply_raw(x, y, w)) return {};
    return normal_form(w);
}

// Finite linear combination of tensor words with a fixed number of legs.
class WordPolynomial {
public:
    using Key = std::vector<Word>;

    WordPolynomial() = default;
    explicit WordPolynomial(int legs) : legs_(legs) {
        if (legs < 1 || legs > 3) throw std::invalid_argument("WordPolynomial: 1..3 legs");
    }
    static WordPolynomial single(const Word& w, cplx c = 1.0) {
        WordPolynomial p(1);
        p.add({w}, c);
        return p;
    }
    static WordPolynomial tensor_word(const Key& k, cplx c = 1.0) {
        WordPolynomial p(static_cast<int>(k.size()));
        p.add(k, c);
        return p;
    }
    static WordPolynomial identity(int legs) { return tensor_word(Key(static_cast<std::size_t>(legs), Word::identity())); }

    int legs() const { return legs_; }
    const std::map<Key, cplx>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    // Adds c times the tensor word, expanding non-normal quotient legs.
    void add(const Key& k, cplx c) {
        if (static_cast<int>(k.size()) != legs_) throw std::invalid_argument("WordPolynomial::add: leg count");
        if (c == cplx(0.0)) return;
        bool all_normal = true;
        for (const auto& w : k) all_normal = all_normal && w.normal();
        if (all_normal) {
            accumulate(k, c);
            return;
        }
        std::vector<WordTerms> exp;
        for (const auto& w : k) exp.push_back(normal_form(w));
        expand(exp, 0, Key{}, c);
    }

    cplx coeff(const Key& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? cplx(0.0) : it->second;
    }

    WordPolynomial& operator+=(const WordPolynomial& o) {
        check(o);
        for (const auto& [k, c] : o.terms_) accumulate(k, c);
        return *this;
    }
    WordPolynomial& operator-=(const WordPolynomial& o) {
        check(o);
        for (const auto& [k, c] : o.terms_) accumulate(k, -c);
        return *this;
    }
    friend WordPolynomial operator+(WordPolynomial a, const WordPolynomial& b) { return a += b; }
    friend WordPolynomial operator-(WordPolynomial a, const WordPolynomial& b) { return a -= b; }
    friend WordPolynomial operator*(cplx s, WordPolynomial p) {
        for (auto& [k, c] : p.terms_) c *= s;
        if (s == cplx(0.0)) p.terms_.clear();
        return p;
    }

    friend WordPolynomial operator*(const WordPolynomial& x, const WordPolynomial& y) {
        x.check(y);
        WordPolynomial out(x.legs_);
        std::vector<WordTerms> exp(static_cast<std::size_t>(x.legs_));
        for (const auto& [kx, cx] : x.terms_)
            for (const auto& [ky, cy] : y.terms_) {
                bool zero = false;
                for (int i = 0; i < x.legs_ && !zero; ++i) {
                    exp[static_cast<std::size_t>(i)] = multiply(kx[static_cast<std::size_t>(i)], ky[static_cast<std::size_t>(i)]);
                    zero = exp[static_cast<std::size_t>(i)].empty();
                }
                if (!zero) out.expand(exp, 0, Key{}, cx * cy);
            }
        return out;
    }

    WordPolynomial adjoint() const {
        WordPolynomial out(legs_);
        for (const auto& [k, c] : terms_) {
            Key a;
            for (const auto& w : k) a.push_back(suq2::adjoint(w));
            out.accumulate(a, std::conj(c));
        }
        return out;
    }

    // Tensor product: legs of `this` followed by legs of `o`.
    WordPolynomial tensor(const WordPolynomial& o) const {
        WordPolynomial out(legs_ + o.legs_);
        for (const auto& [k1, c1] : terms_)
            for (const auto& [k2, c2] : o.terms_) {
                Key k = k1;
                k.insert(k.end(), k2.begin(), k2.end());
                out.accumulate(k, c1 * c2);
            }
        return out;
    }

    // Applies a linear map Word -> WordPolynomial(r legs) to one leg; the
    // result has legs() - 1 + r legs, the image legs replacing `leg`.
    template <class F>
    WordPolynomial map_leg(int leg, int image_legs, F&& f) const {
        WordPolynomial out(legs_ - 1 + image_legs);
        std::map<Word, WordPolynomial> memo;
        for (const auto& [k, c] : terms_) {
            const Word& w = k[static_cast<std::size_t>(leg)];
            auto it = memo.find(w);
            if (it == memo.end()) it = memo.emplace(w, f(w)).first;
            for (const auto& [img, ci] : it->second.terms_) {
                Key nk(k.begin(), k.begin() + leg);
                nk.insert(nk.end(), img.begin(), img.end());
                nk.insert(nk.end(), k.begin() + leg + 1, k.end());
                out.accumulate(nk, c * ci);
            }
        }
        return out;
    }

    // Applies a scalar functional to one leg, removing it.
    template <class F>
    WordPolynomial contract_leg(int leg, F&& f) const {
        if (legs_ < 2) throw std::invalid_argument("WordPolynomial::contract_leg: needs two legs");
        WordPolynomial out(legs_ - 1);
        for (const auto& [k, c] : terms_) {
            cplx s = f(k[static_cast<std::size_t>(leg)]);
            if (s == cplx(0.0)) continue;
            Key nk = k;
            nk.erase(nk.begin() + leg);
            out.accumulate(nk, c * s);
        }
        return out;
    }

    WordPolynomial pruned(double drop) const {
        WordPolynomial out(legs_);
        for (const auto& [k, c] : terms_)
            if (std::abs(c) > drop) out.terms_.emplace(k, c);
        return out;
    }

    double max_abs_difference(const WordPolynomial& o) const {
        WordPolynomial d = *this - o;
        double m = 0.0;
        for (const auto& [k, c] : d.terms_) m = std::max(m, std::abs(c));
        return m;
    }

    std::string str() const {
        std::ostringstream s;
        bool first = true;
        for (const auto& [k, c] : terms_) {
            if (!first) s << " + ";
            first = false;
            s << "(" << c.real();
            if (c.imag() != 0.0) s << (c.imag() > 0 ? "+" : "") << c.imag() << "i";
            s << ")";
            for (std::size_t i = 0; i < k.size(); ++i) s << (i ? "x" : " ") << k[i].str();
        }
        return first ? "0" : s.str();
    }

private:
    void check(const WordPolynomial& o) const {
        if (o.legs_ != legs_) throw std::invalid_argument("WordPolynomial: leg count mismatch");
    }
    void accumulate(const Key& k, cplx c) {
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
            return;
        }
        it->second += c;
        if (it->second == cplx(0.0)) terms_.erase(it);
    }
    void expand(const std::vector<WordTerms>& exp, std::size_t i, Key cur, cplx c) {
        if (i == exp.size()) {
            accumulate(cur, c);
            return;
        }
        for (const auto& [w, cw] : exp[i]) {
            Key nk = cur;
            nk.push_back(w);
            expand(exp, i + 1, nk, c * cw);
        }
    }

    int legs_ = 1;
    std::map<Key, cplx> terms_;
};

}  // namespace suq2
