#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace suq2 {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Index = std::int64_t;

// One tensor leg of the ambient lattice.  Levels are truncated at `levels`,
// windings are taken modulo `windings` so winding translation is exact.
struct LegShape {
    int levels = 1;
    int windings = 1;

    bool operator==(const LegShape& o) const {
        return levels == o.levels && windings == o.windings;
    }
    bool operator!=(const LegShape& o) const { return !(*this == o); }
};

inline int wrap(int x, int n) {
    int r = x % n;
    return r < 0 ? r + n : r;
}

// Tensor product of legs.  A basis vector is addressed by a level class
// (mixed radix over the legs' levels) and a winding index (mixed radix over
// the legs' windings); flat = cls * winds() + wind.
class Space {
public:
    Space() = default;
    explicit Space(std::vector<LegShape> legs) : legs_(std::move(legs)) {
        if (legs_.empty() || legs_.size() > 3)
            throw std::invalid_argument("Space: tensor order must be 1..3");
        classes_ = 1;
        winds_ = 1;
        for (const auto& l : legs_) {
            if (l.levels < 1 || l.windings < 1)
                throw std::invalid_argument("Space: empty leg");
            classes_ *= l.levels;
            winds_ *= l.windings;
        }
    }

    int order() const { return static_cast<int>(legs_.size()); }
    const LegShape& leg(int i) const { return legs_[static_cast<std::size_t>(i)]; }
    const std::vector<LegShape>& legs() const { return legs_; }
    int classes() const { return classes_; }
    int winds() const { return winds_; }
    Index dim() const { return static_cast<Index>(classes_) * winds_; }

    int class_of(const int* k) const {
        int c = 0;
        for (int i = 0; i < order(); ++i) {
            if (k[i] < 0 || k[i] >= legs_[i].levels) return -1;
            c = c * legs_[i].levels + k[i];
        }
        return c;
    }
    void levels_of(int cls, int* k) const {
        for (int i = order() - 1; i >= 0; --i) {
            k[i] = cls % legs_[i].levels;
            cls /= legs_[i].levels;
        }
    }
    int wind_of(const int* m) const {
        int w = 0;
        for (int i = 0; i < order(); ++i) w = w * legs_[i].windings + wrap(m[i], legs_[i].windings);
        return w;
    }
    void winds_of(int w, int* m) const {
        for (int i = order() - 1; i >= 0; --i) {
            m[i] = w % legs_[i].windings;
            w /= legs_[i].windings;
        }
    }
    // Signed representative of a winding residue, in (-N/2, N/2].
    int signed_winding(int leg_index, int residue) const {
        int n = legs_[leg_index].windings;
        int r = wrap(residue, n);
        return 2 * r > n ? r - n : r;
    }
    int shift_add(int a, int b) const {
        int ma[3], mb[3];
        winds_of(a, ma);
        winds_of(b, mb);
        for (int i = 0; i < order(); ++i) ma[i] += mb[i];
        return wind_of(ma);
    }
    int shift_neg(int a) const {
        int ma[3];
        winds_of(a, ma);
        for (int i = 0; i < order(); ++i) ma[i] = -ma[i];
        return wind_of(ma);
    }
    Index flat(int cls, int wind) const { return static_cast<Index>(cls) * winds_ + wind; }

    Space tensor(const Space& other) const {
        std::vector<LegShape> l = legs_;
        l.insert(l.end(), other.legs_.begin(), other.legs_.end());
        return Space(std::move(l));
    }

    bool operator==(const Space& o) const { return legs_ == o.legs_; }
    bool operator!=(const Space& o) const { return !(*this == o); }

    std::string describe() const {
        std::string s;
        for (std::size_t i = 0; i < legs_.size(); ++i) {
            if (i) s += " x ";
            s += "[" + std::to_string(legs_[i].levels) + " levels, " +
                 std::to_string(legs_[i].windings) + " windings]";
        }
        return s;
    }

private:
    std::vector<LegShape> legs_;
    int classes_ = 0;
    int winds_ = 0;
};

// Winding-group addition, tabulated when the group is small enough.
class ShiftTable {
public:
    explicit ShiftTable(const Space& s) : space_(s), w_(s.winds()) {
        if (static_cast<Index>(w_) * w_ <= (Index{1} << 24)) {
            table_.resize(static_cast<std::size_t>(w_) * static_cast<std::size_t>(w_));
            for (int a = 0; a < w_; ++a)
                for (int b = 0; b < w_; ++b)
                    table_[static_cast<std::size_t>(a) * static_cast<std::size_t>(w_) + static_cast<std::size_t>(b)] =
                        s.shift_add(a, b);
        }
    }
    int operator()(int a, int b) const {
        if (table_.empty()) return space_.shift_add(a, b);
        return table_[static_cast<std::size_t>(a) * static_cast<std::size_t>(w_) + static_cast<std::size_t>(b)];
    }

private:
    Space space_;
    int w_;
    std::vector<int> table_;
};

inline const ShiftTable& shift_table(const Space& s) {
    static std::mutex mu;
    static std::map<std::vector<int>, std::unique_ptr<ShiftTable>> cache;
    std::vector<int> key;
    for (const auto& l : s.legs()) key.push_back(l.windings);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::make_unique<ShiftTable>(s)).first;
    return *it->second;
}

struct BasisIndex {
    int k = 0;
    int m = 0;
};

// Levels 0..k_max-1 and windings -m_max..m_max, in `order` tensor legs.
struct TruncationWindow {
    int k_max = 10;
    int m_max = 10;
    int order = 1;

    TruncationWindow() = default;
    TruncationWindow(int k, int m, int o) : k_max(k), m_max(m), order(o) { validate(); }

    void validate() const {
        if (k_max < 4 || m_max < 4)
            throw std::invalid_argument("TruncationWindow: k_max and m_max must be at least 4");
        if (order < 1 || order > 3)
            throw std::invalid_argument("TruncationWindow: tensor order must be 1, 2 or 3");
    }
    int windings() const { return 2 * m_max + 1; }
    LegShape leg() const { return {k_max, windings()}; }
    Space space() const { return Space(std::vector<LegShape>(static_cast<std::size_t>(order), leg())); }
    Index dimension() const {
        Index d = 1;
        for (int i = 0; i < order; ++i) d *= static_cast<Index>(k_max) * windings();
        return d;
    }
    bool contains(const BasisIndex& b) const {
        return b.k >= 0 && b.k < k_max && b.m >= -m_max && b.m <= m_max;
    }
};

inline Index basis_flat(const Space& s, const std::vector<BasisIndex>& legs) {
    if (static_cast<int>(legs.size()) != s.order())
        throw std::invalid_argument("basis_flat: leg count mismatch");
    int k[3], m[3];
    for (int i = 0; i < s.order(); ++i) {
        k[i] = legs[static_cast<std::size_t>(i)].k;
        m[i] = legs[static_cast<std::size_t>(i)].m;
    }
    int c = s.class_of(k);
    if (c < 0) throw std::out_of_range("basis_flat: level outside window");
    return s.flat(c, s.wind_of(m));
}

inline Vec basis_vector(const Space& s, const std::vector<BasisIndex>& legs) {
    Vec v = Vec::Zero(s.dim());
    v[basis_flat(s, legs)] = 1.0;
    return v;
}

// Basis tuples whose level sits at least `margin` below the top in every leg.
// The lower level margin is not imposed: the constructions only ever lower a
// level by killing the vector, which compression reproduces exactly.
class InteriorSet {
public:
    InteriorSet(const Space& s, int margin, int winding_margin = 0) : space_(s), margin_(margin) {
        int k[3], m[3];
        for (int c = 0; c < s.classes(); ++c) {
            s.levels_of(c, k);
            bool ok = true;
            for (int i = 0; i < s.order(); ++i)
                if (k[i] >= s.leg(i).levels - margin && s.leg(i).levels > 1) ok = false;
            if (!ok) continue;
            classes_.push_back(c);
            for (int w = 0; w < s.winds(); ++w) {
                s.winds_of(w, m);
                bool wok = true;
                for (int i = 0; i < s.order(); ++i) {
                    int half = s.leg(i).windings / 2;
                    if (std::abs(s.signed_winding(i, m[i])) > half - winding_margin && s.leg(i).windings > 1)
                        wok = false;
                }
                if (wok) flats_.push_back(s.flat(c, w));
            }
        }
    }

    const Space& space() const { return space_; }
    int margin() const { return margin_; }
    const std::vector<int>& classes() const { return classes_; }
    const std::vector<Index>& indices() const { return flats_; }
    std::size_t size() const { return flats_.size(); }
    bool contains_class(int c) const {
        return std::binary_search(classes_.begin(), classes_.end(), c);
    }

    Vec mask(const Vec& v) const {
        Vec out = Vec::Zero(v.size());
        for (Index i : flats_) out[i] = v[i];
        return out;
    }

private:
    Space space_;
    int margin_ = 0;
    std::vector<int> classes_;
    std::vector<Index> flats_;
};

}  // namespace suq2
