#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "suq2/core/window.hpp"

namespace suq2 {

// A winding-translation-invariant operator on a Space.  Column class c holds
// entries (row class, winding shift, amplitude); the amplitude of
// <row, flat(r, w + s) | op | flat(c, w)> does not depend on w.  Every
// operator built from the generators has this form once windings are periodic.
class Operator {
public:
    struct Entry {
        int row;
        int shift;
        cplx val;
    };

    Operator() = default;
    explicit Operator(const Space& s) : space_(s), ptr_(static_cast<std::size_t>(s.classes()) + 1, 0) {}

    static Operator identity(const Space& s) {
        Builder b(s);
        for (int c = 0; c < s.classes(); ++c) b.add(c, c, 0, 1.0);
        return b.build();
    }
    static Operator zero(const Space& s) { return Operator(s); }

    class Builder {
    public:
        explicit Builder(const Space& s) : space_(s) {}
        void add(int col, int row, int shift, cplx v) {
            if (v != cplx(0.0)) items_.push_back({col, row, shift, v});
        }
        // Levels and windings per leg; out-of-range levels are dropped.
        void add_levels(const int* col_k, const int* row_k, const int* shift_m, cplx v) {
            int c = space_.class_of(col_k);
            int r = space_.class_of(row_k);
            if (c < 0 || r < 0) return;
            add(c, r, space_.wind_of(shift_m), v);
        }
        Operator build(double drop = 0.0) {
            std::sort(items_.begin(), items_.end(), [](const Item& a, const Item& b) {
                if (a.col != b.col) return a.col < b.col;
                if (a.row != b.row) return a.row < b.row;
                return a.shift < b.shift;
            });
            Operator op(space_);
            op.entries_.reserve(items_.size());
            std::size_t i = 0;
            for (int c = 0; c < space_.classes(); ++c) {
                op.ptr_[static_cast<std::size_t>(c)] = op.entries_.size();
                while (i < items_.size() && items_[i].col == c) {
                    cplx acc = 0.0;
                    int r = items_[i].row, s = items_[i].shift;
                    while (i < items_.size() && items_[i].col == c && items_[i].row == r && items_[i].shift == s)
                        acc += items_[i++].val;
                    if (std::abs(acc) > drop) op.entries_.push_back({r, s, acc});
                }
            }
            op.ptr_.back() = op.entries_.size();
            items_.clear();
            return op;
        }

    private:
        struct Item {
            int col, row, shift;
            cplx val;
        };
        Space space_;
        std::vector<Item> items_;
    };

    const Space& space() const { return space_; }
    std::size_t nnz_kernel() const { return entries_.size(); }
    const Entry* col_begin(int c) const { return entries_.data() + ptr_[static_cast<std::size_t>(c)]; }
    const Entry* col_end(int c) const { return entries_.data() + ptr_[static_cast<std::size_t>(c) + 1]; }

    Vec apply(const Vec& v) const {
        check_vec(v);
        Vec out = Vec::Zero(space_.dim());
        apply_into(v, out, 1.0);
        return out;
    }

    // out += alpha * op * v
    void apply_into(const Vec& v, Vec& out, cplx alpha) const {
        const int W = space_.winds();
        const cplx* in = v.data();
        cplx* o = out.data();
        for (int c = 0; c < space_.classes(); ++c) {
            const Entry* b = col_begin(c);
            const Entry* e = col_end(c);
            if (b == e) continue;
            const cplx* src = in + static_cast<Index>(c) * W;
            bool any = false;
            for (int w = 0; w < W; ++w)
                if (src[w] != cplx(0.0)) {
                    any = true;
                    break;
                }
            if (!any) continue;
            for (const Entry* p = b; p != e; ++p) {
                cplx* dst = o + static_cast<Index>(p->row) * W;
                rotate_add(src, dst, p->shift, alpha * p->val);
            }
        }
    }

    Vec apply_adjoint(const Vec& v) const { return adjoint().apply(v); }

    Operator adjoint() const {
        Builder b(space_);
        for (int c = 0; c < space_.classes(); ++c)
            for (const Entry* p = col_begin(c); p != col_end(c); ++p)
                b.add(p->row, c, space_.shift_neg(p->shift), std::conj(p->val));
        return b.build();
    }

    // this * rhs
    Operator compose(const Operator& rhs, double drop = 0.0) const {
        check_space(rhs);
        Operator out(space_);
        std::vector<Entry> scratch;
        const ShiftTable& add = shift_table(space_);
        out.entries_.reserve(rhs.entries_.size());
        for (int c = 0; c < space_.classes(); ++c) {
            out.ptr_[static_cast<std::size_t>(c)] = out.entries_.size();
            scratch.clear();
            for (const Entry* p = rhs.col_begin(c); p != rhs.col_end(c); ++p)
                for (const Entry* q = col_begin(p->row); q != col_end(p->row); ++q)
                    scratch.push_back({q->row, add(p->shift, q->shift), q->val * p->val});
            merge_into(scratch, out.entries_, drop);
        }
        out.ptr_.back() = out.entries_.size();
        return out;
    }

    Operator operator*(const Operator& rhs) const { return compose(rhs); }

    Operator axpy(cplx alpha, const Operator& rhs, cplx beta = 1.0) const {
        check_space(rhs);
        Operator out(space_);
        std::vector<Entry> scratch;
        for (int c = 0; c < space_.classes(); ++c) {
            out.ptr_[static_cast<std::size_t>(c)] = out.entries_.size();
            scratch.clear();
            for (const Entry* p = col_begin(c); p != col_end(c); ++p)
                scratch.push_back({p->row, p->shift, beta * p->val});
            for (const Entry* p = rhs.col_begin(c); p != rhs.col_end(c); ++p)
                scratch.push_back({p->row, p->shift, alpha * p->val});
            merge_into(scratch, out.entries_, 0.0);
        }
        out.ptr_.back() = out.entries_.size();
        return out;
    }
    Operator operator+(const Operator& rhs) const { return axpy(1.0, rhs); }
    Operator operator-(const Operator& rhs) const { return axpy(-1.0, rhs); }
    Operator scaled(cplx s) const {
        Operator out = *this;
        for (auto& e : out.entries_) e.val *= s;
        if (s == cplx(0.0)) return Operator(space_);
        return out;
    }
    friend Operator operator*(cplx s, const Operator& op) { return op.scaled(s); }

    Operator pruned(double drop) const {
        Builder b(space_);
        for (int c = 0; c < space_.classes(); ++c)
            for (const Entry* p = col_begin(c); p != col_end(c); ++p)
                if (std::abs(p->val) > drop) b.add(c, p->row, p->shift, p->val);
        return b.build();
    }

    Operator kron(const Operator& rhs) const {
        Space s = space_.tensor(rhs.space_);
        const int W2 = rhs.space_.winds();
        const int C2 = rhs.space_.classes();
        Operator out(s);
        for (int c1 = 0; c1 < space_.classes(); ++c1)
            for (int c2 = 0; c2 < C2; ++c2) {
                out.ptr_[static_cast<std::size_t>(c1 * C2 + c2)] = out.entries_.size();
                for (const Entry* p = col_begin(c1); p != col_end(c1); ++p)
                    for (const Entry* q = rhs.col_begin(c2); q != rhs.col_end(c2); ++q)
                        out.entries_.push_back({p->row * C2 + q->row, p->shift * W2 + q->shift, p->val * q->val});
                auto first = out.entries_.begin() + static_cast<std::ptrdiff_t>(out.ptr_[static_cast<std::size_t>(c1 * C2 + c2)]);
                std::sort(first, out.entries_.end(), [](const Entry& a, const Entry& b) {
                    return a.row != b.row ? a.row < b.row : a.shift < b.shift;
                });
            }
        out.ptr_.back() = out.entries_.size();
        return out;
    }

    // Kernel amplitude from column class c to (row class r, shift s).
    cplx kernel(int c, int r, int s) const {
        for (const Entry* p = col_begin(c); p != col_end(c); ++p)
            if (p->row == r && p->shift == s) return p->val;
        return 0.0;
    }

    cplx entry(const std::vector<BasisIndex>& row, const std::vector<BasisIndex>& col) const {
        int rk[3], rm[3], ck[3], cm[3], sm[3];
        for (int i = 0; i < space_.order(); ++i) {
            rk[i] = row[static_cast<std::size_t>(i)].k;
            rm[i] = row[static_cast<std::size_t>(i)].m;
            ck[i] = col[static_cast<std::size_t>(i)].k;
            cm[i] = col[static_cast<std::size_t>(i)].m;
            sm[i] = rm[i] - cm[i];
        }
        int r = space_.class_of(rk), c = space_.class_of(ck);
        if (r < 0 || c < 0) return 0.0;
        return kernel(c, r, space_.wind_of(sm));
    }

    // Euclidean norm of the image of a basis vector in column class c.
    double column_norm(int c) const {
        double s = 0.0;
        for (const Entry* p = col_begin(c); p != col_end(c); ++p) s += std::norm(p->val);
        return std::sqrt(s);
    }
    double max_column_norm(const std::vector<int>& classes) const {
        double m = 0.0;
        for (int c : classes) m = std::max(m, column_norm(c));
        return m;
    }
    double max_abs() const {
        double m = 0.0;
        for (const auto& e : entries_) m = std::max(m, std::abs(e.val));
        return m;
    }

    // Keep only the columns in `classes`.
    Operator restrict_columns(const std::vector<int>& classes) const {
        Builder b(space_);
        for (int c : classes)
            for (const Entry* p = col_begin(c); p != col_end(c); ++p) b.add(c, p->row, p->shift, p->val);
        return b.build();
    }

    // Dense matrix, for small spaces only.
    Eigen::MatrixXcd dense() const {
        if (space_.dim() > 20000) throw std::length_error("Operator::dense: space too large");
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(space_.dim(), space_.dim());
        for (int c = 0; c < space_.classes(); ++c)
            for (const Entry* p = col_begin(c); p != col_end(c); ++p)
                for (int w = 0; w < space_.winds(); ++w)
                    m(space_.flat(p->row, space_.shift_add(w, p->shift)), space_.flat(c, w)) += p->val;
        return m;
    }

    void check_vec(const Vec& v) const {
        if (v.size() != space_.dim()) throw std::invalid_argument("Operator: window mismatch");
    }
    void check_space(const Operator& o) const {
        if (o.space_ != space_) throw std::invalid_argument("Operator: window mismatch");
    }

private:
    // dst[w + s] += a * src[w] with the winding shift applied leg by leg.
    void rotate_add(const cplx* src, cplx* dst, int shift, cplx a) const {
        const int ord = space_.order();
        int sm[3];
        space_.winds_of(shift, sm);
        const int nl = space_.leg(ord - 1).windings;
        const int s_last = sm[ord - 1];
        int outer = space_.winds() / nl;
        for (int blk = 0; blk < outer; ++blk) {
            // destination block index for the leading legs
            int dblk = 0;
            {
                int rem = blk;
                int idx[2] = {0, 0};
                for (int i = ord - 2; i >= 0; --i) {
                    idx[i] = rem % space_.leg(i).windings;
                    rem /= space_.leg(i).windings;
                }
                for (int i = 0; i < ord - 1; ++i)
                    dblk = dblk * space_.leg(i).windings + (idx[i] + sm[i]) % space_.leg(i).windings;
            }
            const cplx* s = src + static_cast<Index>(blk) * nl;
            cplx* d = dst + static_cast<Index>(dblk) * nl;
            const int split = nl - s_last;
            for (int w = 0; w < split; ++w) d[w + s_last] += a * s[w];
            for (int w = split; w < nl; ++w) d[w - split] += a * s[w];
        }
    }

    static void merge_into(std::vector<Entry>& scratch, std::vector<Entry>& out, double drop) {
        std::sort(scratch.begin(), scratch.end(), [](const Entry& a, const Entry& b) {
            return a.row != b.row ? a.row < b.row : a.shift < b.shift;
        });
        std::size_t i = 0;
        while (i < scratch.size()) {
            Entry acc = scratch[i++];
            while (i < scratch.size() && scratch[i].row == acc.row && scratch[i].shift == acc.shift)
                acc.val += scratch[i++].val;
            if (std::abs(acc.val) > drop && acc.val != cplx(0.0)) out.push_back(acc);
        }
    }

    Space space_;
    std::vector<std::size_t> ptr_;
    std::vector<Entry> entries_;
};

// Drops one-dimensional legs (e.g. a character leg).  Class and winding
// indices are unchanged by a factor of size one, so entries carry over.
inline Operator squeeze_trivial_legs(const Operator& x) {
    std::vector<LegShape> keep;
    for (const auto& l : x.space().legs())
        if (l.levels * l.windings > 1) keep.push_back(l);
    if (keep.empty()) keep.push_back({1, 1});
    Operator::Builder b{Space(keep)};
    for (int c = 0; c < x.space().classes(); ++c)
        for (auto p = x.col_begin(c); p != x.col_end(c); ++p) b.add(c, p->row, p->shift, p->val);
    return b.build();
}

}  // namespace suq2
