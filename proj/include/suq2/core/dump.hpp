#pragma once

#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include "suq2/core/operator.hpp"

namespace suq2 {

// One nonzero entry per line: "k1 m1 [k2 m2 ...] | k1' m1' [...] | re im",
// row tuple first.  Windings are printed as signed representatives.
inline void dump_operator(std::ostream& os, const Operator& op, const std::string& name = "op") {
    const Space& s = op.space();
    os << "# " << name << " window " << s.describe() << " entries ";
    std::size_t count = 0;
    for (int c = 0; c < s.classes(); ++c) count += static_cast<std::size_t>(op.col_end(c) - op.col_begin(c));
    os << count * static_cast<std::size_t>(s.winds()) << "\n";
    int ck[3], rk[3], cm[3], sm[3];
    os << std::setprecision(17);
    for (int c = 0; c < s.classes(); ++c) {
        s.levels_of(c, ck);
        for (const auto* p = op.col_begin(c); p != op.col_end(c); ++p) {
            s.levels_of(p->row, rk);
            s.winds_of(p->shift, sm);
            for (int w = 0; w < s.winds(); ++w) {
                s.winds_of(w, cm);
                for (int i = 0; i < s.order(); ++i)
                    os << (i ? " " : "") << rk[i] << " " << s.signed_winding(i, cm[i] + sm[i]);
                os << " |";
                for (int i = 0; i < s.order(); ++i) os << " " << ck[i] << " " << s.signed_winding(i, cm[i]);
                os << " | " << p->val.real() << " " << p->val.imag() << "\n";
            }
        }
    }
}

}  // namespace suq2
