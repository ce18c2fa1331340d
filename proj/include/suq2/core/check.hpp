#pragma once

#include <algorithm>
#include <chrono>
#include <map>
#include <string>
#include <vector>

#include "suq2/core/functional_calculus.hpp"
#include "suq2/core/lazy.hpp"
#include "suq2/core/operator.hpp"

namespace suq2 {

enum class Verdict { Pass, Fail, Measured };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Measured: return "measured";
    }
    return "fail";
}

// One named residual against the bound it is held to.
struct Check {
    std::string name;
    std::string anchor;
    double residual = 0.0;
    double budget = 0.0;
    Verdict verdict = Verdict::Fail;
    std::map<std::string, double> params;
    double ms = 0.0;

    static Check gated(std::string name, std::string anchor, double residual, double budget) {
        Check c;
        c.name = std::move(name);
        c.anchor = std::move(anchor);
        c.residual = residual;
        c.budget = budget;
        c.verdict = (residual <= budget) ? Verdict::Pass : Verdict::Fail;
        return c;
    }
    static Check measured(std::string name, std::string anchor, double residual, double budget) {
        Check c = gated(std::move(name), std::move(anchor), residual, budget);
        c.verdict = Verdict::Measured;
        return c;
    }
    Check& with(const std::string& key, double v) {
        params[key] = v;
        return *this;
    }
    bool passed() const { return verdict != Verdict::Fail; }
};

using ResidualReport = std::vector<Check>;

inline bool all_passed(const ResidualReport& r) {
    return std::all_of(r.begin(), r.end(), [](const Check& c) { return c.passed(); });
}

inline void append(ResidualReport& to, const ResidualReport& from) { to.insert(to.end(), from.begin(), from.end()); }

class Stopwatch {
public:
    Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_;
};

// Largest of: the exact image norm of every interior basis vector, and the
// power-iteration estimate of the norm on the interior subspace.
inline double interior_residual(const Operator& x, const InteriorSet& interior, int iters = 30) {
    double r = x.max_column_norm(interior.classes());
    if (r == 0.0) return 0.0;
    r = std::max(r, norm_estimate(LazyOperator(x), iters, &interior).value);
    return r;
}

}  // namespace suq2
