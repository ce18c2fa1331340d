#pragma once

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "suq2/core/check.hpp"

namespace suq2 {

struct ContinuityTable {
    std::vector<double> grid;
    std::vector<double> increments;
    double max_increment = 0.0;
};

inline ContinuityTable increments(const std::function<Operator(double)>& builder, const std::vector<double>& grid,
                                  int margin) {
    if (grid.size() < 2) throw std::invalid_argument("continuity: grid needs two points");
    if (!std::is_sorted(grid.begin(), grid.end())) throw std::invalid_argument("continuity: grid must be sorted");
    if (grid.front() < 0.0 || grid.back() >= 1.0) throw std::invalid_argument("continuity: grid must lie in [0,1)");
    ContinuityTable t;
    t.grid = grid;
    Operator prev = builder(grid[0]);
    const InteriorSet in(prev.space(), margin);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        Operator cur = builder(grid[i]);
        double d = interior_residual(cur - prev, in, 20);
        t.increments.push_back(d);
        t.max_increment = std::max(t.max_increment, d);
        prev = std::move(cur);
    }
    return t;
}

inline std::vector<double> refine(const std::vector<double>& grid) {
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        out.push_back(grid[i]);
        out.push_back(0.5 * (grid[i] + grid[i + 1]));
    }
    out.push_back(grid.back());
    return out;
}

struct ContinuityResult {
    ContinuityTable coarse, fine;
    Check check;
};

// Increments on the grid and on its midpoint refinement.  Halving the spacing
// must at least halve the largest increment, up to a factor-2 slack, i.e.
// max_fine <= max_coarse.
inline ContinuityResult continuity_probe(const std::string& name, const std::function<Operator(double)>& builder,
                                         const std::vector<double>& grid, int margin) {
    ContinuityResult r;
    r.coarse = increments(builder, grid, margin);
    r.fine = increments(builder, refine(grid), margin);
    r.check = Check::gated(name, "the map q -> Delta_q(x) is norm continuous", r.fine.max_increment,
                           std::max(r.coarse.max_increment, 1e-300));
    if (r.coarse.max_increment == 0.0 && r.fine.max_increment == 0.0) r.check.verdict = Verdict::Pass;
    r.check.with("max_coarse", r.coarse.max_increment).with("max_fine", r.fine.max_increment);
    r.check.with("grid_points", static_cast<double>(grid.size()));
    return r;
}

}  // namespace suq2
