#pragma once

#include <cstdint>
#include <stdexcept>

namespace drough {

// Uniform time grid. Node times are derived from integer indices only,
// time(i) = (i0 + i) * dt, so the delay r = delay_steps * dt lies on the
// grid exactly and the history interval [-r, 0] and solution interval
// [0, T] share the node at t = 0. No running sums anywhere.
struct Grid {
    double dt = 0.0;
    std::int64_t i0 = 0;           // absolute index of the first node, t_start = i0 * dt
    std::int64_t n = 0;            // number of nodes
    std::int64_t delay_steps = 0;  // r = delay_steps * dt

    double time(std::int64_t i) const { return static_cast<double>(i0 + i) * dt; }
    std::int64_t abs_index(std::int64_t i) const { return i0 + i; }
    double t_start() const { return time(0); }
    double t_end() const { return time(n - 1); }
    double delay() const { return static_cast<double>(delay_steps) * dt; }
    std::int64_t cells() const { return n - 1; }

    bool operator==(const Grid&) const = default;

    bool same_lattice(const Grid& o) const {
        return dt == o.dt && delay_steps == o.delay_steps;
    }
    // identical node set (delay metadata may differ)
    bool same_nodes(const Grid& o) const { return dt == o.dt && i0 == o.i0 && n == o.n; }
    bool contains_abs(std::int64_t a) const { return a >= i0 && a <= i0 + n - 1; }
    std::int64_t local(std::int64_t a) const { return a - i0; }

    // Grid covering I_r = [-r, T] with `solution_cells` cells on [0, T].
    static Grid over_ir(double dt, std::int64_t delay_steps, std::int64_t solution_cells) {
        if (dt <= 0.0) throw std::invalid_argument("Grid: dt must be positive");
        if (delay_steps < 0) throw std::invalid_argument("Grid: delay_steps must be >= 0");
        if (solution_cells < 1) throw std::invalid_argument("Grid: need at least one cell");
        Grid g;
        g.dt = dt;
        g.i0 = -delay_steps;
        g.n = delay_steps + solution_cells + 1;
        g.delay_steps = delay_steps;
        return g;
    }

    // View of nodes [first, first + count) as a Grid sharing this lattice.
    Grid subgrid(std::int64_t first, std::int64_t count) const {
        if (first < 0 || count < 1 || first + count > n)
            throw std::out_of_range("Grid::subgrid: range outside grid");
        Grid g;
        g.dt = dt;
        g.i0 = i0 + first;
        g.n = count;
        g.delay_steps = delay_steps;
        return g;
    }
};

}  // namespace drough
