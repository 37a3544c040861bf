#include "nlpl/domain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlpl {

double distance(const Point& a, const Point& b) {
    double s = 0.0;
    for (int d = 0; d < a.dim; ++d) {
        const double t = a[d] - b[d];
        s += t * t;
    }
    return std::sqrt(s);
}

Domain::Domain(std::vector<double> lower, std::vector<double> upper) {
    if (lower.size() != upper.size() || lower.empty() || lower.size() > 2)
        throw std::invalid_argument("Domain: dim must be 1 or 2");
    dim_ = static_cast<int>(lower.size());
    for (int d = 0; d < dim_; ++d) {
        if (!(upper[static_cast<size_t>(d)] > lower[static_cast<size_t>(d)]))
            throw std::invalid_argument("Domain: upper must exceed lower on every axis");
        lo_[static_cast<size_t>(d)] = lower[static_cast<size_t>(d)];
        hi_[static_cast<size_t>(d)] = upper[static_cast<size_t>(d)];
    }
}

Domain Domain::interval(double lo, double hi) { return Domain({lo}, {hi}); }

Domain Domain::box2(double lo0, double hi0, double lo1, double hi1) {
    return Domain({lo0, lo1}, {hi0, hi1});
}

double Domain::measure() const {
    double m = 1.0;
    for (int d = 0; d < dim_; ++d) m *= side(d);
    return m;
}

double Domain::min_side() const {
    double m = side(0);
    for (int d = 1; d < dim_; ++d) m = std::min(m, side(d));
    return m;
}

bool Domain::contains(const Point& x) const {
    if (x.dim != dim_) return false;
    for (int d = 0; d < dim_; ++d)
        if (!(x[d] > lower(d) && x[d] < upper(d))) return false;
    return true;
}

bool Domain::contains_closure(const Point& x) const {
    if (x.dim != dim_) return false;
    for (int d = 0; d < dim_; ++d)
        if (!(x[d] >= lower(d) && x[d] <= upper(d))) return false;
    return true;
}

Domain Domain::enlarged(double delta) const {
    std::vector<double> lo(static_cast<size_t>(dim_)), hi(static_cast<size_t>(dim_));
    for (int d = 0; d < dim_; ++d) {
        lo[static_cast<size_t>(d)] = lower(d) - delta;
        hi[static_cast<size_t>(d)] = upper(d) + delta;
    }
    return Domain(lo, hi);
}

bool boxes_intersect(const Domain& a, const Domain& b) {
    if (a.dim() != b.dim()) return false;
    for (int d = 0; d < a.dim(); ++d)
        if (a.upper(d) <= b.lower(d) || b.upper(d) <= a.lower(d)) return false;
    return true;
}

Domain shrink(const Domain& domain, double r) {
    if (r < 0) throw std::invalid_argument("shrink: r must be nonnegative");
    if (!(r < 0.5 * domain.min_side()))
        throw std::invalid_argument("shrink: r leaves an empty interior");
    std::vector<double> lo(static_cast<size_t>(domain.dim())), hi(static_cast<size_t>(domain.dim()));
    for (int d = 0; d < domain.dim(); ++d) {
        lo[static_cast<size_t>(d)] = domain.lower(d) + r;
        hi[static_cast<size_t>(d)] = domain.upper(d) - r;
    }
    return Domain(lo, hi);
}

std::array<int, 2> Grid::multi_index(long node) const {
    if (dim() == 1) return {static_cast<int>(node), 0};
    return {static_cast<int>(node / stride_), static_cast<int>(node % stride_)};
}

Point Grid::point(long node) const {
    const auto mi = multi_index(node);
    Point p;
    p.dim = dim();
    for (int d = 0; d < dim(); ++d) p[d] = coord(d, mi[static_cast<size_t>(d)]);
    return p;
}

bool Grid::is_interior(long node) const {
    const auto mi = multi_index(node);
    for (int d = 0; d < dim(); ++d) {
        const int i = mi[static_cast<size_t>(d)];
        if (i <= collar_steps(d) || i >= collar_steps(d) + interior_steps(d)) return false;
    }
    return true;
}

bool Grid::in_omega_closure(long node) const {
    const auto mi = multi_index(node);
    for (int d = 0; d < dim(); ++d) {
        const int i = mi[static_cast<size_t>(d)];
        if (i < collar_steps(d) || i > collar_steps(d) + interior_steps(d)) return false;
    }
    return true;
}

double Grid::max_spacing() const {
    double h = spacing(0);
    for (int d = 1; d < dim(); ++d) h = std::max(h, spacing(d));
    return h;
}

Grid build_grid(const Domain& domain, const std::vector<int>& n, double delta) {
    if (!(delta > 0)) throw std::invalid_argument("build_grid: delta must be positive");
    if (static_cast<int>(n.size()) != domain.dim())
        throw std::invalid_argument("build_grid: n must have one entry per axis");

    Grid g;
    g.domain_ = domain;
    g.collar_width_ = delta;
    for (int d = 0; d < domain.dim(); ++d) {
        const int target = n[static_cast<size_t>(d)];
        if (target < 3) throw std::invalid_argument("build_grid: need at least 3 nodes per axis");
        const double span = domain.side(d) + 2.0 * delta;
        int chosen = 0, collar = 0;
        for (int cand = target; cand < target + 65536; ++cand) {
            const double h = span / (cand - 1);
            const int m = static_cast<int>(std::llround(delta / h));
            if (m < 1) continue;
            if (std::abs(m * h - delta) <= 1e-12 * std::max(1.0, delta)) {
                chosen = cand;
                collar = m;
                break;
            }
        }
        if (chosen == 0)
            throw std::invalid_argument("build_grid: no node count makes delta a multiple of the spacing");
        const int steps = (chosen - 1) - 2 * collar;
        if (steps < 3)
            throw std::invalid_argument("build_grid: fewer than 2 interior nodes on an axis");
        g.n_[static_cast<size_t>(d)] = chosen;
        g.h_[static_cast<size_t>(d)] = delta / collar;  // exact collar/spacing ratio
        g.m_[static_cast<size_t>(d)] = collar;
        g.steps_[static_cast<size_t>(d)] = steps;
    }
    g.stride_ = domain.dim() == 2 ? g.n_[1] : 1;
    g.count_ = static_cast<long>(g.n_[0]) * (domain.dim() == 2 ? g.n_[1] : 1);
    g.free_.reserve(static_cast<size_t>(g.count_));
    for (long i = 0; i < g.count_; ++i)
        if (g.is_interior(i)) g.free_.push_back(i);
    return g;
}

std::vector<Shell> pair_stencil(const Grid& grid, double delta) {
    if (!(delta > 0)) throw std::invalid_argument("pair_stencil: delta must be positive");
    if (delta > grid.collar_width() * (1.0 + 1e-12))
        throw std::invalid_argument("pair_stencil: horizon exceeds the grid collar");
    // Strictly-below-horizon cut; the guard keeps shells landing exactly on the
    // horizon out regardless of rounding in the coordinate arithmetic.
    const double cut = delta * (1.0 - 1e-12);
    std::vector<Shell> shells;
    const double h0 = grid.spacing(0);
    if (grid.dim() == 1) {
        for (int k = 1; k * h0 < cut; ++k)
            shells.push_back(Shell{{k, 0}, k * h0, grid.index(k, 0)});
        return shells;
    }
    const double h1 = grid.spacing(1);
    const int k0max = static_cast<int>(cut / h0) + 1;
    const int k1max = static_cast<int>(cut / h1) + 1;
    for (int k0 = 0; k0 <= k0max; ++k0) {
        for (int k1 = k0 == 0 ? 1 : -k1max; k1 <= k1max; ++k1) {
            const double r = std::hypot(k0 * h0, k1 * h1);
            if (r < cut) shells.push_back(Shell{{k0, k1}, r, grid.index(k0, k1)});
        }
    }
    std::sort(shells.begin(), shells.end(),
              [](const Shell& a, const Shell& b) { return a.jump < b.jump; });
    return shells;
}

std::vector<std::pair<long, long>> neighbor_pairs(const Grid& grid, double delta) {
    const auto shells = pair_stencil(grid, delta);
    std::vector<std::pair<long, long>> pairs;
    for_each_pair(grid, shells, [&](long i, long j, const Shell&) { pairs.emplace_back(i, j); });
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

}  // namespace nlpl
