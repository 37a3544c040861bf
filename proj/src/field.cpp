#include "nlpl/field.hpp"

#include <algorithm>
#include <stdexcept>

namespace nlpl {

ScalarField ScalarField::zeros(std::shared_ptr<const Grid> grid, bool constrain_collar) {
    if (!grid) throw std::invalid_argument("ScalarField: null grid");
    ScalarField f;
    f.grid_ = std::move(grid);
    f.values_.assign(static_cast<size_t>(f.grid_->node_count()), 0.0);
    f.constrained_.assign(static_cast<size_t>(f.grid_->node_count()), 0);
    if (constrain_collar)
        for (long i = 0; i < f.grid_->node_count(); ++i)
            if (!f.grid_->is_interior(i)) f.constrained_[static_cast<size_t>(i)] = 1;
    return f;
}

ScalarField ScalarField::sample(std::shared_ptr<const Grid> grid, const AnalyticField& fld) {
    ScalarField f = zeros(std::move(grid), false);
    for (long i = 0; i < f.grid_->node_count(); ++i)
        f.values_[static_cast<size_t>(i)] = fld.value(f.grid_->point(i));
    return f;
}

ScalarField ScalarField::sample_x0(std::shared_ptr<const Grid> grid, const AnalyticField& fld) {
    ScalarField f = zeros(std::move(grid), true);
    for (long i = 0; i < f.grid_->node_count(); ++i)
        if (f.grid_->is_interior(i)) f.values_[static_cast<size_t>(i)] = fld.value(f.grid_->point(i));
    return f;
}

void ScalarField::enforce_constraints() {
    for (size_t i = 0; i < values_.size(); ++i)
        if (constrained_[i]) values_[i] = 0.0;
}

namespace {

// Per-axis weights: each node owns the cell [c - h/2, c + h/2] clipped to the
// index interval [lo, hi] of the region, which gives h inside, h/2 on the
// region boundary and 0 outside. cell_average assembles the same numbers from
// per-cell halves.
std::vector<double> axis_weights(int n, double h, int lo, int hi, QuadratureScheme::Rule rule) {
    std::vector<double> w(static_cast<size_t>(n), 0.0);
    if (rule == QuadratureScheme::Rule::cell_average) {
        for (int i = lo; i < hi; ++i) {  // cells [i, i+1] inside the region
            w[static_cast<size_t>(i)] += 0.5 * h;
            w[static_cast<size_t>(i + 1)] += 0.5 * h;
        }
        return w;
    }
    for (int i = lo; i <= hi; ++i)
        w[static_cast<size_t>(i)] = (i == lo || i == hi) ? 0.5 * h : h;
    return w;
}

}  // namespace

std::vector<double> region_weights(const Grid& grid, Region region, const QuadratureScheme& q) {
    std::array<std::vector<double>, 2> axes;
    for (int d = 0; d < grid.dim(); ++d) {
        const int lo = region == Region::omega ? grid.collar_steps(d) : 0;
        const int hi = region == Region::omega ? grid.collar_steps(d) + grid.interior_steps(d)
                                               : grid.n(d) - 1;
        axes[static_cast<size_t>(d)] = axis_weights(grid.n(d), grid.spacing(d), lo, hi, q.rule);
    }
    std::vector<double> w(static_cast<size_t>(grid.node_count()));
    for (long i = 0; i < grid.node_count(); ++i) {
        const auto mi = grid.multi_index(i);
        double v = axes[0][static_cast<size_t>(mi[0])];
        if (grid.dim() == 2) v *= axes[1][static_cast<size_t>(mi[1])];
        w[static_cast<size_t>(i)] = v;
    }
    return w;
}

std::vector<double> box_weights(const Grid& grid, const Domain& box) {
    if (box.dim() != grid.dim()) throw std::invalid_argument("box_weights: dimension mismatch");
    std::array<std::vector<double>, 2> axes;
    for (int d = 0; d < grid.dim(); ++d) {
        const double h = grid.spacing(d);
        std::vector<double> w(static_cast<size_t>(grid.n(d)), 0.0);
        for (int i = 0; i < grid.n(d); ++i) {
            const double c = grid.coord(d, i);
            const double lo = std::max(c - 0.5 * h, box.lower(d));
            const double hi = std::min(c + 0.5 * h, box.upper(d));
            if (hi > lo) w[static_cast<size_t>(i)] = hi - lo;
        }
        axes[static_cast<size_t>(d)] = std::move(w);
    }
    std::vector<double> w(static_cast<size_t>(grid.node_count()));
    for (long i = 0; i < grid.node_count(); ++i) {
        const auto mi = grid.multi_index(i);
        double v = axes[0][static_cast<size_t>(mi[0])];
        if (grid.dim() == 2) v *= axes[1][static_cast<size_t>(mi[1])];
        w[static_cast<size_t>(i)] = v;
    }
    return w;
}

}  // namespace nlpl
