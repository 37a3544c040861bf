#pragma once

#include <memory>
#include <string>
#include <vector>

#include "nlpl/analytic.hpp"
#include "nlpl/domain.hpp"

namespace nlpl {

class Grid;

enum class CoefficientKind { closed_form, simple, sampled };

struct SimpleBlock {
    Domain box;
    double value;
};

/// A coefficient field of class H: values in [h_min, h_max] on Omega, zero
/// outside. Boundary points take the value from the closure (so a block
/// written as [0.5, 1] keeps its value at x = 1); strictly outside the closure
/// the field is zero. Immutable; all evaluation is pure.
class Coefficient {
public:
    static Coefficient closed_form(const AnalyticField& field, const Domain& omega);
    static Coefficient simple(std::vector<SimpleBlock> blocks, const Domain& omega);
    /// Simple coefficient on cells^dim equal half-open cells, one value per
    /// cell in row-major order; evaluation uses O(1) cell lookup.
    static Coefficient uniform_cells(std::vector<double> cell_values, int cells,
                                     const Domain& omega);
    /// cells^dim equal half-open cells with values alternating by cell parity.
    static Coefficient checkerboard(double v1, double v2, int cells, const Domain& omega);
    static Coefficient sampled(std::shared_ptr<const Grid> grid, std::vector<double> samples,
                               const Domain& omega);
    /// "const:<v>" | "affine:<a>,<b>" | "checkerboard:<v1>,<v2>,<cells>" |
    /// "simple:lo,hi,value;lo,hi,value;..." (1D blocks)
    static Coefficient parse(const std::string& spec, const Domain& omega);

    CoefficientKind kind() const { return kind_; }
    const Domain& omega() const { return omega_; }
    double h_min() const { return h_min_; }
    double h_max() const { return h_max_; }
    const std::string& spec() const { return spec_; }
    const std::vector<SimpleBlock>& blocks() const { return blocks_; }

    /// eval_h: the field value at x (zero strictly outside the closure of Omega).
    double eval(const Point& x) const;
    /// midpoint_H(x1, x2) = (h(x1) + h(x2)) / 2; symmetric by construction.
    double midpoint(const Point& x1, const Point& x2) const;

    /// Values at every grid node (the fast path for energy assembly).
    std::vector<double> sample_nodes(const Grid& grid) const;
    /// Index of the block containing each grid node, -1 when none (simple kind).
    std::vector<int> block_of_nodes(const Grid& grid) const;

private:
    CoefficientKind kind_ = CoefficientKind::closed_form;
    Domain omega_ = Domain::interval(0.0, 1.0);
    double h_min_ = 0.0, h_max_ = 0.0;
    std::string spec_;

    AnalyticField field_ = AnalyticField::constant(0.0);  // closed_form
    std::vector<SimpleBlock> blocks_;                     // simple
    // Uniform-cell acceleration for simple coefficients built on regular cells.
    bool uniform_ = false;
    int cells_per_axis_ = 0;
    std::vector<int> cell_block_;                         // cell -> block index

    std::shared_ptr<const Grid> grid_;                    // sampled
    std::vector<double> samples_;

    int block_index(const Point& x) const;  // -1 when x is in no block
    double interpolate(const Point& x) const;
};

/// Smooth radial bump exp(-1/(1-|x|^2)) scaled to radius r and unit mass.
class Mollifier {
public:
    Mollifier(double radius, int dim);

    double radius() const { return radius_; }
    int dim() const { return dim_; }
    /// eta_r(x) = r^{-dim} eta(x / r).
    double eval(const Point& x) const;
    /// Quadrature of the mass integral (a self-test; equals 1 up to tolerance).
    double mass() const;

private:
    double radius_;
    int dim_;
    double norm_;  // normalization of the unscaled unit bump
};

/// Nodal samples of eta_r * h on the grid, returned as a sampled coefficient.
/// The discrete convolution weights are normalized, so values are convex
/// combinations of h samples and stay inside [0, h_max]. Requires r < collar.
Coefficient mollify(const Coefficient& h, const Mollifier& m, const Grid& grid);

/// Lower staircase with `levels` steps, realized as a simple coefficient on
/// cells_per_axis^dim uniform cells. Each cell takes the staircase value of the
/// minimum of h over its probe points, so s <= h pointwise and s_m <= s_{2m}.
Coefficient simple_approx(const Coefficient& h, int levels, int cells_per_axis = 256);

/// Spot-check that h stays inside [h_min, h_max] on `samples` random points of
/// Omega; returns the first violating point, if any.
bool check_bounds(const Coefficient& h, int samples, unsigned seed, Point* violator = nullptr);

}  // namespace nlpl
