#pragma once

#include <memory>
#include <vector>

#include "nlpl/analytic.hpp"
#include "nlpl/domain.hpp"

namespace nlpl {

/// Node-based quadrature of the double and single integrals. Both rules give
/// each node the measure of its cell clipped to the integration region; on the
/// collar-aligned grids built here they produce identical tensor-trapezoid
/// weights, arrived at by different bookkeeping.
struct QuadratureScheme {
    enum class Rule { node_midpoint, cell_average };
    enum class DiagonalPolicy { skip };
    Rule rule = Rule::node_midpoint;
    DiagonalPolicy diagonal = DiagonalPolicy::skip;
};

enum class Region { omega, omega_delta };

/// Nodal values on a grid with an X_0 constraint mask. Constrained entries are
/// forced to zero; fixed analytic fields are stored unconstrained.
class ScalarField {
public:
    static ScalarField zeros(std::shared_ptr<const Grid> grid, bool constrain_collar = true);
    /// Samples f at every node; no constraint mask (u need not vanish outside).
    static ScalarField sample(std::shared_ptr<const Grid> grid, const AnalyticField& f);
    /// Samples f at interior nodes, zero on the collar, constrained there.
    static ScalarField sample_x0(std::shared_ptr<const Grid> grid, const AnalyticField& f);

    const Grid& grid() const { return *grid_; }
    std::shared_ptr<const Grid> grid_ptr() const { return grid_; }
    long size() const { return static_cast<long>(values_.size()); }

    double operator[](long i) const { return values_[static_cast<size_t>(i)]; }
    double& operator[](long i) { return values_[static_cast<size_t>(i)]; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    bool constrained(long i) const { return constrained_[static_cast<size_t>(i)] != 0; }
    const std::vector<uint8_t>& mask() const { return constrained_; }

    /// Zeroes every constrained entry (discrete X_0 membership).
    void enforce_constraints();
    bool same_grid(const ScalarField& other) const { return grid_ == other.grid_; }

private:
    std::shared_ptr<const Grid> grid_;
    std::vector<double> values_;
    std::vector<uint8_t> constrained_;
};

/// Per-node quadrature weights for the region; weights sum to its measure.
std::vector<double> region_weights(const Grid& grid, Region region,
                                   const QuadratureScheme& q = {});

/// Weights for an arbitrary box region (used for energies on shrunken domains).
std::vector<double> box_weights(const Grid& grid, const Domain& box);

}  // namespace nlpl
