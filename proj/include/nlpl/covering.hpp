#pragma once

#include <functional>
#include <vector>

#include "nlpl/analytic.hpp"
#include "nlpl/coefficient.hpp"
#include "nlpl/domain.hpp"

namespace nlpl {

/// One scaled copy a + eps * Omega-bar of the reference domain.
struct CoverPiece {
    Point a;
    double eps;
};

Domain piece_box(const Domain& omega, const CoverPiece& piece);

/// A disjoint family of scaled copies of Omega on which the target field
/// oscillates by at most 1/k, together with the measure left uncovered.
struct Cover {
    Domain omega = Domain::interval(0.0, 1.0);
    int k = 1;
    std::vector<CoverPiece> pieces;
    double residual_measure = 0.0;
    std::vector<double> uncovered_by_depth;  // diagnostic: refinement monotonicity
};

/// Greedy dyadic scheme: subdivide Omega into scaled copies, accept a cell once
/// the probe-grid oscillation of f (with a 1.1 safety factor) is at most 1/k,
/// and stop as soon as the still-uncovered measure drops to residual_tol.
/// Throws if the criterion is not met anywhere by max_depth subdivisions.
Cover build_vitali_cover(const Domain& omega, const std::function<double(const Point&)>& f, int k,
                         double residual_tol, int max_depth = 40);
Cover build_vitali_cover(const Domain& omega, const AnalyticField& f, int k, double residual_tol,
                         int max_depth = 40);
Cover build_vitali_cover(const Domain& omega, const Coefficient& f, int k, double residual_tol,
                         int max_depth = 40);

/// | integral of f xi over Omega  -  sum_i f(a_i) integral of xi over piece_i |.
/// Contract: at most (1/k) |xi|_L1 + sup|f| sup|xi| residual + quadrature error.
double partition_error(const Cover& cover, const AnalyticField& f, const AnalyticField& xi);

/// Exact pairwise open-box disjointness of the pieces.
bool pieces_disjoint(const Cover& cover);

}  // namespace nlpl
