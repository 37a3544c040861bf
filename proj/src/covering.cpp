#include "nlpl/covering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlpl {

Domain piece_box(const Domain& omega, const CoverPiece& piece) {
    std::vector<double> lo(static_cast<size_t>(omega.dim())), hi(static_cast<size_t>(omega.dim()));
    for (int d = 0; d < omega.dim(); ++d) {
        lo[static_cast<size_t>(d)] = piece.a[d] + piece.eps * omega.lower(d);
        hi[static_cast<size_t>(d)] = piece.a[d] + piece.eps * omega.upper(d);
    }
    return Domain(lo, hi);
}

namespace {

struct Cell {
    Point corner;  // lower corner of the cell box
    double eps;
};

CoverPiece to_piece(const Domain& omega, const Cell& cell) {
    // cell box = a + eps * Omega-bar, so a = corner - eps * lower.
    Point a;
    a.dim = omega.dim();
    for (int d = 0; d < omega.dim(); ++d) a[d] = cell.corner[d] - cell.eps * omega.lower(d);
    return CoverPiece{a, cell.eps};
}

double probe_oscillation(const Domain& omega, const Cell& cell,
                         const std::function<double(const Point&)>& f) {
    // 9 points in 1D, 5x5 in 2D, on the closed cell; the translation point a is
    // probed as well since Eq.-style sums sample f there.
    const int per_axis = omega.dim() == 1 ? 9 : 5;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    const auto visit = [&](const Point& x) {
        const double v = f(x);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    };
    if (omega.dim() == 1) {
        for (int i = 0; i < per_axis; ++i) {
            Point x = Point::of(cell.corner[0] + cell.eps * omega.side(0) * i / (per_axis - 1));
            visit(x);
        }
    } else {
        for (int i = 0; i < per_axis; ++i)
            for (int j = 0; j < per_axis; ++j)
                visit(Point::of(cell.corner[0] + cell.eps * omega.side(0) * i / (per_axis - 1),
                                cell.corner[1] + cell.eps * omega.side(1) * j / (per_axis - 1)));
    }
    const CoverPiece piece = to_piece(omega, cell);
    if (omega.contains_closure(piece.a)) visit(piece.a);
    return hi - lo;
}

}  // namespace

Cover build_vitali_cover(const Domain& omega, const std::function<double(const Point&)>& f, int k,
                         double residual_tol, int max_depth) {
    if (k < 1) throw std::invalid_argument("build_vitali_cover: k must be >= 1");
    if (!(residual_tol > 0))
        throw std::invalid_argument("build_vitali_cover: residual_tol must be positive");

    Cover cover;
    cover.omega = omega;
    cover.k = k;

    Point root;
    root.dim = omega.dim();
    for (int d = 0; d < omega.dim(); ++d) root[d] = omega.lower(d);
    std::vector<Cell> level{Cell{root, 1.0}};
    const double threshold = 1.0 / k;

    for (int depth = 0; depth <= max_depth; ++depth) {
        std::vector<Cell> next;
        for (const Cell& cell : level) {
            if (1.1 * probe_oscillation(omega, cell, f) <= threshold) {
                cover.pieces.push_back(to_piece(omega, cell));
            } else {
                const double child_eps = 0.5 * cell.eps;
                const int kids1 = omega.dim() == 2 ? 2 : 1;
                for (int i = 0; i < 2; ++i) {
                    for (int j = 0; j < kids1; ++j) {
                        Cell child{cell.corner, child_eps};
                        child.corner[0] += i * child_eps * omega.side(0);
                        if (omega.dim() == 2) child.corner[1] += j * child_eps * omega.side(1);
                        next.push_back(child);
                    }
                }
            }
        }
        const double cell_measure =
            omega.measure() * std::pow(0.5, (depth + 1) * omega.dim());
        const double uncovered = cell_measure * static_cast<double>(next.size());
        cover.uncovered_by_depth.push_back(uncovered);
        if (uncovered <= residual_tol) {
            cover.residual_measure = uncovered;
            return cover;
        }
        level = std::move(next);
    }
    throw std::runtime_error(
        "build_vitali_cover: oscillation criterion not met within the depth cap; "
        "the field is effectively discontinuous at probe resolution");
}

Cover build_vitali_cover(const Domain& omega, const AnalyticField& f, int k, double residual_tol,
                         int max_depth) {
    return build_vitali_cover(
        omega, [&f](const Point& x) { return f.value(x); }, k, residual_tol, max_depth);
}

Cover build_vitali_cover(const Domain& omega, const Coefficient& f, int k, double residual_tol,
                         int max_depth) {
    return build_vitali_cover(
        omega, [&f](const Point& x) { return f.eval(x); }, k, residual_tol, max_depth);
}

double partition_error(const Cover& cover, const AnalyticField& f, const AnalyticField& xi) {
    const double whole = integrate_product(f, xi, cover.omega);
    double pieces = 0.0;
    for (const CoverPiece& piece : cover.pieces)
        pieces += f.value(piece.a) * xi.integral(piece_box(cover.omega, piece));
    return std::abs(whole - pieces);
}

bool pieces_disjoint(const Cover& cover) {
    for (size_t i = 0; i < cover.pieces.size(); ++i)
        for (size_t j = i + 1; j < cover.pieces.size(); ++j)
            if (boxes_intersect(piece_box(cover.omega, cover.pieces[i]),
                                piece_box(cover.omega, cover.pieces[j])))
                return false;
    return true;
}

}  // namespace nlpl
