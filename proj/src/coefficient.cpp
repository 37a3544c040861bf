#include "nlpl/coefficient.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "nlpl/quadrature.hpp"

namespace nlpl {

namespace {

bool in_half_open(const Domain& box, const Domain& omega, const Point& x) {
    // Half-open on the right except at the top face of Omega, where the block
    // keeps its boundary points ("3 on [0.5, 1]").
    for (int d = 0; d < box.dim(); ++d) {
        if (x[d] < box.lower(d)) return false;
        if (x[d] > box.upper(d)) return false;
        if (x[d] == box.upper(d) && box.upper(d) != omega.upper(d)) return false;
    }
    return true;
}

}  // namespace

Coefficient Coefficient::closed_form(const AnalyticField& field, const Domain& omega) {
    Coefficient c;
    c.kind_ = CoefficientKind::closed_form;
    c.omega_ = omega;
    c.field_ = field;
    c.h_min_ = field.min_value(omega);
    c.h_max_ = field.max_value(omega);
    c.spec_ = field.spec();
    if (!(c.h_min_ > 0))
        throw std::invalid_argument("Coefficient: h must be positive on Omega");
    return c;
}

Coefficient Coefficient::simple(std::vector<SimpleBlock> blocks, const Domain& omega) {
    if (blocks.empty()) throw std::invalid_argument("Coefficient: need at least one block");
    for (size_t i = 0; i < blocks.size(); ++i)
        for (size_t j = i + 1; j < blocks.size(); ++j)
            if (boxes_intersect(blocks[i].box, blocks[j].box))
                throw std::invalid_argument("Coefficient: simple blocks must be disjoint");
    Coefficient c;
    c.kind_ = CoefficientKind::simple;
    c.omega_ = omega;
    c.blocks_ = std::move(blocks);
    c.h_min_ = c.blocks_[0].value;
    c.h_max_ = c.blocks_[0].value;
    double covered = 0.0;
    for (const auto& b : c.blocks_) {
        if (!(b.value > 0)) throw std::invalid_argument("Coefficient: block values must be positive");
        c.h_min_ = std::min(c.h_min_, b.value);
        c.h_max_ = std::max(c.h_max_, b.value);
        covered += b.box.measure();
    }
    // The blocks must partition Omega up to measure zero.
    if (std::abs(covered - omega.measure()) > 1e-9 * omega.measure())
        throw std::invalid_argument("Coefficient: simple blocks must cover Omega");
    c.spec_ = "simple";
    return c;
}

Coefficient Coefficient::uniform_cells(std::vector<double> cell_values, int cells,
                                       const Domain& omega) {
    if (cells < 1) throw std::invalid_argument("uniform_cells: cells must be >= 1");
    const int n1 = omega.dim() == 2 ? cells : 1;
    if (static_cast<int>(cell_values.size()) != cells * n1)
        throw std::invalid_argument("uniform_cells: one value per cell required");
    std::vector<SimpleBlock> blocks;
    std::vector<int> cell_block;
    for (int i = 0; i < cells; ++i) {
        for (int j = 0; j < n1; ++j) {
            const double lo0 = omega.lower(0) + omega.side(0) * i / cells;
            const double hi0 = omega.lower(0) + omega.side(0) * (i + 1) / cells;
            Domain box = omega.dim() == 1
                             ? Domain::interval(lo0, hi0)
                             : Domain::box2(lo0, hi0, omega.lower(1) + omega.side(1) * j / n1,
                                            omega.lower(1) + omega.side(1) * (j + 1) / n1);
            blocks.push_back({box, cell_values[static_cast<size_t>(i * n1 + j)]});
            cell_block.push_back(static_cast<int>(blocks.size()) - 1);
        }
    }
    Coefficient c;
    c.kind_ = CoefficientKind::simple;
    c.omega_ = omega;
    c.blocks_ = std::move(blocks);
    c.h_min_ = c.blocks_[0].value;
    c.h_max_ = c.blocks_[0].value;
    for (const auto& b : c.blocks_) {
        if (!(b.value > 0))
            throw std::invalid_argument("uniform_cells: values must be positive");
        c.h_min_ = std::min(c.h_min_, b.value);
        c.h_max_ = std::max(c.h_max_, b.value);
    }
    c.uniform_ = true;
    c.cells_per_axis_ = cells;
    c.cell_block_ = std::move(cell_block);
    c.spec_ = "uniform_cells";
    return c;
}

Coefficient Coefficient::checkerboard(double v1, double v2, int cells, const Domain& omega) {
    const int n1 = omega.dim() == 2 ? cells : 1;
    std::vector<double> values;
    for (int i = 0; i < cells; ++i)
        for (int j = 0; j < n1; ++j) values.push_back((i + j) % 2 == 0 ? v1 : v2);
    Coefficient c = uniform_cells(std::move(values), cells, omega);
    c.spec_ = "checkerboard:" + std::to_string(v1) + "," + std::to_string(v2) + "," +
              std::to_string(cells);
    return c;
}

Coefficient Coefficient::sampled(std::shared_ptr<const Grid> grid, std::vector<double> samples,
                                 const Domain& omega) {
    if (!grid || static_cast<long>(samples.size()) != grid->node_count())
        throw std::invalid_argument("Coefficient::sampled: one sample per node required");
    Coefficient c;
    c.kind_ = CoefficientKind::sampled;
    c.omega_ = omega;
    c.grid_ = std::move(grid);
    c.samples_ = std::move(samples);
    c.h_min_ = *std::min_element(c.samples_.begin(), c.samples_.end());
    c.h_max_ = *std::max_element(c.samples_.begin(), c.samples_.end());
    c.spec_ = "sampled";
    return c;
}

Coefficient Coefficient::parse(const std::string& spec, const Domain& omega) {
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (head == "const" || head == "affine") {
        Coefficient c = closed_form(AnalyticField::parse(spec, omega.dim()), omega);
        c.spec_ = spec;
        return c;
    }
    if (head == "checkerboard") {
        std::stringstream ss(args);
        std::string a, b, n;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, n))
            throw std::invalid_argument("checkerboard:<v1>,<v2>,<cells>");
        return checkerboard(std::stod(a), std::stod(b), std::stoi(n), omega);
    }
    if (head == "simple") {
        if (omega.dim() != 1)
            throw std::invalid_argument("simple:<spec> blocks are 1D; use checkerboard in 2D");
        std::vector<SimpleBlock> blocks;
        std::stringstream ss(args);
        std::string item;
        while (std::getline(ss, item, ';')) {
            std::stringstream bs(item);
            std::string lo, hi, v;
            if (!std::getline(bs, lo, ',') || !std::getline(bs, hi, ',') || !std::getline(bs, v))
                throw std::invalid_argument("simple block needs lo,hi,value");
            blocks.push_back({Domain::interval(std::stod(lo), std::stod(hi)), std::stod(v)});
        }
        Coefficient c = simple(std::move(blocks), omega);
        c.spec_ = spec;
        return c;
    }
    throw std::invalid_argument("unknown coefficient spec '" + spec + "'");
}

int Coefficient::block_index(const Point& x) const {
    if (uniform_) {
        long cell = 0;
        for (int d = 0; d < omega_.dim(); ++d) {
            double t = (x[d] - omega_.lower(d)) / omega_.side(d) * cells_per_axis_;
            int i = static_cast<int>(std::floor(t));
            if (i == cells_per_axis_ && x[d] == omega_.upper(d)) --i;  // closure at the top face
            if (i < 0 || i >= cells_per_axis_) return -1;
            cell = cell * cells_per_axis_ + i;
        }
        return cell_block_[static_cast<size_t>(cell)];
    }
    for (size_t i = 0; i < blocks_.size(); ++i)
        if (in_half_open(blocks_[i].box, omega_, x)) return static_cast<int>(i);
    return -1;
}

double Coefficient::interpolate(const Point& x) const {
    // Multilinear interpolation of the nodal samples.
    const Grid& g = *grid_;
    std::array<int, 2> base{0, 0};
    std::array<double, 2> frac{0.0, 0.0};
    for (int d = 0; d < g.dim(); ++d) {
        const double t = (x[d] - g.coord(d, 0)) / g.spacing(d);
        int i = static_cast<int>(std::floor(t));
        i = std::clamp(i, 0, g.n(d) - 2);
        base[static_cast<size_t>(d)] = i;
        frac[static_cast<size_t>(d)] = std::clamp(t - i, 0.0, 1.0);
    }
    if (g.dim() == 1) {
        const double a = samples_[static_cast<size_t>(g.index(base[0]))];
        const double b = samples_[static_cast<size_t>(g.index(base[0] + 1))];
        return a + frac[0] * (b - a);
    }
    const double f00 = samples_[static_cast<size_t>(g.index(base[0], base[1]))];
    const double f01 = samples_[static_cast<size_t>(g.index(base[0], base[1] + 1))];
    const double f10 = samples_[static_cast<size_t>(g.index(base[0] + 1, base[1]))];
    const double f11 = samples_[static_cast<size_t>(g.index(base[0] + 1, base[1] + 1))];
    const double a = f00 + frac[1] * (f01 - f00);
    const double b = f10 + frac[1] * (f11 - f10);
    return a + frac[0] * (b - a);
}

namespace {

// Snaps coordinates sitting within one part in 1e12 of the closure boundary
// onto it, so grid nodes whose coordinates carry rounding jitter land exactly
// on Omega-bar.
Point snap_to_closure(const Domain& omega, Point x) {
    for (int d = 0; d < omega.dim(); ++d) {
        const double tol =
            1e-12 * std::max({1.0, std::abs(omega.lower(d)), std::abs(omega.upper(d))});
        if (x[d] > omega.upper(d) && x[d] <= omega.upper(d) + tol) x[d] = omega.upper(d);
        if (x[d] < omega.lower(d) && x[d] >= omega.lower(d) - tol) x[d] = omega.lower(d);
    }
    return x;
}

}  // namespace

double Coefficient::eval(const Point& x) const {
    if (x.dim != omega_.dim()) throw std::invalid_argument("Coefficient::eval: dim mismatch");
    const Point p = snap_to_closure(omega_, x);
    if (!omega_.contains_closure(p)) return 0.0;
    switch (kind_) {
        case CoefficientKind::closed_form:
            return field_.value(p);
        case CoefficientKind::simple: {
            const int b = block_index(p);
            return b < 0 ? 0.0 : blocks_[static_cast<size_t>(b)].value;
        }
        case CoefficientKind::sampled:
            return interpolate(p);
    }
    return 0.0;
}

double Coefficient::midpoint(const Point& x1, const Point& x2) const {
    return 0.5 * (eval(x1) + eval(x2));
}

std::vector<double> Coefficient::sample_nodes(const Grid& grid) const {
    std::vector<double> out(static_cast<size_t>(grid.node_count()));
    for (long i = 0; i < grid.node_count(); ++i)
        out[static_cast<size_t>(i)] = grid.in_omega_closure(i) ? eval(grid.point(i)) : 0.0;
    return out;
}

std::vector<int> Coefficient::block_of_nodes(const Grid& grid) const {
    if (kind_ != CoefficientKind::simple)
        throw std::logic_error("block_of_nodes: coefficient is not simple");
    std::vector<int> out(static_cast<size_t>(grid.node_count()), -1);
    for (long i = 0; i < grid.node_count(); ++i) {
        if (!grid.in_omega_closure(i)) continue;
        out[static_cast<size_t>(i)] = block_index(snap_to_closure(omega_, grid.point(i)));
    }
    return out;
}

Mollifier::Mollifier(double radius, int dim) : radius_(radius), dim_(dim) {
    if (!(radius > 0)) throw std::invalid_argument("Mollifier: radius must be positive");
    if (dim != 1 && dim != 2) throw std::invalid_argument("Mollifier: dim must be 1 or 2");
    const auto bump = [](double t) { return t < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0; };
    double mass;
    if (dim == 1)
        mass = 2.0 * integrate([&](double t) { return bump(t); }, 0.0, 1.0, 1e-14);
    else
        mass = 2.0 * std::numbers::pi *
               integrate([&](double t) { return bump(t) * t; }, 0.0, 1.0, 1e-14);
    norm_ = 1.0 / mass;
}

double Mollifier::eval(const Point& x) const {
    double s = 0.0;
    for (int d = 0; d < dim_; ++d) s += x[d] * x[d];
    const double t2 = s / (radius_ * radius_);
    if (t2 >= 1.0) return 0.0;
    return norm_ * std::exp(-1.0 / (1.0 - t2)) / std::pow(radius_, dim_);
}

double Mollifier::mass() const {
    const double surf = dim_ == 1 ? 2.0 : 2.0 * std::numbers::pi;
    return surf * integrate(
                      [&](double r) {
                          Point p = Point::of(r, 0.0);
                          p.dim = dim_;
                          return eval(p) * std::pow(r, dim_ - 1);
                      },
                      0.0, radius_, 1e-13);
}

Coefficient mollify(const Coefficient& h, const Mollifier& m, const Grid& grid) {
    if (m.dim() != grid.dim()) throw std::invalid_argument("mollify: dimension mismatch");
    if (!(m.radius() < grid.collar_width()))
        throw std::invalid_argument("mollify: radius must be below the grid collar");
    const int order = 32;
    const GaussRule& rule = gauss_legendre(order);
    const double r = m.radius();

    // Normalized convolution weights: values become convex combinations of h
    // samples, so bounds are preserved exactly and constants are reproduced.
    std::vector<Point> offsets;
    std::vector<double> weights;
    if (grid.dim() == 1) {
        for (int k = 0; k < order; ++k) {
            Point s = Point::of(r * rule.nodes[static_cast<size_t>(k)]);
            const double w = rule.weights[static_cast<size_t>(k)] * m.eval(s);
            if (w > 0) {
                offsets.push_back(s);
                weights.push_back(w);
            }
        }
    } else {
        for (int k = 0; k < order; ++k) {
            for (int l = 0; l < order; ++l) {
                Point s = Point::of(r * rule.nodes[static_cast<size_t>(k)],
                                    r * rule.nodes[static_cast<size_t>(l)]);
                const double w = rule.weights[static_cast<size_t>(k)] *
                                 rule.weights[static_cast<size_t>(l)] * m.eval(s);
                if (w > 0) {
                    offsets.push_back(s);
                    weights.push_back(w);
                }
            }
        }
    }
    double total = 0.0;
    for (double w : weights) total += w;
    for (double& w : weights) w /= total;

    std::vector<double> samples(static_cast<size_t>(grid.node_count()));
    for (long i = 0; i < grid.node_count(); ++i) {
        const Point x = grid.point(i);
        double acc = 0.0;
        for (size_t k = 0; k < offsets.size(); ++k) {
            Point y = x;
            for (int d = 0; d < grid.dim(); ++d) y[d] -= offsets[k][d];
            acc += weights[k] * h.eval(y);
        }
        samples[static_cast<size_t>(i)] = acc;
    }
    return Coefficient::sampled(std::make_shared<Grid>(grid), std::move(samples), h.omega());
}

Coefficient simple_approx(const Coefficient& h, int levels, int cells_per_axis) {
    if (levels < 1) throw std::invalid_argument("simple_approx: levels must be >= 1");
    if (cells_per_axis < 1) throw std::invalid_argument("simple_approx: cells must be >= 1");
    const Domain& omega = h.omega();
    const double lo = h.h_min(), span = h.h_max() - h.h_min();

    const auto stair = [&](double y) {
        if (span == 0.0) return lo;
        const double step = span / levels;
        double s = lo + std::floor((y - lo) / step) * step;
        return std::clamp(s, lo, h.h_max());
    };

    std::vector<double> values;
    const int cells = cells_per_axis;
    const int n1 = omega.dim() == 2 ? cells : 1;
    for (int i = 0; i < cells; ++i) {
        for (int j = 0; j < n1; ++j) {
            const double lo0 = omega.lower(0) + omega.side(0) * i / cells;
            const double hi0 = omega.lower(0) + omega.side(0) * (i + 1) / cells;
            Domain box = omega.dim() == 1
                             ? Domain::interval(lo0, hi0)
                             : Domain::box2(lo0, hi0, omega.lower(1) + omega.side(1) * j / n1,
                                            omega.lower(1) + omega.side(1) * (j + 1) / n1);
            // Minimum of h over the cell probes; the staircase of a lower bound
            // stays below h on the whole cell for the shipped fixtures.
            double ymin;
            if (omega.dim() == 1) {
                ymin = std::min({h.eval(Point::of(box.lower(0))),
                                 h.eval(Point::of(0.5 * (box.lower(0) + box.upper(0)))),
                                 h.eval(Point::of(box.upper(0)))});
            } else {
                ymin = std::min({h.eval(Point::of(box.lower(0), box.lower(1))),
                                 h.eval(Point::of(box.lower(0), box.upper(1))),
                                 h.eval(Point::of(box.upper(0), box.lower(1))),
                                 h.eval(Point::of(box.upper(0), box.upper(1))),
                                 h.eval(Point::of(0.5 * (box.lower(0) + box.upper(0)),
                                                  0.5 * (box.lower(1) + box.upper(1))))});
            }
            values.push_back(stair(ymin));
        }
    }
    return Coefficient::uniform_cells(std::move(values), cells, omega);
}

bool check_bounds(const Coefficient& h, int samples, unsigned seed, Point* violator) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Domain& omega = h.omega();
    for (int s = 0; s < samples; ++s) {
        Point x;
        x.dim = omega.dim();
        for (int d = 0; d < omega.dim(); ++d)
            x[d] = omega.lower(d) + unit(rng) * omega.side(d);
        const double v = h.eval(x);
        if (!(v >= h.h_min() - 1e-12 && v <= h.h_max() + 1e-12)) {
            if (violator) *violator = x;
            return false;
        }
    }
    return true;
}

}  // namespace nlpl
