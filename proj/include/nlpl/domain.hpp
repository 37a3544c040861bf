#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace nlpl {

/// A point in 1 or 2 dimensions. Cheap to copy; unused coordinates are zero.
struct Point {
    std::array<double, 2> v{0.0, 0.0};
    int dim = 1;

    double operator[](int i) const { return v[static_cast<size_t>(i)]; }
    double& operator[](int i) { return v[static_cast<size_t>(i)]; }

    static Point of(double x) { return Point{{x, 0.0}, 1}; }
    static Point of(double x, double y) { return Point{{x, y}, 2}; }
};

double distance(const Point& a, const Point& b);

/// An open axis-aligned box in R^1 or R^2.
class Domain {
public:
    Domain(std::vector<double> lower, std::vector<double> upper);
    static Domain interval(double lo, double hi);
    static Domain box2(double lo0, double hi0, double lo1, double hi1);

    int dim() const { return dim_; }
    double lower(int d) const { return lo_[static_cast<size_t>(d)]; }
    double upper(int d) const { return hi_[static_cast<size_t>(d)]; }
    double side(int d) const { return hi_[static_cast<size_t>(d)] - lo_[static_cast<size_t>(d)]; }
    double measure() const;
    double min_side() const;

    bool contains(const Point& x) const;          // strictly inside
    bool contains_closure(const Point& x) const;  // inside or on the boundary

    /// Box fattened by delta per axis (the enlarged set carrying the collar).
    Domain enlarged(double delta) const;

private:
    int dim_;
    std::array<double, 2> lo_{0.0, 0.0};
    std::array<double, 2> hi_{0.0, 0.0};
};

/// Open-interior intersection test; adjacent boxes sharing a face do not intersect.
bool boxes_intersect(const Domain& a, const Domain& b);

/// The box [lower + r, upper - r]. Throws if r leaves no interior.
Domain shrink(const Domain& domain, double r);

enum class NodeClass : uint8_t { interior, collar };

/// Uniform tensor grid over the delta-enlarged box. The collar width is an
/// exact integer multiple of the spacing on every axis, so node classification
/// and region membership reduce to index arithmetic.
class Grid {
public:
    int dim() const { return domain_.dim(); }
    const Domain& domain() const { return domain_; }
    double collar_width() const { return collar_width_; }

    int n(int d) const { return n_[static_cast<size_t>(d)]; }
    double spacing(int d) const { return h_[static_cast<size_t>(d)]; }
    double max_spacing() const;
    int collar_steps(int d) const { return m_[static_cast<size_t>(d)]; }
    int interior_steps(int d) const { return steps_[static_cast<size_t>(d)]; }

    long node_count() const { return count_; }
    long index(int i0, int i1 = 0) const { return i0 * stride_ + i1; }
    std::array<int, 2> multi_index(long node) const;
    double coord(int d, int i) const {
        return domain_.lower(d) + (i - m_[static_cast<size_t>(d)]) * h_[static_cast<size_t>(d)];
    }
    Point point(long node) const;

    /// Interior means strictly inside Omega; nodes on the boundary belong to
    /// the collar (the constraint set is closed).
    bool is_interior(long node) const;
    NodeClass node_class(long node) const {
        return is_interior(node) ? NodeClass::interior : NodeClass::collar;
    }
    bool in_omega_closure(long node) const;

    /// Interior node indices in ascending order.
    const std::vector<long>& free_nodes() const { return free_; }

    friend Grid build_grid(const Domain& domain, const std::vector<int>& n, double delta);

private:
    Domain domain_ = Domain::interval(0.0, 1.0);
    double collar_width_ = 0.0;
    std::array<int, 2> n_{1, 1};       // nodes per axis
    std::array<double, 2> h_{0.0, 0.0};
    std::array<int, 2> m_{0, 0};       // collar steps per axis (delta / h)
    std::array<int, 2> steps_{0, 0};   // interior steps per axis (side / h)
    long stride_ = 1;
    long count_ = 0;
    std::vector<long> free_;
};

/// Builds the grid, raising the per-axis node count as little as needed to make
/// delta an exact multiple of the spacing. Requires delta > 0, n[d] >= 3, and at
/// least two interior nodes per axis.
Grid build_grid(const Domain& domain, const std::vector<int>& n, double delta);

/// One interaction offset: pairs (i, i + jump) at lattice offset `off` and
/// Euclidean distance r < delta.
struct Shell {
    std::array<int, 2> off;
    double r;
    long jump;
};

/// Lexicographically positive lattice offsets with |off * h| strictly below
/// delta (with a tiny relative guard so shells sitting exactly on the horizon
/// are excluded deterministically). Requires delta <= collar width.
std::vector<Shell> pair_stencil(const Grid& grid, double delta);

/// Visits every unordered node pair within the horizon once, shell-major, with
/// fn(i, j, shell) and i < j. Deterministic order.
template <class F>
void for_each_pair(const Grid& grid, const std::vector<Shell>& shells, F&& fn) {
    const int n0 = grid.n(0);
    const int n1 = grid.dim() == 2 ? grid.n(1) : 1;
    for (const Shell& s : shells) {
        const int o0 = s.off[0], o1 = s.off[1];
        const int lo1 = o1 < 0 ? -o1 : 0;
        const int hi1 = o1 > 0 ? n1 - o1 : n1;
        for (int i0 = 0; i0 + o0 < n0; ++i0) {
            const long base = grid.index(i0, 0);
            for (int i1 = lo1; i1 < hi1; ++i1) {
                const long i = base + i1;
                fn(i, i + s.jump, s);
            }
        }
    }
}

/// Materialized pair list in lexicographic (i, j) order.
std::vector<std::pair<long, long>> neighbor_pairs(const Grid& grid, double delta);

}  // namespace nlpl
