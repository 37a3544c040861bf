#include "nlpl/energy.hpp"

#include <cmath>
#include <stdexcept>

namespace nlpl {

double power_p(double t, double p) {
    if (p == 2.0) return t * t;
    if (p == 3.0) return std::abs(t) * t * t;
    return std::pow(std::abs(t), p);
}

double signed_power(double t, double p) {
    if (p == 2.0) return t;
    if (p == 3.0) return std::abs(t) * t;
    return std::copysign(std::pow(std::abs(t), p - 1.0), t);
}

namespace {

void require_horizon(const Grid& grid, const Kernel& k) {
    if (k.dim() != grid.dim())
        throw std::invalid_argument("energy: kernel and grid dimensions differ");
    if (k.delta() > grid.collar_width() * (1.0 + 1e-12))
        throw std::invalid_argument("energy: kernel horizon exceeds the grid collar");
}

// Kernel factor k(r)/r^p per stencil shell.
std::vector<double> shell_kernel(const std::vector<Shell>& shells, const Kernel& k) {
    std::vector<double> out(shells.size());
    for (size_t s = 0; s < shells.size(); ++s)
        out[s] = k.eval(shells[s].r) / std::pow(shells[s].r, k.p());
    return out;
}

// Shared driver: double sum of w_i w_j * pairweight * K * |u_i - u_j|^p over
// both orientations, shell-major in a fixed order.
template <class PairWeight>
double pair_sum(const ScalarField& u, const std::vector<double>& w, const Kernel& k,
                PairWeight&& pw) {
    const Grid& grid = u.grid();
    const auto shells = pair_stencil(grid, k.delta());
    const auto kern = shell_kernel(shells, k);
    const double p = k.p();
    const std::vector<double>& uv = u.values();
    double acc = 0.0;
    const int n0 = grid.n(0);
    const int n1 = grid.dim() == 2 ? grid.n(1) : 1;
    for (size_t s = 0; s < shells.size(); ++s) {
        const Shell& sh = shells[s];
        const double K = kern[s];
        if (K == 0.0) continue;
        const int o0 = sh.off[0], o1 = sh.off[1];
        const int lo1 = o1 < 0 ? -o1 : 0;
        const int hi1 = o1 > 0 ? n1 - o1 : n1;
        double shell_acc = 0.0;
        for (int i0 = 0; i0 + o0 < n0; ++i0) {
            const long base = grid.index(i0, 0);
            for (int i1 = lo1; i1 < hi1; ++i1) {
                const long i = base + i1;
                const long j = i + sh.jump;
                const double wp = w[static_cast<size_t>(i)] * w[static_cast<size_t>(j)];
                if (wp == 0.0) continue;
                const double weight = pw(i, j);
                if (weight == 0.0) continue;
                shell_acc += (wp * weight) *
                             power_p(uv[static_cast<size_t>(i)] - uv[static_cast<size_t>(j)], p);
            }
        }
        acc += K * shell_acc;
    }
    return 2.0 * acc;  // unordered pairs -> ordered double sum
}

}  // namespace

double nonlocal_energy(const ScalarField& u, const Coefficient& h, const Kernel& k,
                       const QuadratureScheme& q, Region region) {
    require_horizon(u.grid(), k);
    const auto w = region_weights(u.grid(), region, q);
    const auto hv = h.sample_nodes(u.grid());
    return pair_sum(u, w, k, [&](long i, long j) {
        return 0.5 * (hv[static_cast<size_t>(i)] + hv[static_cast<size_t>(j)]);
    });
}

double nonlocal_energy_in_box(const ScalarField& u, const Coefficient& h, const Kernel& k,
                              const QuadratureScheme& q, const Domain& box) {
    (void)q;
    require_horizon(u.grid(), k);
    const auto w = box_weights(u.grid(), box);
    const auto hv = h.sample_nodes(u.grid());
    return pair_sum(u, w, k, [&](long i, long j) {
        return 0.5 * (hv[static_cast<size_t>(i)] + hv[static_cast<size_t>(j)]);
    });
}

double nonlocal_form(const ScalarField& u, const ScalarField& w, const Coefficient& h,
                     const Kernel& k, const QuadratureScheme& q) {
    if (!u.same_grid(w)) throw std::invalid_argument("nonlocal_form: mismatched grids");
    require_horizon(u.grid(), k);
    const Grid& grid = u.grid();
    const auto wt = region_weights(grid, Region::omega_delta, q);
    const auto hv = h.sample_nodes(grid);
    const auto shells = pair_stencil(grid, k.delta());
    const auto kern = shell_kernel(shells, k);
    const double p = k.p();
    const std::vector<double>& uv = u.values();
    const std::vector<double>& wv = w.values();
    double acc = 0.0;
    for (size_t s = 0; s < shells.size(); ++s) {
        const double K = kern[s];
        if (K == 0.0) continue;
        double shell_acc = 0.0;
        for_each_pair(grid, std::vector<Shell>{shells[s]}, [&](long i, long j, const Shell&) {
            const double wp = wt[static_cast<size_t>(i)] * wt[static_cast<size_t>(j)];
            if (wp == 0.0) return;
            const double H = 0.5 * (hv[static_cast<size_t>(i)] + hv[static_cast<size_t>(j)]);
            if (H == 0.0) return;
            const double du = uv[static_cast<size_t>(i)] - uv[static_cast<size_t>(j)];
            const double dw = wv[static_cast<size_t>(i)] - wv[static_cast<size_t>(j)];
            // Grouped so that w = u reproduces the energy term bit for bit.
            shell_acc += (wp * H) * (signed_power(du, p) * dw);
        });
        acc += K * shell_acc;
    }
    return 2.0 * acc;
}

std::vector<double> energy_gradient(const ScalarField& u, const ScalarField& f,
                                    const Coefficient& h, const Kernel& k,
                                    const QuadratureScheme& q) {
    if (!u.same_grid(f)) throw std::invalid_argument("energy_gradient: mismatched grids");
    require_horizon(u.grid(), k);
    const Grid& grid = u.grid();
    const auto wd = region_weights(grid, Region::omega_delta, q);
    const auto wo = region_weights(grid, Region::omega, q);
    const auto hv = h.sample_nodes(grid);
    const auto shells = pair_stencil(grid, k.delta());
    const auto kern = shell_kernel(shells, k);
    const double p = k.p();
    const std::vector<double>& uv = u.values();

    std::vector<double> g(static_cast<size_t>(grid.node_count()), 0.0);
    for (size_t s = 0; s < shells.size(); ++s) {
        const double K = kern[s];
        if (K == 0.0) continue;
        for_each_pair(grid, std::vector<Shell>{shells[s]}, [&](long i, long j, const Shell&) {
            const double wp = wd[static_cast<size_t>(i)] * wd[static_cast<size_t>(j)];
            if (wp == 0.0) return;
            const double H = 0.5 * (hv[static_cast<size_t>(i)] + hv[static_cast<size_t>(j)]);
            if (H == 0.0) return;
            const double t =
                2.0 * wp * H * K *
                signed_power(uv[static_cast<size_t>(i)] - uv[static_cast<size_t>(j)], p);
            g[static_cast<size_t>(i)] += t;
            g[static_cast<size_t>(j)] -= t;
        });
    }
    for (long i = 0; i < grid.node_count(); ++i) {
        if (u.constrained(i))
            g[static_cast<size_t>(i)] = 0.0;
        else
            g[static_cast<size_t>(i)] -= wo[static_cast<size_t>(i)] * f[i];
    }
    return g;
}

double local_energy(const ScalarField& u, const Coefficient& h, double p) {
    const Grid& grid = u.grid();
    const auto w = region_weights(grid, Region::omega);
    const auto hv = h.sample_nodes(grid);
    double acc = 0.0;
    for (long node = 0; node < grid.node_count(); ++node) {
        const double wn = w[static_cast<size_t>(node)];
        if (wn == 0.0) continue;
        const auto mi = grid.multi_index(node);
        double grad2 = 0.0;
        for (int d = 0; d < grid.dim(); ++d) {
            const int i = mi[static_cast<size_t>(d)];
            const int lo = grid.collar_steps(d);
            const int hi = lo + grid.interior_steps(d);
            const long step = d == 0 ? grid.index(1, 0) : 1;
            const double hd = grid.spacing(d);
            double di;
            if (i == lo)
                di = (u[node + step] - u[node]) / hd;  // one-sided into the domain
            else if (i == hi)
                di = (u[node] - u[node - step]) / hd;
            else
                di = (u[node + step] - u[node - step]) / (2.0 * hd);
            grad2 += di * di;
        }
        acc += wn * hv[static_cast<size_t>(node)] * power_p(std::sqrt(grad2), p);
    }
    return acc;
}

double load(const ScalarField& f, const ScalarField& w) {
    if (!f.same_grid(w)) throw std::invalid_argument("load: mismatched grids");
    const auto wt = region_weights(f.grid(), Region::omega);
    double acc = 0.0;
    for (long i = 0; i < f.size(); ++i)
        acc += wt[static_cast<size_t>(i)] * f[i] * w[i];
    return acc;
}

double pair_weighted_energy(const ScalarField& u,
                            const std::function<double(const Point&, const Point&)>& pw,
                            const Kernel& k, const QuadratureScheme& q, Region region) {
    require_horizon(u.grid(), k);
    const Grid& grid = u.grid();
    const auto w = region_weights(grid, region, q);
    return pair_sum(u, w, k, [&](long i, long j) { return pw(grid.point(i), grid.point(j)); });
}

double masked_energy(const ScalarField& u, const std::vector<uint8_t>& node_mask, const Kernel& k,
                     const QuadratureScheme& q, Region region) {
    require_horizon(u.grid(), k);
    if (static_cast<long>(node_mask.size()) != u.size())
        throw std::invalid_argument("masked_energy: mask size mismatch");
    const auto w = region_weights(u.grid(), region, q);
    return pair_sum(u, w, k, [&](long i, long j) {
        return node_mask[static_cast<size_t>(i)] && node_mask[static_cast<size_t>(j)] ? 1.0 : 0.0;
    });
}

double BlockEnergySplit::lower_bound() const {
    double acc = 0.0;
    for (size_t b = 0; b < block_sums.size(); ++b) acc += block_values[b] * block_sums[b];
    return acc;
}

BlockEnergySplit block_energy_split(const ScalarField& u, const Coefficient& h, const Kernel& k,
                                    const QuadratureScheme& q, Region region) {
    require_horizon(u.grid(), k);
    const Grid& grid = u.grid();
    const auto w = region_weights(grid, region, q);
    const auto hv = h.sample_nodes(grid);
    const auto blocks = h.block_of_nodes(grid);
    const auto shells = pair_stencil(grid, k.delta());
    const auto kern = shell_kernel(shells, k);
    const double p = k.p();
    const std::vector<double>& uv = u.values();

    BlockEnergySplit split;
    split.block_values.reserve(h.blocks().size());
    for (const auto& b : h.blocks()) split.block_values.push_back(b.value);
    split.block_sums.assign(h.blocks().size(), 0.0);

    for (size_t s = 0; s < shells.size(); ++s) {
        const double K = kern[s];
        if (K == 0.0) continue;
        for_each_pair(grid, std::vector<Shell>{shells[s]}, [&](long i, long j, const Shell&) {
            const double wp = w[static_cast<size_t>(i)] * w[static_cast<size_t>(j)];
            if (wp == 0.0) return;
            const double term =
                2.0 * wp * K *
                power_p(uv[static_cast<size_t>(i)] - uv[static_cast<size_t>(j)], p);
            const int bi = blocks[static_cast<size_t>(i)];
            const int bj = blocks[static_cast<size_t>(j)];
            if (bi >= 0 && bi == bj) {
                split.block_sums[static_cast<size_t>(bi)] += term;
            } else {
                const double H = 0.5 * (hv[static_cast<size_t>(i)] + hv[static_cast<size_t>(j)]);
                split.cross += H * term;
            }
        });
    }
    return split;
}

}  // namespace nlpl
