#include "nlpl/solver.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace nlpl {

namespace {

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double objective(const ScalarField& u, const ScalarField& f, const Coefficient& h,
                 const Kernel& k, const QuadratureScheme& q) {
    return nonlocal_energy(u, h, k, q, Region::omega_delta) / k.p() - load(f, u);
}

// Sampled variational residuals |B_h(u, w) - (f, w)| / |w|_1 for a handful of
// fixed random discrete X_0 fields.
double residual_check(const ScalarField& u, const ScalarField& f, const Coefficient& h,
                      const Kernel& k, const QuadratureScheme& q) {
    std::mt19937 rng(0x7e57u);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        ScalarField w = ScalarField::zeros(u.grid_ptr());
        double l1 = 0.0;
        for (long i : u.grid().free_nodes()) {
            w[i] = unit(rng);
            l1 += std::abs(w[i]);
        }
        const double r = std::abs(nonlocal_form(u, w, h, k, q) - load(f, w));
        worst = std::max(worst, r / l1);
    }
    return worst;
}

SolveResult solve_p2(const ScalarField& f, const Coefficient& h, const Kernel& k,
                     std::shared_ptr<const Grid> grid, const SolveOptions& opts,
                     double tol_grad) {
    const Grid& g = *grid;
    const QuadratureScheme q;
    const auto wd = region_weights(g, Region::omega_delta, q);
    const auto wo = region_weights(g, Region::omega, q);
    const auto hv = h.sample_nodes(g);
    const auto& free = g.free_nodes();
    const long nf = static_cast<long>(free.size());
    std::vector<long> to_free(static_cast<size_t>(g.node_count()), -1);
    for (long a = 0; a < nf; ++a) to_free[static_cast<size_t>(free[static_cast<size_t>(a)])] = a;

    const auto shells = pair_stencil(g, k.delta());
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<size_t>(nf) * (shells.size() + 1));
    std::vector<double> diag(static_cast<size_t>(nf), 0.0);
    for (const Shell& s : shells) {
        const double K = k.eval(s.r) / (s.r * s.r);
        if (K == 0.0) continue;
        for_each_pair(g, std::vector<Shell>{s}, [&](long i, long j, const Shell&) {
            const double c = 2.0 * wd[static_cast<size_t>(i)] * wd[static_cast<size_t>(j)] *
                             0.5 * (hv[static_cast<size_t>(i)] + hv[static_cast<size_t>(j)]) * K;
            if (c == 0.0) return;
            const long fi = to_free[static_cast<size_t>(i)];
            const long fj = to_free[static_cast<size_t>(j)];
            if (fi >= 0) diag[static_cast<size_t>(fi)] += c;
            if (fj >= 0) diag[static_cast<size_t>(fj)] += c;
            if (fi >= 0 && fj >= 0) {
                trips.emplace_back(static_cast<int>(fi), static_cast<int>(fj), -c);
                trips.emplace_back(static_cast<int>(fj), static_cast<int>(fi), -c);
            }
        });
    }
    for (long a = 0; a < nf; ++a)
        trips.emplace_back(static_cast<int>(a), static_cast<int>(a), diag[static_cast<size_t>(a)]);

    Eigen::SparseMatrix<double> A(nf, nf);
    A.setFromTriplets(trips.begin(), trips.end());
    Eigen::VectorXd b(nf);
    for (long a = 0; a < nf; ++a) {
        const long node = free[static_cast<size_t>(a)];
        b[a] = wo[static_cast<size_t>(node)] * f[node];
    }

    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(opts.cg_tol);
    cg.setMaxIterations(opts.max_iter);
    cg.compute(A);
    Eigen::VectorXd x;
    if (opts.initial) {
        Eigen::VectorXd x0(nf);
        for (long a = 0; a < nf; ++a)
            x0[a] = (*opts.initial)[static_cast<size_t>(free[static_cast<size_t>(a)])];
        x = cg.solveWithGuess(b, x0);
    } else {
        x = cg.solve(b);
    }

    SolveResult result{ScalarField::zeros(grid), static_cast<long>(cg.iterations()), 0.0, 0.0,
                       cg.info() == Eigen::Success, 0.0};
    for (long a = 0; a < nf; ++a) result.u[free[static_cast<size_t>(a)]] = x[a];
    result.final_grad_norm = max_abs(energy_gradient(result.u, f, h, k, q));
    result.objective = objective(result.u, f, h, k, q);
    result.converged = result.converged && result.final_grad_norm <= tol_grad;
    return result;
}

SolveResult solve_descent(const ScalarField& f, const Coefficient& h, const Kernel& k,
                          std::shared_ptr<const Grid> grid, const SolveOptions& opts,
                          double tol_grad) {
    const QuadratureScheme q;
    ScalarField u = ScalarField::zeros(grid);
    if (opts.initial) {
        if (static_cast<long>(opts.initial->size()) != u.size())
            throw std::invalid_argument("solve_nonlocal: initial guess has wrong size");
        u.values() = *opts.initial;
        u.enforce_constraints();
    }

    const auto& free = grid->free_nodes();
    double J = objective(u, f, h, k, q);
    std::vector<double> g = energy_gradient(u, f, h, k, q);
    std::vector<double> g_prev, u_prev(u.values());

    SolveResult result{u, 0, max_abs(g), J, false, 0.0};
    double step = 1.0;
    for (long it = 0; it < opts.max_iter; ++it) {
        const double gnorm = max_abs(g);
        if (gnorm <= tol_grad) {
            result.converged = true;
            break;
        }
        // Barzilai-Borwein trial step from the last accepted move; plain
        // steepest descent otherwise. Armijo backtracking keeps the objective
        // strictly decreasing either way.
        if (it > 0) {
            double ss = 0.0, sy = 0.0;
            for (long n : free) {
                const double s = u[n] - u_prev[static_cast<size_t>(n)];
                const double y = g[static_cast<size_t>(n)] - g_prev[static_cast<size_t>(n)];
                ss += s * s;
                sy += s * y;
            }
            step = sy > 0.0 ? std::clamp(ss / sy, 1e-12, 1e12) : step * 2.0;
        }
        double slope = 0.0;
        for (long n : free) slope -= g[static_cast<size_t>(n)] * g[static_cast<size_t>(n)];

        u_prev = u.values();
        g_prev = g;
        const double J0 = J;
        double alpha = step;
        bool accepted = false;
        ScalarField trial = u;
        for (int bt = 0; bt < 60; ++bt) {
            for (long n : free)
                trial[n] = u_prev[static_cast<size_t>(n)] - alpha * g_prev[static_cast<size_t>(n)];
            const double Jt = objective(trial, f, h, k, q);
            if (Jt <= J0 + opts.armijo_slope * alpha * slope) {
                u = trial;
                J = Jt;
                accepted = true;
                break;
            }
            alpha *= opts.backtrack_shrink;
        }
        result.iterations = it + 1;
        if (!accepted) break;  // line search stalled at rounding level
        g = energy_gradient(u, f, h, k, q);
    }
    result.u = u;
    result.final_grad_norm = max_abs(g);
    result.objective = J;
    if (!result.converged && result.final_grad_norm <= tol_grad) result.converged = true;
    return result;
}

}  // namespace

SolveResult solve_nonlocal(const ScalarField& f, const Coefficient& h, const Kernel& k,
                           std::shared_ptr<const Grid> grid, const SolveOptions& opts) {
    if (!(k.p() > 1.0)) throw std::invalid_argument("solve_nonlocal: requires p > 1");
    if (k.delta() > grid->collar_width() * (1.0 + 1e-12))
        throw std::invalid_argument("solve_nonlocal: horizon exceeds the grid collar");
    const double tol_grad = opts.tol_grad > 0 ? opts.tol_grad : (k.p() == 2.0 ? 1e-8 : 1e-6);

    const bool direct = opts.method == SolveOptions::Method::direct_p2 ||
                        (opts.method == SolveOptions::Method::automatic && k.p() == 2.0);
    if (direct && k.p() != 2.0)
        throw std::invalid_argument("solve_nonlocal: direct method requires p = 2");

    SolveResult result = direct ? solve_p2(f, h, k, grid, opts, tol_grad)
                                : solve_descent(f, h, k, grid, opts, tol_grad);
    result.u.enforce_constraints();
    if (opts.residual_check) {
        result.residual_check_max = residual_check(result.u, f, h, k, QuadratureScheme{});
        if (result.residual_check_max > 10.0 * tol_grad) result.converged = false;
    }
    return result;
}

namespace {

ScalarField solve_local_1d(const ScalarField& f, const Coefficient& h,
                           std::shared_ptr<const Grid> grid, double p) {
    const Grid& g = *grid;
    const int lo = g.collar_steps(0);
    const int hi = lo + g.interior_steps(0);
    const double hs = g.spacing(0);
    const auto hv = h.sample_nodes(g);

    // F = antiderivative of f on [lower, upper] by cumulative trapezoid.
    std::vector<double> F(static_cast<size_t>(hi - lo + 1), 0.0);
    for (int i = lo; i < hi; ++i)
        F[static_cast<size_t>(i - lo + 1)] =
            F[static_cast<size_t>(i - lo)] + 0.5 * hs * (f[g.index(i)] + f[g.index(i + 1)]);

    const double pinv = 1.0 / (p - 1.0);
    const auto u_end = [&](double c, std::vector<double>* out) {
        // u' = sign(s) |s|^{1/(p-1)} with s = (c - F) / h, integrated by trapezoid.
        double u = 0.0;
        double prev = 0.0;
        for (int i = lo; i <= hi; ++i) {
            const double s = (c - F[static_cast<size_t>(i - lo)]) / hv[static_cast<size_t>(g.index(i))];
            const double du = std::copysign(std::pow(std::abs(s), pinv), s);
            if (i > lo) u += 0.5 * hs * (prev + du);
            if (out) (*out)[static_cast<size_t>(i - lo)] = u;
            prev = du;
        }
        return u;
    };

    // u(upper; c) is strictly increasing in c: bracket and bisect.
    double clo = *std::min_element(F.begin(), F.end());
    double chi = *std::max_element(F.begin(), F.end());
    if (clo == chi) {
        clo -= 1.0;
        chi += 1.0;
    }
    for (int grow = 0; u_end(clo, nullptr) > 0 && grow < 128; ++grow) clo -= (chi - clo);
    for (int grow = 0; u_end(chi, nullptr) < 0 && grow < 128; ++grow) chi += (chi - clo);
    double c = 0.5 * (clo + chi);
    for (int it = 0; it < 200; ++it) {
        c = 0.5 * (clo + chi);
        const double end = u_end(c, nullptr);
        if (std::abs(end) <= 1e-10) break;
        (end > 0 ? chi : clo) = c;
    }

    std::vector<double> profile(static_cast<size_t>(hi - lo + 1), 0.0);
    u_end(c, &profile);
    ScalarField u = ScalarField::zeros(grid);
    for (int i = lo + 1; i < hi; ++i) u[g.index(i)] = profile[static_cast<size_t>(i - lo)];
    return u;
}

ScalarField solve_local_2d_p2(const ScalarField& f, const Coefficient& h,
                              std::shared_ptr<const Grid> grid) {
    const Grid& g = *grid;
    const auto hv = h.sample_nodes(g);
    const auto& free = g.free_nodes();
    const long nf = static_cast<long>(free.size());
    std::vector<long> to_free(static_cast<size_t>(g.node_count()), -1);
    for (long a = 0; a < nf; ++a) to_free[static_cast<size_t>(free[static_cast<size_t>(a)])] = a;

    std::vector<Eigen::Triplet<double>> trips;
    Eigen::VectorXd b(nf);
    for (long a = 0; a < nf; ++a) {
        const long node = free[static_cast<size_t>(a)];
        b[a] = f[node];
        double diag = 0.0;
        for (int d = 0; d < 2; ++d) {
            const long step = d == 0 ? g.index(1, 0) : 1;
            const double inv_h2 = 1.0 / (g.spacing(d) * g.spacing(d));
            for (int dir = -1; dir <= 1; dir += 2) {
                const long nb = node + dir * step;
                const double edge =
                    0.5 * (hv[static_cast<size_t>(node)] + hv[static_cast<size_t>(nb)]) * inv_h2;
                diag += edge;
                const long fb = to_free[static_cast<size_t>(nb)];
                if (fb >= 0)
                    trips.emplace_back(static_cast<int>(a), static_cast<int>(fb), -edge);
            }
        }
        trips.emplace_back(static_cast<int>(a), static_cast<int>(a), diag);
    }
    Eigen::SparseMatrix<double> A(nf, nf);
    A.setFromTriplets(trips.begin(), trips.end());
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(1e-12);
    cg.compute(A);
    const Eigen::VectorXd x = cg.solve(b);
    ScalarField u = ScalarField::zeros(grid);
    for (long a = 0; a < nf; ++a) u[free[static_cast<size_t>(a)]] = x[a];
    return u;
}

}  // namespace

ScalarField solve_local(const ScalarField& f, const Coefficient& h,
                        std::shared_ptr<const Grid> grid, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("solve_local: requires p > 1");
    if (grid->dim() == 1) return solve_local_1d(f, h, grid, p);
    if (p != 2.0)
        throw std::invalid_argument("solve_local: 2D supports p = 2 only");
    return solve_local_2d_p2(f, h, grid);
}

double lp_error(const ScalarField& a, const ScalarField& b, double p) {
    if (!a.same_grid(b)) throw std::invalid_argument("lp_error: mismatched grids");
    const auto w = region_weights(a.grid(), Region::omega);
    double acc = 0.0;
    for (long i = 0; i < a.size(); ++i)
        acc += w[static_cast<size_t>(i)] * power_p(a[i] - b[i], p);
    return std::pow(acc, 1.0 / p);
}

}  // namespace nlpl
