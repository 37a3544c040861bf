#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "nlpl/energy.hpp"

namespace nlpl {

struct SolveOptions {
    enum class Method { automatic, direct_p2, descent };
    Method method = Method::automatic;   // automatic: direct for p = 2, descent otherwise
    double tol_grad = 0.0;               // 0 -> 1e-8 for p = 2, 1e-6 otherwise
    long max_iter = 100000;
    double backtrack_shrink = 0.5;
    double armijo_slope = 1e-4;
    double cg_tol = 1e-12;               // relative, p = 2 path
    std::optional<std::vector<double>> initial;  // nodal start values (default zero)
    bool residual_check = true;          // sampled variational residuals after the solve
};

struct SolveResult {
    ScalarField u;
    long iterations = 0;
    double final_grad_norm = 0.0;
    double objective = 0.0;
    bool converged = false;
    double residual_check_max = 0.0;  // max |B_h(u,w) - (f,w)| / |w|_1 over sampled w
};

/// Solves the volume-constrained problem B_h(u, w) = (f, w) for all discrete
/// X_0 test fields by minimizing J(u) = (1/p) B_h(u, u) - (f, u) over the free
/// nodes. p = 2 assembles the sparse SPD system and runs conjugate gradients;
/// other p run gradient descent with backtracking line search.
SolveResult solve_nonlocal(const ScalarField& f, const Coefficient& h, const Kernel& k,
                           std::shared_ptr<const Grid> grid, const SolveOptions& opts = {});

/// Reference local problem -div(h |grad u|^{p-2} grad u) = f with zero boundary
/// values. 1D uses the first-integral form h |u'|^{p-2} u' = c - F with the
/// constant found by shooting; 2D supports p = 2 via 5-point differences with
/// edge-averaged coefficients.
ScalarField solve_local(const ScalarField& f, const Coefficient& h,
                        std::shared_ptr<const Grid> grid, double p);

/// L^p norm of (a - b) over Omega by nodal quadrature.
double lp_error(const ScalarField& a, const ScalarField& b, double p);

}  // namespace nlpl
