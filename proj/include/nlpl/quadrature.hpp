#pragma once

#include <functional>
#include <vector>

namespace nlpl {

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Returns the n-point Gauss-Legendre rule (computed once, then cached).
const GaussRule& gauss_legendre(int n);

/// Fixed-order Gauss-Legendre approximation of the integral of f over [a, b].
double gauss_integrate(const std::function<double(double)>& f, double a, double b, int order = 16);

/// Adaptive composite Gauss-Legendre integration of f over [a, b] to absolute
/// tolerance abs_tol. Panels are bisected until the local refinement estimate
/// drops below the panel's share of the tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, int max_depth = 48);

}  // namespace nlpl
