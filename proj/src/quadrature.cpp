#include "nlpl/quadrature.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace nlpl {

namespace {

GaussRule compute_rule(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    GaussRule rule;
    rule.nodes.resize(static_cast<size_t>(n));
    rule.weights.resize(static_cast<size_t>(n));
    // Newton iteration on P_n, seeded with the Chebyshev-like estimate.
    for (int k = 0; k < (n + 1) / 2; ++k) {
        double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<size_t>(k)] = -x;
        rule.weights[static_cast<size_t>(k)] = w;
        rule.nodes[static_cast<size_t>(n - 1 - k)] = x;
        rule.weights[static_cast<size_t>(n - 1 - k)] = w;
    }
    if (n % 2 == 1) rule.nodes[static_cast<size_t>(n / 2)] = 0.0;
    return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    static std::map<int, GaussRule> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

double gauss_integrate(const std::function<double(double)>& f, double a, double b, int order) {
    const GaussRule& rule = gauss_legendre(order);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (size_t k = 0; k < rule.nodes.size(); ++k)
        sum += rule.weights[k] * f(mid + half * rule.nodes[k]);
    return half * sum;
}

namespace {

double adapt(const std::function<double(double)>& f, double a, double b, double whole,
             double tol, int depth, int max_depth) {
    const double mid = 0.5 * (a + b);
    const double left = gauss_integrate(f, a, mid);
    const double right = gauss_integrate(f, mid, b);
    const double refined = left + right;
    if (std::abs(refined - whole) <= tol || depth >= max_depth) return refined;
    return adapt(f, a, mid, left, 0.5 * tol, depth + 1, max_depth) +
           adapt(f, mid, b, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 int max_depth) {
    if (!(abs_tol > 0)) throw std::invalid_argument("integrate: tolerance must be positive");
    if (a == b) return 0.0;
    return adapt(f, a, b, gauss_integrate(f, a, b), abs_tol, 0, max_depth);
}

}  // namespace nlpl
