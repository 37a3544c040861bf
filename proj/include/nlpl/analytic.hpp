#pragma once

#include <optional>
#include <string>

#include "nlpl/domain.hpp"

namespace nlpl {

/// Closed-form scalar fields used as coefficients, loads, fixed fields and
/// covering fixtures. The non-indicator kinds are profiles in the first
/// coordinate, which keeps box integrals and extrema exact in any dimension.
///
/// Spec strings: "const:v", "affine:a,b" (a + b x1), "quadratic:a,b,c"
/// (a + b x1 + c x1^2), "sinpi" (sin(pi x1)), "indicator:lo,hi[,lo2,hi2]",
/// plus the aliases "zero", "x", "x2".
class AnalyticField {
public:
    enum class Kind { constant, affine, quadratic, sin_pi, indicator };

    static AnalyticField constant(double c);
    static AnalyticField affine(double a, double b);
    static AnalyticField quadratic(double a, double b, double c);
    static AnalyticField sin_pi();
    static AnalyticField indicator(const Domain& box);
    static AnalyticField parse(const std::string& spec, int dim);

    Kind kind() const { return kind_; }
    double value(const Point& x) const;

    /// Exact integral over a box (closed-form antiderivatives; box overlap for
    /// indicators).
    double integral(const Domain& box) const;
    double sup_abs(const Domain& box) const;
    double min_value(const Domain& box) const;
    double max_value(const Domain& box) const;
    /// L1 norm over the box (= integral for nonnegative fields, quadrature of
    /// |f| otherwise).
    double l1_norm(const Domain& box) const;

    const std::string& spec() const { return spec_; }
    const Domain& indicator_box() const;  // valid for indicator kind only

private:
    Kind kind_ = Kind::constant;
    double a_ = 0.0, b_ = 0.0, c_ = 0.0;
    std::optional<Domain> box_;
    std::string spec_;

    double profile(double t) const;            // value of the x1 profile
    double profile_antiderivative(double t) const;
};

/// Integral of f * g over a box: indicators clip the box, smooth profiles go
/// through composite Gauss-Legendre.
double integrate_product(const AnalyticField& f, const AnalyticField& g, const Domain& box);

}  // namespace nlpl
