#pragma once

#include <string>

namespace nlpl {

enum class KernelFamily { constant, hat, truncated_quadratic };

KernelFamily parse_kernel_family(const std::string& name);  // "constant" | "hat" | "tquad"
std::string kernel_family_name(KernelFamily family);

/// The angular average of |sigma . e|^p over the unit sphere S^{N-1}: exact in
/// 1D, adaptive quadrature over the circle/sphere otherwise. Requires p > 1 and
/// dim in {1, 2, 3}.
double c_n(int dim, double p);

/// A compactly supported radial kernel, scaled so that c_n(dim, p) times the
/// integral over B(0, delta) equals 1. With this mass the nonlocal energy of a
/// smooth field approaches the unweighted local p-Dirichlet energy; in 1D the
/// kernel simply has unit mass. Immutable; eval is pure.
class Kernel {
public:
    Kernel(KernelFamily family, double delta, double p, int dim);

    KernelFamily family() const { return family_; }
    double delta() const { return delta_; }
    double p() const { return p_; }
    int dim() const { return dim_; }
    double cn() const { return cn_; }

    /// Kernel value at radius r >= 0; zero at and beyond the horizon.
    double eval(double r) const;

private:
    KernelFamily family_;
    double delta_;
    double p_;
    int dim_;
    double cn_;
    double scale_;
};

/// Quadrature value of C_N * integral of the kernel over B(0, delta).
/// A correctly scaled kernel returns 1 up to quadrature error.
double check_normalization(const Kernel& kernel);

}  // namespace nlpl
