#include "nlpl/kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nlpl/quadrature.hpp"

namespace nlpl {

namespace {

constexpr double kPi = std::numbers::pi;

double sphere_surface(int dim) {
    switch (dim) {
        case 1: return 2.0;          // S^0 counting measure
        case 2: return 2.0 * kPi;    // circle length
        case 3: return 4.0 * kPi;    // sphere area
        default: throw std::invalid_argument("sphere_surface: dim must be 1, 2 or 3");
    }
}

double profile(KernelFamily family, double t) {  // t = r / delta in [0, 1)
    switch (family) {
        case KernelFamily::constant: return 1.0;
        case KernelFamily::hat: return 1.0 - t;
        case KernelFamily::truncated_quadratic: return 1.0 - t * t;
    }
    return 0.0;
}

}  // namespace

KernelFamily parse_kernel_family(const std::string& name) {
    if (name == "constant") return KernelFamily::constant;
    if (name == "hat") return KernelFamily::hat;
    if (name == "tquad") return KernelFamily::truncated_quadratic;
    throw std::invalid_argument("unknown kernel family '" + name + "' (use constant|hat|tquad)");
}

std::string kernel_family_name(KernelFamily family) {
    switch (family) {
        case KernelFamily::constant: return "constant";
        case KernelFamily::hat: return "hat";
        case KernelFamily::truncated_quadratic: return "tquad";
    }
    return "?";
}

double c_n(int dim, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("c_n: requires p > 1");
    switch (dim) {
        case 1:
            return 1.0;  // S^0 = {-1, +1}, |sigma . e|^p = 1
        case 2:
            return (2.0 / kPi) *
                   integrate([p](double t) { return std::pow(std::cos(t), p); }, 0.0, 0.5 * kPi,
                             1e-13);
        case 3:
            return 0.5 * integrate(
                             [p](double t) {
                                 return std::pow(std::abs(std::cos(t)), p) * std::sin(t);
                             },
                             0.0, kPi, 1e-13);
        default:
            throw std::invalid_argument("c_n: dim must be 1, 2 or 3");
    }
}

Kernel::Kernel(KernelFamily family, double delta, double p, int dim)
    : family_(family), delta_(delta), p_(p), dim_(dim) {
    if (!(delta > 0)) throw std::invalid_argument("Kernel: delta must be positive");
    cn_ = c_n(dim, p);  // validates p and dim
    // Radial mass integral of the unscaled profile: surf * int_0^delta rho(r/delta) r^{dim-1} dr.
    double radial;
    if (dim == 1) {
        switch (family) {
            case KernelFamily::constant: radial = delta; break;
            case KernelFamily::hat: radial = 0.5 * delta; break;
            case KernelFamily::truncated_quadratic: radial = 2.0 * delta / 3.0; break;
            default: radial = 0.0;
        }
    } else {
        radial = integrate(
            [&](double r) {
                return profile(family, r / delta) * std::pow(r, dim - 1);
            },
            0.0, delta, 1e-14 * std::pow(delta, dim));
    }
    // Mass 1/C_N: the angular average of |sigma . e|^p then cancels exactly,
    // so the energy of a smooth field approaches the unweighted p-Dirichlet
    // energy as delta -> 0 in every dimension (in 1D this is unit mass).
    scale_ = 1.0 / (cn_ * sphere_surface(dim) * radial);
}

double Kernel::eval(double r) const {
    if (r < 0) throw std::invalid_argument("Kernel::eval: r must be nonnegative");
    if (r >= delta_) return 0.0;
    return scale_ * profile(family_, r / delta_);
}

double check_normalization(const Kernel& kernel) {
    const int dim = kernel.dim();
    const double delta = kernel.delta();
    const double mass = sphere_surface(dim) *
                        integrate(
                            [&](double r) {
                                return kernel.eval(r) * std::pow(r, dim - 1);
                            },
                            0.0, delta, 1e-13);
    return mass * kernel.cn();
}

}  // namespace nlpl
