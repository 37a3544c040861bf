#pragma once

#include <functional>
#include <vector>

#include "nlpl/coefficient.hpp"
#include "nlpl/field.hpp"
#include "nlpl/kernel.hpp"

namespace nlpl {

/// |t|^p and |t|^{p-2} t with fast paths for p = 2 and p = 3.
double power_p(double t, double p);
double signed_power(double t, double p);

/// The nonlocal energy
///   B_h(u, u) = sum over node pairs of  w_i w_j H(x_i, x_j) k(r)/r^p |u_i - u_j|^p
/// (both orientations), restricted to the requested region. Self-pairs are
/// skipped per the quadrature scheme. Throws if the horizon exceeds the collar.
double nonlocal_energy(const ScalarField& u, const Coefficient& h, const Kernel& k,
                       const QuadratureScheme& q, Region region);

/// Same double sum restricted to node pairs inside an arbitrary box.
double nonlocal_energy_in_box(const ScalarField& u, const Coefficient& h, const Kernel& k,
                              const QuadratureScheme& q, const Domain& box);

/// The p-form B_h(u, w) over Omega_delta; linear in w and equal to
/// nonlocal_energy(u, ..., omega_delta) when w = u.
double nonlocal_form(const ScalarField& u, const ScalarField& w, const Coefficient& h,
                     const Kernel& k, const QuadratureScheme& q);

/// Analytic gradient of J(u) = (1/p) B_h(u, u) - (f, u) with respect to the
/// free nodal values; entries on constrained nodes are zero.
std::vector<double> energy_gradient(const ScalarField& u, const ScalarField& f,
                                    const Coefficient& h, const Kernel& k,
                                    const QuadratureScheme& q);

/// Local weighted p-Dirichlet energy: quadrature of h |grad u|^p over Omega
/// with centered differences, one-sided at the boundary of the closure.
double local_energy(const ScalarField& u, const Coefficient& h, double p);

/// Quadrature of f * w over Omega.
double load(const ScalarField& f, const ScalarField& w);

/// Double sum with an arbitrary symmetric pair weight W(x_i, x_j) in place of
/// the midpoint coefficient (indicator and mollified-coefficient checks).
double pair_weighted_energy(const ScalarField& u,
                            const std::function<double(const Point&, const Point&)>& w,
                            const Kernel& k, const QuadratureScheme& q, Region region);

/// Kernel-only double sum over pairs whose nodes both satisfy the mask.
double masked_energy(const ScalarField& u, const std::vector<uint8_t>& node_mask, const Kernel& k,
                     const QuadratureScheme& q, Region region);

/// One pass over the pairs of a simple coefficient, split into
///   block_sums[i] = kernel-only double sum over pairs inside block i,
///   cross        = midpoint-weighted double sum over the remaining pairs.
/// total() regroups the full energy as sum_i h_i block_sums[i] + cross, so
/// total() >= lower_bound() holds term by term.
struct BlockEnergySplit {
    std::vector<double> block_values;
    std::vector<double> block_sums;
    double cross = 0.0;

    double lower_bound() const;
    double total() const { return lower_bound() + cross; }
};
BlockEnergySplit block_energy_split(const ScalarField& u, const Coefficient& h, const Kernel& k,
                                    const QuadratureScheme& q, Region region);

}  // namespace nlpl
