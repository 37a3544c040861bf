#include "nlpl/lab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nlpl/covering.hpp"
#include "nlpl/energy.hpp"
#include "nlpl/kernel.hpp"

namespace nlpl {

namespace {

std::optional<double> fit_order(const std::vector<SweepRow>& rows) {
    // Least-squares slope of log|gap| against log delta.
    std::vector<double> xs, ys;
    for (const auto& r : rows) {
        if (std::abs(r.gap) > 0) {
            xs.push_back(std::log(r.delta));
            ys.push_back(std::log(std::abs(r.gap)));
        }
    }
    if (xs.size() < 2) return std::nullopt;
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    if (den == 0.0) return std::nullopt;
    return num / den;
}

double default_tol_ineq(double spacing, double delta_min, double local) {
    // Budget for the O(delta) boundary loss and O(spacing) quadrature error of
    // the discrete inequality check.
    return 5.0 * (spacing + delta_min) * (local + 1.0);
}

Report base_report(const ExperimentConfig& cfg) {
    Report report;
    report.experiment = cfg.experiment;
    report.kernel_family = cfg.kernel_family;
    report.p = cfg.p;
    report.dim = cfg.domain.dim();
    report.coefficient_spec = cfg.coefficient_spec;
    report.field_spec = cfg.field_spec;
    report.load_spec = cfg.load_spec;
    return report;
}

void finish_sweep_verdict(Report& report, const ExperimentConfig& cfg, double spacing_min,
                          double local_min) {
    report.tol_ineq = cfg.tol_ineq > 0
                          ? cfg.tol_ineq
                          : default_tol_ineq(spacing_min, report.rows.back().delta, local_min);
    report.inequality_ok = report.rows.empty() || report.rows.back().gap >= -report.tol_ineq;
    report.order = fit_order(report.rows);
}

void maybe_emit(const Report& report, const ExperimentConfig& cfg) {
    if (!cfg.output_base.empty()) emit_report(report, cfg.output_base, cfg.formats);
}

SolveOptions solve_options(const ExperimentConfig& cfg) {
    SolveOptions opts;
    opts.tol_grad = cfg.tol_grad;
    opts.max_iter = cfg.max_iter;
    return opts;
}

}  // namespace

std::shared_ptr<const Grid> sweep_grid(const ExperimentConfig& cfg, double delta) {
    std::vector<int> n = cfg.grid_n;
    if (cfg.points_per_delta > 0) {
        n.clear();
        for (int d = 0; d < cfg.domain.dim(); ++d) {
            const double span = cfg.domain.side(d) + 2.0 * delta;
            n.push_back(static_cast<int>(std::lround(span * cfg.points_per_delta / delta)) + 1);
        }
    }
    if (n.empty()) n.assign(static_cast<size_t>(cfg.domain.dim()), 200);
    auto grid = std::make_shared<Grid>(build_grid(cfg.domain, n, delta));
    if (!(delta > 2.0 * grid->max_spacing()))
        throw std::invalid_argument("sweep: resolution guard requires delta > 2 max spacing");
    return grid;
}

Report run_ponce_sweep(const ExperimentConfig& cfg) {
    if (cfg.deltas.empty()) throw std::invalid_argument("sweep: no deltas configured");
    Report report = base_report(cfg);
    const Coefficient h = Coefficient::parse(cfg.coefficient_spec, cfg.domain);
    const KernelFamily family = parse_kernel_family(cfg.kernel_family);
    const QuadratureScheme q;
    const bool solve = cfg.field_spec == "solve";

    double spacing_min = 0.0, local_min = 0.0;
    double h1 = 0.0;
    for (double delta : cfg.deltas) {
        auto grid = sweep_grid(cfg, delta);
        const Kernel kernel(family, delta, cfg.p, cfg.domain.dim());
        SweepRow row;
        row.delta = delta;
        if (solve) {
            const ScalarField f =
                ScalarField::sample(grid, AnalyticField::parse(cfg.load_spec, cfg.domain.dim()));
            const SolveResult res = solve_nonlocal(f, h, kernel, grid, solve_options(cfg));
            if (!res.converged)
                throw std::runtime_error("sweep: solver did not converge (grad norm " +
                                         std::to_string(res.final_grad_norm) + ")");
            const ScalarField u_local = solve_local(f, h, grid, cfg.p);
            row.nonlocal = nonlocal_energy(res.u, h, kernel, q, Region::omega);
            row.local = local_energy(u_local, h, cfg.p);
            row.sol_err = lp_error(res.u, u_local, cfg.p);
            row.iters = res.iterations;
        } else {
            const ScalarField u =
                ScalarField::sample(grid, AnalyticField::parse(cfg.field_spec, cfg.domain.dim()));
            row.nonlocal = nonlocal_energy(u, h, kernel, q, Region::omega);
            row.local = local_energy(u, h, cfg.p);
        }
        row.gap = row.nonlocal - row.local;
        h1 = std::max(h1, row.nonlocal);
        report.rows.push_back(row);
        report.grid_n = {grid->n(0)};
        if (grid->dim() == 2) report.grid_n.push_back(grid->n(1));
        report.max_spacing = grid->max_spacing();
        spacing_min = grid->max_spacing();
        local_min = row.local;
    }
    if (solve) report.h1_bound = h1;
    finish_sweep_verdict(report, cfg, spacing_min, local_min);
    maybe_emit(report, cfg);
    return report;
}

Report run_gconv(const ExperimentConfig& cfg) {
    if (cfg.deltas.empty()) throw std::invalid_argument("gconv: no deltas configured");
    Report report = base_report(cfg);
    const Coefficient h = Coefficient::parse(cfg.coefficient_spec, cfg.domain);
    const KernelFamily family = parse_kernel_family(cfg.kernel_family);
    const QuadratureScheme q;

    double spacing_min = 0.0, local_min = 0.0, h1 = 0.0;
    for (double delta : cfg.deltas) {
        auto grid = sweep_grid(cfg, delta);
        const Kernel kernel(family, delta, cfg.p, cfg.domain.dim());
        const ScalarField f =
            ScalarField::sample(grid, AnalyticField::parse(cfg.load_spec, cfg.domain.dim()));
        const SolveResult res = solve_nonlocal(f, h, kernel, grid, solve_options(cfg));
        if (!res.converged)
            throw std::runtime_error("gconv: solver did not converge (grad norm " +
                                     std::to_string(res.final_grad_norm) + ")");
        const ScalarField u_local = solve_local(f, h, grid, cfg.p);
        SweepRow row;
        row.delta = delta;
        row.nonlocal = nonlocal_energy(res.u, h, kernel, q, Region::omega);
        row.local = local_energy(u_local, h, cfg.p);
        row.gap = row.nonlocal - row.local;
        row.sol_err = lp_error(res.u, u_local, cfg.p);
        row.iters = res.iterations;
        h1 = std::max(h1, row.nonlocal);
        report.rows.push_back(row);
        report.grid_n = {grid->n(0)};
        if (grid->dim() == 2) report.grid_n.push_back(grid->n(1));
        report.max_spacing = grid->max_spacing();
        spacing_min = grid->max_spacing();
        local_min = row.local;
    }
    report.h1_bound = h1;
    finish_sweep_verdict(report, cfg, spacing_min, local_min);
    // The gconv verdict additionally requires the solution errors to decrease
    // across the delta list. Errors at the rounding floor (the zero-load case)
    // count as converged.
    for (size_t i = 1; i < report.rows.size(); ++i)
        if (!(*report.rows[i].sol_err < *report.rows[i - 1].sol_err) &&
            *report.rows[i].sol_err > 1e-12)
            report.inequality_ok = false;
    maybe_emit(report, cfg);
    return report;
}

Report run_simple_check(const ExperimentConfig& cfg) {
    if (cfg.deltas.empty()) throw std::invalid_argument("simple_check: no deltas configured");
    Report report = base_report(cfg);
    const Coefficient h = Coefficient::parse(cfg.coefficient_spec, cfg.domain);
    if (h.kind() != CoefficientKind::simple)
        throw std::invalid_argument("simple_check: coefficient must be of simple kind");
    const KernelFamily family = parse_kernel_family(cfg.kernel_family);
    const QuadratureScheme q;

    bool ok = true;
    for (double delta : cfg.deltas) {
        auto grid = sweep_grid(cfg, delta);
        const Kernel kernel(family, delta, cfg.p, cfg.domain.dim());
        const ScalarField u =
            ScalarField::sample(grid, AnalyticField::parse(cfg.field_spec, cfg.domain.dim()));
        const BlockEnergySplit split = block_energy_split(u, h, kernel, q, Region::omega);
        // Exact block lower bound: the full sum regroups as lower_bound + cross.
        ok = ok && split.total() >= split.lower_bound() && split.cross >= 0.0;
        // Indicator-coefficient identity with G = the first block.
        const AnalyticField g_ind = AnalyticField::indicator(h.blocks().front().box);
        std::vector<uint8_t> mask(static_cast<size_t>(grid->node_count()), 0);
        for (long i = 0; i < grid->node_count(); ++i)
            mask[static_cast<size_t>(i)] = g_ind.value(grid->point(i)) > 0 ? 1 : 0;
        const double via_pairs = pair_weighted_energy(
            u,
            [&](const Point& a, const Point& b) { return g_ind.value(a) * g_ind.value(b); },
            kernel, q, Region::omega);
        const double via_mask = masked_energy(u, mask, kernel, q, Region::omega);
        ok = ok && via_pairs == via_mask;

        SweepRow row;
        row.delta = delta;
        row.nonlocal = split.total();
        row.local = split.lower_bound();
        row.gap = split.cross;  // discarded cross-block mass, >= 0
        report.rows.push_back(row);
        report.grid_n = {grid->n(0)};
        if (grid->dim() == 2) report.grid_n.push_back(grid->n(1));
        report.max_spacing = grid->max_spacing();
    }
    report.inequality_ok = ok;
    report.tol_ineq = 0.0;  // the block inequality is exact
    maybe_emit(report, cfg);
    return report;
}

Report run_measurable_check(const ExperimentConfig& cfg) {
    const Coefficient h = Coefficient::parse(cfg.coefficient_spec, cfg.domain);
    if (h.kind() != CoefficientKind::simple)
        throw std::invalid_argument("measurable_check: coefficient must be discontinuous "
                                    "(checkerboard or simple kind)");
    if (cfg.field_spec == "solve")
        throw std::invalid_argument("measurable_check: requires a fixed smooth field");
    ExperimentConfig sweep_cfg = cfg;
    Report report = run_ponce_sweep(sweep_cfg);
    report.experiment = cfg.experiment;
    return report;
}

Report run_vitali_check(const ExperimentConfig& cfg) {
    Report report = base_report(cfg);
    std::vector<std::string> f_list = cfg.f_list;
    std::vector<std::string> xi_list = cfg.xi_list;
    if (f_list.empty()) f_list = {"const:2", "affine:1,1", "quadratic:1,0,1"};
    if (xi_list.empty()) xi_list = {"const:1", "sinpi", "indicator:0.3,0.7"};

    bool all_ok = true;
    for (const auto& f_spec : f_list) {
        const AnalyticField f = AnalyticField::parse(f_spec, cfg.domain.dim());
        for (int k : cfg.k_list) {
            const Cover cover = build_vitali_cover(cfg.domain, f, k, cfg.residual_tol);
            for (const auto& xi_spec : xi_list) {
                const AnalyticField xi = AnalyticField::parse(xi_spec, cfg.domain.dim());
                VitaliRow row;
                row.f_spec = f_spec;
                row.xi_spec = xi_spec;
                row.k = k;
                row.error = partition_error(cover, f, xi);
                row.residual = cover.residual_measure;
                row.bound = xi.l1_norm(cfg.domain) / k +
                            f.sup_abs(cfg.domain) * xi.sup_abs(cfg.domain) * row.residual + 1e-6;
                row.ok = row.error <= row.bound && row.residual <= cfg.residual_tol;
                all_ok = all_ok && row.ok;
                report.vitali_rows.push_back(row);
            }
        }
    }
    report.inequality_ok = all_ok;
    maybe_emit(report, cfg);
    return report;
}

namespace {

Report run_cn_table(const ExperimentConfig& cfg) {
    Report report = base_report(cfg);
    bool ok = true;
    for (double p : {1.5, 2.0, 3.0}) ok = ok && c_n(1, p) == 1.0;
    for (int dim = 1; dim <= 3; ++dim)
        ok = ok && std::abs(c_n(dim, 2.0) - 1.0 / dim) <= 1e-10;
    report.inequality_ok = ok;
    maybe_emit(report, cfg);
    return report;
}

}  // namespace

Report run_experiment(const ExperimentConfig& cfg) {
    if (cfg.experiment == "cn_table") return run_cn_table(cfg);
    if (cfg.experiment == "ponce_sweep") return run_ponce_sweep(cfg);
    if (cfg.experiment == "gconv") return run_gconv(cfg);
    if (cfg.experiment == "simple_check") return run_simple_check(cfg);
    if (cfg.experiment == "measurable_check") return run_measurable_check(cfg);
    if (cfg.experiment == "vitali_check") return run_vitali_check(cfg);
    throw std::invalid_argument("run_experiment: unsupported experiment '" + cfg.experiment + "'");
}

std::vector<Report> run_check_all() {
    std::vector<Report> reports;

    // Fixed-field inequality sweeps over the u/h/p fixture matrix.
    for (const char* u : {"x", "x2", "sinpi"}) {
        for (const char* h : {"const:1", "affine:1,1", "checkerboard:1,2,4"}) {
            for (double p : {2.0, 3.0}) {
                ExperimentConfig cfg;
                cfg.experiment = "ponce_sweep";
                cfg.field_spec = u;
                cfg.coefficient_spec = h;
                cfg.p = p;
                cfg.deltas = {0.2, 0.1, 0.05};
                cfg.points_per_delta = 100;
                reports.push_back(run_ponce_sweep(cfg));
            }
        }
    }

    // Solution convergence, both solver paths.
    for (double p : {2.0, 3.0}) {
        ExperimentConfig cfg;
        cfg.experiment = "gconv";
        cfg.field_spec = "solve";
        cfg.load_spec = "const:1";
        cfg.coefficient_spec = "const:1";
        cfg.p = p;
        cfg.deltas = {0.2, 0.1, 0.05};
        cfg.grid_n = {240};
        reports.push_back(run_gconv(cfg));
    }

    // Exact discrete inequalities and covering contract.
    {
        ExperimentConfig cfg;
        cfg.experiment = "simple_check";
        cfg.coefficient_spec = "simple:0,0.5,2;0.5,1,3";
        cfg.field_spec = "sinpi";
        cfg.deltas = {0.1, 0.05};
        cfg.points_per_delta = 50;
        reports.push_back(run_simple_check(cfg));
    }
    {
        ExperimentConfig cfg;
        cfg.experiment = "measurable_check";
        cfg.coefficient_spec = "checkerboard:1,2,4";
        cfg.field_spec = "x";
        cfg.deltas = {0.1, 0.05, 0.025};
        cfg.points_per_delta = 100;
        reports.push_back(run_measurable_check(cfg));
    }
    {
        ExperimentConfig cfg;
        cfg.experiment = "vitali_check";
        reports.push_back(run_vitali_check(cfg));
    }
    return reports;
}

}  // namespace nlpl
