#pragma once

#include <memory>
#include <vector>

#include "nlpl/config.hpp"
#include "nlpl/report.hpp"
#include "nlpl/solver.hpp"

namespace nlpl {

/// Grid for one delta of a sweep: either the configured node counts or counts
/// derived from the points_per_delta ratio. Enforces the resolution guard
/// delta > 2 max spacing.
std::shared_ptr<const Grid> sweep_grid(const ExperimentConfig& cfg, double delta);

/// Delta sweep comparing the nonlocal energy of a fixed field (or of solver
/// outputs for field = "solve") against the local weighted p-Dirichlet energy
/// of the limit field. Fits a convergence order on log|gap| vs log delta.
Report run_ponce_sweep(const ExperimentConfig& cfg);

/// Solves the nonlocal and the local problem per delta and records L^p errors
/// (monotone decrease is the verdict) plus the energy bound log.
Report run_gconv(const ExperimentConfig& cfg);

/// Exact discrete block lower bound for simple coefficients, plus the
/// indicator-coefficient identity on the first block.
Report run_simple_check(const ExperimentConfig& cfg);

/// Delta sweep with a discontinuous coefficient against the local energy.
Report run_measurable_check(const ExperimentConfig& cfg);

/// Covering construction and the partition-error contract over the configured
/// (f, xi, k) fixture matrix.
Report run_vitali_check(const ExperimentConfig& cfg);

/// Dispatch by cfg.experiment.
Report run_experiment(const ExperimentConfig& cfg);

/// Canned fixture matrix at desk scale; one report per experiment.
std::vector<Report> run_check_all();

}  // namespace nlpl
