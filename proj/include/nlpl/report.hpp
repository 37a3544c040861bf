#pragma once

#include <optional>
#include <string>
#include <vector>

namespace nlpl {

struct SweepRow {
    double delta = 0.0;
    double nonlocal = 0.0;
    double local = 0.0;
    double gap = 0.0;  // nonlocal - local
    std::optional<double> sol_err;
    long iters = 0;
};

struct VitaliRow {
    std::string f_spec;
    std::string xi_spec;
    int k = 0;
    double error = 0.0;
    double bound = 0.0;
    double residual = 0.0;
    bool ok = false;
};

/// Structured record of one experiment: per-delta rows (or per-combination
/// rows for covering checks), summary verdicts and environment metadata.
struct Report {
    std::string experiment;
    std::vector<SweepRow> rows;
    std::vector<VitaliRow> vitali_rows;

    bool inequality_ok = true;           // gap at the smallest delta >= -tol_ineq
    std::optional<double> order;         // least-squares slope of log|gap| vs log delta
    std::optional<double> h1_bound;      // max nonlocal energy across deltas (solve runs)
    double tol_ineq = 0.0;

    std::string kernel_family;
    double p = 2.0;
    int dim = 1;
    std::string coefficient_spec;
    std::string field_spec;
    std::string load_spec;
    std::vector<int> grid_n;
    double max_spacing = 0.0;

    bool passed() const;
};

/// CSV with header "delta,nonlocal,local,gap,sol_err,iters" (sweeps) or
/// "f,xi,k,error,bound,residual,ok" (covering checks). Shortest-round-trip
/// double formatting keeps reruns byte-identical.
std::string report_csv(const Report& report);
std::string report_json(const Report& report);
Report report_from_json(const std::string& text);

/// Two-column "delta gap" rows for external plotting.
std::string report_gap_table(const Report& report);

/// Writes <base>.csv / <base>.json (per `formats`) and <base>.gap.
void emit_report(const Report& report, const std::string& base,
                 const std::vector<std::string>& formats);

}  // namespace nlpl
