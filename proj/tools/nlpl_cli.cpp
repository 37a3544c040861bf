// Command-line front end: normalization constants, config-driven sweeps and
// the built-in fixture matrix. Exit codes: 0 all verdicts pass, 2 verdict
// failure, 1 configuration or solver error.

#include <charconv>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nlpl/kernel.hpp"
#include "nlpl/lab.hpp"

namespace {

std::string fmt(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void print_summary(const nlpl::Report& report) {
    std::cout << report.experiment << ": " << (report.passed() ? "pass" : "FAIL");
    if (!report.rows.empty()) {
        std::cout << "  (gap at delta=" << fmt(report.rows.back().delta) << ": "
                  << fmt(report.rows.back().gap) << ", tol " << fmt(report.tol_ineq);
        if (report.order) std::cout << ", order " << fmt(*report.order);
        std::cout << ")";
    }
    if (!report.vitali_rows.empty())
        std::cout << "  (" << report.vitali_rows.size() << " covering combinations)";
    std::cout << "\n";
}

int run_config(const std::string& path, const std::string& required) {
    const nlpl::ExperimentConfig cfg = nlpl::load_config(path);
    if (!required.empty() && cfg.experiment != required)
        throw std::invalid_argument("config experiment is '" + cfg.experiment + "', expected '" +
                                    required + "'");
    const nlpl::Report report = nlpl::run_experiment(cfg);
    for (const auto& row : report.rows)
        std::cout << "delta=" << fmt(row.delta) << " nonlocal=" << fmt(row.nonlocal)
                  << " local=" << fmt(row.local) << " gap=" << fmt(row.gap)
                  << (row.sol_err ? " sol_err=" + fmt(*row.sol_err) : std::string()) << "\n";
    for (const auto& row : report.vitali_rows)
        std::cout << "f=" << row.f_spec << " xi=" << row.xi_spec << " k=" << row.k
                  << " error=" << fmt(row.error) << " bound=" << fmt(row.bound)
                  << (row.ok ? " ok" : " FAIL") << "\n";
    print_summary(report);
    return report.passed() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonlocal p-Laplacian laboratory"};
    app.require_subcommand(1);

    int cn_dim = 1;
    double cn_p = 2.0;
    auto* cn = app.add_subcommand("cn", "print the kernel normalization constant");
    cn->add_option("--dim", cn_dim, "dimension (1, 2 or 3)")->required();
    cn->add_option("--p", cn_p, "exponent p > 1")->required();

    std::string sweep_config, gconv_config, vitali_config;
    auto* sweep = app.add_subcommand("sweep", "run the experiment described by a config file");
    sweep->add_option("--config", sweep_config, "TOML config path")->required();
    auto* gconv = app.add_subcommand("gconv", "run a solution-convergence study");
    gconv->add_option("--config", gconv_config, "TOML config path")->required();
    auto* vitali = app.add_subcommand("vitali", "run the covering contract checks");
    vitali->add_option("--config", vitali_config, "TOML config path")->required();

    bool check_all = false;
    auto* check = app.add_subcommand("check", "run the built-in fixture matrix");
    check->add_flag("--all", check_all, "run every canned experiment");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cn->parsed()) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.12g", nlpl::c_n(cn_dim, cn_p));
            std::cout << buf << "\n";
            return 0;
        }
        if (sweep->parsed()) return run_config(sweep_config, "");
        if (gconv->parsed()) return run_config(gconv_config, "gconv");
        if (vitali->parsed()) return run_config(vitali_config, "vitali_check");
        if (check->parsed()) {
            if (!check_all) {
                std::cerr << "check: nothing to do (pass --all)\n";
                return 1;
            }
            bool ok = true;
            for (const nlpl::Report& report : nlpl::run_check_all()) {
                print_summary(report);
                ok = ok && report.passed();
            }
            return ok ? 0 : 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
