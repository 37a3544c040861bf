#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "nlpl/domain.hpp"

namespace nlpl {

/// Scalar or flat array value of the TOML subset used by config files.
struct TomlValue {
    std::variant<std::string, double, bool, std::vector<double>, std::vector<std::string>> v;

    double number() const;
    long integer() const;
    bool boolean() const;
    const std::string& string() const;
    std::vector<double> numbers() const;
    std::vector<std::string> strings() const;
};

/// Parses the TOML subset: [section] headers and key = value lines where value
/// is a quoted string, number, boolean or flat array of those. Comments start
/// with '#'. Duplicate keys and malformed lines are errors.
std::map<std::string, std::map<std::string, TomlValue>> parse_toml(const std::string& text);

struct ExperimentConfig {
    std::string experiment;  // cn_table | ponce_sweep | gconv | vitali_check |
                             // simple_check | measurable_check
    Domain domain = Domain::interval(0.0, 1.0);

    std::vector<int> grid_n;      // explicit nodes per axis, or
    int points_per_delta = 0;     // nodes chosen so that delta/spacing ~ this ratio

    std::string kernel_family = "constant";
    double p = 2.0;

    std::string coefficient_spec = "const:1";
    std::string load_spec = "const:1";
    std::string field_spec = "x";  // fixed field, or "solve"

    std::vector<double> deltas;   // strictly decreasing
    double tol_ineq = 0.0;        // 0 -> 5 (spacing + delta_min) (local + 1)
    double tol_grad = 0.0;
    long max_iter = 100000;

    std::vector<int> k_list{5, 10, 20};
    std::vector<std::string> f_list;
    std::vector<std::string> xi_list;
    double residual_tol = 1e-3;

    std::string output_base;
    std::vector<std::string> formats{"csv", "json"};
};

/// Loads and validates a config file. Unknown sections or keys are errors.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig config_from_string(const std::string& text);

}  // namespace nlpl
