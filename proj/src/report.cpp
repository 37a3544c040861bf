#include "nlpl/report.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace nlpl {

namespace {

std::string fmt(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fmt(long v) { return std::to_string(v); }

}  // namespace

bool Report::passed() const {
    if (!inequality_ok) return false;
    for (const auto& row : vitali_rows)
        if (!row.ok) return false;
    return true;
}

std::string report_csv(const Report& report) {
    std::string out;
    if (!report.vitali_rows.empty()) {
        out += "f,xi,k,error,bound,residual,ok\n";
        for (const auto& r : report.vitali_rows) {
            out += r.f_spec + "," + r.xi_spec + "," + std::to_string(r.k) + "," + fmt(r.error) +
                   "," + fmt(r.bound) + "," + fmt(r.residual) + "," + (r.ok ? "1" : "0") + "\n";
        }
        return out;
    }
    out += "delta,nonlocal,local,gap,sol_err,iters\n";
    for (const auto& r : report.rows) {
        out += fmt(r.delta) + "," + fmt(r.nonlocal) + "," + fmt(r.local) + "," + fmt(r.gap) + ",";
        if (r.sol_err) out += fmt(*r.sol_err);
        out += "," + fmt(r.iters) + "\n";
    }
    return out;
}

std::string report_gap_table(const Report& report) {
    std::string out;
    for (const auto& r : report.rows) out += fmt(r.delta) + " " + fmt(r.gap) + "\n";
    return out;
}

std::string report_json(const Report& report) {
    nlohmann::json j;
    j["experiment"] = report.experiment;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : report.rows) {
        nlohmann::json row;
        row["delta"] = r.delta;
        row["nonlocal"] = r.nonlocal;
        row["local"] = r.local;
        row["gap"] = r.gap;
        if (r.sol_err) row["sol_err"] = *r.sol_err;
        row["iters"] = r.iters;
        j["rows"].push_back(row);
    }
    j["vitali_rows"] = nlohmann::json::array();
    for (const auto& r : report.vitali_rows) {
        nlohmann::json row;
        row["f"] = r.f_spec;
        row["xi"] = r.xi_spec;
        row["k"] = r.k;
        row["error"] = r.error;
        row["bound"] = r.bound;
        row["residual"] = r.residual;
        row["ok"] = r.ok;
        j["vitali_rows"].push_back(row);
    }
    j["verdicts"]["inequality_ok"] = report.inequality_ok;
    if (report.order) j["verdicts"]["order"] = *report.order;
    if (report.h1_bound) j["verdicts"]["h1_bound"] = *report.h1_bound;
    j["verdicts"]["tol_ineq"] = report.tol_ineq;
    j["meta"]["kernel"] = report.kernel_family;
    j["meta"]["p"] = report.p;
    j["meta"]["dim"] = report.dim;
    j["meta"]["coefficient"] = report.coefficient_spec;
    j["meta"]["field"] = report.field_spec;
    j["meta"]["load"] = report.load_spec;
    j["meta"]["grid_n"] = report.grid_n;
    j["meta"]["max_spacing"] = report.max_spacing;
    return j.dump(2);
}

Report report_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    Report report;
    report.experiment = j.at("experiment").get<std::string>();
    for (const auto& row : j.at("rows")) {
        SweepRow r;
        r.delta = row.at("delta").get<double>();
        r.nonlocal = row.at("nonlocal").get<double>();
        r.local = row.at("local").get<double>();
        r.gap = row.at("gap").get<double>();
        if (row.contains("sol_err")) r.sol_err = row.at("sol_err").get<double>();
        r.iters = row.at("iters").get<long>();
        report.rows.push_back(r);
    }
    for (const auto& row : j.at("vitali_rows")) {
        VitaliRow r;
        r.f_spec = row.at("f").get<std::string>();
        r.xi_spec = row.at("xi").get<std::string>();
        r.k = row.at("k").get<int>();
        r.error = row.at("error").get<double>();
        r.bound = row.at("bound").get<double>();
        r.residual = row.at("residual").get<double>();
        r.ok = row.at("ok").get<bool>();
        report.vitali_rows.push_back(r);
    }
    const auto& v = j.at("verdicts");
    report.inequality_ok = v.at("inequality_ok").get<bool>();
    if (v.contains("order")) report.order = v.at("order").get<double>();
    if (v.contains("h1_bound")) report.h1_bound = v.at("h1_bound").get<double>();
    report.tol_ineq = v.at("tol_ineq").get<double>();
    const auto& m = j.at("meta");
    report.kernel_family = m.at("kernel").get<std::string>();
    report.p = m.at("p").get<double>();
    report.dim = m.at("dim").get<int>();
    report.coefficient_spec = m.at("coefficient").get<std::string>();
    report.field_spec = m.at("field").get<std::string>();
    report.load_spec = m.at("load").get<std::string>();
    report.grid_n = m.at("grid_n").get<std::vector<int>>();
    report.max_spacing = m.at("max_spacing").get<double>();
    return report;
}

void emit_report(const Report& report, const std::string& base,
                 const std::vector<std::string>& formats) {
    const std::filesystem::path path(base);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const auto write = [&](const std::string& suffix, const std::string& content) {
        std::ofstream out(base + suffix, std::ios::binary);
        if (!out) throw std::runtime_error("emit_report: cannot write " + base + suffix);
        out << content;
    };
    for (const auto& format : formats) {
        if (format == "csv")
            write(".csv", report_csv(report));
        else if (format == "json")
            write(".json", report_json(report));
        else
            throw std::invalid_argument("emit_report: unknown format '" + format + "'");
    }
    if (!report.rows.empty()) write(".gap", report_gap_table(report));
}

}  // namespace nlpl
