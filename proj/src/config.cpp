#include "nlpl/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace nlpl {

double TomlValue::number() const {
    if (const double* d = std::get_if<double>(&v)) return *d;
    throw std::invalid_argument("config: expected a number");
}

long TomlValue::integer() const {
    const double d = number();
    const long i = std::lround(d);
    if (d != static_cast<double>(i)) throw std::invalid_argument("config: expected an integer");
    return i;
}

bool TomlValue::boolean() const {
    if (const bool* b = std::get_if<bool>(&v)) return *b;
    throw std::invalid_argument("config: expected a boolean");
}

const std::string& TomlValue::string() const {
    if (const std::string* s = std::get_if<std::string>(&v)) return *s;
    throw std::invalid_argument("config: expected a string");
}

std::vector<double> TomlValue::numbers() const {
    if (const auto* a = std::get_if<std::vector<double>>(&v)) return *a;
    if (const double* d = std::get_if<double>(&v)) return {*d};
    throw std::invalid_argument("config: expected an array of numbers");
}

std::vector<std::string> TomlValue::strings() const {
    if (const auto* a = std::get_if<std::vector<std::string>>(&v)) return *a;
    if (const std::string* s = std::get_if<std::string>(&v)) return {*s};
    throw std::invalid_argument("config: expected an array of strings");
}

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

TomlValue parse_scalar(const std::string& token, int line) {
    const std::string t = trim(token);
    if (t.empty()) throw std::invalid_argument("config line " + std::to_string(line) + ": empty value");
    if (t.front() == '"') {
        if (t.size() < 2 || t.back() != '"')
            throw std::invalid_argument("config line " + std::to_string(line) + ": unterminated string");
        return TomlValue{t.substr(1, t.size() - 2)};
    }
    if (t == "true") return TomlValue{true};
    if (t == "false") return TomlValue{false};
    size_t used = 0;
    double d = 0.0;
    try {
        d = std::stod(t, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config line " + std::to_string(line) + ": bad value '" + t + "'");
    }
    if (used != t.size())
        throw std::invalid_argument("config line " + std::to_string(line) + ": bad value '" + t + "'");
    return TomlValue{d};
}

TomlValue parse_value(const std::string& token, int line) {
    const std::string t = trim(token);
    if (t.empty() || t.front() != '[') return parse_scalar(t, line);
    if (t.back() != ']')
        throw std::invalid_argument("config line " + std::to_string(line) + ": unterminated array");
    const std::string inner = t.substr(1, t.size() - 2);
    std::vector<TomlValue> items;
    std::string cur;
    bool in_string = false;
    for (char c : inner) {
        if (c == '"') in_string = !in_string;
        if (c == ',' && !in_string) {
            items.push_back(parse_scalar(cur, line));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty()) items.push_back(parse_scalar(cur, line));
    if (items.empty()) return TomlValue{std::vector<double>{}};
    if (std::holds_alternative<std::string>(items.front().v)) {
        std::vector<std::string> out;
        for (const auto& item : items) out.push_back(item.string());
        return TomlValue{out};
    }
    std::vector<double> out;
    for (const auto& item : items) out.push_back(item.number());
    return TomlValue{out};
}

}  // namespace

std::map<std::string, std::map<std::string, TomlValue>> parse_toml(const std::string& text) {
    std::map<std::string, std::map<std::string, TomlValue>> sections;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        // Strip comments outside strings.
        std::string stripped;
        bool in_string = false;
        for (char c : raw) {
            if (c == '"') in_string = !in_string;
            if (c == '#' && !in_string) break;
            stripped += c;
        }
        const std::string t = trim(stripped);
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw std::invalid_argument("config line " + std::to_string(line) + ": bad section");
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty())
                throw std::invalid_argument("config line " + std::to_string(line) + ": empty section");
            sections[section];
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line) + ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(line) + ": empty key");
        if (sections[section].count(key))
            throw std::invalid_argument("config line " + std::to_string(line) + ": duplicate key '" +
                                        key + "'");
        sections[section].emplace(key, parse_value(t.substr(eq + 1), line));
    }
    return sections;
}

namespace {

const std::set<std::string> kExperiments{"cn_table",     "ponce_sweep",  "gconv",
                                         "vitali_check", "simple_check", "measurable_check"};

// Pops a key from the section map; leftovers are reported as unknown keys.
template <class T>
bool take(std::map<std::string, TomlValue>& sec, const std::string& key, T&& apply) {
    auto it = sec.find(key);
    if (it == sec.end()) return false;
    apply(it->second);
    sec.erase(it);
    return true;
}

void expect_empty(const std::map<std::string, TomlValue>& sec, const std::string& name) {
    if (!sec.empty())
        throw std::invalid_argument("config: unknown key '" + sec.begin()->first + "' in [" +
                                    name + "]");
}

}  // namespace

ExperimentConfig config_from_string(const std::string& text) {
    auto sections = parse_toml(text);
    ExperimentConfig cfg;

    const std::set<std::string> known{"domain", "grid",  "kernel", "coefficient",
                                      "load",   "field", "sweep",  "output"};
    for (const auto& [name, _] : sections)
        if (!known.count(name))
            throw std::invalid_argument("config: unknown section [" + name + "]");

    {
        auto& sec = sections["domain"];
        long dim = 1;
        std::vector<double> lower{0.0}, upper{1.0};
        take(sec, "dim", [&](const TomlValue& v) { dim = v.integer(); });
        take(sec, "lower", [&](const TomlValue& v) { lower = v.numbers(); });
        take(sec, "upper", [&](const TomlValue& v) { upper = v.numbers(); });
        expect_empty(sec, "domain");
        if (static_cast<long>(lower.size()) != dim || static_cast<long>(upper.size()) != dim)
            throw std::invalid_argument("config: [domain] lower/upper must match dim");
        cfg.domain = Domain(lower, upper);
    }
    {
        auto& sec = sections["grid"];
        take(sec, "n", [&](const TomlValue& v) {
            for (double d : v.numbers()) cfg.grid_n.push_back(static_cast<int>(std::lround(d)));
        });
        take(sec, "points_per_delta",
             [&](const TomlValue& v) { cfg.points_per_delta = static_cast<int>(v.integer()); });
        expect_empty(sec, "grid");
        if (!cfg.grid_n.empty() && cfg.points_per_delta > 0)
            throw std::invalid_argument("config: [grid] n and points_per_delta are exclusive");
    }
    {
        auto& sec = sections["kernel"];
        take(sec, "family", [&](const TomlValue& v) { cfg.kernel_family = v.string(); });
        take(sec, "p", [&](const TomlValue& v) { cfg.p = v.number(); });
        expect_empty(sec, "kernel");
    }
    {
        auto& sec = sections["coefficient"];
        take(sec, "spec", [&](const TomlValue& v) { cfg.coefficient_spec = v.string(); });
        expect_empty(sec, "coefficient");
    }
    {
        auto& sec = sections["load"];
        take(sec, "f", [&](const TomlValue& v) { cfg.load_spec = v.string(); });
        expect_empty(sec, "load");
    }
    {
        auto& sec = sections["field"];
        take(sec, "u", [&](const TomlValue& v) { cfg.field_spec = v.string(); });
        expect_empty(sec, "field");
    }
    {
        auto& sec = sections["sweep"];
        take(sec, "experiment", [&](const TomlValue& v) { cfg.experiment = v.string(); });
        take(sec, "deltas", [&](const TomlValue& v) { cfg.deltas = v.numbers(); });
        take(sec, "tol_ineq", [&](const TomlValue& v) { cfg.tol_ineq = v.number(); });
        take(sec, "tol_grad", [&](const TomlValue& v) { cfg.tol_grad = v.number(); });
        take(sec, "max_iter", [&](const TomlValue& v) { cfg.max_iter = v.integer(); });
        take(sec, "k_list", [&](const TomlValue& v) {
            cfg.k_list.clear();
            for (double d : v.numbers()) cfg.k_list.push_back(static_cast<int>(std::lround(d)));
        });
        take(sec, "f_list", [&](const TomlValue& v) { cfg.f_list = v.strings(); });
        take(sec, "xi_list", [&](const TomlValue& v) { cfg.xi_list = v.strings(); });
        take(sec, "residual_tol", [&](const TomlValue& v) { cfg.residual_tol = v.number(); });
        expect_empty(sec, "sweep");
    }
    {
        auto& sec = sections["output"];
        take(sec, "base", [&](const TomlValue& v) { cfg.output_base = v.string(); });
        take(sec, "formats", [&](const TomlValue& v) { cfg.formats = v.strings(); });
        expect_empty(sec, "output");
    }

    if (!kExperiments.count(cfg.experiment))
        throw std::invalid_argument("config: unknown or missing experiment '" + cfg.experiment +
                                    "'");
    for (size_t i = 1; i < cfg.deltas.size(); ++i)
        if (!(cfg.deltas[i] < cfg.deltas[i - 1]))
            throw std::invalid_argument("config: deltas must be strictly decreasing");
    for (double d : cfg.deltas)
        if (!(d > 0)) throw std::invalid_argument("config: deltas must be positive");
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return config_from_string(buffer.str());
}

}  // namespace nlpl
