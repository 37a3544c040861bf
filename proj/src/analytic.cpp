#include "nlpl/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "nlpl/quadrature.hpp"

namespace nlpl {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> parse_numbers(const std::string& args) {
    std::vector<double> out;
    std::stringstream ss(args);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t used = 0;
        const double v = std::stod(item, &used);
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
        if (used != item.size()) throw std::invalid_argument("bad number '" + item + "'");
        out.push_back(v);
    }
    return out;
}

std::optional<Domain> clip_box(const Domain& a, const Domain& b) {
    std::vector<double> lo(static_cast<size_t>(a.dim())), hi(static_cast<size_t>(a.dim()));
    for (int d = 0; d < a.dim(); ++d) {
        lo[static_cast<size_t>(d)] = std::max(a.lower(d), b.lower(d));
        hi[static_cast<size_t>(d)] = std::min(a.upper(d), b.upper(d));
        if (!(hi[static_cast<size_t>(d)] > lo[static_cast<size_t>(d)])) return std::nullopt;
    }
    return Domain(lo, hi);
}

}  // namespace

AnalyticField AnalyticField::constant(double c) {
    AnalyticField f;
    f.kind_ = Kind::constant;
    f.a_ = c;
    f.spec_ = "const:" + std::to_string(c);
    return f;
}

AnalyticField AnalyticField::affine(double a, double b) {
    AnalyticField f;
    f.kind_ = Kind::affine;
    f.a_ = a;
    f.b_ = b;
    f.spec_ = "affine:" + std::to_string(a) + "," + std::to_string(b);
    return f;
}

AnalyticField AnalyticField::quadratic(double a, double b, double c) {
    AnalyticField f;
    f.kind_ = Kind::quadratic;
    f.a_ = a;
    f.b_ = b;
    f.c_ = c;
    f.spec_ = "quadratic:" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c);
    return f;
}

AnalyticField AnalyticField::sin_pi() {
    AnalyticField f;
    f.kind_ = Kind::sin_pi;
    f.spec_ = "sinpi";
    return f;
}

AnalyticField AnalyticField::indicator(const Domain& box) {
    AnalyticField f;
    f.kind_ = Kind::indicator;
    f.box_ = box;
    f.spec_ = "indicator";
    return f;
}

AnalyticField AnalyticField::parse(const std::string& spec, int dim) {
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    AnalyticField f;
    if (head == "const") {
        const auto v = parse_numbers(args);
        if (v.size() != 1) throw std::invalid_argument("const:<v> takes one value");
        f = constant(v[0]);
    } else if (head == "zero") {
        f = constant(0.0);
    } else if (head == "x") {
        f = affine(0.0, 1.0);
    } else if (head == "affine") {
        const auto v = parse_numbers(args);
        if (v.size() != 2) throw std::invalid_argument("affine:<a>,<b> takes two values");
        f = affine(v[0], v[1]);
    } else if (head == "x2") {
        f = quadratic(0.0, 0.0, 1.0);
    } else if (head == "quadratic") {
        const auto v = parse_numbers(args);
        if (v.size() != 3) throw std::invalid_argument("quadratic:<a>,<b>,<c> takes three values");
        f = quadratic(v[0], v[1], v[2]);
    } else if (head == "sinpi") {
        f = sin_pi();
    } else if (head == "indicator") {
        const auto v = parse_numbers(args);
        if (static_cast<int>(v.size()) != 2 * dim)
            throw std::invalid_argument("indicator needs lo,hi per axis");
        if (dim == 1)
            f = indicator(Domain::interval(v[0], v[1]));
        else
            f = indicator(Domain::box2(v[0], v[1], v[2], v[3]));
    } else {
        throw std::invalid_argument("unknown field spec '" + spec + "'");
    }
    f.spec_ = spec;
    return f;
}

double AnalyticField::profile(double t) const {
    switch (kind_) {
        case Kind::constant: return a_;
        case Kind::affine: return a_ + b_ * t;
        case Kind::quadratic: return a_ + b_ * t + c_ * t * t;
        case Kind::sin_pi: return std::sin(kPi * t);
        case Kind::indicator: return 0.0;  // handled separately
    }
    return 0.0;
}

double AnalyticField::profile_antiderivative(double t) const {
    switch (kind_) {
        case Kind::constant: return a_ * t;
        case Kind::affine: return a_ * t + 0.5 * b_ * t * t;
        case Kind::quadratic: return a_ * t + 0.5 * b_ * t * t + c_ * t * t * t / 3.0;
        case Kind::sin_pi: return -std::cos(kPi * t) / kPi;
        case Kind::indicator: return 0.0;
    }
    return 0.0;
}

double AnalyticField::value(const Point& x) const {
    if (kind_ == Kind::indicator) {
        // Half-open membership keeps simple partitions exact.
        for (int d = 0; d < box_->dim(); ++d)
            if (!(x[d] >= box_->lower(d) && x[d] < box_->upper(d))) return 0.0;
        return 1.0;
    }
    return profile(x[0]);
}

double AnalyticField::integral(const Domain& box) const {
    if (kind_ == Kind::indicator) {
        const auto clipped = clip_box(box, *box_);
        return clipped ? clipped->measure() : 0.0;
    }
    double cross = 1.0;
    for (int d = 1; d < box.dim(); ++d) cross *= box.side(d);
    return (profile_antiderivative(box.upper(0)) - profile_antiderivative(box.lower(0))) * cross;
}

double AnalyticField::min_value(const Domain& box) const {
    if (kind_ == Kind::indicator) {
        // 0 unless the box is entirely inside the indicator box.
        const auto clipped = clip_box(box, *box_);
        if (clipped && std::abs(clipped->measure() - box.measure()) < 1e-15) return 1.0;
        return 0.0;
    }
    const double lo = box.lower(0), hi = box.upper(0);
    double m = std::min(profile(lo), profile(hi));
    if (kind_ == Kind::quadratic && c_ != 0.0) {
        const double v = -b_ / (2.0 * c_);
        if (v > lo && v < hi) m = std::min(m, profile(v));
    }
    if (kind_ == Kind::sin_pi) {
        for (double t = std::ceil(lo - 0.5) + 0.5; t < hi; t += 1.0)
            if (t > lo) m = std::min(m, profile(t));
    }
    return m;
}

double AnalyticField::max_value(const Domain& box) const {
    if (kind_ == Kind::indicator) return boxes_intersect(box, *box_) ? 1.0 : 0.0;
    const double lo = box.lower(0), hi = box.upper(0);
    double m = std::max(profile(lo), profile(hi));
    if (kind_ == Kind::quadratic && c_ != 0.0) {
        const double v = -b_ / (2.0 * c_);
        if (v > lo && v < hi) m = std::max(m, profile(v));
    }
    if (kind_ == Kind::sin_pi) {
        for (double t = std::ceil(lo - 0.5) + 0.5; t < hi; t += 1.0)
            if (t > lo) m = std::max(m, profile(t));
    }
    return m;
}

double AnalyticField::sup_abs(const Domain& box) const {
    return std::max(std::abs(min_value(box)), std::abs(max_value(box)));
}

double AnalyticField::l1_norm(const Domain& box) const {
    if (min_value(box) >= 0.0) return integral(box);
    if (kind_ == Kind::indicator) return integral(box);
    double cross = 1.0;
    for (int d = 1; d < box.dim(); ++d) cross *= box.side(d);
    return cross * integrate([&](double t) { return std::abs(profile(t)); }, box.lower(0),
                             box.upper(0), 1e-12);
}

const Domain& AnalyticField::indicator_box() const {
    if (kind_ != Kind::indicator || !box_)
        throw std::logic_error("indicator_box: field is not an indicator");
    return *box_;
}

double integrate_product(const AnalyticField& f, const AnalyticField& g, const Domain& box) {
    const bool fi = f.kind() == AnalyticField::Kind::indicator;
    const bool gi = g.kind() == AnalyticField::Kind::indicator;
    if (fi && gi) {
        const auto once = clip_box(box, f.indicator_box());
        if (!once) return 0.0;
        const auto twice = clip_box(*once, g.indicator_box());
        return twice ? twice->measure() : 0.0;
    }
    if (fi) return integrate_product(g, f, box);
    if (gi) {
        const auto clipped = clip_box(box, g.indicator_box());
        return clipped ? f.integral(*clipped) : 0.0;
    }
    double cross = 1.0;
    for (int d = 1; d < box.dim(); ++d) cross *= box.side(d);
    Point p;
    p.dim = box.dim();
    return cross * integrate(
                       [&](double t) {
                           Point q = p;
                           q[0] = t;
                           return f.value(q) * g.value(q);
                       },
                       box.lower(0), box.upper(0), 1e-13);
}

}  // namespace nlpl
