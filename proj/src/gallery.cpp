#include "chm/gallery.hpp"

#include "chm/errors.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace chm {

namespace {

SystemPtr make_system(std::vector<Similitude> maps) {
    return std::make_shared<const IfSystem>(std::move(maps));
}

Vec vec1(double x) {
    Vec v(1);
    v << x;
    return v;
}

Vec vec2(double x, double y) {
    Vec v(2);
    v << x, y;
    return v;
}

// Accepts "0.2" or "1/8".
double parse_number(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return std::stod(text);
        const double num = std::stod(text.substr(0, slash));
        const double den = std::stod(text.substr(slash + 1));
        if (den == 0.0) throw InvalidSystemError("zero denominator in '" + text + "'");
        return num / den;
    } catch (const std::invalid_argument&) {
        throw InvalidSystemError("cannot parse number '" + text + "'");
    }
}

struct ParsedName {
    std::string family;
    std::vector<double> args;
};

ParsedName parse_name(const std::string& name) {
    ParsedName out;
    const auto open = name.find('(');
    if (open == std::string::npos) {
        out.family = name;
        return out;
    }
    if (name.back() != ')') throw InvalidSystemError("malformed gallery name '" + name + "'");
    out.family = name.substr(0, open);
    std::stringstream args(name.substr(open + 1, name.size() - open - 2));
    std::string piece;
    while (std::getline(args, piece, ',')) out.args.push_back(parse_number(piece));
    return out;
}

void expect_args(const ParsedName& p, std::size_t lo, std::size_t hi) {
    if (p.args.size() < lo || p.args.size() > hi) {
        throw InvalidSystemError("gallery entry '" + p.family + "' takes " + std::to_string(lo) +
                                 (hi != lo ? ".." + std::to_string(hi) : "") + " parameter(s)");
    }
}

GalleryEntry cantor_lambda(double lambda, bool middle_third) {
    if (!(lambda > 0.0 && lambda < 0.5)) {
        throw InvalidSystemError("cantor-lambda needs 0 < lambda < 1/2 for separated cylinders");
    }
    GalleryEntry e;
    e.name = middle_third ? "cantor-1-3" : "cantor-lambda(" + std::to_string(lambda) + ")";
    e.system = make_system({Similitude::homothety(lambda, vec1(0.0)),
                            Similitude::homothety(lambda, vec1(1.0 - lambda))});
    e.expected_s = std::log(2.0) / -std::log(lambda);
    if (lambda <= 1.0 / 3.0 + 1e-15) {
        e.expected_csm = std::pow(2.0 * (1.0 - lambda), *e.expected_s);
        e.csm_status = GalleryEntry::Status::proven;
        e.note = "closed form (2(1-lambda))^s";
    } else {
        e.admissibility_warning = "closed form (2(1-lambda))^s is established for lambda <= 1/3 only";
    }
    if (middle_third) {
        e.expected_table = {{0, 1.54856}, {1, 1.03238}, {2, 1.19902}, {3, 1.19902}, {4, 1.19902},
                            {5, 1.19902}, {6, 1.19902}, {7, 1.19902}, {8, 1.19902}};
    }
    return e;
}

GalleryEntry sym_cantor(double l1, double l2) {
    if (!(l1 > 0.0 && l2 > 0.0 && 2.0 * l1 + l2 < 1.0)) {
        throw InvalidSystemError("sym-cantor needs l1, l2 > 0 with 2*l1 + l2 < 1");
    }
    GalleryEntry e;
    e.name = "sym-cantor(" + std::to_string(l1) + "," + std::to_string(l2) + ")";
    e.system = make_system({Similitude::homothety(l1, vec1(0.0)),
                            Similitude::homothety(l2, vec1((1.0 - l2) / 2.0)),
                            Similitude::homothety(l1, vec1(1.0 - l1))});
    e.expected_csm = 1.0;
    e.csm_status = GalleryEntry::Status::proven;
    e.note = "the unit interval is the minimizing ball; value 1";
    if ((1.0 - 2.0 * l1 - l2) / 2.0 < std::max(l1, l2)) {
        e.admissibility_warning =
            "parameters violate (1 - 2*l1 - l2)/2 >= max(l1, l2); the closed form is not established here";
    }
    const bool is_default = std::abs(l1 - 0.125) < 1e-15 && std::abs(l2 - 0.2) < 1e-15;
    if (is_default) {
        e.expected_table = {{0, 1.0}, {1, 1.0}, {2, 1.0}, {3, 1.0}};
    }
    return e;
}

GalleryEntry planar4(double la, double lb) {
    const double cap = 1.0 / (2.0 + std::sqrt(2.0));
    if (!(la > 0.0 && lb > 0.0 && la <= cap && lb <= cap)) {
        throw InvalidSystemError("planar4 needs ratios in (0, 1/(2+sqrt 2)]");
    }
    GalleryEntry e;
    e.name = "planar4(" + std::to_string(la) + "," + std::to_string(lb) + ")";
    e.system = make_system({Similitude::homothety(la, vec2(0.0, 0.0)),
                            Similitude::homothety(lb, vec2(1.0 - lb, 0.0)),
                            Similitude::homothety(la, vec2(1.0 - la, 1.0 - la)),
                            Similitude::homothety(lb, vec2(0.0, 1.0 - lb))});
    const bool is_default = std::abs(la - 1.0 / 400.0) < 1e-18 && std::abs(lb - 1.0 / 20.0) < 1e-17;
    if (is_default) {
        e.expected_s = std::log(std::sqrt(3.0) + 1.0) / std::log(20.0);
        e.expected_csm = std::pow(19.0 * std::sqrt(2.0) / 10.0, *e.expected_s);
        e.csm_status = GalleryEntry::Status::proven;
        e.note = "closed form (19*sqrt(2)/10)^s";
        e.expected_table = {{0, 1.4174},  {1, 1.39321}, {2, 1.39321},
                            {3, 1.39321}, {4, 1.39321}, {5, 1.39321}};
    }
    return e;
}

GalleryEntry sierpinski(double r) {
    if (!(r > 0.0 && r < 0.5)) {
        throw InvalidSystemError("sierpinski(r) needs 0 < r < 1/2; touching gaskets are out of catalog");
    }
    GalleryEntry e;
    e.name = "sierpinski(" + std::to_string(r) + ")";
    const double h = (1.0 - r) * std::sqrt(3.0) / 2.0;
    e.system = make_system({Similitude::homothety(r, vec2(0.0, 0.0)),
                            Similitude::homothety(r, vec2(1.0 - r, 0.0)),
                            Similitude::homothety(r, vec2((1.0 - r) / 2.0, h))});
    e.expected_s = std::log(3.0) / -std::log(r);
    if (r < 0.25) {
        e.expected_csm = std::pow(2.0 * (1.0 - r) * std::sqrt(r * r + r + 1.0), *e.expected_s);
        e.csm_status = GalleryEntry::Status::conjectural;
        e.note = "stabilized value [2(1-r)sqrt(r^2+r+1)]^s, conjectural";
    } else if (std::abs(r - 1.0 / 3.0) < 1e-12) {
        e.expected_csm = 1.537;
        e.csm_status = GalleryEntry::Status::conjectural;
        e.note = "stabilized value to three decimals, conjectural";
    }
    if (std::abs(r - 0.2) < 1e-15) {
        e.expected_table = {{0, 1.60504}, {1, 1.51231}, {2, 1.48326},
                            {3, 1.48326}, {4, 1.48326}, {5, 1.48326}};
    }
    return e;
}

GalleryEntry quarter_cantor() {
    GalleryEntry e;
    e.name = "quarter-cantor";
    const double r = 0.25;
    e.system = make_system({Similitude::homothety(r, vec2(0.0, 0.0)),
                            Similitude::homothety(r, vec2(0.75, 0.0)),
                            Similitude::homothety(r, vec2(0.0, 0.75)),
                            Similitude::homothety(r, vec2(0.75, 0.75))});
    e.expected_s = 1.0;
    e.expected_csm = 1.95;
    e.csm_status = GalleryEntry::Status::conjectural;
    e.note = "stabilized near 1.95; 1.95542 is a certified upper bound (generation 3 ball)";
    e.expected_table = {{0, 2.66667}, {1, 1.92296}, {2, 1.95814}, {3, 1.95542},
                        {4, 1.95306}, {5, 1.95388}, {6, 1.95417}};
    return e;
}

} // namespace

GalleryEntry gallery_get(const std::string& name) {
    const ParsedName p = parse_name(name);
    if (p.family == "cantor-1-3") {
        expect_args(p, 0, 0);
        return cantor_lambda(1.0 / 3.0, true);
    }
    if (p.family == "cantor-lambda") {
        expect_args(p, 1, 1);
        return cantor_lambda(p.args[0], false);
    }
    if (p.family == "sym-cantor") {
        expect_args(p, 0, 2);
        if (p.args.empty()) return sym_cantor(0.125, 0.2);
        expect_args(p, 2, 2);
        return sym_cantor(p.args[0], p.args[1]);
    }
    if (p.family == "planar4") {
        expect_args(p, 0, 2);
        if (p.args.empty()) return planar4(1.0 / 400.0, 1.0 / 20.0);
        expect_args(p, 2, 2);
        return planar4(p.args[0], p.args[1]);
    }
    if (p.family == "sierpinski") {
        expect_args(p, 1, 1);
        return sierpinski(p.args[0]);
    }
    if (p.family == "quarter-cantor") {
        expect_args(p, 0, 0);
        return quarter_cantor();
    }
    std::string catalog;
    for (const auto& n : gallery_names()) {
        if (!catalog.empty()) catalog += ", ";
        catalog += n;
    }
    throw InvalidSystemError("unknown gallery name '" + name + "'; catalog: " + catalog);
}

std::vector<std::string> gallery_names() {
    return {"cantor-1-3",          "cantor-lambda(l)", "sym-cantor",      "sym-cantor(l1,l2)",
            "planar4",             "planar4(l13,l24)", "sierpinski(r)",   "quarter-cantor"};
}

} // namespace chm
