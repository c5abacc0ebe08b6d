#include "curlwave/config.hpp"

#include "curlwave/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace curlwave {

using json = nlohmann::json;

namespace {

constexpr const char* kinds[] = {"breather_plus",  "breather_minus",    "dark_breather",
                                 "dark_constant",  "rogue_wave",        "rogue_approximant",
                                 "monochromatic",  "explicit_rogue"};

std::string join(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
}

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw ValidationError(where.empty() ? "(root)" : where, "expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : obj.items())
        if (!ok.count(key)) throw ValidationError(join(where, key), "unknown key");
}

double number(const json& obj, const std::string& key, const std::string& where) {
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ValidationError(join(where, key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ValidationError(join(where, key), "must be finite");
    return d;
}

double positive(const json& obj, const std::string& key, const std::string& where) {
    const double d = number(obj, key, where);
    if (!(d > 0.0)) throw ValidationError(join(where, key), "must be positive");
    return d;
}

int integer(const json& obj, const std::string& key, const std::string& where) {
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) throw ValidationError(join(where, key), "expected an integer");
    return v.get<int>();
}

std::string text(const json& obj, const std::string& key, const std::string& where) {
    const auto& v = obj.at(key);
    if (!v.is_string()) throw ValidationError(join(where, key), "expected a string");
    return v.get<std::string>();
}

// Accepts a number or an expression string; numbers are kept with full precision.
std::string expression_text(const json& obj, const std::string& key, const std::string& where) {
    const auto& v = obj.at(key);
    if (v.is_number()) {
        std::ostringstream o;
        o.precision(17);
        o << v.get<double>();
        return o.str();
    }
    if (!v.is_string()) throw ValidationError(join(where, key), "expected a number or an expression");
    return v.get<std::string>();
}

std::pair<double, double> interval(const json& obj, const std::string& key, const std::string& where) {
    const auto& v = obj.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw ValidationError(join(where, key), "expected [lo, hi]");
    return {v[0].get<double>(), v[1].get<double>()};
}

bool flag(const json& obj, const std::string& key, const std::string& where) {
    const auto& v = obj.at(key);
    if (!v.is_boolean()) throw ValidationError(join(where, key), "expected true or false");
    return v.get<bool>();
}

void check_expression(const std::string& src, const std::vector<Var>& vars, const std::string& key) {
    try {
        Expression::parse(src, vars);
    } catch (const ParseError& e) {
        throw ValidationError(key, e.what());
    }
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

Variant parse_variant(const std::string& name) {
    if (name == "plus") return Variant::PlusFocusing;
    if (name == "minus") return Variant::MinusDefocusing;
    if (name == "rogue") return Variant::Rogue;
    throw ValidationError("equation", "expected plus, minus or rogue (got \"" + name + "\")");
}

FieldKind parse_kind(const std::string& name) {
    for (int i = 0; i < 8; ++i)
        if (name == kinds[i]) return static_cast<FieldKind>(i);
    throw ValidationError("kind", "unknown field kind \"" + name + "\"");
}

RunConfig parse_config_text(const std::string& source) {
    json doc;
    try {
        doc = json::parse(source);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(source, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError("malformed JSON", line, col);
    }
    RunConfig cfg;
    only_keys(doc, "", {"kind", "equation", "p", "geometry", "coefficients", "omega", "T",
                        "phase_shift", "grid", "tolerances", "periodmap", "approximate", "checks",
                        "output", "seed"});
    if (doc.contains("kind")) {
        cfg.kind = text(doc, "kind", "");
        parse_kind(cfg.kind);
    }
    if (doc.contains("equation")) cfg.equation = parse_variant(text(doc, "equation", ""));
    if (doc.contains("p")) {
        cfg.p = number(doc, "p", "");
        if (!(cfg.p > 1.0)) throw ValidationError("p", "p must exceed 1");
    }
    if (doc.contains("geometry")) {
        const auto& g = doc["geometry"];
        only_keys(g, "geometry", {"family", "gamma", "r0", "g", "G", "tube"});
        if (g.contains("family")) cfg.geometry.family = text(g, "family", "geometry");
        if (g.contains("gamma")) cfg.geometry.gamma = positive(g, "gamma", "geometry");
        if (g.contains("r0")) {
            cfg.geometry.r0 = number(g, "r0", "geometry");
            if (cfg.geometry.r0 < 0.0) throw ValidationError("geometry.r0", "must be non-negative");
        }
        if (g.contains("g")) cfg.geometry.g = expression_text(g, "g", "geometry");
        if (g.contains("G")) cfg.geometry.G = expression_text(g, "G", "geometry");
        if (g.contains("tube")) cfg.geometry.tube = positive(g, "tube", "geometry");
        const auto& f = cfg.geometry.family;
        if (f != "torus" && f != "cone_axial" && f != "cone_abs_axial" && f != "custom")
            throw ValidationError("geometry.family",
                                  "expected torus, cone_axial, cone_abs_axial or custom");
        if (f == "custom") {
            if (cfg.geometry.g.empty() || cfg.geometry.G.empty())
                throw ValidationError("geometry", "custom family needs both g and G");
            check_expression(cfg.geometry.g, {Var::X1, Var::X2, Var::X3, Var::R}, "geometry.g");
            check_expression(cfg.geometry.G, {Var::Zeta}, "geometry.G");
        } else if (!cfg.geometry.g.empty() || !cfg.geometry.G.empty()) {
            throw ValidationError("geometry", "g and G are only accepted for the custom family");
        }
    }
    if (doc.contains("coefficients")) {
        const auto& c = doc["coefficients"];
        only_keys(c, "coefficients", {"s", "q", "V", "sigma_inf", "tau_inf", "delta"});
        if (c.contains("s")) cfg.coefficients.s = expression_text(c, "s", "coefficients");
        if (c.contains("q")) cfg.coefficients.q = expression_text(c, "q", "coefficients");
        if (c.contains("V")) cfg.coefficients.V = expression_text(c, "V", "coefficients");
        if (c.contains("sigma_inf")) cfg.coefficients.sigma_inf = positive(c, "sigma_inf", "coefficients");
        if (c.contains("tau_inf")) cfg.coefficients.tau_inf = positive(c, "tau_inf", "coefficients");
        if (c.contains("delta")) cfg.coefficients.delta = positive(c, "delta", "coefficients");
    }
    check_expression(cfg.coefficients.s, {Var::Zeta}, "coefficients.s");
    check_expression(cfg.coefficients.q, {Var::Zeta}, "coefficients.q");
    check_expression(cfg.coefficients.V, {Var::Zeta}, "coefficients.V");
    if (doc.contains("omega")) {
        cfg.omega = number(doc, "omega", "");
        if (*cfg.omega < 0.0) throw ValidationError("omega", "must be non-negative");
    }
    if (doc.contains("T")) cfg.T = positive(doc, "T", "");
    if (doc.contains("phase_shift")) {
        cfg.phase_shift = expression_text(doc, "phase_shift", "");
        check_expression(cfg.phase_shift, {Var::Zeta}, "phase_shift");
    }
    if (doc.contains("grid")) {
        const auto& g = doc["grid"];
        only_keys(g, "grid", {"extent", "resolution", "t_range", "t_samples"});
        if (g.contains("extent")) cfg.grid.extent = positive(g, "extent", "grid");
        if (g.contains("resolution")) {
            cfg.grid.resolution = integer(g, "resolution", "grid");
            if (cfg.grid.resolution < 2) throw ValidationError("grid.resolution", "must be at least 2");
        }
        if (g.contains("t_range")) {
            const auto [a, b] = interval(g, "t_range", "grid");
            if (!(b >= a)) throw ValidationError("grid.t_range", "must satisfy lo <= hi");
            cfg.grid.t_min = a;
            cfg.grid.t_max = b;
        }
        if (g.contains("t_samples")) {
            cfg.grid.t_samples = integer(g, "t_samples", "grid");
            if (cfg.grid.t_samples < 1) throw ValidationError("grid.t_samples", "must be at least 1");
        }
    }
    if (doc.contains("tolerances")) {
        const auto& t = doc["tolerances"];
        only_keys(t, "tolerances", {"residual", "parallelism", "periodicity", "curl", "fd_step",
                                    "curl_step", "negative_control"});
        auto& o = cfg.tolerances;
        if (t.contains("residual")) o.residual = positive(t, "residual", "tolerances");
        if (t.contains("parallelism")) o.parallelism = positive(t, "parallelism", "tolerances");
        if (t.contains("periodicity")) o.periodicity = positive(t, "periodicity", "tolerances");
        if (t.contains("curl")) o.curl = positive(t, "curl", "tolerances");
        if (t.contains("fd_step")) o.fd_step = positive(t, "fd_step", "tolerances");
        if (t.contains("curl_step")) o.curl_step = positive(t, "curl_step", "tolerances");
        if (t.contains("negative_control"))
            o.negative_control = positive(t, "negative_control", "tolerances");
    }
    if (doc.contains("periodmap")) {
        const auto& m = doc["periodmap"];
        only_keys(m, "periodmap", {"c_range", "s_range", "samples"});
        if (m.contains("c_range")) cfg.periodmap.c_range = interval(m, "c_range", "periodmap");
        if (m.contains("s_range")) cfg.periodmap.s_range = interval(m, "s_range", "periodmap");
        if (m.contains("samples")) {
            cfg.periodmap.samples = integer(m, "samples", "periodmap");
            if (cfg.periodmap.samples < 2) throw ValidationError("periodmap.samples", "must be at least 2");
        }
    }
    if (doc.contains("approximate")) {
        const auto& a = doc["approximate"];
        only_keys(a, "approximate", {"T_list"});
        if (a.contains("T_list")) {
            const auto& l = a["T_list"];
            if (!l.is_array() || l.empty()) throw ValidationError("approximate.T_list", "expected a non-empty array");
            cfg.T_list.clear();
            for (const auto& v : l) {
                if (!v.is_number() || !(v.get<double>() > 0.0))
                    throw ValidationError("approximate.T_list", "entries must be positive numbers");
                cfg.T_list.push_back(v.get<double>());
            }
        }
    }
    if (doc.contains("checks")) {
        const auto& c = doc["checks"];
        only_keys(c, "checks", {"curl", "decay", "negative_control", "support_R", "holder", "shells",
                                "decay_radius"});
        auto& o = cfg.checks;
        if (c.contains("curl")) o.curl = flag(c, "curl", "checks");
        if (c.contains("decay")) o.decay = flag(c, "decay", "checks");
        if (c.contains("negative_control")) o.negative_control = flag(c, "negative_control", "checks");
        if (c.contains("support_R")) o.support_R = positive(c, "support_R", "checks");
        if (c.contains("decay_radius")) o.decay_radius = positive(c, "decay_radius", "checks");
        if (c.contains("holder")) {
            const auto& h = c["holder"];
            only_keys(h, "checks.holder", {"T", "pairs"});
            HolderSpec hs;
            if (h.contains("T")) hs.T = positive(h, "T", "checks.holder");
            if (h.contains("pairs")) {
                hs.pairs = integer(h, "pairs", "checks.holder");
                if (hs.pairs < 1) throw ValidationError("checks.holder.pairs", "must be at least 1");
            }
            o.holder = hs;
        }
        if (c.contains("shells")) {
            const auto& l = c["shells"];
            if (!l.is_array() || l.size() < 4) throw ValidationError("checks.shells", "expected at least 4 radii");
            for (const auto& v : l) {
                if (!v.is_number()) throw ValidationError("checks.shells", "radii must be numbers");
                o.shells.push_back(v.get<double>());
            }
            if (!std::is_sorted(o.shells.begin(), o.shells.end()))
                throw ValidationError("checks.shells", "radii must be increasing");
        }
    }
    if (doc.contains("output")) {
        const auto& o = doc["output"];
        only_keys(o, "output", {"field", "diagnostics", "table"});
        if (o.contains("field")) cfg.output.field = text(o, "field", "output");
        if (o.contains("diagnostics")) cfg.output.diagnostics = text(o, "diagnostics", "output");
        if (o.contains("table")) cfg.output.table = text(o, "table", "output");
    }
    if (doc.contains("seed")) {
        const auto& s = doc["seed"];
        if (!s.is_number_unsigned()) throw ValidationError("seed", "expected a non-negative integer");
        cfg.seed = s.get<std::uint64_t>();
    }
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

GeometryProfile RunConfig::build_geometry() const {
    GeometryProfile geo;
    const auto& g = geometry;
    if (g.family == "torus") geo = GeometryProfile::torus(g.r0);
    else if (g.family == "cone_axial") geo = GeometryProfile::cone_axial(g.gamma, g.r0);
    else if (g.family == "cone_abs_axial") geo = GeometryProfile::cone_abs_axial(g.gamma, g.r0);
    else
        geo = GeometryProfile::custom(Expression::parse(g.g, {Var::X1, Var::X2, Var::X3, Var::R}),
                                      Expression::parse(g.G, {Var::Zeta}));
    geo.set_tube(g.tube);
    return geo;
}

CoefficientProfiles RunConfig::build_coefficients() const {
    const std::vector<Var> z{Var::Zeta};
    auto c = CoefficientProfiles::from_expressions(Expression::parse(coefficients.s, z),
                                                   Expression::parse(coefficients.q, z),
                                                   Expression::parse(coefficients.V, z));
    c.sigma_inf = coefficients.sigma_inf;
    c.tau_inf = coefficients.tau_inf;
    c.delta = coefficients.delta;
    return c;
}

PhaseShift RunConfig::build_phase_shift() const {
    if (phase_shift.empty()) return nullptr;
    const auto e = Expression::parse(phase_shift, {Var::Zeta});
    return [e](double z) { return e(z); };
}

}  // namespace curlwave
