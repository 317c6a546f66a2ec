#include "resolventlab/io.hpp"

#include <fstream>
#include <numbers>

#include "resolventlab/errors.hpp"

namespace rlab::io {

namespace {

constexpr double kPi = std::numbers::pi;

const Json& field(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(path + "/" + key, "missing field");
    return *it;
}

double number(const Json& j, const std::string& path) {
    if (!j.is_number()) throw SchemaError(path, "expected a number");
    return j.get<double>();
}

double number_or(const Json& j, const char* key, double fallback, const std::string& path) {
    auto it = j.find(key);
    return it == j.end() ? fallback : number(*it, path + "/" + key);
}

std::string text(const Json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError(path, "expected a string");
    return j.get<std::string>();
}

DensityRule rule_from_string(const std::string& s, const std::string& path) {
    if (s == "legendre") return DensityRule::GaussLegendre;
    if (s == "edge") return DensityRule::ChebyshevEdge;
    if (s == "periodic") return DensityRule::Periodic;
    throw SchemaError(path, "unknown density rule '" + s + "' (legendre, edge, periodic)");
}

const char* rule_name(DensityRule r) {
    switch (r) {
        case DensityRule::GaussLegendre: return "legendre";
        case DensityRule::ChebyshevEdge: return "edge";
        case DensityRule::Periodic: return "periodic";
    }
    return "legendre";
}

template <class F>
auto wrap(const std::string& path, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const SchemaError&) {
        throw;
    } catch (const ArgumentError& e) {
        throw SchemaError(path, e.what());
    } catch (const DomainError& e) {
        throw SchemaError(path, e.what());
    }
}

}  // namespace

Complex complex_from_json(const Json& j, const std::string& path) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) throw SchemaError(path, "expected [re, im]");
    return {number(j[0], path + "/0"), number(j[1], path + "/1")};
}

FiniteMeasure measure_from_json(const Json& j, MeasureSupport support, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected a measure object");
    if (auto it = j.find("preset"); it != j.end()) {
        const std::string name = text(*it, path + "/preset");
        return wrap(path, [&]() -> FiniteMeasure {
            if (name == "semicircle") {
                if (support != MeasureSupport::Line) throw SchemaError(path + "/preset", "semicircle lives on the line");
                return semicircle(number_or(j, "mean", 0.0, path), number_or(j, "variance", 1.0, path),
                                  static_cast<std::size_t>(number_or(j, "nodes", 64, path)));
            }
            if (name == "uniform_circle") {
                if (support != MeasureSupport::Circle) throw SchemaError(path + "/preset", "uniform_circle lives on the circle");
                return uniform_circle(number_or(j, "mass", 1.0, path),
                                      static_cast<std::size_t>(number_or(j, "nodes", 64, path)));
            }
            if (name == "dirac") {
                return FiniteMeasure::dirac(number(field(j, "location", path), path + "/location"),
                                            number_or(j, "weight", 1.0, path), support);
            }
            throw SchemaError(path + "/preset", "unknown preset '" + name + "'");
        });
    }

    std::vector<Atom> atoms;
    if (auto it = j.find("atoms"); it != j.end()) {
        const std::string ap = path + "/atoms";
        if (!it->is_array()) throw SchemaError(ap, "expected an array of [location, weight]");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const Json& a = (*it)[i];
            const std::string p = ap + "/" + std::to_string(i);
            if (!a.is_array() || a.size() != 2) throw SchemaError(p, "expected [location, weight]");
            const double w = number(a[1], p + "/1");
            if (!(w >= 0.0)) throw SchemaError(p + "/1", "atom weights must be >= 0");
            atoms.push_back({number(a[0], p + "/0"), w});
        }
    }
    std::optional<SampledDensity> density;
    if (auto it = j.find("density"); it != j.end()) {
        const std::string dp = path + "/density";
        const Json& d = *it;
        const bool circle = support == MeasureSupport::Circle;
        double lo = 0.0;
        double hi = 2.0 * kPi;
        if (auto s = d.find("support"); s != d.end()) {
            if (!s->is_array() || s->size() != 2) throw SchemaError(dp + "/support", "expected [a, b]");
            lo = number((*s)[0], dp + "/support/0");
            hi = number((*s)[1], dp + "/support/1");
        } else if (!circle) {
            throw SchemaError(dp + "/support", "missing field");
        }
        const DensityRule rule = d.contains("rule") ? rule_from_string(text(d["rule"], dp + "/rule"), dp + "/rule")
                                                     : (circle ? DensityRule::Periodic : DensityRule::GaussLegendre);
        const Json& vals = field(d, "values", dp);
        if (!vals.is_array()) throw SchemaError(dp + "/values", "expected an array of numbers");
        std::vector<double> v;
        for (std::size_t i = 0; i < vals.size(); ++i) v.push_back(number(vals[i], dp + "/values/" + std::to_string(i)));
        density = wrap(dp, [&] { return SampledDensity::from_values(lo, hi, std::move(v), rule); });
    }
    return wrap(path, [&] { return FiniteMeasure(support, std::move(atoms), std::move(density)); });
}

NevanlinnaTriple triple_from_json(const Json& j, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected a triple object");
    NevanlinnaTriple q;
    q.alpha = number_or(j, "alpha", 0.0, path);
    q.beta = number_or(j, "beta", 0.0, path);
    if (!(q.alpha >= 0.0)) throw SchemaError(path + "/alpha", "alpha must be >= 0");
    q.rho = j.contains("rho") ? measure_from_json(j["rho"], MeasureSupport::Line, path + "/rho")
                              : measure_from_json(j, MeasureSupport::Line, path);
    return q;
}

HerglotzData herglotz_from_json(const Json& j, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected a Herglotz object");
    HerglotzData u;
    u.imag_const = number_or(j, "imag_const", number_or(j, "alpha", 0.0, path), path);
    u.rho = j.contains("rho") ? measure_from_json(j["rho"], MeasureSupport::Circle, path + "/rho")
                              : measure_from_json(j, MeasureSupport::Circle, path);
    return u;
}

GeneratorSpec generator_spec_from_json(const Json& j, const std::string& path) {
    const std::string kind = text(field(j, "kind", path), path + "/kind");
    if (kind == "berkson_porta") {
        const Complex tau = complex_from_json(field(j, "tau", path), path + "/tau");
        if (std::abs(tau) > 1.0 + 1e-12) throw SchemaError(path + "/tau", "|tau| must be <= 1");
        return BerksonPorta{tau, herglotz_from_json(field(j, "p", path), path + "/p")};
    }
    if (kind == "halfplane_pick") return HalfPlanePick{triple_from_json(field(j, "triple", path), path + "/triple")};
    if (kind == "halfplane_interior") {
        const Complex sigma = complex_from_json(field(j, "sigma", path), path + "/sigma");
        if (sigma.imag() < 0.0) throw SchemaError(path + "/sigma", "sigma must lie in the closed upper half-plane");
        return HalfPlaneInterior{sigma, triple_from_json(field(j, "triple", path), path + "/triple")};
    }
    if (kind == "strip_form") return StripForm{herglotz_from_json(field(j, "p", path), path + "/p")};
    if (kind == "catalog") {
        const std::string name = text(field(j, "name", path), path + "/name");
        Catalog c;
        if (name == "disk_g1" || name == "disk_g2") {
            c.kind = CatalogKind::DiskHyperbolic;
            c.angle = name == "disk_g1" ? 0.0 : kPi;
            return c;
        }
        c.kind = wrap(path + "/name", [&] { return catalog_from_string(name); });
        c.angle = number_or(j, "angle", 0.0, path);
        if (j.contains("domain")) {
            c.domain = wrap(path + "/domain", [&] { return domain_from_string(text(j["domain"], path + "/domain")); });
        }
        return c;
    }
    throw SchemaError(path + "/kind",
                      "unknown generator kind '" + kind +
                          "' (berkson_porta, halfplane_pick, halfplane_interior, strip_form, catalog)");
}

HerglotzField field_from_json(const Json& j, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected a field object");
    if (!j.contains("segments")) {
        const double t_end = number_or(j, "t_end", std::numeric_limits<double>::infinity(), path);
        return HerglotzField::autonomous(make_generator(generator_spec_from_json(j, path)), t_end);
    }
    const Json& segs = j["segments"];
    const std::string sp = path + "/segments";
    if (!segs.is_array() || segs.empty()) throw SchemaError(sp, "expected a non-empty array");
    std::vector<FieldSegment> out;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const std::string p = sp + "/" + std::to_string(i);
        const Json& s = segs[i];
        out.push_back({number(field(s, "t_start", p), p + "/t_start"), number(field(s, "t_end", p), p + "/t_end"),
                       make_generator(generator_spec_from_json(field(s, "generator", p), p + "/generator"))});
    }
    return wrap(sp, [&] { return HerglotzField(std::move(out)); });
}

FIDTriple fid_triple_from_json(const Json& j, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
    FIDTriple t;
    t.a = number_or(j, "a", 0.0, path);
    t.rho = j.contains("rho") ? measure_from_json(j["rho"], MeasureSupport::Line, path + "/rho")
                              : measure_from_json(j, MeasureSupport::Line, path);
    return t;
}

RealMeasure real_measure_from_json(const Json& j, const std::string& path) {
    FiniteMeasure m = measure_from_json(j, MeasureSupport::Line, path);
    return wrap(path, [&] { return RealMeasure(std::move(m)); });
}

FreeLaw free_law_from_json(const Json& j, const std::string& path) {
    if (j.is_object() && j.contains("triple")) return fid_triple_from_json(j["triple"], path + "/triple");
    if (j.is_object() && j.contains("measure")) return real_measure_from_json(j["measure"], path + "/measure");
    throw SchemaError(path, "expected {\"measure\": ...} or {\"triple\": ...}");
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const FiniteMeasure& m) {
    Json j = Json::object();
    Json atoms = Json::array();
    for (const Atom& a : m.atoms()) atoms.push_back(Json::array({a.location, a.weight}));
    j["atoms"] = atoms;
    if (const auto& d = m.density()) {
        j["density"] = {{"support", Json::array({d->lo(), d->hi()})},
                        {"values", std::vector<double>(d->values().begin(), d->values().end())},
                        {"rule", rule_name(d->rule())}};
    }
    return j;
}

Json to_json(const NevanlinnaTriple& q) {
    return {{"alpha", q.alpha}, {"beta", q.beta}, {"rho", to_json(q.rho)}};
}

Json to_json(const HerglotzData& u) { return {{"imag_const", u.imag_const}, {"rho", to_json(u.rho)}}; }

Json to_json(const GeneratorSpec& spec) {
    struct Visitor {
        Json operator()(const BerksonPorta& b) const {
            return {{"kind", "berkson_porta"}, {"tau", to_json(b.tau)}, {"p", to_json(b.p)}};
        }
        Json operator()(const HalfPlanePick& h) const { return {{"kind", "halfplane_pick"}, {"triple", to_json(h.q)}}; }
        Json operator()(const HalfPlaneInterior& h) const {
            return {{"kind", "halfplane_interior"}, {"sigma", to_json(h.sigma)}, {"triple", to_json(h.q)}};
        }
        Json operator()(const StripForm& s) const { return {{"kind", "strip_form"}, {"p", to_json(s.p)}}; }
        Json operator()(const Catalog& c) const {
            return {{"kind", "catalog"},
                    {"name", std::string(to_string(c.kind))},
                    {"angle", c.angle},
                    {"domain", std::string(to_string(c.domain))}};
        }
        Json operator()(const CustomGenerator& c) const {
            throw UnsupportedError("custom generator '" + c.name + "' has no JSON form");
        }
    };
    return std::visit(Visitor{}, spec);
}

Json to_json(const ResolventSolution& sol, double t, Complex w) {
    return {{"t", t},
            {"w", to_json(w)},
            {"z", to_json(sol.value)},
            {"residual", sol.residual},
            {"deriv", to_json(sol.deriv)},
            {"iters", sol.newton_iters}};
}

Json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError(path, "cannot open file");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw SchemaError(path, std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace rlab::io
