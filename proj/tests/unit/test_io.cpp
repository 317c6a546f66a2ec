#include <doctest.h>

#include "resolventlab/io.hpp"
#include "resolventlab/errors.hpp"

using namespace rlab;
using io::Json;

namespace {

std::string schema_path(const Json& j, const std::function<void(const Json&)>& reader) {
    try {
        reader(j);
    } catch (const SchemaError& e) {
        return e.path();
    }
    return "<no error>";
}

}  // namespace

TEST_CASE("complex points") {
    CHECK(io::complex_from_json(Json::parse("[1.5, -2]"), "") == Complex{1.5, -2.0});
    CHECK(io::complex_from_json(Json::parse("3"), "") == Complex{3.0, 0.0});
    CHECK_THROWS_AS(io::complex_from_json(Json::parse("[1]"), "/w"), SchemaError);
    CHECK(io::to_json(Complex{0.25, 4.0}) == Json::parse("[0.25, 4.0]"));
}

TEST_CASE("measures from json") {
    const FiniteMeasure a = io::measure_from_json(Json::parse(R"({"atoms": [[0, 0.5], [2, 1.5]]})"), MeasureSupport::Line, "");
    CHECK(a.total_mass() == doctest::Approx(2.0));
    CHECK(a.atoms().size() == 2);

    const FiniteMeasure s = io::measure_from_json(Json::parse(R"({"preset": "semicircle", "variance": 2})"),
                                                  MeasureSupport::Line, "");
    CHECK(s.integrate([](double x) { return x * x; }) == doctest::Approx(2.0).epsilon(1e-12));

    const FiniteMeasure u = io::measure_from_json(Json::parse(R"({"preset": "uniform_circle", "mass": 3})"),
                                                  MeasureSupport::Circle, "");
    CHECK(u.total_mass() == doctest::Approx(3.0).epsilon(1e-13));

    const FiniteMeasure d = io::measure_from_json(
        Json::parse(R"({"density": {"support": [0, 1], "values": [1, 1, 1, 1], "rule": "legendre"}})"),
        MeasureSupport::Line, "");
    CHECK(d.total_mass() == doctest::Approx(1.0).epsilon(1e-14));

    const FiniteMeasure c = io::measure_from_json(Json::parse(R"({"density": {"values": [1, 1, 1, 1]}})"),
                                                  MeasureSupport::Circle, "");
    CHECK(c.total_mass() == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("measure round trip") {
    const FiniteMeasure m{MeasureSupport::Line, {{-1.0, 0.25}}, semicircle(0.5, 0.5, 16).density()};
    const FiniteMeasure back = io::measure_from_json(io::to_json(m), MeasureSupport::Line, "");
    for (Complex z : {Complex{0.1, 0.3}, Complex{2.0, 1.0}}) CHECK(std::abs(back.cauchy_integral(z) - m.cauchy_integral(z)) < 1e-15);
}

TEST_CASE("schema errors carry a pointer to the offending field") {
    auto measure = [](const Json& j) { io::measure_from_json(j, MeasureSupport::Line, "/mu"); };
    CHECK(schema_path(Json::parse(R"({"atoms": [[0, -1]]})"), measure) == "/mu/atoms/0/1");
    CHECK(schema_path(Json::parse(R"({"atoms": [[0, "x"]]})"), measure) == "/mu/atoms/0/1");
    CHECK(schema_path(Json::parse(R"({"density": {"values": [1]}})"), measure) == "/mu/density/support");
    CHECK(schema_path(Json::parse(R"({"density": {"support": [0, 1], "values": [1], "rule": "simpson"}})"), measure) ==
          "/mu/density/rule");
    CHECK(schema_path(Json::parse(R"({"preset": "cauchy"})"), measure) == "/mu/preset");
    CHECK(schema_path(Json::parse(R"({"density": {"support": [1, 0], "values": [1]}})"), measure) == "/mu/density");

    auto gen = [](const Json& j) { io::generator_spec_from_json(j, "/generator"); };
    CHECK(schema_path(Json::parse(R"({"name": "disk_minus_z"})"), gen) == "/generator/kind");
    CHECK(schema_path(Json::parse(R"({"kind": "mobius"})"), gen) == "/generator/kind");
    CHECK(schema_path(Json::parse(R"({"kind": "catalog", "name": "nope"})"), gen) == "/generator/name");
    CHECK(schema_path(Json::parse(R"({"kind": "berkson_porta", "tau": [2, 0], "p": {}})"), gen) == "/generator/tau");
    CHECK(schema_path(Json::parse(R"({"kind": "halfplane_pick", "triple": {"alpha": -1}})"), gen) ==
          "/generator/triple/alpha");

    auto fld = [](const Json& j) { io::field_from_json(j, "/field"); };
    CHECK(schema_path(Json::parse(R"({"segments": []})"), fld) == "/field/segments");
    CHECK(schema_path(Json::parse(R"({"segments": [{"t_start": 0, "t_end": 1}]})"), fld) ==
          "/field/segments/0/generator");
    CHECK(schema_path(Json::parse(
                          R"({"segments": [{"t_start": 0.5, "t_end": 1, "generator": {"kind": "catalog", "name": "disk_minus_z"}}]})"),
                      fld) == "/field/segments");
}

TEST_CASE("generator specs from json") {
    const Generator g1 = make_generator(io::generator_spec_from_json(Json::parse(R"({"kind": "catalog", "name": "disk_g1"})")));
    CHECK(std::abs(g1(0.5) - catalog::disk_g1()(0.5)) < 1e-15);

    const Generator bp = make_generator(io::generator_spec_from_json(Json::parse(
        R"({"kind": "berkson_porta", "tau": [1, 0], "p": {"atoms": [[0, 0.5]]}})")));
    CHECK(std::abs(bp({0.2, 0.3}) - catalog::disk_parabolic()({0.2, 0.3})) < 1e-14);

    const Generator pick = make_generator(io::generator_spec_from_json(Json::parse(
        R"({"kind": "halfplane_pick", "triple": {"alpha": 0, "beta": 0, "rho": {"atoms": [[0, 1]]}}})")));
    CHECK(std::abs(pick({1.0, 1.0}) + 1.0 / Complex{1.0, 1.0}) < 1e-15);

    const Generator zero_h = make_generator(io::generator_spec_from_json(
        Json::parse(R"({"kind": "catalog", "name": "zero", "domain": "halfplane"})")));
    CHECK(zero_h.domain() == DomainKind::HalfPlane);

    const Generator strip = make_generator(io::generator_spec_from_json(Json::parse(
        R"({"kind": "strip_form", "p": {"atoms": [[0, 0.5]]}})")));
    CHECK(std::abs(strip({1.0, 0.5}) - 1.0) < 1e-13);
}

TEST_CASE("generator spec round trip") {
    const std::vector<GeneratorSpec> specs = {
        BerksonPorta{{0.1, 0.2}, {0.3, FiniteMeasure::dirac(1.0, 0.5, MeasureSupport::Circle)}},
        HalfPlanePick{{0.5, -1.0, FiniteMeasure::dirac(2.0)}},
        HalfPlaneInterior{{0.0, 1.0}, {0.0, 0.0, FiniteMeasure::dirac(0.0)}},
        StripForm{{0.0, uniform_circle(1.0, 8)}},
        Catalog{CatalogKind::DiskHyperbolic, 1.25},
    };
    for (const GeneratorSpec& s : specs) {
        const Generator a = make_generator(s);
        const Generator b = make_generator(io::generator_spec_from_json(io::to_json(s)));
        const Complex z = a.domain() == DomainKind::Disk ? Complex{0.3, -0.2} : Complex{0.4, 0.6};
        CHECK(std::abs(a(z) - b(z)) < 1e-14 * std::max(1.0, std::abs(a(z))));
    }
    CHECK_THROWS_AS(io::to_json(GeneratorSpec{CustomGenerator{"c", DomainKind::Disk, [](Complex z) { return z; }, {}, {}}}),
                    UnsupportedError);
}

TEST_CASE("fields and free laws") {
    const HerglotzField f = io::field_from_json(Json::parse(R"({"segments": [
        {"t_start": 0, "t_end": 1, "generator": {"kind": "catalog", "name": "disk_g1"}},
        {"t_start": 1, "t_end": 2, "generator": {"kind": "catalog", "name": "disk_g2"}}]})"));
    CHECK(f.segments().size() == 2);
    CHECK(std::abs(chain_map(f, 1.0, 0.5).value - 0.2) < 1e-12);

    const HerglotzField a = io::field_from_json(Json::parse(R"({"kind": "catalog", "name": "disk_minus_z", "t_end": 5})"));
    CHECK(a.total_time() == 5.0);

    const FreeLaw m = io::free_law_from_json(Json::parse(R"({"measure": {"preset": "semicircle"}})"), "");
    CHECK(std::holds_alternative<RealMeasure>(m));
    const FreeLaw t = io::free_law_from_json(Json::parse(R"({"triple": {"a": 1, "atoms": [[0, 1]]}})"), "");
    REQUIRE(std::holds_alternative<FIDTriple>(t));
    CHECK(std::get<FIDTriple>(t).a == 1.0);
    CHECK_THROWS_AS(io::free_law_from_json(Json::parse(R"({"measure": {"atoms": [[0, 0.5]]}})"), ""), SchemaError);
    CHECK_THROWS_AS(io::free_law_from_json(Json::parse("{}"), ""), SchemaError);
}

TEST_CASE("resolvent records") {
    const ResolventSolution sol = solve_resolvent(catalog::halfplane_z(), 0.5, kI);
    const Json j = io::to_json(sol, 0.5, kI);
    for (const char* key : {"t", "w", "z", "residual", "deriv", "iters"}) CHECK(j.contains(key));
    CHECK(j["z"][1].get<double>() == doctest::Approx(2.0));
    CHECK(j["deriv"][0].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("loading files") {
    CHECK_THROWS_AS(io::load_file("/nonexistent/scenario.json"), SchemaError);
}
