#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "resolventlab/io.hpp"
#include "resolventlab/resolventlab.hpp"

namespace fs = std::filesystem;
using namespace rlab;
using io::Json;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;

struct Options {
    std::string scenario;
    std::string out = ".";
    double tol = 1e-12;
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string name;  // verify target / figure name
};

class Violation : public std::runtime_error {
public:
    Violation(const std::string& what, Json report) : std::runtime_error(what), report_(std::move(report)) {}
    const Json& report() const { return report_; }

private:
    Json report_;
};

std::string num(double x) { return fmt::format("{:.17g}", x); }

Execution exec_for(const Options& o) { return o.jobs > 1 ? Execution::Parallel : Execution::Serial; }

ResolventOptions solver_options(const Options& o) {
    ResolventOptions r;
    r.tol = o.tol;
    return r;
}

std::ofstream open_out(const Options& o, const std::string& file) {
    fs::create_directories(o.out);
    const fs::path p = fs::path(o.out) / file;
    std::ofstream f(p);
    if (!f) throw SchemaError("--out", "cannot write " + p.string());
    spdlog::info("writing {}", p.string());
    return f;
}

void write_json(const Options& o, const std::string& file, const Json& j) { open_out(o, file) << j.dump(2) << "\n"; }

Json load_scenario(const Options& o) {
    if (o.scenario.empty()) throw SchemaError("--scenario", "a scenario file is required");
    return io::load_file(o.scenario);
}

std::vector<double> times_from(const Json& s, const char* key) {
    const std::string p = std::string("/") + key;
    if (!s.contains(key)) throw SchemaError(p, "missing field");
    const Json& t = s[key];
    std::vector<double> out;
    if (t.is_number()) {
        out.push_back(t.get<double>());
    } else if (t.is_array() && !t.empty()) {
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (!t[i].is_number()) throw SchemaError(p + "/" + std::to_string(i), "expected a number");
            out.push_back(t[i].get<double>());
        }
    } else {
        throw SchemaError(p, "expected a number or a non-empty array");
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!(out[i] >= 0.0)) throw SchemaError(p + "/" + std::to_string(i), "times must be >= 0");
        if (i > 0 && !(out[i] > out[i - 1])) throw SchemaError(p, "times must be sorted increasingly");
    }
    return out;
}

std::vector<Complex> points_from(const Json& s, DomainKind domain, const Options& o) {
    if (s.contains("points")) {
        const Json& pts = s["points"];
        if (!pts.is_array() || pts.empty()) throw SchemaError("/points", "expected a non-empty array of [re, im]");
        std::vector<Complex> out;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const std::string p = "/points/" + std::to_string(i);
            const Complex z = io::complex_from_json(pts[i], p);
            if (!contains(domain, z)) throw SchemaError(p, "point lies outside the generator's domain");
            out.push_back(z);
        }
        return out;
    }
    if (s.contains("sample_n")) {
        if (!s["sample_n"].is_number_integer() || s["sample_n"].get<long long>() <= 0) {
            throw SchemaError("/sample_n", "expected a positive integer");
        }
        return sample_points(domain, s["sample_n"].get<std::size_t>(), o.seed);
    }
    throw SchemaError("/points", "either points or sample_n is required");
}

Json collapse_report(const NoSolutionError& e, double t, Complex w) {
    return {{"status", "violation"},
            {"kind", "boundary_collapse"},
            {"message", e.what()},
            {"t_requested", t},
            {"last_good_t", e.last_good_t()},
            {"w", io::to_json(w)}};
}

int cmd_resolvent(const Options& o) {
    const Json s = load_scenario(o);
    const Generator g = make_generator(io::generator_spec_from_json(s.contains("generator") ? s["generator"] : Json(),
                                                                    "/generator"));
    const std::vector<double> times = times_from(s, "t");
    const std::vector<Complex> pts = points_from(s, g.domain(), o);
    const ResolventOptions ropts = solver_options(o);

    std::vector<ResolventSolution> sols(times.size() * pts.size());
    std::vector<std::string> errors(sols.size());
    std::vector<double> last_good(sols.size(), 0.0);
    for_each_index(sols.size(), exec_for(o), [&](std::size_t k) {
        const double t = times[k / pts.size()];
        const Complex w = pts[k % pts.size()];
        try {
            sols[k] = solve_resolvent(g, t, w, ropts);
        } catch (const NoSolutionError& e) {
            errors[k] = e.what();
            last_good[k] = e.last_good_t();
        }
    });

    std::ofstream csv = open_out(o, "resolvent.csv");
    csv << "t,w_re,w_im,z_re,z_im,residual,deriv_re,deriv_im,iters\n";
    Json records = Json::array();
    for (std::size_t k = 0; k < sols.size(); ++k) {
        const double t = times[k / pts.size()];
        const Complex w = pts[k % pts.size()];
        if (!errors[k].empty()) {
            const Json rep = collapse_report(NoSolutionError(errors[k], last_good[k]), t, w);
            write_json(o, "report.json", rep);
            throw Violation(errors[k], rep);
        }
        const ResolventSolution& r = sols[k];
        csv << fmt::format("{},{},{},{},{},{},{},{},{}\n", num(t), num(w.real()), num(w.imag()), num(r.value.real()),
                           num(r.value.imag()), num(r.residual), num(r.deriv.real()), num(r.deriv.imag()),
                           r.newton_iters);
        records.push_back(io::to_json(r, t, w));
    }
    const ExistenceWindow win = existence_window(g);
    write_json(o, "resolvent.json", {{"window", {{"t_max", win.t_max}, {"reason", win.describe()}}},
                                     {"results", records}});
    spdlog::info("solved {} resolvent problems", sols.size());
    return kOk;
}

int cmd_chain(const Options& o) {
    const Json s = load_scenario(o);
    if (!s.contains("field")) throw SchemaError("/field", "missing field");
    const HerglotzField field = io::field_from_json(s["field"], "/field");
    const std::vector<double> times = times_from(s, "times");
    if (times.back() > field.total_time()) throw SchemaError("/times", "times exceed the field's range");
    const std::vector<Complex> pts = points_from(s, field.domain(), o);
    const ResolventOptions ropts = solver_options(o);

    struct Row {
        Complex k;
        bool member = false;
        double residual = 0.0;
        std::string error;
    };
    std::vector<Row> rows(times.size() * pts.size());
    for_each_index(rows.size(), exec_for(o), [&](std::size_t k) {
        const double t = times[k / pts.size()];
        const Complex z = pts[k % pts.size()];
        Row& r = rows[k];
        r.member = image_membership(field, t, z);
        try {
            const ResolventSolution sol = chain_map(field, t, z, ropts);
            r.k = sol.value;
            r.residual = sol.residual;
        } catch (const Error& e) {
            r.error = e.what();
            r.k = {std::nan(""), std::nan("")};
            r.residual = std::nan("");
        }
    });

    std::ofstream csv = open_out(o, "chain.csv");
    csv << "t,z_re,z_im,Kt_re,Kt_im,member,residual\n";
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const double t = times[k / pts.size()];
        const Complex z = pts[k % pts.size()];
        const Row& r = rows[k];
        csv << fmt::format("{},{},{},{},{},{},{}\n", num(t), num(z.real()), num(z.imag()), num(r.k.real()),
                           num(r.k.imag()), r.member ? 1 : 0, num(r.residual));
    }

    if (s.value("check_decreasing", false)) {
        const DecreasingReport rep = decreasing_check(field, times, pts, exec_for(o));
        Json j = {{"status", rep.ok ? "ok" : "violation"}, {"checked", rep.checked}};
        if (!rep.ok) {
            j["kind"] = "not_decreasing";
            j["s"] = *rep.s;
            j["t"] = *rep.t;
            j["z"] = io::to_json(*rep.z);
        }
        write_json(o, "report.json", j);
        if (!rep.ok) {
            throw Violation(fmt::format("chain is not decreasing between s={} and t={}", num(*rep.s), num(*rep.t)), j);
        }
    }
    return kOk;
}

int cmd_semigroup(const Options& o) {
    const Json s = load_scenario(o);
    const Generator g = make_generator(io::generator_spec_from_json(s.contains("generator") ? s["generator"] : Json(),
                                                                    "/generator"));
    if (!s.contains("t") || !s["t"].is_number()) throw SchemaError("/t", "expected a number");
    const double t = s["t"].get<double>();
    if (!(t >= 0.0)) throw SchemaError("/t", "t must be >= 0");
    if (!s.contains("point")) throw SchemaError("/point", "missing field");
    const Complex w = io::complex_from_json(s["point"], "/point");
    if (!contains(g.domain(), w)) throw SchemaError("/point", "point lies outside the generator's domain");
    FlowOptions fo;
    fo.rk_tol = s.value("rk_tol", 1e-10);

    std::ofstream traj = open_out(o, "trajectory.csv");
    traj << "s,z_re,z_im\n";
    const std::vector<FlowSample> path = ode_trajectory(g, t, w, fo);
    for (const FlowSample& p : path) traj << fmt::format("{},{},{}\n", num(p.s), num(p.z.real()), num(p.z.imag()));

    std::vector<int> ns = {2, 4, 8, 16, 32, 64, 128};
    if (s.contains("n_list")) ns = s["n_list"].get<std::vector<int>>();
    const Complex ref = path.back().z;
    std::vector<double> err(ns.size());
    const ResolventOptions ropts = solver_options(o);
    for_each_index(ns.size(), exec_for(o), [&](std::size_t i) {
        err[i] = std::abs(exp_formula(g, t, ns[i], w, ropts) - ref);
    });
    std::ofstream conv = open_out(o, "convergence.csv");
    conv << "n,error\n";
    for (std::size_t i = 0; i < ns.size(); ++i) conv << fmt::format("{},{}\n", ns[i], num(err[i]));
    return kOk;
}

struct LawView {
    ComplexFn cauchy;
    std::function<Complex(Complex)> phi;
};

LawView law_view(const FreeLaw& law, double t) {
    if (const auto* m = std::get_if<RealMeasure>(&law)) {
        RealMeasure mu = *m;
        return {[mu](Complex z) { return cauchy_transform(mu, z); },
                [mu](Complex z) { return voiculescu_transform(mu, z); }};
    }
    FIDTriple tr = std::get<FIDTriple>(law);
    return {[tr, t](Complex z) { return 1.0 / free_semigroup_f(tr, t, z); },
            [tr, t](Complex z) { return t * voiculescu_phi(tr, z); }};
}

int cmd_freeconv(const Options& o) {
    const Json s = load_scenario(o);
    if (!s.contains("mu")) throw SchemaError("/mu", "missing field");
    const double t = s.value("t", 1.0);
    const LawView mu = law_view(io::free_law_from_json(s["mu"], "/mu"), t);
    std::optional<LawView> nu;
    if (s.contains("nu")) nu = law_view(io::free_law_from_json(s["nu"], "/nu"), t);

    const Json grid = s.value("density_grid", Json{{"lo", -3.0}, {"hi", 3.0}, {"n", 121}});
    const double lo = grid.value("lo", -3.0);
    const double hi = grid.value("hi", 3.0);
    const int n = grid.value("n", 121);
    if (n < 2 || !(hi > lo)) throw SchemaError("/density_grid", "need n >= 2 and lo < hi");
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = lo + (hi - lo) * i / (n - 1);
    const std::vector<DensitySample> dens = stieltjes_invert(mu.cauchy, xs, exec_for(o));
    std::ofstream dcsv = open_out(o, "density.csv");
    dcsv << "x,density,warning\n";
    for (const DensitySample& d : dens) dcsv << fmt::format("{},{},{}\n", num(d.x), num(d.density), d.warning ? 1 : 0);

    std::vector<Complex> zs;
    if (s.contains("transform_points")) {
        const Json& tp = s["transform_points"];
        for (std::size_t i = 0; i < tp.size(); ++i) zs.push_back(io::complex_from_json(tp[i], "/transform_points/" + std::to_string(i)));
    } else {
        for (int k = 0; k < 8; ++k) zs.emplace_back(-8.0 + 2.0 * k, 20.0);
    }
    std::ofstream tcsv = open_out(o, "transforms.csv");
    tcsv << "z_re,z_im,phi_mu_re,phi_mu_im,phi_nu_re,phi_nu_im,phi_sum_re,phi_sum_im\n";
    for (const Complex z : zs) {
        const Complex a = mu.phi(z);
        const Complex b = nu ? nu->phi(z) : Complex{};
        tcsv << fmt::format("{},{},{},{},{},{},{},{}\n", num(z.real()), num(z.imag()), num(a.real()), num(a.imag()),
                            num(b.real()), num(b.imag()), num((a + b).real()), num((a + b).imag()));
    }
    return kOk;
}

int verify_no_solution(const Options& o) {
    const Generator g1 = catalog::disk_g1();
    const Generator g2 = catalog::disk_g2();
    const HerglotzField field({FieldSegment{0.0, 1.0, g1}, FieldSegment{1.0, 2.0, g2}});

    double k1_err = 0.0;
    for (const Complex w : sample_points(DomainKind::Disk, 20, o.seed)) {
        k1_err = std::max(k1_err, std::abs(chain_map(field, 1.0, w).value - w / (w + 2.0)));
    }

    auto j1 = [](Complex z) { return z / (z + 2.0); };
    auto h = [&](Complex z) { return g2.value_fn()(j1(z)); };
    const GeneratorTest test = is_generator_disk(h, 0.0, 64, exec_for(o));
    auto re_test = [&](Complex z) { return (-h(z) / z).real(); };
    const Complex probe = std::polar(0.999, 3.0);
    const Complex edge = std::polar(1.0, 3.0);

    const std::vector<double> times = {0.0, 0.5, 1.0, 1.001, 1.01, 1.05, 1.1, 2.0};
    const DecreasingReport dec = decreasing_check(field, times, disk_grid(64), exec_for(o));

    Json rep = {{"k1_max_error", k1_err},
                {"generator_test", {{"ok", test.ok},
                                    {"witness", io::to_json(test.witness)},
                                    {"witness_value", test.witness_value}}},
                {"value_at_0.999e^{3i}", re_test(probe)},
                {"boundary_value_at_e^{3i}", re_test(edge)},
                {"decreasing", dec.ok}};
    if (!dec.ok) rep["decreasing_violation"] = {{"s", *dec.s}, {"t", *dec.t}, {"z", io::to_json(*dec.z)}};
    write_json(o, "report.json", rep);

    std::cout << fmt::format("K_1(w) = w/(w+2): max error {}\n", num(k1_err));
    std::cout << fmt::format("G2(J1(z)) generator test: {} (grid witness {} at {}{:+}i)\n", test.ok ? "passes" : "fails",
                             num(test.witness_value), num(test.witness.real()), test.witness.imag());
    std::cout << fmt::format("Re(-G2(J1(z))/z) at 0.999e^(3i): {}\n", num(re_test(probe)));
    std::cout << fmt::format("Re(-G2(J1(z))/z) at e^(3i): {}\n", num(re_test(edge)));
    std::cout << fmt::format("decreasing property: {}\n", dec.ok ? "holds" : "violated");

    const bool expected = k1_err < 1e-10 && !test.ok && !dec.ok;
    if (!expected) throw Violation("no-solution example did not reproduce", rep);
    return kOk;
}

int verify_window(const Options& o) {
    const Generator g = catalog::halfplane_z();
    const ExistenceWindow win = existence_window(g);
    const ResolventOptions ropts = solver_options(o);
    bool inside_ok = true;
    try {
        solve_resolvent(g, 0.999, kI, ropts);
    } catch (const Error&) {
        inside_ok = false;
    }
    std::string collapse;
    try {
        solve_resolvent(g, 1.001, kI, ropts);
    } catch (const NoSolutionError& e) {
        collapse = e.what();
    }
    Json rep = {{"window", {{"t_max", win.t_max}, {"reason", win.describe()}}},
                {"solve_at_0.999", inside_ok},
                {"collapse_at_1.001", collapse}};
    write_json(o, "report.json", rep);
    std::cout << fmt::format("window {} t_max={}\n", win.describe(), num(win.t_max));
    std::cout << fmt::format("t=0.999: {}\nt=1.001: {}\n", inside_ok ? "solved" : "failed",
                             collapse.empty() ? "solved" : collapse);
    if (!inside_ok || collapse.empty()) throw Violation("window is not sharp", rep);
    return kOk;
}

int verify_self_map_cmd(const Options& o) {
    const Json s = load_scenario(o);
    const Generator g = make_generator(io::generator_spec_from_json(s.contains("generator") ? s["generator"] : Json(),
                                                                    "/generator"));
    const std::vector<double> times = times_from(s, "t");
    const std::size_t n = s.value("sample_n", 200);
    Json results = Json::array();
    bool ok = true;
    std::string first;
    for (double t : times) {
        const SelfMapReport r = verify_self_map(g, t, n, o.seed, exec_for(o), solver_options(o));
        Json j = {{"t", t}, {"ok", r.ok}, {"checked", r.checked}, {"violations", r.violations}};
        if (!r.ok) {
            j["witness"] = io::to_json(*r.witness);
            j["message"] = r.message;
            if (ok) first = r.message;
            ok = false;
        }
        results.push_back(j);
        std::cout << fmt::format("t={}: {}\n", num(t), r.ok ? "ok" : r.message);
    }
    const Json rep = {{"status", ok ? "ok" : "violation"}, {"results", results}};
    write_json(o, "report.json", rep);
    if (!ok) throw Violation(first, rep);
    return kOk;
}

int verify_semigroup_law(const Options& o) {
    const Json s = load_scenario(o);
    const Generator g = make_generator(io::generator_spec_from_json(s.contains("generator") ? s["generator"] : Json(),
                                                                    "/generator"));
    const double sv = s.value("s", 0.3);
    const double tv = s.value("t", 0.7);
    const double rk = s.value("rk_tol", 1e-10);
    const double dev = semigroup_law_check(g, sv, tv, s.value("sample_n", 50), rk, o.seed, exec_for(o));
    const double bound = s.value("bound", 1e-8);
    const Json rep = {{"max_deviation", dev}, {"bound", bound}, {"status", dev < bound ? "ok" : "violation"}};
    write_json(o, "report.json", rep);
    std::cout << fmt::format("max |F_(s+t) - F_s o F_t| = {}\n", num(dev));
    if (!(dev < bound)) throw Violation("semigroup law deviation above bound", rep);
    return kOk;
}

int cmd_verify(const Options& o) {
    if (o.name == "no-solution") return verify_no_solution(o);
    if (o.name == "window") return verify_window(o);
    if (o.name == "self-map") return verify_self_map_cmd(o);
    if (o.name == "semigroup-law") return verify_semigroup_law(o);
    throw SchemaError("verify", "unknown check '" + o.name + "' (no-solution, window, self-map, semigroup-law)");
}

int cmd_figure(const Options& o) {
    if (o.name != "semicircle-F") throw SchemaError("figure", "unknown figure '" + o.name + "' (semicircle-F)");
    const RealMeasure w(semicircle());
    std::ofstream csv = open_out(o, "semicircle_F.csv");
    csv << "curve,x,y,F_re,F_im\n";
    const int n = 201;
    for (int i = 1; i < n; ++i) {
        const double x = -2.0 + 4.0 * i / n;
        const Complex f{x / 2.0, std::sqrt(1.0 - (x / 2.0) * (x / 2.0))};
        csv << fmt::format("boundary,{},0,{},{}\n", num(x), num(f.real()), num(f.imag()));
    }
    for (const double y : {0.05, 0.25, 0.5, 1.0, 2.0}) {
        for (int i = 0; i <= n; ++i) {
            const double x = -4.0 + 8.0 * i / n;
            const Complex f = f_transform(w, {x, y});
            csv << fmt::format("line,{},{},{},{}\n", num(x), num(y), num(f.real()), num(f.imag()));
        }
    }
    return kOk;
}

int dispatch(const std::string& command, Options o) {
    if (command == "resolvent") return cmd_resolvent(o);
    if (command == "chain") return cmd_chain(o);
    if (command == "semigroup") return cmd_semigroup(o);
    if (command == "freeconv") return cmd_freeconv(o);
    if (command == "verify") return cmd_verify(o);
    if (command == "figure") return cmd_figure(o);
    if (command == "run") {
        const Json s = load_scenario(o);
        if (!s.contains("command") || !s["command"].is_string()) throw SchemaError("/command", "expected a string");
        const std::string inner = s["command"].get<std::string>();
        if (inner == "run") throw SchemaError("/command", "run cannot dispatch to itself");
        if (s.contains("name")) o.name = s["name"].get<std::string>();
        return dispatch(inner, o);
    }
    throw SchemaError("command", "unknown command '" + command + "'");
}

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("resolventlab");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::err);
    if (const char* env = std::getenv("RESOLVENTLAB_LOG")) {
        const std::string v = env;
        if (v == "info") spdlog::set_level(spdlog::level::info);
        else if (v == "debug") spdlog::set_level(spdlog::level::debug);
    }
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();
    CLI::App app{"resolventlab: nonlinear resolvents, Loewner chains and free convolution semigroups"};
    app.require_subcommand(1);
    Options o;
    auto common = [&o](CLI::App* sub) {
        sub->add_option("--scenario", o.scenario, "Scenario JSON file");
        sub->add_option("--out", o.out, "Output directory")->capture_default_str();
        sub->add_option("--tol", o.tol, "Resolvent residual tolerance")->capture_default_str();
        sub->add_option("--seed", o.seed, "Seed for sample-point generation")->capture_default_str();
        sub->add_option("--jobs", o.jobs, "Worker threads")->capture_default_str();
    };
    std::vector<CLI::App*> subs = {
        app.add_subcommand("resolvent", "Solve w = z - tG(z) on a point set"),
        app.add_subcommand("chain", "Evaluate a Loewner chain from a piecewise-constant field"),
        app.add_subcommand("semigroup", "Semigroup trajectory and exponential-formula convergence"),
        app.add_subcommand("freeconv", "Densities and Voiculescu transforms of free convolution semigroups"),
        app.add_subcommand("verify", "Run a built-in verification"),
        app.add_subcommand("figure", "Emit figure data"),
        app.add_subcommand("run", "Dispatch on the scenario's command field"),
    };
    for (CLI::App* s : subs) common(s);
    subs[4]->add_option("check", o.name, "no-solution | window | self-map | semigroup-law")->required();
    subs[5]->add_option("name", o.name, "semicircle-F")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }
    if (o.jobs > 1) set_thread_count(o.jobs);
    if (!(o.tol > 0.0)) {
        std::cerr << "error: --tol must be positive\n";
        return kInputError;
    }

    try {
        return dispatch(app.get_subcommands().front()->get_name(), o);
    } catch (const Violation& v) {
        std::cout << v.what() << "\n";
        return kViolation;
    } catch (const NoSolutionError& e) {
        std::cout << e.what() << "\n";
        return kViolation;
    } catch (const SchemaError& e) {
        std::cerr << "input error at " << e.what() << "\n";
        return kInputError;
    } catch (const ArgumentError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const DomainError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const Json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const Error& e) {
        std::cout << "numerical failure: " << e.what() << "\n";
        return kViolation;
    }
}
