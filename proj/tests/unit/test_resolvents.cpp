#include <doctest.h>

#include <random>

#include "resolventlab/resolventlab.hpp"

using namespace rlab;

namespace {

constexpr double kPi = std::numbers::pi;

// Root of (i/2) t z^2 - z + (w + i t/2) = 0 lying in the upper half-plane.
Complex quadratic_resolvent(double t, Complex w) {
    const Complex a = 0.5 * kI * t;
    const Complex c = w + 0.5 * kI * t;
    const Complex disc = std::sqrt(1.0 - 4.0 * a * c);
    const Complex r1 = (1.0 + disc) / (2.0 * a);
    const Complex r2 = (1.0 - disc) / (2.0 * a);
    return r1.imag() > 0.0 ? r1 : r2;
}

}  // namespace

TEST_CASE("closed-form resolvents") {
    const Generator hz = catalog::halfplane_z();
    for (double t : {0.0, 0.25, 0.5, 0.9}) {
        for (Complex w : sample_points(DomainKind::HalfPlane, 20, 1)) {
            const Complex z = solve_resolvent(hz, t, w).value;
            CHECK(std::abs(z - w / (1.0 - t)) < 1e-10 * std::max(1.0, std::abs(z)));
        }
    }
    const Generator mz = catalog::disk_minus_z();
    for (double t : {0.5, 1.0, 10.0}) {
        for (Complex w : sample_points(DomainKind::Disk, 20, 2)) {
            CHECK(std::abs(solve_resolvent(mz, t, w).value - w / (1.0 + t)) < 1e-10);
        }
    }
    CHECK(std::abs(solve_resolvent(hz, 0.5, kI).value - 2.0 * kI) < 1e-12);
    CHECK(std::abs(solve_resolvent(catalog::disk_g1(), 1.0, 0.5).value - 0.2) < 1e-12);
    CHECK(std::abs(solve_resolvent(catalog::strip_const(), 10.0, {0.3, 0.4}).value - Complex{10.3, 0.4}) < 1e-12);
}

TEST_CASE("quadratic generator against the quadratic formula") {
    const Generator g = catalog::halfplane_quadratic();
    for (double t : {0.1, 1.0, 5.0}) {
        for (Complex w : sample_points(DomainKind::HalfPlane, 20, 3)) {
            const Complex expected = quadratic_resolvent(t, w);
            const ResolventSolution sol = solve_resolvent(g, t, w);
            CHECK(std::abs(sol.value - expected) < 1e-9 * std::max(1.0, std::abs(expected)));
            CHECK(sol.value.imag() > 0.0);
        }
    }
}

TEST_CASE("resolvent identity holds for accepted solutions") {
    std::vector<Generator> gens = {catalog::disk_minus_z(),      catalog::disk_g1(),          catalog::disk_g2(),
                                   catalog::disk_parabolic(),    catalog::halfplane_quadratic(), catalog::halfplane_neg_inv_z(),
                                   catalog::strip_const(),       catalog::halfplane_z()};
    for (const Generator& g : gens) {
        const double t = g.name() == "halfplane_z" ? 0.7 : 2.0;
        for (Complex w : sample_points(g.domain(), 50, 4)) {
            const ResolventSolution sol = solve_resolvent(g, t, w);
            const double scale = std::max({1.0, std::abs(w), std::abs(sol.value)});
            CHECK(std::abs(sol.value - t * g(sol.value) - w) <= 1e-12 * scale * 1e3);
            CHECK(contains(g.domain(), sol.value));
        }
    }
}

TEST_CASE("existence windows") {
    const ExistenceWindow hz = existence_window(catalog::halfplane_z());
    CHECK(hz.t_max == 1.0);
    CHECK(hz.describe() == "pick_window(1)");
    CHECK(hz.contains(0.999));
    CHECK_FALSE(hz.contains(1.0));
    CHECK(std::isinf(existence_window(catalog::disk_minus_z()).t_max));
    CHECK(existence_window(catalog::disk_minus_z()).describe() == "bounded_convex_all_t");
    CHECK(std::isinf(existence_window(catalog::halfplane_neg_inv_z()).t_max));
    CHECK(existence_window(catalog::halfplane_quadratic()).reason == ExistenceWindow::Reason::FiniteDenjoyWolffAllT);
    const ExistenceWindow s = existence_window(catalog::strip_const());
    CHECK(s.reason == ExistenceWindow::Reason::StripWindow);
    CHECK(std::isinf(s.t_max));
    const Generator twice = make_generator(HalfPlanePick{{2.0, 0.0, FiniteMeasure::zero()}});
    CHECK(existence_window(twice).t_max == 0.5);
    const Generator unknown("u", DomainKind::HalfPlane, [](Complex z) { return z; });
    CHECK_THROWS_AS(existence_window(unknown), UnsupportedError);
}

TEST_CASE("window sharpness for the identity generator") {
    const Generator g = catalog::halfplane_z();
    CHECK(std::abs(solve_resolvent(g, 0.999, kI).value - 1000.0 * kI) < 1e-6);
    try {
        solve_resolvent(g, 1.001, kI);
        FAIL("expected a boundary collapse");
    } catch (const NoSolutionError& e) {
        CHECK(std::string(e.what()).rfind("boundary collapse at t=", 0) == 0);
        CHECK(e.last_good_t() <= 1.0);
        CHECK(e.last_good_t() > 0.99);
    }
}

TEST_CASE("solver argument validation") {
    CHECK_THROWS_AS(solve_resolvent(catalog::disk_minus_z(), -1.0, 0.1), ArgumentError);
    CHECK_THROWS_AS(solve_resolvent(catalog::disk_minus_z(), 1.0, 2.0), DomainError);
    const Generator bad("bad", DomainKind::Disk, [](Complex z) { return z.real() > 0.5 ? Complex{std::nan(""), 0.0} : -z; });
    CHECK_THROWS_AS(solve_resolvent(bad, 1.0, 0.9), NumericalError);
    CHECK(solve_resolvent(catalog::disk_g1(), 0.0, 0.4).value == Complex{0.4});
}

TEST_CASE("resolvent derivative against centered differences") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Generator> gens = {catalog::disk_minus_z(),   catalog::disk_g1(),           catalog::disk_g2(),
                                   catalog::disk_parabolic(), catalog::halfplane_quadratic(), catalog::halfplane_neg_inv_z(),
                                   catalog::halfplane_z(),    catalog::strip_const(),         catalog::disk_hyperbolic(1.0)};
    for (int i = 0; i < 100; ++i) {
        const Generator& g = gens[static_cast<std::size_t>(i) % gens.size()];
        const double t = g.name() == "halfplane_z" ? 0.8 * u(rng) : 3.0 * u(rng);
        const Complex w = sample_points(g.domain(), 1, static_cast<std::uint64_t>(i))[0];
        const double h = 1e-5 * std::max(1.0, std::abs(w)) * std::min(1.0, boundary_distance(g.domain(), w));
        const Complex fd = (solve_resolvent(g, t, w + h).value - solve_resolvent(g, t, w - h).value) / (2.0 * h);
        const Complex d = resolvent_derivative(g, t, w);
        CHECK_MESSAGE(std::abs(d - fd) < 1e-6 * std::max(1.0, std::abs(d)), g.name() << " t=" << t << " w=" << w);
    }
}

TEST_CASE("continuation is independent of the step history") {
    for (const Generator& g : {catalog::disk_g1(), catalog::halfplane_quadratic(), catalog::halfplane_neg_inv_z()}) {
        for (Complex w : sample_points(g.domain(), 10, 6)) {
            ResolventOptions a, b;
            a.initial_step = 0.5;
            b.initial_step = 1e-3;
            const Complex za = solve_resolvent(g, 4.0, w, a).value;
            const Complex zb = solve_resolvent(g, 4.0, w, b).value;
            CHECK(std::abs(za - zb) < 1e-10 * std::max(1.0, std::abs(za)));
        }
    }
}

TEST_CASE("self-map checks") {
    for (const Generator& g : {catalog::disk_minus_z(), catalog::disk_g1(), catalog::disk_g2(), catalog::disk_parabolic()}) {
        for (double t : {0.1, 1.0, 10.0, 100.0}) CHECK_MESSAGE(verify_self_map(g, t, 200).ok, g.name() << " t=" << t);
    }
    CHECK(verify_self_map(catalog::halfplane_z(), 0.99, 200).ok);
    const SelfMapReport bad = verify_self_map(catalog::halfplane_z(), 1.5, 200);
    CHECK_FALSE(bad.ok);
    CHECK(bad.violations == 200);
    REQUIRE(bad.witness.has_value());
    CHECK(bad.message.find("boundary collapse") != std::string::npos);
}

TEST_CASE("sample points lie in their domains and are reproducible") {
    for (DomainKind d : {DomainKind::Disk, DomainKind::HalfPlane, DomainKind::Strip}) {
        const auto a = sample_points(d, 300, 9);
        const auto b = sample_points(d, 300, 9);
        CHECK(a == b);
        for (Complex z : a) CHECK(contains(d, z));
        CHECK(sample_points(d, 5, 10) != sample_points(d, 5, 11));
    }
}

TEST_CASE("strip infimum") {
    CHECK(strip_inf_c([](Complex) { return Complex{1.0}; }) == 0.0);
    CHECK(strip_inf_c([](Complex) { return Complex{2.0}; }) == 0.0);
    // |Im e^{-x}(1 + i)| = e^{-x}, smallest at x = 30 on [-10, 30]
    CHECK(strip_inf_c([](Complex z) { return std::exp(-z) * Complex{1.0, 1.0}; }) == doctest::Approx(std::exp(-30.0)));
    // |Im| = |x - 2| + 0.25 has its minimum in the interior
    CHECK(strip_inf_c([](Complex z) { return Complex{0.0, std::abs(z.real() - 2.0) + 0.25}; }) ==
          doctest::Approx(0.25).epsilon(1e-9));
    CHECK_THROWS_AS(strip_inf_c([](Complex z) { return z; }, 1.0, 0.0), ArgumentError);
}

TEST_CASE("zero counting on rectangles") {
    const Rect r{0.0, 2.0, 0.0, 1.0};
    CHECK(count_zeros_rect([](Complex z) { return z - Complex{1.0, 0.5}; }, r) == 1);
    CHECK(count_zeros_rect([](Complex z) { return (z - Complex{1.0, 0.5}) * (z - Complex{1.5, 0.2}); }, r) == 2);
    CHECK(count_zeros_rect([](Complex z) { return z + 5.0; }, r) == 0);
    CHECK_THROWS_AS(count_zeros_rect([](Complex z) { return z; }, r), ContourError);
    CHECK_THROWS_AS(count_zeros_rect([](Complex z) { return std::pow(z - Complex{1.0, 0.5}, 8); }, r, 4), ResolutionError);

    const Generator g = catalog::strip_const();
    const Complex w0{0.3, 0.2};
    for (double t : {1.0, 4.0}) {
        auto f = [&](Complex z) { return z - t * g(z) - w0; };
        const Rect strip_box{-20.0, 20.0, -kHalfPi + 1e-3, kHalfPi - 1e-3};
        CHECK(count_zeros_rect(f, strip_box) == 1);
        CHECK(std::abs(f(solve_resolvent(g, t, w0).value)) < 1e-12);
    }
}

TEST_CASE("generic root tracking") {
    // x^2 = 1 + s continued from x = 1
    detail::Homotopy h;
    h.domain = DomainKind::HalfPlane;
    h.residual = [](double s, Complex x) { return x * x - (1.0 + s) * kI; };
    h.dx = [](double, Complex x) { return 2.0 * x; };
    h.ds = [](double, Complex) { return -kI; };
    h.scale = [](double, Complex) { return 1.0; };
    const Complex x0 = std::sqrt(kI);
    const detail::HomotopyResult r = detail::track_root(h, x0, 3.0, 0.1, {});
    CHECK(std::abs(r.x - 2.0 * x0) < 1e-12);
    CHECK(r.s_path.front() == 0.0);
    CHECK(r.s_path.back() == 3.0);
    CHECK(std::is_sorted(r.s_path.begin(), r.s_path.end()));
}
