#include <doctest.h>

#include "resolventlab/resolventlab.hpp"

using namespace rlab;

namespace {

constexpr double kPi = std::numbers::pi;

// Semicircle Cauchy transform; sqrt(z - 2) sqrt(z + 2) has its cut on [-2, 2].
Complex semicircle_g(Complex z) { return (z - std::sqrt(z - 2.0) * std::sqrt(z + 2.0)) / 2.0; }

}  // namespace

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    std::vector<double> x, w;
    gauss_legendre(12, x, w);
    for (int k = 0; k <= 23; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * std::pow(x[i], k);
        const double exact = k % 2 == 0 ? 2.0 / (k + 1) : 0.0;
        CHECK(acc == doctest::Approx(exact).epsilon(1e-13));
    }
    CHECK(std::is_sorted(x.begin(), x.end()));
    CHECK_THROWS_AS(gauss_legendre(0, x, w), ArgumentError);
}

TEST_CASE("semicircle moments") {
    const FiniteMeasure m = semicircle();
    CHECK(m.total_mass() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(m.integrate([](double x) { return x; })) < 1e-14);
    CHECK(m.integrate([](double x) { return x * x; }) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(m.integrate([](double x) { return std::pow(x, 4); }) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(m.integrate([](double x) { return std::pow(x, 6); }) == doctest::Approx(5.0).epsilon(1e-13));
    const FiniteMeasure shifted = semicircle(1.0, 4.0);
    CHECK(shifted.integrate([](double x) { return x; }) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(shifted.integrate([](double x) { return (x - 1.0) * (x - 1.0); }) == doctest::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("semicircle cauchy integral far from and near the support") {
    const FiniteMeasure m = semicircle();
    for (Complex z : {Complex{0.0, 2.0}, Complex{3.0, 0.5}, Complex{-1.0, 0.3}, Complex{0.5, 1e-3},
                      Complex{1.99, 1e-4}, Complex{-2.5, 1e-6}, Complex{0.0, 1e-8}}) {
        CHECK(std::abs(m.cauchy_integral(z) - semicircle_g(z)) < 1e-10);
    }
}

TEST_CASE("legendre density cauchy integral against the logarithm") {
    const FiniteMeasure u{MeasureSupport::Line, {},
                          SampledDensity::from_function(0.0, 1.0, [](double) { return 1.0; }, 32, DensityRule::GaussLegendre)};
    for (Complex z : {Complex{0.5, 2.0}, Complex{0.5, 1e-6}, Complex{0.99, 1e-3}, Complex{2.0, 0.1}, Complex{-0.5, 0.2}}) {
        const Complex exact = std::log(z) - std::log(z - 1.0);
        CHECK(std::abs(u.cauchy_integral(z) - exact) < 1e-10);
    }
}

TEST_CASE("weighted cauchy integral and its derivative") {
    const FiniteMeasure m = semicircle(0.5, 0.5);
    auto h = [](double t) { return 1.0 + t * t; };
    const Complex z{0.3, 0.7};
    const double d = 1e-5;
    const Complex fd = (m.cauchy_integral(z + d, h) - m.cauchy_integral(z - d, h)) / (2.0 * d);
    CHECK(std::abs(fd - m.cauchy_integral_deriv(z, h)) < 1e-8);
}

TEST_CASE("atomic cauchy integral") {
    const FiniteMeasure two{MeasureSupport::Line, {{-1.0, 0.5}, {1.0, 0.5}}};
    CHECK(std::abs(two.cauchy_integral(kI) - Complex{0.0, -0.5}) < 1e-15);
    CHECK(std::abs(FiniteMeasure::dirac(0.0).cauchy_integral(kI) + kI) < 1e-15);
}

TEST_CASE("interpolation reproduces the sampled density") {
    const FiniteMeasure m = semicircle();
    for (double x : {-1.9, -0.3, 0.0, 0.77, 1.999}) {
        CHECK(m.density()->interpolate(x) == doctest::Approx(std::sqrt(4.0 - x * x) / (2.0 * kPi)).epsilon(1e-12));
    }
    CHECK(m.density()->interpolate(2.5) == 0.0);

    const SampledDensity p = SampledDensity::from_function(
        0.0, 2.0 * kPi, [](double t) { return 1.0 + 0.5 * std::cos(t); }, 16, DensityRule::Periodic);
    for (double t : {0.1, 1.3, 3.0, 6.2}) CHECK(p.interpolate(t) == doctest::Approx(1.0 + 0.5 * std::cos(t)).epsilon(1e-13));
    CHECK(p.mass() == doctest::Approx(2.0 * kPi).epsilon(1e-13));
}

TEST_CASE("measure validation") {
    CHECK_THROWS_AS((FiniteMeasure{MeasureSupport::Line, {{0.0, -1.0}}}), ArgumentError);
    CHECK_THROWS_AS(SampledDensity::from_values(0.0, 1.0, {1.0, -0.1}, DensityRule::GaussLegendre), ArgumentError);
    CHECK_THROWS_AS(SampledDensity::from_values(0.0, 1.0, {1.0}, DensityRule::Periodic), ArgumentError);
    CHECK_THROWS_AS(SampledDensity::from_values(1.0, 1.0, {1.0}, DensityRule::GaussLegendre), ArgumentError);
    CHECK_THROWS_AS((FiniteMeasure{MeasureSupport::Circle, {},
                                   SampledDensity::from_values(0.0, 1.0, {1.0}, DensityRule::GaussLegendre)}),
                    ArgumentError);
    CHECK_THROWS_AS(uniform_circle().cauchy_integral(kI), ArgumentError);
    CHECK_THROWS_AS(semicircle(0.0, 0.0), ArgumentError);
}

TEST_CASE("quadrature nodes lie strictly inside the support") {
    for (DensityRule r : {DensityRule::GaussLegendre, DensityRule::ChebyshevEdge}) {
        const SampledDensity d = SampledDensity::from_function(-1.0, 3.0, [](double) { return 1.0; }, 40, r);
        for (double x : d.nodes()) CHECK((x > -1.0 && x < 3.0));
    }
}

TEST_CASE("scaling and uniform circle") {
    const FiniteMeasure m = semicircle().scaled(3.0);
    CHECK(m.total_mass() == doctest::Approx(3.0).epsilon(1e-13));
    CHECK_THROWS_AS(semicircle().scaled(-1.0), ArgumentError);
    const FiniteMeasure c = uniform_circle(2.0);
    CHECK(c.total_mass() == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(std::abs(c.integrate([](double t) { return std::polar(1.0, t); })) < 1e-13);
    CHECK(FiniteMeasure::zero().empty());
}
