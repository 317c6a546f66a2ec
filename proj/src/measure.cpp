#include "resolventlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "resolventlab/errors.hpp"

namespace rlab {

namespace {

constexpr double kPi = std::numbers::pi;

double periodic_distance(double a, double b) {
    const double d = std::remainder(a - b, 2.0 * kPi);
    return std::abs(d);
}

}  // namespace

void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n == 0) throw ArgumentError("gauss_legendre: n must be positive");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double kk = static_cast<double>(k);
                const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p1 = x;
                p0 = 1.0;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

SampledDensity SampledDensity::from_values(double lo, double hi, std::vector<double> values,
                                           DensityRule rule) {
    if (values.empty()) throw ArgumentError("density needs at least one sample");
    if (!(hi > lo)) throw ArgumentError("density support must satisfy lo < hi");
    if (rule == DensityRule::Periodic && std::abs(hi - lo - 2.0 * kPi) > 1e-9) {
        throw ArgumentError("periodic densities must span an interval of length 2pi");
    }
    for (double v : values) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw ArgumentError("density samples must be finite and >= 0");
    }
    SampledDensity d;
    d.lo_ = lo;
    d.hi_ = hi;
    d.rule_ = rule;
    d.values_ = std::move(values);
    d.build();
    return d;
}

SampledDensity SampledDensity::from_function(double lo, double hi, const std::function<double(double)>& f,
                                             std::size_t n, DensityRule rule) {
    if (n == 0) throw ArgumentError("density needs at least one node");
    SampledDensity probe = from_values(lo, hi, std::vector<double>(n, 0.0), rule);
    std::vector<double> values(n);
    for (std::size_t k = 0; k < n; ++k) values[k] = f(probe.nodes_[k]);
    return from_values(lo, hi, std::move(values), rule);
}

void SampledDensity::build() {
    const std::size_t n = values_.size();
    const double mid = 0.5 * (lo_ + hi_);
    const double half = 0.5 * (hi_ - lo_);
    std::vector<double> unit(n);
    nodes_.resize(n);
    rule_weights_.resize(n);
    smooth_.resize(n);

    switch (rule_) {
        case DensityRule::GaussLegendre: {
            std::vector<double> w;
            gauss_legendre(n, unit, w);
            for (std::size_t k = 0; k < n; ++k) {
                rule_weights_[k] = half * w[k];
                smooth_[k] = values_[k];
            }
            break;
        }
        case DensityRule::ChebyshevEdge: {
            const double step = kPi / static_cast<double>(n + 1);
            for (std::size_t k = 0; k < n; ++k) {
                const double theta = step * static_cast<double>(k + 1);
                const double s = std::sin(theta);
                unit[k] = -std::cos(theta);
                rule_weights_[k] = half * step * s * s;
                smooth_[k] = values_[k] / s;
            }
            break;
        }
        case DensityRule::Periodic: {
            const double step = 2.0 * kPi / static_cast<double>(n);
            for (std::size_t k = 0; k < n; ++k) {
                nodes_[k] = lo_ + step * (static_cast<double>(k) + 0.5);
                rule_weights_[k] = step;
                smooth_[k] = values_[k];
            }
            break;
        }
    }

    if (rule_ != DensityRule::Periodic) {
        for (std::size_t k = 0; k < n; ++k) nodes_[k] = mid + half * unit[k];
        // Differences are doubled (capacity of [-1, 1] is 1/2) to keep the products in range.
        bary_.assign(n, 1.0);
        for (std::size_t j = 0; j < n; ++j) {
            double prod = 1.0;
            for (std::size_t k = 0; k < n; ++k) {
                if (k != j) prod *= 2.0 * (unit[j] - unit[k]);
            }
            bary_[j] = 1.0 / prod;
        }
    }

    weights_.resize(n);
    for (std::size_t k = 0; k < n; ++k) weights_[k] = rule_weights_[k] * smooth_[k];
}

double SampledDensity::mass() const {
    double m = 0.0;
    for (double w : weights_) m += w;
    return m;
}

double SampledDensity::edge_factor(double x) const {
    if (rule_ != DensityRule::ChebyshevEdge) return 1.0;
    const double y = (x - 0.5 * (lo_ + hi_)) / (0.5 * (hi_ - lo_));
    return std::sqrt(std::max(0.0, 1.0 - y * y));
}

double SampledDensity::interpolate(double x) const {
    const std::size_t n = values_.size();
    if (rule_ == DensityRule::Periodic) {
        // Trigonometric barycentric interpolation on equispaced nodes.
        double num = 0.0;
        double den = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double diff = 0.5 * std::remainder(x - nodes_[k], 2.0 * kPi);
            if (periodic_distance(x, nodes_[k]) < 1e-15) return values_[k];
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            const double kernel = (n % 2 == 0) ? 1.0 / std::tan(diff) : 1.0 / std::sin(diff);
            num += sign * kernel * values_[k];
            den += sign * kernel;
        }
        return num / den;
    }
    if (x < lo_ || x > hi_) return 0.0;
    const double t = (x - 0.5 * (lo_ + hi_)) / (0.5 * (hi_ - lo_));
    return std::max(0.0, smooth_at(t) * edge_factor(x));
}

double SampledDensity::smooth_at(double t) const {
    const double mid = 0.5 * (lo_ + hi_);
    const double half = 0.5 * (hi_ - lo_);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < smooth_.size(); ++k) {
        const double d = t - (nodes_[k] - mid) / half;
        if (d == 0.0) return smooth_[k];
        const double c = bary_[k] / d;
        num += c * smooth_[k];
        den += c;
    }
    return num / den;
}

Complex SampledDensity::cauchy_integral(Complex z, const std::function<double(double)>& h) const {
    if (rule_ == DensityRule::Periodic) throw ArgumentError("cauchy_integral needs a line density");
    const std::size_t n = values_.size();
    const double mid = 0.5 * (lo_ + hi_);
    const double half = 0.5 * (hi_ - lo_);
    const Complex zeta = (z - mid) / half;
    const Complex root = std::sqrt(zeta - 1.0) * std::sqrt(zeta + 1.0);

    // Far from the support the plain rule converges like rho^{-2n}; close to it the
    // interpolant of h * smooth is subtracted at z itself, which leaves a polynomial
    // divided difference that the rule integrates exactly. Rounding in that step grows
    // like rho^n, hence the switch at rho^n = 1e6.
    const double rho = std::abs(zeta + root);
    if (static_cast<double>(n) * std::log(std::max(rho, 1.0)) > std::log(1e6)) {
        Complex acc{};
        for (std::size_t k = 0; k < n; ++k) acc += weights_[k] * h(nodes_[k]) / (z - nodes_[k]);
        return acc;
    }

    std::vector<double> g(n);
    for (std::size_t k = 0; k < n; ++k) g[k] = h(nodes_[k]) * smooth_[k];
    Complex num{};
    Complex den{};
    std::optional<Complex> at_node;
    for (std::size_t k = 0; k < n; ++k) {
        const Complex d = zeta - (nodes_[k] - mid) / half;
        if (d == Complex{}) {
            at_node = g[k];
            break;
        }
        const Complex c = bary_[k] / d;
        num += c * g[k];
        den += c;
    }
    const Complex G0 = at_node ? *at_node : num / den;

    Complex acc{};
    for (std::size_t k = 0; k < n; ++k) {
        const Complex d = z - nodes_[k];
        if (d == Complex{}) continue;
        acc += rule_weights_[k] * (g[k] - G0) / d;
    }
    Complex closed;
    if (rule_ == DensityRule::GaussLegendre) {
        closed = std::log(z - lo_) - std::log(z - hi_);
    } else {
        closed = kPi * (zeta - root);
    }
    return acc + G0 * closed;
}

FiniteMeasure::FiniteMeasure(MeasureSupport support, std::vector<Atom> atoms,
                             std::optional<SampledDensity> density)
    : support_(support), atoms_(std::move(atoms)), density_(std::move(density)) {
    for (const Atom& a : atoms_) {
        if (!(a.weight >= 0.0) || !std::isfinite(a.weight) || !std::isfinite(a.location)) {
            throw ArgumentError("measure atoms need finite locations and non-negative weights");
        }
    }
    if (density_) {
        const bool periodic = density_->rule() == DensityRule::Periodic;
        if (periodic != (support_ == MeasureSupport::Circle)) {
            throw ArgumentError("circle measures use periodic densities; line measures do not");
        }
    }
}

FiniteMeasure FiniteMeasure::dirac(double location, double weight, MeasureSupport support) {
    return {support, {Atom{location, weight}}};
}

double FiniteMeasure::total_mass() const {
    double m = 0.0;
    for (const Atom& a : atoms_) m += a.weight;
    if (density_) m += density_->mass();
    return m;
}

Complex FiniteMeasure::cauchy_integral(Complex z, const std::function<double(double)>& h) const {
    if (support_ != MeasureSupport::Line) throw ArgumentError("cauchy_integral needs a line measure");
    Complex acc{};
    for (const Atom& a : atoms_) acc += a.weight * h(a.location) / (z - a.location);
    if (density_) acc += density_->cauchy_integral(z, h);
    return acc;
}

Complex FiniteMeasure::cauchy_integral(Complex z) const {
    return cauchy_integral(z, [](double) { return 1.0; });
}

Complex FiniteMeasure::cauchy_integral_deriv(Complex z, const std::function<double(double)>& h) const {
    if (support_ != MeasureSupport::Line) throw ArgumentError("cauchy_integral needs a line measure");
    return integrate([&](double x) -> Complex {
        const Complex d = z - x;
        return -h(x) / (d * d);
    });
}

FiniteMeasure FiniteMeasure::scaled(double factor) const {
    if (!(factor >= 0.0)) throw ArgumentError("measures scale by non-negative factors only");
    std::vector<Atom> atoms = atoms_;
    for (Atom& a : atoms) a.weight *= factor;
    std::optional<SampledDensity> density;
    if (density_) {
        std::vector<double> values(density_->values().begin(), density_->values().end());
        for (double& v : values) v *= factor;
        density = SampledDensity::from_values(density_->lo(), density_->hi(), std::move(values), density_->rule());
    }
    return {support_, std::move(atoms), std::move(density)};
}

FiniteMeasure semicircle(double mean, double variance, std::size_t n) {
    if (!(variance > 0.0)) throw ArgumentError("semicircle variance must be positive");
    const double r = 2.0 * std::sqrt(variance);
    auto f = [=](double x) {
        const double d = x - mean;
        return 2.0 / (kPi * r * r) * std::sqrt(std::max(0.0, r * r - d * d));
    };
    return {MeasureSupport::Line, {},
            SampledDensity::from_function(mean - r, mean + r, f, n, DensityRule::ChebyshevEdge)};
}

FiniteMeasure uniform_circle(double mass, std::size_t n) {
    const double v = mass / (2.0 * kPi);
    return {MeasureSupport::Circle, {},
            SampledDensity::from_values(0.0, 2.0 * kPi, std::vector<double>(n, v), DensityRule::Periodic)};
}

}  // namespace rlab
