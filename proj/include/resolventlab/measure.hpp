#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "resolventlab/domains.hpp"

namespace rlab {

/// Where a measure lives. Circle locations are angles in [0, 2pi).
enum class MeasureSupport { Line, Circle };

/// How the sampled part of a measure is integrated.
///  - GaussLegendre: density samples at Gauss-Legendre nodes on [lo, hi].
///  - ChebyshevEdge: density behaves like sqrt at both ends (semicircle-type edges);
///    samples at x_k = mid + half*cos(k pi/(n+1)), exact for sqrt(1-y^2)*polynomial.
///  - Periodic: trapezoid rule on [lo, lo + 2pi), for circle densities.
enum class DensityRule { GaussLegendre, ChebyshevEdge, Periodic };

struct Atom {
    double location;
    double weight;
};

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights);

/// A density sampled at quadrature nodes. weights() already include the density values,
/// so that the integral of h against the density is sum_k weights[k] * h(nodes[k]).
class SampledDensity {
public:
    static SampledDensity from_values(double lo, double hi, std::vector<double> values, DensityRule rule);
    static SampledDensity from_function(double lo, double hi, const std::function<double(double)>& f,
                                        std::size_t n, DensityRule rule);

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    DensityRule rule() const { return rule_; }
    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> values() const { return values_; }
    std::span<const double> weights() const { return weights_; }
    double mass() const;

    /// Density value at x, by barycentric interpolation of the samples
    /// (of f / sqrt(1 - y^2) for ChebyshevEdge, of f otherwise). Zero outside [lo, hi].
    double interpolate(double x) const;

    /// Integral of h(x) / (z - x) against the density. Near the support the interpolated
    /// density at Re z is subtracted and its contribution integrated in closed form.
    Complex cauchy_integral(Complex z, const std::function<double(double)>& h) const;

private:
    SampledDensity() = default;
    void build();
    double edge_factor(double x) const;  // sqrt(1 - y^2) for ChebyshevEdge, 1 otherwise
    double smooth_at(double t) const;    // interpolant of smooth_ at unit coordinate t

    double lo_ = 0.0;
    double hi_ = 0.0;
    DensityRule rule_ = DensityRule::GaussLegendre;
    std::vector<double> nodes_;
    std::vector<double> values_;
    std::vector<double> weights_;       // quadrature weight * value
    std::vector<double> rule_weights_;  // bare quadrature weights for the smooth factor
    std::vector<double> bary_;          // barycentric weights in the unit coordinate
    std::vector<double> smooth_;        // values / edge factor
};

/// Finite non-negative measure: atoms plus an optional sampled density.
class FiniteMeasure {
public:
    FiniteMeasure() = default;
    FiniteMeasure(MeasureSupport support, std::vector<Atom> atoms,
                  std::optional<SampledDensity> density = std::nullopt);

    static FiniteMeasure zero(MeasureSupport support = MeasureSupport::Line) { return {support, {}}; }
    static FiniteMeasure dirac(double location, double weight = 1.0,
                               MeasureSupport support = MeasureSupport::Line);

    MeasureSupport support() const { return support_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::optional<SampledDensity>& density() const { return density_; }
    bool empty() const { return atoms_.empty() && !density_; }

    double total_mass() const;

    /// Sum over atoms and quadrature nodes of weight * h(location).
    template <class F>
    auto integrate(F&& h) const -> decltype(h(0.0)) {
        using R = decltype(h(0.0));
        R acc{};
        for (const Atom& a : atoms_) acc += a.weight * h(a.location);
        if (density_) {
            const auto x = density_->nodes();
            const auto w = density_->weights();
            for (std::size_t k = 0; k < x.size(); ++k) acc += w[k] * h(x[k]);
        }
        return acc;
    }

    /// Line measures: integral of h(x) / (z - x).
    Complex cauchy_integral(Complex z, const std::function<double(double)>& h) const;
    Complex cauchy_integral(Complex z) const;
    /// d/dz of cauchy_integral(z, h), by direct quadrature.
    Complex cauchy_integral_deriv(Complex z, const std::function<double(double)>& h) const;

    FiniteMeasure scaled(double factor) const;

private:
    MeasureSupport support_ = MeasureSupport::Line;
    std::vector<Atom> atoms_;
    std::optional<SampledDensity> density_;
};

/// Semicircle law with given mean and variance, sampled with the edge rule.
FiniteMeasure semicircle(double mean = 0.0, double variance = 1.0, std::size_t n = 64);

/// Normalised arc-length measure on the circle (total mass `mass`).
FiniteMeasure uniform_circle(double mass = 1.0, std::size_t n = 64);

}  // namespace rlab
