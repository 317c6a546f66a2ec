#include "resolventlab/semigroups.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "resolventlab/errors.hpp"

namespace rlab {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Dormand-Prince 5(4) tableau.
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kB4[7] = {5179.0 / 57600, 0.0, 7571.0 / 16695, 393.0 / 640, -92097.0 / 339200, 187.0 / 2100,
                           1.0 / 40};

std::string at_time(double s) {
    std::ostringstream os;
    os.precision(17);
    os << s;
    return os.str();
}

template <class OnStep>
Complex integrate(const Generator& g, double t, Complex w, const FlowOptions& opts, OnStep&& on_step) {
    require_inside(g.domain(), w, "flow start");
    if (!std::isfinite(t)) throw ArgumentError("flow time must be finite");
    const DomainKind dom = g.domain();
    const ComplexFn& G = g.value_fn();
    const double dir = t < 0.0 ? -1.0 : 1.0;
    const double T = std::abs(t);

    double s = 0.0;
    Complex z = w;
    on_step(0.0, z);
    double h = std::min(T, 0.05);
    int steps = 0;
    Complex k[7];

    while (s < T) {
        if (boundary_distance(dom, z) < opts.boundary_margin) {
            throw TruncationError("trajectory reached the boundary at s=" + at_time(dir * s), dir * s);
        }
        if (++steps > opts.max_steps) throw TruncationError("flow step budget exhausted", dir * s);
        h = std::min(h, T - s);
        if (T - s - h <= 1e-14 * std::max(1.0, T)) h = T - s;

        bool inside = true;
        Complex z5;
        for (int i = 0; i < 7 && inside; ++i) {
            Complex y = z;
            for (int j = 0; j < i; ++j) y += h * kA[i][j] * k[j];
            if (!contains(dom, y)) {
                inside = false;
                break;
            }
            k[i] = dir * G(y);
            if (!finite(k[i])) inside = false;
            if (i == 6) z5 = y;
        }
        if (!inside) {
            h *= 0.5;
            if (h < 1e-14 * std::max(1.0, T)) {
                throw TruncationError("flow step collapsed near the boundary at s=" + at_time(dir * s), dir * s);
            }
            continue;
        }

        Complex err{};
        for (int i = 0; i < 6; ++i) err += (kA[6][i] - kB4[i]) * k[i];
        err -= kB4[6] * k[6];
        const double e = h * std::abs(err);
        const double tol = opts.rk_tol * std::max(1.0, std::abs(z));
        if (e <= tol) {
            s += h;
            z = z5;
            on_step(dir * s, z);
        }
        const double factor = e == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(tol / e, 0.2), 0.2, 5.0);
        h *= factor;
    }
    return z;
}

}  // namespace

Complex exp_formula(const Generator& g, double t, int n, Complex w, const ResolventOptions& opts) {
    if (n < 1) throw ArgumentError("exp_formula needs n >= 1");
    if (!(t >= 0.0)) throw ArgumentError("exp_formula needs t >= 0");
    const double dt = t / n;
    Complex z = w;
    for (int i = 0; i < n; ++i) {
        const ResolventSolution sol = solve_resolvent(g, dt, z, opts);
        if (!contains(g.domain(), sol.value)) throw NumericalError("resolvent left the domain in exp_formula");
        if (sol.residual > opts.tol * std::max({1.0, std::abs(sol.value), std::abs(z)}) * 1e3) {
            throw NumericalError("resolvent residual too large in exp_formula");
        }
        z = sol.value;
    }
    return z;
}

Complex ode_flow(const Generator& g, double t, Complex w, const FlowOptions& opts) {
    return integrate(g, t, w, opts, [](double, Complex) {});
}

std::vector<FlowSample> ode_trajectory(const Generator& g, double t, Complex w, const FlowOptions& opts) {
    std::vector<FlowSample> out;
    integrate(g, t, w, opts, [&](double s, Complex z) { out.push_back({s, z}); });
    return out;
}

Complex closed_form_flow(const Generator& g, double t, Complex w) {
    require_inside(g.domain(), w, "flow start");
    const std::string& n = g.name();
    if (n == "zero") return w;
    if (n == "disk_minus_z") return std::exp(-t) * w;
    if (n == "halfplane_z") return std::exp(t) * w;
    if (n == "strip_const") return w + t;
    if (n == "disk_parabolic") {
        const double th = std::tanh(0.5 * t);
        return (w + th) / (1.0 + w * th);
    }
    if (n == "halfplane_quadratic") return cayley_inv(std::exp(-t) * cayley(w));
    if (n == "halfplane_neg_inv_z") {
        Complex r = std::sqrt(w * w - 2.0 * t);
        if (r.imag() < 0.0) r = -r;
        return r;
    }
    throw UnsupportedError("no closed-form flow for generator '" + n + "'");
}

SemigroupApprox approximate_semigroup(const Generator& g, double t, const std::vector<Complex>& points,
                                      SemigroupApprox::Method method, int n, Execution exec) {
    SemigroupApprox out;
    out.t = t;
    out.n = n;
    out.method = method;
    out.values.resize(points.size());
    for_each_index(points.size(), exec, [&](std::size_t i) {
        Complex v;
        switch (method) {
            case SemigroupApprox::Method::ExpFormula: v = exp_formula(g, t, n, points[i]); break;
            case SemigroupApprox::Method::OdeFlow: v = ode_flow(g, t, points[i]); break;
            case SemigroupApprox::Method::ClosedForm: v = closed_form_flow(g, t, points[i]); break;
        }
        out.values[i] = {points[i], v};
    });
    return out;
}

double semigroup_law_check(const Generator& g, double s, double t, std::size_t sample_n, double rk_tol,
                           std::uint64_t seed, Execution exec) {
    FlowOptions opts;
    opts.rk_tol = rk_tol;
    const std::vector<Complex> pts = sample_points(g.domain(), sample_n, seed);
    std::vector<double> dev(pts.size(), 0.0);
    for_each_index(pts.size(), exec, [&](std::size_t i) {
        const Complex whole = ode_flow(g, s + t, pts[i], opts);
        const Complex split = ode_flow(g, s, ode_flow(g, t, pts[i], opts), opts);
        dev[i] = std::abs(whole - split);
    });
    return dev.empty() ? 0.0 : *std::max_element(dev.begin(), dev.end());
}

}  // namespace rlab
