#include "resolventlab/freeprob.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "resolventlab/errors.hpp"

namespace rlab {

namespace {

constexpr double kPi = std::numbers::pi;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

RealMeasure::RealMeasure(FiniteMeasure m) : m_(std::move(m)) {
    if (m_.support() != MeasureSupport::Line) throw ArgumentError("RealMeasure needs a measure on the line");
    if (std::abs(m_.total_mass() - 1.0) > 1e-12) throw ArgumentError("RealMeasure must have total mass 1");
}

CircleMeasure::CircleMeasure(FiniteMeasure m) : m_(std::move(m)) {
    if (m_.support() != MeasureSupport::Circle) throw ArgumentError("CircleMeasure needs a measure on the circle");
    if (std::abs(m_.total_mass() - 1.0) > 1e-12) throw ArgumentError("CircleMeasure must have total mass 1");
}

Complex CircleMeasure::mean() const {
    return m_.integrate([](double angle) { return std::polar(1.0, angle); });
}

Complex cauchy_transform(const RealMeasure& mu, Complex z) {
    require_inside(DomainKind::HalfPlane, z, "cauchy_transform");
    return mu.measure().cauchy_integral(z);
}

Complex cauchy_transform_deriv(const RealMeasure& mu, Complex z) {
    require_inside(DomainKind::HalfPlane, z, "cauchy_transform_deriv");
    return mu.measure().cauchy_integral_deriv(z, [](double) { return 1.0; });
}

Complex f_transform(const RealMeasure& mu, Complex z) {
    const Complex g = cauchy_transform(mu, z);
    if (g == Complex{}) throw SingularityError("Cauchy transform vanishes");
    return 1.0 / g;
}

Complex voiculescu_transform(const ComplexFn& f, const ComplexFn& df, Complex z, const Wedge& wedge) {
    if (!wedge.contains(z)) throw NumericalError("point outside the inversion wedge");
    Complex y = z;
    Complex r = f(y) - z;
    for (int it = 0; it < 100; ++it) {
        if (std::abs(r) <= 1e-15 * std::abs(z)) return y - z;
        const Complex d = df(y);
        if (!finite(d) || d == Complex{}) break;
        const Complex delta = -r / d;
        double lambda = 1.0;
        bool moved = false;
        for (int k = 0; k < 40; ++k, lambda *= 0.5) {
            const Complex yt = y + lambda * delta;
            if (yt.imag() <= 0.0) continue;
            const Complex rt = f(yt) - z;
            if (finite(rt) && std::abs(rt) < std::abs(r)) {
                y = yt;
                r = rt;
                moved = true;
                break;
            }
        }
        if (!moved) {
            if (std::abs(r) <= 1e-12 * std::abs(z)) return y - z;
            break;
        }
    }
    throw NumericalError("Newton inversion of F did not converge");
}

Complex voiculescu_transform(const RealMeasure& mu, Complex z, const Wedge& wedge) {
    auto f = [&](Complex y) { return f_transform(mu, y); };
    auto df = [&](Complex y) {
        const Complex g = cauchy_transform(mu, y);
        return -cauchy_transform_deriv(mu, y) / (g * g);
    };
    return voiculescu_transform(f, df, z, wedge);
}

Complex voiculescu_phi(const FIDTriple& triple, Complex z) {
    return -nevanlinna_eval(NevanlinnaTriple{0.0, -triple.a, triple.rho}, z);
}

Generator free_generator(const FIDTriple& triple) {
    if (triple.rho.support() != MeasureSupport::Line) throw ArgumentError("FIDTriple measure must live on the line");
    Generator g = make_generator(HalfPlanePick{NevanlinnaTriple{0.0, -triple.a, triple.rho}});
    return {"free_generator", g.domain(), g.value_fn(), [g](Complex z) { return g.derivative(z); },
            g.classification()};
}

Complex free_semigroup_f(const FIDTriple& triple, double t, Complex w, const ResolventOptions& opts) {
    return solve_resolvent(free_generator(triple), t, w, opts).value;
}

Complex voiculescu(const FreeLaw& law, Complex z, const Wedge& wedge) {
    if (const auto* m = std::get_if<RealMeasure>(&law)) return voiculescu_transform(*m, z, wedge);
    return voiculescu_phi(std::get<FIDTriple>(law), z);
}

Complex free_convolve_phi(const FreeLaw& mu, const FreeLaw& nu, Complex z, const Wedge& wedge) {
    return voiculescu(mu, z, wedge) + voiculescu(nu, z, wedge);
}

DensitySample stieltjes_invert(const ComplexFn& cauchy, double x) {
    constexpr double eps[3] = {1e-1, 1e-2, 1e-3};
    double d[3];
    for (int k = 0; k < 3; ++k) d[k] = -cauchy(Complex{x, eps[k]}).imag() / kPi;
    // Linear error in eps, ladder ratio 10.
    const double r1 = (10.0 * d[1] - d[0]) / 9.0;
    const double r2 = (10.0 * d[2] - d[1]) / 9.0;
    DensitySample out;
    out.x = x;
    out.density = std::max(0.0, r2);
    const bool up = d[0] <= d[1] && d[1] <= d[2];
    const bool down = d[0] >= d[1] && d[1] >= d[2];
    out.warning = !(up || down) || !std::isfinite(r1) || !std::isfinite(r2);
    return out;
}

std::vector<DensitySample> stieltjes_invert(const ComplexFn& cauchy, std::span<const double> xs, Execution exec) {
    std::vector<DensitySample> out(xs.size());
    for_each_index(xs.size(), exec, [&](std::size_t i) { out[i] = stieltjes_invert(cauchy, xs[i]); });
    return out;
}

Complex monotone_convolve_f(const RealMeasure& mu, const RealMeasure& nu, Complex z) {
    return f_transform(mu, f_transform(nu, z));
}

MultTransforms mult_transforms(const CircleMeasure& mu, Complex z) {
    require_inside(DomainKind::Disk, z, "mult_transforms");
    const Complex psi = mu.measure().integrate([z](double angle) -> Complex {
        const Complex xz = std::polar(1.0, angle) * z;
        return xz / (1.0 - xz);
    });
    if (std::abs(1.0 + psi) < 1e-300) throw SingularityError("1 + psi vanishes");
    return {psi, psi / (1.0 + psi)};
}

Complex sigma_transform(const MultSemigroupData& data, double t, Complex z) {
    return std::exp(t * herglotz_eval(data, z));
}

namespace {

detail::Homotopy eta_homotopy(const MultSemigroupData& data, Complex z) {
    detail::Homotopy h;
    h.domain = DomainKind::Disk;
    h.residual = [&data, z](double s, Complex x) { return x * std::exp(s * herglotz_eval(data, x)) - z; };
    h.dx = [&data](double s, Complex x) {
        return std::exp(s * herglotz_eval(data, x)) * (1.0 + s * x * herglotz_deriv(data, x));
    };
    h.ds = [&data](double s, Complex x) {
        const Complex u = herglotz_eval(data, x);
        return x * u * std::exp(s * u);
    };
    h.scale = [](double, Complex) { return 1.0; };
    return h;
}

}  // namespace

Complex eta_t(const MultSemigroupData& data, double t, Complex z, const ResolventOptions& opts) {
    require_inside(DomainKind::Disk, z, "eta_t");
    const detail::Homotopy h = eta_homotopy(data, z);
    return detail::track_root(h, z, t, std::min(0.1, std::max(t, 1e-3)), opts).x;
}

Generator mult_generator(const MultSemigroupData& data) {
    Classification cls;
    cls.kind = Classification::Kind::PickType;
    cls.angular_residue = 0.0;
    return {"mult_generator", DomainKind::HalfPlane,
            [data](Complex z) { return kI * herglotz_eval(data, std::exp(kI * z)); },
            [data](Complex z) {
                const Complex xi = std::exp(kI * z);
                return -herglotz_deriv(data, xi) * xi;
            },
            cls};
}

Complex mult_chain_J(const MultSemigroupData& data, double t, Complex z, const ResolventOptions& opts) {
    require_inside(DomainKind::HalfPlane, z, "mult_chain_J");
    if (!(t >= 0.0)) throw ArgumentError("mult_chain_J needs t >= 0");
    if (t == 0.0) return z;
    const Complex xi = std::exp(kI * z);

    detail::Homotopy h = eta_homotopy(data, xi);
    double theta = z.real();
    Complex last = xi;
    h.step_ok = [](Complex prev, Complex next) {
        const Complex dj = -kI * std::log(next / prev);
        return std::abs(dj) < kHalfPi;
    };
    h.on_accept = [&](double, Complex x) {
        theta += std::arg(x / last);
        last = x;
    };
    const detail::HomotopyResult r = detail::track_root(h, xi, t, std::min(0.1, t), opts);
    const Complex j{theta, -std::log(std::abs(r.x))};

    const Generator g = mult_generator(data);
    const double residual = std::abs(j - t * g.value_fn()(j) - z);
    if (!(residual <= 1e-8 * std::max(1.0, std::abs(z)))) {
        throw NumericalError("multiplicative chain failed the resolvent identity");
    }
    return j;
}

}  // namespace rlab
