#include "resolventlab/generators.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "resolventlab/errors.hpp"

namespace rlab {

namespace {

constexpr double kPi = std::numbers::pi;

Complex unit(double angle) { return std::polar(1.0, angle); }

void check_line(const NevanlinnaTriple& q) {
    if (q.rho.support() != MeasureSupport::Line) throw ArgumentError("Nevanlinna measure must live on the real line");
    if (!(q.alpha >= 0.0) || !std::isfinite(q.beta)) throw ArgumentError("Nevanlinna triple needs alpha >= 0 and finite beta");
}

void check_circle(const HerglotzData& u) {
    if (u.rho.support() != MeasureSupport::Circle) throw ArgumentError("Herglotz measure must live on the unit circle");
    if (!std::isfinite(u.imag_const)) throw ArgumentError("Herglotz imaginary constant must be finite");
}

Classification disk_class(std::optional<Complex> dw = std::nullopt) {
    Classification c;
    c.kind = Classification::Kind::BoundedDomain;
    c.denjoy_wolff = dw;
    return c;
}

Classification pick_class(std::optional<double> b) {
    Classification c;
    c.kind = Classification::Kind::PickType;
    c.angular_residue = b;
    return c;
}

Classification finite_dw_class(Complex sigma) {
    Classification c;
    c.kind = Classification::Kind::FiniteDenjoyWolff;
    c.denjoy_wolff = sigma;
    return c;
}

Classification strip_class() {
    Classification c;
    c.kind = Classification::Kind::StripInfinity;
    return c;
}

struct SpecBuilder {
    Generator operator()(const BerksonPorta& bp) const {
        check_circle(bp.p);
        if (std::abs(bp.tau) > 1.0 + 1e-12) throw ArgumentError("Berkson-Porta point must lie in the closed disk");
        const Complex tau = bp.tau;
        const HerglotzData p = bp.p;
        auto value = [tau, p](Complex z) { return (tau - z) * (1.0 - std::conj(tau) * z) * herglotz_eval(p, z); };
        auto deriv = [tau, p](Complex z) {
            const Complex a = tau - z;
            const Complex b = 1.0 - std::conj(tau) * z;
            return (-b - std::conj(tau) * a) * herglotz_eval(p, z) + a * b * herglotz_deriv(p, z);
        };
        return {"berkson_porta", DomainKind::Disk, value, deriv, disk_class(tau)};
    }

    Generator operator()(const HalfPlanePick& hp) const {
        check_line(hp.q);
        const NevanlinnaTriple q = hp.q;
        return {"halfplane_pick", DomainKind::HalfPlane, [q](Complex z) { return nevanlinna_eval(q, z); },
                [q](Complex z) { return nevanlinna_deriv(q, z); }, pick_class(q.alpha)};
    }

    Generator operator()(const HalfPlaneInterior& hi) const {
        check_line(hi.q);
        if (hi.sigma.imag() < 0.0) throw ArgumentError("interior Denjoy-Wolff point must lie in the closed half-plane");
        const Complex s = hi.sigma;
        const NevanlinnaTriple q = hi.q;
        auto value = [s, q](Complex z) { return (z - s) * (z - std::conj(s)) * nevanlinna_eval(q, z); };
        auto deriv = [s, q](Complex z) {
            return (2.0 * z - s - std::conj(s)) * nevanlinna_eval(q, z) +
                   (z - s) * (z - std::conj(s)) * nevanlinna_deriv(q, z);
        };
        return {"halfplane_interior", DomainKind::HalfPlane, value, deriv, finite_dw_class(s)};
    }

    Generator operator()(const StripForm& sf) const {
        check_circle(sf.p);
        const HerglotzData p = sf.p;
        auto value = [p](Complex z) { return std::exp(-z) * 2.0 * herglotz_eval(p, std::tanh(0.5 * z)); };
        auto deriv = [p](Complex z) {
            const Complex zeta = std::tanh(0.5 * z);
            const Complex e = std::exp(-z);
            return -e * 2.0 * herglotz_eval(p, zeta) + e * 2.0 * herglotz_deriv(p, zeta) * 0.5 * (1.0 - zeta * zeta);
        };
        return {"strip_form", DomainKind::Strip, value, deriv, strip_class()};
    }

    Generator operator()(const Catalog& c) const {
        switch (c.kind) {
            case CatalogKind::Zero: return catalog::zero(c.domain);
            case CatalogKind::DiskMinusZ: return catalog::disk_minus_z();
            case CatalogKind::DiskHyperbolic: return catalog::disk_hyperbolic(c.angle);
            case CatalogKind::DiskParabolic: return catalog::disk_parabolic();
            case CatalogKind::HalfPlaneZ: return catalog::halfplane_z();
            case CatalogKind::HalfPlaneQuadratic: return catalog::halfplane_quadratic();
            case CatalogKind::HalfPlaneNegInvZ: return catalog::halfplane_neg_inv_z();
            case CatalogKind::StripConst: return catalog::strip_const();
        }
        throw ArgumentError("unknown catalog generator");
    }

    Generator operator()(const CustomGenerator& c) const {
        if (!c.value) throw ArgumentError("custom generator needs a value function");
        return {c.name.empty() ? "custom" : c.name, c.domain, c.value, c.derivative, c.classification};
    }
};

}  // namespace

Complex nevanlinna_eval(const NevanlinnaTriple& q, Complex z) {
    require_inside(DomainKind::HalfPlane, z, "nevanlinna_eval");
    // (1 + t z)/(t - z) = -t - (1 + t^2)/(z - t)
    Complex acc = q.alpha * z + q.beta;
    if (!q.rho.empty()) {
        acc -= q.rho.integrate([](double t) { return t; });
        acc -= q.rho.cauchy_integral(z, [](double t) { return 1.0 + t * t; });
    }
    return acc;
}

Complex nevanlinna_deriv(const NevanlinnaTriple& q, Complex z) {
    Complex acc = q.alpha;
    if (!q.rho.empty()) acc -= q.rho.cauchy_integral_deriv(z, [](double t) { return 1.0 + t * t; });
    return acc;
}

Complex herglotz_eval(const HerglotzData& u, Complex zeta) {
    require_inside(DomainKind::Disk, zeta, "herglotz_eval");
    Complex acc = -kI * u.imag_const;
    acc += u.rho.integrate([zeta](double angle) -> Complex {
        const Complex x = unit(angle);
        return (1.0 + zeta * x) / (1.0 - zeta * x);
    });
    return acc;
}

Complex herglotz_deriv(const HerglotzData& u, Complex zeta) {
    return u.rho.integrate([zeta](double angle) -> Complex {
        const Complex x = unit(angle);
        const Complex d = 1.0 - zeta * x;
        return 2.0 * x / (d * d);
    });
}

Generator::Generator(std::string name, DomainKind domain, ComplexFn value, ComplexFn derivative,
                     Classification classification)
    : name_(std::move(name)),
      domain_(domain),
      value_(std::move(value)),
      derivative_(std::move(derivative)),
      classification_(std::move(classification)) {
    if (!value_) throw ArgumentError("generator needs a value function");
}

Complex Generator::operator()(Complex z) const {
    require_inside(domain_, z, name_);
    const Complex v = value_(z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw NumericalError(name_ + ": non-finite value inside the domain");
    }
    return v;
}

Complex Generator::derivative(Complex z) const {
    require_inside(domain_, z, name_);
    if (derivative_) return derivative_(z);
    const double r = std::min(1e-2, 0.5 * boundary_distance(domain_, z));
    return cauchy_stencil_derivative(value_, z, r);
}

Complex cauchy_stencil_derivative(const ComplexFn& f, Complex z, double radius) {
    if (!(radius > 0.0)) throw ArgumentError("stencil radius must be positive");
    constexpr int n = 16;
    Complex acc{};
    for (int k = 0; k < n; ++k) {
        const Complex w = unit(2.0 * kPi * k / n);
        acc += f(z + radius * w) / w;
    }
    return acc / (static_cast<double>(n) * radius);
}

std::string_view to_string(CatalogKind kind) {
    switch (kind) {
        case CatalogKind::Zero: return "zero";
        case CatalogKind::DiskMinusZ: return "disk_minus_z";
        case CatalogKind::DiskHyperbolic: return "disk_hyperbolic";
        case CatalogKind::DiskParabolic: return "disk_parabolic";
        case CatalogKind::HalfPlaneZ: return "halfplane_z";
        case CatalogKind::HalfPlaneQuadratic: return "halfplane_quadratic";
        case CatalogKind::HalfPlaneNegInvZ: return "halfplane_neg_inv_z";
        case CatalogKind::StripConst: return "strip_const";
    }
    return "unknown";
}

CatalogKind catalog_from_string(std::string_view name) {
    for (CatalogKind k : {CatalogKind::Zero, CatalogKind::DiskMinusZ, CatalogKind::DiskHyperbolic,
                          CatalogKind::DiskParabolic, CatalogKind::HalfPlaneZ, CatalogKind::HalfPlaneQuadratic,
                          CatalogKind::HalfPlaneNegInvZ, CatalogKind::StripConst}) {
        if (to_string(k) == name) return k;
    }
    throw ArgumentError("unknown catalog generator: " + std::string(name));
}

Generator make_generator(const GeneratorSpec& spec) { return std::visit(SpecBuilder{}, spec); }

Complex eval(const GeneratorSpec& spec, Complex z) { return make_generator(spec)(z); }

Complex eval_deriv(const GeneratorSpec& spec, Complex z) { return make_generator(spec).derivative(z); }

namespace catalog {

Generator zero(DomainKind domain) {
    Classification c;
    switch (domain) {
        case DomainKind::Disk: c = disk_class(); break;
        case DomainKind::HalfPlane: c = pick_class(0.0); break;
        case DomainKind::Strip: c = strip_class(); break;
    }
    return {"zero", domain, [](Complex) { return Complex{}; }, [](Complex) { return Complex{}; }, c};
}

Generator disk_minus_z() {
    return {"disk_minus_z", DomainKind::Disk, [](Complex z) { return -z; }, [](Complex) { return Complex{-1.0}; },
            disk_class(Complex{})};
}

Generator disk_hyperbolic(double angle) {
    const Complex e = unit(angle);
    auto value = [e](Complex z) { return -z * (1.0 + e * z) / (1.0 - e * z); };
    // d/dz [-z (1 + e z)/(1 - e z)] = -(1 + 2 e z - e^2 z^2)/(1 - e z)^2
    auto deriv = [e](Complex z) {
        const Complex d = 1.0 - e * z;
        return -(1.0 + 2.0 * e * z - e * e * z * z) / (d * d);
    };
    return {"disk_hyperbolic", DomainKind::Disk, value, deriv, disk_class(Complex{})};
}

Generator disk_g1() {
    Generator g = disk_hyperbolic(0.0);
    return {"disk_g1", g.domain(), g.value_fn(), [](Complex z) {
                const Complex d = 1.0 - z;
                return -(1.0 + 2.0 * z - z * z) / (d * d);
            },
            g.classification()};
}

Generator disk_g2() {
    Generator g = disk_hyperbolic(kPi);
    return {"disk_g2", DomainKind::Disk, [](Complex z) { return -z * (1.0 - z) / (1.0 + z); },
            [](Complex z) {
                const Complex d = 1.0 + z;
                return -(1.0 - 2.0 * z - z * z) / (d * d);
            },
            g.classification()};
}

Generator disk_parabolic() {
    return {"disk_parabolic", DomainKind::Disk, [](Complex z) { return 0.5 * (1.0 - z * z); },
            [](Complex z) { return -z; }, disk_class(Complex{1.0})};
}

Generator halfplane_z() {
    return {"halfplane_z", DomainKind::HalfPlane, [](Complex z) { return z; }, [](Complex) { return Complex{1.0}; },
            pick_class(1.0)};
}

Generator halfplane_quadratic() {
    return {"halfplane_quadratic", DomainKind::HalfPlane, [](Complex z) { return 0.5 * kI * (z * z + 1.0); },
            [](Complex z) { return kI * z; }, finite_dw_class(kI)};
}

Generator halfplane_neg_inv_z() {
    return {"halfplane_neg_inv_z", DomainKind::HalfPlane, [](Complex z) { return -1.0 / z; },
            [](Complex z) { return 1.0 / (z * z); }, pick_class(0.0)};
}

Generator strip_const() {
    return {"strip_const", DomainKind::Strip, [](Complex) { return Complex{1.0}; },
            [](Complex) { return Complex{}; }, strip_class()};
}

}  // namespace catalog

Generator linear_combination(const std::vector<std::pair<double, Generator>>& terms, std::string name) {
    if (terms.empty()) throw ArgumentError("linear_combination needs at least one term");
    const DomainKind domain = terms.front().second.domain();
    bool all_disk = domain == DomainKind::Disk;
    bool all_pick = true;
    double b = 0.0;
    for (const auto& [c, g] : terms) {
        if (g.domain() != domain) throw ArgumentError("linear_combination terms must share a domain");
        if (!(c >= 0.0)) throw ArgumentError("linear_combination coefficients must be non-negative");
        const auto& cls = g.classification();
        if (cls.kind != Classification::Kind::PickType || !cls.angular_residue) {
            all_pick = false;
        } else {
            b += c * *cls.angular_residue;
        }
    }
    Classification cls;
    if (all_disk) {
        cls = disk_class();
    } else if (all_pick) {
        cls = pick_class(b);
    } else if (domain == DomainKind::Strip) {
        bool all_strip = true;
        for (const auto& term : terms) {
            all_strip = all_strip && term.second.classification().kind == Classification::Kind::StripInfinity;
        }
        if (all_strip) cls = strip_class();
    }
    auto value = [terms](Complex z) {
        Complex acc{};
        for (const auto& [c, g] : terms) {
            if (c != 0.0) acc += c * g.value_fn()(z);
        }
        return acc;
    };
    auto deriv = [terms](Complex z) {
        Complex acc{};
        for (const auto& [c, g] : terms) {
            if (c != 0.0) acc += c * g.derivative(z);
        }
        return acc;
    };
    return {std::move(name), domain, value, deriv, cls};
}

Generator compose(const Generator& outer, ComplexFn inner, ComplexFn inner_derivative, std::string name) {
    auto value = [outer, inner](Complex z) { return outer.value_fn()(inner(z)); };
    ComplexFn deriv;
    if (inner_derivative) {
        deriv = [outer, inner, inner_derivative](Complex z) {
            return outer.derivative(inner(z)) * inner_derivative(z);
        };
    }
    return {std::move(name), outer.domain(), value, deriv, {}};
}

Generator conjugate_generator(const Generator& g, const Biholomorphism& phi) {
    if (g.domain() != phi.target()) throw ArgumentError("conjugation map must land in the generator's domain");
    ComplexFn field = conjugate_field(g.value_fn(), phi);
    Classification cls;
    if (phi.source() == DomainKind::Disk) cls = disk_class();
    return {g.name() + "_conjugated", phi.source(), field, {}, cls};
}

std::vector<Complex> disk_grid(std::size_t n, double r_max) {
    if (n == 0) throw ArgumentError("grid size must be positive");
    if (!(r_max > 0.0 && r_max < 1.0)) throw ArgumentError("grid radius must lie in (0, 1)");
    std::vector<Complex> pts;
    pts.reserve(n * n);
    for (std::size_t k = 1; k <= n; ++k) {
        const double r = r_max * static_cast<double>(k) / static_cast<double>(n);
        for (std::size_t j = 0; j < n; ++j) pts.push_back(std::polar(r, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n)));
    }
    return pts;
}

GeneratorTest is_generator_disk(const ComplexFn& h, Complex tau, std::size_t grid_n, Execution exec, double tol) {
    if (std::abs(tau) > 1.0 + 1e-12) throw ArgumentError("Berkson-Porta point must lie in the closed disk");
    const std::vector<Complex> pts = disk_grid(grid_n);
    std::vector<double> vals(pts.size(), std::numeric_limits<double>::infinity());
    for_each_index(pts.size(), exec, [&](std::size_t i) {
        const Complex z = pts[i];
        const Complex d = (tau - z) * (1.0 - std::conj(tau) * z);
        if (std::abs(d) < 1e-9) return;
        const Complex v = h(z) / d;
        vals[i] = std::isfinite(v.real()) ? v.real() : -std::numeric_limits<double>::infinity();
    });

    GeneratorTest out;
    out.points = pts.size();
    std::size_t worst = 0;
    for (std::size_t i = 1; i < vals.size(); ++i) {
        if (vals[i] < vals[worst]) worst = i;
    }
    out.witness = pts[worst];
    out.witness_value = vals[worst];
    out.ok = !(vals[worst] < -tol);
    return out;
}

double angular_residue_b(const ComplexFn& g) {
    std::vector<Complex> ratio;
    for (int k = 4; k <= 20; ++k) {
        const double y = std::ldexp(1.0, k);
        ratio.push_back(g(Complex{0.0, y}) / Complex{0.0, y});
    }
    std::vector<double> rich;
    for (std::size_t k = 0; k + 1 < ratio.size(); ++k) rich.push_back((2.0 * ratio[k + 1] - ratio[k]).real());
    const std::size_t m = rich.size();
    const double last = rich[m - 1];
    double spread = 0.0;
    for (std::size_t k = m - 3; k < m; ++k) spread = std::max(spread, std::abs(rich[k] - last));
    if (!std::isfinite(last) || spread > 1e-4 * std::max(1.0, std::abs(last))) {
        throw NumericalError("angular residue did not stabilise along the imaginary axis");
    }
    return std::max(0.0, last);
}

double angular_residue_b(const Generator& g) {
    if (g.domain() != DomainKind::HalfPlane) throw ArgumentError("angular residue is defined for half-plane generators");
    const auto& cls = g.classification();
    if (cls.angular_residue) return *cls.angular_residue;
    return angular_residue_b(g.value_fn());
}

}  // namespace rlab
