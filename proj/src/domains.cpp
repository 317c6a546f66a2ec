#include "resolventlab/domains.hpp"

#include <cmath>
#include <string>

#include "resolventlab/errors.hpp"

namespace rlab {

std::string_view to_string(DomainKind kind) {
    switch (kind) {
        case DomainKind::Disk: return "disk";
        case DomainKind::HalfPlane: return "halfplane";
        case DomainKind::Strip: return "strip";
    }
    return "unknown";
}

DomainKind domain_from_string(std::string_view name) {
    if (name == "disk") return DomainKind::Disk;
    if (name == "halfplane") return DomainKind::HalfPlane;
    if (name == "strip") return DomainKind::Strip;
    throw ArgumentError("unknown domain '" + std::string(name) + "'");
}

bool contains(DomainKind domain, Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    switch (domain) {
        case DomainKind::Disk: return std::norm(z) < 1.0;
        case DomainKind::HalfPlane: return z.imag() > 0.0;
        case DomainKind::Strip: return std::abs(z.imag()) < kHalfPi;
    }
    return false;
}

double boundary_distance(DomainKind domain, Complex z) {
    if (!contains(domain, z)) return 0.0;
    switch (domain) {
        case DomainKind::Disk: return 1.0 - std::abs(z);
        case DomainKind::HalfPlane: return z.imag();
        case DomainKind::Strip: return kHalfPi - std::abs(z.imag());
    }
    return 0.0;
}

void require_inside(DomainKind domain, Complex z, std::string_view what) {
    if (!contains(domain, z)) {
        throw DomainError(std::string(what) + ": point (" + std::to_string(z.real()) + ", " +
                          std::to_string(z.imag()) + ") is not inside the " +
                          std::string(to_string(domain)));
    }
}

Complex cayley(Complex z) {
    if (z == -kI) throw DomainError("cayley: pole at z = -i");
    return (z - kI) / (z + kI);
}

Complex cayley_inv(Complex w) {
    if (w == Complex{1.0, 0.0}) throw DomainError("cayley_inv: pole at w = 1");
    return kI * (1.0 + w) / (1.0 - w);
}

Complex strip_map(Complex zeta) {
    require_inside(DomainKind::Disk, zeta, "strip_map");
    return std::log((1.0 + zeta) / (1.0 - zeta));
}

Complex strip_map_inv(Complex z) { return std::tanh(z / 2.0); }

DiskRegion hyperbolic_disk(Complex tau, double rho) {
    if (!(std::abs(tau) < 1.0)) throw ArgumentError("hyperbolic_disk: |tau| must be < 1");
    if (!(rho > 0.0 && rho < 1.0)) throw ArgumentError("hyperbolic_disk: rho must lie in (0, 1)");
    const double rho2 = rho * rho;
    const double tau2 = std::norm(tau);
    const double den = 1.0 - rho2 * tau2;
    return {(1.0 - rho2) * tau / den, (1.0 - tau2) * rho / den};
}

DiskRegion horocycle(Complex tau, double R) {
    if (std::abs(std::abs(tau) - 1.0) > 1e-12) throw ArgumentError("horocycle: |tau| must be 1");
    if (!(R > 0.0) || !std::isfinite(R)) throw ArgumentError("horocycle: R must be positive");
    return {tau / (1.0 + R), R / (1.0 + R)};
}

Biholomorphism Biholomorphism::identity(DomainKind domain) {
    return {Kind::Identity, domain, domain};
}

Biholomorphism Biholomorphism::cayley_map() {
    return {Kind::Cayley, DomainKind::HalfPlane, DomainKind::Disk};
}

Biholomorphism Biholomorphism::cayley_inverse_map() {
    return {Kind::CayleyInverse, DomainKind::Disk, DomainKind::HalfPlane};
}

Biholomorphism Biholomorphism::strip() {
    return {Kind::StripMap, DomainKind::Disk, DomainKind::Strip};
}

Biholomorphism Biholomorphism::strip_inverse() {
    return {Kind::StripMapInverse, DomainKind::Strip, DomainKind::Disk};
}

Biholomorphism Biholomorphism::affine(Complex a, Complex b, DomainKind source, DomainKind target) {
    if (a == Complex{}) throw ArgumentError("affine map needs a != 0");
    return {Kind::Affine, source, target, a, b};
}

Complex Biholomorphism::operator()(Complex z) const {
    switch (kind_) {
        case Kind::Identity: return z;
        case Kind::Cayley: return cayley(z);
        case Kind::CayleyInverse: return cayley_inv(z);
        case Kind::StripMap: return strip_map(z);
        case Kind::StripMapInverse: return strip_map_inv(z);
        case Kind::Affine: return a_ * z + b_;
    }
    return z;
}

Complex Biholomorphism::derivative(Complex z) const {
    switch (kind_) {
        case Kind::Identity: return 1.0;
        case Kind::Cayley: {
            const Complex d = z + kI;
            return 2.0 * kI / (d * d);
        }
        case Kind::CayleyInverse: {
            const Complex d = 1.0 - z;
            return 2.0 * kI / (d * d);
        }
        case Kind::StripMap: return 2.0 / (1.0 - z * z);
        case Kind::StripMapInverse: {
            const Complex c = std::cosh(z / 2.0);
            return 0.5 / (c * c);
        }
        case Kind::Affine: return a_;
    }
    return 1.0;
}

Biholomorphism Biholomorphism::inverse() const {
    switch (kind_) {
        case Kind::Identity: return *this;
        case Kind::Cayley: return cayley_inverse_map();
        case Kind::CayleyInverse: return cayley_map();
        case Kind::StripMap: return strip_inverse();
        case Kind::StripMapInverse: return strip();
        case Kind::Affine: return affine(1.0 / a_, -b_ / a_, target_, source_);
    }
    return *this;
}

ComplexFn conjugate_field(ComplexFn field, const Biholomorphism& phi) {
    return [field = std::move(field), phi](Complex z) {
        require_inside(phi.source(), z, "conjugated generator");
        return field(phi(z)) / phi.derivative(z);
    };
}

}  // namespace rlab
