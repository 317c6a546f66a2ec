#pragma once

#include <complex>
#include <functional>
#include <numbers>
#include <string_view>

namespace rlab {

using Complex = std::complex<double>;
using ComplexFn = std::function<Complex(Complex)>;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kHalfPi = std::numbers::pi / 2.0;

/// The three canonical domains: unit disk, upper half-plane, strip |Im z| < pi/2.
enum class DomainKind { Disk, HalfPlane, Strip };

std::string_view to_string(DomainKind kind);
DomainKind domain_from_string(std::string_view name);

/// Strict-interior membership; no tolerance is applied.
bool contains(DomainKind domain, Complex z);

/// Distance from z to the boundary of the domain (0 outside).
double boundary_distance(DomainKind domain, Complex z);

/// Throws DomainError unless z is finite and lies in the domain.
void require_inside(DomainKind domain, Complex z, std::string_view what);

// Cayley transform H -> D, z |-> (z - i)/(z + i), and its inverse D -> H.
Complex cayley(Complex z);
Complex cayley_inv(Complex w);

// D -> strip, zeta |-> log((1 + zeta)/(1 - zeta)) on the principal branch; inverse tanh(z/2).
Complex strip_map(Complex zeta);
Complex strip_map_inv(Complex z);

/// Euclidean disk {|z - center| < radius}.
struct DiskRegion {
    Complex center;
    double radius;

    bool contains(Complex z) const { return std::abs(z - center) < radius; }
};

/// Hyperbolic disk {|(z - tau)/(1 - conj(tau) z)| < rho} as a Euclidean disk.
DiskRegion hyperbolic_disk(Complex tau, double rho);

/// Horocycle {|z - tau|^2 / (1 - |z|^2) < R} at a boundary point tau.
DiskRegion horocycle(Complex tau, double R);

/// Biholomorphisms between canonical domains, plus affine maps with declared domains.
class Biholomorphism {
public:
    enum class Kind { Identity, Cayley, CayleyInverse, StripMap, StripMapInverse, Affine };

    static Biholomorphism identity(DomainKind domain);
    static Biholomorphism cayley_map();          // H -> D
    static Biholomorphism cayley_inverse_map();  // D -> H
    static Biholomorphism strip();               // D -> strip
    static Biholomorphism strip_inverse();       // strip -> D
    /// z |-> a z + b; the caller certifies that it maps `source` onto `target`.
    static Biholomorphism affine(Complex a, Complex b, DomainKind source, DomainKind target);

    Kind kind() const { return kind_; }
    DomainKind source() const { return source_; }
    DomainKind target() const { return target_; }

    Complex operator()(Complex z) const;
    Complex derivative(Complex z) const;
    Biholomorphism inverse() const;

private:
    Biholomorphism(Kind kind, DomainKind source, DomainKind target, Complex a = 1.0, Complex b = 0.0)
        : kind_(kind), source_(source), target_(target), a_(a), b_(b) {}

    Kind kind_;
    DomainKind source_;
    DomainKind target_;
    Complex a_;
    Complex b_;
};

/// Pulls a vector field back along phi: z |-> G(phi(z)) / phi'(z), defined on phi.source().
/// G must be a field on phi.target().
ComplexFn conjugate_field(ComplexFn field, const Biholomorphism& phi);

}  // namespace rlab
