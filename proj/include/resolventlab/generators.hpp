#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "resolventlab/domains.hpp"
#include "resolventlab/measure.hpp"
#include "resolventlab/parallel.hpp"

namespace rlab {

/// q(z) = alpha z + beta + int (1 + t z)/(t - z) rho(dt), a Pick function on H.
struct NevanlinnaTriple {
    double alpha = 0.0;
    double beta = 0.0;
    FiniteMeasure rho;
};

/// u(z) = -i imag_const + int (1 + z x)/(1 - z x) rho(dx) over the unit circle; Re u >= 0 on D.
struct HerglotzData {
    double imag_const = 0.0;
    FiniteMeasure rho = FiniteMeasure::zero(MeasureSupport::Circle);
};

Complex nevanlinna_eval(const NevanlinnaTriple& q, Complex z);
Complex nevanlinna_deriv(const NevanlinnaTriple& q, Complex z);
Complex herglotz_eval(const HerglotzData& u, Complex zeta);
Complex herglotz_deriv(const HerglotzData& u, Complex zeta);

/// What is known about a generator's Denjoy-Wolff point, used to derive existence windows.
struct Classification {
    enum class Kind {
        Unknown,
        BoundedDomain,      // generator on the disk
        PickType,           // on H with G(H) in H u R (Denjoy-Wolff point at infinity)
        FiniteDenjoyWolff,  // on H with a finite Denjoy-Wolff point
        StripInfinity,      // on the strip with Denjoy-Wolff prime end +infinity
    };
    Kind kind = Kind::Unknown;
    std::optional<double> angular_residue;  // b for PickType, when known exactly
    std::optional<Complex> denjoy_wolff;
};

/// An evaluable vector field on one canonical domain.
class Generator {
public:
    Generator(std::string name, DomainKind domain, ComplexFn value, ComplexFn derivative = {},
              Classification classification = {});

    const std::string& name() const { return name_; }
    DomainKind domain() const { return domain_; }
    const Classification& classification() const { return classification_; }
    bool has_analytic_derivative() const { return static_cast<bool>(derivative_); }

    /// G(z); throws DomainError when z is outside the domain.
    Complex operator()(Complex z) const;
    /// G'(z), analytic when available, else a 16-point Cauchy-integral stencil on a circle
    /// of radius min(1e-2, dist(z, boundary)/2).
    Complex derivative(Complex z) const;

    const ComplexFn& value_fn() const { return value_; }

private:
    std::string name_;
    DomainKind domain_;
    ComplexFn value_;
    ComplexFn derivative_;
    Classification classification_;
};

/// f'(z) from 16 samples of f on the circle |zeta - z| = radius.
Complex cauchy_stencil_derivative(const ComplexFn& f, Complex z, double radius);

enum class CatalogKind {
    Zero,
    DiskMinusZ,          // -z
    DiskHyperbolic,      // -z (1 + e^{ia} z)/(1 - e^{ia} z); a = 0 and a = pi give G1, G2
    DiskParabolic,       // (1 - z^2)/2, Denjoy-Wolff point 1
    HalfPlaneZ,          // z
    HalfPlaneQuadratic,  // (i/2)(z^2 + 1), Denjoy-Wolff point i
    HalfPlaneNegInvZ,    // -1/z
    StripConst,          // 1 on the strip
};

std::string_view to_string(CatalogKind kind);
CatalogKind catalog_from_string(std::string_view name);

// Tagged generator representations.
struct BerksonPorta {
    Complex tau;
    HerglotzData p;
};
struct HalfPlanePick {
    NevanlinnaTriple q;
};
struct HalfPlaneInterior {
    Complex sigma;
    NevanlinnaTriple q;
};
/// G(z) = e^{-z} q(z) with q(z) = 2 p(tanh(z/2)).
struct StripForm {
    HerglotzData p;
};
struct Catalog {
    CatalogKind kind = CatalogKind::Zero;
    double angle = 0.0;                      // DiskHyperbolic only
    DomainKind domain = DomainKind::Disk;    // Zero only
};
struct CustomGenerator {
    std::string name;
    DomainKind domain;
    ComplexFn value;
    ComplexFn derivative;
    Classification classification;
};

using GeneratorSpec = std::variant<BerksonPorta, HalfPlanePick, HalfPlaneInterior, StripForm, Catalog, CustomGenerator>;

Generator make_generator(const GeneratorSpec& spec);
Complex eval(const GeneratorSpec& spec, Complex z);
Complex eval_deriv(const GeneratorSpec& spec, Complex z);

namespace catalog {
Generator zero(DomainKind domain);
Generator disk_minus_z();
Generator disk_hyperbolic(double angle);
Generator disk_g1();  // -z (1 + z)/(1 - z)
Generator disk_g2();  // -z (1 - z)/(1 + z)
Generator disk_parabolic();
Generator halfplane_z();
Generator halfplane_quadratic();
Generator halfplane_neg_inv_z();
Generator strip_const();
}  // namespace catalog

/// Sum of c_k G_k on a common domain. The classification is kept only when it is
/// preserved by positive combinations (all on the disk, or all Pick-type).
Generator linear_combination(const std::vector<std::pair<double, Generator>>& terms, std::string name);

/// z |-> G(inner(z)); generator-hood is not asserted (classification Unknown).
Generator compose(const Generator& outer, ComplexFn inner, ComplexFn inner_derivative, std::string name);

/// The generator z |-> G(phi(z))/phi'(z) on phi.source(); G must live on phi.target().
Generator conjugate_generator(const Generator& g, const Biholomorphism& phi);

/// Result of a grid falsification test.
struct GeneratorTest {
    bool ok = true;
    Complex witness{};          // worst grid point when !ok
    double witness_value = 0.0; // Re[H/((tau - z)(1 - conj(tau) z))] at the witness
    std::size_t points = 0;
};

/// Polar grid on the disk: n angles 2 pi j/n times n radii r_max k/n, k = 1..n.
std::vector<Complex> disk_grid(std::size_t n, double r_max = 0.999);

/// Re[H(z)/((tau - z)(1 - conj(tau) z))] >= -tol on the polar grid (Berkson-Porta test).
GeneratorTest is_generator_disk(const ComplexFn& h, Complex tau, std::size_t grid_n = 64,
                                Execution exec = Execution::Serial, double tol = 1e-12);

/// b = lim G(iy)/(iy) from y = 2^k, k = 4..20, with Richardson elimination of the 1/y term.
double angular_residue_b(const ComplexFn& g);
/// Exact alpha when the classification records it, numeric estimate otherwise.
double angular_residue_b(const Generator& g);
inline double angular_residue_b(const NevanlinnaTriple& q) { return q.alpha; }

}  // namespace rlab
