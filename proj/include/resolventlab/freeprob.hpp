#pragma once

#include <span>
#include <variant>
#include <vector>

#include "resolventlab/resolvents.hpp"

namespace rlab {

/// Probability measure on the real line (mass 1 within 1e-12).
class RealMeasure {
public:
    explicit RealMeasure(FiniteMeasure m);
    const FiniteMeasure& measure() const { return m_; }

private:
    FiniteMeasure m_;
};

/// Probability measure on the unit circle.
class CircleMeasure {
public:
    explicit CircleMeasure(FiniteMeasure m);
    const FiniteMeasure& measure() const { return m_; }
    Complex mean() const;
    bool mean_nonzero() const { return std::abs(mean()) > 1e-12; }

private:
    FiniteMeasure m_;
};

/// phi(z) = a + int (1 + z x)/(z - x) rho(dx).
struct FIDTriple {
    double a = 0.0;
    FiniteMeasure rho;
};

/// u(z) = -i alpha + int (1 + z x)/(1 - z x) rho(dx); Sigma_{mu_t} = exp(t u).
using MultSemigroupData = HerglotzData;

Complex cauchy_transform(const RealMeasure& mu, Complex z);
Complex cauchy_transform_deriv(const RealMeasure& mu, Complex z);
Complex f_transform(const RealMeasure& mu, Complex z);

/// {|Re z| < gamma Im z, |z| > delta}
struct Wedge {
    double gamma = 1.0;
    double delta = 10.0;
    bool contains(Complex z) const { return z.imag() > 0.0 && std::abs(z.real()) < gamma * z.imag() && std::abs(z) > delta; }
};

/// phi(z) = F^{-1}(z) - z, with F^{-1} by Newton iteration seeded at z.
Complex voiculescu_transform(const ComplexFn& f, const ComplexFn& df, Complex z, const Wedge& wedge = {});
Complex voiculescu_transform(const RealMeasure& mu, Complex z, const Wedge& wedge = {});
Complex voiculescu_phi(const FIDTriple& triple, Complex z);

/// G = -phi as a Pick generator on H (angular residue 0).
Generator free_generator(const FIDTriple& triple);
/// F_{mu_t}(w) = J_t(w) for G = -phi.
Complex free_semigroup_f(const FIDTriple& triple, double t, Complex w, const ResolventOptions& opts = {});

using FreeLaw = std::variant<RealMeasure, FIDTriple>;
Complex voiculescu(const FreeLaw& law, Complex z, const Wedge& wedge = {});
Complex free_convolve_phi(const FreeLaw& mu, const FreeLaw& nu, Complex z, const Wedge& wedge = {});

struct DensitySample {
    double x = 0.0;
    double density = 0.0;
    bool warning = false;  // -Im G(x + i eps) not monotone along the eps ladder
};

/// -Im G(x + i eps)/pi for eps in {1e-1, 1e-2, 1e-3}, Richardson-extrapolated to eps = 0.
DensitySample stieltjes_invert(const ComplexFn& cauchy, double x);
std::vector<DensitySample> stieltjes_invert(const ComplexFn& cauchy, std::span<const double> xs,
                                            Execution exec = Execution::Serial);

/// F_{mu |> nu} = F_mu o F_nu.
Complex monotone_convolve_f(const RealMeasure& mu, const RealMeasure& nu, Complex z);

struct MultTransforms {
    Complex psi;
    Complex eta;
};
MultTransforms mult_transforms(const CircleMeasure& mu, Complex z);

/// exp(t u(z)).
Complex sigma_transform(const MultSemigroupData& data, double t, Complex z);

/// eta_t(z): the solution of eta exp(t u(eta)) = z continued from eta = z at t = 0.
Complex eta_t(const MultSemigroupData& data, double t, Complex z, const ResolventOptions& opts = {});

/// G(z) = i u(e^{iz}) on H.
Generator mult_generator(const MultSemigroupData& data);

/// J_t(z) = -i log eta_t(e^{iz}), the logarithm continued in t from J_0 = id.
/// The result is checked against z = J - t G(J) for G = mult_generator(data).
Complex mult_chain_J(const MultSemigroupData& data, double t, Complex z, const ResolventOptions& opts = {});

}  // namespace rlab
