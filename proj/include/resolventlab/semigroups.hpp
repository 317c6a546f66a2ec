#pragma once

#include <cstdint>
#include <vector>

#include "resolventlab/resolvents.hpp"

namespace rlab {

/// J_{t/n} applied n times to w.
Complex exp_formula(const Generator& g, double t, int n, Complex w, const ResolventOptions& opts = {});

struct FlowOptions {
    double rk_tol = 1e-10;          // local error per step, relative to max(1, |z|)
    double boundary_margin = 1e-12; // closer than this to the boundary ends the flow
    int max_steps = 1000000;
};

struct FlowSample {
    double s;
    Complex z;
};

/// Dormand-Prince 5(4) integration of dz/ds = G(z) from s = 0 to s = t (t may be negative).
/// Steps whose stages leave the domain are rejected.
Complex ode_flow(const Generator& g, double t, Complex w, const FlowOptions& opts = {});
/// Same integration, recording every accepted step.
std::vector<FlowSample> ode_trajectory(const Generator& g, double t, Complex w, const FlowOptions& opts = {});

/// F_t(w) for catalog generators with a known flow (zero, disk_minus_z, disk_parabolic,
/// halfplane_z, halfplane_neg_inv_z, strip_const); throws UnsupportedError otherwise.
Complex closed_form_flow(const Generator& g, double t, Complex w);

struct SemigroupApprox {
    enum class Method { ExpFormula, OdeFlow, ClosedForm };
    double t = 0.0;
    int n = 1;
    Method method = Method::OdeFlow;
    std::vector<std::pair<Complex, Complex>> values;  // (w, F_t(w))
};

SemigroupApprox approximate_semigroup(const Generator& g, double t, const std::vector<Complex>& points,
                                      SemigroupApprox::Method method, int n = 1,
                                      Execution exec = Execution::Serial);

/// max |F_{s+t}(w) - F_s(F_t(w))| over quasi-random samples, with F from ode_flow.
double semigroup_law_check(const Generator& g, double s, double t, std::size_t sample_n, double rk_tol = 1e-10,
                           std::uint64_t seed = 0, Execution exec = Execution::Serial);

}  // namespace rlab
