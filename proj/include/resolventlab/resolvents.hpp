#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "resolventlab/generators.hpp"

namespace rlab {

struct ResolventOptions {
    double tol = 1e-12;           // residual bound, relative to max(1, |z|, |w|)
    double initial_step = 0.0;    // 0 picks min(0.1, t_max/10)
    double min_step = 1e-10;      // step collapse threshold
    int max_newton = 50;
};

struct ResolventSolution {
    Complex value;             // J_t(w)
    Complex deriv;             // J_t'(w) = 1/(1 - t G'(J_t(w)))
    double residual = 0.0;     // |value - t G(value) - w|
    std::vector<double> t_path;
    int newton_iters = 0;
};

/// J_t(w): the root of w = z - t G(z) reached by continuation from z = w at t = 0.
ResolventSolution solve_resolvent(const Generator& g, double t, Complex w, const ResolventOptions& opts = {});
Complex resolvent_derivative(const Generator& g, double t, Complex w, const ResolventOptions& opts = {});

struct ExistenceWindow {
    enum class Reason { BoundedConvexAllT, FiniteDenjoyWolffAllT, PickWindow, StripWindow };
    double t_max = std::numeric_limits<double>::infinity();
    Reason reason = Reason::BoundedConvexAllT;
    double parameter = 0.0;  // b for PickWindow, c for StripWindow

    bool contains(double t) const { return t >= 0.0 && t < t_max; }
    std::string describe() const;
};

ExistenceWindow existence_window(const Generator& g);

/// Quasi-random interior points: rotated Halton sequence mapped into the domain.
std::vector<Complex> sample_points(DomainKind domain, std::size_t n, std::uint64_t seed = 0);

struct SelfMapReport {
    bool ok = true;
    std::size_t checked = 0;
    std::size_t violations = 0;
    std::optional<Complex> witness;  // first violating input w
    std::string message;
};

SelfMapReport verify_self_map(const Generator& g, double t, std::size_t sample_n, std::uint64_t seed = 0,
                              Execution exec = Execution::Serial, const ResolventOptions& opts = {});

/// min |Im G(x)| over n grid points of [x_lo, x_hi], refined by golden section near the minimum.
double strip_inf_c(const ComplexFn& g, double x_lo = -10.0, double x_hi = 30.0, std::size_t n = 4001);

struct Rect {
    double x_lo, x_hi, y_lo, y_hi;
};

/// Winding number of f along the boundary of rect (counter-clockwise).
int count_zeros_rect(const ComplexFn& f, const Rect& rect, std::size_t n_per_side = 400);

namespace detail {

/// Root tracking for F(s, x) = 0 from x0 at s = 0 to s = t.
struct Homotopy {
    DomainKind domain;
    std::function<Complex(double, Complex)> residual;  // F
    std::function<Complex(double, Complex)> dx;        // dF/dx
    std::function<Complex(double, Complex)> ds;        // dF/ds
    std::function<double(double, Complex)> scale;      // residual scale, >= 1
    std::function<bool(Complex, Complex)> step_ok;     // optional extra acceptance test
    std::function<void(double, Complex)> on_accept;    // optional
};

struct HomotopyResult {
    Complex x;
    double residual = 0.0;
    std::vector<double> s_path;
    int newton_iters = 0;
};

HomotopyResult track_root(const Homotopy& h, Complex x0, double t, double initial_step, const ResolventOptions& opts);

}  // namespace detail

}  // namespace rlab
