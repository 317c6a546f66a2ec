#include "resolventlab/resolvents.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "resolventlab/errors.hpp"

namespace rlab {

namespace {

constexpr double kPi = std::numbers::pi;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::string format_double(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

enum class NewtonStatus { Converged, Failed, NonFinite };

struct NewtonResult {
    NewtonStatus status = NewtonStatus::Failed;
    Complex x;
    double residual = 0.0;
    int iters = 0;
};

NewtonResult damped_newton(const detail::Homotopy& h, double s, Complex x, const ResolventOptions& opts) {
    NewtonResult out;
    Complex f = h.residual(s, x);
    if (!finite(f)) {
        out.status = NewtonStatus::NonFinite;
        return out;
    }
    double r = std::abs(f);
    for (int it = 0; it <= opts.max_newton; ++it) {
        const double sc = h.scale(s, x);
        if (r <= opts.tol * sc) {
            out = {NewtonStatus::Converged, x, r, it};
            return out;
        }
        if (it == opts.max_newton) break;
        const Complex d = h.dx(s, x);
        if (!finite(d)) {
            out.status = NewtonStatus::NonFinite;
            return out;
        }
        if (d == Complex{}) break;
        const Complex delta = -f / d;

        double lambda = 1.0;
        bool moved = false;
        for (int k = 0; k < 40; ++k, lambda *= 0.5) {
            const Complex xt = x + lambda * delta;
            if (!contains(h.domain, xt)) continue;
            const Complex ft = h.residual(s, xt);
            if (!finite(ft)) {
                out.status = NewtonStatus::NonFinite;
                return out;
            }
            if (std::abs(ft) < r) {
                x = xt;
                f = ft;
                r = std::abs(ft);
                moved = true;
                break;
            }
        }
        if (!moved) {
            // No descent left: accept only if we are sitting on the rounding floor.
            if (r <= 1e3 * opts.tol * sc) out = {NewtonStatus::Converged, x, r, it};
            return out;
        }
        out.iters = it + 1;
    }
    return out;
}

double halton(std::size_t i, unsigned base) {
    double f = 1.0;
    double r = 0.0;
    while (i > 0) {
        f /= base;
        r += f * static_cast<double>(i % base);
        i /= base;
    }
    return r;
}

}  // namespace

namespace detail {

HomotopyResult track_root(const Homotopy& h, Complex x0, double t, double initial_step, const ResolventOptions& opts) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw ArgumentError("continuation time must be finite and >= 0");
    require_inside(h.domain, x0, "continuation start");

    HomotopyResult out;
    out.x = x0;
    out.s_path.push_back(0.0);
    if (t == 0.0) {
        out.residual = std::abs(h.residual(0.0, x0));
        return out;
    }

    double s = 0.0;
    Complex x = x0;
    double step = std::min(initial_step > 0.0 ? initial_step : 0.1, t);
    while (s < t) {
        double hstep = std::min(step, t - s);
        if (t - (s + hstep) <= 1e-14 * t) hstep = t - s;
        const double s1 = (hstep == t - s) ? t : s + hstep;

        Complex xp = x;
        const Complex fx = h.dx(s, x);
        const Complex fs = h.ds(s, x);
        if (finite(fx) && finite(fs) && fx != Complex{}) {
            const Complex cand = x - (s1 - s) * fs / fx;
            if (contains(h.domain, cand)) xp = cand;
        }

        const NewtonResult nr = damped_newton(h, s1, xp, opts);
        if (nr.status == NewtonStatus::NonFinite) {
            throw NumericalError("non-finite values during Newton iteration at t=" + format_double(s1));
        }
        const bool ok = nr.status == NewtonStatus::Converged && (!h.step_ok || h.step_ok(x, nr.x));
        out.newton_iters += nr.iters;
        if (ok) {
            s = s1;
            x = nr.x;
            out.residual = nr.residual;
            out.s_path.push_back(s);
            if (h.on_accept) h.on_accept(s, x);
            if (nr.iters <= 4) step = std::min(2.0 * hstep, std::max(t, 1.0));
            else step = hstep;
        } else {
            step = 0.5 * hstep;
            if (step < opts.min_step) {
                throw NoSolutionError("boundary collapse at t=" + format_double(s), s);
            }
        }
    }
    out.x = x;
    return out;
}

}  // namespace detail

ResolventSolution solve_resolvent(const Generator& g, double t, Complex w, const ResolventOptions& opts) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw ArgumentError("resolvent time must be finite and >= 0");
    require_inside(g.domain(), w, "resolvent input");

    const ComplexFn& G = g.value_fn();
    detail::Homotopy h;
    h.domain = g.domain();
    h.residual = [&](double s, Complex x) { return x - s * G(x) - w; };
    h.dx = [&](double s, Complex x) { return 1.0 - s * g.derivative(x); };
    h.ds = [&](double, Complex x) { return -G(x); };
    h.scale = [&](double, Complex x) { return std::max({1.0, std::abs(x), std::abs(w)}); };

    double step = opts.initial_step;
    if (!(step > 0.0)) {
        double t_max = std::numeric_limits<double>::infinity();
        try {
            t_max = existence_window(g).t_max;
        } catch (const Error&) {
        }
        step = std::min(0.1, t_max / 10.0);
    }

    const detail::HomotopyResult r = detail::track_root(h, w, t, step, opts);
    ResolventSolution sol;
    sol.value = r.x;
    sol.residual = std::abs(r.x - t * G(r.x) - w);
    sol.t_path = r.s_path;
    sol.newton_iters = r.newton_iters;
    const Complex d = 1.0 - t * g.derivative(r.x);
    sol.deriv = d == Complex{} ? Complex{std::nan(""), std::nan("")} : 1.0 / d;
    return sol;
}

Complex resolvent_derivative(const Generator& g, double t, Complex w, const ResolventOptions& opts) {
    const ResolventSolution sol = solve_resolvent(g, t, w, opts);
    const Complex d = 1.0 - t * g.derivative(sol.value);
    if (std::abs(d) < 1e-14) throw SingularityError("1 - t G'(J_t(w)) vanishes");
    return 1.0 / d;
}

std::string ExistenceWindow::describe() const {
    switch (reason) {
        case Reason::BoundedConvexAllT: return "bounded_convex_all_t";
        case Reason::FiniteDenjoyWolffAllT: return "finite_DW_all_t";
        case Reason::PickWindow: return "pick_window(" + format_double(parameter) + ")";
        case Reason::StripWindow: return "strip_window(" + format_double(parameter) + ")";
    }
    return "unknown";
}

ExistenceWindow existence_window(const Generator& g) {
    ExistenceWindow w;
    const auto kind = g.classification().kind;
    switch (g.domain()) {
        case DomainKind::Disk:
            w.reason = ExistenceWindow::Reason::BoundedConvexAllT;
            return w;
        case DomainKind::HalfPlane:
            if (kind == Classification::Kind::PickType) {
                const double b = angular_residue_b(g);
                w.reason = ExistenceWindow::Reason::PickWindow;
                w.parameter = b;
                if (b > 0.0) w.t_max = 1.0 / b;
                return w;
            }
            if (kind == Classification::Kind::FiniteDenjoyWolff) {
                w.reason = ExistenceWindow::Reason::FiniteDenjoyWolffAllT;
                return w;
            }
            break;
        case DomainKind::Strip:
            if (kind == Classification::Kind::StripInfinity) {
                double c = strip_inf_c(g.value_fn());
                if (c <= 1e-12) c = 0.0;
                w.reason = ExistenceWindow::Reason::StripWindow;
                w.parameter = c;
                if (c > 0.0) w.t_max = kHalfPi / c;
                return w;
            }
            break;
    }
    throw UnsupportedError("cannot classify generator '" + g.name() + "' for an existence window");
}

std::vector<Complex> sample_points(DomainKind domain, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double du = uni(rng);
    const double dv = uni(rng);
    std::vector<Complex> pts;
    pts.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
        double u = halton(i, 2) + du;
        double v = halton(i, 3) + dv;
        u -= std::floor(u);
        v -= std::floor(v);
        switch (domain) {
            case DomainKind::Disk:
                pts.push_back(std::polar(0.99 * std::sqrt(u), 2.0 * kPi * v));
                break;
            case DomainKind::HalfPlane:
                pts.push_back(cayley_inv(std::polar(0.95 * std::sqrt(u), 2.0 * kPi * v)));
                break;
            case DomainKind::Strip:
                pts.emplace_back(-5.0 + 10.0 * u, 0.98 * kPi * (v - 0.5));
                break;
        }
    }
    return pts;
}

SelfMapReport verify_self_map(const Generator& g, double t, std::size_t sample_n, std::uint64_t seed, Execution exec,
                              const ResolventOptions& opts) {
    const std::vector<Complex> pts = sample_points(g.domain(), sample_n, seed);
    std::vector<std::string> failure(pts.size());
    for_each_index(pts.size(), exec, [&](std::size_t i) {
        try {
            const ResolventSolution sol = solve_resolvent(g, t, pts[i], opts);
            if (!contains(g.domain(), sol.value)) failure[i] = "solution left the domain";
        } catch (const Error& e) {
            failure[i] = e.what();
        }
    });

    SelfMapReport rep;
    rep.checked = pts.size();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (failure[i].empty()) continue;
        if (!rep.witness) {
            rep.witness = pts[i];
            rep.message = failure[i];
        }
        ++rep.violations;
    }
    rep.ok = rep.violations == 0;
    return rep;
}

double strip_inf_c(const ComplexFn& g, double x_lo, double x_hi, std::size_t n) {
    if (!(x_hi > x_lo) || n < 3) throw ArgumentError("strip_inf_c needs x_lo < x_hi and n >= 3");
    auto f = [&](double x) { return std::abs(g(Complex{x, 0.0}).imag()); };
    const double dx = (x_hi - x_lo) / static_cast<double>(n - 1);
    std::size_t best = 0;
    double best_val = f(x_lo);
    for (std::size_t i = 1; i < n; ++i) {
        const double v = f(x_lo + dx * static_cast<double>(i));
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    double a = x_lo + dx * static_cast<double>(best > 0 ? best - 1 : 0);
    double b = x_lo + dx * static_cast<double>(std::min(best + 1, n - 1));
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 80; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return std::min({best_val, fc, fd});
}

int count_zeros_rect(const ComplexFn& f, const Rect& rect, std::size_t n_per_side) {
    if (!(rect.x_hi > rect.x_lo) || !(rect.y_hi > rect.y_lo)) throw ArgumentError("degenerate rectangle");
    if (n_per_side < 4) throw ArgumentError("count_zeros_rect needs at least 4 points per side");
    const Complex corners[5] = {{rect.x_lo, rect.y_lo}, {rect.x_hi, rect.y_lo}, {rect.x_hi, rect.y_hi},
                                {rect.x_lo, rect.y_hi}, {rect.x_lo, rect.y_lo}};

    auto value = [&](Complex z) {
        const Complex v = f(z);
        if (!finite(v) || std::abs(v) < 1e-8) {
            throw ContourError("function (nearly) vanishes on the contour near " + format_double(z.real()) + "+" +
                               format_double(z.imag()) + "i");
        }
        return v;
    };

    double total = 0.0;
    Complex prev = value(corners[0]);
    for (int side = 0; side < 4; ++side) {
        for (std::size_t k = 1; k <= n_per_side; ++k) {
            const double s = static_cast<double>(k) / static_cast<double>(n_per_side);
            const Complex cur = value(corners[side] + s * (corners[side + 1] - corners[side]));
            const double darg = std::arg(cur / prev);
            if (std::abs(darg) > kHalfPi) {
                throw ResolutionError("phase jump too large on the contour; increase n_per_side");
            }
            total += darg;
            prev = cur;
        }
    }
    const double winding = total / (2.0 * kPi);
    const double rounded = std::round(winding);
    if (std::abs(winding - rounded) > 0.1) throw ResolutionError("non-integer winding number");
    return static_cast<int>(rounded);
}

}  // namespace rlab
