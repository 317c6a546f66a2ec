#include "resolventlab/chains.hpp"

#include <algorithm>
#include <cmath>

#include "resolventlab/errors.hpp"

namespace rlab {

HerglotzField::HerglotzField(std::vector<FieldSegment> segments) : segments_(std::move(segments)) {
    if (segments_.empty()) throw ArgumentError("a field needs at least one segment");
    if (segments_.front().t_start != 0.0) throw ArgumentError("field segments must start at t = 0");
    const DomainKind d = segments_.front().generator.domain();
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const FieldSegment& s = segments_[i];
        if (!(s.t_end > s.t_start)) throw ArgumentError("field segments need t_start < t_end");
        if (i > 0 && s.t_start != segments_[i - 1].t_end) throw ArgumentError("field segments must be contiguous");
        if (s.generator.domain() != d) throw ArgumentError("field segments must share a domain");
    }
}

HerglotzField HerglotzField::autonomous(Generator g, double t_end) {
    return HerglotzField({FieldSegment{0.0, t_end, std::move(g)}});
}

const Generator& HerglotzField::at(double t) const {
    if (!(t >= 0.0) || t > total_time()) throw ArgumentError("time outside the field's range");
    for (const FieldSegment& s : segments_) {
        if (t <= s.t_end) return s.generator;
    }
    return segments_.back().generator;
}

bool HerglotzField::is_breakpoint(double t, double tol) const {
    for (std::size_t i = 0; i + 1 < segments_.size(); ++i) {
        if (std::abs(t - segments_[i].t_end) <= tol) return true;
    }
    return false;
}

Generator accumulate_field(const HerglotzField& field, double t) {
    if (!(t >= 0.0) || t > field.total_time()) throw ArgumentError("time outside the field's range");
    if (t == 0.0) return catalog::zero(field.domain());
    std::vector<std::pair<double, Generator>> terms;
    for (const FieldSegment& s : field.segments()) {
        const double overlap = std::min(t, s.t_end) - s.t_start;
        if (overlap > 0.0) terms.emplace_back(overlap, s.generator);
    }
    if (terms.size() == 1) {
        const auto& [c, g] = terms.front();
        if (c == 1.0) return g;
    }
    return linear_combination(terms, "H_t");
}

ResolventSolution chain_map(const HerglotzField& field, double t, Complex w, const ResolventOptions& opts) {
    require_inside(field.domain(), w, "chain_map input");
    if (t == 0.0) {
        ResolventSolution sol;
        sol.value = w;
        sol.deriv = 1.0;
        sol.t_path = {0.0};
        return sol;
    }
    return solve_resolvent(accumulate_field(field, t), 1.0, w, opts);
}

bool image_membership(const HerglotzField& field, double t, Complex z) {
    if (!contains(field.domain(), z)) return false;
    if (t == 0.0) return true;
    const Generator h = accumulate_field(field, t);
    const Complex phi = z - h.value_fn()(z);
    return contains(field.domain(), phi);
}

DecreasingReport decreasing_check(const HerglotzField& field, std::span<const double> times,
                                  std::span<const Complex> points, Execution exec) {
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) throw ArgumentError("time grid must be increasing");
    }
    const std::size_t nt = times.size();
    std::vector<unsigned char> member(nt * points.size());
    for_each_index(points.size(), exec, [&](std::size_t j) {
        for (std::size_t i = 0; i < nt; ++i) member[j * nt + i] = image_membership(field, times[i], points[j]);
    });

    DecreasingReport rep;
    rep.checked = points.size();
    for (std::size_t i = 1; i < nt && rep.ok; ++i) {
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (member[j * nt + i] && !member[j * nt + i - 1]) {
                rep.ok = false;
                rep.s = times[i - 1];
                rep.t = times[i];
                rep.z = points[j];
                break;
            }
        }
    }
    return rep;
}

DecreasingReport decreasing_check(const HerglotzField& field, std::span<const double> times, std::size_t sample_n,
                                  std::uint64_t seed, Execution exec) {
    const std::vector<Complex> pts = sample_points(field.domain(), sample_n, seed);
    return decreasing_check(field, times, std::span<const Complex>(pts), exec);
}

double pde_residual(const HerglotzField& field, double t, Complex z, double h, const ResolventOptions& opts) {
    if (!(h > 0.0)) throw ArgumentError("pde_residual needs h > 0");
    if (t - h < 0.0 || t + h > field.total_time()) throw ArgumentError("t +- h must stay inside the field's range");
    for (std::size_t i = 0; i + 1 < field.segments().size(); ++i) {
        const double b = field.segments()[i].t_end;
        if (t - h <= b && b <= t + h) {
            throw ArgumentError("time derivative undefined: a segment breakpoint lies within h of t");
        }
    }
    const ResolventSolution k = chain_map(field, t, z, opts);
    const Complex kp = chain_map(field, t + h, z, opts).value;
    const Complex km = chain_map(field, t - h, z, opts).value;
    const Complex lhs = (kp - km) / (2.0 * h);
    const Complex rhs = k.deriv * field.at(t)(k.value);
    return std::abs(lhs - rhs);
}

Complex pt_transform(const Generator& g, Complex tau, double t, Complex z, const ResolventOptions& opts) {
    if (g.domain() != DomainKind::Disk) throw ArgumentError("pt_transform is defined for disk generators");
    if (!(t > 0.0)) throw ArgumentError("pt_transform needs t > 0");
    require_inside(DomainKind::Disk, z, "pt_transform input");
    auto direct = [&](Complex x) {
        const Complex j = solve_resolvent(g, t, x, opts).value;
        return (x - j) / (t * (x - tau) * (1.0 - std::conj(tau) * x));
    };
    if (std::abs(z - tau) >= 1e-9) return direct(z);
    Complex acc{};
    const Complex offsets[4] = {{1e-6, 0.0}, {0.0, 1e-6}, {-1e-6, 0.0}, {0.0, -1e-6}};
    for (const Complex& o : offsets) acc += direct(z + o);
    return 0.25 * acc;
}

std::vector<Complex> zero_set_limit(const Generator& g, std::span<const double> t_list, std::span<const Complex> grid,
                                    Execution exec) {
    const HerglotzField field = HerglotzField::autonomous(g);
    std::vector<unsigned char> keep(grid.size(), 1);
    for_each_index(grid.size(), exec, [&](std::size_t j) {
        for (double t : t_list) {
            if (!image_membership(field, t, grid[j])) {
                keep[j] = 0;
                return;
            }
        }
    });
    std::vector<Complex> out;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        if (keep[j]) out.push_back(grid[j]);
    }
    return out;
}

}  // namespace rlab
