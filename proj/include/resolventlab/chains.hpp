#pragma once

#include <optional>
#include <span>
#include <vector>

#include "resolventlab/resolvents.hpp"

namespace rlab {

struct FieldSegment {
    double t_start;
    double t_end;
    Generator generator;
};

/// Piecewise-constant Herglotz vector field G(t, z) on [0, total_time()].
class HerglotzField {
public:
    explicit HerglotzField(std::vector<FieldSegment> segments);
    /// G(t, z) = g for all t in [0, t_end].
    static HerglotzField autonomous(Generator g, double t_end = std::numeric_limits<double>::infinity());

    DomainKind domain() const { return segments_.front().generator.domain(); }
    double total_time() const { return segments_.back().t_end; }
    const std::vector<FieldSegment>& segments() const { return segments_; }

    /// Segment generator active at t; breakpoints belong to the earlier segment.
    const Generator& at(double t) const;
    bool is_breakpoint(double t, double tol = 0.0) const;

private:
    std::vector<FieldSegment> segments_;
};

/// H_t(z) = int_0^t G(s, z) ds, exact for piecewise-constant fields.
Generator accumulate_field(const HerglotzField& field, double t);

/// K_t(w): time-1 resolvent of H_t.
ResolventSolution chain_map(const HerglotzField& field, double t, Complex w, const ResolventOptions& opts = {});

/// z in K_t(D), decided by phi_t(z) = z - H_t(z) in D.
bool image_membership(const HerglotzField& field, double t, Complex z);

struct DecreasingReport {
    bool ok = true;
    std::size_t checked = 0;
    std::optional<double> s;
    std::optional<double> t;
    std::optional<Complex> z;
};

/// For consecutive s < t in times: membership at t implies membership at s, for every point.
DecreasingReport decreasing_check(const HerglotzField& field, std::span<const double> times,
                                  std::span<const Complex> points, Execution exec = Execution::Serial);
DecreasingReport decreasing_check(const HerglotzField& field, std::span<const double> times, std::size_t sample_n,
                                  std::uint64_t seed = 0, Execution exec = Execution::Serial);

/// |(K_{t+h}(z) - K_{t-h}(z))/(2h) - K_t'(z) G(t, K_t(z))|.
double pde_residual(const HerglotzField& field, double t, Complex z, double h = 1e-4,
                    const ResolventOptions& opts = {});

/// p_t(z) = (z - J_t(z)) / (t (z - tau)(1 - conj(tau) z)) for a disk generator with
/// Berkson-Porta point tau; near tau the mean over 4 points at distance 1e-6 is returned.
Complex pt_transform(const Generator& g, Complex tau, double t, Complex z, const ResolventOptions& opts = {});

/// Grid points that stay in K_t(D) for every t in t_list.
std::vector<Complex> zero_set_limit(const Generator& g, std::span<const double> t_list, std::span<const Complex> grid,
                                    Execution exec = Execution::Serial);

}  // namespace rlab
