#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "archvol/generator.hpp"

namespace archvol {

/// Default iteration budget for traces and witness searches; the CLI can
/// override it through ARCHVOL_NMAX.
inline constexpr std::uint64_t kDefaultNMax = 1'000'000;

enum class StopReason {
    below_epsilon,        // f_n dropped below the requested epsilon
    fixed_point_interior, // exact interior fixed point: implementation bug
    max_iterations,
    idempotent,           // u in {0,1}: the sequence is constant
};

std::string_view stop_reason_name(StopReason r);

/// Record of a C-power run f_1(u) = u, f_{k+1}(u) = C(u, f_k(u)).
///
/// Long runs are summarized rather than stored: `checkpoints` holds
/// (n, f_n) for every power-of-two n plus the final 1000 steps, in
/// increasing n. checkpoints.front() is always (1, u).
struct CPowerTrace {
    double u = 0.0;
    std::vector<std::pair<std::uint64_t, double>> checkpoints;
    StopReason stop_reason = StopReason::max_iterations;
    double limit_estimate = 0.0;
    std::uint64_t steps = 0; // index n of the last computed f_n
};

/// Minimal N with f_N(u) < v, plus the bracketing values. f_prev is
/// f_{N-1}, defined as u itself when N = 1 (there is no earlier iterate;
/// minimality is vacuous in that case).
struct AxiomWitness {
    double u = 0.0;
    double v = 0.0;
    std::uint64_t N = 0;
    double f_prev = 0.0;
    double f_at = 0.0;
};

/// f_n(u) by direct recursion; f_n(0) = 0 and f_n(1) = 1 exactly.
double c_power(const Generator& g, double u, std::uint64_t n);

/// Iterate until f_n < epsilon, u is idempotent, or n_max is reached.
/// An exact interior fixed point (f_{n+1} == f_n with f_n in (0,1))
/// throws verification_error: the recursion must be strictly decreasing
/// on (0,1), so such a point indicates a generator implementation bug.
CPowerTrace cpower_trace(const Generator& g, double u, double epsilon,
                         std::uint64_t n_max = kDefaultNMax);

/// Minimal N with f_N(u) < v for u, v in (0,1). Throws idempotent_error
/// at u in {0,1} and exhaustion_error (carrying f_{n_max}) if the budget
/// runs out.
AxiomWitness axiom_witness(const Generator& g, double u, double v,
                           std::uint64_t n_max = kDefaultNMax);

/// True iff the trace for (u, epsilon) stops below epsilon within n_max:
/// the executable certificate that lim f_n(u) = 0.
bool limit_is_zero(const Generator& g, double u, double epsilon,
                   std::uint64_t n_max = kDefaultNMax);

} // namespace archvol
