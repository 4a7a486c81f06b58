#include "archvol/cpower.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <stdexcept>

#include "archvol/copula.hpp"
#include "archvol/errors.hpp"

namespace archvol {

namespace {

constexpr std::size_t kTraceTail = 1000;

// u this close to 1 is treated as the idempotent: within a few ulps of 1
// the first C-power step can round back onto u, which would otherwise
// masquerade as an interior fixed point.
constexpr double kOneThreshold = 1.0 - 1e-15;

bool is_idempotent(double u) { return u == 0.0 || u >= kOneThreshold; }

void require_unit(double x, const char* what) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error(std::string(what) + " must lie in [0,1]");
}

[[noreturn]] void throw_interior_fixed_point(const Generator& g, double u,
                                             std::uint64_t n, double f) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "interior fixed point f_%llu = %.17g of %s at u = %.17g: "
                  "C(u,t) < t must hold on (0,1)",
                  static_cast<unsigned long long>(n), f,
                  g.describe().c_str(), u);
    throw verification_error(buf);
}

} // namespace

std::string_view stop_reason_name(StopReason r) {
    switch (r) {
    case StopReason::below_epsilon: return "below_epsilon";
    case StopReason::fixed_point_interior: return "fixed_point_interior";
    case StopReason::max_iterations: return "max_iterations";
    case StopReason::idempotent: return "idempotent";
    }
    throw std::logic_error("unknown StopReason value");
}

double c_power(const Generator& g, double u, std::uint64_t n) {
    require_unit(u, "c_power argument");
    if (n < 1) throw std::invalid_argument("c_power requires n >= 1");
    double f = u;
    for (std::uint64_t k = 1; k < n; ++k) f = cdf_bivariate(g, u, f);
    return f;
}

CPowerTrace cpower_trace(const Generator& g, double u, double epsilon,
                         std::uint64_t n_max) {
    require_unit(u, "cpower_trace argument");
    if (!(epsilon > 0.0))
        throw std::invalid_argument("cpower_trace requires epsilon > 0");
    if (n_max < 1)
        throw std::invalid_argument("cpower_trace requires n_max >= 1");

    CPowerTrace trace;
    trace.u = u;

    if (is_idempotent(u)) {
        trace.checkpoints.emplace_back(1, u);
        trace.stop_reason = StopReason::idempotent;
        trace.limit_estimate = u;
        trace.steps = 1;
        return trace;
    }

    std::vector<std::pair<std::uint64_t, double>> pow2;
    std::deque<std::pair<std::uint64_t, double>> tail;
    std::uint64_t next_pow2 = 1;
    auto record = [&](std::uint64_t n, double f) {
        if (n == next_pow2) {
            pow2.emplace_back(n, f);
            next_pow2 *= 2;
        }
        tail.emplace_back(n, f);
        if (tail.size() > kTraceTail) tail.pop_front();
    };

    double f = u;
    std::uint64_t n = 1;
    record(n, f);
    StopReason reason = StopReason::max_iterations;
    if (f < epsilon) {
        reason = StopReason::below_epsilon;
    } else {
        while (n < n_max) {
            const double next = cdf_bivariate(g, u, f);
            if (next == f && f > 0.0 && f < 1.0)
                throw_interior_fixed_point(g, u, n, f);
            f = next;
            record(++n, f);
            if (f < epsilon) {
                reason = StopReason::below_epsilon;
                break;
            }
        }
    }

    // Merge power-of-two checkpoints with the tail window, dropping
    // duplicates; both lists are already sorted by n.
    auto& cps = trace.checkpoints;
    cps.reserve(pow2.size() + tail.size());
    std::size_t i = 0, j = 0;
    while (i < pow2.size() || j < tail.size()) {
        if (j == tail.size() || (i < pow2.size() && pow2[i].first < tail[j].first))
            cps.push_back(pow2[i++]);
        else {
            if (i < pow2.size() && pow2[i].first == tail[j].first) ++i;
            cps.push_back(tail[j++]);
        }
    }

    trace.stop_reason = reason;
    trace.limit_estimate = f;
    trace.steps = n;
    return trace;
}

AxiomWitness axiom_witness(const Generator& g, double u, double v,
                           std::uint64_t n_max) {
    require_unit(u, "axiom_witness u");
    if (is_idempotent(u))
        throw idempotent_error(
            "Archimedean axiom undefined at idempotents {0,1}");
    if (!(v > 0.0 && v < 1.0))
        throw std::domain_error("axiom_witness requires v in (0,1)");
    if (n_max < 1)
        throw std::invalid_argument("axiom_witness requires n_max >= 1");

    double prev = u; // f_{N-1}, taken as u for N = 1
    double f = u;
    std::uint64_t n = 1;
    while (true) {
        if (f < v) return {u, v, n, prev, f};
        if (n == n_max) {
            char buf[128];
            std::snprintf(buf, sizeof buf,
                          "axiom_witness: budget n_max = %llu exhausted, "
                          "f_nmax = %.17g >= v = %.17g",
                          static_cast<unsigned long long>(n_max), f, v);
            throw exhaustion_error(buf, f);
        }
        const double next = cdf_bivariate(g, u, f);
        if (next == f && f > 0.0 && f < 1.0)
            throw_interior_fixed_point(g, u, n, f);
        prev = f;
        f = next;
        ++n;
    }
}

bool limit_is_zero(const Generator& g, double u, double epsilon,
                   std::uint64_t n_max) {
    if (is_idempotent(u))
        throw idempotent_error(
            "limit certificate undefined at idempotents {0,1}");
    return cpower_trace(g, u, epsilon, n_max).stop_reason ==
           StopReason::below_epsilon;
}

} // namespace archvol
