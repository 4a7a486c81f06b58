#include "archvol/copula.hpp"

#include <cmath>
#include <stdexcept>

namespace archvol {

namespace {

void require_unit_coord(double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error("copula coordinate must lie in [0,1]");
}

} // namespace

double cdf(const Generator& g, std::span<const double> u) {
    if (u.size() < 2)
        throw std::invalid_argument("copula requires dimension d >= 2");
    for (double x : u) require_unit_coord(x);
    for (double x : u)
        if (x == 0.0) return 0.0; // grounded

    // phi(1) = 0: coordinates at 1 drop out of the sum, and the copula
    // reduces to the lower-dimensional one over the rest. With a single
    // remaining coordinate that is the identity.
    double sum = 0.0;
    double last = 1.0;
    std::size_t active = 0;
    for (double x : u) {
        if (x == 1.0) continue;
        ++active;
        last = x;
        sum += g.phi(x);
        if (std::isinf(sum)) return 0.0; // saturated: pseudo-inverse is 0
    }
    if (active == 0) return 1.0;
    if (active == 1) return last;
    return g.pseudo_inverse(sum);
}

double cdf_bivariate(const Generator& g, double u, double v) {
    require_unit_coord(u);
    require_unit_coord(v);
    if (u == 0.0 || v == 0.0) return 0.0;
    if (u == 1.0) return v;
    if (v == 1.0) return u;
    const double sum = g.phi(u) + g.phi(v);
    if (std::isinf(sum)) return 0.0;
    return g.pseudo_inverse(sum);
}

} // namespace archvol
