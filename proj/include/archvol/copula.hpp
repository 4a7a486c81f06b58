#pragma once

#include <span>

#include "archvol/generator.hpp"

namespace archvol {

/// Archimedean copula C(u) = pseudo_inverse(sum_j phi(u_j)).
///
/// Requires d >= 2 and every coordinate in [0,1]; the phi-sum is
/// accumulated left to right so results are bit-reproducible. Coordinates
/// equal to 1 contribute phi(1) = 0 and are dropped, which keeps the
/// margin identities C(u,1) = u and C(1,...,1) = 1 exact; any coordinate
/// equal to 0 grounds the value to 0 exactly.
double cdf(const Generator& g, std::span<const double> u);

/// Bivariate C(u,v), the hot path of the C-power iteration. Identical to
/// cdf(g, {u, v}) without the span plumbing.
double cdf_bivariate(const Generator& g, double u, double v);

} // namespace archvol
