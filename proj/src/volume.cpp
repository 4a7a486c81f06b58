#include "archvol/volume.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "archvol/copula.hpp"
#include "archvol/cpower.hpp"
#include "archvol/errors.hpp"

namespace archvol {

namespace {

constexpr std::size_t kMaxVolumeDim = 20;

} // namespace

Box::Box(std::vector<double> lo, std::vector<double> hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.size() != upper.size())
        throw std::invalid_argument("box endpoints differ in dimension");
    if (lower.empty())
        throw std::invalid_argument("box requires dimension d >= 1");
    for (std::size_t k = 0; k < lower.size(); ++k) {
        if (!(lower[k] <= upper[k]))
            throw std::invalid_argument(
                "box requires lower_k <= upper_k on every axis");
    }
}

Partition2D::Partition2D(std::vector<double> u, std::vector<double> v)
    : u_cuts(std::move(u)), v_cuts(std::move(v)) {
    for (const auto* cuts : {&u_cuts, &v_cuts}) {
        if (cuts->size() < 2)
            throw std::invalid_argument("partition grid needs >= 2 cuts");
        if ((*cuts)[0] != 0.0)
            throw std::invalid_argument("partition grid must start at 0");
        for (std::size_t i = 1; i < cuts->size(); ++i)
            if (!((*cuts)[i] > (*cuts)[i - 1]))
                throw std::invalid_argument(
                    "partition cuts must be strictly increasing");
        if (!(cuts->back() <= 1.0))
            throw std::invalid_argument("partition grid must end within [0,1]");
    }
}

double h_volume(const HEvaluator& H, const Box& box) {
    const std::size_t d = box.dim();
    if (d > kMaxVolumeDim)
        throw std::invalid_argument(
            "h_volume dimension cap is 20 (2^d vertex evaluations)");
    for (std::size_t k = 0; k < d; ++k)
        if (box.lower[k] == box.upper[k]) return 0.0; // terms cancel in pairs

    std::vector<double> vertex(d);
    double sum = 0.0;
    const std::size_t n_vertices = std::size_t{1} << d;
    for (std::size_t mask = 0; mask < n_vertices; ++mask) {
        for (std::size_t k = 0; k < d; ++k)
            vertex[k] = (mask >> k) & 1u ? box.lower[k] : box.upper[k];
        const double value = H(vertex);
        // sign: +1 iff the vertex sits at the lower endpoint on an even
        // number of axes
        if (std::popcount(mask) % 2 == 0)
            sum += value;
        else
            sum -= value;
    }
    return sum;
}

double copula_volume(const Generator& g, const Box& box) {
    return h_volume(
        [&g](std::span<const double> x) { return cdf(g, x); }, box);
}

double partition_volume_sum(const Generator& g, const Partition2D& part) {
    const std::size_t m = part.cells_u();
    const std::size_t p = part.cells_v();

    // C at every grid node, computed once. Reusing the values lets the
    // interior corners cancel exactly in the telescoping cell sum.
    std::vector<double> grid((m + 1) * (p + 1));
    for (std::size_t k = 0; k <= m; ++k)
        for (std::size_t j = 0; j <= p; ++j)
            grid[k * (p + 1) + j] =
                cdf_bivariate(g, part.u_cuts[k], part.v_cuts[j]);

    // Kahan-compensated accumulation in fixed row-major cell order.
    double sum = 0.0, comp = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t j = 0; j < p; ++j) {
            const double cell = grid[(k + 1) * (p + 1) + (j + 1)] -
                                grid[k * (p + 1) + (j + 1)] -
                                grid[(k + 1) * (p + 1) + j] +
                                grid[k * (p + 1) + j];
            const double y = cell - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    }
    return sum;
}

std::vector<VolumeViolation> d_increasing_check(const HEvaluator& H,
                                                std::span<const Box> boxes,
                                                double tol) {
    std::vector<VolumeViolation> out;
    for (const Box& box : boxes) {
        const double v = h_volume(H, box);
        if (v < -tol) out.push_back({box, v});
    }
    return out;
}

std::vector<VolumeViolation> d_increasing_check(const Generator& g,
                                                std::span<const Box> boxes,
                                                double tol) {
    return d_increasing_check(
        [&g](std::span<const double> x) { return cdf(g, x); }, boxes, tol);
}

double recursive_volume(const Generator& g, double u, int n) {
    if (u == 0.0 || u == 1.0)
        throw idempotent_error(
            "recursive volume undefined at idempotents {0,1}");
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("recursive volume requires u in (0,1)");
    if (n < 1) throw std::invalid_argument("recursive volume requires n >= 1");
    const double fn = c_power(g, u, n);
    return copula_volume(g, Box({0.0, 0.0}, {u, fn}));
}

} // namespace archvol
