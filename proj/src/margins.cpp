#include "archvol/margins.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>

#include "archvol/copula.hpp"
#include "archvol/errors.hpp"

namespace archvol {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCellTol = 1e-12;
constexpr std::size_t kMaxCells = 10'000'000;
constexpr std::size_t kMaxDim = 20;
constexpr std::size_t kMaxCounterexamples = 8;

double kahan_sum(std::span<const double> xs) {
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

std::vector<std::size_t> row_major_strides(std::span<const std::size_t> shape) {
    std::vector<std::size_t> strides(shape.size());
    std::size_t s = 1;
    for (std::size_t k = shape.size(); k-- > 0;) {
        strides[k] = s;
        s *= shape[k];
    }
    return strides;
}

/// Step evaluator for the d.f. induced by a cell table: H(x) is the sum
/// of all cell masses whose support point is <= x coordinate-wise.
class GridCdf {
public:
    explicit GridCdf(const JointGrid& grid) : grid_(grid), cum_(grid.cells) {
        strides_ = row_major_strides(grid.shape);
        // in-place prefix sums along each axis
        for (std::size_t axis = 0; axis < grid.shape.size(); ++axis) {
            const std::size_t stride = strides_[axis];
            const std::size_t extent = grid.shape[axis];
            for (std::size_t i = 0; i < cum_.size(); ++i) {
                const std::size_t coord = (i / stride) % extent;
                if (coord > 0) cum_[i] += cum_[i - stride];
            }
        }
    }

    double operator()(std::span<const double> x) const {
        std::size_t offset = 0;
        for (std::size_t k = 0; k < x.size(); ++k) {
            const auto jumps = grid_.margins[k].jump_points();
            auto it = std::upper_bound(jumps.begin(), jumps.end(), x[k]);
            if (it == jumps.begin()) return 0.0; // below the support
            std::size_t idx = static_cast<std::size_t>(it - jumps.begin()) - 1;
            offset += idx * strides_[k];
        }
        return cum_[offset];
    }

private:
    const JointGrid& grid_;
    std::vector<double> cum_;
    std::vector<std::size_t> strides_;
};

/// Smallest gap between consecutive jump points (inf for a single atom).
double min_gap(const StepDistribution& f) {
    const auto xs = f.jump_points();
    double gap = kInf;
    for (std::size_t i = 1; i < xs.size(); ++i)
        gap = std::min(gap, xs[i] - xs[i - 1]);
    return gap;
}

} // namespace

StepDistribution::StepDistribution(std::vector<double> jump_points,
                                   std::vector<double> cdf_values)
    : jumps_(std::move(jump_points)), values_(std::move(cdf_values)) {
    if (jumps_.empty())
        throw std::invalid_argument("step distribution needs >= 1 jump");
    if (jumps_.size() != values_.size())
        throw std::invalid_argument(
            "step distribution: jump and cdf lists differ in length");
    for (std::size_t i = 0; i < jumps_.size(); ++i) {
        if (!std::isfinite(jumps_[i]))
            throw std::invalid_argument("jump points must be finite");
        if (i > 0 && !(jumps_[i] > jumps_[i - 1]))
            throw std::invalid_argument(
                "jump points must be strictly increasing");
        if (!(values_[i] > 0.0 && values_[i] <= 1.0))
            throw std::invalid_argument("cdf values must lie in (0,1]");
        if (i > 0 && !(values_[i] >= values_[i - 1]))
            throw std::invalid_argument("cdf values must be non-decreasing");
    }
    if (values_.back() != 1.0)
        throw std::invalid_argument("last cdf value must equal 1");
}

double StepDistribution::cdf(double x) const {
    if (std::isnan(x))
        throw std::domain_error("step distribution evaluated at NaN");
    auto it = std::upper_bound(jumps_.begin(), jumps_.end(), x);
    if (it == jumps_.begin()) return 0.0;
    return values_[static_cast<std::size_t>(it - jumps_.begin()) - 1];
}

double StepDistribution::mass(std::size_t i) const {
    if (i >= jumps_.size())
        throw std::out_of_range("atom index out of range");
    return i == 0 ? values_[0] : values_[i] - values_[i - 1];
}

double joint_cdf(const Generator& g,
                 std::span<const StepDistribution> margins,
                 std::span<const double> x) {
    if (margins.size() != x.size())
        throw std::invalid_argument(
            "joint_cdf: point dimension does not match margin count");
    std::vector<double> u(x.size());
    for (std::size_t k = 0; k < x.size(); ++k)
        u[k] = margins[k].cdf(x[k]);
    return cdf(g, u);
}

double JointGrid::cell(std::span<const std::size_t> index) const {
    if (index.size() != shape.size())
        throw std::invalid_argument("cell index dimension mismatch");
    const auto strides = row_major_strides(shape);
    std::size_t offset = 0;
    for (std::size_t k = 0; k < index.size(); ++k) {
        if (index[k] >= shape[k])
            throw std::out_of_range("cell index out of range");
        offset += index[k] * strides[k];
    }
    return cells[offset];
}

double JointGrid::total_mass() const { return kahan_sum(cells); }

double JointGrid::min_cell() const {
    return *std::min_element(cells.begin(), cells.end());
}

JointGrid pmf_table(const Generator& g,
                    std::vector<StepDistribution> margins) {
    const std::size_t d = margins.size();
    if (d < 2)
        throw std::invalid_argument("pmf_table requires >= 2 margins");
    if (d > kMaxDim)
        throw std::invalid_argument("pmf_table dimension cap is 20");

    std::vector<std::size_t> shape(d);
    std::size_t n_cells = 1;
    for (std::size_t k = 0; k < d; ++k) {
        shape[k] = margins[k].jump_count();
        if (shape[k] > kMaxCells / n_cells)
            throw std::invalid_argument(
                "pmf_table capacity exceeded: more than 10^7 cells");
        n_cells *= shape[k];
    }

    // Half-open bracketing: lower endpoint x_i - delta with delta half
    // the smallest gap (so no other atom intrudes), -inf below the first
    // jump. V_H of that box is exactly the joint mass at the atoms.
    std::vector<double> half_gap(d);
    for (std::size_t k = 0; k < d; ++k) {
        const double gap = min_gap(margins[k]);
        half_gap[k] = std::isinf(gap) ? 1.0 : 0.5 * gap;
    }

    JointGrid grid{g, std::move(margins), std::move(shape), {}, 0};
    grid.cells.resize(n_cells);

    const HEvaluator H = [&grid](std::span<const double> x) {
        return joint_cdf(grid.generator, grid.margins, x);
    };

    std::vector<std::size_t> index(d, 0);
    std::vector<double> lo(d), hi(d);
    for (std::size_t flat = 0; flat < n_cells; ++flat) {
        for (std::size_t k = 0; k < d; ++k) {
            const auto xs = grid.margins[k].jump_points();
            hi[k] = xs[index[k]];
            lo[k] = index[k] == 0 ? -kInf : xs[index[k]] - half_gap[k];
        }
        double mass = h_volume(H, Box(lo, hi));
        if (mass < -kCellTol) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "pmf_table: cell %zu has mass %.17g < -1e-12; "
                          "composed H is not a valid d.f.",
                          flat, mass);
            throw verification_error(buf);
        }
        if (mass < 0.0) {
            // floating-point noise in [-1e-12, 0)
            std::fprintf(stderr,
                         "pmf_table: clamping cell %zu mass %.3g to 0\n",
                         flat, mass);
            mass = 0.0;
            ++grid.clamped_cells;
        }
        grid.cells[flat] = mass;

        // next multi-index, row-major
        for (std::size_t k = d; k-- > 0;) {
            if (++index[k] < grid.shape[k]) break;
            index[k] = 0;
        }
    }

    const double total = grid.total_mass();
    if (std::fabs(total - 1.0) > kCellTol) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "pmf_table: total mass %.17g differs from 1 by more "
                      "than 1e-12",
                      total);
        throw verification_error(buf);
    }
    return grid;
}

CertReport certify_df_axioms(const JointGrid& grid, std::size_t sample_boxes,
                             std::uint64_t seed) {
    CertReport report;
    const std::size_t d = grid.shape.size();
    const GridCdf H(grid);
    const HEvaluator Heval = [&H](std::span<const double> x) { return H(x); };

    // (a) groundedness: -inf in any single coordinate, the rest at +inf.
    report.grounded_ok = true;
    std::vector<double> corner(d, kInf);
    for (std::size_t j = 0; j < d && report.grounded_ok; ++j) {
        corner[j] = -kInf;
        const double value = H(corner);
        if (value != 0.0) {
            report.grounded_ok = false;
            char buf[128];
            std::snprintf(buf, sizeof buf,
                          "groundedness: H = %.17g != 0 with coordinate %zu "
                          "at -inf",
                          value, j);
            report.detail = buf;
        }
        corner[j] = kInf;
    }

    // (b) right-continuity at every jump along each axis; other
    // coordinates run over the atom grid (seeded sample when too many).
    report.right_continuous_ok = true;
    std::mt19937_64 rng(seed);
    std::size_t combos = 1;
    bool exhaustive = true;
    for (std::size_t k = 0; k < d; ++k) {
        if (grid.shape[k] > 10'000 / std::max<std::size_t>(combos, 1)) {
            exhaustive = false;
            break;
        }
        combos *= grid.shape[k];
    }
    const std::size_t n_contexts = exhaustive ? combos : 128;
    std::vector<double> point(d);
    for (std::size_t j = 0; j < d && report.right_continuous_ok; ++j) {
        const auto jumps = grid.margins[j].jump_points();
        for (std::size_t i = 0; i < jumps.size(); ++i) {
            double offset = std::ldexp(1.0, -40);
            if (i + 1 < jumps.size())
                offset = std::min(offset, 0.5 * (jumps[i + 1] - jumps[i]));
            for (std::size_t c = 0; c < n_contexts; ++c) {
                // context: other coordinates picked from their atoms
                std::size_t rest = c;
                for (std::size_t k = 0; k < d; ++k) {
                    if (k == j) continue;
                    std::size_t idx;
                    if (exhaustive) {
                        idx = rest % grid.shape[k];
                        rest /= grid.shape[k];
                    } else {
                        idx = rng() % grid.shape[k];
                    }
                    point[k] = grid.margins[k].jump_points()[idx];
                }
                point[j] = jumps[i];
                const double at = H(point);
                point[j] = jumps[i] + offset;
                const double right = H(point);
                if (right != at) {
                    report.right_continuous_ok = false;
                    char buf[160];
                    std::snprintf(buf, sizeof buf,
                                  "right-continuity: H jumps from %.17g to "
                                  "%.17g just past x = %.17g on axis %zu",
                                  at, right, jumps[i], j);
                    if (report.detail.empty()) report.detail = buf;
                    break;
                }
            }
            if (!report.right_continuous_ok) break;
        }
    }

    // (c) V_H >= -1e-12 on sampled boxes, alternating jump-aligned
    // corners (atoms or -inf) with arbitrary real corners.
    std::vector<double> low(d), high(d);
    for (std::size_t b = 0; b < sample_boxes; ++b) {
        const bool aligned = b % 2 == 0;
        for (std::size_t k = 0; k < d; ++k) {
            const auto jumps = grid.margins[k].jump_points();
            double a, c;
            if (aligned) {
                // index 0 stands for -inf, i >= 1 for the (i-1)-th atom
                const std::size_t r = jumps.size();
                std::size_t ia = rng() % (r + 1);
                std::size_t ic = rng() % (r + 1);
                if (ia > ic) std::swap(ia, ic);
                a = ia == 0 ? -kInf : jumps[ia - 1];
                c = ic == 0 ? -kInf : jumps[ic - 1];
            } else {
                const double span = jumps.back() - jumps.front();
                const double pad = span > 0.0 ? 0.25 * span : 1.0;
                std::uniform_real_distribution<double> dist(
                    jumps.front() - pad, jumps.back() + pad);
                a = dist(rng);
                c = dist(rng);
                if (a > c) std::swap(a, c);
            }
            low[k] = a;
            high[k] = c;
        }
        const Box box(low, high);
        const double v = h_volume(Heval, box);
        ++report.boxes_checked;
        if (v < -kCellTol) {
            ++report.box_violations;
            if (report.counterexamples.size() < kMaxCounterexamples)
                report.counterexamples.push_back({box, v});
            if (report.detail.empty()) {
                char buf[96];
                std::snprintf(buf, sizeof buf,
                              "negative box volume %.17g found", v);
                report.detail = buf;
            }
        }
    }
    return report;
}

} // namespace archvol
