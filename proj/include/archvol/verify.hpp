#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "archvol/generator.hpp"

namespace archvol::verify {

/// Knobs for the invariant suites. Defaults match the documented
/// verification grid; tests shrink them for speed.
struct Options {
    std::uint64_t seed = 0;
    std::size_t u_grid = 99;              // interior points k/(n+1)
    std::size_t boxes_per_config = 10000; // d-increasing sample
    std::size_t partitions_per_config = 20;
    std::uint64_t sequence_steps = 1000;
    std::uint64_t oracle_steps = 10000;
    std::size_t witness_samples = 200; // per config
    // Plants phi(1) = 0.01 into the generator checks; used to prove the
    // harness can fail.
    bool inject_phi_at_one_fault = false;
};

struct CheckResult {
    std::string name;
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::string first_counterexample;

    bool pass() const { return failures == 0; }
};

struct Report {
    std::vector<CheckResult> results;

    bool pass() const;
    std::size_t total_checks() const;
};

/// Family/theta grid used by default: clayton {-0.5, 0.5, 1, 2, 5},
/// gumbel {1, 1.5, 2, 5}, frank {-5, -1, 1, 5}, independence.
std::vector<Generator> default_generator_grid();

/// Run every module's invariant suite over the given generators.
Report run_all(const Options& opt,
               const std::vector<Generator>& generators);
Report run_all(const Options& opt);

/// One line per invariant: PASS/FAIL, check count, first counterexample.
void print_report(std::ostream& out, const Report& report);

} // namespace archvol::verify
