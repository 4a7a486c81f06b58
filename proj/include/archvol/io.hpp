#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "archvol/cpower.hpp"
#include "archvol/generator.hpp"
#include "archvol/margins.hpp"
#include "archvol/volume.hpp"

namespace archvol {

/// Double formatted with 17 significant digits (round-trips exactly).
std::string num17(double x);

/// Parse {"family": "clayton", "theta": 1.0} (theta omitted for
/// independence). Rejects unknown families and out-of-range theta with a
/// diagnostic naming the admissible range.
Generator generator_from_json(std::string_view text);

/// Parse a box from a JSON array [[lower...], [upper...]].
Box box_from_json(std::string_view text);

/// Parse a list of boxes from a JSON array of [[lower...], [upper...]].
std::vector<Box> boxes_from_json(std::string_view text);

/// Parse a strictly increasing cut grid from a JSON array [0, ..., u].
std::vector<double> cuts_from_json(std::string_view text);

/// Parse a point from a JSON array [u_1, ..., u_d].
std::vector<double> point_from_json(std::string_view text);

/// StepDistribution from JSON {"jumps": [[x, F], ...]}.
StepDistribution step_from_json(std::string_view text);

/// StepDistribution from CSV with columns (x, F); a leading "x,F" header
/// line is allowed. Blank lines are ignored.
StepDistribution step_from_csv(std::istream& in);

/// Load a margin file, dispatching on extension (.json vs anything else
/// treated as CSV).
StepDistribution step_from_file(const std::string& path);

std::string witness_to_json(const AxiomWitness& w);
std::string witness_to_csv(const AxiomWitness& w);
std::string trace_to_json(const CPowerTrace& t);
std::string trace_to_csv(const CPowerTrace& t);
std::string violation_to_json(const VolumeViolation& v);

/// One CSV row per cell: indices, support point per axis, probability.
void write_pmf_csv(std::ostream& out, const JointGrid& grid);

/// {"total_mass": ..., "min_cell": ..., "certified": ...}
std::string pmf_summary_json(const JointGrid& grid, const CertReport& report);

} // namespace archvol
