#pragma once

#include <string>
#include <string_view>

#include "conepc/dual_geometry.hpp"

namespace conepc {

/// Parses a CONEPROB 1 document. Errors carry the offending line number.
ConicProblem parse_problem(std::string_view text);
std::string write_problem(const ConicProblem& p);

ConicProblem read_problem_file(const std::string& path);
void write_problem_file(const ConicProblem& p, const std::string& path);

/// Write to a sibling temporary file, then rename over `path`.
void atomic_write(const std::string& path, std::string_view contents);
std::string read_file(const std::string& path);

/// Shortest decimal that round-trips: 17 significant digits.
std::string format_real(double x);

}  // namespace conepc
