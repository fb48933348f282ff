#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "conepc/path_following.hpp"

namespace conepc {

inline constexpr std::string_view kTraceHeader =
    "k,mu,alpha_bar,alpha,i_k,gamma_pre,gamma_post,corrector_steps,dual_obj,gap_bound";

std::string write_trace_csv(const ConvergenceTrace& trace);
/// Restores the CSV columns only.
ConvergenceTrace parse_trace_csv(std::string_view text);

void write_trace_file(const ConvergenceTrace& trace, const std::string& path);
ConvergenceTrace read_trace_file(const std::string& path);

/// One metric of a diagnostics report.
struct ReportLine {
  std::string name;
  double value;
  double threshold;
  bool pass;
};

/// "name value=<v> threshold=<t> status=pass|fail" per line.
std::string format_report(const std::vector<ReportLine>& lines);

}  // namespace conepc
