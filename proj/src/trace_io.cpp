#include "conepc/trace_io.hpp"

#include <sstream>

#include "conepc/error.hpp"
#include "conepc/problem_io.hpp"

namespace conepc {

std::string write_trace_csv(const ConvergenceTrace& trace) {
  std::ostringstream out;
  out << kTraceHeader << "\n";
  for (const auto& r : trace.records) {
    out << r.k << ',' << format_real(r.mu) << ',' << format_real(r.alpha_bar) << ',' << format_real(r.alpha)
        << ',' << r.i_k << ',' << format_real(r.gamma_pre) << ',' << format_real(r.gamma_post) << ','
        << r.corrector_steps << ',' << format_real(r.dual_obj) << ',' << format_real(r.gap_bound) << "\n";
  }
  return out.str();
}

ConvergenceTrace parse_trace_csv(std::string_view text) {
  ConvergenceTrace trace;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header) {
      if (line != kTraceHeader) throw Error(ErrorKind::SyntaxError, "unexpected trace header", number);
      header = true;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    if (cells.size() != 10) throw Error(ErrorKind::DimensionMismatch, "expected 10 columns", number);
    IterateRecord r;
    try {
      std::size_t used = 0;
      auto real = [&](const std::string& s) {
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
      };
      auto integer = [&](const std::string& s) {
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
      };
      r.k = integer(cells[0]);
      r.mu = real(cells[1]);
      r.alpha_bar = real(cells[2]);
      r.alpha = real(cells[3]);
      r.i_k = integer(cells[4]);
      r.gamma_pre = real(cells[5]);
      r.gamma_post = real(cells[6]);
      r.corrector_steps = integer(cells[7]);
      r.dual_obj = real(cells[8]);
      r.gap_bound = real(cells[9]);
    } catch (const std::exception&) {
      throw Error(ErrorKind::SyntaxError, "malformed trace row", number);
    }
    trace.records.push_back(std::move(r));
  }
  if (!header) throw Error(ErrorKind::SyntaxError, "empty trace", number > 0 ? number : 1);
  return trace;
}

void write_trace_file(const ConvergenceTrace& trace, const std::string& path) {
  atomic_write(path, write_trace_csv(trace));
}

ConvergenceTrace read_trace_file(const std::string& path) { return parse_trace_csv(read_file(path)); }

std::string format_report(const std::vector<ReportLine>& lines) {
  std::ostringstream out;
  for (const auto& l : lines)
    out << l.name << " value=" << format_real(l.value) << " threshold=" << format_real(l.threshold)
        << " status=" << (l.pass ? "pass" : "fail") << "\n";
  return out.str();
}

}  // namespace conepc
