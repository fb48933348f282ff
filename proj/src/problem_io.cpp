#include "conepc/problem_io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <unistd.h>

#include "conepc/error.hpp"

namespace conepc {

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void atomic_write(const std::string& path, std::string_view contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(static_cast<unsigned long>(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(pos, end - pos);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream ss{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; ss >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

class Reader {
 public:
  explicit Reader(std::vector<Line> lines) : lines_(std::move(lines)) {}

  bool done() const { return i_ >= lines_.size(); }
  const Line& peek() const {
    if (done()) throw Error(ErrorKind::SyntaxError, "unexpected end of file", last_line());
    return lines_[i_];
  }
  const Line& next() {
    const Line& l = peek();
    ++i_;
    return l;
  }
  int last_line() const { return lines_.empty() ? 1 : lines_.back().number; }

 private:
  std::vector<Line> lines_;
  std::size_t i_ = 0;
};

double to_real(const std::string& tok, int line) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw Error(ErrorKind::SyntaxError, "not a number: '" + tok + "'", line);
  return v;
}

int to_count(const std::string& tok, int line) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || v <= 0)
    throw Error(ErrorKind::SyntaxError, "expected a positive integer: '" + tok + "'", line);
  return v;
}

void expect_keyword(const Line& l, const std::string& kw) {
  if (l.tokens[0] != kw) throw Error(ErrorKind::SyntaxError, "expected '" + kw + "', found '" + l.tokens[0] + "'", l.number);
}

Vector read_values(const Line& l, std::size_t skip, Eigen::Index expected) {
  const Eigen::Index count = static_cast<Eigen::Index>(l.tokens.size() - skip);
  if (count != expected)
    throw Error(ErrorKind::DimensionMismatch,
                "expected " + std::to_string(expected) + " values, found " + std::to_string(count), l.number);
  Vector v(count);
  for (Eigen::Index i = 0; i < count; ++i) v(i) = to_real(l.tokens[skip + static_cast<std::size_t>(i)], l.number);
  return v;
}

Vector read_named(Reader& r, const std::string& kw, Eigen::Index expected) {
  const Line& l = r.next();
  expect_keyword(l, kw);
  return read_values(l, 1, expected);
}

// "<kind> [n]" with product followed by its parts on the next lines.
ConeDescriptor read_cone(Reader& r, const Line& l, std::size_t at) {
  if (l.tokens.size() <= at) throw Error(ErrorKind::SyntaxError, "missing cone kind", l.number);
  const std::string& kind = l.tokens[at];
  auto size_arg = [&]() {
    if (l.tokens.size() != at + 2) throw Error(ErrorKind::SyntaxError, "cone '" + kind + "' needs one size", l.number);
    return to_count(l.tokens[at + 1], l.number);
  };
  if (kind == "parabola2d" || kind == "disc2d") {
    if (l.tokens.size() != at + 1) throw Error(ErrorKind::SyntaxError, "unexpected tokens after " + kind, l.number);
    return kind == "disc2d" ? ConeDescriptor::disc2d() : ConeDescriptor::parabola2d();
  }
  if (kind == "orthant") return ConeDescriptor::orthant(size_arg());
  if (kind == "psd") return ConeDescriptor::psd(size_arg());
  if (kind == "hankel" || kind == "hankel_poly") return ConeDescriptor::hankel_poly(size_arg());
  if (kind == "soc") {
    int n = size_arg();
    if (n < 2) throw Error(ErrorKind::SyntaxError, "soc needs dimension >= 2", l.number);
    return ConeDescriptor::soc(n);
  }
  if (kind == "product") {
    const int k = size_arg();
    std::vector<ConeDescriptor> parts;
    for (int i = 0; i < k; ++i) {
      const Line& sub = r.next();
      parts.push_back(read_cone(r, sub, 0));
    }
    return ConeDescriptor::product(std::move(parts));
  }
  throw Error(ErrorKind::SyntaxError, "unknown cone kind '" + kind + "'", l.number);
}

void write_cone(std::ostringstream& out, const ConeDescriptor& d) {
  switch (d.kind) {
    case ConeKind::parabola2d:
    case ConeKind::disc2d: out << kind_name(d.kind) << "\n"; return;
    case ConeKind::product:
      out << "product " << d.parts.size() << "\n";
      for (const auto& p : d.parts) write_cone(out, p);
      return;
    default: out << kind_name(d.kind) << " " << d.n << "\n";
  }
}

void write_vector(std::ostringstream& out, const std::string& kw, const Vector& v) {
  out << kw;
  for (Eigen::Index i = 0; i < v.size(); ++i) out << " " << format_real(v(i));
  out << "\n";
}

}  // namespace

ConicProblem parse_problem(std::string_view text) {
  Reader r(tokenize(text));
  {
    const Line& h = r.next();
    if (h.tokens.size() != 2 || h.tokens[0] != "CONEPROB" || h.tokens[1] != "1")
      throw Error(ErrorKind::SyntaxError, "expected header 'CONEPROB 1'", h.number);
  }
  const Line& cl = r.next();
  expect_keyword(cl, "cone");
  const ConeDescriptor cone = read_cone(r, cl, 1);
  const Eigen::Index n = cone.dim();

  const Line& dl = r.next();
  expect_keyword(dl, "rows");
  if (dl.tokens.size() != 2) throw Error(ErrorKind::SyntaxError, "expected 'rows <m>'", dl.number);
  const int m = to_count(dl.tokens[1], dl.number);

  expect_keyword(r.next(), "A");
  Matrix A(m, n);
  for (int i = 0; i < m; ++i) A.row(i) = read_values(r.next(), 0, n).transpose();
  Vector b = read_named(r, "b", m);
  Vector c = read_named(r, "c", n);
  const Line& yl = r.next();
  expect_keyword(yl, "y_start");
  Vector y_start = read_values(yl, 1, m);

  std::optional<KnownOptimum> opt;
  if (!r.done()) {
    expect_keyword(r.next(), "optimum");
    KnownOptimum o;
    o.y_star = read_named(r, "y_star", m);
    o.s_star = read_named(r, "s_star", n);
    o.f_star = read_named(r, "f_star", 1)(0);
    if (!r.done() && r.peek().tokens[0] == "x_star") o.x_star = read_named(r, "x_star", n);
    opt = std::move(o);
  }
  if (!r.done()) throw Error(ErrorKind::SyntaxError, "unexpected trailing content", r.peek().number);

  try {
    return make_problem(std::move(A), std::move(b), std::move(c), cone, std::move(y_start), std::move(opt));
  } catch (const Error& e) {
    if (e.line() == 0 && e.kind() == ErrorKind::InfeasibleStart)
      throw Error(e.kind(), "c - A^T y_start is not interior to " + cone.name(), yl.number);
    throw;
  }
}

std::string write_problem(const ConicProblem& p) {
  std::ostringstream out;
  out << "CONEPROB 1\n";
  out << "cone ";
  write_cone(out, p.cone);
  out << "rows " << p.m() << "\n";
  out << "A\n";
  for (Eigen::Index i = 0; i < p.m(); ++i) {
    for (Eigen::Index j = 0; j < p.dim(); ++j) out << (j ? " " : "") << format_real(p.A(i, j));
    out << "\n";
  }
  write_vector(out, "b", p.b);
  write_vector(out, "c", p.c);
  write_vector(out, "y_start", p.y_start);
  if (p.optimum) {
    out << "optimum\n";
    write_vector(out, "y_star", p.optimum->y_star);
    write_vector(out, "s_star", p.optimum->s_star);
    out << "f_star " << format_real(p.optimum->f_star) << "\n";
    if (p.optimum->x_star) write_vector(out, "x_star", *p.optimum->x_star);
  }
  return out.str();
}

ConicProblem read_problem_file(const std::string& path) { return parse_problem(read_file(path)); }

void write_problem_file(const ConicProblem& p, const std::string& path) { atomic_write(path, write_problem(p)); }

}  // namespace conepc
