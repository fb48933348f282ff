#include <doctest.h>

#include <filesystem>

#include "conepc/error.hpp"
#include "conepc/generators.hpp"
#include "conepc/problem_io.hpp"
#include "conepc/trace_io.hpp"
#include "oracles.hpp"

using namespace conepc;

namespace {

const char* kMinimal = R"(CONEPROB 1
cone orthant 1
rows 1
A
1
b 1
c 1
y_start 0
)";

ErrorKind kind_of(const std::function<void()>& f, int* line = nullptr) {
  try {
    f();
  } catch (const Error& e) {
    if (line) *line = e.line();
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::NoSamples;
}

}  // namespace

TEST_CASE("minimal problem file") {
  ConicProblem p = parse_problem(kMinimal);
  CHECK(p.m() == 1);
  CHECK(p.dim() == 1);
  CHECK(slack(p, p.y_start)(0) == 1.0);
}

TEST_CASE("parse errors carry line numbers") {
  std::string bad = kMinimal;
  bad.replace(bad.find("A\n1\n"), 4, "A\n1 2\n");
  int line = 0;
  CHECK(kind_of([&] { parse_problem(bad); }, &line) == ErrorKind::DimensionMismatch);
  CHECK(line == 5);
  CHECK(kind_of([&] { parse_problem("CONEPROB 2\n"); }, &line) == ErrorKind::SyntaxError);
  CHECK(line == 1);
  std::string infeasible = kMinimal;
  infeasible.replace(infeasible.find("y_start 0"), 9, "y_start 3");
  CHECK(kind_of([&] { parse_problem(infeasible); }) == ErrorKind::InfeasibleStart);
  CHECK(kind_of([&] { parse_problem(""); }, &line) == ErrorKind::SyntaxError);
}

TEST_CASE("property: generator outputs round-trip") {
  std::vector<ConicProblem> ps{make_parabola2d(), make_disc2d(), make_sharp_lp(3, 6, 7), make_sharp_lp(2, 4, 1),
                               make_sharp_sdp(3, 2), make_soc_test(4, 3), make_hankel_poly(2)};
  ps.push_back(make_problem(Matrix::Identity(4, 4), Vector::Ones(4), Vector::Ones(4), ConeDescriptor::orthant(4),
                            Vector::Zero(4)));
  for (const auto& p : ps) {
    const std::string once = write_problem(p);
    const ConicProblem q = parse_problem(once);
    CHECK(write_problem(q) == once);
    CHECK(q.A == p.A);
    CHECK(q.b == p.b);
    CHECK(q.c == p.c);
    CHECK(q.cone == p.cone);
    CHECK(q.optimum.has_value() == p.optimum.has_value());
  }
}

TEST_CASE("property: generators are deterministic in the seed") {
  CHECK(write_problem(make_sharp_lp(3, 6, 7)) == write_problem(make_sharp_lp(3, 6, 7)));
  CHECK(write_problem(make_sharp_lp(3, 6, 7)) != write_problem(make_sharp_lp(3, 6, 8)));
  CHECK(write_problem(make_sharp_sdp(3, 4)) == write_problem(make_sharp_sdp(3, 4)));
  CHECK(write_problem(generate_example("soc_test", {5}, 9)) == write_problem(make_soc_test(5, 9)));
  CHECK(kind_of([] { generate_example("cube", {}, 1); }) == ErrorKind::UnknownExample);
}

TEST_CASE("sharp LP optimum is certified by vertex enumeration") {
  for (std::uint64_t seed : {7u, 1u, 2u, 3u}) {
    ConicProblem p = make_sharp_lp(3, 6, seed);
    oracle::LpVertex v = oracle::lp_vertex_enumeration(p.A, p.b, p.c);
    CHECK(v.optimal_vertices == 1);
    CHECK(v.value == doctest::Approx(p.optimum->f_star).epsilon(1e-10));
    CHECK((v.y - p.optimum->y_star).norm() <= 1e-9 * (1.0 + v.y.norm()));
    // Primal side: A x_* = b, x_* >= 0, zero gap.
    CHECK((p.A * *p.optimum->x_star - p.b).norm() <= 1e-12 * (1.0 + p.b.norm()));
    CHECK(p.optimum->x_star->minCoeff() >= 0.0);
    CHECK(p.c.dot(*p.optimum->x_star) == doctest::Approx(p.optimum->f_star).epsilon(1e-12));
  }
}

TEST_CASE("parabola central path and disc optimum") {
  ConicProblem d = make_disc2d();
  CHECK(d.optimum->f_star == 1.0);
  CHECK(d.optimum->y_star == Vector{{1.0, 0.0}});
  CHECK(d.b == Vector{{1.0, 0.0}});
  ConicProblem p = make_parabola2d();
  CHECK(p.b == Vector{{-1.0, 0.0}});
}

TEST_CASE("trace CSV round-trips at 17 digits") {
  SolverConfig cfg;
  cfg.epsilon = 1e-12;
  ConvergenceTrace t = solve(make_sharp_lp(3, 6, 7), cfg);
  const std::string csv = write_trace_csv(t);
  CHECK(csv.substr(0, kTraceHeader.size()) == kTraceHeader);
  ConvergenceTrace u = parse_trace_csv(csv);
  REQUIRE(u.records.size() == t.records.size());
  for (std::size_t k = 0; k < t.records.size(); ++k) {
    CHECK(u.records[k].mu == t.records[k].mu);
    CHECK(u.records[k].alpha_bar == t.records[k].alpha_bar);
    CHECK(u.records[k].gamma_post == t.records[k].gamma_post);
    CHECK(u.records[k].i_k == t.records[k].i_k);
    CHECK(u.records[k].gap_bound == t.records[k].gap_bound);
  }
  CHECK(write_trace_csv(u) == csv);
  CHECK(kind_of([] { parse_trace_csv("k,mu\n0,1\n"); }) == ErrorKind::SyntaxError);
}

TEST_CASE("files are written atomically") {
  const auto dir = std::filesystem::temp_directory_path() / "conepc_cli_io_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "p.prob").string();
  write_problem_file(make_disc2d(), path);
  CHECK(read_file(path) == write_problem(make_disc2d()));
  for (const auto& e : std::filesystem::directory_iterator(dir)) CHECK(e.path().filename() == "p.prob");
  std::filesystem::remove_all(dir);
}

TEST_CASE("report format") {
  CHECK(format_report({{"gx", 0.5, 1.0, true}, {"hx", 2.0, 1.0, false}}) ==
        "gx value=0.5 threshold=1 status=pass\nhx value=2 threshold=1 status=fail\n");
  CHECK(format_real(0.1) == "0.10000000000000001");
}
