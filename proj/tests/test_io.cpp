#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "unicorr/experiments.hpp"
#include "unicorr/random.hpp"
#include "unicorr/state_io.hpp"

using namespace unicorr;

namespace {

ErrorCode parse_error(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_state(in);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("parse succeeded");
  return ErrorCode::IoError;
}

struct RunOutput {
  int status = -1;
  std::string out;
};

RunOutput run_cli(const std::string& args) {
  const std::string cmd = std::string(UNICORR_CLI) + " " + args + " 2>/dev/null";
  RunOutput r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

// Data rows of a CSV (metadata and footer lines dropped, header kept first).
std::vector<std::vector<std::string>> rows_of(const std::string& csv) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    out.push_back(cells);
  }
  return out;
}

std::string column(const std::vector<std::vector<std::string>>& rows, std::size_t r, const std::string& name) {
  for (std::size_t c = 0; c < rows[0].size(); ++c)
    if (rows[0][c] == name) return rows[r][c];
  FAIL("no column " << name);
  return {};
}

}  // namespace

TEST_SUITE("state_io") {

TEST_CASE("round trip") {
  Rng rng = task_rng(71, 0);
  const DensityOperator rho = random_density(Dims{2, 3}, rng);
  std::stringstream ss;
  write_state(ss, rho);
  const DensityOperator back = parse_state(ss);
  CHECK(back.dims() == Dims{2, 3});
  CHECK(max_abs_diff(back.matrix(), rho.matrix()) < 1e-16);
}

TEST_CASE("sparse entries and comments") {
  std::istringstream in("# Bell state\ndims: 2 2\n0 0 0.5 0\n0 3 0.5 0\n\n3 0 0.5 0\n3 3 0.5 0\n");
  const DensityOperator b = parse_state(in);
  CHECK(b.matrix()(0, 3).real() == doctest::Approx(0.5));
  CHECK(b.matrix()(1, 1).real() == 0.0);
}

TEST_CASE("malformed files") {
  CHECK(parse_error("") == ErrorCode::ParseError);
  CHECK(parse_error("dim: 2\n0 0 1 0\n") == ErrorCode::ParseError);
  CHECK(parse_error("dims: 2 x\n") == ErrorCode::ParseError);
  CHECK(parse_error("dims: 2\n0 0 1\n") == ErrorCode::ParseError);
  CHECK(parse_error("dims: 2\n0 2 1 0\n") == ErrorCode::ParseError);
  CHECK(parse_error("dims: 2\n0 0 1 0\n0 0 1 0\n") == ErrorCode::ParseError);
  CHECK(parse_error("dims: 2\n0 0 1 0 7\n") == ErrorCode::ParseError);
  CHECK(parse_error("dims: 2\n0 1 0.5 0\n") == ErrorCode::NotHermitian);
  CHECK(parse_error("dims: 2\n0 0 1.2 0\n1 1 -0.2 0\n") == ErrorCode::NotPositive);
  CHECK_THROWS_AS(read_state_file("/nonexistent/state.txt"), Error);
}

}  // TEST_SUITE

TEST_SUITE("csv") {

TEST_CASE("layout") {
  CsvTable t({"a", "b"});
  t.meta("seed", "5");
  t.add_row({fmt(0.1), fmt(true)});
  t.footer("done");
  CHECK(t.str() == "# schema: 1\n# seed: 5\na,b\n0.10000000000000001,true\n# done\n");
  CHECK_THROWS_AS(t.add_row({"x"}), Error);
}

TEST_CASE("experiments are deterministic") {
  Fig1Config f;
  f.n_states = 3;
  f.n_measurements = 50;
  f.q_list = {0.5, 2.0};
  CHECK(run_fig1(f).str() == run_fig1(f).str());

  AncillaConfig a;
  a.samples = 3;
  a.opts.restarts = 4;
  CHECK(run_ancilla_check(a).str() == run_ancilla_check(a).str());

  TriangleScanConfig t;
  t.n_states = 2;
  t.indices = {EntropicIndices::von_neumann()};
  t.opts.restarts = 4;
  CHECK(run_triangle_scan(t).str() == run_triangle_scan(t).str());
}

TEST_CASE("summary counts match rows") {
  Fig1Config f;
  f.n_states = 4;
  f.n_measurements = 200;
  f.q_list = {0.5, 2.0, 4.0};
  const CsvTable t = run_fig1(f);
  int violated = 0;
  for (const auto& r : t.rows()) violated += r[4] == "true";
  CHECK(t.str().find("# violations: " + std::to_string(violated) + " of 24") != std::string::npos);
  CHECK(t.rows().size() == 24);
  // ordered by state, family, q
  CHECK(t.rows()[0][0] == "0");
  CHECK(t.rows()[0][1] == "tsallis");
  CHECK(t.rows()[0][2] == "0.5");
  CHECK(t.rows()[3][1] == "renyi");
}

TEST_CASE("family curve rows") {
  FamilyCurveConfig c;
  c.kind = FamilyKind::Pseudopure;
  c.n = 2;
  c.opts.restarts = 4;
  c.grid = {0.0, 0.5, 1.0};
  const CsvTable t = run_family_curve(c);
  CHECK(std::stod(t.rows()[0][1]) == doctest::Approx(0.0));
  CHECK(std::stod(t.rows()[2][1]) == doctest::Approx(std::log(2.0)));
  for (const auto& r : t.rows()) CHECK(std::stod(r[3]) <= 1e-6);

  c.kind = FamilyKind::Werner;
  c.grid = {-1.0};
  const CsvTable w = run_family_curve(c);
  REQUIRE(w.columns().size() == 6);
  CHECK(std::abs(std::stod(w.rows()[0][5])) > 0.1);
  c.grid = {2.0};
  CHECK_THROWS_AS(run_family_curve(c), Error);
}

}  // TEST_SUITE

TEST_SUITE("cli") {

TEST_CASE("measure examples") {
  auto value = [](const std::string& args) {
    const RunOutput r = run_cli(args);
    REQUIRE(r.status == 0);
    const auto rows = rows_of(r.out);
    REQUIRE(rows.size() == 2);
    return std::stod(column(rows, 1, "value"));
  };
  CHECK(std::abs(value("measure --family isotropic --N 2 --y 1 --q 1 --restarts 4") - std::log(2.0)) < 1e-6);
  CHECK(std::abs(value("measure --family pseudopure --p 0 --restarts 4")) < 1e-8);
  CHECK(std::abs(value("measure --family werner --N 2 --x 1 --q 2 --s 1 --side AB --restarts 4") - 1.0 / 6.0) <
        1e-6);
}

TEST_CASE("state files") {
  const std::string path = "cli_state_test.txt";
  {
    std::ofstream f(path);
    f << "dims: 2 2\n0 0 0.5 0\n0 3 0.5 0\n3 0 0.5 0\n3 3 0.5 0\n";
  }
  const RunOutput r = run_cli("entropy --state-file " + path + " --q 1,2 --s 1");
  CHECK(r.status == 0);
  const auto rows = rows_of(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(std::abs(std::stod(column(rows, 1, "entropy"))) < 1e-12);
  {
    std::ofstream f(path);
    f << "dims: 2 2\n0 0 abc 0\n";
  }
  CHECK(run_cli("measure --state-file " + path).status == 2);
  std::remove(path.c_str());
}

TEST_CASE("exit status") {
  CHECK(run_cli("").status != 0);
  CHECK(run_cli("measure").status == 2);
  CHECK(run_cli("measure --family werner --x 3").status == 2);
  CHECK(run_cli("measure --family werner --q 0").status == 2);
  CHECK(run_cli("measure --family werner --side Q").status != 0);
  CHECK(run_cli("family-curve --family werner --q 1 --grid -1,1 --restarts 2").status == 0);
  // inequality violations are data
  const RunOutput fig = run_cli("fig1 --states 3 --trials 200 --q 0.5,4 --entropy-family tsallis");
  CHECK(fig.status == 0);
  CHECK(fig.out.find("true") != std::string::npos);
}

TEST_CASE("byte-identical output for identical configs") {
  const std::string args = "triangle-scan --trials 2 --q 2 --s 1 --restarts 3 --seed 9";
  const RunOutput a = run_cli(args), b = run_cli(args);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("# seed: 9") != std::string::npos);
  const RunOutput c = run_cli("ancilla-check --q 2 --s 0 --trials 3 --restarts 3");
  CHECK(c.status == 0);
  CHECK(c.out == run_cli("ancilla-check --q 2 --s 0 --trials 3 --restarts 3").out);
}

}  // TEST_SUITE
