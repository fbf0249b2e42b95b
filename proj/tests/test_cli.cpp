#include <catch2/catch_amalgamated.hpp>

#include <rmq/instance_io.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::filesystem::path scratch_dir() {
  static const std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() /
             ("rmq_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run_tool(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const auto base = scratch_dir() / ("run_" + std::to_string(++counter));
  const std::string cmd = env + (env.empty() ? "" : " ") + RMQ_LAB_BIN + " " + args + " >" +
                          base.string() + ".out 2>" + base.string() + ".err";
  const int st = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  r.out = slurp(base.string() + ".out");
  r.err = slurp(base.string() + ".err");
  return r;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

std::vector<std::string> solution_lines(const std::string& s) {
  std::vector<std::string> out;
  for (const auto& l : lines_of(s))
    if (l.rfind("# solution", 0) == 0) out.push_back(l);
  return out;
}

std::vector<std::string> csv_fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

// the elapsed column is the only legitimate run-to-run difference
std::string mask_elapsed(const std::string& text) {
  auto ls = lines_of(text);
  for (std::size_t i = 0; i + 1 < ls.size(); ++i) {
    if (ls[i].rfind("method,", 0) == 0) {
      auto hdr = csv_fields(ls[i]);
      auto row = csv_fields(ls[i + 1]);
      for (std::size_t c = 0; c < hdr.size() && c < row.size(); ++c)
        if (hdr[c] == "elapsed_s") row[c] = "*";
      std::string joined;
      for (std::size_t c = 0; c < row.size(); ++c) joined += (c ? "," : "") + row[c];
      ls[i + 1] = joined;
    }
  }
  std::string out;
  for (const auto& l : ls) out += l + "\n";
  return out;
}

std::string gen_file(const std::string& flags, const std::string& name) {
  const auto path = scratch_dir() / name;
  RunResult r = run_tool("gen " + flags + " --out " + path.string());
  REQUIRE(r.code == 0);
  return path.string();
}

}  // namespace

TEST_CASE("gen writes a parseable instance with the default equation count", "[cli]") {
  RunResult r = run_tool("gen --l 4 --w 4 --seed 7");
  REQUIRE(r.code == 0);
  rmq::RmqInstance inst = rmq::parse_instance(r.out);
  CHECK(inst.l == 4);
  CHECK(inst.w == 4);
  CHECK(inst.m == 10);
  REQUIRE(inst.planted.has_value());
  CHECK(rmq::satisfies(inst, *inst.planted));

  // same flags, file output: byte-identical
  const std::string f = gen_file("--l 4 --w 4 --seed 7", "same.rmq");
  CHECK(slurp(f) == r.out);
}

TEST_CASE("gen rejects a zero equation count", "[cli]") {
  RunResult r = run_tool("gen --l 4 --w 4 --m 0");
  CHECK(r.code == 64);
  CHECK(r.err.find("error") != std::string::npos);
}

TEST_CASE("solvers agree through the command line", "[cli]") {
  const std::string f = gen_file("--l 4 --w 3 --seed 11", "agree.rmq");
  RunResult brute = run_tool("solve --in " + f + " --method brute");
  RunResult xl = run_tool("solve --in " + f + " --method xl");
  RunResult alt = run_tool("solve --in " + f + " --method alt-xl");
  REQUIRE(brute.code == 0);
  REQUIRE(xl.code == 0);
  REQUIRE(alt.code == 0);
  REQUIRE_FALSE(solution_lines(brute.out).empty());
  CHECK(solution_lines(xl.out) == solution_lines(brute.out));
  CHECK(solution_lines(alt.out) == solution_lines(brute.out));
  for (const auto& rr : {brute, xl, alt}) CHECK(lines_of(rr.out)[0] == "# rmq-lab v1");
}

TEST_CASE("solve exit codes separate outcomes", "[cli]") {
  // proven unsatisfiable: a constant-one equation appended to a small plant
  rmq::RmqInstance inst = rmq::plant_instance(2, 2, 3, 1);
  rmq::QuadraticPoly one;
  one.c = 1;
  one.lin.assign((inst.nvars() + 63) / 64, 0);
  one.cross.assign((rmq::cross_pair_count(2, 2) + 63) / 64, 0);
  inst.polys.push_back(one);
  inst.m += 1;
  inst.planted.reset();
  const auto unsat_path = scratch_dir() / "unsat.rmq";
  std::ofstream(unsat_path) << rmq::render_instance(inst);

  RunResult unsat_brute = run_tool("solve --in " + unsat_path.string() + " --method brute");
  CHECK(unsat_brute.code == 2);
  CHECK(unsat_brute.out.find("# solution none") != std::string::npos);
  RunResult unsat_xl = run_tool("solve --in " + unsat_path.string() + " --method xl");
  CHECK(unsat_xl.code == 2);

  // a degree cap far below the completeness degree is inconclusive
  const std::string big = gen_file("--l 4 --w 8 --seed 3", "big.rmq");
  RunResult inc = run_tool("solve --in " + big + " --method xl --d-max 2");
  CHECK(inc.code == 3);

  RunResult bad = run_tool("solve --in " + big + " --method no-such");
  CHECK(bad.code == 64);
  RunResult missing = run_tool("solve --in /nonexistent.rmq --method brute");
  CHECK(missing.code == 64);
}

TEST_CASE("hybrid solvers run through the command line", "[cli]") {
  const std::string f = gen_file("--l 4 --w 2 --seed 5", "hyb.rmq");
  RunResult brute = run_tool("solve --in " + f + " --method brute");
  REQUIRE(brute.code == 0);
  const auto want = solution_lines(brute.out);

  RunResult full = run_tool("solve --in " + f + " --method hybrid-full --gamma 0.5",
                            "RMQ_LAB_THREADS=2");
  REQUIRE(full.code == 0);
  CHECK_FALSE(solution_lines(full.out).empty());

  RunResult part = run_tool("solve --in " + f + " --method hybrid-partial --lprime 2");
  REQUIRE(part.code == 0);
  CHECK_FALSE(solution_lines(part.out).empty());

  // one window guessed down to a single coordinate, one untouched
  RunResult diff = run_tool("solve --in " + f + " --method hybrid-different --counts 1,0,0,1");
  REQUIRE(diff.code == 0);
  CHECK_FALSE(solution_lines(diff.out).empty());

  RunResult badc = run_tool("solve --in " + f + " --method hybrid-different --counts 1,1");
  CHECK(badc.code == 64);

  // each verified line must be among the brute-force solutions
  for (const auto& rr : {full, part, diff})
    for (const auto& l : solution_lines(rr.out))
      CHECK(std::find(want.begin(), want.end(), l) != want.end());
}

TEST_CASE("randomized search through the command line", "[cli]") {
  const std::string f = gen_file("--l 2 --w 5 --seed 2", "pm.rmq");
  RunResult brute = run_tool("solve --in " + f + " --method brute");
  REQUIRE(brute.code == 0);
  RunResult pm = run_tool("solve --in " + f + " --method polymethod --seed 4");
  REQUIRE(pm.code == 0);
  const auto want = solution_lines(brute.out);
  for (const auto& l : solution_lines(pm.out))
    CHECK(std::find(want.begin(), want.end(), l) != want.end());
}

TEST_CASE("solve reruns are identical up to timing", "[cli]") {
  const std::string f = gen_file("--l 4 --w 2 --seed 9", "rerun.rmq");
  RunResult a = run_tool("solve --in " + f + " --method xl");
  RunResult b = run_tool("solve --in " + f + " --method xl");
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(mask_elapsed(a.out) == mask_elapsed(b.out));
}

TEST_CASE("estimate prints one csv row", "[cli]") {
  RunResult r = run_tool("estimate --method plain --l 2");
  REQUIRE(r.code == 0);
  auto ls = lines_of(r.out);
  REQUIRE(ls.size() >= 3);
  CHECK(ls[0] == "# rmq-lab v1");
  CHECK(ls[1].rfind("method,l,q,omega", 0) == 0);
  auto row = csv_fields(ls[2]);
  REQUIRE(row.size() == 11);
  CHECK(row[0] == "plain");
  CHECK(std::stod(row[9]) == Catch::Approx(0.4364).margin(2e-3));

  RunResult d = run_tool("estimate --method dinur-alt --l 4");
  REQUIRE(d.code == 0);
  auto drow = csv_fields(lines_of(d.out)[2]);
  CHECK(std::stod(drow[9]) == Catch::Approx(0.4375));
  CHECK(std::stod(drow[10]) == Catch::Approx(0.875));

  // reruns are byte-identical: nothing in the estimate path is timed
  RunResult r2 = run_tool("estimate --method plain --l 2");
  CHECK(r2.out == r.out);

  CHECK(run_tool("estimate --method bogus --l 2").code == 64);
}

TEST_CASE("estimate flags big field regimes lost to brute force", "[cli]") {
  RunResult r = run_tool("estimate --method plain-fq --l 3 --q 7");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# note: slower than brute force") != std::string::npos);
  RunResult win = run_tool("estimate --method plain-fq --l 2 --q 7");
  REQUIRE(win.code == 0);
  CHECK(win.out.find("# note") == std::string::npos);
}

TEST_CASE("compare emits the three sheets", "[cli]") {
  RunResult r = run_tool("compare --ls 2 --alt-ls 2");
  REQUIRE(r.code == 0);
  auto ls = lines_of(r.out);
  CHECK(ls[0] == "# rmq-lab v1");
  CHECK(r.out.find("# sheet absolute\n") != std::string::npos);
  CHECK(r.out.find("# sheet relative\n") != std::string::npos);
  CHECK(r.out.find("# sheet alternative\n") != std::string::npos);
  CHECK(r.out.find("brute,2,") != std::string::npos);
  CHECK(r.out.find("alt-plain,2,") != std::string::npos);
}

TEST_CASE("desk scale rows outside the list need force", "[cli]") {
  RunResult guard = run_tool("table1 --rows 9:9");
  CHECK(guard.code == 64);
  CHECK(guard.err.find("--force") != std::string::npos);

  RunResult r = run_tool("table1 --rows 1:3 --force");
  REQUIRE(r.code == 0);
  auto ls = lines_of(r.out);
  REQUIRE(ls.size() >= 3);
  CHECK(ls[0] == "# rmq-lab v1");
  CHECK(ls[1].rfind("s,w,l,m,seed,", 0) == 0);
  auto row = csv_fields(ls[2]);
  REQUIRE(row.size() >= 9);
  CHECK(row[0] == "1");
  CHECK(row[1] == "3");
  CHECK(row[2] == "2");
  CHECK_FALSE(row[5].empty());  // quadratic solving degree
  CHECK_FALSE(row[7].empty());  // bit-encoded solving degree

  CHECK(run_tool("table1 --which nope").code == 64);
  CHECK(run_tool("table1 --rows oops").code == 64);
}
