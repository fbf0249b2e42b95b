#include <rmq/cli.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <utility>
#include <vector>

int main(int argc, char** argv) {
  CLI::App app{"rmq-lab: generate, solve and estimate regular multivariate quadratic systems"};
  app.require_subcommand(1);

  rmq::cli::GenOptions go;
  CLI::App* gen = app.add_subcommand("gen", "Generate a planted instance");
  gen->add_option("--l", go.l, "window length")->required();
  gen->add_option("--w", go.w, "number of windows")->required();
  gen->add_option("--m", go.m, "equation count (default: 1.2x the uniqueness bound)");
  gen->add_option("--seed", go.seed, "generator seed (default 42)");
  gen->add_option("--out", go.out, "output file (default: stdout)");

  rmq::cli::SolveOptions so;
  CLI::App* solve = app.add_subcommand("solve", "Solve an instance file");
  solve->add_option("--in", so.in, "instance file")->required();
  solve
      ->add_option("--method", so.method,
                   "brute | xl | hybrid-full | hybrid-partial | hybrid-different | polymethod | "
                   "alt-xl")
      ->required();
  solve->add_option("--d-max", so.d_max, "linearization degree cap (default: completeness degree)");
  solve->add_option("--gamma", so.gamma, "guessed-window fraction (hybrid-full, polymethod)");
  solve->add_option("--lprime", so.lprime, "kept sub-window size (hybrid-partial, polymethod)");
  solve->add_option("--counts", so.counts, "windows keeping 1..l coordinates (hybrid-different)")
      ->delimiter(',');
  solve->add_option("--threads", so.threads, "worker cap (default: RMQ_LAB_THREADS or 1)");
  solve->add_option("--seed", so.seed, "randomized-method seed (default 1)");

  rmq::cli::EstimateOptions eo;
  CLI::App* est = app.add_subcommand("estimate", "Asymptotic exponent of one attack strategy");
  est->add_option("--method", eo.method,
                  "brute | plain | plain-fq | hybrid-full | hybrid-partial | hybrid-different | "
                  "poly-nonrec | poly-bjorklund | poly-dinur | alt-plain | alt-full | "
                  "alt-partial | dinur-alt | simple")
      ->required();
  est->add_option("--l", eo.l, "window length")->required();
  est->add_option("--q", eo.q, "field size for plain-fq (default 7)");
  est->add_option("--omega", eo.omega, "linear-algebra exponent (default 2)");
  est->add_option("--split", eo.split, "different-windows tuple grid denominator");

  rmq::cli::CompareOptions co;
  CLI::App* cmp = app.add_subcommand("compare", "Exponent curves for all strategies");
  cmp->add_option("--omega", co.omega, "linear-algebra exponent (default 2)");
  cmp->add_option("--ls", co.ls, "window lengths (default 2,3,4,5,6,10,20,50,100)")
      ->delimiter(',');
  cmp->add_option("--alt-ls", co.alt_ls,
                  "window lengths for the bit-encoded sheet (default 2,4,8,16,32,64,128)")
      ->delimiter(',');

  rmq::cli::Table1Options to;
  std::vector<std::string> row_specs;
  CLI::App* tab = app.add_subcommand("table1", "Solving degrees on the desk-scale instance set");
  tab->add_option("--which", to.which, "quad | alt | both (default both)");
  tab->add_option("--rows", row_specs, "rows as s:w pairs, e.g. 2:5,4:2 (default: full list)")
      ->delimiter(',');
  tab->add_flag("--force", to.force, "run rows outside the desk-scale list");
  tab->add_option("--seed", to.seed, "instance seed (default 42)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : rmq::cli::kExitUsage;
  }

  if (gen->parsed()) return rmq::cli::run_gen(go, std::cout, std::cerr);
  if (solve->parsed()) return rmq::cli::run_solve(so, std::cout, std::cerr);
  if (est->parsed()) return rmq::cli::run_estimate(eo, std::cout, std::cerr);
  if (cmp->parsed()) return rmq::cli::run_compare(co, std::cout, std::cerr);
  if (tab->parsed()) {
    for (const std::string& spec : row_specs) {
      const auto colon = spec.find(':');
      if (colon == std::string::npos) {
        std::cerr << "error: row " << spec << " is not in s:w form\n";
        return rmq::cli::kExitUsage;
      }
      try {
        to.rows.emplace_back(std::stoi(spec.substr(0, colon)), std::stoi(spec.substr(colon + 1)));
      } catch (const std::exception&) {
        std::cerr << "error: row " << spec << " is not in s:w form\n";
        return rmq::cli::kExitUsage;
      }
    }
    return rmq::cli::run_table1(to, std::cout, std::cerr);
  }
  return rmq::cli::kExitUsage;
}
