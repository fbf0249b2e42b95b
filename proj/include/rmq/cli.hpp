#pragma once
// Command implementations behind the rmq_lab binary. Flag parsing lives in
// the tool's main(); each run_* takes a filled options struct and writes to
// the given streams. Exit codes: 0 solution/success, 2 proven or searched
// unsatisfiable, 3 inconclusive, 64 usage or parameter error.

#include <rmq/altmodel.hpp>
#include <rmq/estimator.hpp>
#include <rmq/hybrid.hpp>
#include <rmq/instance_io.hpp>
#include <rmq/polymethod.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace rmq::cli {

inline constexpr const char* kVersionLine = "# rmq-lab v1";
inline constexpr int kExitSolution = 0;
inline constexpr int kExitOk = 0;
inline constexpr int kExitUnsat = 2;
inline constexpr int kExitInconclusive = 3;
inline constexpr int kExitUsage = 64;

namespace detail {

inline std::string format_elapsed(double s) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << s;
  return os.str();
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

// ---- gen ----

struct GenOptions {
  int l = 0;
  int w = 0;
  int m = -1;  // -1: derive the default count 1.2 * uniqueness bound
  std::uint64_t seed = 42;
  std::string out;  // empty: stdout
};

inline int run_gen(const GenOptions& go, std::ostream& out, std::ostream& err) {
  if (go.m == 0 || go.m < -1) {
    err << "error: equation count must be positive\n";
    return kExitUsage;
  }
  try {
    const int m = go.m > 0 ? go.m : table_equation_count(go.l, go.w);
    const RmqInstance inst = plant_instance(go.l, go.w, m, go.seed);
    const std::string text = render_instance(inst);
    if (go.out.empty()) {
      out << text;
    } else {
      std::ofstream f(go.out);
      if (!f) {
        err << "error: cannot open output file " << go.out << "\n";
        return kExitUsage;
      }
      f << text;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

// ---- solve ----

struct SolveOptions {
  std::string in;
  std::string method;  // brute | xl | hybrid-full | hybrid-partial | hybrid-different |
                       // polymethod | alt-xl
  int d_max = 0;       // 0: completeness degree of the reduced system
  double gamma = -1.0;
  int lprime = 0;
  std::vector<int> counts;  // different: windows keeping 1..l coordinates
  int threads = 0;
  std::uint64_t seed = 1;   // polymethod randomness
  std::size_t column_guard = kMacaulayColumnGuard;
};

inline int run_solve(const SolveOptions& so, std::ostream& out, std::ostream& err) {
  std::ifstream f(so.in);
  if (!f) {
    err << "error: cannot open instance file " << so.in << "\n";
    return kExitUsage;
  }
  std::stringstream buf;
  buf << f.rdbuf();
  RmqInstance inst;
  try {
    inst = parse_instance(buf.str());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  SolveReport rep;
  try {
    if (so.method == "brute") {
      rep.solutions = brute_force_solve(inst);
      rep.status = rep.solutions.empty() ? SolveStatus::unsatisfiable : SolveStatus::found;
      std::uint64_t total = 1;
      for (int i = 0; i < inst.w; ++i) total *= static_cast<std::uint64_t>(inst.l);
      rep.guesses_tried = total;
    } else if (so.method == "xl") {
      const PolySystem sys = build_modeling(inst);
      const int dm = so.d_max > 0 ? so.d_max : xl_complete_degree(sys);
      rep = xl_solve(sys, dm, inst, so.column_guard);
    } else if (so.method == "hybrid-full" || so.method == "hybrid-partial" ||
               so.method == "hybrid-different") {
      HybridParams hp;
      hp.d_max = so.d_max;
      hp.threads = so.threads;
      hp.column_guard = so.column_guard;
      if (so.method == "hybrid-full") {
        hp.strategy = HybridStrategy::full;
        hp.gamma = so.gamma >= 0.0 ? so.gamma : 0.5;
      } else if (so.method == "hybrid-partial") {
        hp.strategy = HybridStrategy::partial;
        hp.lprime = so.lprime > 0 ? so.lprime : (inst.l + 1) / 2;
      } else {
        hp.strategy = HybridStrategy::different;
        hp.counts.assign(static_cast<std::size_t>(inst.l) + 1, 0);
        if (so.counts.empty()) {
          // half the windows fully guessed, the rest untouched
          hp.counts[1] = inst.w / 2;
          hp.counts[static_cast<std::size_t>(inst.l)] = inst.w - inst.w / 2;
        } else {
          if (static_cast<int>(so.counts.size()) != inst.l) {
            err << "error: --counts needs one entry per kept size 1.." << inst.l << "\n";
            return kExitUsage;
          }
          for (int s = 1; s <= inst.l; ++s) {
            hp.counts[static_cast<std::size_t>(s)] = so.counts[static_cast<std::size_t>(s - 1)];
          }
        }
      }
      rep = hybrid_solve(inst, hp);
    } else if (so.method == "polymethod") {
      PolyMethodParams pm;
      pm.seed = so.seed;
      if (so.gamma >= 0.0) pm.gamma = so.gamma;
      if (so.lprime > 0) pm.l_prime = so.lprime;
      try {
        const auto v = search_via_decision(inst, pm);
        if (v && satisfies(inst, *v)) {
          rep.status = SolveStatus::found;
          rep.solutions = {*v};
        } else if (!v) {
          rep.status = SolveStatus::unsatisfiable;
        } else {
          rep.status = SolveStatus::inconclusive;
        }
      } catch (const InconsistentDecisionError&) {
        rep.status = SolveStatus::inconclusive;
      }
    } else if (so.method == "alt-xl") {
      rep = alt_solve(inst, so.d_max, so.column_guard);
    } else {
      err << "error: unknown solve method " << so.method << "\n";
      return kExitUsage;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  rep.elapsed_s = detail::seconds_since(t0);

  out << kVersionLine << "\n";
  if (rep.solutions.empty()) {
    out << "# solution none\n";
  } else {
    for (const RegularVector& v : rep.solutions) {
      out << "# solution";
      for (int p : v.positions) out << ' ' << p;
      out << "\n";
    }
  }
  out << "method,l,w,m,seed,d_solv,max_rows,max_cols,guesses,elapsed_s,found\n";
  out << so.method << ',' << inst.l << ',' << inst.w << ',' << inst.m << ',' << inst.seed << ','
      << rep.d_solv << ',' << rep.max_rows << ',' << rep.max_cols << ',' << rep.guesses_tried
      << ',' << detail::format_elapsed(rep.elapsed_s) << ','
      << (rep.status == SolveStatus::found ? 1 : 0) << "\n";

  switch (rep.status) {
    case SolveStatus::found:
      return kExitSolution;
    case SolveStatus::unsatisfiable:
      return kExitUnsat;
    case SolveStatus::inconclusive:
      return kExitInconclusive;
  }
  return kExitInconclusive;
}

// ---- estimate ----

struct EstimateOptions {
  std::string method;
  int l = 0;
  int q = 7;
  double omega = 2.0;
  int split = 0;  // different-windows grid denominator, 0: default
};

inline int run_estimate(const EstimateOptions& eo, std::ostream& out, std::ostream& err) {
  try {
    ComplexityReport r = estimate_by_method(eo.method, eo.l, eo.omega, eo.q, eo.split);
    if (!r.tau_rel) r.tau_rel = r.tau / brute_force_tau(r.l, r.q);
    out << kVersionLine << "\n" << complexity_csv_header() << "\n" << complexity_csv_row(r)
        << "\n";
    if (r.beats_brute && !*r.beats_brute) {
      out << "# note: slower than brute force at l=" << r.l << ", q=" << r.q << "\n";
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

// ---- compare ----

struct CompareOptions {
  double omega = 2.0;
  std::vector<int> ls;      // empty: figure grid {2,3,4,5,6,10,20,50,100}
  std::vector<int> alt_ls;  // empty: {2,4,8,16,32,64,128}
};

inline int run_compare(const CompareOptions& co, std::ostream& out, std::ostream& err) {
  const std::vector<int> ls = co.ls.empty() ? std::vector<int>{2, 3, 4, 5, 6, 10, 20, 50, 100}
                                            : co.ls;
  const std::vector<int> alt_ls =
      co.alt_ls.empty() ? std::vector<int>{2, 4, 8, 16, 32, 64, 128} : co.alt_ls;
  std::vector<int> ls_small;
  for (int l : ls) {
    if (l <= 6) ls_small.push_back(l);  // per-window tuple sweep cost grows steeply
  }

  std::vector<CompareCell> cells;
  try {
    auto push = [&cells](std::vector<CompareCell> v) {
      for (auto& c : v) cells.push_back(std::move(c));
    };
    push(compare_all(ls, co.omega, {"brute", "plain", "hybrid-full", "hybrid-partial"}));
    push(compare_all(ls_small, co.omega, {"hybrid-different"}));
    push(compare_all(ls, co.omega, {"poly-nonrec", "poly-bjorklund", "poly-dinur"}));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  out << kVersionLine << "\n";
  out << "# sheet absolute\n" << complexity_csv_header() << "\n";
  for (const CompareCell& c : cells) {
    if (c.report) {
      out << complexity_csv_row(*c.report) << "\n";
    } else {
      out << "# skipped method=" << c.method << " l=" << c.l << " reason=" << c.diagnostic
          << "\n";
    }
  }

  out << "# sheet relative\nmethod,l,tau_rel\n";
  for (const CompareCell& c : cells) {
    if (!c.report || !c.report->tau_rel) continue;
    out << c.method << ',' << c.l << ','
        << rmq::detail::format_double(*c.report->tau_rel) << "\n";
  }

  out << "# sheet alternative\n" << complexity_csv_header() << "\n";
  std::vector<CompareCell> alt_cells;
  try {
    alt_cells = compare_all(alt_ls, co.omega, {"alt-plain", "alt-full", "alt-partial", "dinur-alt"});
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  for (const CompareCell& c : alt_cells) {
    if (c.report) {
      out << complexity_csv_row(*c.report) << "\n";
    } else {
      out << "# skipped method=" << c.method << " l=" << c.l << " reason=" << c.diagnostic
          << "\n";
    }
  }
  return kExitOk;
}

// ---- table1 ----

inline const std::vector<std::pair<int, int>>& table_rows_quadratic() {
  static const std::vector<std::pair<int, int>> rows = {{2, 5}, {2, 6}, {2, 7}, {3, 4},
                                                        {4, 2}, {4, 3}, {5, 2}};
  return rows;
}

inline const std::vector<std::pair<int, int>>& table_rows_alternative() {
  static const std::vector<std::pair<int, int>> rows = {{2, 5}, {2, 6}, {3, 4}, {4, 2}, {5, 2}};
  return rows;
}

struct Table1Options {
  std::string which = "both";            // quad | alt | both
  std::vector<std::pair<int, int>> rows;  // empty: the full desk-scale list
  bool force = false;
  std::uint64_t seed = 42;
  std::size_t column_guard = kMacaulayColumnGuard;
};

inline int run_table1(const Table1Options& to, std::ostream& out, std::ostream& err) {
  if (to.which != "quad" && to.which != "alt" && to.which != "both") {
    err << "error: --which must be quad, alt or both\n";
    return kExitUsage;
  }
  const auto& quad_rows = table_rows_quadratic();
  const auto& alt_rows = table_rows_alternative();
  auto listed = [](const std::vector<std::pair<int, int>>& rows, std::pair<int, int> r) {
    return std::find(rows.begin(), rows.end(), r) != rows.end();
  };
  const std::vector<std::pair<int, int>> rows = to.rows.empty() ? quad_rows : to.rows;
  for (const auto& r : rows) {
    if (!listed(quad_rows, r)) {
      if (!to.force) {
        err << "error: row (" << r.first << "," << r.second
            << ") is outside the desk-scale list; pass --force to run it anyway\n";
        return kExitUsage;
      }
      err << "# warning: row (" << r.first << "," << r.second
          << ") is outside the desk-scale list; runtime and memory are unbounded\n";
    }
  }

  out << kVersionLine << "\n";
  out << "s,w,l,m,seed,quad_d_solv,quad_max_rows,alt_d_solv,alt_max_rows,elapsed_s\n";
  for (const auto& [s, w] : rows) {
    const auto t0 = std::chrono::steady_clock::now();
    const int l = 1 << s;
    const int m = table_equation_count(l, w);
    std::string qd, qr, ad, ar;
    try {
      const RmqInstance inst = plant_instance(l, w, m, to.seed);
      if (to.which != "alt") {
        const PolySystem sys = build_modeling(inst);
        const SolveReport rep = xl_solve(sys, xl_complete_degree(sys), inst, to.column_guard);
        if (rep.status == SolveStatus::found) {
          qd = std::to_string(rep.d_solv);
          qr = std::to_string(rep.max_rows);
        } else {
          err << "# warning: quadratic solve inconclusive on (" << s << "," << w << ")\n";
        }
      }
      if (to.which != "quad" && (listed(alt_rows, {s, w}) || to.force)) {
        const SolveReport rep = alt_solve(inst, 0, to.column_guard);
        if (rep.status == SolveStatus::found) {
          ad = std::to_string(rep.d_solv);
          ar = std::to_string(rep.max_rows);
        } else {
          err << "# warning: alternative solve inconclusive on (" << s << "," << w << ")\n";
        }
      }
    } catch (const std::exception& e) {
      err << "error: row (" << s << "," << w << "): " << e.what() << "\n";
      return kExitUsage;
    }
    out << s << ',' << w << ',' << l << ',' << m << ',' << to.seed << ',' << qd << ',' << qr
        << ',' << ad << ',' << ar << ',' << detail::format_elapsed(detail::seconds_since(t0))
        << "\n";
  }
  return kExitOk;
}

}  // namespace rmq::cli
