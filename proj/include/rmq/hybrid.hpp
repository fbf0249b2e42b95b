#pragma once
#include <atomic>
#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rmq/xl.hpp"

namespace rmq {

inline int thread_count_from_env() {
  const char* s = std::getenv("RMQ_LAB_THREADS");
  if (!s || !*s) return 1;
  const long v = std::strtol(s, nullptr, 10);
  return v >= 1 ? static_cast<int>(v) : 1;
}

enum class HybridStrategy { full, partial, different };

struct HybridParams {
  HybridStrategy strategy = HybridStrategy::partial;
  double gamma = 0.0;          // full: fraction of windows guessed completely
  int lprime = 0;              // partial: size of the kept sub-window
  std::vector<int> counts;     // different: counts[s] windows keep s coords, s = 1..l
  int d_max = 0;               // 0: exactness degree of each reduced system
  int threads = 0;             // 0: RMQ_LAB_THREADS, default 1
  std::size_t column_guard = kMacaulayColumnGuard;
};

namespace detail {

// Sub-windows of size lp covering 1..l: consecutive aligned windows, with the
// last one shifted left so it stays inside the range.
inline std::vector<std::vector<int>> sub_windows(int l, int lp) {
  std::vector<std::vector<int>> out;
  for (int start = 1; start <= l; start += lp) {
    std::vector<int> g;
    const int s = std::min(start, l - lp + 1);
    for (int j = s; j < s + lp; ++j) g.push_back(j);
    if (!out.empty() && out.back() == g) break;
    out.push_back(g);
  }
  return out;
}

inline std::vector<int> complement_of(const std::vector<int>& keep, int l) {
  std::vector<int> z;
  for (int j = 1; j <= l; ++j)
    if (std::find(keep.begin(), keep.end(), j) == keep.end()) z.push_back(j);
  return z;
}

}  // namespace detail

// Guess-and-solve: enumerate zero-guess patterns in lexicographic order
// (first window most significant), reduce each system and run the
// linearization solver. The first successful guess in enumeration order wins,
// regardless of thread interleaving.
inline SolveReport hybrid_solve(const RmqInstance& inst, const HybridParams& hp) {
  const auto t0 = std::chrono::steady_clock::now();
  const int l = inst.l, w = inst.w;

  // per-window list of alternative zero-sets
  std::vector<std::vector<std::vector<int>>> choices(w);
  switch (hp.strategy) {
    case HybridStrategy::full: {
      if (hp.gamma < 0.0 || hp.gamma > 1.0) throw std::invalid_argument("gamma outside [0, 1]");
      const int wg = std::min<int>(w, static_cast<int>(hp.gamma * w + 0.5));
      for (int i = 0; i < w; ++i) {
        if (i < wg)
          for (int p = 1; p <= l; ++p) choices[i].push_back(detail::complement_of({p}, l));
        else
          choices[i].push_back({});
      }
      break;
    }
    case HybridStrategy::partial: {
      if (hp.lprime < 1 || hp.lprime > l) throw std::invalid_argument("kept sub-window size outside [1, l]");
      const auto groups = detail::sub_windows(l, hp.lprime);
      for (int i = 0; i < w; ++i)
        for (const auto& g : groups) choices[i].push_back(detail::complement_of(g, l));
      break;
    }
    case HybridStrategy::different: {
      if (static_cast<int>(hp.counts.size()) != l + 1)
        throw std::invalid_argument("per-size window counts must cover sizes 0..l");
      int total = 0;
      for (int s = 0; s <= l; ++s) {
        if (hp.counts[s] < 0 || (s == 0 && hp.counts[s] > 0))
          throw std::invalid_argument("invalid per-size window count");
        total += hp.counts[s];
      }
      if (total != w) throw std::invalid_argument("per-size window counts must sum to w");
      int i = 0;
      for (int s = 1; s <= l; ++s)
        for (int c = 0; c < hp.counts[s]; ++c, ++i)
          for (const auto& g : detail::sub_windows(l, s)) choices[i].push_back(detail::complement_of(g, l));
      break;
    }
  }

  std::uint64_t total = 1;
  for (const auto& c : choices) {
    if (total > (std::uint64_t{1} << 62) / c.size())
      throw std::invalid_argument("guess space too large to enumerate");
    total *= c.size();
  }
  std::vector<std::uint64_t> suffix(w + 1, 1);
  for (int i = w - 1; i >= 0; --i) suffix[i] = suffix[i + 1] * choices[i].size();

  auto solve_guess = [&](std::uint64_t idx) {
    GuessPattern gp;
    gp.zeroed.resize(w);
    for (int i = 0; i < w; ++i) gp.zeroed[i] = choices[i][(idx / suffix[i + 1]) % choices[i].size()];
    const PolySystem sys = build_modeling(inst, &gp, true);
    const int dm = hp.d_max > 0 ? hp.d_max : xl_complete_degree(sys);
    return xl_solve(sys, dm, inst, hp.column_guard);
  };

  const int nthreads = hp.threads > 0 ? hp.threads : thread_count_from_env();
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  std::atomic<bool> any_inconclusive{false};
  std::map<std::uint64_t, SolveReport> found;
  std::mutex found_mx;
  std::exception_ptr first_error;

  auto worker = [&] {
    while (true) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= total || i >= best.load()) break;
      try {
        SolveReport r = solve_guess(i);
        if (r.status == SolveStatus::found) {
          std::lock_guard<std::mutex> lk(found_mx);
          found.emplace(i, std::move(r));
          std::uint64_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
        } else if (r.status == SolveStatus::inconclusive) {
          any_inconclusive.store(true);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lk(found_mx);
        if (!first_error) first_error = std::current_exception();
        best.store(0);  // stop everyone
        break;
      }
    }
  };
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> ts;
    for (int t = 0; t < nthreads; ++t) ts.emplace_back(worker);
    for (auto& t : ts) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  SolveReport rep;
  const std::uint64_t b = best.load();
  if (b != std::numeric_limits<std::uint64_t>::max()) {
    rep = std::move(found.at(b));
    rep.guesses_tried = b + 1;
  } else {
    rep.status = any_inconclusive.load() ? SolveStatus::inconclusive : SolveStatus::unsatisfiable;
    rep.guesses_tried = total;
  }
  rep.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace rmq
