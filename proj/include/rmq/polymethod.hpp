#pragma once
#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "rmq/bitmatrix.hpp"
#include "rmq/instance.hpp"
#include "rmq/rng.hpp"

namespace rmq {

struct PolyMethodParams {
  double gamma = 1.0 / 3;  // fraction of windows summed out as z
  int l_prime = 0;         // even window length after zero-guessing; 0: derive
  int k = 0;               // subsystem size; 0: floor(gamma*w*lg l') + 2
  int t = 0;               // repetitions for the majority vote; 0: max(15, 2w+1)
  std::uint64_t seed = 1;
};

// Partial parity sums G(y) = sum over regular z of the identifying
// polynomial, tabulated on at-most-regular y-prefixes of weight <= d_G.
struct PartialParityTable {
  std::unordered_map<Mono, std::uint8_t> entries;
  int d_G = 0;
};

struct InconsistentDecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// k random F2-combinations of the instance polynomials with a full-rank
// coefficient matrix (resampled until the rank is k).
inline std::vector<QuadraticPoly> random_subsystem(const RmqInstance& inst, int k,
                                                   std::uint64_t seed) {
  const int m = inst.m;
  if (k < 1 || k >= m) throw std::invalid_argument("subsystem size must satisfy 1 <= k < m");
  SplitMix64 g{seed ? seed : 0x706f6c796d657468ULL};
  const std::size_t mwords = (static_cast<std::size_t>(m) + 63) / 64;
  std::vector<std::vector<std::uint64_t>> a;
  while (true) {
    a.assign(k, {});
    EchelonBasis rk(m);
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) {
      a[i] = detail::random_bits(g, m);
      a[i].resize(mwords);
      ok = rk.insert(a[i]);
    }
    if (ok) break;
  }
  std::vector<QuadraticPoly> out(k);
  for (int i = 0; i < k; ++i) {
    QuadraticPoly r;
    r.c = 0;
    r.lin.assign(inst.polys[0].lin.size(), 0);
    r.cross.assign(inst.polys[0].cross.size(), 0);
    for (int j = 0; j < m; ++j) {
      if (!((a[i][j >> 6] >> (j & 63)) & 1)) continue;
      const QuadraticPoly& p = inst.polys[j];
      r.c ^= p.c;
      for (std::size_t t2 = 0; t2 < r.lin.size(); ++t2) r.lin[t2] ^= p.lin[t2];
      for (std::size_t t2 = 0; t2 < r.cross.size(); ++t2) r.cross[t2] ^= p.cross[t2];
    }
    out[i] = std::move(r);
  }
  return out;
}

namespace detail {

// at-most-regular masks over (l, w) with at most d nonzero windows, weight
// ascending
inline std::vector<Mono> amr_masks_upto(int l, int w, int d) {
  std::vector<std::vector<Mono>> by_weight(std::min(d, w) + 1);
  by_weight[0] = {0};
  for (int i = 0; i < w; ++i) {
    for (int wt = static_cast<int>(by_weight.size()) - 1; wt >= 1; --wt) {
      for (Mono m : by_weight[wt - 1]) {
        // extend by one choice in window i; masks in by_weight only touch
        // windows < i because of the sweep order
        for (int j = 1; j <= l; ++j) by_weight[wt].push_back(m | (Mono{1} << var_index(l, i, j)));
      }
    }
  }
  std::vector<Mono> out;
  for (auto& v : by_weight) out.insert(out.end(), v.begin(), v.end());
  return out;
}

inline std::string format_prefix(Mono y, int l, int w) {
  std::string s = "(";
  for (int i = 0; i < w; ++i) {
    int pos = 0;
    for (int j = 1; j <= l; ++j)
      if ((y >> var_index(l, i, j)) & 1) pos = j;
    s += std::to_string(pos);
    s += (i + 1 < w) ? "," : ")";
  }
  return s;
}

}  // namespace detail

// Subset-sum recursion restricted to at-most-regular supports: recovers the
// multilinear coefficient a_S for every at-most-regular S with |S| <= d from
// the evaluations at indicator vectors of such supports.
inline std::unordered_map<Mono, std::uint8_t> regular_mobius_interpolate(
    const std::unordered_map<Mono, std::uint8_t>& evals, int l, int w, int d) {
  std::unordered_map<Mono, std::uint8_t> coeff;
  for (Mono s : detail::amr_masks_upto(l, w, d)) {  // weight-ascending
    const auto it = evals.find(s);
    if (it == evals.end())
      throw std::invalid_argument("missing evaluation for prefix " + detail::format_prefix(s, l, w));
    std::uint8_t c = it->second;
    if (s != 0) {
      for (Mono t = (s - 1) & s;; t = (t - 1) & s) {  // proper submasks
        c ^= coeff.at(t);
        if (t == 0) break;
      }
    }
    coeff.emplace(s, c);
  }
  return coeff;
}

namespace detail {

// Evaluate the identifying polynomial of the subsystem at a point.
inline int identifying_eval(const RmqInstance& inst, const std::vector<QuadraticPoly>& sub,
                            Mono point) {
  for (const QuadraticPoly& r : sub)
    if (eval_poly(r, point, inst.l, inst.w)) return 0;
  return 1;  // all combinations vanish
}

}  // namespace detail

// Tabulate G(y) = sum_{z regular} prod_i (1 + R_i(y, z)) over the last w_z
// windows, for every at-most-regular prefix y of weight <= d_G on the first
// w - w_z windows.
inline PartialParityTable partial_parity_table(const RmqInstance& inst,
                                               const std::vector<QuadraticPoly>& sub, int w_z,
                                               int d_G) {
  const int l = inst.l, w = inst.w;
  if (w_z < 1 || w_z >= w) throw std::invalid_argument("z-window count must be in [1, w-1]");
  const int w_y = w - w_z;
  PartialParityTable table;
  table.d_G = d_G;
  std::vector<int> zpos(w_z, 1);
  for (Mono y : detail::amr_masks_upto(l, w_y, std::min(d_G, w_y))) {
    int parity = 0;
    std::fill(zpos.begin(), zpos.end(), 1);
    while (true) {  // odometer over regular z assignments
      Mono x = y;
      for (int i = 0; i < w_z; ++i) x |= Mono{1} << var_index(l, w_y + i, zpos[i]);
      parity ^= detail::identifying_eval(inst, sub, x);
      int i = w_z - 1;
      while (i >= 0 && zpos[i] == l) zpos[i--] = 1;
      if (i < 0) break;
      ++zpos[i];
    }
    table.entries.emplace(y, static_cast<std::uint8_t>(parity));
  }
  return table;
}

namespace detail {

struct SplitChoice {
  int w_z = 0, w_y = 0, k = 0, d_G = 0;
};

inline SplitChoice split_for(double gamma, int w, int l, int m, int k_override) {
  SplitChoice sc;
  sc.w_z = std::clamp(static_cast<int>(gamma * w + 0.5), 1, w - 1);
  sc.w_y = w - sc.w_z;
  sc.k = k_override > 0 ? k_override
                        : static_cast<int>(gamma * w * std::log2(double(l))) + 2;
  if (sc.k >= m) sc.k = m - 1;  // keep the subsystem admissible at desk scale
  sc.d_G = std::min(2 * sc.k - sc.w_z, sc.w_y);
  if (sc.d_G < 0) sc.d_G = 0;
  return sc;
}

// Sum a reconstructed G over all regular y, reading the value at each y from
// the at-most-regular coefficients of weight <= d_G.
inline int sum_over_regular(const std::unordered_map<Mono, std::uint8_t>& coeff, int l, int w_y) {
  int total = 0;
  std::vector<int> pos(w_y, 1);
  while (true) {
    Mono y = 0;
    for (int i = 0; i < w_y; ++i) y |= Mono{1} << var_index(l, i, pos[i]);
    int v = 0;
    for (const auto& [s, c] : coeff)
      if (c && (s & ~y) == 0) v ^= 1;
    total ^= v;
    int i = w_y - 1;
    while (i >= 0 && pos[i] == l) pos[i--] = 1;
    if (i < 0) break;
    ++pos[i];
  }
  return total;
}

}  // namespace detail

// Parity of the number of regular solutions, computed t times independently
// and settled by majority vote. Requires an even window length and the
// admissible gamma range.
inline int regular_parity_count(const RmqInstance& inst, const PolyMethodParams& pm) {
  const int l = inst.l, w = inst.w;
  const int lp = pm.l_prime > 0 ? pm.l_prime : l;
  if (lp != l) throw std::invalid_argument("parity counting runs on the reduced instance itself");
  if (l % 2 != 0 || l < 2) throw std::invalid_argument("window length must be even (guess zeros first)");
  if (w < 2) throw std::invalid_argument("need at least two windows to split");
  if (pm.gamma < 0.0 || pm.gamma >= 1.0 / (2.0 * std::log2(double(l))))
    throw std::invalid_argument("gamma outside the admissible range");
  const detail::SplitChoice sc = detail::split_for(pm.gamma, w, l, inst.m, pm.k);
  if (sc.k < 1) throw std::invalid_argument("subsystem size must satisfy 1 <= k < m");
  const int t = pm.t > 0 ? pm.t : std::max(15, 2 * w + 1);

  int votes = 0;
  for (int rep = 0; rep < t; ++rep) {
    const auto sub = random_subsystem(inst, sc.k, mix_seed(pm.seed, rep));
    const auto table = partial_parity_table(inst, sub, sc.w_z, sc.d_G);
    const auto coeff = regular_mobius_interpolate(table.entries, l, sc.w_y, std::min(sc.d_G, sc.w_y));
    votes += detail::sum_over_regular(coeff, l, sc.w_y);
  }
  return votes > t / 2 ? 1 : 0;
}

namespace detail {

// Decision variant used inside the search: one reconstruction from a table
// whose entries are each settled by their own majority vote. Per-entry voting
// is what keeps the reconstruction stable: a single wrong entry flips the
// reconstructed parity, so voting on the final bit alone would not converge.
inline bool decision_even(const RmqInstance& inst, const PolyMethodParams& pm,
                          std::uint64_t seed) {
  const int l = inst.l, w = inst.w;
  const SplitChoice sc = split_for(pm.gamma, w, l, inst.m, pm.k > 0 ? pm.k : inst.m - 1);
  const int t = pm.t > 0 ? pm.t : std::max(15, 2 * w + 1);
  std::unordered_map<Mono, int> tally;
  for (int rep = 0; rep < t; ++rep) {
    const auto sub = random_subsystem(inst, sc.k, mix_seed(seed, rep));
    const auto table = partial_parity_table(inst, sub, sc.w_z, sc.d_G);
    for (const auto& [y, b] : table.entries) tally[y] += b;
  }
  std::unordered_map<Mono, std::uint8_t> voted;
  for (const auto& [y, c] : tally) voted.emplace(y, static_cast<std::uint8_t>(c > t / 2));
  const auto coeff = regular_mobius_interpolate(voted, l, sc.w_y, std::min(sc.d_G, sc.w_y));
  return sum_over_regular(coeff, l, sc.w_y) != 0;
}

inline bool decision_any(const RmqInstance& inst, const PolyMethodParams& pm, std::uint64_t seed) {
  const int l = inst.l, w = inst.w;
  if (w <= 2 || l < 2 || inst.m < 3) {
    // small enough to settle by enumeration
    return !brute_force_solve(inst).empty();
  }
  if (l % 2 == 0) return decision_even(inst, pm, seed);
  // odd window length: guess one zero per window, reducing to l - 1
  for (int pat = 0; pat < 100; ++pat) {
    SplitMix64 g{mix_seed(seed, 10'000 + pat)};
    std::vector<int> drop(w);
    for (int i = 0; i < w; ++i) drop[i] = 1 + static_cast<int>(g.below(static_cast<std::uint64_t>(l)));
    const RmqInstance red = drop_coordinate_per_block(inst, drop);
    if (decision_any(red, pm, mix_seed(seed, 20'000 + pat))) return true;
  }
  return false;
}

}  // namespace detail

// Search-to-decision loop: fix the nonzero position of one window at a time,
// keeping the branch whose reduced instance the decision accepts. Intended
// for instances with at most one regular solution.
inline std::optional<RegularVector> search_via_decision(const RmqInstance& inst,
                                                        const PolyMethodParams& pm) {
  const int l = inst.l, w = inst.w;
  RmqInstance cur = inst;
  std::vector<int> positions;
  std::uint64_t call = 0;
  for (int depth = 0; depth < w; ++depth) {
    int hit = 0;
    for (int j = 1; j <= l && !hit; ++j) {
      const RmqInstance forced = force_block(cur, 0, j);
      const bool sat = forced.w == 0 ? satisfies(forced, Mono{0})
                                     : detail::decision_any(forced, pm, mix_seed(pm.seed, ++call));
      if (sat) hit = j;
    }
    if (!hit) {
      if (depth == 0) return std::nullopt;
      throw InconsistentDecisionError(
          "every branch rejected below an accepted one (decision failure)");
    }
    positions.push_back(hit);
    cur = force_block(cur, 0, hit);
  }
  RegularVector v{l, w, positions};
  if (satisfies(inst, v)) return v;
  return std::nullopt;
}

}  // namespace rmq
