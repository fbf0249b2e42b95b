#pragma once
#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "rmq/bitmatrix.hpp"
#include "rmq/modeling.hpp"

namespace rmq {

inline constexpr std::size_t kMacaulayColumnGuard = 2'000'000;

// All squarefree monomials of degree <= d over nvars variables, degree first,
// then numerically within a degree.
inline std::vector<Mono> squarefree_monomials_upto(int nvars, int d) {
  std::vector<Mono> out;
  out.push_back(0);
  std::vector<Mono> layer{0};
  for (int deg = 1; deg <= std::min(d, nvars); ++deg) {
    std::vector<Mono> next;
    for (Mono m : layer) {
      const int lo = m ? 64 - std::countl_zero(m) : 0;
      for (int v = lo; v < nvars; ++v) next.push_back(m | (Mono{1} << v));
    }
    std::sort(next.begin(), next.end());
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

struct MacaulayMatrix {
  BitMatrix matrix{0, 0};
  std::vector<Mono> columns;                        // graded, then numeric
  std::vector<std::pair<int, Mono>> row_origins;    // (generator index, multiplier)
};

// Degree-d linearization: one row per product multiplier * generator with the
// multiplier degree bounded by d minus the generator degree, reduced under
// x^2 = x. Identical rows are emitted once.
inline MacaulayMatrix macaulay_matrix(const PolySystem& sys, int d) {
  if (d < 0) throw std::invalid_argument("negative degree");
  const int n = sys.nvars;
  MacaulayMatrix out;
  std::size_t ncols = 0;
  double binom = 1;
  for (int i = 0; i <= std::min(d, n); ++i) {
    ncols += static_cast<std::size_t>(binom + 0.5);
    binom = binom * (n - i) / (i + 1);
    if (ncols > kMacaulayColumnGuard)
      throw std::length_error("linearization exceeds the column guard");
  }
  out.columns = squarefree_monomials_upto(n, d);

  std::vector<std::pair<std::vector<Mono>, std::pair<int, Mono>>> rows;
  std::set<std::vector<Mono>> seen;
  for (std::size_t gi = 0; gi < sys.polys.size(); ++gi) {
    const AnfPoly& g = sys.polys[gi];
    if (g.is_zero()) continue;
    const int gd = g.degree();
    for (Mono u : squarefree_monomials_upto(n, d - gd)) {
      std::vector<Mono> prod;
      prod.reserve(g.term_count());
      for (Mono t : g.terms()) prod.push_back(t | u);
      std::sort(prod.begin(), prod.end());
      // x^2 = x merges terms; equal terms cancel in pairs over F2
      std::vector<Mono> red;
      for (std::size_t i = 0; i < prod.size();) {
        std::size_t j = i;
        while (j < prod.size() && prod[j] == prod[i]) ++j;
        if ((j - i) & 1) red.push_back(prod[i]);
        i = j;
      }
      if (red.empty()) continue;
      if (seen.insert(red).second) rows.emplace_back(std::move(red), std::make_pair(static_cast<int>(gi), u));
    }
  }

  out.matrix = BitMatrix(rows.size(), out.columns.size());
  MonoGradedLess less;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (Mono t : rows[r].first) {
      const auto it = std::lower_bound(out.columns.begin(), out.columns.end(), t, less);
      out.matrix.set(r, static_cast<std::size_t>(it - out.columns.begin()), true);
    }
    out.row_origins.push_back(rows[r].second);
  }
  return out;
}

// Word-model cost of one elimination pass on the degree-d linearization:
// 3 * average row weight * (column count)^2. The equation count m does not
// enter; it is part of the call shape for symmetry with the solver entry
// points.
inline double macaulay_cost(int nvars, int m, int d, double avg_row_terms) {
  if (nvars <= 0 || m <= 0 || d <= 0 || avg_row_terms <= 0)
    throw std::invalid_argument("cost parameters must be positive");
  double ncols = 0, binom = 1;
  for (int i = 0; i <= std::min(d, nvars); ++i) {
    ncols += binom;
    binom = binom * (nvars - i) / (i + 1);
  }
  return 3.0 * avg_row_terms * ncols * ncols;
}

}  // namespace rmq
