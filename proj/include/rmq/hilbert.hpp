#pragma once
#include <stdexcept>
#include <vector>

#include "rmq/bitmatrix.hpp"
#include "rmq/instance.hpp"
#include "rmq/macaulay.hpp"

namespace rmq {

struct HilbertProbe {
  int degree = 0;
  std::size_t dimension = 0;  // HF(degree)
};

namespace detail {

// degree-exactly-d squarefree monomials
inline std::vector<Mono> squarefree_monomials_exact(int nvars, int d) {
  std::vector<Mono> out;
  if (d == 0) return {0};
  if (d > nvars) return out;
  std::vector<Mono> layer{0};
  for (int deg = 1; deg <= d; ++deg) {
    std::vector<Mono> next;
    for (Mono m : layer) {
      const int lo = m ? 64 - std::countl_zero(m) : 0;
      for (int v = lo; v < nvars; ++v) next.push_back(m | (Mono{1} << v));
    }
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

}  // namespace detail

// Dimension count in the squarefree quotient with x_i^2 = 0: HF(d) equals the
// number of degree-d squarefree monomials minus the rank of all degree-d
// products multiplier * generator (strict products, overlapping supports
// vanish). Generators must be homogeneous or the grading is meaningless.
inline HilbertProbe hilbert_function_probe(const std::vector<AnfPoly>& gens, int nvars, int d) {
  if (d < 0) throw std::invalid_argument("negative degree");
  for (const AnfPoly& g : gens) {
    int dd = -1;
    for (Mono t : g.terms()) {
      const int td = std::popcount(t);
      if (dd == -1) dd = td;
      if (td != dd) throw std::invalid_argument("generators must be homogeneous");
    }
  }
  const std::vector<Mono> cols = detail::squarefree_monomials_exact(nvars, d);
  if (cols.empty()) return {d, 0};
  std::size_t ncols_check = cols.size();
  if (ncols_check > kMacaulayColumnGuard) throw std::length_error("probe exceeds the column guard");

  EchelonBasis basis(cols.size());
  const std::size_t words = (cols.size() + 63) / 64;
  std::vector<std::uint64_t> row(words);
  MonoGradedLess less;
  for (const AnfPoly& g : gens) {
    if (g.is_zero()) continue;
    const int gd = g.degree();
    if (gd > d) continue;
    for (Mono u : detail::squarefree_monomials_exact(nvars, d - gd)) {
      std::fill(row.begin(), row.end(), 0);
      bool any = false;
      for (Mono t : g.terms()) {
        if (u & t) continue;  // x^2 = 0
        const Mono m = u | t;
        const auto it = std::lower_bound(cols.begin(), cols.end(), m, less);
        const std::size_t c = static_cast<std::size_t>(it - cols.begin());
        row[c >> 6] ^= std::uint64_t{1} << (c & 63);
        any = true;
      }
      if (any) basis.insert(row);
    }
  }
  return {d, cols.size() - basis.rank()};
}

inline HilbertProbe hilbert_function_probe(const PolySystem& sys, int d) {
  return hilbert_function_probe(sys.polys, sys.nvars, d);
}

// Homogeneous structured part of the exactly-one modeling: all intra-block
// quadratic monomials plus the per-block linear forms sum(block). Its Hilbert
// function is the coefficient sequence of (1+(l-1)z)^w.
inline std::vector<AnfPoly> structured_part_generators(int l, int w) {
  const int n = l * w;
  if (n > 64) throw std::invalid_argument("n = l*w exceeds 64");
  std::vector<AnfPoly> gens;
  for (int i = 0; i < w; ++i)
    for (int j1 = 1; j1 <= l; ++j1)
      for (int j2 = j1 + 1; j2 <= l; ++j2)
        gens.push_back(AnfPoly::from_terms(
            {(Mono{1} << var_index(l, i, j1)) | (Mono{1} << var_index(l, i, j2))}, n));
  for (int i = 0; i < w; ++i) {
    std::vector<Mono> t;
    for (int j = 1; j <= l; ++j) t.push_back(Mono{1} << var_index(l, i, j));
    gens.push_back(AnfPoly::from_terms(std::move(t), n));
  }
  return gens;
}

// Degree-2 part of an instance polynomial (the cross-block terms).
inline AnfPoly quadratic_top_part(const QuadraticPoly& p, int l, int w) {
  const int n = l * w;
  std::vector<Mono> terms;
  for (int i1 = 0; i1 < w; ++i1)
    for (int i2 = i1 + 1; i2 < w; ++i2)
      for (int j1 = 1; j1 <= l; ++j1)
        for (int j2 = 1; j2 <= l; ++j2)
          if (get_bit(p.cross, cross_index(l, w, i1, i2, j1, j2)))
            terms.push_back((Mono{1} << var_index(l, i1, j1)) | (Mono{1} << var_index(l, i2, j2)));
  return AnfPoly::from_terms(std::move(terms), n);
}

// Coefficients 0..d of (1+(l-1)z)^w / (1+z^2)^m, the expected Hilbert
// function once m generic quadratic top parts join the structured part.
// Negative or zero coefficients mark the regularity degree; callers truncate.
inline std::vector<long long> structured_series_coefficients(int l, int w, int m, int d) {
  std::vector<long long> num(d + 1, 0);
  num[0] = 1;
  for (int rep = 0; rep < w; ++rep)
    for (int i = d; i >= 1; --i) num[i] += static_cast<long long>(l - 1) * num[i - 1];
  // divide by (1+z^2) m times: c'_i = c_i - c'_{i-2}
  for (int rep = 0; rep < m; ++rep)
    for (int i = 2; i <= d; ++i) num[i] -= num[i - 2];
  return num;
}

}  // namespace rmq
