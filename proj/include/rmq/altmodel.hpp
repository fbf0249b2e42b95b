#pragma once
#include <bit>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmq/anf.hpp"
#include "rmq/hilbert.hpp"
#include "rmq/instance.hpp"
#include "rmq/xl.hpp"

namespace rmq {

struct AltParams {
  int s = 1;        // window length l = 2^s
  int s_prime = 1;  // free encoded bits per window after specialization
  int w = 1;
  int m = 0;
};

// Degree-2s encoding of an instance: s bits per window instead of l one-hot
// coordinates.
struct DegreeSystem {
  int nvars = 0;  // s * w
  std::vector<AnfPoly> polys;
  RmqInstance origin;
};

namespace detail {

inline int log2_exact(int l) {
  if (l < 2 || (l & (l - 1)) != 0)
    throw std::invalid_argument("window length must be a power of two");
  return std::countr_zero(static_cast<unsigned>(l));
}

}  // namespace detail

// The l entries of the encoding map: entry j is prod_a (x'_a + bin_a(j-1)).
// Together they form the indicator basis of F2^s (each point of F2^s makes
// exactly one entry evaluate to 1).
inline std::vector<AnfPoly> encode_map_g(int l) {
  const int s = detail::log2_exact(l);
  std::vector<AnfPoly> out;
  out.reserve(l);
  for (int j = 0; j < l; ++j) {
    AnfPoly p = AnfPoly::one(s);
    for (int a = 0; a < s; ++a) {
      AnfPoly factor = AnfPoly::variable(a, s);
      if ((j >> a) & 1) factor = factor + AnfPoly::one(s);
      p = p * factor;
    }
    out.push_back(std::move(p));
  }
  return out;
}

// Position j of window i maps to bits bin(j-1) on the window's s encoded
// variables, and back.
inline RegularVector decode_solution(const std::vector<std::uint8_t>& vp, int l) {
  const int s = detail::log2_exact(l);
  if (vp.size() % s != 0) throw std::invalid_argument("bit sequence length must be a multiple of s");
  const int w = static_cast<int>(vp.size()) / s;
  RegularVector v{l, w, {}};
  for (int i = 0; i < w; ++i) {
    int val = 0;
    for (int a = 0; a < s; ++a) val |= static_cast<int>(vp[i * s + a]) << a;
    v.positions.push_back(1 + val);
  }
  return v;
}

inline std::vector<std::uint8_t> encode_solution(const RegularVector& v) {
  const int s = detail::log2_exact(v.l);
  std::vector<std::uint8_t> vp(static_cast<std::size_t>(s) * v.w);
  for (int i = 0; i < v.w; ++i)
    for (int a = 0; a < s; ++a) vp[i * s + a] = static_cast<std::uint8_t>(((v.positions[i] - 1) >> a) & 1);
  return vp;
}

// Rewrite each instance polynomial over the encoded variables. The composed
// polynomial is read off its full truth table: T(x') = P(v(x')) where v(x')
// is the regular vector whose window positions decode from x'. Degree <= 2s
// because each original monomial touches at most two windows.
inline DegreeSystem transform_instance(const RmqInstance& inst) {
  if (inst.q != 2) throw std::invalid_argument("transform requires q = 2");
  const int s = detail::log2_exact(inst.l);
  const int sw = s * inst.w;
  if (sw > 24) throw std::length_error("encoded variable count too large for the truth-table route");
  DegreeSystem ds;
  ds.nvars = sw;
  ds.origin = inst;
  std::vector<std::uint8_t> table(std::size_t{1} << sw);
  for (const QuadraticPoly& p : inst.polys) {
    for (std::uint32_t xp = 0; xp < table.size(); ++xp) {
      Mono point = 0;
      for (int i = 0; i < inst.w; ++i) {
        const int val = (xp >> (i * s)) & ((1 << s) - 1);
        point |= Mono{1} << var_index(inst.l, i, 1 + val);
      }
      table[xp] = eval_poly(p, point, inst.l, inst.w);
    }
    ds.polys.push_back(anf_from_truth_table(table, sw));
  }
  return ds;
}

// Fix chosen encoded variables to constants (the hybrid specialization).
inline DegreeSystem specialize_degree_system(const DegreeSystem& ds,
                                             const std::vector<std::pair<int, int>>& fixed) {
  DegreeSystem out = ds;
  for (auto [v, bit] : fixed) {
    if (v < 0 || v >= ds.nvars) throw std::invalid_argument("specialized variable out of range");
    const AnfPoly repl = bit ? AnfPoly::one(ds.nvars) : AnfPoly::zero(ds.nvars);
    for (AnfPoly& p : out.polys) p = p.substitute_var(v, repl);
  }
  return out;
}

// Solve the transformed system with the same linearization engine, every
// encoded bit being its own block (plain squarefree monomials), and decode
// candidates through the bit convention.
inline SolveReport alt_solve(const RmqInstance& inst, int d_max = 0,
                             std::size_t column_guard = kMacaulayColumnGuard) {
  const int s = detail::log2_exact(inst.l);
  const DegreeSystem ds = transform_instance(inst);
  PolySystem sys;
  sys.nvars = ds.nvars;
  sys.polys = ds.polys;
  sys.labels.assign(ds.polys.size(), PolyLabel::init);
  sys.layout.nvars = ds.nvars;
  sys.layout.blocks.resize(ds.nvars);
  for (auto& b : sys.layout.blocks) b.kept = {1};
  const int dm = d_max > 0 ? d_max : ds.nvars + 2 * s;
  const int l = inst.l;
  return xl_solve(sys, dm, inst, column_guard,
                  [l](const std::vector<std::uint8_t>& assign) {
                    return std::optional<RegularVector>(decode_solution(assign, l));
                  });
}

// Exponent pattern of a homogenized monomial: squarefree encoded part plus
// the homogenizer power.
struct ExponentPattern {
  Mono xmask = 0;
  int yexp = 0;
};

// Degree-d monomials that stay outside the transformed ideal: those whose
// combined degree on every pair of windows, plus the homogenizer exponent,
// stays below 2s.
inline std::vector<ExponentPattern> enumerate_non_admissible(int s, int w, int d) {
  const int sw = s * w;
  if (sw > 32 || d > 40) throw std::length_error("non-admissible enumeration guard");
  std::vector<ExponentPattern> out;
  std::vector<Mono> layer{0};
  for (int wt = 0; wt <= std::min(d, sw); ++wt) {
    if (wt > 0) {
      std::vector<Mono> next;
      for (Mono m : layer) {
        const int lo = m ? 64 - std::countl_zero(m) : 0;
        for (int v = lo; v < sw; ++v) next.push_back(m | (Mono{1} << v));
      }
      layer = std::move(next);
    }
    const int yexp = d - wt;
    for (Mono m : layer) {
      // two largest window degrees decide all pairs
      int top1 = 0, top2 = 0;
      for (int i = 0; i < w; ++i) {
        const Mono wm = ((Mono{1} << s) - 1) << (i * s);
        const int di = std::popcount(m & wm);
        if (di >= top1) {
          top2 = top1;
          top1 = di;
        } else if (di > top2) {
          top2 = di;
        }
      }
      if (w >= 2 && top1 + top2 + yexp < 2 * s) out.push_back({m, yexp});
    }
  }
  return out;
}

// Empirical Heuristic-1 check: Hilbert function of the homogenized
// transformed system versus max(truncated generic series, |M_NA(d)|).
// Homogenized monomials are pairs (squarefree mask, homogenizer power); at a
// fixed total degree the power is determined by the mask, so ranks are
// computed over mask columns with the product rule S1 * S2 = S1 ∪ S2.
inline double alt_hilbert_check(int s, int w, int m, int d, const std::vector<std::uint64_t>& seeds) {
  const int l = 1 << s, sw = s * w;
  if (d < 0) throw std::invalid_argument("negative degree");

  // series (1+z)^{sw} / ((1-z) (1+z^{2s})^m), coefficients 0..d
  std::vector<long long> c(d + 1, 0);
  c[0] = 1;
  for (int rep = 0; rep < sw; ++rep)
    for (int i = d; i >= 1; --i) c[i] += c[i - 1];
  for (int i = 1; i <= d; ++i) c[i] += c[i - 1];  // divide by (1-z)
  for (int rep = 0; rep < m; ++rep)
    for (int i = 2 * s; i <= d; ++i) c[i] -= c[i - 2 * s];
  long long series_d = c[d];
  for (int i = 0; i <= d; ++i)
    if (c[i] <= 0) {  // truncate the series at its first nonpositive term
      series_d = 0;
      break;
    }
  const long long mna = static_cast<long long>(enumerate_non_admissible(s, w, d).size());
  const long long expected = std::max(series_d, mna);

  // column universe: squarefree masks of weight <= min(d, sw)
  std::vector<Mono> cols;
  {
    std::vector<Mono> layer{0};
    cols.push_back(0);
    for (int wt = 1; wt <= std::min(d, sw); ++wt) {
      std::vector<Mono> next;
      for (Mono mm : layer) {
        const int lo = mm ? 64 - std::countl_zero(mm) : 0;
        for (int v = lo; v < sw; ++v) next.push_back(mm | (Mono{1} << v));
      }
      layer = std::move(next);
      cols.insert(cols.end(), layer.begin(), layer.end());
    }
    std::sort(cols.begin(), cols.end());
    if (cols.size() > kMacaulayColumnGuard) throw std::length_error("probe exceeds the column guard");
  }

  int pass = 0;
  for (std::uint64_t seed : seeds) {
    const RmqInstance inst = plant_instance(l, w, m, seed);
    const DegreeSystem ds = transform_instance(inst);
    EchelonBasis basis(cols.size());
    const std::size_t words = (cols.size() + 63) / 64;
    std::vector<std::uint64_t> row(words);
    for (const AnfPoly& p : ds.polys) {
      if (p.is_zero()) continue;
      // generators are homogenized at their formal degree 2s even when
      // cancellation lowers the actual degree; padding by actual degree
      // would let rows touch non-admissible columns
      const int pd = 2 * s;
      if (pd > d) continue;
      // multipliers: any squarefree mask of weight <= d - pd (the homogenizer
      // exponent fills the rest)
      std::vector<Mono> mlayer{0};
      for (int wt = 0; wt <= std::min(d - pd, sw); ++wt) {
        if (wt > 0) {
          std::vector<Mono> next;
          for (Mono mm : mlayer) {
            const int lo = mm ? 64 - std::countl_zero(mm) : 0;
            for (int v = lo; v < sw; ++v) next.push_back(mm | (Mono{1} << v));
          }
          mlayer = std::move(next);
        }
        for (Mono u : mlayer) {
          std::fill(row.begin(), row.end(), 0);
          for (Mono t : p.terms()) {
            const Mono mm = u | t;
            const auto it = std::lower_bound(cols.begin(), cols.end(), mm);
            const std::size_t ci = static_cast<std::size_t>(it - cols.begin());
            row[ci >> 6] ^= std::uint64_t{1} << (ci & 63);
          }
          bool any = false;
          for (std::uint64_t wd : row)
            if (wd) {
              any = true;
              break;
            }
          if (any) basis.insert(row);
        }
      }
    }
    const long long hf = static_cast<long long>(cols.size()) - static_cast<long long>(basis.rank());
    if (hf == expected) ++pass;
  }
  return seeds.empty() ? 0.0 : static_cast<double>(pass) / seeds.size();
}

// One poly per line: degree, then the monomials as comma-joined variable
// indices separated by ';' ("c" marks the constant term).
inline std::string render_degree_system(const DegreeSystem& ds) {
  std::string out;
  for (const AnfPoly& p : ds.polys) {
    out += std::to_string(std::max(p.degree(), 0));
    out += ": ";
    bool first_term = true;
    for (Mono t : p.terms()) {
      if (!first_term) out += " ; ";
      first_term = false;
      if (t == 0) {
        out += "c";
        continue;
      }
      bool first_var = true;
      while (t) {
        if (!first_var) out += ",";
        first_var = false;
        out += std::to_string(std::countr_zero(t));
        t &= t - 1;
      }
    }
    out += "\n";
  }
  return out;
}

}  // namespace rmq
