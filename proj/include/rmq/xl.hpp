#pragma once
#include <algorithm>
#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "rmq/bitmatrix.hpp"
#include "rmq/macaulay.hpp"
#include "rmq/modeling.hpp"

namespace rmq {

enum class SolveStatus { found, unsatisfiable, inconclusive };

struct SolveReport {
  SolveStatus status = SolveStatus::inconclusive;
  std::vector<RegularVector> solutions;
  int d_solv = 0;
  std::size_t max_rows = 0;  // rows fed to elimination at the widest degree
  std::size_t max_cols = 0;
  std::size_t guesses_tried = 1;
  double elapsed_s = 0.0;
};

namespace detail {

struct XlGen {
  std::vector<Mono> terms;  // sorted, block-collision free
  int deg = 0;
};

// Canonical reduction into the exactly-one quotient: monomials with two
// variables in one block vanish, equal terms cancel in pairs.
inline bool reduce_gen(std::vector<Mono>& terms) {
  std::sort(terms.begin(), terms.end());
  std::size_t o = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i;
    while (j < terms.size() && terms[j] == terms[i]) ++j;
    if ((j - i) & 1) terms[o++] = terms[i];
    i = j;
  }
  terms.resize(o);
  return !terms.empty();
}

}  // namespace detail

// Linearization-with-saturation solver over the exactly-one quotient ring.
// For each degree d the generator pool (input polynomials plus previously
// harvested low-degree rows) is expanded against all admissible monomial
// multipliers of the right degree, rows are echelonized incrementally, and
// any independent row of degree < d re-enters the pool at once. The affine
// rows of the stable basis either expose a contradiction or, once few enough
// variables are left free, leave a coset that is enumerated and verified
// against the instance; the degree counts as solved when the affine rank
// matches the affine hull of the verified solutions, so no later degree
// could tighten it.
using AssignmentDecoder =
    std::function<std::optional<RegularVector>(const std::vector<std::uint8_t>&)>;

inline SolveReport xl_solve(const PolySystem& sys, int d_max, const RmqInstance& inst,
                            std::size_t column_guard = kMacaulayColumnGuard,
                            const AssignmentDecoder& decoder = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  if (d_max < 2) throw std::invalid_argument("solver degree bound must be at least 2");
  SolveReport rep;
  const int nv = sys.nvars;
  auto decode = [&](const std::vector<std::uint8_t>& assign) {
    return decoder ? decoder(assign) : sys.layout.decode(assign, inst.l);
  };

  std::vector<Mono> block_masks;
  {
    int v = 0;
    for (const auto& b : sys.layout.blocks) {
      Mono m = 0;
      for (std::size_t k = 0; k < b.kept.size(); ++k, ++v) m |= Mono{1} << v;
      if (m) block_masks.push_back(m);
    }
    if (v != nv) throw std::logic_error("layout does not cover the system variables");
  }
  const int max_qdeg = static_cast<int>(block_masks.size());
  auto in_quotient = [&](Mono m) {
    for (Mono bm : block_masks)
      if (std::popcount(m & bm) > 1) return false;
    return true;
  };

  // monomials of the quotient basis, grouped by degree; generation stops as
  // soon as the cumulative count would blow the guard, and any degree that
  // needs the missing layers reports a size error below
  std::vector<std::vector<Mono>> monos_by_deg;
  monos_by_deg.push_back({0});
  {
    std::size_t cum = 1;
    for (int dd = 1; dd <= std::min(max_qdeg, d_max); ++dd) {
      std::vector<Mono> next;
      for (Mono m : monos_by_deg[dd - 1]) {
        const int lo = m ? 64 - std::countl_zero(m) : 0;
        for (int v = lo; v < nv; ++v) {
          const Mono nm = m | (Mono{1} << v);
          if (in_quotient(nm)) next.push_back(nm);
        }
      }
      std::sort(next.begin(), next.end());
      cum += next.size();
      if (cum > column_guard) break;
      monos_by_deg.push_back(std::move(next));
    }
  }
  const int gen_deg = static_cast<int>(monos_by_deg.size()) - 1;

  std::set<std::vector<Mono>> seen;
  std::vector<detail::XlGen> pool;
  for (const AnfPoly& p : sys.polys) {
    std::vector<Mono> terms;
    for (Mono t : p.terms())
      if (in_quotient(t)) terms.push_back(t);
    if (!detail::reduce_gen(terms)) continue;
    if (seen.insert(terms).second) {
      int deg = 0;
      for (Mono t : terms) deg = std::max(deg, std::popcount(t));
      pool.push_back({std::move(terms), deg});
    }
  }

  for (int d = 2; d <= d_max; ++d) {
    if (std::min(d, max_qdeg) > gen_deg)
      throw std::length_error("linearization exceeds the column guard");
    // column universe for this degree, highest degree first
    std::vector<Mono> columns;
    for (int dd = std::min(d, max_qdeg); dd >= 0; --dd)
      columns.insert(columns.end(), monos_by_deg[dd].begin(), monos_by_deg[dd].end());
    const std::size_t ncols = columns.size();
    std::unordered_map<Mono, std::uint32_t> colindex;
    colindex.reserve(ncols * 2);
    for (std::size_t i = 0; i < ncols; ++i) colindex.emplace(columns[i], static_cast<std::uint32_t>(i));
    const std::size_t affine_start = ncols - nv - 1;
    const std::size_t words = (ncols + 63) / 64;

    EchelonBasis basis(ncols);
    std::size_t rows_fed = 0;
    bool contradiction = false;

    std::deque<const detail::XlGen*> work;
    for (const auto& g : pool) work.push_back(&g);
    std::deque<detail::XlGen> harvested;  // stable addresses for the worklist

    std::vector<std::uint64_t> row(words);
    while (!work.empty() && !contradiction) {
      const detail::XlGen& g = *work.front();
      work.pop_front();
      if (g.deg > d) continue;
      for (int ud = 0; ud <= std::min(d - g.deg, gen_deg); ++ud) {
        for (Mono u : monos_by_deg[ud]) {
          std::fill(row.begin(), row.end(), 0);
          for (Mono t : g.terms) {
            const Mono m = u | t;
            if (!in_quotient(m)) continue;
            const std::uint32_t c = colindex.find(m)->second;
            row[c >> 6] ^= std::uint64_t{1} << (c & 63);
          }
          bool nonzero = false;
          for (std::uint64_t wd : row)
            if (wd) {
              nonzero = true;
              break;
            }
          if (!nonzero) continue;
          ++rows_fed;
          if (!basis.insert(row)) continue;
          const std::size_t lead = basis.leading_col(basis.rank() - 1);
          const int lead_deg = std::popcount(columns[lead]);
          if (lead_deg == 0) {
            contradiction = true;  // the constant reduced to 1
            break;
          }
          if (lead_deg >= d) continue;
          // harvest: decode the reduced row and let it multiply further
          std::vector<Mono> terms;
          const auto& r = basis.row(basis.rank() - 1);
          for (std::size_t wdx = 0; wdx < words; ++wdx) {
            std::uint64_t bits = r[wdx];
            while (bits) {
              terms.push_back(columns[(wdx << 6) + std::countr_zero(bits)]);
              bits &= bits - 1;
            }
          }
          std::sort(terms.begin(), terms.end());
          if (seen.insert(terms).second) {
            harvested.push_back({std::move(terms), lead_deg});
            work.push_back(&harvested.back());
          }
        }
        if (contradiction) break;
      }
    }
    for (auto& h : harvested) pool.push_back(std::move(h));

    if (rows_fed >= rep.max_rows) {
      rep.max_rows = rows_fed;
      rep.max_cols = ncols;
    }
    if (contradiction || basis.owner_of_col(ncols - 1) != EchelonBasis::npos) {
      rep.status = SolveStatus::unsatisfiable;
      rep.d_solv = d;
      break;
    }

    // affine rows: everything whose leading monomial has degree <= 1
    BitMatrix aff(0, nv + 1);
    {
      std::vector<std::vector<std::uint64_t>> arows;
      for (std::size_t i = 0; i < basis.rank(); ++i)
        if (basis.leading_col(i) >= affine_start) arows.push_back(basis.row(i));
      aff = BitMatrix(arows.size(), nv + 1);
      for (std::size_t i = 0; i < arows.size(); ++i) {
        for (int v = 0; v < nv; ++v)
          if ((arows[i][(affine_start + v) >> 6] >> ((affine_start + v) & 63)) & 1)
            aff.set(i, v, true);
        if ((arows[i][(ncols - 1) >> 6] >> ((ncols - 1) & 63)) & 1) aff.set(i, nv, true);
      }
    }
    const auto rr = aff.rref();
    int var_rank = 0;
    bool const_pivot = false;
    for (std::size_t i = 0; i < rr.rank; ++i) {
      if (rr.pivots[i] == static_cast<std::size_t>(nv))
        const_pivot = true;
      else
        ++var_rank;
    }
    if (const_pivot) {  // 0 = 1 among the affine rows
      rep.status = SolveStatus::unsatisfiable;
      rep.d_solv = d;
      break;
    }
    if (nv - var_rank <= 20) {
      // Every solution satisfies every affine consequence, so the coset of the
      // affine span always contains the full solution set; enumerating it and
      // keeping what verifies yields that set exactly.  Declare the degree
      // solved once the affine rank has converged to its ceiling
      // nv - affdim(solutions): past that point higher degrees add nothing the
      // affine rows can see, which is when an elimination-order basis
      // computation terminates.
      std::vector<int> free_vars;
      std::vector<std::uint8_t> is_pivot(nv, 0);
      for (std::size_t i = 0; i < rr.rank; ++i) is_pivot[rr.pivots[i]] = 1;
      for (int v = 0; v < nv; ++v)
        if (!is_pivot[v]) free_vars.push_back(v);
      std::vector<RegularVector> verified;
      EchelonBasis diffs(static_cast<std::size_t>(nv));
      std::vector<std::uint64_t> first_assign;
      std::vector<std::uint8_t> assign(nv, 0);
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_vars.size()); ++mask) {
        for (std::size_t i = 0; i < free_vars.size(); ++i)
          assign[free_vars[i]] = (mask >> i) & 1;
        for (std::size_t i = 0; i < rr.rank; ++i) {
          int acc = aff.get(i, nv);
          for (int fv : free_vars)
            if (aff.get(i, fv)) acc ^= assign[fv];
          assign[rr.pivots[i]] = static_cast<std::uint8_t>(acc);
        }
        const auto dec = decode(assign);
        if (dec && satisfies(inst, *dec)) {
          verified.push_back(*dec);
          std::vector<std::uint64_t> packed((nv + 63) / 64, 0);
          for (int v = 0; v < nv; ++v)
            if (assign[v]) packed[v >> 6] |= std::uint64_t{1} << (v & 63);
          if (first_assign.empty()) {
            first_assign = std::move(packed);
          } else {
            for (std::size_t wd = 0; wd < packed.size(); ++wd) packed[wd] ^= first_assign[wd];
            diffs.insert(packed);
          }
        }
      }
      if (verified.empty()) {
        rep.status = SolveStatus::unsatisfiable;
        rep.d_solv = d;
        break;
      }
      const int aff_dim = static_cast<int>(diffs.rank());
      if (var_rank == nv - aff_dim || d == d_max) {
        std::sort(verified.begin(), verified.end(),
                  [](const RegularVector& a, const RegularVector& b) { return a.positions < b.positions; });
        rep.solutions = std::move(verified);
        rep.status = SolveStatus::found;
        rep.d_solv = d;
        break;
      }
    }
  }

  rep.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// Smallest degree at which the multiplier set spans the entire quotient ring,
// making the solver exact: max generator degree + number of live blocks.
inline int xl_complete_degree(const PolySystem& sys) {
  int gd = 2, blocks = 0;
  for (const auto& p : sys.polys) gd = std::max(gd, p.degree());
  for (const auto& b : sys.layout.blocks)
    if (!b.kept.empty()) ++blocks;
  return gd + blocks;
}

}  // namespace rmq
