#pragma once
#include <optional>
#include <stdexcept>
#include <vector>

#include "rmq/anf.hpp"
#include "rmq/instance.hpp"

namespace rmq {

// Per-block coordinate indices (1-based) forced to zero before solving.
struct GuessPattern {
  std::vector<std::vector<int>> zeroed;  // size w

  // fraction of blocks left with lp free coordinates, indexed 1..l
  std::vector<double> gamma_counts(int l) const {
    std::vector<double> g(l + 1, 0.0);
    for (const auto& z : zeroed) g[l - static_cast<int>(z.size())] += 1.0 / zeroed.size();
    return g;
  }
};

enum class PolyLabel { init, field_eq, quad_constraint, linear_constraint, guess };

// Maps system variables back to original block coordinates. One coordinate
// per block may be substituted out via the block's linear constraint; guessed
// coordinates are zero; everything else is a free system variable.
struct BlockLayout {
  struct Block {
    std::vector<int> kept;   // 1-based coords, ascending; system vars in this order
    int eliminated = 0;      // 1-based coord replaced by 1 + sum(kept); 0 = none
    std::vector<int> zeroed;
  };
  std::vector<Block> blocks;
  int nvars = 0;

  // Reconstructs the full regular vector from an assignment of the system
  // variables; returns nothing when some block is not exactly-one.
  std::optional<RegularVector> decode(const std::vector<std::uint8_t>& vars, int l) const {
    RegularVector out{l, static_cast<int>(blocks.size()), {}};
    int v = 0;
    for (const auto& b : blocks) {
      int pos = 0, ones = 0, sum = 0;
      for (std::size_t k = 0; k < b.kept.size(); ++k, ++v) {
        if (vars[v]) {
          ++ones;
          pos = b.kept[k];
          sum ^= 1;
        }
      }
      if (b.eliminated && !sum) {  // eliminated coordinate = 1 + sum(kept)
        ++ones;
        pos = b.eliminated;
      }
      if (ones != 1) return std::nullopt;
      out.positions.push_back(pos);
    }
    return out;
  }
};

struct PolySystem {
  int nvars = 0;
  std::vector<AnfPoly> polys;
  std::vector<PolyLabel> labels;
  BlockLayout layout;
};

// Modeling of the regular constraint: the instance equations plus, per block,
// all intra-block quadratic monomials (exactly-one implies products vanish)
// and the affine equation sum(block) + 1. Field equations are implicit in the
// squarefree ANF representation. With eliminate_linear one coordinate per
// block (the highest unguessed one) is substituted out, leaving l-1 variables
// per untouched block.
inline PolySystem build_modeling(const RmqInstance& inst,
                                 const GuessPattern* guess = nullptr,
                                 bool eliminate_linear = true) {
  if (inst.q != 2) throw std::invalid_argument("modeling requires q = 2");
  const int l = inst.l, w = inst.w, n = l * w;
  std::vector<std::vector<int>> zeroed(w);
  if (guess) {
    if (static_cast<int>(guess->zeroed.size()) != w)
      throw std::invalid_argument("guess pattern arity mismatch");
    zeroed = guess->zeroed;
    for (auto& z : zeroed) {
      std::sort(z.begin(), z.end());
      if (std::adjacent_find(z.begin(), z.end()) != z.end())
        throw std::invalid_argument("guess repeats a coordinate");
      for (int j : z)
        if (j < 1 || j > l) throw std::invalid_argument("guess coordinate out of range");
      if (static_cast<int>(z.size()) >= l)
        throw std::invalid_argument("guess eliminates an entire block");
    }
  }

  std::vector<AnfPoly> polys;
  std::vector<PolyLabel> labels;
  for (const auto& p : inst.polys) {
    polys.push_back(to_anf(p, l, w));
    labels.push_back(PolyLabel::init);
  }
  for (int i = 0; i < w; ++i)
    for (int j1 = 1; j1 <= l; ++j1)
      for (int j2 = j1 + 1; j2 <= l; ++j2) {
        polys.push_back(AnfPoly::from_terms(
            {(Mono{1} << var_index(l, i, j1)) | (Mono{1} << var_index(l, i, j2))}, n));
        labels.push_back(PolyLabel::quad_constraint);
      }
  for (int i = 0; i < w; ++i) {
    std::vector<Mono> t{0};
    for (int j = 1; j <= l; ++j) t.push_back(Mono{1} << var_index(l, i, j));
    polys.push_back(AnfPoly::from_terms(std::move(t), n));
    labels.push_back(PolyLabel::linear_constraint);
  }
  if (guess)
    for (int i = 0; i < w; ++i)
      for (int j : zeroed[i]) {
        polys.push_back(AnfPoly::variable(var_index(l, i, j), n));
        labels.push_back(PolyLabel::guess);
      }

  PolySystem sys;
  if (!eliminate_linear) {
    sys.nvars = n;
    sys.polys = std::move(polys);
    sys.labels = std::move(labels);
    // Every coordinate (guessed or not) stays a system variable; the guess
    // polynomials carry the constraint.
    sys.layout.blocks.resize(w);
    sys.layout.nvars = n;
    for (int i = 0; i < w; ++i)
      for (int j = 1; j <= l; ++j) sys.layout.blocks[i].kept.push_back(j);
    return sys;
  }

  // Elimination: zero the guessed coordinates, then substitute the highest
  // free coordinate of each block using the block's linear constraint.
  BlockLayout layout;
  layout.blocks.resize(w);
  for (int i = 0; i < w; ++i) {
    auto& b = layout.blocks[i];
    b.zeroed = zeroed[i];
    for (int j = 1; j <= l; ++j)
      if (std::find(zeroed[i].begin(), zeroed[i].end(), j) == zeroed[i].end())
        b.kept.push_back(j);
    b.eliminated = b.kept.back();
    b.kept.pop_back();
  }
  const AnfPoly zero = AnfPoly::zero(n);
  for (int i = 0; i < w; ++i)
    for (int j : zeroed[i])
      for (auto& p : polys) p = p.substitute_var(var_index(l, i, j), zero);
  for (int i = 0; i < w; ++i) {
    const auto& b = layout.blocks[i];
    std::vector<Mono> repl{0};
    for (int j : b.kept) repl.push_back(Mono{1} << var_index(l, i, j));
    const AnfPoly r = AnfPoly::from_terms(std::move(repl), n);
    for (auto& p : polys) p = p.substitute_var(var_index(l, i, b.eliminated), r);
  }

  // Renumber the surviving variables block-major.
  std::vector<int> newvar(n, -1);
  int nv = 0;
  for (int i = 0; i < w; ++i)
    for (int j : layout.blocks[i].kept) newvar[var_index(l, i, j)] = nv++;
  layout.nvars = nv;
  sys.nvars = nv;
  sys.layout = std::move(layout);
  for (std::size_t pi = 0; pi < polys.size(); ++pi) {
    if (polys[pi].is_zero()) continue;  // e.g. l = 2 block constraints die here
    std::vector<Mono> terms;
    terms.reserve(polys[pi].term_count());
    for (Mono t : polys[pi].terms()) {
      Mono nt = 0;
      while (t) {
        const int v = std::countr_zero(t);
        t &= t - 1;
        nt |= Mono{1} << newvar[v];  // substitutions removed all dead variables
      }
      terms.push_back(nt);
    }
    sys.polys.push_back(AnfPoly::from_terms(std::move(terms), nv));
    sys.labels.push_back(labels[pi]);
  }
  return sys;
}

}  // namespace rmq
