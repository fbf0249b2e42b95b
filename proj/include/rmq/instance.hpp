#pragma once
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmq/anf.hpp"
#include "rmq/rng.hpp"

namespace rmq {

// One nonzero position per length-l window. Positions are 1-based (1..l),
// matching the instance file format; var_index converts to flat 0-based
// variable numbering.
struct RegularVector {
  int l = 0;
  int w = 0;
  std::vector<int> positions;  // size w, each in 1..l

  bool operator==(const RegularVector&) const = default;

  Mono to_mask() const {
    Mono m = 0;
    for (int i = 0; i < w; ++i) m |= Mono{1} << (i * l + positions[i] - 1);
    return m;
  }
};

inline int var_index(int l, int block, int coord1) {  // coord1 is 1-based
  return block * l + coord1 - 1;
}

inline bool is_regular(Mono v, int l, int n) {
  if (l <= 0 || n % l != 0) throw std::invalid_argument("l must divide length");
  for (int i = 0; i < n / l; ++i) {
    const Mono blk = (v >> (i * l)) & ((l == 64) ? ~Mono{0} : ((Mono{1} << l) - 1));
    if (std::popcount(blk) != 1) return false;
  }
  return true;
}

inline bool is_at_most_regular(Mono v, int l, int n) {
  if (l <= 0 || n % l != 0) throw std::invalid_argument("l must divide length");
  for (int i = 0; i < n / l; ++i) {
    const Mono blk = (v >> (i * l)) & ((l == 64) ? ~Mono{0} : ((Mono{1} << l) - 1));
    if (std::popcount(blk) > 1) return false;
  }
  return true;
}

inline double uniqueness_mu(int l, int q = 2) {
  if (l < 2 || q < 2) throw std::invalid_argument("need l >= 2, q >= 2");
  if (q == 2) return std::log2(static_cast<double>(l)) / l;
  return std::log(static_cast<double>((q - 1)) * l) / std::log(static_cast<double>(q)) / l;
}

// Equation count used for the small-scale degree experiments: 1.2x the
// uniqueness bound w*log2(l), rounded up. Exact integer arithmetic for powers
// of two so borderline products do not pick up a spurious +1 from rounding.
inline int table_equation_count(int l, int w) {
  if ((l & (l - 1)) == 0) {
    int s = std::countr_zero(static_cast<unsigned>(l));
    return (6 * w * s + 4) / 5;
  }
  return static_cast<int>(std::ceil(1.2 * w * std::log2(static_cast<double>(l)) - 1e-9));
}

// Quadratic polynomial in the regular-friendly shape: constant + linear +
// cross terms between distinct blocks only (no intra-block quadratic
// coefficient exists in the representation). Bit layouts:
//   linear: bit (i*l + j-1) is the coefficient of x_{i,j}
//   cross:  pairs ordered by block pair (i1<i2) lexicographic, then (j1,j2)
//           row-major; see cross_index.
struct QuadraticPoly {
  std::uint8_t c = 0;
  std::vector<std::uint64_t> lin;
  std::vector<std::uint64_t> cross;
};

inline std::size_t cross_pair_count(int l, int w) {
  return static_cast<std::size_t>(w) * (w - 1) / 2 * l * l;
}

inline std::size_t cross_index(int l, int w, int i1, int i2, int j1, int j2) {
  // i1 < i2 blocks (0-based), j1/j2 coordinates (1-based).
  const std::size_t pair_base =
      static_cast<std::size_t>(i1) * (2 * w - i1 - 1) / 2 + (i2 - i1 - 1);
  return (pair_base * l + (j1 - 1)) * l + (j2 - 1);
}

inline bool get_bit(const std::vector<std::uint64_t>& v, std::size_t i) {
  return (v[i >> 6] >> (i & 63)) & 1;
}
inline void set_bit(std::vector<std::uint64_t>& v, std::size_t i, bool b) {
  std::uint64_t& w = v[i >> 6];
  const std::uint64_t m = std::uint64_t{1} << (i & 63);
  w = b ? (w | m) : (w & ~m);
}

struct RmqInstance {
  int q = 2;
  int l = 0;
  int w = 0;
  int m = 0;
  std::uint64_t seed = 0;
  std::vector<QuadraticPoly> polys;
  std::optional<RegularVector> planted;

  int nvars() const { return l * w; }
};

namespace detail {
inline std::vector<std::uint64_t> random_bits(SplitMix64& g, std::size_t nbits) {
  std::vector<std::uint64_t> v((nbits + 63) / 64, 0);
  for (auto& word : v) word = g.next();
  if (nbits % 64 != 0 && !v.empty()) v.back() &= (std::uint64_t{1} << (nbits % 64)) - 1;
  return v;
}
}  // namespace detail

// Evaluation of one polynomial at an arbitrary 0/1 point (mask over n vars).
inline bool eval_poly(const QuadraticPoly& p, Mono point, int l, int w) {
  int acc = p.c ^ std::popcount(p.lin[0] & point);  // n <= 64: one linear word
  // cross terms: set bits of the point grouped by block
  std::vector<std::pair<int, int>> ones;  // (block, coord1)
  Mono v = point;
  while (v) {
    const int b = std::countr_zero(v);
    if (b >= l * w) break;
    ones.emplace_back(b / l, b % l + 1);
    v &= v - 1;
  }
  for (std::size_t a = 0; a < ones.size(); ++a)
    for (std::size_t b = a + 1; b < ones.size(); ++b) {
      const auto [i1, j1] = ones[a];
      const auto [i2, j2] = ones[b];
      if (i1 == i2) continue;
      acc ^= get_bit(p.cross, cross_index(l, w, i1, i2, j1, j2));
    }
  return acc & 1;
}

inline std::vector<std::uint8_t> evaluate_instance(const RmqInstance& inst, Mono point) {
  std::vector<std::uint8_t> res(inst.m);
  for (int i = 0; i < inst.m; ++i)
    res[i] = eval_poly(inst.polys[i], point, inst.l, inst.w);
  return res;
}

inline bool satisfies(const RmqInstance& inst, Mono point) {
  for (const auto& p : inst.polys)
    if (eval_poly(p, point, inst.l, inst.w)) return false;
  return true;
}

inline bool satisfies(const RmqInstance& inst, const RegularVector& v) {
  return satisfies(inst, v.to_mask());
}

inline RegularVector random_regular_vector(int l, int w, std::uint64_t seed) {
  if (l < 2 || w < 1) throw std::invalid_argument("need l >= 2, w >= 1");
  SplitMix64 g(seed);
  RegularVector v{l, w, {}};
  v.positions.reserve(w);
  for (int i = 0; i < w; ++i) v.positions.push_back(1 + static_cast<int>(g.below(l)));
  return v;
}

// Planted generation: draw the planted regular vector, then for each
// polynomial draw linear and cross coefficients uniformly and set the
// constant to the evaluation of the random part at the planted vector.
// RNG call order (frozen, documented in the README): planted positions,
// then per poly linear words low-to-high followed by cross words low-to-high.
inline RmqInstance plant_instance(int l, int w, int m, std::uint64_t seed) {
  if (l < 2 || w < 1 || m < 1) throw std::invalid_argument("need l >= 2, w >= 1, m >= 1");
  if (l * w > 64) throw std::invalid_argument("l*w must be <= 64");
  SplitMix64 g(seed);
  RmqInstance inst;
  inst.q = 2;
  inst.l = l;
  inst.w = w;
  inst.m = m;
  inst.seed = seed;
  RegularVector planted{l, w, {}};
  for (int i = 0; i < w; ++i) planted.positions.push_back(1 + static_cast<int>(g.below(l)));
  const Mono pv = planted.to_mask();
  const std::size_t nlin = static_cast<std::size_t>(l) * w;
  const std::size_t ncross = cross_pair_count(l, w);
  inst.polys.reserve(m);
  for (int i = 0; i < m; ++i) {
    QuadraticPoly p;
    p.lin = detail::random_bits(g, nlin);
    p.cross = detail::random_bits(g, ncross);
    p.c = 0;
    p.c = eval_poly(p, pv, l, w);  // now p(planted) = c XOR c = 0
    inst.polys.push_back(std::move(p));
  }
  inst.planted = std::move(planted);
  return inst;
}

inline std::vector<RegularVector> brute_force_solve(const RmqInstance& inst) {
  double space = std::pow(static_cast<double>(inst.l), inst.w);
  if (space > static_cast<double>(1 << 28)) throw std::length_error("search space exceeds guard");
  std::vector<RegularVector> out;
  RegularVector v{inst.l, inst.w, std::vector<int>(inst.w, 1)};
  while (true) {
    if (satisfies(inst, v.to_mask())) out.push_back(v);
    int i = inst.w - 1;
    while (i >= 0 && v.positions[i] == inst.l) v.positions[i--] = 1;
    if (i < 0) break;
    ++v.positions[i];
  }
  return out;
}

// Pin block `block` to position `pos1`: substitute that block's coordinates
// and drop it, producing an instance on w-1 windows.
inline RmqInstance force_block(const RmqInstance& inst, int block, int pos1) {
  if (block < 0 || block >= inst.w || pos1 < 1 || pos1 > inst.l)
    throw std::invalid_argument("bad block/position");
  const int l = inst.l, w = inst.w;
  RmqInstance out;
  out.q = inst.q;
  out.l = l;
  out.w = w - 1;
  out.m = inst.m;
  out.seed = inst.seed;
  auto new_block = [&](int i) { return i < block ? i : i - 1; };
  const std::size_t nlin = static_cast<std::size_t>(l) * out.w;
  const std::size_t ncross = cross_pair_count(l, out.w);
  for (const auto& p : inst.polys) {
    QuadraticPoly np;
    np.lin.assign((nlin + 63) / 64, 0);
    np.cross.assign(std::max<std::size_t>((ncross + 63) / 64, 1), 0);
    np.c = p.c ^ static_cast<std::uint8_t>(get_bit(p.lin, var_index(l, block, pos1)));
    for (int i = 0; i < w; ++i) {
      if (i == block) continue;
      for (int j = 1; j <= l; ++j) {
        bool bit = get_bit(p.lin, var_index(l, i, j));
        // absorb cross terms against the pinned coordinate
        if (i < block)
          bit ^= get_bit(p.cross, cross_index(l, w, i, block, j, pos1));
        else
          bit ^= get_bit(p.cross, cross_index(l, w, block, i, pos1, j));
        if (bit) set_bit(np.lin, var_index(l, new_block(i), j), true);
      }
    }
    for (int i1 = 0; i1 < w; ++i1) {
      if (i1 == block) continue;
      for (int i2 = i1 + 1; i2 < w; ++i2) {
        if (i2 == block) continue;
        for (int j1 = 1; j1 <= l; ++j1)
          for (int j2 = 1; j2 <= l; ++j2)
            if (get_bit(p.cross, cross_index(l, w, i1, i2, j1, j2)))
              set_bit(np.cross,
                      cross_index(l, out.w, new_block(i1), new_block(i2), j1, j2), true);
      }
    }
    out.polys.push_back(std::move(np));
  }
  if (inst.planted && inst.planted->positions[block] == pos1) {
    RegularVector pl{l, out.w, {}};
    for (int i = 0; i < w; ++i)
      if (i != block) pl.positions.push_back(inst.planted->positions[i]);
    out.planted = std::move(pl);
  }
  return out;
}

// Substitute x_{i, drop1[i]} = 0 in every block, producing an instance with
// window length l-1 (used to reduce odd l to even for parity counting).
inline RmqInstance drop_coordinate_per_block(const RmqInstance& inst,
                                             const std::vector<int>& drop1) {
  if (static_cast<int>(drop1.size()) != inst.w) throw std::invalid_argument("need one coordinate per block");
  const int l = inst.l, w = inst.w, nl = l - 1;
  if (nl < 1) throw std::invalid_argument("cannot shrink below 1");
  RmqInstance out;
  out.q = inst.q;
  out.l = nl;
  out.w = w;
  out.m = inst.m;
  out.seed = inst.seed;
  // coordinate remap per block: old 1-based j -> new 1-based j' (0 = dropped)
  auto remap = [&](int i, int j) { return j < drop1[i] ? j : (j == drop1[i] ? 0 : j - 1); };
  const std::size_t nlin = static_cast<std::size_t>(nl) * w;
  const std::size_t ncross = cross_pair_count(nl, w);
  for (const auto& p : inst.polys) {
    QuadraticPoly np;
    np.c = p.c;
    np.lin.assign((nlin + 63) / 64, 0);
    np.cross.assign(std::max<std::size_t>((ncross + 63) / 64, 1), 0);
    for (int i = 0; i < w; ++i)
      for (int j = 1; j <= l; ++j) {
        const int jj = remap(i, j);
        if (jj && get_bit(p.lin, var_index(l, i, j)))
          set_bit(np.lin, var_index(nl, i, jj), true);
      }
    for (int i1 = 0; i1 < w; ++i1)
      for (int i2 = i1 + 1; i2 < w; ++i2)
        for (int j1 = 1; j1 <= l; ++j1) {
          const int jj1 = remap(i1, j1);
          if (!jj1) continue;
          for (int j2 = 1; j2 <= l; ++j2) {
            const int jj2 = remap(i2, j2);
            if (jj2 && get_bit(p.cross, cross_index(l, w, i1, i2, j1, j2)))
              set_bit(np.cross, cross_index(nl, w, i1, i2, jj1, jj2), true);
          }
        }
    out.polys.push_back(std::move(np));
  }
  if (inst.planted) {
    RegularVector pl{nl, w, std::vector<int>(w)};
    bool alive = true;
    for (int i = 0; i < w && alive; ++i) {
      const int jj = remap(i, inst.planted->positions[i]);
      if (!jj) alive = false;
      pl.positions[i] = jj;
    }
    if (alive) out.planted = std::move(pl);
  }
  return out;
}

// Conversion to a generic ANF polynomial over the l*w flat variables.
inline AnfPoly to_anf(const QuadraticPoly& p, int l, int w) {
  const int n = l * w;
  std::vector<Mono> terms;
  if (p.c) terms.push_back(0);
  for (int v = 0; v < n; ++v)
    if (get_bit(p.lin, v)) terms.push_back(Mono{1} << v);
  for (int i1 = 0; i1 < w; ++i1)
    for (int i2 = i1 + 1; i2 < w; ++i2)
      for (int j1 = 1; j1 <= l; ++j1)
        for (int j2 = 1; j2 <= l; ++j2)
          if (get_bit(p.cross, cross_index(l, w, i1, i2, j1, j2)))
            terms.push_back((Mono{1} << var_index(l, i1, j1)) |
                            (Mono{1} << var_index(l, i2, j2)));
  return AnfPoly::from_terms(std::move(terms), n);
}

// --- MQ -> RMQ reduction -------------------------------------------------
//
// Embeds an arbitrary quadratic boolean system into an RMQ instance with one
// window per original variable: x_a maps to the first coordinate of block a,
// and a solution v maps to blocks (v_a, v_a + 1, 0, ..., 0).
struct MqEmbedding {
  RmqInstance instance;  // skeleton: no planted vector

  RegularVector forward(Mono v) const {
    RegularVector r{instance.l, instance.w, {}};
    for (int a = 0; a < instance.w; ++a)
      r.positions.push_back(((v >> a) & 1) ? 1 : 2);
    return r;
  }

  Mono backward(const RegularVector& r) const {
    Mono v = 0;
    for (int a = 0; a < instance.w; ++a)
      if (r.positions[a] == 1) v |= Mono{1} << a;
    return v;
  }
};

inline MqEmbedding mq_to_rmq_reduction(const std::vector<AnfPoly>& mq, int l) {
  if (mq.empty()) throw std::invalid_argument("empty system");
  const int nv = mq.front().nvars();
  if (l < 2 || nv < 1 || nv * l > 64) throw std::invalid_argument("bad geometry");
  MqEmbedding emb;
  RmqInstance& inst = emb.instance;
  inst.q = 2;
  inst.l = l;
  inst.w = nv;
  inst.m = static_cast<int>(mq.size());
  inst.seed = 0;
  const std::size_t nlin = static_cast<std::size_t>(l) * nv;
  const std::size_t ncross = cross_pair_count(l, nv);
  for (const auto& f : mq) {
    if (f.nvars() != nv) throw std::invalid_argument("variable-count mismatch");
    if (f.degree() > 2) throw std::invalid_argument("system must be quadratic");
    QuadraticPoly p;
    p.lin.assign((nlin + 63) / 64, 0);
    p.cross.assign(std::max<std::size_t>((ncross + 63) / 64, 1), 0);
    for (Mono t : f.terms()) {
      const int d = mono_degree(t);
      if (d == 0) {
        p.c ^= 1;
      } else if (d == 1) {
        const int a = std::countr_zero(t);
        set_bit(p.lin, var_index(l, a, 1), !get_bit(p.lin, var_index(l, a, 1)));
      } else {
        const int a = std::countr_zero(t);
        const int b = 63 - std::countl_zero(t);
        const std::size_t ci = cross_index(l, nv, a, b, 1, 1);
        set_bit(p.cross, ci, !get_bit(p.cross, ci));
      }
    }
    inst.polys.push_back(std::move(p));
  }
  return emb;
}

}  // namespace rmq
