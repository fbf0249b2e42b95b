#pragma once
#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace rmq {

// A monomial over at most 64 boolean variables: bit i set <=> x_i present.
// Field equations x_i^2 = x_i are baked in, so everything is squarefree and
// multiplication of monomials is bitwise OR.
using Mono = std::uint64_t;

inline int mono_degree(Mono m) { return std::popcount(m); }

// Total order used for matrix columns: by degree, then by mask value.
// Any fixed tie-break works; this one is cheap and documented in the README.
struct MonoGradedLess {
  bool operator()(Mono a, Mono b) const {
    const int da = std::popcount(a), db = std::popcount(b);
    if (da != db) return da < db;
    return a < b;
  }
};

inline bool parity64(std::uint64_t x) { return std::popcount(x) & 1; }

// Polynomial in algebraic normal form: a set of monomials with XOR-set
// (symmetric difference) addition. Terms are kept strictly increasing by mask
// value; an empty term list is the zero polynomial, deg(0) = -1.
class AnfPoly {
 public:
  AnfPoly() = default;
  explicit AnfPoly(int nvars) : nvars_(nvars) { check_nvars(nvars); }

  static AnfPoly zero(int nvars) { return AnfPoly(nvars); }

  static AnfPoly one(int nvars) {
    AnfPoly p(nvars);
    p.terms_.push_back(0);
    return p;
  }

  static AnfPoly variable(int v, int nvars) {
    AnfPoly p(nvars);
    if (v < 0 || v >= nvars) throw std::invalid_argument("variable index out of range");
    p.terms_.push_back(Mono{1} << v);
    return p;
  }

  //  Takes an arbitrary multiset of monomials; duplicates cancel mod 2.
  static AnfPoly from_terms(std::vector<Mono> terms, int nvars) {
    AnfPoly p(nvars);
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  int nvars() const { return nvars_; }
  const std::vector<Mono>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const { return terms_.size() == 1 && terms_[0] == 0; }
  std::size_t term_count() const { return terms_.size(); }

  int degree() const {
    int d = -1;
    for (Mono t : terms_) d = std::max(d, mono_degree(t));
    return d;
  }

  bool has_term(Mono t) const {
    return std::binary_search(terms_.begin(), terms_.end(), t);
  }

  // Evaluation at a 0/1 point given as a bit mask.
  bool eval(Mono point) const {
    int acc = 0;
    for (Mono t : terms_) acc ^= static_cast<int>((t & ~point) == 0);
    return acc & 1;
  }

  AnfPoly operator+(const AnfPoly& o) const {
    require_same_vars(o);
    AnfPoly r(nvars_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::set_symmetric_difference(terms_.begin(), terms_.end(), o.terms_.begin(),
                                  o.terms_.end(), std::back_inserter(r.terms_));
    return r;
  }

  AnfPoly& operator+=(const AnfPoly& o) {
    *this = *this + o;
    return *this;
  }

  // Product with x^2 = x: monomial product is OR. No degree cap; callers
  // truncate if they need to.
  AnfPoly operator*(const AnfPoly& o) const {
    require_same_vars(o);
    std::vector<Mono> acc;
    acc.reserve(terms_.size() * o.terms_.size());
    for (Mono a : terms_)
      for (Mono b : o.terms_) acc.push_back(a | b);
    return from_terms(std::move(acc), nvars_);
  }

  // Product in the graded quotient x^2 = 0 (used by homogeneous Hilbert
  // probes, where x^2 = x would destroy the grading). Overlapping terms die.
  AnfPoly mul_strict(const AnfPoly& o) const {
    require_same_vars(o);
    std::vector<Mono> acc;
    for (Mono a : terms_)
      for (Mono b : o.terms_)
        if ((a & b) == 0) acc.push_back(a | b);
    return from_terms(std::move(acc), nvars_);
  }

  // x_v := repl, squarefree semantics. repl must live in the same variable
  // space; the substituted variable may appear in repl.
  AnfPoly substitute_var(int v, const AnfPoly& repl) const {
    require_same_vars(repl);
    const Mono vbit = Mono{1} << v;
    std::vector<Mono> acc;
    for (Mono t : terms_) {
      if (!(t & vbit)) {
        acc.push_back(t);
        continue;
      }
      const Mono rest = t & ~vbit;
      for (Mono r : repl.terms_) acc.push_back(rest | r);
    }
    return from_terms(std::move(acc), nvars_);
  }

  bool operator==(const AnfPoly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }

 private:
  static void check_nvars(int nvars) {
    if (nvars < 0 || nvars > 64) throw std::invalid_argument("nvars must be in [0, 64]");
  }
  void require_same_vars(const AnfPoly& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("variable-count mismatch");
  }
  void normalize() {
    std::sort(terms_.begin(), terms_.end());
    std::vector<Mono> out;
    out.reserve(terms_.size());
    for (std::size_t i = 0; i < terms_.size();) {
      std::size_t j = i;
      while (j < terms_.size() && terms_[j] == terms_[i]) ++j;
      if ((j - i) & 1) out.push_back(terms_[i]);
      i = j;
    }
    terms_ = std::move(out);
  }

  std::vector<Mono> terms_;
  int nvars_ = 0;
};

// In-place truth-table <-> ANF-coefficient conversion over F2 (the XOR
// butterfly). Self-inverse. table.size() must be a power of two.
inline void mobius_transform(std::vector<std::uint8_t>& table) {
  const std::size_t n = table.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("table length must be a power of two");
  for (std::size_t step = 1; step < n; step <<= 1)
    for (std::size_t m = 0; m < n; ++m)
      if (m & step) table[m] ^= table[m ^ step];
}

inline std::vector<std::uint8_t> truth_table(const AnfPoly& p) {
  if (p.nvars() > 24) throw std::invalid_argument("truth table too large");
  std::vector<std::uint8_t> t(std::size_t{1} << p.nvars());
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = p.eval(static_cast<Mono>(x));
  return t;
}

inline AnfPoly anf_from_truth_table(std::vector<std::uint8_t> table, int nvars) {
  if (table.size() != (std::size_t{1} << nvars))
    throw std::invalid_argument("table length must be 2^nvars");
  mobius_transform(table);
  std::vector<Mono> terms;
  for (std::size_t m = 0; m < table.size(); ++m)
    if (table[m]) terms.push_back(static_cast<Mono>(m));
  return AnfPoly::from_terms(std::move(terms), nvars);
}

}  // namespace rmq
