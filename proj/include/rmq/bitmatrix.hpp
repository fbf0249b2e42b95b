#pragma once
#include <bit>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <vector>

namespace rmq {

// Dense bit matrix over F2, row-major, 64 columns per word. The elimination
// kernels below are deliberately simple word-parallel XOR; at desk scale
// (<= a few 10^4 x 10^5) this beats anything cleverer we would maintain.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words() const { return words_; }

  bool get(std::size_t r, std::size_t c) const {
    return (bits_[r * words_ + (c >> 6)] >> (c & 63)) & 1;
  }
  void set(std::size_t r, std::size_t c, bool v) {
    std::uint64_t& w = bits_[r * words_ + (c >> 6)];
    const std::uint64_t m = std::uint64_t{1} << (c & 63);
    w = v ? (w | m) : (w & ~m);
  }
  void flip(std::size_t r, std::size_t c) {
    bits_[r * words_ + (c >> 6)] ^= std::uint64_t{1} << (c & 63);
  }

  std::uint64_t* row(std::size_t r) { return bits_.data() + r * words_; }
  const std::uint64_t* row(std::size_t r) const { return bits_.data() + r * words_; }

  void xor_rows(std::size_t dst, std::size_t src) {
    std::uint64_t* d = row(dst);
    const std::uint64_t* s = row(src);
    for (std::size_t i = 0; i < words_; ++i) d[i] ^= s[i];
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::uint64_t* pa = row(a);
    std::uint64_t* pb = row(b);
    for (std::size_t i = 0; i < words_; ++i) std::swap(pa[i], pb[i]);
  }

  bool row_is_zero(std::size_t r) const {
    const std::uint64_t* p = row(r);
    for (std::size_t i = 0; i < words_; ++i)
      if (p[i]) return false;
    return true;
  }

  // First set column of row r, or cols() if the row is zero.
  std::size_t row_leading(std::size_t r) const {
    const std::uint64_t* p = row(r);
    for (std::size_t i = 0; i < words_; ++i)
      if (p[i]) return (i << 6) + std::countr_zero(p[i]);
    return cols_;
  }

  struct RrefResult {
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;  // strictly increasing pivot columns
  };

  // In-place Gauss-Jordan. Afterwards rows [0, rank) form the reduced
  // row-echelon basis and rows [rank, rows) are zero; row space is preserved.
  RrefResult rref() {
    RrefResult res;
    std::size_t next_row = 0;
    for (std::size_t c = 0; c < cols_ && next_row < rows_; ++c) {
      std::size_t pr = next_row;
      while (pr < rows_ && !get(pr, c)) ++pr;
      if (pr == rows_) continue;
      swap_rows(pr, next_row);
      for (std::size_t r = 0; r < rows_; ++r)
        if (r != next_row && get(r, c)) xor_rows(r, next_row);
      res.pivots.push_back(c);
      ++next_row;
    }
    res.rank = next_row;
    return res;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0, words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Incremental echelon basis over a fixed column universe. Rows are fed one at
// a time; each is reduced against the current basis and either absorbed
// (rank + 1) or discarded. This is the workhorse of the XL loop: saturation
// passes keep inserting into the same basis without re-eliminating.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t cols)
      : cols_(cols), words_((cols + 63) / 64), owner_of_col_(cols, npos) {}

  std::size_t cols() const { return cols_; }
  std::size_t words() const { return words_; }
  std::size_t rank() const { return rows_.size(); }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  const std::vector<std::uint64_t>& row(std::size_t i) const { return rows_[i]; }
  std::size_t leading_col(std::size_t i) const { return leading_[i]; }
  std::size_t owner_of_col(std::size_t c) const { return owner_of_col_[c]; }

  // Reduce `r` (length words()) against the basis; returns true and keeps the
  // reduced row if it was independent.
  bool insert(std::vector<std::uint64_t> r) {
    std::size_t lead;
    while ((lead = leading_of(r)) != npos) {
      const std::size_t owner = owner_of_col_[lead];
      if (owner == npos) {
        owner_of_col_[lead] = rows_.size();
        leading_.push_back(lead);
        rows_.push_back(std::move(r));
        return true;
      }
      const std::vector<std::uint64_t>& b = rows_[owner];
      for (std::size_t i = 0; i < words_; ++i) r[i] ^= b[i];
    }
    return false;
  }

  // Reduce a copy of `r` without inserting; the residue is returned.
  std::vector<std::uint64_t> reduce(std::vector<std::uint64_t> r) const {
    std::size_t lead;
    while ((lead = leading_of(r)) != npos) {
      const std::size_t owner = owner_of_col_[lead];
      if (owner == npos) break;
      const std::vector<std::uint64_t>& b = rows_[owner];
      for (std::size_t i = 0; i < words_; ++i) r[i] ^= b[i];
    }
    return r;
  }

 private:
  std::size_t leading_of(const std::vector<std::uint64_t>& r) const {
    for (std::size_t i = 0; i < words_; ++i)
      if (r[i]) return (i << 6) + std::countr_zero(r[i]);
    return npos;
  }

  std::size_t cols_, words_;
  std::vector<std::size_t> owner_of_col_;   // column -> basis row owning it
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<std::size_t> leading_;
};

}  // namespace rmq
