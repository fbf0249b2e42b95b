#include <catch2/catch_amalgamated.hpp>

#include <rmq/anf.hpp>
#include <rmq/bitmatrix.hpp>
#include <rmq/realpoly.hpp>
#include <rmq/rng.hpp>

#include <cmath>
#include <set>
#include <vector>

using namespace rmq;

namespace {

AnfPoly random_poly(int nvars, SplitMix64& g, int max_terms = 12) {
  std::vector<Mono> terms;
  const Mono universe = (nvars == 64) ? ~Mono{0} : ((Mono{1} << nvars) - 1);
  const int k = static_cast<int>(g.below(max_terms + 1));
  for (int i = 0; i < k; ++i) terms.push_back(g.next() & universe);
  return AnfPoly::from_terms(std::move(terms), nvars);
}

// Independent elimination oracle: plain bool-vector Gaussian elimination.
std::size_t naive_rank(std::vector<std::vector<bool>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t p = rank;
    while (p < rows.size() && !rows[p][c]) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rank && rows[r][c])
        for (std::size_t j = 0; j < cols; ++j) rows[r][j] = rows[r][j] ^ rows[rank][j];
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("splitmix stream is deterministic and seed-sensitive", "[algebra][rng]") {
  SplitMix64 a(123), b(123), c(124);
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t va = a.next();
    REQUIRE(va == b.next());
  }
  bool differs = false;
  SplitMix64 a2(123);
  for (int i = 0; i < 100; ++i) differs |= (a2.next() != c.next());
  CHECK(differs);

  // derived sub-streams: distinct indices give distinct streams, same index
  // gives the same stream
  CHECK(mix_seed(7, 0) == mix_seed(7, 0));
  CHECK(mix_seed(7, 0) != mix_seed(7, 1));
  CHECK(mix_seed(7, 0) != mix_seed(8, 0));
}

TEST_CASE("splitmix below() respects its bound", "[algebra][rng]") {
  SplitMix64 g(5);
  for (int i = 0; i < 1000; ++i) CHECK(g.below(17) < 17);
}

TEST_CASE("anf evaluation on hand examples", "[algebra][anf]") {
  CHECK_FALSE(AnfPoly::zero(4).eval(0b1010));
  CHECK(AnfPoly::one(4).eval(0));

  // x0*x2 + x1 at (1,0,1,0): product term is on, linear term off
  AnfPoly p = AnfPoly::from_terms({0b101, 0b010}, 4);
  CHECK(p.eval(0b0101));
  CHECK_FALSE(p.eval(0b0111));  // x1 now also set, parity cancels
}

TEST_CASE("anf ring operations agree with pointwise xor/and", "[algebra][anf]") {
  SplitMix64 g(0);
  for (int trial = 0; trial < 50; ++trial) {
    AnfPoly p = random_poly(5, g);
    AnfPoly q = random_poly(5, g);
    AnfPoly sum = p + q;
    AnfPoly prod = p * q;
    for (Mono v = 0; v < 32; ++v) {
      CHECK(sum.eval(v) == (p.eval(v) ^ q.eval(v)));
      CHECK(prod.eval(v) == (p.eval(v) && q.eval(v)));
    }
  }
}

TEST_CASE("anf product is squarefree", "[algebra][anf]") {
  AnfPoly x = AnfPoly::variable(0, 3);
  CHECK(x * x == x);
  AnfPoly p = AnfPoly::from_terms({0b011}, 3);
  CHECK((p * p) == p);
}

TEST_CASE("mobius transform basics and involution", "[algebra][mobius]") {
  std::vector<std::uint8_t> zero(8, 0);
  auto z = zero;
  mobius_transform(z);
  CHECK(z == zero);

  // n=1 identity function: truth table (0,1) -> ANF coefficients (0,1)
  std::vector<std::uint8_t> t{0, 1};
  mobius_transform(t);
  CHECK(t == std::vector<std::uint8_t>{0, 1});

  SplitMix64 g(0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::uint8_t> tab(16);
    for (auto& b : tab) b = g.bit();
    auto twice = tab;
    mobius_transform(twice);
    mobius_transform(twice);
    CHECK(twice == tab);
  }
}

TEST_CASE("truth table round-trips through anf", "[algebra][mobius]") {
  SplitMix64 g(1);
  for (int trial = 0; trial < 50; ++trial) {
    AnfPoly p = random_poly(3, g);
    auto tab = truth_table(p);
    REQUIRE(tab.size() == 8);
    for (Mono v = 0; v < 8; ++v) CHECK(tab[v] == static_cast<std::uint8_t>(p.eval(v)));
    CHECK(anf_from_truth_table(tab, 3) == p);
  }
}

TEST_CASE("rref on identity and zero matrices", "[algebra][bitmatrix]") {
  BitMatrix id(5, 5);
  for (int i = 0; i < 5; ++i) id.set(i, i, true);
  auto r = id.rref();
  CHECK(r.rank == 5);
  CHECK(r.pivots == std::vector<std::size_t>{0, 1, 2, 3, 4});

  BitMatrix z(4, 7);
  CHECK(z.rref().rank == 0);
}

TEST_CASE("rref rank matches an independent elimination", "[algebra][bitmatrix]") {
  SplitMix64 g(2);
  for (int trial = 0; trial < 10; ++trial) {
    BitMatrix m(20, 30);
    std::vector<std::vector<bool>> naive(20, std::vector<bool>(30));
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 30; ++j) {
        const bool b = g.bit();
        m.set(i, j, b);
        naive[i][j] = b;
      }
    auto r = m.rref();
    CHECK(r.rank == naive_rank(naive));

    // idempotence: eliminating the reduced matrix changes nothing
    BitMatrix copy = m;
    auto r2 = copy.rref();
    CHECK(r2.rank == r.rank);
    CHECK(r2.pivots == r.pivots);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) CHECK(copy.get(i, j) == m.get(i, j));
  }
}

TEST_CASE("echelon basis tracks rank incrementally", "[algebra][bitmatrix]") {
  EchelonBasis eb(128);
  auto rowbits = [&](std::initializer_list<int> cols) {
    std::vector<std::uint64_t> r(eb.words(), 0);
    for (int c : cols) r[c >> 6] |= std::uint64_t{1} << (c & 63);
    return r;
  };
  CHECK(eb.insert(rowbits({3, 70})));
  CHECK(eb.insert(rowbits({3, 90})));
  CHECK_FALSE(eb.insert(rowbits({70, 90})));  // xor of the first two
  CHECK(eb.rank() == 2);
  CHECK(eb.owner_of_col(3) == 0);

  // reduce() returns the residue without inserting
  auto res = eb.reduce(rowbits({3, 70, 100}));
  std::size_t setcnt = 0;
  for (auto w : res) setcnt += std::popcount(w);
  CHECK(setcnt == 1);  // only column 100 survives
  CHECK(eb.rank() == 2);
}

TEST_CASE("binary entropy values and domain", "[algebra][realpoly]") {
  CHECK(entropy(0.0) == 0.0);
  CHECK(entropy(1.0) == 0.0);
  CHECK(entropy(0.5) == Catch::Approx(1.0));
  CHECK(entropy(0.09) == Catch::Approx(0.43646).margin(1e-4));
  CHECK(entropy_star(0.7) == 1.0);
  CHECK(entropy_star(0.3) == Catch::Approx(entropy(0.3)));
  CHECK_THROWS_AS(entropy(-0.1), std::domain_error);
  CHECK_THROWS_AS(entropy(1.1), std::domain_error);
  CHECK_THROWS_AS(entropy_star(2.0), std::domain_error);
}

TEST_CASE("smallest positive root isolation", "[algebra][realpoly]") {
  RealPoly sq(std::vector<long double>{-1.0L, 0.0L, 1.0L});  // z^2 - 1
  auto r = smallest_positive_root(sq);
  REQUIRE(r.has_value());
  CHECK(*r == Catch::Approx(1.0).margin(1e-9));

  RealPoly nopos(std::vector<long double>{1.0L, 0.0L, 1.0L});  // z^2 + 1
  CHECK_FALSE(smallest_positive_root(nopos).has_value());

  // quartic with a tiny positive root next to larger structure
  RealPoly quart(std::vector<long double>{-0.125L, 2.5L, 6.0L, 4.0L, 4.0L});
  auto rq = smallest_positive_root(quart);
  REQUIRE(rq.has_value());
  CHECK(*rq == Catch::Approx(0.04500).margin(1e-4));

  CHECK_THROWS_AS(smallest_positive_root(RealPoly{}), std::invalid_argument);
}

TEST_CASE("resultant detects common roots", "[algebra][realpoly]") {
  RealPoly f(std::vector<long double>{-1.0L, 0.0L, 1.0L});  // z^2 - 1
  RealPoly g1(std::vector<long double>{-1.0L, 1.0L});       // z - 1, shares a root
  RealPoly g2(std::vector<long double>{-2.0L, 1.0L});       // z - 2, does not
  CHECK(std::abs(static_cast<double>(resultant_value(f, g1))) < 1e-9);
  CHECK(static_cast<double>(resultant_value(f, g2)) == Catch::Approx(3.0).margin(1e-9));
}

TEST_CASE("polynomial interpolation recovers exact coefficients", "[algebra][realpoly]") {
  auto value = [](long double x) { return 2.0L - x + 3.0L * x * x * x; };
  RealPoly p = interpolate_polynomial(value, 3);
  REQUIRE(p.degree() == 3);
  CHECK(static_cast<double>(p.coeff(0)) == Catch::Approx(2.0).margin(1e-9));
  CHECK(static_cast<double>(p.coeff(1)) == Catch::Approx(-1.0).margin(1e-9));
  CHECK(static_cast<double>(p.coeff(2)) == Catch::Approx(0.0).margin(1e-9));
  CHECK(static_cast<double>(p.coeff(3)) == Catch::Approx(3.0).margin(1e-9));
}

TEST_CASE("parametric discriminant via resultant interpolation", "[algebra][realpoly]") {
  // g(z; t) = z^2 - t: Res_z(g, g') = -4t up to sign convention; the root in t
  // is exactly the parameter where the double root appears.
  auto fam = [](long double t) { return RealPoly(std::vector<long double>{-t, 0.0L, 1.0L}); };
  RealPoly res = resultant_with_derivative(fam, 3);
  REQUIRE(res.degree() >= 1);
  CHECK(std::abs(static_cast<double>(res.eval(0.0L))) < 1e-9);
  CHECK(std::abs(static_cast<double>(res.eval(1.0L))) > 1e-9);
}
