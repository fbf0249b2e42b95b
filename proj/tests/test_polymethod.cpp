#include <catch2/catch_amalgamated.hpp>

#include <rmq/polymethod.hpp>

#include <cmath>
#include <map>

using namespace rmq;

namespace {

// identifying polynomial of a subsystem: 1 iff every combination vanishes
int all_vanish(const RmqInstance& inst, const std::vector<QuadraticPoly>& sub, Mono point) {
  for (const QuadraticPoly& r : sub)
    if (eval_poly(r, point, inst.l, inst.w)) return 0;
  return 1;
}

Mono pack(const RegularVector& v) {
  Mono pt = 0;
  for (int i = 0; i < v.w; ++i) pt |= Mono{1} << (i * v.l + v.positions[i] - 1);
  return pt;
}

RmqInstance with_contradiction(RmqInstance inst) {
  QuadraticPoly one;
  one.c = 1;
  one.lin.assign(inst.polys[0].lin.size(), 0);
  one.cross.assign(inst.polys[0].cross.size(), 0);
  inst.polys.push_back(one);
  inst.m += 1;
  inst.planted.reset();
  return inst;
}

}  // namespace

TEST_CASE("subsystem combinations preserve solutions", "[polymethod]") {
  RmqInstance inst = plant_instance(3, 3, 10, 4);
  const Mono planted = pack(*inst.planted);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto sub = random_subsystem(inst, 4, seed);
    REQUIRE(sub.size() == 4);
    CHECK(all_vanish(inst, sub, planted) == 1);
  }
  CHECK_THROWS_AS(random_subsystem(inst, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_subsystem(inst, inst.m, 1), std::invalid_argument);
}

TEST_CASE("single combination is not the zero polynomial", "[polymethod]") {
  RmqInstance inst = plant_instance(3, 2, 4, 9);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto sub = random_subsystem(inst, 1, seed);
    bool nonzero = sub[0].c != 0;
    for (auto wd : sub[0].lin) nonzero |= (wd != 0);
    for (auto wd : sub[0].cross) nonzero |= (wd != 0);
    CHECK(nonzero);
  }
}

TEST_CASE("non-solutions slip through at the expected rate", "[polymethod]") {
  RmqInstance inst = plant_instance(3, 3, 10, 4);
  // a regular point that genuinely violates the system
  RegularVector bad = *inst.planted;
  bad.positions[0] = bad.positions[0] == 1 ? 2 : 1;
  REQUIRE_FALSE(satisfies(inst, bad));
  const Mono pt = pack(bad);

  const int k = 4, trials = 10000;
  int fooled = 0;
  for (std::uint64_t seed = 1; seed <= trials; ++seed)
    fooled += all_vanish(inst, random_subsystem(inst, k, seed), pt);
  const double p = std::pow(2.0, -k);
  const double sigma = std::sqrt(trials * p * (1 - p));
  CHECK(std::abs(fooled - trials * p) < 3 * sigma);
}

TEST_CASE("at-most-regular prefix masks are complete and ordered", "[polymethod]") {
  auto masks = detail::amr_masks_upto(2, 3, 2);
  // 1 + C(3,1)*2 + C(3,2)*4 = 19
  CHECK(masks.size() == 19);
  for (std::size_t i = 1; i < masks.size(); ++i)
    CHECK(mono_degree(masks[i - 1]) <= mono_degree(masks[i]));
  for (Mono m : masks) CHECK(is_at_most_regular(m, 2, 6));

  auto all = detail::amr_masks_upto(3, 2, 2);
  CHECK(all.size() == 16);  // (3+1)^2, full at-most-regular space
}

TEST_CASE("restricted subset-sum recursion on hand examples", "[polymethod][mobius]") {
  const int l = 2, w = 2, d = 2;
  // constant 1: only the empty coefficient survives
  std::unordered_map<Mono, std::uint8_t> evals;
  for (Mono s : detail::amr_masks_upto(l, w, d)) evals[s] = 1;
  auto coeff = regular_mobius_interpolate(evals, l, w, d);
  for (const auto& [s, c] : coeff) CHECK(c == (s == 0 ? 1 : 0));

  // f = x_{0,1} * x_{1,2}: one cross coefficient
  const Mono target = (Mono{1} << var_index(l, 0, 1)) | (Mono{1} << var_index(l, 1, 2));
  AnfPoly f = AnfPoly::from_terms({target}, l * w);
  std::unordered_map<Mono, std::uint8_t> fe;
  for (Mono s : detail::amr_masks_upto(l, w, d)) fe[s] = f.eval(s);
  auto fc = regular_mobius_interpolate(fe, l, w, d);
  for (const auto& [s, c] : fc) CHECK(c == (s == target ? 1 : 0));
}

TEST_CASE("reconstruction is exact on regular vectors", "[polymethod][mobius]") {
  SplitMix64 g(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int l = 2, w = 3, n = l * w;
    // random polynomial of degree <= 2
    std::vector<Mono> terms;
    for (int t = 0; t < 6; ++t) {
      Mono m = g.next() & ((Mono{1} << n) - 1);
      while (mono_degree(m) > 2) m &= m - 1;
      terms.push_back(m);
    }
    AnfPoly f = AnfPoly::from_terms(std::move(terms), n);

    std::unordered_map<Mono, std::uint8_t> evals;
    for (Mono s : detail::amr_masks_upto(l, w, 2)) evals[s] = f.eval(s);
    auto coeff = regular_mobius_interpolate(evals, l, w, 2);

    // G(y) = sum of coefficients under y, compared with the direct value
    std::vector<int> pos(w, 1);
    while (true) {
      Mono y = 0;
      for (int i = 0; i < w; ++i) y |= Mono{1} << var_index(l, i, pos[i]);
      int rec = 0;
      for (const auto& [s, c] : coeff)
        if (c && (s & ~y) == 0) rec ^= 1;
      CHECK(rec == static_cast<int>(f.eval(y)));
      int i = w - 1;
      while (i >= 0 && pos[i] == l) pos[i--] = 1;
      if (i < 0) break;
      ++pos[i];
    }
  }
}

TEST_CASE("missing prefix evaluations are reported by name", "[polymethod][mobius]") {
  std::unordered_map<Mono, std::uint8_t> evals;
  for (Mono s : detail::amr_masks_upto(2, 2, 1)) evals[s] = 0;
  evals.erase(Mono{1} << var_index(2, 1, 1));
  CHECK_THROWS_WITH(regular_mobius_interpolate(evals, 2, 2, 1),
                    Catch::Matchers::ContainsSubstring("(0,1)"));
}

TEST_CASE("partial parity tables match direct enumeration", "[polymethod]") {
  RmqInstance inst = plant_instance(3, 3, 8, 6);
  auto sub = random_subsystem(inst, 3, 42);
  const int w_z = 1, d_G = 2, w_y = inst.w - w_z;
  PartialParityTable table = partial_parity_table(inst, sub, w_z, d_G);

  for (const auto& [y, parity] : table.entries) {
    int want = 0;
    for (int j = 1; j <= inst.l; ++j) {
      const Mono x = y | (Mono{1} << var_index(inst.l, w_y, j));
      want ^= all_vanish(inst, sub, x);
    }
    CHECK(static_cast<int>(parity) == want);
  }
  CHECK(table.entries.size() == detail::amr_masks_upto(inst.l, w_y, d_G).size());
  CHECK_THROWS_AS(partial_parity_table(inst, sub, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(partial_parity_table(inst, sub, inst.w, 2), std::invalid_argument);
}

TEST_CASE("split parameters derive and clamp sanely", "[polymethod]") {
  auto sc = detail::split_for(1.0 / 3, 6, 2, 8, 0);
  CHECK(sc.w_z == 2);
  CHECK(sc.w_y == 4);
  CHECK(sc.k == 4);  // floor(2 * log2 2) + 2
  CHECK(sc.d_G == 4);

  auto hi = detail::split_for(0.99, 4, 2, 20, 0);
  CHECK(hi.w_z == 3);  // clamped to w - 1

  auto capped = detail::split_for(1.0 / 3, 6, 16, 5, 0);
  CHECK(capped.k == 4);  // derived value exceeds m, clamped to m - 1

  auto forced = detail::split_for(0.2, 5, 4, 9, 7);
  CHECK(forced.k == 7);
}

TEST_CASE("parity counting validates its regime", "[polymethod]") {
  RmqInstance odd = plant_instance(3, 3, 8, 1);
  PolyMethodParams pm;
  CHECK_THROWS_AS(regular_parity_count(odd, pm), std::invalid_argument);

  RmqInstance ok = plant_instance(4, 3, 10, 1);
  PolyMethodParams wide;
  wide.gamma = 0.3;  // >= 1/(2 log2 4) = 0.25
  CHECK_THROWS_AS(regular_parity_count(ok, wide), std::invalid_argument);

  PolyMethodParams foreign;
  foreign.l_prime = 2;
  CHECK_THROWS_AS(regular_parity_count(ok, foreign), std::invalid_argument);

  RmqInstance narrow = plant_instance(4, 1, 4, 1);
  CHECK_THROWS_AS(regular_parity_count(narrow, PolyMethodParams{}), std::invalid_argument);
}

TEST_CASE("majority parity agrees with brute force on reliable settings", "[polymethod]") {
  int done = 0;
  for (std::uint64_t seed = 1; seed <= 12 && done < 6; ++seed) {
    RmqInstance inst = plant_instance(4, 3, 16, seed);
    const auto sols = brute_force_solve(inst);
    if (sols.size() != 1) continue;
    ++done;
    PolyMethodParams pm;
    pm.gamma = 1.0 / 5;
    pm.k = inst.m - 1;  // near-exact identifying polynomial per repetition
    pm.t = 7;
    pm.seed = seed;
    CHECK(regular_parity_count(inst, pm) == 1);

    CHECK(regular_parity_count(with_contradiction(inst), pm) == 0);
  }
  REQUIRE(done == 6);
}

TEST_CASE("search recovers planted vectors through decisions", "[polymethod][search]") {
  int done = 0;
  for (std::uint64_t seed = 1; seed <= 15 && done < 5; ++seed) {
    RmqInstance inst = plant_instance(2, 5, table_equation_count(2, 5), seed);
    if (brute_force_solve(inst).size() != 1) continue;
    ++done;
    PolyMethodParams pm;
    pm.seed = seed;
    auto got = search_via_decision(inst, pm);
    REQUIRE(got.has_value());
    CHECK(got->positions == inst.planted->positions);
  }
  REQUIRE(done == 5);
}

TEST_CASE("search reports unsatisfiable systems as absent", "[polymethod][search]") {
  RmqInstance inst = with_contradiction(plant_instance(2, 5, 7, 3));
  PolyMethodParams pm;
  CHECK_FALSE(search_via_decision(inst, pm).has_value());
}

TEST_CASE("search handles odd window lengths by zero-guessing", "[polymethod][search]") {
  int done = 0;
  for (std::uint64_t seed = 1; seed <= 15 && done < 3; ++seed) {
    RmqInstance inst = plant_instance(3, 3, table_equation_count(3, 3), seed);
    if (brute_force_solve(inst).size() != 1) continue;
    ++done;
    PolyMethodParams pm;
    pm.seed = seed;
    auto got = search_via_decision(inst, pm);
    REQUIRE(got.has_value());
    CHECK(got->positions == inst.planted->positions);
  }
  REQUIRE(done == 3);
}
