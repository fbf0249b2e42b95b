#pragma once
// Asymptotic cost estimates for every attack strategy, expressed as exponent
// coefficients tau with attack cost 2^{tau n} up to polynomial factors, all
// at the uniqueness equation ratio mu = log2(l)/l.  Column counts follow the
// eliminated-variable convention: a window with l' free choices contributes
// l'-1 variables after the affine window constraint removes one.

#include <rmq/realpoly.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rmq {

class EstimatorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ComplexityReport {
  std::string method;
  int l = 0;
  int q = 2;
  double omega = 2.0;
  double mu = 0.0;
  std::optional<double> gamma;
  std::optional<int> l_prime;
  // gamma_{l'} window-guess fractions, entry i for l' = i+1, reduced.
  std::vector<std::pair<long long, long long>> tuple;
  int split = 0;
  std::optional<double> delta_bar;
  double tau = 0.0;
  std::optional<double> tau_rel;
  std::optional<bool> beats_brute;
};

inline double brute_force_tau(int l, int q = 2) {
  if (l < 2 || q < 2) throw std::invalid_argument("brute_force_tau: l >= 2, q >= 2 required");
  return std::log2(static_cast<double>(q - 1) * l) / l;
}

// Degree-of-regularity quartic for the plain boolean approach; coefficients
// exactly as the saddle-point analysis lists them (equal to -1/4 times the
// discriminant of the saddle cubic).
template <typename T>
Poly<T> quartic_plain_f2(const T& l, const T& mu) {
  T A = (l - T(1)) * (l - T(1));
  T r4 = (A + T(1)) * (A + T(1));
  T r3 = T(2) * mu * (A + T(1)) * (A + T(3)) - T(4) * A * (A + T(1)) / l;
  T r2 = T(4) * mu * mu * (T(2) * A + T(3)) - T(2) * mu * A * (T(3) * A - T(1)) / l +
         T(2) * A * (T(3) * A + T(1)) / (l * l);
  T r1 = T(8) * mu * mu * mu + T(20) * mu * mu * A / l +
         T(2) * mu * A * (T(3) * A - T(5)) / (l * l) - T(4) * A * A / (l * l * l);
  T r0 = T(0) - mu * mu * A / (l * l) - T(2) * mu * A * A / (l * l * l) + A * A / (l * l * l * l);
  return Poly<T>(std::vector<T>{r0, r1, r2, r3, r4});
}

inline RealPoly quartic_plain_f2(int l, double mu) {
  return quartic_plain_f2<long double>(static_cast<long double>(l), static_cast<long double>(mu));
}

// Big-field analogue: the discriminant of the saddle cubic p3=(l-1)(2mu-d),
// p2=2mu-d-1, p1=d(l-1)-1, p0=d, expanded in d.  (The expansion below is the
// verified one; it degenerates to a quadratic at l=2.)
template <typename T>
Poly<T> quartic_plain_fq(const T& l, const T& mu) {
  T r4 = T(4) * l * l * (l - T(2)) * (l - T(2));
  T r3 = T(0) - T(4) * (l - T(2)) *
             (T(2) * l * l * l * mu - T(4) * l * l * mu + T(3) * l * l - T(4) * l * mu -
              T(8) * l + T(8));
  T r2 = T(0) - T(16) * mu * mu * (T(2) * l * l - T(4) * l - T(1)) +
         T(8) * mu * (T(3) * l * l * l - T(14) * l * l + T(29) * l - T(24)) + T(13) * l * l -
         T(48) * l + T(48);
  T r1 = T(0) - T(32) * mu * mu * mu - T(16) * mu * mu * (T(5) * l - T(8)) -
         T(4) * mu * (T(6) * l * l - T(23) * l + T(24)) - T(6) * (l - T(2));
  T r0 = T(4) * mu * mu + T(4) * mu * (T(2) * l - T(3)) + T(1);
  return Poly<T>(std::vector<T>{r0, r1, r2, r3, r4});
}

inline RealPoly quartic_plain_fq(int l, double mu) {
  return quartic_plain_fq<long double>(static_cast<long double>(l), static_cast<long double>(mu));
}

namespace detail {

inline double root_in_range(const RealPoly& p, double upper, const char* what) {
  auto r = smallest_positive_root(p, 1e-9);
  if (!r) throw EstimatorError(std::string(what) + ": no positive root");
  RealPoly n = normalized(p);
  double resid = static_cast<double>(n.eval(static_cast<long double>(*r)));
  if (!(std::fabs(resid) < 1e-6)) {
    throw EstimatorError(std::string(what) + ": root residual too large");
  }
  if (!(*r <= upper + 1e-9)) {
    throw EstimatorError(std::string(what) + ": root outside admissible range");
  }
  return *r;
}

inline double entropy_checked(double arg, const char* what) {
  if (!(arg >= 0.0 && arg <= 1.0)) {
    throw EstimatorError(std::string(what) + ": entropy argument outside [0,1]");
  }
  return entropy(arg);
}

inline double golden_min(const std::function<double(double)>& f, double a, double b,
                         int iters = 90) {
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

// Grid scan followed by bisection; tuned for sweep inner loops where the
// winner is re-validated by the full bracketing root finder afterwards.
inline std::optional<double> scan_positive_root(const RealPoly& p, double hi, int steps = 400) {
  if (p.is_zero()) return std::nullopt;
  long double h = static_cast<long double>(hi) / steps;
  long double xprev = h, fprev = p.eval(h);
  if (fprev == 0.0L) return static_cast<double>(h);
  for (int k = 2; k <= steps; ++k) {
    long double x = h * k, fx = p.eval(x);
    if (fx == 0.0L) return static_cast<double>(x);
    if ((fprev < 0.0L) != (fx < 0.0L)) {
      return static_cast<double>(bisect_root(p, xprev, x, fprev, fx));
    }
    xprev = x;
    fprev = fx;
  }
  return std::nullopt;
}

}  // namespace detail

inline ComplexityReport tau_plain_gb_f2(int l, double omega = 2.0) {
  if (l < 2) throw std::invalid_argument("tau_plain_gb_f2: l >= 2 required");
  double mu = std::log2(static_cast<double>(l)) / l;
  double db = detail::root_in_range(quartic_plain_f2(l, mu), 1.0 / l, "plain");
  double tau = omega * (static_cast<double>(l - 1) / l) *
               detail::entropy_checked(db * l / (l - 1), "plain");
  ComplexityReport r;
  r.method = "plain";
  r.l = l;
  r.omega = omega;
  r.mu = mu;
  r.delta_bar = db;
  r.tau = tau;
  return r;
}

inline ComplexityReport tau_plain_gb_fq(int l, int q, double omega = 2.0) {
  if (l < 2) throw std::invalid_argument("tau_plain_gb_fq: l >= 2 required");
  if (q < 3) throw std::invalid_argument("tau_plain_gb_fq: q >= 3 required");
  double mu = std::log(static_cast<double>(q - 1) * l) / std::log(static_cast<double>(q)) / l;
  // The big-field series divides by (1-z)^{w+1}, so column degrees are
  // unbounded and the boolean 1/l root cap does not apply.
  double db = detail::root_in_range(quartic_plain_fq(l, mu), 1.0, "plain-fq");
  double tau = omega * (1.0 + db) * detail::entropy_checked(db / (1.0 + db), "plain-fq");
  double brute = brute_force_tau(l, q);
  ComplexityReport r;
  r.method = "plain-fq";
  r.l = l;
  r.q = q;
  r.omega = omega;
  r.mu = mu;
  r.delta_bar = db;
  r.tau = tau;
  r.tau_rel = tau / brute;
  r.beats_brute = tau < brute;
  return r;
}

// ---- hybrid full-windows guess ----

inline double tau_hybrid_full_at(int l, double omega, double gamma,
                                 double* delta_out = nullptr) {
  if (l < 2) throw std::invalid_argument("tau_hybrid_full_at: l >= 2 required");
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("tau_hybrid_full_at: gamma must lie in [0,1]");
  }
  double mu = std::log2(static_cast<double>(l)) / l;
  if (gamma >= 1.0 - 1e-12) {
    if (delta_out) *delta_out = 0.0;
    return mu;  // every window guessed: exhaustive search
  }
  long double keep = 1.0L - static_cast<long double>(gamma);
  auto cubic = saddle_cubic<long double>(static_cast<long double>(l - 1),
                                         keep / static_cast<long double>(l),
                                         static_cast<long double>(mu));
  RealPoly quartic = (-0.25L) * cubic_discriminant(cubic[0], cubic[1], cubic[2], cubic[3]);
  double db = detail::root_in_range(quartic, 1.0 / l, "hybrid-full");
  if (delta_out) *delta_out = db;
  double c = 1.0 - gamma;
  return gamma * mu + omega * c * (static_cast<double>(l - 1) / l) *
                          detail::entropy_checked(db * l / (c * (l - 1)), "hybrid-full");
}

inline ComplexityReport tau_hybrid_full(int l, double omega = 2.0) {
  auto value = [&](double g) {
    try {
      return tau_hybrid_full_at(l, omega, g);
    } catch (const EstimatorError&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  const int steps = 400;
  double best_g = 0.0, best_v = value(0.0);
  for (int k = 1; k <= steps; ++k) {
    double g = static_cast<double>(k) / steps;
    double v = value(g);
    if (v < best_v) {
      best_v = v;
      best_g = g;
    }
  }
  double lo = std::max(0.0, best_g - 1.0 / steps);
  double hi = std::min(1.0, best_g + 1.0 / steps);
  double g_star = detail::golden_min(value, lo, hi);
  if (value(g_star) > best_v) g_star = best_g;
  double db = 0.0;
  double tau = tau_hybrid_full_at(l, omega, g_star, &db);
  ComplexityReport r;
  r.method = "hybrid-full";
  r.l = l;
  r.omega = omega;
  r.mu = std::log2(static_cast<double>(l)) / l;
  r.gamma = g_star;
  if (g_star < 1.0 - 1e-12) r.delta_bar = db;
  r.tau = tau;
  return r;
}

// ---- hybrid partial-windows guess ----

inline double tau_hybrid_partial_at(int l, double omega, int lprime,
                                    double* delta_out = nullptr) {
  if (l < 2) throw std::invalid_argument("tau_hybrid_partial_at: l >= 2 required");
  if (lprime < 1 || lprime > l) {
    throw std::invalid_argument("tau_hybrid_partial_at: l' must lie in [1, l]");
  }
  double mu = std::log2(static_cast<double>(l)) / l;
  if (lprime == 1) {
    if (delta_out) *delta_out = 0.0;
    return mu;
  }
  auto cubic = saddle_cubic<long double>(static_cast<long double>(lprime - 1),
                                         1.0L / static_cast<long double>(l),
                                         static_cast<long double>(mu));
  RealPoly quartic = (-0.25L) * cubic_discriminant(cubic[0], cubic[1], cubic[2], cubic[3]);
  double db = detail::root_in_range(quartic, 1.0 / l, "hybrid-partial");
  if (delta_out) *delta_out = db;
  return std::log2(static_cast<double>(l) / lprime) / l +
         omega * (static_cast<double>(lprime - 1) / l) *
             detail::entropy_checked(db * l / (lprime - 1), "hybrid-partial");
}

inline ComplexityReport tau_hybrid_partial(int l, double omega = 2.0) {
  int best_lp = 1;
  double best_v = std::numeric_limits<double>::infinity(), best_db = 0.0;
  for (int lp = 1; lp <= l; ++lp) {
    double db = 0.0;
    double v;
    try {
      v = tau_hybrid_partial_at(l, omega, lp, &db);
    } catch (const EstimatorError&) {
      continue;
    }
    if (v < best_v) {
      best_v = v;
      best_lp = lp;
      best_db = db;
    }
  }
  ComplexityReport r;
  r.method = "hybrid-partial";
  r.l = l;
  r.omega = omega;
  r.mu = std::log2(static_cast<double>(l)) / l;
  r.l_prime = best_lp;
  if (best_lp > 1) r.delta_bar = best_db;
  r.tau = best_v;
  return r;
}

// ---- hybrid different-windows guess ----

namespace detail {

// g(z; delta) = G0(z) - delta * G1(z): the saddle equation of a mixed window
// profile after clearing denominators.  Active lengths are those l' >= 2
// with positive weight; returns nothing when every window is fully guessed.
inline std::optional<std::pair<RealPoly, RealPoly>> different_g_parts(
    int l, const std::vector<double>& gammas, double mu) {
  std::vector<int> active;
  for (int lp = 2; lp <= l; ++lp) {
    if (gammas[static_cast<std::size_t>(lp - 1)] > 0.0) active.push_back(lp);
  }
  if (active.empty()) return std::nullopt;
  RealPoly one(std::vector<long double>{1.0L});
  RealPoly z2p1(std::vector<long double>{1.0L, 0.0L, 1.0L});
  RealPoly prod_all = one;
  for (int j : active) {
    prod_all = prod_all * RealPoly(std::vector<long double>{1.0L, static_cast<long double>(j - 1)});
  }
  RealPoly sum;
  for (int lp : active) {
    long double coef = static_cast<long double>(gammas[static_cast<std::size_t>(lp - 1)]) *
                       (lp - 1) / l;
    RealPoly part(std::vector<long double>{0.0L, coef});
    part = part * z2p1;
    for (int j : active) {
      if (j == lp) continue;
      part = part * RealPoly(std::vector<long double>{1.0L, static_cast<long double>(j - 1)});
    }
    sum = sum + part;
  }
  RealPoly z2prod(std::vector<long double>{0.0L, 0.0L, 1.0L});
  RealPoly g0 = sum - (2.0L * static_cast<long double>(mu)) * (z2prod * prod_all);
  RealPoly g1 = z2p1 * prod_all;
  return std::make_pair(g0, g1);
}

inline double different_guess_cost(int l, const std::vector<double>& gammas) {
  double cost = 0.0;
  for (int lp = 1; lp <= l; ++lp) {
    double g = gammas[static_cast<std::size_t>(lp - 1)];
    if (g > 0.0 && lp < l) cost += g * std::log2(static_cast<double>(l) / lp) / l;
  }
  return cost;
}

inline double different_free_fraction(int l, const std::vector<double>& gammas) {
  double v = 0.0;
  for (int lp = 2; lp <= l; ++lp) {
    v += gammas[static_cast<std::size_t>(lp - 1)] * (lp - 1) / l;
  }
  return v;
}

}  // namespace detail

inline double tau_hybrid_different_at(int l, double omega, const std::vector<double>& gammas,
                                      double* delta_out = nullptr) {
  if (l < 2) throw std::invalid_argument("tau_hybrid_different_at: l >= 2 required");
  if (static_cast<int>(gammas.size()) != l) {
    throw std::invalid_argument("tau_hybrid_different_at: tuple length must equal l");
  }
  double sum = 0.0;
  for (double g : gammas) {
    if (g < -1e-12) throw std::invalid_argument("tau_hybrid_different_at: negative weight");
    sum += g;
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("tau_hybrid_different_at: weights must sum to 1");
  }
  double mu = std::log2(static_cast<double>(l)) / l;
  double cost = detail::different_guess_cost(l, gammas);
  auto parts = detail::different_g_parts(l, gammas, mu);
  if (!parts) {
    if (delta_out) *delta_out = 0.0;
    return cost;  // every window fully guessed
  }
  const RealPoly& g0 = parts->first;
  const RealPoly& g1 = parts->second;
  int deg_g = std::max(g0.degree(), g1.degree());
  RealPoly res = resultant_with_derivative(
      [&](long double d) { return g0 - static_cast<long double>(d) * g1; }, 2 * deg_g - 1);
  if (detail::normalized(res).is_zero()) {
    throw EstimatorError("hybrid-different: degenerate tuple (resultant vanishes)");
  }
  double db = detail::root_in_range(res, 1.0 / l, "hybrid-different");
  if (delta_out) *delta_out = db;
  double v = detail::different_free_fraction(l, gammas);
  return cost + omega * v * detail::entropy_checked(db / v, "hybrid-different");
}

struct DifferentSweepInfo {
  long long examined = 0;
  long long skipped = 0;  // degenerate resultant, no admissible root, or domain failure
  int split = 0;
  bool split_reduced = false;   // default split lowered for large l
  bool support_pruned = false;  // tuples restricted to at most 3 nonzero weights
};

inline ComplexityReport tau_hybrid_different(int l, double omega = 2.0, int split = 0,
                                             DifferentSweepInfo* info = nullptr) {
  if (l < 2) throw std::invalid_argument("tau_hybrid_different: l >= 2 required");
  int use_split = split > 0 ? split : (l <= 6 ? 200 : 60);
  DifferentSweepInfo local;
  DifferentSweepInfo& diag = info ? *info : local;
  diag.split = use_split;
  diag.split_reduced = split <= 0 && l > 6;
  diag.support_pruned = l > 3;

  double mu = std::log2(static_cast<double>(l)) / l;
  double best_tau = std::numeric_limits<double>::infinity();
  std::vector<int> best_counts;

  // Evaluates one grid tuple with the fast scanning root finder; the winner
  // is re-validated through the full bracketing path below.
  auto consider = [&](const std::vector<int>& counts) {
    diag.examined++;
    std::vector<double> gammas(static_cast<std::size_t>(l), 0.0);
    for (int lp = 1; lp <= l; ++lp) {
      gammas[static_cast<std::size_t>(lp - 1)] =
          static_cast<double>(counts[static_cast<std::size_t>(lp - 1)]) / use_split;
    }
    double cost = detail::different_guess_cost(l, gammas);
    if (cost >= best_tau) return;  // entropy term is nonnegative
    auto parts = detail::different_g_parts(l, gammas, mu);
    double tau;
    if (!parts) {
      tau = cost;
    } else {
      int deg_g = std::max(parts->first.degree(), parts->second.degree());
      RealPoly res = resultant_with_derivative(
          [&](long double d) { return parts->first - d * parts->second; }, 2 * deg_g - 1);
      RealPoly norm = detail::normalized(res);
      if (norm.is_zero()) {
        diag.skipped++;
        return;
      }
      auto db = detail::scan_positive_root(norm, 1.0 / l);
      if (!db) {
        diag.skipped++;
        return;
      }
      double v = detail::different_free_fraction(l, gammas);
      double arg = *db / v;
      if (!(arg >= 0.0 && arg <= 1.0)) {
        diag.skipped++;
        return;
      }
      tau = cost + omega * v * entropy(arg);
    }
    if (tau < best_tau) {
      best_tau = tau;
      best_counts = counts;
    }
  };

  std::vector<int> counts(static_cast<std::size_t>(l), 0);
  // Single-support tuples (includes pure exhaustive search at l' = 1).
  for (int a = 1; a <= l; ++a) {
    std::fill(counts.begin(), counts.end(), 0);
    counts[static_cast<std::size_t>(a - 1)] = use_split;
    consider(counts);
  }
  // Two- and three-support tuples on the grid.
  for (int a = 1; a <= l; ++a) {
    for (int b = a + 1; b <= l; ++b) {
      for (int ca = 1; ca < use_split; ++ca) {
        std::fill(counts.begin(), counts.end(), 0);
        counts[static_cast<std::size_t>(a - 1)] = ca;
        counts[static_cast<std::size_t>(b - 1)] = use_split - ca;
        consider(counts);
      }
      for (int c = b + 1; c <= l; ++c) {
        for (int ca = 1; ca <= use_split - 2; ++ca) {
          for (int cb = 1; ca + cb < use_split; ++cb) {
            std::fill(counts.begin(), counts.end(), 0);
            counts[static_cast<std::size_t>(a - 1)] = ca;
            counts[static_cast<std::size_t>(b - 1)] = cb;
            counts[static_cast<std::size_t>(c - 1)] = use_split - ca - cb;
            consider(counts);
          }
        }
      }
    }
  }

  if (best_counts.empty()) throw EstimatorError("hybrid-different: sweep found no admissible tuple");

  std::vector<double> best_gammas(static_cast<std::size_t>(l), 0.0);
  for (int lp = 1; lp <= l; ++lp) {
    best_gammas[static_cast<std::size_t>(lp - 1)] =
        static_cast<double>(best_counts[static_cast<std::size_t>(lp - 1)]) / use_split;
  }
  double db = 0.0;
  double tau = tau_hybrid_different_at(l, omega, best_gammas, &db);

  ComplexityReport r;
  r.method = "hybrid-different";
  r.l = l;
  r.omega = omega;
  r.mu = mu;
  r.split = use_split;
  for (int lp = 1; lp <= l; ++lp) {
    long long n = best_counts[static_cast<std::size_t>(lp - 1)], d = use_split;
    long long g = std::gcd(n, d);
    r.tuple.emplace_back(n / g, d / g);
  }
  if (db > 0.0) r.delta_bar = db;
  r.tau = tau;
  return r;
}

// ---- probabilistic polynomial method ----

inline double g_poly_method(double p, int l) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("g_poly_method: p must lie in [0,1]");
  if (l < 2) throw std::invalid_argument("g_poly_method: l >= 2 required");
  double lg = std::log2(static_cast<double>(l));
  double t = p * (2.0 * lg - 1.0);
  if (t <= static_cast<double>(l) * (1.0 - p) / (l + 1)) {
    double h = t == 0.0 ? 0.0 : entropy(t / (1.0 - p));
    return ((1.0 - p) * h + t * lg) / l;
  }
  return (1.0 - p) * std::log2(static_cast<double>(l) + 1.0) / l;
}

inline ComplexityReport tau_poly_nonrecursive(int l) {
  if (l < 2) throw std::invalid_argument("tau_poly_nonrecursive: l >= 2 required");
  double best_v = std::numeric_limits<double>::infinity(), best_g = 0.0;
  int best_lp = 2;
  for (int lp = 2; lp <= l; lp += 2) {
    double lgp = std::log2(static_cast<double>(lp));
    double gmax = 1.0 / (2.0 * lgp);
    double base = std::log2(static_cast<double>(l) / lp) / l;
    auto val = [&](double g) {
      return base + (static_cast<double>(lp) / l) *
                        std::max(g_poly_method(g, lp) + g * lgp / lp, (1.0 - g) * lgp / lp);
    };
    const int steps = 2000;
    double loc_g = 0.0, loc_v = val(0.0);
    for (int k = 1; k <= steps; ++k) {
      double g = gmax * k / steps;
      double v = val(g);
      if (v < loc_v) {
        loc_v = v;
        loc_g = g;
      }
    }
    double g_star = detail::golden_min(val, std::max(0.0, loc_g - gmax / steps),
                                       std::min(gmax, loc_g + gmax / steps));
    double v_star = std::min(loc_v, val(g_star));
    if (val(g_star) <= loc_v) loc_g = g_star;
    if (v_star < best_v) {
      best_v = v_star;
      best_g = loc_g;
      best_lp = lp;
    }
  }
  ComplexityReport r;
  r.method = "poly-nonrec";
  r.l = l;
  r.gamma = best_g;
  r.l_prime = best_lp;
  r.tau = best_v;
  return r;
}

inline ComplexityReport tau_poly_bjorklund(int l) {
  if (l < 2) throw std::invalid_argument("tau_poly_bjorklund: l >= 2 required");
  double best_v = std::numeric_limits<double>::infinity(), best_g = 0.0;
  int best_lp = 2;
  for (int lp = 2; lp <= l; lp += 2) {
    double lgp = std::log2(static_cast<double>(lp));
    double gmax = 1.0 / (2.0 * lgp);
    auto slack = [&](double g) { return g_poly_method(g, lp) - (1.0 - g) * (1.0 - g) * lgp / lp; };
    double gl;
    if (slack(gmax) <= 0.0) {
      gl = gmax;
    } else {
      double lo = 0.0, hi = gmax;
      for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        (slack(mid) <= 0.0 ? lo : hi) = mid;
      }
      gl = lo;
    }
    double v = std::log2(static_cast<double>(l) / lp) / l + (1.0 - gl) * lgp / l;
    if (v < best_v) {
      best_v = v;
      best_g = gl;
      best_lp = lp;
    }
  }
  ComplexityReport r;
  r.method = "poly-bjorklund";
  r.l = l;
  r.gamma = best_g;
  r.l_prime = best_lp;
  r.tau = best_v;
  return r;
}

inline ComplexityReport tau_poly_dinur(int l) {
  if (l < 2) throw std::invalid_argument("tau_poly_dinur: l >= 2 required");
  double best_v = std::numeric_limits<double>::infinity(), best_g = 0.0;
  int best_lp = 2;
  for (int lp = 2; lp <= l; lp += 2) {
    double lgp = std::log2(static_cast<double>(lp));
    double gmax = 1.0 / (2.0 * lgp);
    auto slack = [&](double g) { return g_poly_method(g, lp) - (1.0 - g) * lgp / lp; };
    double ghat;
    if (slack(gmax) <= 0.0) {
      ghat = gmax;
    } else {
      double lo = 0.0, hi = gmax;
      for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        (slack(mid) <= 0.0 ? lo : hi) = mid;
      }
      ghat = lo;
    }
    double base = std::log2(static_cast<double>(l) / lp) / l;
    const int steps = 400;
    double v = base, varg = 0.0;  // gamma = 0 term
    for (int k = 0; k <= steps; ++k) {
      double g = ghat * k / steps;
      double cand = base + (static_cast<double>(lp) / l) * g_poly_method(g, lp);
      if (cand > v) {
        v = cand;
        varg = g;
      }
    }
    if (v < best_v) {
      best_v = v;
      best_g = varg;
      best_lp = lp;
    }
  }
  ComplexityReport r;
  r.method = "poly-dinur";
  r.l = l;
  r.gamma = best_g;
  r.l_prime = best_lp;
  r.tau = best_v;
  return r;
}

// ---- alternative (bit-encoded) modeling ----

namespace detail {

inline int log2_exact_arg(int l, const char* what) {
  if (l < 2 || (l & (l - 1)) != 0) {
    throw std::invalid_argument(std::string(what) + ": l must be a power of two >= 2");
  }
  int s = 0;
  while ((1 << s) < l) ++s;
  return s;
}

// Saddle polynomial of the bit-encoded system with s' free bits per window
// and keep = 1 - gamma windows remaining: g = G0 - delta * G1.
inline std::pair<RealPoly, RealPoly> alt_g_parts(int l, int s_prime, double keep) {
  double mu = std::log2(static_cast<double>(l)) / l;
  int d = 2 * s_prime + 1;
  std::vector<long double> g0(static_cast<std::size_t>(d + 1), 0.0L);
  std::vector<long double> g1(static_cast<std::size_t>(d + 1), 0.0L);
  long double chi = static_cast<long double>(keep) * s_prime / l;
  long double eqs = 2.0L * s_prime * static_cast<long double>(mu);
  g0[1] = chi;
  g0[static_cast<std::size_t>(d - 1)] = -eqs;
  g0[static_cast<std::size_t>(d)] = chi - eqs;
  g1[0] = 1.0L;
  g1[1] = 1.0L;
  g1[static_cast<std::size_t>(d - 1)] += 1.0L;
  g1[static_cast<std::size_t>(d)] += 1.0L;
  return {RealPoly(std::move(g0)), RealPoly(std::move(g1))};
}

// The bit-encoded saddle polynomial has degree 2s'+1, high enough that the
// resultant in delta acquires extra positive roots from collisions at
// negative or complex z. The admissible root is located directly instead:
// g(.; delta) = g0 - delta*g1 keeps a pair of positive real roots exactly
// while its interior maximum over z > 0 stays positive, and that maximum is
// strictly decreasing in delta (g1 > 0 on z > 0), so the merge point is the
// unique sign change. At the merge, g and g' share the witness zero, which
// is precisely a vanishing resultant.
inline double alt_delta_bar(int l, int s_prime, double keep, const char* what) {
  auto [g0, g1] = alt_g_parts(l, s_prime, keep);
  const RealPoly dg0 = g0.derivative(), dg1 = g1.derivative();
  long double witness = 0.0L;
  auto interior_max = [&](long double delta) {
    std::size_t n = std::max(dg0.c.size(), dg1.c.size());
    std::vector<long double> dc(n, 0.0L);
    for (std::size_t i = 0; i < n; ++i) {
      if (i < dg0.c.size()) dc[i] += dg0.c[i];
      if (i < dg1.c.size()) dc[i] -= delta * dg1.c[i];
    }
    long double best = -std::numeric_limits<long double>::infinity();
    for (long double zc : real_roots(RealPoly(std::move(dc)))) {
      if (zc <= 1e-12L) continue;
      long double val = g0.eval(zc) - delta * g1.eval(zc);
      if (val > best) {
        best = val;
        witness = zc;
      }
    }
    return best;
  };
  // Past delta = chi every coefficient of g is nonpositive, so the bracket
  // upper end is the entropy saturation point chi = keep*s'/l itself.
  long double chi = static_cast<long double>(keep) * s_prime / l;
  if (!(interior_max(0.0L) > 0.0L)) {
    throw EstimatorError(std::string(what) + ": no positive saddle");
  }
  if (interior_max(chi) > 0.0L) {
    throw EstimatorError(std::string(what) + ": root outside admissible range");
  }
  long double lo = 0.0L, hi = chi;
  for (int it = 0; it < 120; ++it) {
    long double mid = 0.5L * (lo + hi);
    (interior_max(mid) > 0.0L ? lo : hi) = mid;
  }
  long double db = 0.5L * (lo + hi);
  interior_max(db);  // refresh the witness at the returned point
  long double resid = g0.eval(witness) - db * g1.eval(witness);
  if (!(std::fabs(static_cast<double>(resid)) < 1e-6)) {
    throw EstimatorError(std::string(what) + ": saddle witness residual too large");
  }
  return static_cast<double>(db);
}

}  // namespace detail

inline double tau_alt_full_at(int l, double omega, double gamma, double* delta_out = nullptr) {
  int s = detail::log2_exact_arg(l, "alt-full");
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("tau_alt_full_at: gamma must lie in [0,1]");
  }
  double srel = static_cast<double>(s) / l;
  if (gamma >= 1.0 - 1e-12) {
    if (delta_out) *delta_out = 0.0;
    return srel;
  }
  double c = 1.0 - gamma;
  double db = detail::alt_delta_bar(l, s, c, "alt-full");
  if (delta_out) *delta_out = db;
  return gamma * srel + omega * c * srel * detail::entropy_checked(db * l / (c * s), "alt-full");
}

inline ComplexityReport tau_alt_plain(int l, double omega = 2.0) {
  double db = 0.0;
  double tau = tau_alt_full_at(l, omega, 0.0, &db);
  ComplexityReport r;
  r.method = "alt-plain";
  r.l = l;
  r.omega = omega;
  r.mu = std::log2(static_cast<double>(l)) / l;
  r.delta_bar = db;
  r.tau = tau;
  return r;
}

inline ComplexityReport tau_alt_full(int l, double omega = 2.0) {
  auto value = [&](double g) {
    try {
      return tau_alt_full_at(l, omega, g);
    } catch (const EstimatorError&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  const int steps = 400;
  double best_g = 0.0, best_v = value(0.0);
  for (int k = 1; k <= steps; ++k) {
    double g = static_cast<double>(k) / steps;
    double v = value(g);
    if (v < best_v) {
      best_v = v;
      best_g = g;
    }
  }
  double g_star = detail::golden_min(value, std::max(0.0, best_g - 1.0 / steps),
                                     std::min(1.0, best_g + 1.0 / steps));
  if (value(g_star) > best_v) g_star = best_g;
  double db = 0.0;
  double tau = tau_alt_full_at(l, omega, g_star, &db);
  ComplexityReport r;
  r.method = "alt-full";
  r.l = l;
  r.omega = omega;
  r.mu = std::log2(static_cast<double>(l)) / l;
  r.gamma = g_star;
  if (g_star < 1.0 - 1e-12) r.delta_bar = db;
  r.tau = tau;
  return r;
}

inline double tau_alt_partial_at(int l, double omega, int s_prime,
                                 double* delta_out = nullptr) {
  int s = detail::log2_exact_arg(l, "alt-partial");
  if (s_prime < 1 || s_prime > s) {
    throw std::invalid_argument("tau_alt_partial_at: s' must lie in [1, log2 l]");
  }
  double db = detail::alt_delta_bar(l, s_prime, 1.0, "alt-partial");
  if (delta_out) *delta_out = db;
  return static_cast<double>(s - s_prime) / l +
         omega * (static_cast<double>(s_prime) / l) *
             detail::entropy_checked(db * l / s_prime, "alt-partial");
}

inline ComplexityReport tau_alt_partial(int l, double omega = 2.0) {
  int s = detail::log2_exact_arg(l, "alt-partial");
  int best_sp = 1;
  double best_v = std::numeric_limits<double>::infinity(), best_db = 0.0;
  for (int sp = 1; sp <= s; ++sp) {
    double db = 0.0;
    double v;
    try {
      v = tau_alt_partial_at(l, omega, sp, &db);
    } catch (const EstimatorError&) {
      continue;
    }
    if (v < best_v) {
      best_v = v;
      best_sp = sp;
      best_db = db;
    }
  }
  ComplexityReport r;
  r.method = "alt-partial";
  r.l = l;
  r.omega = omega;
  r.mu = std::log2(static_cast<double>(l)) / l;
  r.l_prime = 1 << best_sp;
  r.delta_bar = best_db;
  r.tau = best_v;
  return r;
}

inline double tau_alt_dinur(int l) {
  int s = detail::log2_exact_arg(l, "dinur-alt");
  return (static_cast<double>(s) - 0.25) / l;
}

// ---- closed-form shortcut via the semi-regular quadratic estimate ----

inline ComplexityReport tau_simple_estimate(int l, double omega = 2.0) {
  if (l < 4) {
    throw std::invalid_argument("tau_simple_estimate: out of regime, l >= 4 required");
  }
  double mu = std::log2(static_cast<double>(l));  // reduced system ratio m/(n/l)
  double rad = 2.0 * mu * mu - 10.0 * mu - 1.0 + 2.0 * (mu + 2.0) * std::sqrt(mu * (mu + 2.0));
  if (rad < 0.0) throw EstimatorError("simple: negative radicand");
  double db = -mu + 0.5 + 0.5 * std::sqrt(rad);
  // delta here is relative to the reduced n/l variables, so the admissible
  // range is (0, 1/2), not (0, 1/l].
  if (!(db > 0.0 && db < 0.5)) throw EstimatorError("simple: estimate outside admissible range");
  double tau = (std::log2(static_cast<double>(l) / 2.0) + omega * entropy(db)) / l;
  ComplexityReport r;
  r.method = "simple";
  r.l = l;
  r.omega = omega;
  r.mu = mu;
  r.delta_bar = db;
  r.tau = tau;
  return r;
}

// ---- comparison sweeps and CSV rendering ----

struct CompareCell {
  std::string method;
  int l = 0;
  std::optional<ComplexityReport> report;
  std::string diagnostic;
};

inline ComplexityReport estimate_by_method(const std::string& method, int l, double omega,
                                           int q = 7, int split = 0) {
  if (method == "brute") {
    ComplexityReport r;
    r.method = "brute";
    r.l = l;
    r.omega = omega;
    r.mu = std::log2(static_cast<double>(l)) / l;
    r.tau = brute_force_tau(l, 2);
    return r;
  }
  if (method == "plain") return tau_plain_gb_f2(l, omega);
  if (method == "plain-fq") return tau_plain_gb_fq(l, q, omega);
  if (method == "hybrid-full") return tau_hybrid_full(l, omega);
  if (method == "hybrid-partial") return tau_hybrid_partial(l, omega);
  if (method == "hybrid-different") return tau_hybrid_different(l, omega, split);
  if (method == "poly-nonrec") return tau_poly_nonrecursive(l);
  if (method == "poly-bjorklund") return tau_poly_bjorklund(l);
  if (method == "poly-dinur") return tau_poly_dinur(l);
  if (method == "alt-plain") return tau_alt_plain(l, omega);
  if (method == "alt-full") return tau_alt_full(l, omega);
  if (method == "alt-partial") return tau_alt_partial(l, omega);
  if (method == "dinur-alt") {
    ComplexityReport r;
    r.method = "dinur-alt";
    r.l = l;
    r.omega = omega;
    r.mu = std::log2(static_cast<double>(l)) / l;
    r.tau = tau_alt_dinur(l);
    return r;
  }
  if (method == "simple") return tau_simple_estimate(l, omega);
  throw std::invalid_argument("unknown estimator method: " + method);
}

inline std::vector<CompareCell> compare_all(const std::vector<int>& ls, double omega,
                                            const std::vector<std::string>& methods) {
  static const std::vector<std::string> known = {
      "brute",       "plain",          "plain-fq",    "hybrid-full", "hybrid-partial",
      "hybrid-different", "poly-nonrec", "poly-bjorklund", "poly-dinur",
      "alt-plain",   "alt-full",       "alt-partial", "dinur-alt",   "simple"};
  for (const std::string& m : methods) {
    if (std::find(known.begin(), known.end(), m) == known.end()) {
      throw std::invalid_argument("unknown estimator method: " + m);
    }
  }
  std::vector<CompareCell> cells;
  for (const std::string& m : methods) {
    for (int l : ls) {
      CompareCell cell;
      cell.method = m;
      cell.l = l;
      try {
        ComplexityReport r = estimate_by_method(m, l, omega);
        if (!r.tau_rel) r.tau_rel = r.tau / brute_force_tau(l, r.q);
        cell.report = std::move(r);
      } catch (const std::exception& e) {
        cell.diagnostic = e.what();
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

inline std::string complexity_csv_header() {
  return "method,l,q,omega,mu,gamma,l_prime,tuple,delta_bar,tau,tau_rel";
}

namespace detail {

inline std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

inline std::string format_tuple(const std::vector<std::pair<long long, long long>>& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) os << ';';
    if (t[i].second == 1) {
      os << t[i].first;
    } else {
      os << t[i].first << '/' << t[i].second;
    }
  }
  return os.str();
}

}  // namespace detail

inline std::string complexity_csv_row(const ComplexityReport& r) {
  std::ostringstream os;
  os << r.method << ',' << r.l << ',' << r.q << ',' << detail::format_double(r.omega) << ','
     << detail::format_double(r.mu) << ',';
  if (r.gamma) os << detail::format_double(*r.gamma);
  os << ',';
  if (r.l_prime) os << *r.l_prime;
  os << ',' << detail::format_tuple(r.tuple) << ',';
  if (r.delta_bar) os << detail::format_double(*r.delta_bar);
  os << ',' << detail::format_double(r.tau) << ',';
  if (r.tau_rel) os << detail::format_double(*r.tau_rel);
  return os.str();
}

}  // namespace rmq
