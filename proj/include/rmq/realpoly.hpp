#pragma once
// Real-analysis helpers for the complexity estimators: binary entropy, dense
// univariate polynomials over an arbitrary field-like scalar, real-root
// isolation by derivative bracketing, cubic discriminants, and resultants
// recovered by interpolating Sylvester determinants.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rmq {

inline double entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("entropy: argument must lie in [0,1]");
  }
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

// Exponent of a partial binomial sum: entropy below 1/2, saturated at 1 above.
inline double entropy_star(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("entropy_star: argument must lie in [0,1]");
  }
  return p >= 0.5 ? 1.0 : entropy(p);
}

// Dense univariate polynomial, coefficients stored low-to-high.  T is long
// double for numeric work and an exact rational type in the identity tests.
template <typename T>
struct Poly {
  std::vector<T> c;

  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c(std::move(coeffs)) { trim(); }

  void trim() {
    while (!c.empty() && c.back() == T(0)) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  T coeff(std::size_t i) const { return i < c.size() ? c[i] : T(0); }

  T eval(const T& x) const {
    T acc(0);
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
  }

  Poly derivative() const {
    if (c.size() <= 1) return Poly{};
    std::vector<T> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) {
      d[i - 1] = c[i] * T(static_cast<int>(i));
    }
    return Poly(std::move(d));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> out(std::max(a.c.size(), b.c.size()), T(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) out[i] = out[i] + a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) out[i] = out[i] + b.c[i];
    return Poly(std::move(out));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<T> out(std::max(a.c.size(), b.c.size()), T(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) out[i] = out[i] + a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) out[i] = out[i] - b.c[i];
    return Poly(std::move(out));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly{};
    std::vector<T> out(a.c.size() + b.c.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      for (std::size_t j = 0; j < b.c.size(); ++j) {
        out[i + j] = out[i + j] + a.c[i] * b.c[j];
      }
    }
    return Poly(std::move(out));
  }
  friend Poly operator*(const T& s, const Poly& a) {
    std::vector<T> out = a.c;
    for (T& x : out) x = x * s;
    return Poly(std::move(out));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
};

using RealPoly = Poly<long double>;

namespace detail {

inline long double poly_scale(const RealPoly& p) {
  long double s = 0.0L;
  for (long double x : p.c) s = std::max(s, std::fabs(x));
  return s;
}

// Divides by the largest |coefficient| and drops relative noise so that the
// stored degree matches the numerically meaningful one.
inline RealPoly normalized(RealPoly p, long double noise = 1e-12L) {
  long double s = poly_scale(p);
  if (s == 0.0L) return RealPoly{};
  for (long double& x : p.c) {
    x /= s;
    if (std::fabs(x) < noise) x = 0.0L;
  }
  p.trim();
  return p;
}

inline long double bisect_root(const RealPoly& p, long double a, long double b,
                               long double fa, long double fb) {
  for (int it = 0; it < 200; ++it) {
    long double m = 0.5L * (a + b);
    if (m == a || m == b) break;
    long double fm = p.eval(m);
    if (fm == 0.0L) return m;
    if ((fa < 0.0L) != (fm < 0.0L)) {
      b = m;
      fb = fm;
    } else {
      a = m;
      fa = fm;
    }
    if (b - a < 1e-18L * std::max(1.0L, std::fabs(b))) break;
  }
  (void)fb;
  return 0.5L * (a + b);
}

// All real roots, ascending.  Critical points of p partition the line into
// monotone pieces; each piece holds at most one root, found by bisection.
// Even-multiplicity roots are caught by the |p| test at critical points.
inline std::vector<long double> real_roots(const RealPoly& p) {
  int deg = p.degree();
  if (deg <= 0) return {};
  if (deg == 1) return {-p.c[0] / p.c[1]};

  std::vector<long double> crit = real_roots(p.derivative());
  long double lead = std::fabs(p.c.back());
  long double maxc = poly_scale(p);
  long double bound = 1.0L + maxc / lead;

  std::vector<long double> pts;
  pts.push_back(-bound);
  for (long double c : crit) {
    if (c > -bound && c < bound) pts.push_back(c);
  }
  pts.push_back(bound);
  std::sort(pts.begin(), pts.end());

  std::vector<long double> roots;
  auto push_root = [&](long double r) {
    if (roots.empty() || std::fabs(r - roots.back()) > 1e-12L * (1.0L + std::fabs(r))) {
      roots.push_back(r);
    }
  };

  long double touch_eps = 1e-10L * std::max(1.0L, maxc);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    long double a = pts[i], b = pts[i + 1];
    long double fa = p.eval(a), fb = p.eval(b);
    if (std::fabs(fa) <= touch_eps && i > 0) push_root(a);  // tangency at a critical point
    if (fa == 0.0L) continue;
    if ((fa < 0.0L) != (fb < 0.0L)) push_root(bisect_root(p, a, b, fa, fb));
  }
  if (std::fabs(p.eval(pts.back())) <= touch_eps) push_root(pts.back());
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace detail

// Smallest real root strictly greater than tol; roots are located to machine
// precision, tol only acts as the positivity cutoff.
inline std::optional<double> smallest_positive_root(const RealPoly& p, double tol = 1e-9) {
  RealPoly q = detail::normalized(p);
  if (q.is_zero()) throw std::invalid_argument("smallest_positive_root: zero polynomial");
  for (long double r : detail::real_roots(q)) {
    if (r > static_cast<long double>(tol)) return static_cast<double>(r);
  }
  return std::nullopt;
}

// Discriminant of p3 z^3 + p2 z^2 + p1 z + p0 whose coefficients are
// themselves polynomials in another variable.
template <typename T>
Poly<T> cubic_discriminant(const Poly<T>& p3, const Poly<T>& p2, const Poly<T>& p1,
                           const Poly<T>& p0) {
  Poly<T> d = T(18) * (p3 * p2 * p1 * p0);
  d = d - T(4) * (p2 * p2 * p2 * p0);
  d = d + p2 * p2 * p1 * p1;
  d = d - T(4) * (p3 * p1 * p1 * p1);
  d = d - T(27) * (p3 * p3 * p0 * p0);
  return d;
}

// Saddle-point cubic for a window profile: A z^3 coefficient scale, rho the
// free-coordinate density, mu the equation ratio; the unknown delta enters
// each coefficient linearly.  Returned as (p3, p2, p1, p0) in delta.
template <typename T>
std::array<Poly<T>, 4> saddle_cubic(const T& A, const T& rho, const T& mu) {
  Poly<T> p3(std::vector<T>{A * (T(2) * mu - rho), A});
  Poly<T> p2(std::vector<T>{T(2) * mu, T(1)});
  Poly<T> p1(std::vector<T>{T(-1) * A * rho, A});
  Poly<T> p0(std::vector<T>{T(0), T(1)});
  return {p3, p2, p1, p0};
}

namespace detail {

// Determinant by LU with partial pivoting.
inline long double dense_determinant(std::vector<std::vector<long double>> m) {
  std::size_t n = m.size();
  long double det = 1.0L;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
    }
    if (m[piv][col] == 0.0L) return 0.0L;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      long double f = m[r][col] / m[col][col];
      if (f == 0.0L) continue;
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

}  // namespace detail

// Sylvester resultant of two numeric polynomials.
inline long double resultant_value(const RealPoly& f, const RealPoly& g) {
  if (f.is_zero() || g.is_zero()) return 0.0L;
  int m = f.degree(), n = g.degree();
  if (m == 0 && n == 0) return 1.0L;
  std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<long double>> s(size, std::vector<long double>(size, 0.0L));
  for (int r = 0; r < n; ++r) {
    for (int i = 0; i <= m; ++i) s[r][r + i] = f.c[static_cast<std::size_t>(m - i)];
  }
  for (int r = 0; r < m; ++r) {
    for (int i = 0; i <= n; ++i) s[n + r][r + i] = g.c[static_cast<std::size_t>(n - i)];
  }
  return detail::dense_determinant(std::move(s));
}

// Recovers a polynomial of degree <= deg_bound from point evaluations taken
// at Chebyshev-spread nodes on [0,1], via Newton divided differences.
inline RealPoly interpolate_polynomial(const std::function<long double(long double)>& value,
                                       int deg_bound) {
  if (deg_bound < 0) throw std::invalid_argument("interpolate_polynomial: negative degree");
  int npts = deg_bound + 1;
  const long double pi = std::acos(-1.0L);
  std::vector<long double> xs(npts), dd(npts);
  for (int j = 0; j < npts; ++j) {
    long double t = npts == 1 ? 0.0L : std::cos(pi * j / (npts - 1));
    xs[j] = 0.5L * (t + 1.0L);
    dd[j] = value(xs[j]);
  }
  for (int level = 1; level < npts; ++level) {
    for (int j = npts - 1; j >= level; --j) {
      dd[j] = (dd[j] - dd[j - 1]) / (xs[j] - xs[j - level]);
    }
  }
  RealPoly acc(std::vector<long double>{dd[npts - 1]});
  for (int j = npts - 2; j >= 0; --j) {
    acc = acc * RealPoly(std::vector<long double>{-xs[j], 1.0L});
    acc = acc + RealPoly(std::vector<long double>{dd[j]});
  }
  return acc;
}

// Res_z(g, dg/dz) as a polynomial in the parameter the caller varies: g_at
// maps a parameter value to the z-coefficients of g.  deg_bound bounds the
// resultant's parameter degree (entries linear in the parameter give
// deg g + deg g' as a safe bound).
inline RealPoly resultant_with_derivative(
    const std::function<RealPoly(long double)>& g_at, int deg_bound) {
  return interpolate_polynomial(
      [&](long double x) {
        RealPoly g = g_at(x);
        return resultant_value(g, g.derivative());
      },
      deg_bound);
}

}  // namespace rmq
