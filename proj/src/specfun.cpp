#include "cloakcyl/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace cloak::specfun {
namespace {

constexpr double kBig = 1e250;
constexpr double kBigInv = 1e-250;

void check_order(int n, int limit) {
  if (n < 0 || n > limit) {
    throw std::domain_error("cylinder function order out of range: " + std::to_string(n));
  }
}

void check_argument(double x, bool allow_zero) {
  if (!std::isfinite(x) || x < 0.0 || (!allow_zero && x == 0.0)) {
    throw std::domain_error("cylinder function argument out of domain: " + std::to_string(x));
  }
}

// Ascending series; used where x^2/4 <= n+1 so the terms decrease monotonically.
double j_series(int n, double x) {
  double lead = 1.0;
  const double half = 0.5 * x;
  for (int i = 1; i <= n; ++i) lead *= half / i;
  const double q = -0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * (n + k));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return lead * sum;
}

// Miller's backward recurrence normalised by J0 + 2*sum J_2k = 1.
// Fills J_0..J_nmax; entries that underflow relative to J_0 come back as 0.
std::vector<double> j_sequence_miller(int nmax, double x) {
  const int top = std::max(nmax, static_cast<int>(std::ceil(x)));
  int start = top + 20 + static_cast<int>(16.0 * std::cbrt(x));
  start += start % 2;

  std::vector<double> out(nmax + 1, 0.0);
  double above = 0.0;  // J_{k+1}
  double cur = 1e-30;  // J_k, k = start
  double norm = 0.0;
  for (int k = start; k >= 0; --k) {
    if (k <= nmax) out[k] = cur;
    if (k % 2 == 0) norm += (k == 0 ? 1.0 : 2.0) * cur;
    if (k == 0) break;
    const double below = (2.0 * k / x) * cur - above;
    above = cur;
    cur = below;
    if (std::abs(cur) > kBig) {
      cur *= kBigInv;
      above *= kBigInv;
      norm *= kBigInv;
      for (int i = k; i <= nmax; ++i) out[i] *= kBigInv;
    }
  }
  for (double& v : out) v /= norm;
  return out;
}

double j_impl(int n, double x) {
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (0.25 * x * x <= n + 1.0) return j_series(n, x);
  return j_sequence_miller(n, x)[n];
}

// Y_0 and Y_1 from Neumann series over a Miller sequence.
struct YSeed {
  double y0, y1;
  std::vector<double> j;
};

YSeed y_seed(int nmax_j, double x) {
  const int terms = static_cast<int>(x) + 40 + static_cast<int>(16.0 * std::cbrt(x));
  const int len = std::max(2 * terms + 1, nmax_j);
  std::vector<double> j = j_sequence_miller(len, x);
  constexpr double inv_pi = std::numbers::inv_pi;
  const double log_term = std::log(0.5 * x) + std::numbers::egamma;

  double s0 = 0.0;
  double s1 = 0.0;
  for (int k = terms; k >= 1; --k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    s0 += sign * j[2 * k] / k;
    s1 += sign * (j[2 * k - 1] - j[2 * k + 1]) / k;
  }
  const double y0 = 2.0 * inv_pi * log_term * j[0] - 4.0 * inv_pi * s0;
  const double y1 = 2.0 * inv_pi * (log_term * j[1] - j[0] / x) + 2.0 * inv_pi * s1;
  j.resize(nmax_j + 1);
  return {y0, y1, std::move(j)};
}

double y_impl(int n, double x) {
  const YSeed seed = y_seed(0, x);
  if (n == 0) return seed.y0;
  double prev = seed.y0;
  double cur = seed.y1;
  for (int k = 1; k < n; ++k) {
    const double next = (2.0 * k / x) * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  Complex kronrod;
  double error;
  double abs_mass;
};

Panel gk15(const ComplexIntegrand& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const Complex fc = f(centre);
  Complex gauss = fc * kWg[3];
  Complex kron = fc * kWgk[7];
  double mass = std::abs(fc) * kWgk[7];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    const Complex f1 = f(centre - dx);
    const Complex f2 = f(centre + dx);
    kron += (f1 + f2) * kWgk[i];
    mass += (std::abs(f1) + std::abs(f2)) * kWgk[i];
    if (i % 2 == 1) gauss += (f1 + f2) * kWg[i / 2];
  }
  return {kron * half, std::abs((kron - gauss) * half), mass * std::abs(half)};
}

Complex adapt(const ComplexIntegrand& f, double a, double b, double tol, int depth,
              int max_depth) {
  const Panel p = gk15(f, a, b);
  const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * p.abs_mass;
  if (p.error <= std::max(tol, roundoff)) return p.kronrod;
  if (depth >= max_depth) {
    throw QuadratureError("adaptive quadrature did not converge on [" + std::to_string(a) +
                          ", " + std::to_string(b) + "]");
  }
  const double mid = 0.5 * (a + b);
  return adapt(f, a, mid, 0.5 * tol, depth + 1, max_depth) +
         adapt(f, mid, b, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double bessel_j(int n, double x) {
  check_order(n, kMaxOrder);
  check_argument(x, true);
  return j_impl(n, x);
}

double bessel_y(int n, double x) {
  check_order(n, kMaxOrder);
  check_argument(x, false);
  return y_impl(n, x);
}

double bessel_j_prime(int n, double x) {
  check_order(n, kMaxOrder);
  check_argument(x, true);
  if (n == 0) return -j_impl(1, x);
  return 0.5 * (j_impl(n - 1, x) - j_impl(n + 1, x));
}

double bessel_y_prime(int n, double x) {
  check_order(n, kMaxOrder);
  check_argument(x, false);
  if (n == 0) return -y_impl(1, x);
  return 0.5 * (y_impl(n - 1, x) - y_impl(n + 1, x));
}

CylinderSequence cylinder_sequence(int nmax, double x) {
  check_order(nmax, kMaxOrder + 1);
  check_argument(x, false);
  YSeed seed = y_seed(nmax, x);
  std::vector<double> y(nmax + 1);
  y[0] = seed.y0;
  if (nmax >= 1) y[1] = seed.y1;
  for (int k = 1; k < nmax; ++k) y[k + 1] = (2.0 * k / x) * y[k] - y[k - 1];
  // the ascending series is more accurate where the Miller values are tiny
  for (int n = 0; n <= nmax; ++n) {
    if (0.25 * x * x <= n + 1.0) seed.j[n] = j_series(n, x);
  }
  return {std::move(seed.j), std::move(y)};
}

Complex hankel2(int n, double x) { return {bessel_j(n, x), -bessel_y(n, x)}; }

Complex hankel2_prime(int n, double x) { return {bessel_j_prime(n, x), -bessel_y_prime(n, x)}; }

Complex integrate(const ComplexIntegrand& f, double lo, double hi, QuadratureOptions opts) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::domain_error("integrate: require finite lo < hi");
  }
  if (!(opts.tol > 0.0)) throw std::domain_error("integrate: tolerance must be positive");
  return adapt(f, lo, hi, opts.tol, 0, opts.max_depth);
}

double integrate_real(const std::function<double(double)>& f, double lo, double hi,
                      QuadratureOptions opts) {
  return integrate([&f](double x) { return Complex{f(x), 0.0}; }, lo, hi, opts).real();
}

}  // namespace cloak::specfun
