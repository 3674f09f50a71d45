#include <doctest.h>
#include <mpfr.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "cloakcyl/specfun.hpp"

using namespace cloak;
using namespace cloak::specfun;

namespace {

// 200-bit MPFR evaluation, independent of the library's recurrences.
struct MpfrBessel {
  mpfr_t arg, out;
  MpfrBessel() {
    mpfr_init2(arg, 200);
    mpfr_init2(out, 200);
  }
  ~MpfrBessel() {
    mpfr_clear(arg);
    mpfr_clear(out);
  }
  double j(int n, double x) {
    mpfr_set_d(arg, x, MPFR_RNDN);
    mpfr_jn(out, n, arg, MPFR_RNDN);
    return mpfr_get_d(out, MPFR_RNDN);
  }
  double y(int n, double x) {
    mpfr_set_d(arg, x, MPFR_RNDN);
    mpfr_yn(out, n, arg, MPFR_RNDN);
    return mpfr_get_d(out, MPFR_RNDN);
  }
};

const std::vector<double> kArgs = {0.01, 0.1, 0.37, 1.0, 2.43, 3.9, 5.0, 7.5, 10.0,
                                   15.0, 24.0, 33.3, 50.0, 71.2, 100.0};

}  // namespace

TEST_CASE("bessel_j trivial values") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(1, 0.0) == 0.0);
  CHECK(bessel_j(17, 0.0) == 0.0);
}

TEST_CASE("frozen high-precision reference values") {
  // mpmath at 40 digits
  CHECK(bessel_j(3, 5.0) == doctest::Approx(0.3648312306136669944).epsilon(1e-12));
  CHECK(bessel_y(2, 10.0) == doctest::Approx(-0.005868082442208614640).epsilon(1e-12));
  CHECK(bessel_j(0, 1e-3) == doctest::Approx(0.9999997500000156250).epsilon(1e-14));
  CHECK(bessel_j(60, 20.0) == doctest::Approx(2.280926388733559639e-23).epsilon(1e-12));
  CHECK(bessel_y(40, 1.0) == doctest::Approx(-7.184874796801384256e+57).epsilon(1e-12));
  CHECK(bessel_j(1, 100.0) == doctest::Approx(-0.07714535201411215803).epsilon(1e-12));
  CHECK(bessel_y(0, 100.0) == doctest::Approx(-0.07724431336508315225).epsilon(1e-12));
}

TEST_CASE("J_n and Y_n agree with MPFR across orders and arguments") {
  // Where x < n, J_n is monotone and checked to pure relative error. Elsewhere
  // both functions oscillate; error is measured against the modulus sqrt(J^2+Y^2).
  MpfrBessel ref;
  double worst_j = 0.0, worst_y = 0.0;
  for (int n = 0; n <= 60; n += (n < 6 ? 1 : 3)) {
    for (double x : kArgs) {
      const double jr = ref.j(n, x);
      const double yr = ref.y(n, x);
      const double modulus = std::hypot(jr, yr);
      const double j_scale = x < n ? std::abs(jr) : modulus;
      const double ej = std::abs(bessel_j(n, x) - jr) / j_scale;
      const double ey = std::abs(bessel_y(n, x) - yr) / std::max(std::abs(yr), modulus);
      worst_j = std::max(worst_j, ej);
      worst_y = std::max(worst_y, ey);
      CHECK_MESSAGE(ej <= 1e-12, "J_", n, "(", x, ") err ", ej);
      CHECK_MESSAGE(ey <= 1e-12, "Y_", n, "(", x, ") err ", ey);
    }
  }
  MESSAGE("worst J error ", worst_j, ", worst Y error ", worst_y);
}

TEST_CASE("Wronskian J_n Y'_n - J'_n Y_n = 2/(pi x)") {
  for (int n = 0; n <= 40; n += 1) {
    for (double x : kArgs) {
      const double w = bessel_j(n, x) * bessel_y_prime(n, x) - bessel_j_prime(n, x) * bessel_y(n, x);
      const double expected = 2.0 / (std::numbers::pi * x);
      CHECK_MESSAGE(std::abs(w - expected) <= 1e-10 * expected, "n=", n, " x=", x);
    }
  }
}

TEST_CASE("three-term recurrence holds for J and Y") {
  for (int n = 1; n <= 40; ++n) {
    for (double x : kArgs) {
      const double jl = bessel_j(n - 1, x), jc = bessel_j(n, x), jh = bessel_j(n + 1, x);
      const double yl = bessel_y(n - 1, x), yc = bessel_y(n, x), yh = bessel_y(n + 1, x);
      const double js = std::max({std::abs(jl), std::abs(jh), std::abs(2.0 * n / x * jc)});
      const double ys = std::max({std::abs(yl), std::abs(yh), std::abs(2.0 * n / x * yc)});
      CHECK(std::abs(jl + jh - 2.0 * n / x * jc) <= 1e-10 * js);
      CHECK(std::abs(yl + yh - 2.0 * n / x * yc) <= 1e-10 * ys);
    }
  }
}

TEST_CASE("Hankel function and derivative identities") {
  for (double x : {0.3, 2.0, 8.8}) {
    const Complex h0 = hankel2(0, x);
    CHECK(h0.real() == bessel_j(0, x));
    CHECK(h0.imag() == -bessel_y(0, x));
    CHECK(bessel_j_prime(0, x) == -bessel_j(1, x));
  }
  const Complex lhs = hankel2_prime(1, 2.0);
  const Complex rhs = 0.5 * (hankel2(0, 2.0) - hankel2(2, 2.0));
  CHECK(std::abs(lhs - rhs) <= 1e-15 * std::abs(rhs));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(bessel_j(-1, 1.0), std::domain_error);
  CHECK_THROWS_AS(bessel_j(2, -0.5), std::domain_error);
  CHECK_THROWS_AS(bessel_y(0, 0.0), std::domain_error);
  CHECK_THROWS_AS(bessel_y(3, -1.0), std::domain_error);
  CHECK_THROWS_AS(bessel_j(kMaxOrder + 1, 1.0), std::domain_error);
  CHECK_THROWS_AS(hankel2(0, std::nan("")), std::domain_error);
  CHECK_NOTHROW(bessel_j_prime(kMaxOrder, 1.0));
}

TEST_CASE("integrate reproduces known integrals") {
  CHECK(std::abs(integrate([](double) { return Complex{1.0}; }, 0.0, 1.0) - 1.0) <= 1e-11);
  CHECK(std::abs(integrate_real([](double x) { return x * x; }, 0.0, 1.0) - 1.0 / 3.0) <= 1e-11);
  CHECK(std::abs(integrate_real([](double x) { return std::sin(x); }, 0.0, std::numbers::pi) -
                 2.0) <= 1e-11);
  const Complex osc = integrate([](double x) { return std::exp(Complex{0.0, 40.0 * x}); }, 0.0, 1.0);
  const Complex exact = (std::exp(Complex{0.0, 40.0}) - 1.0) / Complex{0.0, 40.0};
  CHECK(std::abs(osc - exact) <= 1e-11);
}

TEST_CASE("integrate matches the closed-form J0 moment integral") {
  const double k = 2.0 * std::numbers::pi * std::sqrt(60.0);
  const double g = 0.05, a = 0.08;
  const double quad = integrate_real([k](double r) { return bessel_j(0, k * r) * r; }, g, a);
  const double closed = (a * bessel_j(1, k * a) - g * bessel_j(1, k * g)) / k;
  CHECK(std::abs(quad - closed) <= 1e-10);
}

TEST_CASE("integrate reports failure instead of a wrong value") {
  auto pole = [](double x) { return 1.0 / ((x - 0.3) * (x - 0.3)); };
  CHECK_THROWS_AS(integrate_real(pole, 0.0, 1.0), QuadratureError);
  auto wiggle = [](double x) { return std::sin(500.0 * x); };
  CHECK_THROWS_AS(integrate_real(wiggle, 0.0, 1.0, {1e-11, 2}), QuadratureError);
  CHECK_THROWS_AS(integrate_real(wiggle, 1.0, 0.0), std::domain_error);
}

TEST_CASE("cylinder_sequence matches the scalar functions") {
  for (double x : {0.05, 1.3, 9.0, 48.0}) {
    const CylinderSequence s = cylinder_sequence(40, x);
    for (int n = 0; n <= 39; ++n) {
      const double jm = std::max(std::abs(bessel_j(n, x)), 1e-300);
      CHECK(std::abs(s.j[n] - bessel_j(n, x)) / jm < 1e-13);
      CHECK(std::abs(s.y[n] - bessel_y(n, x)) / std::abs(bessel_y(n, x)) < 1e-13);
      CHECK(std::abs(s.h2_prime(n) - hankel2_prime(n, x)) / std::abs(hankel2_prime(n, x)) < 1e-13);
    }
  }
  CHECK_THROWS_AS(cylinder_sequence(66, 1.0), std::domain_error);
  CHECK_THROWS_AS(cylinder_sequence(10, 0.0), std::domain_error);
}
