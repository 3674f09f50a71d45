#pragma once

// Cylinder functions of integer order and real argument, and the adaptive
// quadrature used to check closed-form integrals of them.
//
// Time convention is exp(+j*omega*t): outgoing waves are H2_n = J_n - j*Y_n.

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cloakcyl/constants.hpp"

namespace cloak::specfun {

/// Highest order supported by the cylinder functions.
inline constexpr int kMaxOrder = 64;

/// Raised when adaptive quadrature cannot meet its tolerance within the depth limit.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double bessel_j(int n, double x);
double bessel_y(int n, double x);
double bessel_j_prime(int n, double x);
double bessel_y_prime(int n, double x);
Complex hankel2(int n, double x);
Complex hankel2_prime(int n, double x);

/// J_n and Y_n for n = 0..nmax at one argument x > 0, from a single recurrence pass.
/// Entries beyond nmax are not computed; nmax may exceed kMaxOrder by one so that
/// derivatives up to kMaxOrder can be formed.
struct CylinderSequence {
  std::vector<double> j;
  std::vector<double> y;

  double j_prime(int n) const { return n == 0 ? -j[1] : 0.5 * (j[n - 1] - j[n + 1]); }
  double y_prime(int n) const { return n == 0 ? -y[1] : 0.5 * (y[n - 1] - y[n + 1]); }
  Complex h2(int n) const { return {j[n], -y[n]}; }
  Complex h2_prime(int n) const { return {j_prime(n), -y_prime(n)}; }
};

CylinderSequence cylinder_sequence(int nmax, double x);

using ComplexIntegrand = std::function<Complex(double)>;

struct QuadratureOptions {
  double tol = 1e-11;  ///< absolute error target over the whole interval
  int max_depth = 50;  ///< bisection depth limit
};

/// Adaptive Gauss-Kronrod (7/15) quadrature with interval bisection.
/// Throws QuadratureError if any panel fails to converge at max_depth.
Complex integrate(const ComplexIntegrand& f, double lo, double hi,
                  QuadratureOptions opts = {});

/// Real-valued convenience overload.
double integrate_real(const std::function<double(double)>& f, double lo, double hi,
                      QuadratureOptions opts = {});

}  // namespace cloak::specfun
