#pragma once

#include <complex>
#include <functional>

namespace surfbath {

struct ValueWithError {
  double value = 0.0;
  double error = 0.0;
};

// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b] to an absolute
// tolerance.  Bisects recursively wherever the embedded error estimate is too
// large; throws quadrature_error if the tolerance is unreachable within
// max_depth levels.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol, int max_depth = 48);

struct OscillatoryTail {
  std::complex<double> value;
  double error = 0.0;
};

// Integral of x^mu * exp(i*omega*x) over [K, infinity), evaluated by
// repeated integration by parts.  The series is asymptotic in 1/(|omega|*K):
// choose K with |omega|*K >~ 30 for full double precision.  omega == 0 is
// allowed when mu < -1 (plain power tail).  Requires mu < 0 and K > 0.
OscillatoryTail oscillatory_power_tail(double mu, double omega, double K);

enum class Oscillator { none, cosine, sine };

// Integral of k^nu * J0(d*k) * w(b*k) over [K, infinity), where w is 1,
// cos or sin according to `osc`.  Uses the large-argument expansion of J0
// (five terms), so K must satisfy d*K >~ 30 and |d - b|*K, (d + b)*K >~ 30
// for every frequency that actually appears.  Requires d > 0 and nu <= 0.
ValueWithError bessel_oscillatory_tail(double nu, double d, double b,
                                       Oscillator osc, double K);

// Cut point used to split a semi-infinite Bessel-weighted integral into an
// adaptively integrated head [0, K] and an asymptotic tail: K = 35 over the
// smallest nonzero member of {d, d + b, |d - b|}.
double bessel_tail_cut(double d, double b);

}  // namespace surfbath
