#include "surfbath/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "surfbath/errors.hpp"

namespace surfbath {

namespace {

// 7-point Gauss / 15-point Kronrod nodes and weights on [-1, 1].
constexpr double kGaussWeight[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};
constexpr double kKronrodNode[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kKronrodWeight[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

struct Panel {
  double value;
  double error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double gauss = kGaussWeight[3] * fc;
  double kronrod = kKronrodWeight[7] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNode[j];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeight[j] * pair;
    if (j % 2 == 1) gauss += kGaussWeight[j / 2] * pair;
  }
  const double value = kronrod * half;
  if (!std::isfinite(value))
    throw quadrature_error("integrand produced a non-finite value");
  return Panel{value, std::abs(kronrod - gauss) * std::abs(half)};
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double abs_tol, int depth, int max_depth) {
  const Panel p = gk15(f, a, b);
  if (p.error <= abs_tol) return p.value;
  if (depth >= max_depth)
    throw quadrature_error(
        "adaptive quadrature exhausted its subdivision budget");
  const double mid = 0.5 * (a + b);
  return adapt(f, a, mid, 0.5 * abs_tol, depth + 1, max_depth) +
         adapt(f, mid, b, 0.5 * abs_tol, depth + 1, max_depth);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol, int max_depth) {
  if (!(abs_tol > 0)) throw precondition_error("abs_tol must be positive");
  if (a == b) return 0.0;
  return adapt(f, a, b, abs_tol, 0, max_depth);
}

OscillatoryTail oscillatory_power_tail(double mu, double omega, double K) {
  if (!(K > 0)) throw precondition_error("tail cut K must be positive");
  if (!(mu < 0)) throw precondition_error("tail exponent mu must be negative");

  if (omega == 0.0) {
    if (mu >= -1.0)
      throw quadrature_error(
          "zero-frequency tail with exponent >= -1 does not converge");
    const double value = -std::pow(K, mu + 1.0) / (mu + 1.0);
    return OscillatoryTail{value, std::abs(value) * 1e-16};
  }

  const std::complex<double> iw(0.0, omega);
  const std::complex<double> boundary_phase =
      std::exp(std::complex<double>(0.0, omega * K));
  const double abs_w = std::abs(omega);

  std::complex<double> sum = 0.0;
  std::complex<double> coef = 1.0;
  double mu_j = mu;
  double pow_K = std::pow(K, mu);  // K^mu_j, maintained incrementally
  // |remaining integral before adding term j| <= |coef| * 2 K^mu_j / |omega|
  double bound = std::abs(coef) * 2.0 * pow_K / abs_w;
  double err = bound;
  for (int j = 0; j < 64; ++j) {
    const double scale = std::abs(sum) + std::abs(bound);
    if (bound <= 1e-22 * (1.0 + scale)) {
      err = bound;
      break;
    }
    sum += coef * (-(pow_K * boundary_phase) / iw);
    coef *= -mu_j / iw;
    mu_j -= 1.0;
    pow_K /= K;
    const double next_bound = std::abs(coef) * 2.0 * pow_K / abs_w;
    err = next_bound;
    // The series is asymptotic: stop at its smallest term.
    if (next_bound >= bound) break;
    bound = next_bound;
  }
  return OscillatoryTail{sum, err};
}

namespace {

// Large-argument expansion J0(x) ~ sqrt(2/(pi x)) *
//   sum_m x^-m [ kCosCoef[m] cos(x - pi/4) + kSinCoef[m] sin(x - pi/4) ].
constexpr double kCosCoef[7] = {
    1.0, 0.0, -9.0 / 128.0, 0.0, 3675.0 / 32768.0, 0.0,
    -2401245.0 / 4194304.0,
};
constexpr double kSinCoef[7] = {
    0.0, 1.0 / 8.0, 0.0, -75.0 / 1024.0, 0.0, 59535.0 / 262144.0, 0.0,
};
constexpr double kNextCoef = 57972915.0 / 67108864.0;  // first omitted term

}  // namespace

ValueWithError bessel_oscillatory_tail(double nu, double d, double b,
                                       Oscillator osc, double K) {
  if (!(d > 0)) throw precondition_error("bessel tail requires d > 0");
  if (!(K > 0)) throw precondition_error("bessel tail requires K > 0");
  if (nu > 0) throw precondition_error("bessel tail requires nu <= 0");
  if (b < 0) throw precondition_error("bessel tail requires b >= 0");

  const double pi = std::numbers::pi;
  const std::complex<double> phase = std::polar(1.0, -pi / 4.0);
  const double front = std::sqrt(2.0 / (pi * d));

  const double freq_zero_tol = 1e-12 * (d + b);
  const double diff = std::abs(d - b);

  std::complex<double> total = 0.0;
  double err = 0.0;
  double inv_dm = 1.0;  // d^-m
  for (int m = 0; m < 7; ++m, inv_dm /= d) {
    if (kCosCoef[m] == 0.0 && kSinCoef[m] == 0.0) continue;
    const std::complex<double> cm =
        front * inv_dm * std::complex<double>(kCosCoef[m], -kSinCoef[m]) *
        phase;
    const double mu = nu - 0.5 - m;
    switch (osc) {
      case Oscillator::none: {
        const OscillatoryTail t = oscillatory_power_tail(mu, d, K);
        total += cm * t.value;
        err += std::abs(cm) * t.error;
        break;
      }
      case Oscillator::cosine:
      case Oscillator::sine: {
        const double w_minus = diff <= freq_zero_tol ? 0.0 : d - b;
        const OscillatoryTail tp = oscillatory_power_tail(mu, d + b, K);
        const OscillatoryTail tm = oscillatory_power_tail(mu, w_minus, K);
        if (osc == Oscillator::cosine)
          total += 0.5 * cm * (tp.value + tm.value);
        else
          total += cm * (tp.value - tm.value) /
                   std::complex<double>(0.0, 2.0);
        err += 0.5 * std::abs(cm) * (tp.error + tm.error);
        break;
      }
    }
  }

  // Truncation of the J0 expansion: the omitted piece has integrand
  // magnitude at most g7(k) = k^nu sqrt(2/(pi k d)) * kNextCoef * (k d)^-7,
  // integrated with one round of oscillation credit per active frequency.
  const double g7 =
      std::pow(K, nu) * std::sqrt(2.0 / (pi * K * d)) * kNextCoef *
      std::pow(K * d, -7.0);
  double trunc = 0.0;
  if (osc == Oscillator::none) {
    trunc = 2.0 * g7 / d;
  } else {
    trunc = 2.0 * g7 / (d + b);
    if (diff <= freq_zero_tol)
      trunc += g7 * K / 6.0;  // non-oscillatory component decays as a power
    else
      trunc += 2.0 * g7 / diff;
  }
  err += trunc;

  return ValueWithError{total.real(), err};
}

double bessel_tail_cut(double d, double b) {
  if (!(d > 0)) throw precondition_error("tail cut requires d > 0");
  if (b < 0) throw precondition_error("tail cut requires b >= 0");
  double m = d;
  if (d + b > 0) m = std::min(m, d + b);
  const double diff = std::abs(d - b);
  if (diff > 1e-12 * (d + b)) m = std::min(m, diff);
  return 35.0 / m;
}

}  // namespace surfbath
