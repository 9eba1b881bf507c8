#include "surfbath/bath.hpp"

#include <cmath>
#include <numbers>

#include "surfbath/errors.hpp"
#include "surfbath/quadrature.hpp"

namespace surfbath {

namespace {

constexpr double kPi = std::numbers::pi;

// The three spectral families as 2s in {-1, 0, +1}.
int twice_s(double s) {
  if (std::abs(s + 0.5) < 1e-12) return -1;
  if (std::abs(s) < 1e-12) return 0;
  if (std::abs(s - 0.5) < 1e-12) return 1;
  throw precondition_error("spectral exponent s must be -0.5, 0, or +0.5");
}

double one_minus_cos(double x) {
  const double h = std::sin(0.5 * x);
  return 2.0 * h * h;
}

double x_minus_sin(double x) {
  if (std::abs(x) < 0.1) {
    const double x2 = x * x;
    return (x * x2 / 6.0) *
           (1.0 - x2 / 20.0 + x2 * x2 / 840.0 - x2 * x2 * x2 / 60480.0);
  }
  return x - std::sin(x);
}

void require_cutoff(const BathParams& p) {
  if (!(p.cutoff > 0))
    throw cutoff_required(
        "on-site correlator is UV divergent; a positive momentum cutoff is "
        "required");
}

void check_off_ring(const BathParams& p, double d) {
  const double b = p.v * p.delta;
  if (std::abs(d - b) <= 1e-9 * b)
    throw light_cone_singularity(
        "correlator diverges on the light-cone ring d = v*delta");
}

// ((v/omega0)^(2+2s)) / (pi v^2), shared by all momentum representations.
double family_prefactor(const BathParams& p, int fam) {
  return std::pow(p.v / p.omega0, 2.0 + fam) / (kPi * p.v * p.v);
}

}  // namespace

void validate(const BathParams& p) {
  twice_s(p.s);
  if (!(p.delta > 0)) throw precondition_error("delta must be positive");
  if (!(p.v > 0)) throw precondition_error("v must be positive");
  if (!(p.omega0 > 0)) throw precondition_error("omega0 must be positive");
  if (p.cutoff < 0) throw precondition_error("cutoff must be >= 0");
}

double bath_g_real(const BathParams& p, double d) {
  validate(p);
  if (d < 0) throw precondition_error("separation must be >= 0");
  const double b = p.v * p.delta;  // light-cone radius
  switch (twice_s(p.s)) {
    case -1: {
      if (d == 0.0) return p.delta / (2.0 * p.omega0);
      if (d <= b)
        return -d / (kPi * p.v * p.omega0) + p.delta / (2.0 * p.omega0);
      return -d / (kPi * p.v * p.omega0) +
             (p.delta / (kPi * p.omega0)) *
                 (std::asin(b / d) + std::sqrt(d * d / (b * b) - 1.0));
    }
    case 0: {
      if (d == 0.0) {
        require_cutoff(p);
        return std::log(2.0 * b * p.cutoff) / (kPi * p.omega0 * p.omega0);
      }
      if (d < b) return std::acosh(b / d) / (kPi * p.omega0 * p.omega0);
      return 0.0;
    }
    default: {
      const double pre = p.v / (kPi * std::pow(p.omega0, 3));
      if (d == 0.0) {
        require_cutoff(p);
        return pre * (p.cutoff - std::sin(b * p.cutoff) / b);
      }
      check_off_ring(p, d);
      if (d < b) return pre / d;
      return pre * (1.0 / d - 1.0 / std::sqrt(d * d - b * b));
    }
  }
}

double bath_g_imag(const BathParams& p, double d) {
  validate(p);
  if (d < 0) throw precondition_error("separation must be >= 0");
  if (d == 0.0) return 0.0;  // on-site imaginary part is defined away
  const double b = p.v * p.delta;
  switch (twice_s(p.s)) {
    case -1: {
      if (d >= b) return 0.0;
      return -(p.delta / (kPi * p.omega0)) *
             (std::acosh(b / d) - std::sqrt(1.0 - d * d / (b * b)));
    }
    case 0: {
      if (d <= b) return 1.0 / (2.0 * p.omega0 * p.omega0);
      return std::asin(b / d) / (kPi * p.omega0 * p.omega0);
    }
    default: {
      check_off_ring(p, d);
      if (d > b) return 0.0;
      return (p.v / (kPi * std::pow(p.omega0, 3))) /
             std::sqrt(b * b - d * d);
    }
  }
}

double bath_g_real_quadrature(const BathParams& p, double d, double abs_tol) {
  validate(p);
  if (!(d > 0))
    throw precondition_error("quadrature reference requires d > 0");
  if (!(abs_tol > 0)) throw precondition_error("abs_tol must be positive");
  const double b = p.v * p.delta;
  const int fam = twice_s(p.s);
  const double nu = fam - 1.0;  // k-exponent 2s - 1
  const double K = bessel_tail_cut(d, b);

  const ValueWithError flat =
      bessel_oscillatory_tail(nu, d, 0.0, Oscillator::none, K);
  const ValueWithError wave =
      bessel_oscillatory_tail(nu, d, b, Oscillator::cosine, K);
  const double tail = flat.value - wave.value;
  const double tail_err = flat.error + wave.error;
  if (tail_err > 0.5 * abs_tol)
    throw quadrature_error("oscillatory tail error exceeds the budget");

  const double head = integrate_adaptive(
      [&](double k) {
        return std::pow(k, nu) * one_minus_cos(k * b) *
               std::cyl_bessel_j(0.0, k * d);
      },
      0.0, K, 0.5 * abs_tol);

  return family_prefactor(p, fam) * (head + tail);
}

double bath_g_imag_quadrature(const BathParams& p, double d, double abs_tol) {
  validate(p);
  if (!(d > 0))
    throw precondition_error("quadrature reference requires d > 0");
  if (!(abs_tol > 0)) throw precondition_error("abs_tol must be positive");
  const double b = p.v * p.delta;
  const int fam = twice_s(p.s);
  const double K = bessel_tail_cut(d, b);
  const double pre = family_prefactor(p, fam);

  switch (fam) {
    case -1: {
      const ValueWithError flat =
          bessel_oscillatory_tail(-1.0, d, 0.0, Oscillator::none, K);
      const ValueWithError wave =
          bessel_oscillatory_tail(-2.0, d, b, Oscillator::sine, K);
      const double tail = b * flat.value - wave.value;
      const double tail_err = b * flat.error + wave.error;
      if (tail_err > 0.5 * abs_tol)
        throw quadrature_error("oscillatory tail error exceeds the budget");
      const double head = integrate_adaptive(
          [&](double k) {
            return x_minus_sin(k * b) / (k * k) *
                   std::cyl_bessel_j(0.0, k * d);
          },
          0.0, K, 0.5 * abs_tol);
      return -pre * (head + tail);
    }
    case 0: {
      const ValueWithError wave =
          bessel_oscillatory_tail(-1.0, d, b, Oscillator::sine, K);
      if (wave.error > 0.5 * abs_tol)
        throw quadrature_error("oscillatory tail error exceeds the budget");
      const double head = integrate_adaptive(
          [&](double k) {
            return std::sin(k * b) / k * std::cyl_bessel_j(0.0, k * d);
          },
          0.0, K, 0.5 * abs_tol);
      return pre * (head + wave.value);
    }
    default: {
      const ValueWithError wave =
          bessel_oscillatory_tail(0.0, d, b, Oscillator::sine, K);
      if (wave.error > 0.5 * abs_tol)
        throw quadrature_error("oscillatory tail error exceeds the budget");
      const double head = integrate_adaptive(
          [&](double k) {
            return std::sin(k * b) * std::cyl_bessel_j(0.0, k * d);
          },
          0.0, K, 0.5 * abs_tol);
      return pre * (head + wave.value);
    }
  }
}

std::complex<double> bath_phi(const BathParams& p, double d) {
  return 0.5 * std::complex<double>(bath_g_real(p, d), bath_g_imag(p, d));
}

std::complex<double> bath_coupling(const BathParams& p, double d) {
  validate(p);
  const double scale =
      kPi * p.omega0 * p.omega0 * std::pow(p.omega0 * p.delta, 2.0 * p.s);
  return scale * bath_phi(p, d);
}

double lambda_squared_for_beta(const BathParams& p, double beta) {
  validate(p);
  if (beta < 0) throw precondition_error("beta must be >= 0");
  return 2.0 * kPi * beta * p.omega0 * p.omega0 *
         std::pow(p.omega0 * p.delta, 2.0 * p.s);
}

double flip_probability(const BathParams& p, double beta) {
  const double g0 = bath_g_real(p, 0.0);
  const double l2 = lambda_squared_for_beta(p, beta);
  return 0.5 * (1.0 - std::exp(-0.25 * l2 * g0));
}

double beta_for_flip_probability(const BathParams& p, double prob) {
  validate(p);
  if (!(prob >= 0.0 && prob < 0.5))
    throw precondition_error("flip probability must lie in [0, 1/2)");
  const double log1m = std::log1p(-2.0 * prob);  // log(1 - 2p) <= 0
  switch (twice_s(p.s)) {
    case -1:
      return -4.0 / kPi * log1m;
    case 0: {
      require_cutoff(p);
      const double denom = std::log(2.0 * p.v * p.delta * p.cutoff);
      if (denom == 0.0)
        throw precondition_error("cutoff makes the on-site correlator vanish");
      return -2.0 * log1m / denom;
    }
    default: {
      require_cutoff(p);
      const double u = p.v * p.delta * p.cutoff;
      const double denom = x_minus_sin(u);
      if (denom == 0.0)
        throw precondition_error("cutoff makes the on-site correlator vanish");
      return -2.0 * log1m / denom;
    }
  }
}

double dephasing_weight(const BathParams& p, double beta, int n_qubits) {
  if (n_qubits < 0) throw precondition_error("n_qubits must be >= 0");
  const double g0 = bath_g_real(p, 0.0);
  return std::exp(-0.125 * lambda_squared_for_beta(p, beta) * n_qubits * g0);
}

}  // namespace surfbath
