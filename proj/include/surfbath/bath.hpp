#pragma once

#include <complex>

namespace surfbath {

// Parameters of the two-dimensional linear-dispersion mode bath.  The
// spectral exponent s selects one of three families (-0.5, 0, +0.5); delta
// is the exposure time between stabilizer resets, v the mode speed, omega0
// the reference frequency fixing units.  cutoff is an ultraviolet momentum
// cutoff; it is required (> 0) only where a correlator is UV divergent
// (on-site real part for s >= 0), and ignored elsewhere.
struct BathParams {
  double s = 0.0;
  double delta = 1.0;
  double v = 1.0;
  double omega0 = 1.0;
  double cutoff = 0.0;  // 0 means "not supplied"
};

// Throws precondition_error unless s is one of {-0.5, 0, +0.5} and
// delta, v, omega0 are positive (cutoff may be 0 or positive).
void validate(const BathParams& p);

// Real part of the equal-time bath correlator kernel at separation d >= 0
// (closed form).  Throws cutoff_required at d == 0 for s >= 0 when no cutoff
// is set, and light_cone_singularity on the ring |d - v*delta| <= 1e-9*v*delta
// for s = +0.5.
double bath_g_real(const BathParams& p, double d);

// Imaginary-part generator of the kernel at separation d >= 0 (closed form);
// the on-site value is defined as 0 for every family.  Throws
// light_cone_singularity on the ring for s = +0.5.
double bath_g_imag(const BathParams& p, double d);

// Independent evaluation of the same kernels by numerical quadrature of
// their momentum-integral representations (adaptive head plus asymptotic
// oscillatory tail).  Requires d > 0; throws quadrature_error if the
// requested absolute tolerance cannot be certified.
double bath_g_real_quadrature(const BathParams& p, double d,
                              double abs_tol = 1e-9);
double bath_g_imag_quadrature(const BathParams& p, double d,
                              double abs_tol = 1e-9);

// Half-sum generator phi(d) = (g_real + i*g_imag)/2.
std::complex<double> bath_phi(const BathParams& p, double d);

// Effective spin-spin coupling J(d) = pi*omega0^2*(omega0*delta)^(2s)*phi(d),
// i.e. phi scaled by lambda^2/(2*beta) under the calibration below, which
// makes J independent of the system-bath coupling strength lambda.
std::complex<double> bath_coupling(const BathParams& p, double d);

// Calibration lambda^2 = 2*pi*beta*omega0^2*(omega0*delta)^(2s) tying the
// coupling strength to the inverse temperature of the equivalent spin model.
double lambda_squared_for_beta(const BathParams& p, double beta);

// Single-qubit flip probability p(beta) = (1 - exp(-lambda^2/4 * gR(0)))/2
// with lambda from the calibration above.  Needs cutoff for s >= 0.
double flip_probability(const BathParams& p, double beta);

// Closed-form inverse of flip_probability (per spectral family); requires
// 0 <= prob < 1/2.
double beta_for_flip_probability(const BathParams& p, double prob);

// Uniform coherence prefactor exp(-lambda^2/8 * n_qubits * gR(0)) shared by
// all amplitudes; equals (1 - 2p)^(n_qubits/2).
double dephasing_weight(const BathParams& p, double beta, int n_qubits);

}  // namespace surfbath
