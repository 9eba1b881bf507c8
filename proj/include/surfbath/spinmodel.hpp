#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "surfbath/bath.hpp"
#include "surfbath/lattice.hpp"

namespace surfbath {

// Pairwise couplings of the equivalent classical spin model.  Either a
// uniform value on nearest-neighbor pairs or a dense symmetric matrix with
// zero diagonal (one entry per ordered pair, row-major).
struct CouplingModel {
  int n_qubits = 0;
  bool uniform_nn = true;
  std::complex<double> j_nn{0.0, 0.0};
  std::vector<std::pair<int, int>> pairs;       // uniform case, i < j
  std::vector<std::complex<double>> matrix;     // dense case, n_qubits^2

  std::complex<double> at(int i, int j) const;
};

// Uniform coupling j on every nearest-neighbor pair of the lattice.
CouplingModel nearest_neighbor_couplings(const Lattice& lat,
                                         std::complex<double> j);

// Distance-dependent couplings J(d_ij) induced by the bath between every
// qubit pair.  May throw the bath's domain errors (e.g. on the light cone).
CouplingModel bath_couplings(const Lattice& lat, const BathParams& bath);

// E(config) = sum over ordered pairs i != j of J_ij s_i s_j, i.e. twice the
// sum over unordered pairs.  A set bit in `config` means spin down (s = -1).
std::complex<double> config_energy(const CouplingModel& cm,
                                   const QubitSet& config);

// True when every star product over the configuration equals +1; such
// configurations form the restricted ensemble.
bool satisfies_star_constraints(const Lattice& lat, const QubitSet& config);

// 0 or 1 according to the sign of the horizontal-string character
// (+1 -> class 0); defined on restricted-ensemble configurations.
int logical_class(const Lattice& lat, const QubitSet& config);

// Boltzmann sums over the two logical classes: a = class0 + class1,
// b = class0 - class1.  Uniform prefactors (coherence weight, Hilbert-space
// normalization) are omitted; energies are shifted by a common beta-
// independent offset (the minimal real part over the ensemble).
struct AmplitudePair {
  std::complex<double> a;
  std::complex<double> b;
};

// |a| / sqrt(|a|^2 + |b|^2); exactly 1 when b == 0.  Throws
// degenerate_amplitude when both vanish.
double fidelity_of(const AmplitudePair& amp);

struct EnsembleOptions {
  int workers = 1;
  bool force_dense = false;  // bypass the pair-count histogram shortcut
};

// Enumerates the restricted ensemble (all configurations satisfying the star
// constraints) once at construction and evaluates class sums at arbitrary
// inverse temperature afterwards.
//
// With uniform nearest-neighbor couplings the enumeration is compressed into
// exact integer histograms over the antiparallel-pair count; otherwise the
// complex energy of every configuration is cached.  Both paths enumerate in
// a fixed 256-chunk order with compensated per-chunk accumulation, so all
// results are bit-identical for any worker count.
class RestrictedEnsemble {
 public:
  RestrictedEnsemble(const Lattice& lat, const CouplingModel& cm,
                     const EnsembleOptions& opt = {});

  AmplitudePair amplitudes(double beta) const;
  std::vector<AmplitudePair> amplitudes(const std::vector<double>& betas) const;
  double fidelity(double beta) const;

  // Common shift subtracted from every energy before exponentiation.
  std::complex<double> energy_offset() const { return offset_; }
  // Number of independent generators (tile stabilizers).
  int generator_count() const { return n_generators_; }
  // Total number of configurations, 2^(generators + 1).
  std::uint64_t ensemble_size() const;

 private:
  AmplitudePair amplitudes_dos(double beta) const;
  AmplitudePair amplitudes_dense(double beta) const;

  int n_generators_ = 0;
  int workers_ = 1;
  bool dense_ = false;
  std::complex<double> offset_{0.0, 0.0};
  // histogram path: counts per antiparallel-pair count, one per class
  std::complex<double> j_nn_{0.0, 0.0};
  int n_pairs_ = 0;
  std::vector<std::uint64_t> hist_[2];
  // dense path: offset-shifted energies per class
  std::vector<std::complex<double>> energies_[2];
};

// Independent reference: scans all 2^N spin configurations, filters by the
// star constraints, and accumulates the class sums directly.  Uses the same
// offset convention as RestrictedEnsemble.  Only for small lattices
// (N <= 25).
AmplitudePair brute_force_amplitudes(const Lattice& lat,
                                     const CouplingModel& cm, double beta);

}  // namespace surfbath
