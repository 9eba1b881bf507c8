#pragma once

#include <cstdint>
#include <vector>

#include "surfbath/lattice.hpp"

namespace surfbath {

// Finite cluster used by the mean-field critical-point estimate: an L x L
// lattice, the qubit closest to the centroid as the cluster center, and the
// qubits on the bounding box of the layout as the boundary set.
struct ClusterModel {
  Lattice lattice;
  int center = 0;
  std::vector<int> boundary;
};

ClusterModel build_cluster(int size, double spacing = 1.0);

struct CamOptions {
  bool connected = false;   // subtract <S0><Si> from each correlator
  int workers = 1;
  double bracket_lo = 1e-4;  // bracket in x = beta*|J|
  double bracket_hi = 2.0;
  double rel_tol = 1e-6;
};

// Center-boundary correlators on a cluster with unit-magnitude
// ferromagnetic nearest-neighbor coupling, evaluated in the reference
// logical state: the thermally weighted positive-character class, i.e. the
// tile-generated orbit of the all-up configuration.  One enumeration at
// construction compresses that class into exact integer histograms over the
// antiparallel-pair count, so evaluation at any temperature is closed-form
// afterwards.
//
// All quantities are functions of the dimensionless x = beta*|J| with the
// coupling normalized so that each unordered neighbor pair contributes
// J s_i s_j to the energy once (an antiparallel pair costs 2|J|).
class CamCorrelator {
 public:
  CamCorrelator(const ClusterModel& cluster, const CamOptions& opt = {});

  // <S0 Si> at inverse temperature x for the i-th boundary qubit.
  double correlator(int boundary_index, double x) const;
  // Sum of correlator() over the whole boundary.
  double boundary_correlation_sum(double x) const;

  int boundary_size() const { return static_cast<int>(joint_.size()); }

 private:
  double weighted_mean(const std::vector<std::int64_t>& hist, double x) const;

  bool connected_ = false;
  int n_pairs_ = 0;
  // Exact spin sums binned by the antiparallel-pair count k: total_[k] counts
  // configurations, joint_[i][k] accumulates s0*si, site_[i][k] accumulates
  // si, center_[k] accumulates s0.
  std::vector<std::int64_t> total_;
  std::vector<std::vector<std::int64_t>> joint_;
  std::vector<std::vector<std::int64_t>> site_;
  std::vector<std::int64_t> center_;
};

// Root x_c of the self-consistency condition
//   1 - x * sum_i <S0 Si>(x) = 0
// located by bisection inside [bracket_lo, bracket_hi].  Returns the
// dimensionless critical point x_c = beta_c*|J|.
double cam_critical_point(const ClusterModel& cluster,
                          const CamOptions& opt = {});

struct CamExtrapolation {
  std::vector<int> sizes;          // cluster sizes L
  std::vector<double> x_c;         // beta_c*|J| per size
  double slope = 0.0;              // of T_c vs 1/L
  double intercept = 0.0;          // T_c at 1/L -> 0 (units of |J|)
  double intercept_stderr = 0.0;
  double beta_c = 0.0;             // 1/intercept
  double beta_c_stderr = 0.0;      // propagated from the intercept
};

// Critical point per cluster size followed by a least-squares extrapolation
// of T_c = 1/x_c against 1/L to the infinite-size limit.
CamExtrapolation cam_extrapolate(const std::vector<int>& sizes,
                                 const CamOptions& opt = {});

// Closed-form estimates from counting string excitations with effective
// branching number mu on a lattice of the given coordination number.
double entropy_balance_beta_c(double mu = 2.64, int coordination = 4);
double flip_probability_threshold(double mu = 2.64, int coordination = 4);

}  // namespace surfbath
