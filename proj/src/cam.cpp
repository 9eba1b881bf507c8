#include "surfbath/cam.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coset_walk.hpp"
#include "surfbath/errors.hpp"
#include "surfbath/spinmodel.hpp"

namespace surfbath {

namespace {

constexpr int kMaxGenerators = 22;

}  // namespace

ClusterModel build_cluster(int size, double spacing) {
  if (size < 1) throw precondition_error("cluster size must be >= 1");
  ClusterModel cluster;
  cluster.lattice = build_lattice(LatticeSpec{size, size, spacing});
  const Lattice& lat = cluster.lattice;

  Vec2 centroid;
  for (const Vec2& p : lat.positions) {
    centroid.x += p.x;
    centroid.y += p.y;
  }
  centroid.x /= lat.n_qubits;
  centroid.y /= lat.n_qubits;

  double best = -1.0;
  for (int q = 0; q < lat.n_qubits; ++q) {
    const double d = std::hypot(lat.positions[static_cast<std::size_t>(q)].x -
                                    centroid.x,
                                lat.positions[static_cast<std::size_t>(q)].y -
                                    centroid.y);
    if (best < 0.0 || d < best) {
      best = d;
      cluster.center = q;
    }
  }

  double min_x = lat.positions[0].x, max_x = lat.positions[0].x;
  double min_y = lat.positions[0].y, max_y = lat.positions[0].y;
  for (const Vec2& p : lat.positions) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double tol = 1e-9 * spacing;
  for (int q = 0; q < lat.n_qubits; ++q) {
    const Vec2& p = lat.positions[static_cast<std::size_t>(q)];
    const bool on_box =
        std::abs(p.x - min_x) <= tol || std::abs(p.x - max_x) <= tol ||
        std::abs(p.y - min_y) <= tol || std::abs(p.y - max_y) <= tol;
    if (on_box && q != cluster.center) cluster.boundary.push_back(q);
  }
  return cluster;
}

CamCorrelator::CamCorrelator(const ClusterModel& cluster,
                             const CamOptions& opt) {
  const Lattice& lat = cluster.lattice;
  const int n_gen = static_cast<int>(lat.plaquettes.size());
  if (n_gen > kMaxGenerators)
    throw precondition_error(
        "cluster has " + std::to_string(n_gen) +
        " tile generators; enumeration supports at most " +
        std::to_string(kMaxGenerators));
  connected_ = opt.connected;

  const CouplingModel cm = nearest_neighbor_couplings(lat, {-1.0, 0.0});
  n_pairs_ = static_cast<int>(cm.pairs.size());
  const int n_boundary = static_cast<int>(cluster.boundary.size());
  const int center = cluster.center;

  // Correlators of the reference logical state: the tile-generated orbit of
  // the all-up configuration, i.e. the positive-character class alone.
  std::vector<QubitSet> gens;
  gens.reserve(lat.plaquettes.size());
  for (const Stabilizer& p : lat.plaquettes) gens.push_back(p.qubits);
  const QubitSet ref{};
  const detail::ChunkPlan plan(n_gen);

  std::vector<std::vector<int>> touched(gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (int pi = 0; pi < n_pairs_; ++pi) {
      const auto& [i, j] = cm.pairs[static_cast<std::size_t>(pi)];
      if (gens[g].test(i) != gens[g].test(j)) touched[g].push_back(pi);
    }

  const std::size_t n_bins = static_cast<std::size_t>(n_pairs_) + 1;
  total_.assign(n_bins, 0);
  center_.assign(n_bins, 0);
  joint_.assign(static_cast<std::size_t>(n_boundary),
                std::vector<std::int64_t>(n_bins, 0));
  site_.assign(static_cast<std::size_t>(n_boundary),
               std::vector<std::int64_t>(n_bins, 0));

  struct ChunkTallies {
    std::vector<std::int64_t> total, center;
    std::vector<std::vector<std::int64_t>> joint, site;
  };

  std::vector<ChunkTallies> partial(static_cast<std::size_t>(plan.n_chunks));
  {
    const int workers = std::max(1, opt.workers);
    detail::run_chunks(plan.n_chunks, workers, [&](int chunk) {
      ChunkTallies& t = partial[static_cast<std::size_t>(chunk)];
      t.total.assign(n_bins, 0);
      t.center.assign(n_bins, 0);
      t.joint.assign(static_cast<std::size_t>(n_boundary),
                     std::vector<std::int64_t>(n_bins, 0));
      t.site.assign(static_cast<std::size_t>(n_boundary),
                    std::vector<std::int64_t>(n_bins, 0));
      int anti = 0;
      auto tally = [&](const QubitSet& cfg) {
        const std::size_t k = static_cast<std::size_t>(anti);
        const std::int64_t s0 = cfg.test(center) ? -1 : 1;
        ++t.total[k];
        t.center[k] += s0;
        for (int b = 0; b < n_boundary; ++b) {
          const std::int64_t si =
              cfg.test(cluster.boundary[static_cast<std::size_t>(b)]) ? -1
                                                                      : 1;
          t.joint[static_cast<std::size_t>(b)][k] += s0 * si;
          t.site[static_cast<std::size_t>(b)][k] += si;
        }
      };
      detail::walk_range(
          gens, ref, plan.begin(chunk), plan.end(chunk),
          [&](const QubitSet& cfg) {
            anti = 0;
            for (const auto& [i, j] : cm.pairs)
              anti += cfg.test(i) != cfg.test(j);
            tally(cfg);
          },
          [&](int gen, const QubitSet& cfg) {
            for (const int pi : touched[static_cast<std::size_t>(gen)]) {
              const auto& [i, j] = cm.pairs[static_cast<std::size_t>(pi)];
              anti += cfg.test(i) != cfg.test(j) ? 1 : -1;
            }
            tally(cfg);
          });
    });
  }
  for (const ChunkTallies& t : partial) {
    for (std::size_t k = 0; k < n_bins; ++k) {
      total_[k] += t.total[k];
      center_[k] += t.center[k];
    }
    for (int b = 0; b < n_boundary; ++b)
      for (std::size_t k = 0; k < n_bins; ++k) {
        joint_[static_cast<std::size_t>(b)][k] +=
            t.joint[static_cast<std::size_t>(b)][k];
        site_[static_cast<std::size_t>(b)][k] +=
            t.site[static_cast<std::size_t>(b)][k];
      }
  }
}

// With |J| = 1 in unordered-pair units, each antiparallel pair costs 2 above
// the ground state, so bin k carries weight exp(-2*x*k).
double CamCorrelator::weighted_mean(const std::vector<std::int64_t>& hist,
                                    double x) const {
  const double y = std::exp(-2.0 * x);
  double num = 0.0;
  double den = 0.0;
  double w = 1.0;
  for (std::size_t k = 0; k < hist.size(); ++k, w *= y) {
    num += static_cast<double>(hist[k]) * w;
    den += static_cast<double>(total_[k]) * w;
  }
  return num / den;
}

double CamCorrelator::correlator(int boundary_index, double x) const {
  if (boundary_index < 0 || boundary_index >= boundary_size())
    throw precondition_error("boundary index out of range");
  const std::size_t b = static_cast<std::size_t>(boundary_index);
  double value = weighted_mean(joint_[b], x);
  if (connected_)
    value -= weighted_mean(site_[b], x) * weighted_mean(center_, x);
  return value;
}

double CamCorrelator::boundary_correlation_sum(double x) const {
  double sum = 0.0;
  for (int b = 0; b < boundary_size(); ++b) sum += correlator(b, x);
  return sum;
}

double cam_critical_point(const ClusterModel& cluster, const CamOptions& opt) {
  const CamCorrelator corr(cluster, opt);
  auto residual = [&](double x) {
    return 1.0 - x * corr.boundary_correlation_sum(x);
  };
  double lo = opt.bracket_lo;
  double hi = opt.bracket_hi;
  if (!(lo > 0 && hi > lo))
    throw precondition_error("invalid self-consistency bracket");
  double f_lo = residual(lo);
  double f_hi = residual(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0) == (f_hi > 0))
    throw precondition_error(
        "self-consistency residual does not change sign in the bracket");
  while (hi - lo > opt.rel_tol * lo) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = residual(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0) == (f_lo > 0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

CamExtrapolation cam_extrapolate(const std::vector<int>& sizes,
                                 const CamOptions& opt) {
  if (sizes.size() < 2)
    throw precondition_error("extrapolation needs at least two cluster sizes");
  CamExtrapolation out;
  out.sizes = sizes;
  for (const int size : sizes)
    out.x_c.push_back(cam_critical_point(build_cluster(size), opt));

  // Least-squares line T_c = intercept + slope / L.
  const std::size_t n = sizes.size();
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += 1.0 / sizes[i];
    sy += 1.0 / out.x_c[i];
  }
  const double mx = sx / static_cast<double>(n);
  const double my = sy / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = 1.0 / sizes[i] - mx;
    sxx += dx * dx;
    sxy += dx * (1.0 / out.x_c[i] - my);
  }
  if (sxx == 0.0) throw precondition_error("cluster sizes must differ");
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;

  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r =
        1.0 / out.x_c[i] - (out.intercept + out.slope / sizes[i]);
    ssr += r * r;
  }
  const double dof = static_cast<double>(n) - 2.0;
  const double var = dof > 0 ? ssr / dof : 0.0;
  out.intercept_stderr =
      std::sqrt(var * (1.0 / static_cast<double>(n) + mx * mx / sxx));

  if (!(out.intercept > 0))
    throw precondition_error("extrapolated critical temperature is not positive");
  out.beta_c = 1.0 / out.intercept;
  out.beta_c_stderr = out.intercept_stderr / (out.intercept * out.intercept);
  return out;
}

double entropy_balance_beta_c(double mu, int coordination) {
  if (!(mu > 1.0))
    throw precondition_error("branching number mu must exceed 1");
  if (coordination < 1)
    throw precondition_error("coordination number must be >= 1");
  return std::log(mu) / (2.0 * coordination);
}

double flip_probability_threshold(double mu, int coordination) {
  if (!(mu > 1.0))
    throw precondition_error("branching number mu must exceed 1");
  if (coordination < 1)
    throw precondition_error("coordination number must be >= 1");
  return std::log(mu) / (4.0 * coordination);
}

}  // namespace surfbath
