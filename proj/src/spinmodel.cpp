#include "surfbath/spinmodel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coset_walk.hpp"
#include "surfbath/errors.hpp"

namespace surfbath {

namespace {

constexpr int kMaxGenerators = 22;  // enumeration guard, 2^23 configurations
constexpr int kMaxBruteForceQubits = 25;

// Dense symmetric matrix view of any coupling model.
std::vector<std::complex<double>> dense_matrix(const CouplingModel& cm) {
  const std::size_t n = static_cast<std::size_t>(cm.n_qubits);
  std::vector<std::complex<double>> m(n * n, std::complex<double>{});
  if (cm.uniform_nn) {
    for (const auto& [i, j] : cm.pairs) {
      m[static_cast<std::size_t>(i) * n + j] = cm.j_nn;
      m[static_cast<std::size_t>(j) * n + i] = cm.j_nn;
    }
  } else {
    m = cm.matrix;
  }
  return m;
}

std::vector<QubitSet> generator_masks(const Lattice& lat) {
  std::vector<QubitSet> gens;
  gens.reserve(lat.plaquettes.size());
  for (const Stabilizer& p : lat.plaquettes) gens.push_back(p.qubits);
  return gens;
}

}  // namespace

std::complex<double> CouplingModel::at(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_qubits || j >= n_qubits)
    throw precondition_error("coupling index out of range");
  if (i == j) return {};
  if (!uniform_nn)
    return matrix[static_cast<std::size_t>(i) * n_qubits + j];
  const std::pair<int, int> key{std::min(i, j), std::max(i, j)};
  return std::binary_search(pairs.begin(), pairs.end(), key)
             ? j_nn
             : std::complex<double>{};
}

CouplingModel nearest_neighbor_couplings(const Lattice& lat,
                                         std::complex<double> j) {
  CouplingModel cm;
  cm.n_qubits = lat.n_qubits;
  cm.uniform_nn = true;
  cm.j_nn = j;
  cm.pairs = neighbor_pairs(lat);
  return cm;
}

CouplingModel bath_couplings(const Lattice& lat, const BathParams& bath) {
  CouplingModel cm;
  cm.n_qubits = lat.n_qubits;
  cm.uniform_nn = false;
  const std::size_t n = static_cast<std::size_t>(lat.n_qubits);
  cm.matrix.assign(n * n, std::complex<double>{});
  for (int i = 0; i < lat.n_qubits; ++i)
    for (int j = i + 1; j < lat.n_qubits; ++j) {
      const std::complex<double> value =
          bath_coupling(bath, lat.distance(i, j));
      cm.matrix[static_cast<std::size_t>(i) * n + j] = value;
      cm.matrix[static_cast<std::size_t>(j) * n + i] = value;
    }
  return cm;
}

std::complex<double> config_energy(const CouplingModel& cm,
                                   const QubitSet& config) {
  std::complex<double> acc{};
  if (cm.uniform_nn) {
    int anti = 0;
    for (const auto& [i, j] : cm.pairs)
      anti += config.test(i) != config.test(j);
    acc = cm.j_nn *
          static_cast<double>(static_cast<int>(cm.pairs.size()) - 2 * anti);
  } else {
    const std::size_t n = static_cast<std::size_t>(cm.n_qubits);
    for (int i = 0; i < cm.n_qubits; ++i)
      for (int j = i + 1; j < cm.n_qubits; ++j) {
        const std::complex<double>& v =
            cm.matrix[static_cast<std::size_t>(i) * n + j];
        if (config.test(i) == config.test(j))
          acc += v;
        else
          acc -= v;
      }
  }
  return 2.0 * acc;
}

bool satisfies_star_constraints(const Lattice& lat, const QubitSet& config) {
  for (const Stabilizer& s : lat.stars)
    if ((config & s.qubits).count() & 1) return false;
  return true;
}

int logical_class(const Lattice& lat, const QubitSet& config) {
  return (config & lat.gamma_x).count() & 1;
}

double fidelity_of(const AmplitudePair& amp) {
  const double na = std::abs(amp.a);
  const double nb = std::abs(amp.b);
  if (na == 0.0 && nb == 0.0)
    throw degenerate_amplitude("both class sums vanish");
  if (nb == 0.0) return 1.0;
  return na / std::hypot(na, nb);
}

RestrictedEnsemble::RestrictedEnsemble(const Lattice& lat,
                                       const CouplingModel& cm,
                                       const EnsembleOptions& opt) {
  if (cm.n_qubits != lat.n_qubits)
    throw precondition_error("coupling model does not match the lattice");
  n_generators_ = static_cast<int>(lat.plaquettes.size());
  if (n_generators_ > kMaxGenerators)
    throw precondition_error(
        "lattice has " + std::to_string(n_generators_) +
        " tile generators; enumeration supports at most " +
        std::to_string(kMaxGenerators));
  workers_ = std::max(1, opt.workers);
  dense_ = opt.force_dense || !cm.uniform_nn;

  const std::vector<QubitSet> gens = generator_masks(lat);
  const QubitSet refs[2] = {QubitSet{}, lat.gamma_z};
  const detail::ChunkPlan plan(n_generators_);

  if (!dense_) {
    j_nn_ = cm.j_nn;
    n_pairs_ = static_cast<int>(cm.pairs.size());

    // Pairs toggled by each generator: exactly one endpoint in the mask.
    std::vector<std::vector<int>> touched(gens.size());
    for (std::size_t g = 0; g < gens.size(); ++g)
      for (int pi = 0; pi < n_pairs_; ++pi) {
        const auto& [i, j] = cm.pairs[pi];
        if (gens[g].test(i) != gens[g].test(j)) touched[g].push_back(pi);
      }

    for (int cls = 0; cls < 2; ++cls) {
      std::vector<std::vector<std::uint64_t>> partial(
          static_cast<std::size_t>(plan.n_chunks));
      detail::run_chunks(plan.n_chunks, workers_, [&](int chunk) {
        auto& h = partial[static_cast<std::size_t>(chunk)];
        h.assign(static_cast<std::size_t>(n_pairs_) + 1, 0);
        int anti = 0;
        detail::walk_range(
            gens, refs[cls], plan.begin(chunk), plan.end(chunk),
            [&](const QubitSet& cfg) {
              anti = 0;
              for (const auto& [i, j] : cm.pairs)
                anti += cfg.test(i) != cfg.test(j);
              ++h[static_cast<std::size_t>(anti)];
            },
            [&](int gen, const QubitSet& cfg) {
              for (const int pi : touched[static_cast<std::size_t>(gen)]) {
                const auto& [i, j] = cm.pairs[static_cast<std::size_t>(pi)];
                anti += cfg.test(i) != cfg.test(j) ? 1 : -1;
              }
              ++h[static_cast<std::size_t>(anti)];
            });
      });
      hist_[cls].assign(static_cast<std::size_t>(n_pairs_) + 1, 0);
      for (const auto& h : partial)
        for (std::size_t k = 0; k < h.size(); ++k) hist_[cls][k] += h[k];
    }

    double min_re = 0.0;
    bool first = true;
    for (int cls = 0; cls < 2; ++cls)
      for (int k = 0; k <= n_pairs_; ++k) {
        if (hist_[cls][static_cast<std::size_t>(k)] == 0) continue;
        const double re = (2.0 * j_nn_ * double(n_pairs_ - 2 * k)).real();
        if (first || re < min_re) min_re = re;
        first = false;
      }
    offset_ = {min_re, 0.0};
    return;
  }

  // Dense path: cache the complex energy of every configuration.
  const std::vector<std::complex<double>> mat = dense_matrix(cm);
  const std::size_t n = static_cast<std::size_t>(cm.n_qubits);
  std::vector<std::vector<int>> gen_qubits(gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g)
    gen_qubits[g] = gens[g].indices();

  for (int cls = 0; cls < 2; ++cls) {
    auto& energies = energies_[cls];
    energies.resize(plan.total);
    detail::run_chunks(plan.n_chunks, workers_, [&](int chunk) {
      QubitSet cur;
      std::complex<double> e{};
      std::uint64_t idx = plan.begin(chunk);
      detail::walk_range(
          gens, refs[cls], plan.begin(chunk), plan.end(chunk),
          [&](const QubitSet& cfg) {
            cur = cfg;
            e = config_energy(cm, cfg);
            energies[idx++] = e;
          },
          [&](int gen, const QubitSet& cfg) {
            for (const int q : gen_qubits[static_cast<std::size_t>(gen)]) {
              const double sq = cur.test(q) ? -1.0 : 1.0;
              std::complex<double> field{};
              const std::complex<double>* row =
                  mat.data() + static_cast<std::size_t>(q) * n;
              for (int r = 0; r < cm.n_qubits; ++r)
                if (r != q)
                  field += row[r] * (cur.test(r) ? -1.0 : 1.0);
              e += -4.0 * sq * field;
              cur.toggle(q);
            }
            (void)cfg;
            energies[idx++] = e;
          });
    });
  }

  double min_re = energies_[0].empty() ? 0.0 : energies_[0][0].real();
  for (int cls = 0; cls < 2; ++cls)
    for (const auto& e : energies_[cls]) min_re = std::min(min_re, e.real());
  offset_ = {min_re, 0.0};
  for (int cls = 0; cls < 2; ++cls)
    for (auto& e : energies_[cls]) e -= offset_;
}

std::uint64_t RestrictedEnsemble::ensemble_size() const {
  return std::uint64_t{1} << (n_generators_ + 1);
}

AmplitudePair RestrictedEnsemble::amplitudes_dos(double beta) const {
  std::complex<double> cls_sum[2];
  for (int cls = 0; cls < 2; ++cls) {
    std::complex<double> acc{};
    for (int k = 0; k <= n_pairs_; ++k) {
      const std::uint64_t count = hist_[cls][static_cast<std::size_t>(k)];
      if (count == 0) continue;
      const std::complex<double> energy =
          2.0 * j_nn_ * double(n_pairs_ - 2 * k) - offset_;
      acc += double(count) * std::exp(-beta * energy);
    }
    cls_sum[cls] = acc;
  }
  return {cls_sum[0] + cls_sum[1], cls_sum[0] - cls_sum[1]};
}

AmplitudePair RestrictedEnsemble::amplitudes_dense(double beta) const {
  const detail::ChunkPlan plan(n_generators_);
  std::complex<double> cls_sum[2];
  for (int cls = 0; cls < 2; ++cls) {
    const auto& energies = energies_[cls];
    std::vector<std::complex<double>> partial(
        static_cast<std::size_t>(plan.n_chunks));
    detail::run_chunks(plan.n_chunks, workers_, [&](int chunk) {
      detail::NeumaierSum re, im;
      for (std::uint64_t idx = plan.begin(chunk); idx < plan.end(chunk);
           ++idx) {
        const std::complex<double> w = std::exp(-beta * energies[idx]);
        re.add(w.real());
        im.add(w.imag());
      }
      partial[static_cast<std::size_t>(chunk)] = {re.value(), im.value()};
    });
    detail::NeumaierSum re, im;
    for (const auto& p : partial) {
      re.add(p.real());
      im.add(p.imag());
    }
    cls_sum[cls] = {re.value(), im.value()};
  }
  return {cls_sum[0] + cls_sum[1], cls_sum[0] - cls_sum[1]};
}

AmplitudePair RestrictedEnsemble::amplitudes(double beta) const {
  return dense_ ? amplitudes_dense(beta) : amplitudes_dos(beta);
}

std::vector<AmplitudePair> RestrictedEnsemble::amplitudes(
    const std::vector<double>& betas) const {
  std::vector<AmplitudePair> out;
  out.reserve(betas.size());
  for (const double beta : betas) out.push_back(amplitudes(beta));
  return out;
}

double RestrictedEnsemble::fidelity(double beta) const {
  return fidelity_of(amplitudes(beta));
}

AmplitudePair brute_force_amplitudes(const Lattice& lat,
                                     const CouplingModel& cm, double beta) {
  if (lat.n_qubits > kMaxBruteForceQubits)
    throw precondition_error("brute force supports at most " +
                             std::to_string(kMaxBruteForceQubits) +
                             " qubits");
  if (cm.n_qubits != lat.n_qubits)
    throw precondition_error("coupling model does not match the lattice");

  std::vector<std::complex<double>> admitted[2];
  const std::uint64_t total = std::uint64_t{1} << lat.n_qubits;
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    QubitSet cfg;
    cfg.w[0] = bits;
    if (!satisfies_star_constraints(lat, cfg)) continue;
    admitted[logical_class(lat, cfg)].push_back(config_energy(cm, cfg));
  }

  double min_re = 0.0;
  bool first = true;
  for (int cls = 0; cls < 2; ++cls)
    for (const auto& e : admitted[cls]) {
      if (first || e.real() < min_re) min_re = e.real();
      first = false;
    }

  std::complex<double> cls_sum[2];
  for (int cls = 0; cls < 2; ++cls) {
    std::complex<double> acc{};
    for (const auto& e : admitted[cls])
      acc += std::exp(-beta * (e - std::complex<double>{min_re, 0.0}));
    cls_sum[cls] = acc;
  }
  return {cls_sum[0] + cls_sum[1], cls_sum[0] - cls_sum[1]};
}

}  // namespace surfbath
