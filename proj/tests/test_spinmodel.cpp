#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "surfbath/bath.hpp"
#include "surfbath/errors.hpp"
#include "surfbath/lattice.hpp"
#include "surfbath/spinmodel.hpp"

using namespace surfbath;

namespace {

bool close_mixed(double x, double y, double tol) {
  return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
}

bool close_amp(const AmplitudePair& x, const AmplitudePair& y, double tol) {
  return close_mixed(x.a.real(), y.a.real(), tol) &&
         close_mixed(x.a.imag(), y.a.imag(), tol) &&
         close_mixed(x.b.real(), y.b.real(), tol) &&
         close_mixed(x.b.imag(), y.b.imag(), tol);
}

QubitSet config_from_bits(std::uint32_t bits) {
  QubitSet s;
  for (int q = 0; q < 32; ++q)
    if ((bits >> q) & 1) s.set(q);
  return s;
}

}  // namespace

TEST_CASE("five-qubit class sums in closed form") {
  const Lattice lat = build_lattice({1, 1, 1.0});
  const CouplingModel cm = nearest_neighbor_couplings(lat, {-1.0, 0.0});
  const RestrictedEnsemble ens(lat, cm);
  CHECK(ens.generator_count() == 2);
  CHECK(ens.ensemble_size() == 8);
  CHECK(ens.energy_offset().real() == doctest::Approx(-8.0).epsilon(1e-15));
  CHECK(ens.energy_offset().imag() == 0.0);

  for (const double beta : {0.0, 0.05, 0.2, 0.6, 1.5}) {
    const double y = std::exp(-8.0 * beta);
    const double a = 1.0 + 6.0 * y + y * y;
    const double b = (1.0 - y) * (1.0 - y);
    const AmplitudePair amp = ens.amplitudes(beta);
    CHECK(amp.a.real() == doctest::Approx(a).epsilon(1e-14));
    CHECK(amp.a.imag() == 0.0);
    CHECK(amp.b.real() == doctest::Approx(b).epsilon(1e-14));
    CHECK(amp.b.imag() == 0.0);
    CHECK(ens.fidelity(beta) ==
          doctest::Approx(a / std::hypot(a, b)).epsilon(1e-14));
  }
  // Equal class counts make the difference amplitude vanish exactly at
  // infinite temperature.
  CHECK(ens.amplitudes(0.0).b == std::complex<double>{});
  CHECK(ens.fidelity(0.0) == 1.0);
}

TEST_CASE("restricted ensemble size by exhaustive scan") {
  const Lattice lat = build_lattice({2, 2, 1.0});
  REQUIRE(lat.n_qubits == 13);
  std::uint64_t count = 0;
  std::uint64_t per_class[2] = {0, 0};
  for (std::uint32_t bits = 0; bits < (1u << 13); ++bits) {
    const QubitSet cfg = config_from_bits(bits);
    if (!satisfies_star_constraints(lat, cfg)) continue;
    ++count;
    ++per_class[logical_class(lat, cfg)];
  }
  CHECK(count == 128);  // 2^(tiles + 1) with 6 tiles
  CHECK(per_class[0] == 64);
  CHECK(per_class[1] == 64);

  const RestrictedEnsemble ens(lat, nearest_neighbor_couplings(lat, {-1, 0}));
  CHECK(ens.generator_count() == 6);
  CHECK(ens.ensemble_size() == count);
}

TEST_CASE("class character is independent of the witness level") {
  const Lattice lat = build_lattice({2, 2, 1.0});
  for (std::uint32_t bits = 0; bits < (1u << 13); ++bits) {
    const QubitSet cfg = config_from_bits(bits);
    if (!satisfies_star_constraints(lat, cfg)) continue;
    const bool parity0 = cfg.odd_overlap(logical_x_path(lat, 0));
    for (int level = 1; level <= lat.spec.n; ++level)
      CHECK(cfg.odd_overlap(logical_x_path(lat, level)) == parity0);
    CHECK(logical_class(lat, cfg) == (parity0 ? 1 : 0));
  }
}

TEST_CASE("star flips preserve the class, the reference string flips it") {
  const Lattice lat = build_lattice({2, 2, 1.0});
  const QubitSet all_up{};
  CHECK(satisfies_star_constraints(lat, all_up));
  CHECK(logical_class(lat, all_up) == 0);
  QubitSet shifted = all_up ^ lat.gamma_z;
  CHECK(satisfies_star_constraints(lat, shifted));
  CHECK(logical_class(lat, shifted) == 1);
  for (const Stabilizer& pl : lat.plaquettes) {
    CHECK(satisfies_star_constraints(lat, all_up ^ pl.qubits));
    CHECK(logical_class(lat, all_up ^ pl.qubits) == 0);
    CHECK(logical_class(lat, shifted ^ pl.qubits) == 1);
  }
  // One lone spin flip breaks at least one star.
  CHECK_FALSE(satisfies_star_constraints(lat, QubitSet::single(4)));
}

TEST_CASE("configuration energy by hand") {
  const Lattice lat = build_lattice({1, 1, 1.0});
  const CouplingModel cm = nearest_neighbor_couplings(lat, {-1.0, 0.0});
  CHECK(config_energy(cm, QubitSet{}).real() ==
        doctest::Approx(-8.0).epsilon(1e-15));
  // Flipping the shared horizontal qubit makes all four pairs antiparallel.
  CHECK(config_energy(cm, QubitSet::single(2)).real() ==
        doctest::Approx(8.0).epsilon(1e-15));
  // Flipping one outer vertical qubit makes exactly its one pair antiparallel.
  CHECK(config_energy(cm, QubitSet::single(0)).real() ==
        doctest::Approx(-4.0).epsilon(1e-15));

  // Dense-model energies match an explicit double loop.
  const BathParams bath{0.0, 3.1, 1.0, 1.0, 0.0};
  const CouplingModel dense = bath_couplings(lat, bath);
  const QubitSet cfg = config_from_bits(0b01101);
  std::complex<double> expect;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      if (i == j) continue;
      const double si = cfg.test(i) ? -1.0 : 1.0;
      const double sj = cfg.test(j) ? -1.0 : 1.0;
      expect += dense.at(i, j) * si * sj;
    }
  const std::complex<double> got = config_energy(dense, cfg);
  CHECK(got.real() == doctest::Approx(expect.real()).epsilon(1e-13));
  CHECK(got.imag() == doctest::Approx(expect.imag()).epsilon(1e-13));
}

TEST_CASE("generator enumeration matches the exhaustive reference") {
  const std::vector<double> betas{0.0, 0.1, 0.35, 0.8, 1.6};

  SUBCASE("five qubits, complex uniform coupling") {
    const Lattice lat = build_lattice({1, 1, 1.0});
    const CouplingModel cm = nearest_neighbor_couplings(lat, {-1.0, 0.35});
    const RestrictedEnsemble ens(lat, cm);
    for (const double beta : betas)
      CHECK(close_amp(ens.amplitudes(beta),
                      brute_force_amplitudes(lat, cm, beta), 1e-12));
  }

  SUBCASE("thirteen qubits, bath-induced couplings") {
    const Lattice lat = build_lattice({2, 2, 1.0});
    const BathParams bath{0.0, 3.1, 1.0, 1.0, 0.0};
    const CouplingModel cm = bath_couplings(lat, bath);
    const RestrictedEnsemble ens(lat, cm);
    for (const double beta : betas)
      CHECK(close_amp(ens.amplitudes(beta),
                      brute_force_amplitudes(lat, cm, beta), 1e-12));
  }
}

TEST_CASE("histogram path agrees with the dense path") {
  const Lattice lat = build_lattice({2, 2, 1.0});
  const CouplingModel cm = nearest_neighbor_couplings(lat, {-1.0, 0.0});
  const RestrictedEnsemble hist(lat, cm, {1, false});
  const RestrictedEnsemble dense(lat, cm, {1, true});
  for (const double beta : {0.0, 0.2, 0.7, 1.4})
    CHECK(close_amp(hist.amplitudes(beta), dense.amplitudes(beta), 1e-12));
}

TEST_CASE("results are bit-identical for every worker count") {
  const Lattice lat = build_lattice({2, 2, 1.0});
  const CouplingModel cm =
      bath_couplings(lat, BathParams{0.0, 3.1, 1.0, 1.0, 0.0});
  const RestrictedEnsemble base(lat, cm, {1, false});
  for (const int workers : {2, 3, 8}) {
    const RestrictedEnsemble ens(lat, cm, {workers, false});
    for (const double beta : {0.0, 0.3, 1.1}) {
      const AmplitudePair x = base.amplitudes(beta);
      const AmplitudePair y = ens.amplitudes(beta);
      CHECK(x.a == y.a);
      CHECK(x.b == y.b);
    }
  }
}

TEST_CASE("sweep evaluation equals pointwise evaluation") {
  const Lattice lat = build_lattice({1, 1, 1.0});
  const RestrictedEnsemble ens(lat,
                               nearest_neighbor_couplings(lat, {-1.0, 0.2}));
  const std::vector<double> betas{0.0, 0.25, 0.5, 0.75};
  const std::vector<AmplitudePair> sweep = ens.amplitudes(betas);
  REQUIRE(sweep.size() == betas.size());
  for (std::size_t i = 0; i < betas.size(); ++i) {
    const AmplitudePair one = ens.amplitudes(betas[i]);
    CHECK(sweep[i].a == one.a);
    CHECK(sweep[i].b == one.b);
  }
}

TEST_CASE("fidelity ratio edge cases") {
  CHECK(fidelity_of({{3.0, -4.0}, {0.0, 0.0}}) == 1.0);
  CHECK(fidelity_of({{0.0, 0.0}, {2.0, 1.0}}) == 0.0);
  CHECK(fidelity_of({{1.0, 0.0}, {1.0, 0.0}}) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(fidelity_of({{0.0, 0.0}, {0.0, 0.0}}), degenerate_amplitude);

  // A common positive rescaling of both sums cancels exactly.
  const AmplitudePair amp{{0.8, -0.3}, {0.1, 0.4}};
  for (const double scale : {1e-12, 0.37, 1.0, 4096.0}) {
    const AmplitudePair scaled{amp.a * scale, amp.b * scale};
    CHECK(std::abs(fidelity_of(scaled) - fidelity_of(amp)) <= 1e-14);
  }
}

TEST_CASE("enumeration guard rejects oversized generator sets") {
  const Lattice lat = build_lattice({5, 5, 1.0});  // 30 tile generators
  const CouplingModel cm = nearest_neighbor_couplings(lat, {-1.0, 0.0});
  CHECK_THROWS_AS(RestrictedEnsemble(lat, cm), precondition_error);
}

TEST_CASE("coupling model lookups") {
  const Lattice lat = build_lattice({2, 2, 1.0});
  const CouplingModel cm = nearest_neighbor_couplings(lat, {-2.0, 0.5});
  const auto pairs = neighbor_pairs(lat);
  for (const auto& [i, j] : pairs) {
    CHECK(cm.at(i, j) == std::complex<double>(-2.0, 0.5));
    CHECK(cm.at(j, i) == std::complex<double>(-2.0, 0.5));
  }
  CHECK(cm.at(0, 0) == std::complex<double>{});
  // Far pair: the two bottom corner qubits are not neighbors.
  CHECK(cm.at(0, 2) == std::complex<double>{});
}
