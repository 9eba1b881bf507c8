#include "surfbath/lattice.hpp"

#include <cmath>
#include <string>

#include "surfbath/errors.hpp"

namespace surfbath {

namespace {

// First id of the band at level i >= 1 (row-i horizontal edges followed by
// level-i vertical edges).  Band 0 holds only the m+1 level-0 vertical edges.
int band_base(int m, int i) { return (m + 1) + (i - 1) * (2 * m + 1); }

}  // namespace

int Lattice::vertical_id(int col, int level) const {
  const int m = spec.m;
  if (col < 0 || col > m || level < 0 || level > spec.n)
    throw precondition_error("vertical_id: edge (" + std::to_string(col) +
                             "," + std::to_string(level) + ") out of range");
  return level == 0 ? col : band_base(m, level) + m + col;
}

int Lattice::horizontal_id(int col, int row) const {
  const int m = spec.m;
  if (col < 0 || col >= m || row < 1 || row > spec.n)
    throw precondition_error("horizontal_id: edge (" + std::to_string(col) +
                             "," + std::to_string(row) + ") out of range");
  return band_base(m, row) + col;
}

double Lattice::distance(int i, int j) const {
  const Vec2& p = positions.at(static_cast<std::size_t>(i));
  const Vec2& q = positions.at(static_cast<std::size_t>(j));
  return std::hypot(p.x - q.x, p.y - q.y);
}

Lattice build_lattice(const LatticeSpec& spec) {
  const int n = spec.n;
  const int m = spec.m;
  if (n < 1 || m < 1)
    throw precondition_error("build_lattice: need n >= 1 and m >= 1");
  if (!(spec.spacing > 0.0))
    throw precondition_error("build_lattice: spacing must be positive");
  const int n_qubits = n * m + (n + 1) * (m + 1);
  if (n_qubits > kMaxQubits)
    throw precondition_error("build_lattice: " + std::to_string(n_qubits) +
                             " qubits exceeds the supported maximum of " +
                             std::to_string(kMaxQubits));

  Lattice lat;
  lat.spec = spec;
  lat.n_qubits = n_qubits;
  lat.positions.resize(static_cast<std::size_t>(n_qubits));

  const double a = spec.spacing;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= m; ++j)
      lat.positions[static_cast<std::size_t>(lat.vertical_id(j, i))] =
          Vec2{a * j, a * (i + 0.5)};
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j < m; ++j)
      lat.positions[static_cast<std::size_t>(lat.horizontal_id(j, i))] =
          Vec2{a * (j + 0.5), a * i};

  lat.stars.reserve(static_cast<std::size_t>((m + 1) * n));
  for (int i = 1; i <= n; ++i) {
    for (int j = 0; j <= m; ++j) {
      Stabilizer s;
      s.col = j;
      s.row = i;
      s.center = Vec2{a * j, a * i};
      s.qubits.set(lat.vertical_id(j, i - 1));
      s.qubits.set(lat.vertical_id(j, i));
      if (j > 0) s.qubits.set(lat.horizontal_id(j - 1, i));
      if (j < m) s.qubits.set(lat.horizontal_id(j, i));
      lat.stars.push_back(s);
    }
  }

  lat.plaquettes.reserve(static_cast<std::size_t>((n + 1) * m));
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j < m; ++j) {
      Stabilizer p;
      p.col = j;
      p.row = i;
      p.center = Vec2{a * (j + 0.5), a * (i + 0.5)};
      p.qubits.set(lat.vertical_id(j, i));
      p.qubits.set(lat.vertical_id(j + 1, i));
      if (i > 0) p.qubits.set(lat.horizontal_id(j, i));
      if (i < n) p.qubits.set(lat.horizontal_id(j, i + 1));
      lat.plaquettes.push_back(p);
    }
  }

  lat.gamma_x = logical_x_path(lat, n / 2);
  lat.gamma_z = logical_z_path(lat, m / 2);
  return lat;
}

QubitSet logical_x_path(const Lattice& lat, int level) {
  if (level < 0 || level > lat.spec.n)
    throw precondition_error("logical_x_path: level out of range");
  QubitSet s;
  for (int j = 0; j <= lat.spec.m; ++j) s.set(lat.vertical_id(j, level));
  return s;
}

QubitSet logical_z_path(const Lattice& lat, int col) {
  if (col < 0 || col > lat.spec.m)
    throw precondition_error("logical_z_path: column out of range");
  QubitSet s;
  for (int i = 0; i <= lat.spec.n; ++i) s.set(lat.vertical_id(col, i));
  return s;
}

std::vector<std::pair<int, int>> neighbor_pairs(const Lattice& lat) {
  const int n_qubits = lat.n_qubits;
  double min_d = 0.0;
  for (int i = 0; i < n_qubits; ++i)
    for (int j = i + 1; j < n_qubits; ++j) {
      const double d = lat.distance(i, j);
      if (min_d == 0.0 || d < min_d) min_d = d;
    }
  std::vector<std::pair<int, int>> pairs;
  const double tol = 1e-9 * lat.spec.spacing;
  for (int i = 0; i < n_qubits; ++i)
    for (int j = i + 1; j < n_qubits; ++j)
      if (std::abs(lat.distance(i, j) - min_d) <= tol) pairs.emplace_back(i, j);
  return pairs;
}

}  // namespace surfbath
