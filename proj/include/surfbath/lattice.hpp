#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

namespace surfbath {

// Hard upper bound on lattice size; two 64-bit words per qubit mask.
inline constexpr int kMaxQubits = 128;

// Fixed-size bitset over qubit ids.  Bit i set means qubit i is in the set
// (for stabilizer supports and string operators) or points down (for spin
// configurations).
struct QubitSet {
  std::array<std::uint64_t, 2> w{};

  static QubitSet single(int i) {
    QubitSet s;
    s.set(i);
    return s;
  }

  void set(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void toggle(int i) { w[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }

  int count() const { return std::popcount(w[0]) + std::popcount(w[1]); }
  bool any() const { return (w[0] | w[1]) != 0; }

  // Parity of the overlap with another set; two strings of conjugate Pauli
  // type anticommute exactly when this is true.
  bool odd_overlap(const QubitSet& o) const {
    return (std::popcount(w[0] & o.w[0]) + std::popcount(w[1] & o.w[1])) & 1;
  }

  QubitSet& operator^=(const QubitSet& o) {
    w[0] ^= o.w[0];
    w[1] ^= o.w[1];
    return *this;
  }
  friend QubitSet operator^(QubitSet a, const QubitSet& b) { return a ^= b; }

  QubitSet& operator&=(const QubitSet& o) {
    w[0] &= o.w[0];
    w[1] &= o.w[1];
    return *this;
  }
  friend QubitSet operator&(QubitSet a, const QubitSet& b) { return a &= b; }

  friend bool operator==(const QubitSet&, const QubitSet&) = default;

  // Set bits in ascending order.
  std::vector<int> indices() const {
    std::vector<int> out;
    for_each([&](int i) { out.push_back(i); });
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (int word = 0; word < 2; ++word) {
      std::uint64_t bits = w[word];
      while (bits) {
        f(word * 64 + std::countr_zero(bits));
        bits &= bits - 1;
      }
    }
  }
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// One stabilizer generator: its qubit support, the grid point it is anchored
// at (vertex for stars, tile for plaquettes), and its position in physical
// units.
struct Stabilizer {
  QubitSet qubits;
  int col = 0;
  int row = 0;
  Vec2 center;
};

struct LatticeSpec {
  int n = 3;           // vertical extent: rows of horizontal edges
  int m = 3;           // horizontal extent: columns of tiles
  double spacing = 1.0;  // lattice constant a
};

// Planar qubit layout with qubits on edge midpoints.
//
// Vertical edges v(j,i) sit at columns j in [0,m] and levels i in [0,n],
// spanning y in [i, i+1]; midpoint (j, i+0.5).  Horizontal edges h(j,i) sit
// at rows i in [1,n] and x in [j, j+1] for j in [0,m-1]; midpoint (j+0.5, i).
// Total qubits N = n*m + (n+1)*(m+1).
//
// Qubit ids are assigned bottom-up: level-0 vertical edges first (ids 0..m),
// then for each band i >= 1 the horizontal edges of row i followed by the
// vertical edges of level i.
//
// Stars live on interior-row vertices (j,i), j in [0,m], i in [1,n]; they
// have weight 4 except on the left/right open boundaries (j = 0 or m) where
// they have weight 3.  Plaquettes live on tiles (j,i), j in [0,m-1],
// i in [0,n]; weight 4 except on the top/bottom closed boundaries (i = 0 or
// n) where they have weight 3.
struct Lattice {
  LatticeSpec spec;
  int n_qubits = 0;
  std::vector<Vec2> positions;         // physical midpoints, scaled by spacing
  std::vector<Stabilizer> stars;       // (m+1)*n of them
  std::vector<Stabilizer> plaquettes;  // (n+1)*m of them
  QubitSet gamma_x;  // central horizontal string (logical X support)
  QubitSet gamma_z;  // central vertical string (logical Z support)

  int vertical_id(int col, int level) const;
  int horizontal_id(int col, int row) const;
  double distance(int i, int j) const;
};

// Builds the lattice for 1 <= n, m (and N <= kMaxQubits), or throws
// precondition_error.
Lattice build_lattice(const LatticeSpec& spec);

// Support of the horizontal string at level `level` in [0,n]: all m+1
// vertical edges with midpoint y = level + 0.5.  Commutes with every
// plaquette; crosses every vertical string once.
QubitSet logical_x_path(const Lattice& lat, int level);

// Support of the vertical string in column `col` in [0,m]: all n+1 vertical
// edges with midpoint x = col.  Commutes with every star.
QubitSet logical_z_path(const Lattice& lat, int col);

// All qubit pairs at the minimal pairwise distance (adjacent vertical /
// horizontal midpoints, spacing/sqrt(2) apart), ordered lexicographically.
std::vector<std::pair<int, int>> neighbor_pairs(const Lattice& lat);

}  // namespace surfbath
