#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "surfbath/lattice.hpp"

namespace surfbath::detail {

inline std::uint64_t gray_code(std::uint64_t i) { return i ^ (i >> 1); }

// Product of the generators selected by the bits of `subset`, applied to ref.
inline QubitSet config_at(const std::vector<QubitSet>& gens,
                          const QubitSet& ref, std::uint64_t subset) {
  QubitSet c = ref;
  while (subset) {
    c ^= gens[std::countr_zero(subset)];
    subset &= subset - 1;
  }
  return c;
}

// Fixed partition of the walk order [0, 2^n_gen) into at most 256 equal
// chunks.  The partition depends only on n_gen, never on the worker count,
// so per-chunk results (and their fixed-order reduction) are bit-identical
// for any parallelism.
struct ChunkPlan {
  std::uint64_t total;
  int n_chunks;
  std::uint64_t chunk_size;

  explicit ChunkPlan(int n_gen)
      : total(std::uint64_t{1} << n_gen),
        n_chunks(total >= 256 ? 256 : static_cast<int>(total)),
        chunk_size(total / static_cast<std::uint64_t>(n_chunks)) {}

  std::uint64_t begin(int c) const { return chunk_size * c; }
  std::uint64_t end(int c) const { return chunk_size * (c + 1); }
};

// Gray-order walk over positions [begin, end): the anchor configuration is
// built from scratch, then exactly one generator flips per step (the
// generator index is countr_zero of the position).
template <class OnAnchor, class OnStep>
void walk_range(const std::vector<QubitSet>& gens, const QubitSet& ref,
                std::uint64_t begin, std::uint64_t end, OnAnchor&& on_anchor,
                OnStep&& on_step) {
  QubitSet config = config_at(gens, ref, gray_code(begin));
  on_anchor(config);
  for (std::uint64_t idx = begin + 1; idx < end; ++idx) {
    const int gen = std::countr_zero(idx);
    config ^= gens[gen];
    on_step(gen, config);
  }
}

inline void run_chunks(int n_chunks, int workers,
                       const std::function<void(int)>& fn) {
  if (workers <= 1 || n_chunks <= 1) {
    for (int c = 0; c < n_chunks; ++c) fn(c);
    return;
  }
  std::atomic<int> next{0};
  auto drain = [&] {
    for (;;) {
      const int c = next.fetch_add(1);
      if (c >= n_chunks) return;
      fn(c);
    }
  };
  std::vector<std::thread> pool;
  const int n_threads = std::min(workers, n_chunks);
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(drain);
  for (auto& th : pool) th.join();
}

// Compensated (Neumaier) accumulator; deterministic for a fixed add order.
struct NeumaierSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace surfbath::detail
