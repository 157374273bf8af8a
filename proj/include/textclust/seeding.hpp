#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "textclust/criterion.hpp"
#include "textclust/rng.hpp"
#include "textclust/sparse_vector.hpp"

namespace textclust {

/// Ordered list of selected seed documents plus the parameters that
/// produced it.
struct SeedSet {
  std::vector<std::size_t> seeds;
  std::size_t r_param = 1;
  std::uint64_t rng_seed = 0;
};

/// One candidate considered while picking a seed, with its running
/// distance sums to the seeds selected so far.
struct SeedCandidate {
  std::size_t doc = 0;
  double dist_sum = 0.0;
  double dist_sq_sum = 0.0;
};

/// The candidate pool and outcome of one selection round.
struct SeedChoice {
  std::vector<SeedCandidate> candidates;
  std::size_t chosen = 0;
};

/// Per-round record of the iterative selection, one entry per seed after
/// the second. Useful for debugging which documents were in contention.
struct SeedTrace {
  std::vector<SeedChoice> choices;
};

/// Default candidate-pool size: max(1, ceil(N / (10 K))). A heuristic that
/// scales the pool with corpus size per cluster; override via the r
/// parameter where it matters.
inline std::size_t default_r_param(std::size_t n_docs, std::size_t k) {
  if (k == 0) {
    throw std::invalid_argument("default_r_param: k must be positive");
  }
  const std::size_t denom = 10 * k;
  return std::max<std::size_t>(1, (n_docs + denom - 1) / denom);
}

/// Distance used throughout seeding: Euclidean distance between unit
/// vectors, evaluated as sqrt(2 - 2 cos) via one sparse dot product.
inline double seed_distance(const SparseVector& a, const SparseVector& b) {
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * dot(a, b)));
}

/**
 * Selects k seed documents from a unit-normalized corpus.
 *
 * The first seed is drawn uniformly at random; the second is the document
 * farthest from it. Each later seed is picked by ranking all non-seed
 * documents by their summed distance to the current seeds (descending),
 * keeping the top r, and choosing among those the document with the least
 * summed squared distance. All ties break toward the lowest document index.
 *
 * Runs in O(N * nnz) per seed with O(N) extra memory: each document carries
 * a running (sum of distances, sum of squared distances) pair instead of a
 * precomputed N x N distance table.
 *
 * `rng_seed_label` is recorded in the returned SeedSet; pass the seed that
 * created `rng` when continuing an existing stream.
 */
inline std::pair<SeedSet, SeedTrace> select_seeds(
    std::span<const SparseVector> docs, std::size_t k, std::size_t r,
    Rng& rng, std::uint64_t rng_seed_label) {
  const std::size_t n = docs.size();
  if (k < 2) {
    throw std::invalid_argument("select_seeds: k must be at least 2");
  }
  if (k > n) {
    throw std::invalid_argument("select_seeds: k exceeds document count");
  }
  if (r < 1) {
    throw std::invalid_argument("select_seeds: r must be at least 1");
  }
  if (r > n) {
    throw std::invalid_argument("select_seeds: r exceeds document count");
  }

  SeedSet set;
  set.r_param = r;
  set.rng_seed = rng_seed_label;
  SeedTrace trace;

  std::vector<double> dist_sum(n, 0.0);
  std::vector<double> dist_sq_sum(n, 0.0);
  std::vector<bool> is_seed(n, false);

  auto add_seed = [&](std::size_t s) {
    set.seeds.push_back(s);
    is_seed[s] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (is_seed[i]) {
        continue;
      }
      const double dist = seed_distance(docs[i], docs[s]);
      dist_sum[i] += dist;
      dist_sq_sum[i] += dist * dist;
    }
  };

  add_seed(static_cast<std::size_t>(rng.uniform_below(n)));

  // Second seed: farthest from the first.
  {
    std::size_t best = n;
    double best_dist = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!is_seed[i] && dist_sum[i] > best_dist) {
        best_dist = dist_sum[i];
        best = i;
      }
    }
    add_seed(best);
  }

  std::vector<std::size_t> pool;
  while (set.seeds.size() < k) {
    pool.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (!is_seed[i]) {
        pool.push_back(i);
      }
    }
    const std::size_t take = std::min(r, pool.size());
    std::partial_sort(pool.begin(), pool.begin() + take, pool.end(),
                      [&](std::size_t a, std::size_t b) {
                        if (dist_sum[a] != dist_sum[b]) {
                          return dist_sum[a] > dist_sum[b];
                        }
                        return a < b;
                      });
    pool.resize(take);

    SeedChoice choice;
    std::size_t best = pool.front();
    for (const std::size_t i : pool) {
      choice.candidates.push_back({i, dist_sum[i], dist_sq_sum[i]});
      if (dist_sq_sum[i] < dist_sq_sum[best] ||
          (dist_sq_sum[i] == dist_sq_sum[best] && i < best)) {
        best = i;
      }
    }
    choice.chosen = best;
    trace.choices.push_back(std::move(choice));
    add_seed(best);
  }
  return {std::move(set), std::move(trace)};
}

inline std::pair<SeedSet, SeedTrace> select_seeds(
    std::span<const SparseVector> docs, std::size_t k, std::size_t r,
    std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  return select_seeds(docs, k, r, rng, rng_seed);
}

/**
 * Nearest-seed assignment: cluster j holds seed j plus every non-seed
 * document whose distance to seed j is minimal (ties toward the lower seed
 * index). Every cluster is nonempty by construction.
 */
inline ClusteringSolution assign_to_seeds(std::span<const SparseVector> docs,
                                          std::span<const std::size_t> seeds) {
  if (seeds.empty()) {
    throw std::invalid_argument("assign_to_seeds: empty seed list");
  }
  const std::size_t n = docs.size();
  std::vector<std::size_t> assignment(n, 0);
  std::vector<bool> is_seed(n, false);
  for (std::size_t j = 0; j < seeds.size(); ++j) {
    if (seeds[j] >= n) {
      throw std::invalid_argument("assign_to_seeds: seed index out of range");
    }
    assignment[seeds[j]] = j;
    is_seed[seeds[j]] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (is_seed[i]) {
      continue;
    }
    std::size_t best = 0;
    double best_dist = seed_distance(docs[i], docs[seeds[0]]);
    for (std::size_t j = 1; j < seeds.size(); ++j) {
      const double dist = seed_distance(docs[i], docs[seeds[j]]);
      if (dist < best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    assignment[i] = best;
  }
  return ClusteringSolution::from_assignment(docs, std::move(assignment),
                                             seeds.size());
}

inline ClusteringSolution assign_to_seeds(std::span<const SparseVector> docs,
                                          const SeedSet& set) {
  return assign_to_seeds(docs, std::span<const std::size_t>(set.seeds));
}

}  // namespace textclust
