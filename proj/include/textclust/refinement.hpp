#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "textclust/criterion.hpp"
#include "textclust/rng.hpp"
#include "textclust/seeding.hpp"
#include "textclust/sparse_vector.hpp"

namespace textclust {

/// Iteration cap; a run that is still moving documents when it is reached
/// reports converged == false.
inline constexpr std::size_t kDefaultMaxIterations = 500;

/// Outcome of a refinement run.
struct RefinementStats {
  std::size_t iterations = 0;
  std::size_t moves_accepted = 0;
  std::vector<double> t_history;  // T after each iteration
  bool converged = false;
};

/**
 * Greedy single-document refinement.
 *
 * Each iteration draws a fresh random permutation of the documents and
 * visits them in that order. For every document the criterion delta of
 * moving it to each of the other k-1 clusters is evaluated and the move
 * with the largest strictly positive delta is applied (ties toward the
 * lower cluster index). A document that is its cluster's sole member is
 * never moved, so exactly k nonempty clusters survive. The run ends when a
 * full iteration accepts no move, or at `max_iterations`.
 */
inline RefinementStats refine(std::span<const SparseVector> docs,
                              ClusteringSolution& sol, Rng& rng,
                              std::size_t max_iterations = kDefaultMaxIterations) {
  if (sol.n_docs() != docs.size()) {
    throw std::invalid_argument(
        "refine: solution does not match document count");
  }
  RefinementStats stats;
  const std::size_t n = docs.size();
  const std::size_t k = sol.k();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    order[i] = i;
  }

  while (stats.iterations < max_iterations) {
    ++stats.iterations;
    rng.shuffle(order);
    std::size_t moves = 0;
    for (const std::size_t doc : order) {
      const std::size_t from = sol.assignment()[doc];
      if (sol.sizes()[from] < 2) {
        continue;
      }
      double best_delta = 0.0;
      std::size_t best_to = k;
      for (std::size_t to = 0; to < k; ++to) {
        if (to == from) {
          continue;
        }
        const double delta = sol.move_delta(docs, doc, to);
        if (delta > best_delta) {
          best_delta = delta;
          best_to = to;
        }
      }
      if (best_to < k) {
        sol.apply_move(docs, doc, best_to);
        ++moves;
      }
    }
    stats.moves_accepted += moves;
    stats.t_history.push_back(sol.cached_t());
    if (moves == 0) {
      stats.converged = true;
      break;
    }
  }
  return stats;
}

inline RefinementStats refine(std::span<const SparseVector> docs,
                              ClusteringSolution& sol, std::uint64_t rng_seed,
                              std::size_t max_iterations = kDefaultMaxIterations) {
  Rng rng(rng_seed);
  return refine(docs, sol, rng, max_iterations);
}

/// k distinct document indices drawn uniformly at random, in draw order.
inline std::vector<std::size_t> random_seed_sample(std::size_t n,
                                                   std::size_t k, Rng& rng) {
  if (k < 2) {
    throw std::invalid_argument("random_initial: k must be at least 2");
  }
  if (k > n) {
    throw std::invalid_argument("random_initial: k exceeds document count");
  }
  // Partial Fisher-Yates: the first k slots become the sample.
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) {
    idx[i] = i;
  }
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.uniform_below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

/**
 * Random-initialization baseline: k distinct documents drawn uniformly at
 * random become the seeds, everything else joins its nearest seed via the
 * same assignment rule as the proposed method.
 */
inline ClusteringSolution random_initial(std::span<const SparseVector> docs,
                                         std::size_t k, Rng& rng) {
  const auto seeds = random_seed_sample(docs.size(), k, rng);
  return assign_to_seeds(docs, std::span<const std::size_t>(seeds));
}

inline ClusteringSolution random_initial(std::span<const SparseVector> docs,
                                         std::size_t k,
                                         std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  return random_initial(docs, k, rng);
}

/// Initial-clustering strategy for a full run.
enum class Method { proposed, baseline };

inline const char* to_string(Method m) {
  return m == Method::proposed ? "proposed" : "baseline";
}

inline Method method_from_string(const std::string& name) {
  if (name == "proposed") {
    return Method::proposed;
  }
  if (name == "baseline") {
    return Method::baseline;
  }
  throw std::invalid_argument("unknown method '" + name +
                              "' (expected proposed or baseline)");
}

/// Everything a full clustering run produces. `seeds` holds the initial
/// seed documents for either method; `trace` is empty for the baseline.
struct ClusterRunResult {
  ClusteringSolution solution;
  RefinementStats stats;
  SeedSet seeds;
  SeedTrace trace;
};

/**
 * Runs the two-phase pipeline: initial clustering (distance-based seed
 * selection for `proposed`, uniform random seeds for `baseline`) followed
 * by the shared refinement loop. Seeding and refinement consume one rng
 * stream derived from `rng_seed`, so the whole run is reproducible.
 *
 * Documents must be unit length; pass r == 0 to use default_r_param.
 */
inline ClusterRunResult cluster(std::span<const SparseVector> docs,
                                std::size_t k, std::size_t r,
                                std::uint64_t rng_seed, Method method,
                                std::size_t max_iterations = kDefaultMaxIterations) {
  for (const auto& doc : docs) {
    const double norm = doc.norm();
    if (norm < 1.0 - 1e-6 || norm > 1.0 + 1e-6) {
      throw std::invalid_argument(
          "cluster: documents must be unit length; run the vectorizer first");
    }
  }
  if (r == 0) {
    r = default_r_param(docs.size(), k);
  }
  Rng rng(rng_seed);
  if (method == Method::proposed) {
    auto [seed_set, trace] = select_seeds(docs, k, r, rng, rng_seed);
    ClusteringSolution sol = assign_to_seeds(docs, seed_set);
    RefinementStats stats = refine(docs, sol, rng, max_iterations);
    return {std::move(sol), std::move(stats), std::move(seed_set),
            std::move(trace)};
  }
  SeedSet seed_set;
  seed_set.seeds = random_seed_sample(docs.size(), k, rng);
  seed_set.r_param = r;
  seed_set.rng_seed = rng_seed;
  ClusteringSolution sol =
      assign_to_seeds(docs, std::span<const std::size_t>(seed_set.seeds));
  RefinementStats stats = refine(docs, sol, rng, max_iterations);
  return {std::move(sol), std::move(stats), std::move(seed_set), SeedTrace{}};
}

}  // namespace textclust
