#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "textclust/sparse_vector.hpp"

namespace textclust {

/**
 * A K-way partition of a document set together with the running state the
 * greedy optimizer needs: per-cluster dense composite vectors, cluster
 * sizes, cached composite norms and the cached criterion value T.
 *
 * For unit-length documents T, the sum over clusters of the member-centroid
 * cosines, collapses to the sum of composite-vector norms; that closed form
 * is what the cache tracks. Composite norms are recomputed from the dense
 * buffers after every accepted move rather than updated incrementally, which
 * keeps squared-norm drift out of long runs at O(dim) per move.
 *
 * Single-owner mutable state: concurrent mutation is not supported, but
 * independent solutions may be refined in parallel over shared read-only
 * documents.
 */
class ClusteringSolution {
 public:
  /**
   * Builds the solution state for a given assignment.
   *
   * Requires assignment[i] < k for all docs and at least one member per
   * cluster.
   */
  static ClusteringSolution from_assignment(std::span<const SparseVector> docs,
                                            std::vector<std::size_t> assignment,
                                            std::size_t k) {
    if (k == 0) {
      throw std::invalid_argument("ClusteringSolution: k must be positive");
    }
    if (assignment.size() != docs.size()) {
      throw std::invalid_argument(
          "ClusteringSolution: assignment length does not match document "
          "count");
    }
    if (docs.empty()) {
      throw std::invalid_argument("ClusteringSolution: empty document set");
    }
    ClusteringSolution sol;
    sol.assignment_ = std::move(assignment);
    sol.k_ = k;
    sol.dim_ = docs.front().dim();
    sol.composites_.assign(k, DenseAccumulator(sol.dim_));
    sol.sizes_.assign(k, 0);
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const std::size_t r = sol.assignment_[i];
      if (r >= k) {
        throw std::invalid_argument("ClusteringSolution: cluster index " +
                                    std::to_string(r) + " out of range");
      }
      sol.composites_[r].add(docs[i]);
      ++sol.sizes_[r];
    }
    for (std::size_t r = 0; r < k; ++r) {
      if (sol.sizes_[r] == 0) {
        throw std::invalid_argument("ClusteringSolution: cluster " +
                                    std::to_string(r) + " is empty");
      }
    }
    sol.norms_.resize(k);
    for (std::size_t r = 0; r < k; ++r) {
      sol.norms_[r] = sol.composites_[r].norm();
    }
    sol.refresh_cached_t();
    return sol;
  }

  std::size_t k() const { return k_; }
  std::size_t n_docs() const { return assignment_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<std::size_t>& assignment() const { return assignment_; }
  const std::vector<std::size_t>& sizes() const { return sizes_; }
  const DenseAccumulator& composite(std::size_t r) const {
    return composites_.at(r);
  }
  double composite_norm(std::size_t r) const { return norms_.at(r); }
  double cached_t() const { return cached_t_; }

  /**
   * Criterion change for moving `doc` into cluster `to`, without mutating
   * the solution:
   *
   *   delta = (|D_from - d| + |D_to + d|) - (|D_from| + |D_to|)
   *
   * Positive means the move improves T. Throws if `to` is out of range,
   * equals the current cluster, or the document is its cluster's sole
   * member.
   */
  double move_delta(std::span<const SparseVector> docs, std::size_t doc,
                    std::size_t to) const {
    check_move(doc, to);
    const std::size_t from = assignment_[doc];
    const SparseVector& d = docs[doc];
    const double d_sq = dot(d, d);
    const double from_sq = norms_[from] * norms_[from] -
                           2.0 * composites_[from].dot_sparse(d) + d_sq;
    const double to_sq =
        norms_[to] * norms_[to] + 2.0 * composites_[to].dot_sparse(d) + d_sq;
    // Cancellation can push a mathematically zero residue slightly negative.
    const double from_norm = std::sqrt(std::max(0.0, from_sq));
    const double to_norm = std::sqrt(std::max(0.0, to_sq));
    return (from_norm + to_norm) - (norms_[from] + norms_[to]);
  }

  /**
   * Executes a move: updates the assignment, both affected composites and
   * sizes, recomputes the two affected norms from their dense buffers and
   * refreshes the cached criterion value.
   */
  void apply_move(std::span<const SparseVector> docs, std::size_t doc,
                  std::size_t to) {
    check_move(doc, to);
    const std::size_t from = assignment_[doc];
    const SparseVector& d = docs[doc];
    composites_[from].subtract(d);
    composites_[to].add(d);
    norms_[from] = composites_[from].norm();
    norms_[to] = composites_[to].norm();
    --sizes_[from];
    ++sizes_[to];
    assignment_[doc] = to;
    refresh_cached_t();
    ++accepted_moves_;
#ifndef NDEBUG
    if (accepted_moves_ % 1000 == 0) {
      assert(std::abs(cached_t_ - scratch_t(docs, assignment_, k_, dim_)) <=
             1e-6);
    }
#endif
  }

  /// Criterion value rebuilt from scratch (fresh composites, sum of norms),
  /// independent of any cached state.
  static double scratch_t(std::span<const SparseVector> docs,
                          std::span<const std::size_t> assignment,
                          std::size_t k, std::size_t dim) {
    std::vector<DenseAccumulator> acc(k, DenseAccumulator(dim));
    for (std::size_t i = 0; i < docs.size(); ++i) {
      acc[assignment[i]].add(docs[i]);
    }
    double t = 0.0;
    for (const auto& a : acc) {
      t += a.norm();
    }
    return t;
  }

 private:
  ClusteringSolution() = default;

  void refresh_cached_t() {
    double t = 0.0;
    for (const double n : norms_) {
      t += n;
    }
    cached_t_ = t;
  }

  void check_move(std::size_t doc, std::size_t to) const {
    if (doc >= assignment_.size()) {
      throw std::invalid_argument("move: document index out of range");
    }
    if (to >= k_) {
      throw std::invalid_argument("move: target cluster out of range");
    }
    const std::size_t from = assignment_[doc];
    if (to == from) {
      throw std::invalid_argument("move: document already in target cluster");
    }
    if (sizes_[from] < 2) {
      throw std::invalid_argument(
          "move: cannot drain a single-member cluster");
    }
  }

  std::vector<std::size_t> assignment_;
  std::size_t k_ = 0;
  std::size_t dim_ = 0;
  std::vector<DenseAccumulator> composites_;
  std::vector<std::size_t> sizes_;
  std::vector<double> norms_;
  double cached_t_ = 0.0;
  std::size_t accepted_moves_ = 0;
};

/// Criterion value T recomputed from scratch via the composite-norm closed
/// form.
inline double criterion_value(std::span<const SparseVector> docs,
                              const ClusteringSolution& sol) {
  return ClusteringSolution::scratch_t(docs, sol.assignment(), sol.k(),
                                       sol.dim());
}

/**
 * Criterion value evaluated literally as the double sum of member-centroid
 * cosines. Kept as the slow debug route for checking the closed form.
 * Throws if some cluster's composite has zero norm (impossible for unit
 * documents and nonempty clusters).
 */
inline double criterion_cosine_sum(std::span<const SparseVector> docs,
                                   const ClusteringSolution& sol) {
  const std::size_t k = sol.k();
  const std::size_t dim = sol.dim();
  std::vector<DenseAccumulator> acc(k, DenseAccumulator(dim));
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    acc[sol.assignment()[i]].add(docs[i]);
    ++sizes[sol.assignment()[i]];
  }
  double t = 0.0;
  for (std::size_t r = 0; r < k; ++r) {
    // Centroid = composite / size; build it explicitly.
    std::vector<double> centroid(acc[r].values().begin(),
                                 acc[r].values().end());
    for (double& x : centroid) {
      x /= static_cast<double>(sizes[r]);
    }
    double centroid_sq = 0.0;
    for (const double x : centroid) {
      centroid_sq += x * x;
    }
    const double centroid_norm = std::sqrt(centroid_sq);
    if (centroid_norm == 0.0) {
      throw std::invalid_argument(
          "criterion_cosine_sum: cluster " + std::to_string(r) +
          " has a zero-norm centroid");
    }
    for (std::size_t i = 0; i < docs.size(); ++i) {
      if (sol.assignment()[i] != r) {
        continue;
      }
      double num = 0.0;
      for (const auto& e : docs[i].entries()) {
        num += centroid[e.term] * e.weight;
      }
      t += num / (docs[i].norm() * centroid_norm);
    }
  }
  return t;
}

}  // namespace textclust
