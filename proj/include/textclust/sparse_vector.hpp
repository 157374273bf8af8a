#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace textclust {

/// One stored coordinate of a sparse vector.
struct TermWeight {
  std::uint32_t term = 0;
  double weight = 0.0;

  friend bool operator==(const TermWeight&, const TermWeight&) = default;
};

/**
 * Sparse term-weight vector over a fixed term space.
 *
 * Entries are sorted by strictly increasing term id, every term id is below
 * dim(), and no entry stores an exact zero. Instances are immutable after
 * construction and safe to share across threads.
 */
class SparseVector {
 public:
  SparseVector() = default;

  SparseVector(std::vector<TermWeight> entries, std::size_t dim)
      : entries_(std::move(entries)), dim_(dim) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].term >= dim_) {
        throw std::invalid_argument("SparseVector: term id " +
                                    std::to_string(entries_[i].term) +
                                    " out of range for dim " +
                                    std::to_string(dim_));
      }
      if (i > 0 && entries_[i - 1].term >= entries_[i].term) {
        throw std::invalid_argument(
            "SparseVector: term ids must be strictly increasing");
      }
      if (entries_[i].weight == 0.0) {
        throw std::invalid_argument("SparseVector: zero weight stored at term " +
                                    std::to_string(entries_[i].term));
      }
    }
  }

  const std::vector<TermWeight>& entries() const { return entries_; }
  std::size_t dim() const { return dim_; }
  std::size_t nnz() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  double norm() const {
    double sq = 0.0;
    for (const auto& e : entries_) {
      sq += e.weight * e.weight;
    }
    return std::sqrt(sq);
  }

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::vector<TermWeight> entries_;
  std::size_t dim_ = 0;
};

namespace detail {

inline void require_same_dim(const SparseVector& a, const SparseVector& b,
                             const char* op) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()) + ")");
  }
}

/// Builds a SparseVector from possibly zero-valued coordinates, dropping
/// entries that are exactly 0.0. Input must already be sorted by term id.
inline SparseVector sparse_from_sorted(std::vector<TermWeight> entries,
                                       std::size_t dim) {
  std::vector<TermWeight> kept;
  kept.reserve(entries.size());
  for (const auto& e : entries) {
    if (e.weight != 0.0) {
      kept.push_back(e);
    }
  }
  return SparseVector(std::move(kept), dim);
}

}  // namespace detail

/// Inner product by a two-finger merge over the sorted entry lists;
/// O(nnz_a + nnz_b).
inline double dot(const SparseVector& a, const SparseVector& b) {
  detail::require_same_dim(a, b, "dot");
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  double sum = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < ea.size() && j < eb.size()) {
    if (ea[i].term < eb[j].term) {
      ++i;
    } else if (eb[j].term < ea[i].term) {
      ++j;
    } else {
      sum += ea[i].weight * eb[j].weight;
      ++i;
      ++j;
    }
  }
  return sum;
}

/// Cosine similarity dot(a,b)/(|a||b|). Throws on zero-norm input.
inline double cosine(const SparseVector& a, const SparseVector& b) {
  detail::require_same_dim(a, b, "cosine");
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) {
    throw std::invalid_argument("cosine: undefined for zero-norm vector");
  }
  return dot(a, b) / (na * nb);
}

/// Euclidean distance |a-b|, evaluated by direct merge subtraction.
inline double euclidean(const SparseVector& a, const SparseVector& b) {
  detail::require_same_dim(a, b, "euclidean");
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  double sq = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < ea.size() || j < eb.size()) {
    if (j == eb.size() || (i < ea.size() && ea[i].term < eb[j].term)) {
      sq += ea[i].weight * ea[i].weight;
      ++i;
    } else if (i == ea.size() || eb[j].term < ea[i].term) {
      sq += eb[j].weight * eb[j].weight;
      ++j;
    } else {
      const double d = ea[i].weight - eb[j].weight;
      sq += d * d;
      ++i;
      ++j;
    }
  }
  return std::sqrt(sq);
}

/// Rescales a to unit length. Throws on the zero vector.
inline SparseVector normalize(const SparseVector& a) {
  const double n = a.norm();
  if (n == 0.0) {
    throw std::invalid_argument("normalize: zero vector");
  }
  std::vector<TermWeight> scaled = a.entries();
  for (auto& e : scaled) {
    e.weight /= n;
  }
  return detail::sparse_from_sorted(std::move(scaled), a.dim());
}

/**
 * Dense accumulation buffer for composite vectors.
 *
 * Holds one real per term of the space so documents can be added or removed
 * in O(nnz) regardless of how dense the running sum has become. Single-owner
 * mutable state; round-tripping to_sparse() drops exact zeros only.
 */
class DenseAccumulator {
 public:
  explicit DenseAccumulator(std::size_t dim) : values_(dim, 0.0) {}

  std::size_t dim() const { return values_.size(); }
  std::span<const double> values() const { return values_; }

  void add(const SparseVector& v) {
    check_dim(v);
    for (const auto& e : v.entries()) {
      values_[e.term] += e.weight;
    }
  }

  void subtract(const SparseVector& v) {
    check_dim(v);
    for (const auto& e : v.entries()) {
      values_[e.term] -= e.weight;
    }
  }

  /// Inner product with a sparse vector; touches only v's support.
  double dot_sparse(const SparseVector& v) const {
    check_dim(v);
    double sum = 0.0;
    for (const auto& e : v.entries()) {
      sum += values_[e.term] * e.weight;
    }
    return sum;
  }

  /// L2 norm recomputed from the full dense buffer.
  double norm() const {
    double sq = 0.0;
    for (const double x : values_) {
      sq += x * x;
    }
    return std::sqrt(sq);
  }

  SparseVector to_sparse() const {
    std::vector<TermWeight> entries;
    for (std::size_t t = 0; t < values_.size(); ++t) {
      if (values_[t] != 0.0) {
        entries.push_back({static_cast<std::uint32_t>(t), values_[t]});
      }
    }
    return SparseVector(std::move(entries), values_.size());
  }

  void clear() { values_.assign(values_.size(), 0.0); }

 private:
  void check_dim(const SparseVector& v) const {
    if (v.dim() != values_.size()) {
      throw std::invalid_argument("DenseAccumulator: dimension mismatch");
    }
  }

  std::vector<double> values_;
};

/// Composite vector: elementwise sum of the inputs. Throws on an empty list.
inline SparseVector composite(std::span<const SparseVector> vs) {
  if (vs.empty()) {
    throw std::invalid_argument("composite: empty input");
  }
  DenseAccumulator acc(vs.front().dim());
  for (const auto& v : vs) {
    acc.add(v);
  }
  return acc.to_sparse();
}

/// Centroid: composite divided by the number of inputs.
inline SparseVector centroid(std::span<const SparseVector> vs) {
  if (vs.empty()) {
    throw std::invalid_argument("centroid: empty input");
  }
  SparseVector sum = composite(vs);
  std::vector<TermWeight> scaled = sum.entries();
  const double inv = 1.0 / static_cast<double>(vs.size());
  for (auto& e : scaled) {
    e.weight *= inv;
  }
  return detail::sparse_from_sorted(std::move(scaled), sum.dim());
}

}  // namespace textclust
