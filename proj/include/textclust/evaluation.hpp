#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "textclust/criterion.hpp"

namespace textclust {

/// One cluster's entry in an entropy report.
struct ClusterEntropy {
  std::size_t cluster = 0;
  std::size_t size = 0;
  double entropy = 0.0;
  std::map<std::string, std::size_t> class_counts;
};

/// Per-cluster entropies plus the size-weighted total. 0 is a perfect
/// clustering; values stay in [0, 1] thanks to the log q normalizer.
struct EntropyReport {
  std::vector<ClusterEntropy> per_cluster;
  double total = 0.0;
  std::size_t q = 0;  // distinct classes in the ground truth
  std::size_t n = 0;  // documents scored
};

/**
 * Entropy of one cluster's class distribution, normalized by log q:
 *
 *   E = -(1/log q) * sum_i (c_i/N) log(c_i/N)
 *
 * Zero-count classes contribute nothing (the x log x -> 0 limit); a pure
 * cluster scores exactly 0, a uniform spread over q classes scores 1. The
 * value is base-invariant because numerator and normalizer share the base
 * (natural log here). Throws when q < 2, where the normalizer vanishes.
 */
inline double cluster_entropy(
    const std::map<std::string, std::size_t>& class_counts, std::size_t q) {
  if (q < 2) {
    throw std::invalid_argument("cluster_entropy: q must be at least 2");
  }
  std::size_t total = 0;
  for (const auto& [label, count] : class_counts) {
    total += count;
  }
  if (total == 0) {
    throw std::invalid_argument("cluster_entropy: empty cluster");
  }
  double sum = 0.0;
  for (const auto& [label, count] : class_counts) {
    if (count == 0) {
      continue;
    }
    const double p = static_cast<double>(count) / static_cast<double>(total);
    sum += p * std::log(p);
  }
  return -sum / std::log(static_cast<double>(q));
}

/**
 * Scores an assignment against ground-truth labels: entropy per cluster and
 * the N_r/N-weighted total. q is the number of distinct labels present in
 * the ground truth, not a parameter.
 */
inline EntropyReport entropy_report(std::span<const std::size_t> assignment,
                                    std::size_t k,
                                    std::span<const std::string> labels) {
  if (labels.size() != assignment.size()) {
    throw std::invalid_argument("entropy_report: " +
                                std::to_string(labels.size()) + " labels for " +
                                std::to_string(assignment.size()) +
                                " documents");
  }
  EntropyReport report;
  report.n = assignment.size();
  std::set<std::string> classes(labels.begin(), labels.end());
  report.q = classes.size();

  report.per_cluster.resize(k);
  for (std::size_t r = 0; r < k; ++r) {
    report.per_cluster[r].cluster = r;
  }
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] >= k) {
      throw std::invalid_argument("entropy_report: cluster index out of range");
    }
    auto& entry = report.per_cluster[assignment[i]];
    ++entry.size;
    ++entry.class_counts[labels[i]];
  }
  double total = 0.0;
  for (auto& entry : report.per_cluster) {
    if (entry.size == 0) {
      continue;  // empty clusters carry zero weight
    }
    entry.entropy = cluster_entropy(entry.class_counts, report.q);
    total += (static_cast<double>(entry.size) /
              static_cast<double>(report.n)) *
             entry.entropy;
  }
  report.total = total;
  return report;
}

/// Entropy report for a clustering solution.
inline EntropyReport total_entropy(const ClusteringSolution& sol,
                                   std::span<const std::string> labels) {
  return entropy_report(sol.assignment(), sol.k(), labels);
}

}  // namespace textclust
