#pragma once

// Test-only helpers: instance generators plus independent oracle
// implementations of the quantities under test. The oracles work on plain
// dense arrays and deliberately avoid the library's sparse kernels so both
// sides of every comparison are computed twice.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "textclust/rng.hpp"
#include "textclust/sparse_vector.hpp"

namespace test_support {

using textclust::Rng;
using textclust::SparseVector;
using textclust::TermWeight;

inline std::vector<double> to_dense(const SparseVector& v) {
  std::vector<double> dense(v.dim(), 0.0);
  for (const auto& e : v.entries()) {
    dense[e.term] = e.weight;
  }
  return dense;
}

inline double dense_dot(const std::vector<double>& a,
                        const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += a[i] * b[i];
  }
  return sum;
}

inline double dense_norm(const std::vector<double>& a) {
  return std::sqrt(dense_dot(a, a));
}

/// Random sparse vector with positive weights, unit-normalized through
/// dense arithmetic (not the library's normalize).
inline SparseVector random_unit_vector(Rng& rng, std::size_t dim,
                                       std::size_t max_nnz) {
  const std::size_t nnz =
      1 + static_cast<std::size_t>(rng.uniform_below(
              std::min(max_nnz, dim)));
  std::vector<std::size_t> terms(dim);
  std::iota(terms.begin(), terms.end(), 0);
  rng.shuffle(terms);
  terms.resize(nnz);
  std::sort(terms.begin(), terms.end());
  std::vector<TermWeight> entries;
  double sq = 0.0;
  for (const std::size_t t : terms) {
    const double w = 0.1 + rng.uniform01();
    entries.push_back({static_cast<std::uint32_t>(t), w});
    sq += w * w;
  }
  const double norm = std::sqrt(sq);
  for (auto& e : entries) {
    e.weight /= norm;
  }
  return SparseVector(std::move(entries), dim);
}

inline std::vector<SparseVector> random_unit_corpus(Rng& rng, std::size_t n,
                                                    std::size_t dim,
                                                    std::size_t max_nnz) {
  std::vector<SparseVector> docs;
  docs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    docs.push_back(random_unit_vector(rng, dim, max_nnz));
  }
  return docs;
}

/// Random assignment guaranteed to leave no cluster empty: the first k
/// documents pin clusters 0..k-1, the rest fall uniformly.
inline std::vector<std::size_t> random_assignment(Rng& rng, std::size_t n,
                                                  std::size_t k) {
  std::vector<std::size_t> assignment(n);
  for (std::size_t i = 0; i < n; ++i) {
    assignment[i] =
        i < k ? i : static_cast<std::size_t>(rng.uniform_below(k));
  }
  return assignment;
}

/// Criterion value as the literal double sum of member-centroid cosines,
/// evaluated over dense arrays.
inline double oracle_cosine_sum_t(const std::vector<SparseVector>& docs,
                                  const std::vector<std::size_t>& assignment,
                                  std::size_t k) {
  const std::size_t dim = docs.front().dim();
  std::vector<std::vector<double>> composites(k,
                                              std::vector<double>(dim, 0.0));
  std::vector<std::size_t> sizes(k, 0);
  std::vector<std::vector<double>> dense_docs;
  dense_docs.reserve(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    dense_docs.push_back(to_dense(docs[i]));
    for (std::size_t t = 0; t < dim; ++t) {
      composites[assignment[i]][t] += dense_docs[i][t];
    }
    ++sizes[assignment[i]];
  }
  double t_value = 0.0;
  for (std::size_t r = 0; r < k; ++r) {
    std::vector<double> centroid = composites[r];
    for (double& x : centroid) {
      x /= static_cast<double>(sizes[r]);
    }
    const double centroid_norm = dense_norm(centroid);
    for (std::size_t i = 0; i < docs.size(); ++i) {
      if (assignment[i] == r) {
        t_value += dense_dot(dense_docs[i], centroid) /
                   (dense_norm(dense_docs[i]) * centroid_norm);
      }
    }
  }
  return t_value;
}

/// Criterion value as the sum of composite norms, from scratch.
inline double oracle_norm_sum_t(const std::vector<SparseVector>& docs,
                                const std::vector<std::size_t>& assignment,
                                std::size_t k) {
  const std::size_t dim = docs.front().dim();
  std::vector<std::vector<double>> composites(k,
                                              std::vector<double>(dim, 0.0));
  for (std::size_t i = 0; i < docs.size(); ++i) {
    for (const auto& e : docs[i].entries()) {
      composites[assignment[i]][e.term] += e.weight;
    }
  }
  double t_value = 0.0;
  for (const auto& composite : composites) {
    t_value += dense_norm(composite);
  }
  return t_value;
}

/// The seeding contract's distance: sqrt(2 - 2 cos) on unit vectors,
/// computed here from dense dot products.
inline double oracle_seed_distance(const std::vector<double>& a,
                                   const std::vector<double>& b) {
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * dense_dot(a, b)));
}

/// Reference seed selection: same contract, independent bookkeeping. The
/// first seed is an input (it is a pure rng draw in the implementation).
inline std::vector<std::size_t> oracle_select_seeds(
    const std::vector<SparseVector>& docs, std::size_t k, std::size_t r,
    std::size_t first_seed) {
  const std::size_t n = docs.size();
  std::vector<std::vector<double>> dense;
  dense.reserve(n);
  for (const auto& d : docs) {
    dense.push_back(to_dense(d));
  }
  std::vector<std::size_t> seeds{first_seed};
  std::vector<bool> is_seed(n, false);
  is_seed[first_seed] = true;

  auto sums_for = [&](std::size_t i) {
    double sum = 0.0;
    double sq = 0.0;
    for (const std::size_t s : seeds) {
      const double dist = oracle_seed_distance(dense[i], dense[s]);
      sum += dist;
      sq += dist * dist;
    }
    return std::pair<double, double>{sum, sq};
  };

  // Second seed: farthest from the first, lowest index on ties.
  {
    std::size_t best = n;
    double best_dist = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (is_seed[i]) {
        continue;
      }
      const double dist = oracle_seed_distance(dense[i], dense[first_seed]);
      if (dist > best_dist) {
        best_dist = dist;
        best = i;
      }
    }
    seeds.push_back(best);
    is_seed[best] = true;
  }

  while (seeds.size() < k) {
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < n; ++i) {
      if (!is_seed[i]) {
        pool.push_back(i);
      }
    }
    std::sort(pool.begin(), pool.end(), [&](std::size_t a, std::size_t b) {
      const double sum_a = sums_for(a).first;
      const double sum_b = sums_for(b).first;
      if (sum_a != sum_b) {
        return sum_a > sum_b;
      }
      return a < b;
    });
    if (pool.size() > r) {
      pool.resize(r);
    }
    std::size_t best = pool.front();
    double best_sq = sums_for(best).second;
    for (const std::size_t i : pool) {
      const double sq = sums_for(i).second;
      if (sq < best_sq || (sq == best_sq && i < best)) {
        best = i;
        best_sq = std::min(best_sq, sq);
      }
    }
    seeds.push_back(best);
    is_seed[best] = true;
  }
  return seeds;
}

/// Reference nearest-seed assignment, ties to the lower seed index.
inline std::vector<std::size_t> oracle_assign(
    const std::vector<SparseVector>& docs,
    const std::vector<std::size_t>& seeds) {
  const std::size_t n = docs.size();
  std::vector<std::vector<double>> dense;
  dense.reserve(n);
  for (const auto& d : docs) {
    dense.push_back(to_dense(d));
  }
  std::vector<std::size_t> assignment(n, 0);
  std::vector<bool> is_seed(n, false);
  for (std::size_t j = 0; j < seeds.size(); ++j) {
    assignment[seeds[j]] = j;
    is_seed[seeds[j]] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (is_seed[i]) {
      continue;
    }
    std::size_t best = 0;
    double best_dist = oracle_seed_distance(dense[i], dense[seeds[0]]);
    for (std::size_t j = 1; j < seeds.size(); ++j) {
      const double dist = oracle_seed_distance(dense[i], dense[seeds[j]]);
      if (dist < best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    assignment[i] = best;
  }
  return assignment;
}

/// Best achievable T over all 2-partitions with two nonempty sides,
/// by exhaustive enumeration.
inline double oracle_best_two_partition_t(
    const std::vector<SparseVector>& docs) {
  const std::size_t n = docs.size();
  double best = -1.0;
  for (std::uint64_t bits = 1; bits + 1 < (std::uint64_t{1} << n); ++bits) {
    std::vector<std::size_t> assignment(n);
    for (std::size_t i = 0; i < n; ++i) {
      assignment[i] = (bits >> i) & 1;
    }
    best = std::max(best, oracle_norm_sum_t(docs, assignment, 2));
  }
  return best;
}

/// Scratch working directory for file-based tests.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    auto base = std::filesystem::temp_directory_path();
    for (int i = 0; i < 10000; ++i) {
      auto candidate = base / ("textclust_" + tag + "_" + std::to_string(i));
      std::error_code ec;
      if (std::filesystem::create_directory(candidate, ec)) {
        path_ = candidate;
        return;
      }
    }
    throw std::runtime_error("TempDir: could not create a scratch directory");
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path,
                       const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Runs the CLI binary with `args`, working directory `dir`; stdout and
/// stderr are captured into files inside `dir`.
struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline CliResult run_cli(const std::string& args,
                         const std::filesystem::path& dir) {
  const std::string out_path = (dir / "_stdout.txt").string();
  const std::string err_path = (dir / "_stderr.txt").string();
  const std::string command = "cd '" + dir.string() + "' && '" +
                              TEXTCLUST_CLI_PATH + "' " + args + " > '" +
                              out_path + "' 2> '" + err_path + "'";
  const int status = std::system(command.c_str());
  CliResult result;
  result.exit_code = WEXITSTATUS(status);
  result.out = read_file(out_path);
  result.err = read_file(err_path);
  return result;
}

}  // namespace test_support
