#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "textclust/evaluation.hpp"
#include "textclust/io.hpp"
#include "textclust/refinement.hpp"
#include "textclust/sparse_vector.hpp"

namespace textclust {

/**
 * One benchmark campaign: every (method, k, trial) combination is run once,
 * trial t using rng seed base_seed + t for both methods so the comparison
 * is paired.
 */
struct BenchConfig {
  std::string dataset = "dataset";
  std::vector<std::size_t> k_values{10, 15, 20, 25};
  std::size_t trials = 10;
  std::size_t r_param = 0;  // 0: default_r_param(N, k)
  std::uint64_t base_seed = 1;
  bool run_proposed = true;
  bool run_baseline = true;
  std::size_t max_iterations = kDefaultMaxIterations;
  std::size_t threads = 0;     // 0: hardware count, capped by TEXTCLUST_THREADS
  bool record_timing = true;   // false writes 0 ms for byte-stable CSVs
};

/// One clustering run's outcome. A failed run keeps its slot with ok ==
/// false and the error message; the campaign continues.
struct BenchRow {
  std::string dataset;
  std::string method;
  std::size_t k = 0;
  std::size_t trial = 0;
  std::uint64_t rng_seed = 0;
  double entropy = 0.0;
  double final_t = 0.0;
  std::size_t iterations = 0;
  std::size_t moves = 0;
  std::int64_t wall_time_ms = 0;
  bool ok = false;
  std::string error;
};

/// Mean and sample standard deviation of entropy over a cell's successful
/// trials.
struct BenchAggregate {
  std::string dataset;
  std::string method;
  std::size_t k = 0;
  double mean_entropy = 0.0;
  double std_entropy = 0.0;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  std::vector<BenchAggregate> aggregates;
  bool any_failed = false;
};

/// Worker count: explicit request wins; otherwise the hardware count capped
/// by the TEXTCLUST_THREADS environment variable (invalid values ignored).
inline std::size_t resolve_thread_count(std::size_t requested) {
  if (requested > 0) {
    return requested;
  }
  std::size_t count = std::thread::hardware_concurrency();
  if (count == 0) {
    count = 1;
  }
  if (const char* env = std::getenv("TEXTCLUST_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && parsed > 0) {
      count = std::min<std::size_t>(count, static_cast<std::size_t>(parsed));
    }
  }
  return count;
}

/**
 * Runs the campaign over shared read-only unit document vectors.
 *
 * Tasks are enumerated in (method, k, trial) order with proposed before
 * baseline and execute on a small worker pool; every task writes only its
 * own preallocated row, so results are identical for any worker count.
 */
inline BenchResult run_bench(const BenchConfig& config,
                             std::span<const SparseVector> docs,
                             std::span<const std::string> labels) {
  if (config.trials < 1) {
    throw std::invalid_argument("run_bench: trials must be >= 1");
  }
  if (config.k_values.empty()) {
    throw std::invalid_argument("run_bench: k_values must be nonempty");
  }
  for (const std::size_t k : config.k_values) {
    if (k < 2) {
      throw std::invalid_argument("run_bench: every k must be >= 2");
    }
  }
  if (labels.size() != docs.size()) {
    throw std::invalid_argument(
        "run_bench: entropy scoring needs one label per document");
  }
  std::vector<Method> methods;
  if (config.run_proposed) {
    methods.push_back(Method::proposed);
  }
  if (config.run_baseline) {
    methods.push_back(Method::baseline);
  }
  if (methods.empty()) {
    throw std::invalid_argument("run_bench: no methods selected");
  }

  BenchResult result;
  result.rows.resize(methods.size() * config.k_values.size() * config.trials);
  std::size_t slot = 0;
  for (const Method method : methods) {
    for (const std::size_t k : config.k_values) {
      for (std::size_t trial = 0; trial < config.trials; ++trial) {
        BenchRow& row = result.rows[slot++];
        row.dataset = config.dataset;
        row.method = to_string(method);
        row.k = k;
        row.trial = trial;
        row.rng_seed = config.base_seed + trial;
      }
    }
  }

  const auto run_one = [&](BenchRow& row) {
    const Method method = method_from_string(row.method);
    const auto start = std::chrono::steady_clock::now();
    try {
      ClusterRunResult run = cluster(docs, row.k, config.r_param, row.rng_seed,
                                     method, config.max_iterations);
      const EntropyReport report = total_entropy(run.solution, labels);
      row.entropy = report.total;
      row.final_t = run.solution.cached_t();
      row.iterations = run.stats.iterations;
      row.moves = run.stats.moves_accepted;
      row.ok = true;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
    if (config.record_timing) {
      row.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    }
  };

  const std::size_t workers =
      std::min(resolve_thread_count(config.threads), result.rows.size());
  if (workers <= 1) {
    for (auto& row : result.rows) {
      run_one(row);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= result.rows.size()) {
            return;
          }
          run_one(result.rows[i]);
        }
      });
    }
    for (auto& t : pool) {
      t.join();
    }
  }

  for (const auto& row : result.rows) {
    if (!row.ok) {
      result.any_failed = true;
    }
  }

  // Aggregate in the same (method, k) enumeration order as the rows.
  for (const Method method : methods) {
    for (const std::size_t k : config.k_values) {
      std::vector<double> entropies;
      for (const auto& row : result.rows) {
        if (row.ok && row.k == k && row.method == to_string(method)) {
          entropies.push_back(row.entropy);
        }
      }
      BenchAggregate agg;
      agg.dataset = config.dataset;
      agg.method = to_string(method);
      agg.k = k;
      if (entropies.empty()) {
        agg.mean_entropy = std::nan("");
        agg.std_entropy = std::nan("");
      } else {
        double sum = 0.0;
        for (const double e : entropies) {
          sum += e;
        }
        agg.mean_entropy = sum / static_cast<double>(entropies.size());
        double sq = 0.0;
        for (const double e : entropies) {
          sq += (e - agg.mean_entropy) * (e - agg.mean_entropy);
        }
        agg.std_entropy =
            entropies.size() > 1
                ? std::sqrt(sq / static_cast<double>(entropies.size() - 1))
                : 0.0;
      }
      result.aggregates.push_back(std::move(agg));
    }
  }
  return result;
}

inline void write_rows_csv(std::ostream& out,
                           std::span<const BenchRow> rows) {
  out << "dataset,method,k,trial,rng_seed,entropy,final_t,iterations,moves,"
         "wall_time_ms,status\n";
  for (const auto& row : rows) {
    out << csv_field(row.dataset) << ',' << row.method << ',' << row.k << ','
        << row.trial << ',' << row.rng_seed << ',';
    if (row.ok) {
      out << format_fixed6(row.entropy) << ',' << format_fixed6(row.final_t)
          << ',' << row.iterations << ',' << row.moves << ','
          << row.wall_time_ms << ",ok\n";
    } else {
      out << ",,,,," << csv_field("error: " + row.error) << '\n';
    }
  }
}

inline void write_aggregates_csv(std::ostream& out,
                                 std::span<const BenchAggregate> aggregates) {
  out << "dataset,method,k,mean_entropy,std_entropy\n";
  for (const auto& agg : aggregates) {
    out << csv_field(agg.dataset) << ',' << agg.method << ',' << agg.k << ','
        << format_fixed6(agg.mean_entropy) << ','
        << format_fixed6(agg.std_entropy) << '\n';
  }
}

/// Companion path for the aggregate CSV: bench.csv -> bench_agg.csv.
inline std::filesystem::path aggregate_csv_path(
    const std::filesystem::path& rows_path) {
  std::filesystem::path agg = rows_path;
  agg.replace_filename(rows_path.stem().string() + "_agg" +
                       rows_path.extension().string());
  return agg;
}

}  // namespace textclust
