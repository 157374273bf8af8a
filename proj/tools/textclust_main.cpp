// textclust: tf-idf document clustering via distance-based seed selection
// and greedy refinement of an internal criterion function.
//
// Subcommands: vectorize, cluster, eval, bench. Exit codes: 0 success,
// 1 runtime failure, 2 usage error.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <CLI11.hpp>

#include "textclust/textclust.hpp"

namespace {

namespace fs = std::filesystem;
using namespace textclust;

struct CorpusOptions {
  std::string input;
  std::string rclass;
  std::string stopwords_path;
  bool no_tfidf = false;
  bool drop_empty = false;
};

void add_corpus_options(CLI::App* cmd, CorpusOptions& opt) {
  cmd->add_option("--input", opt.input,
                  "corpus: a .mat matrix file or a text directory laid out "
                  "as <root>/<class_label>/<doc>.txt")
      ->required();
  cmd->add_option("--rclass", opt.rclass,
                  "class-label file (one label per matrix row)");
  cmd->add_option("--stopwords", opt.stopwords_path,
                  "stopword file (text-directory corpora only)");
  cmd->add_flag("--no-tfidf", opt.no_tfidf,
                "skip tf-idf re-weighting; unit-normalize raw weights only");
  cmd->add_flag("--drop-empty", opt.drop_empty,
                "drop documents whose weighted vector has zero norm instead "
                "of failing");
}

/// Vectorized corpus: unit document vectors plus the ids/labels of the
/// documents that survived weighting.
struct Prepared {
  std::vector<SparseVector> vectors;
  std::vector<std::string> doc_ids;
  std::vector<std::string> labels;
  std::size_t n_terms = 0;
};

Prepared prepare_corpus(const CorpusOptions& opt) {
  DocTermMatrix matrix;
  if (fs::is_directory(opt.input)) {
    const TextCorpus corpus = read_corpus_dir(opt.input);
    std::unordered_set<std::string> stopwords;
    if (!opt.stopwords_path.empty()) {
      stopwords = load_stopwords(opt.stopwords_path);
    }
    matrix = build_matrix(corpus.docs, corpus.labels, stopwords);
  } else {
    if (!opt.stopwords_path.empty()) {
      throw std::invalid_argument(
          "--stopwords applies only to text-directory corpora");
    }
    matrix = opt.rclass.empty() ? load_cluto(opt.input)
                                : load_cluto(opt.input, opt.rclass);
  }

  TransformResult tr = opt.no_tfidf ? normalize_only(matrix)
                                    : transform(matrix, fit_idf(matrix));
  if (!tr.rejected.empty()) {
    if (!opt.drop_empty) {
      std::ostringstream msg;
      msg << tr.rejected.size()
          << " document(s) have zero-norm vectors after weighting:";
      for (const std::size_t d : tr.rejected) {
        msg << "\n  " << matrix.doc_ids[d];
      }
      msg << "\nrerun with --drop-empty to exclude them";
      throw std::runtime_error(msg.str());
    }
    std::cerr << "note: dropped " << tr.rejected.size()
              << " zero-norm document(s)\n";
  }

  Prepared prepared;
  prepared.n_terms = matrix.n_terms;
  prepared.vectors = std::move(tr.vectors);
  for (const std::size_t d : tr.kept) {
    prepared.doc_ids.push_back(matrix.doc_ids[d]);
    if (!matrix.labels.empty()) {
      prepared.labels.push_back(matrix.labels[d]);
    }
  }
  return prepared;
}

void print_entropy_report(std::ostream& out, const EntropyReport& report) {
  for (const auto& entry : report.per_cluster) {
    out << "cluster " << entry.cluster << " size " << entry.size
        << " entropy " << format_fixed6(entry.entropy) << " classes ";
    bool first = true;
    for (const auto& [label, count] : entry.class_counts) {
      if (!first) {
        out << ',';
      }
      out << label << '=' << count;
      first = false;
    }
    out << '\n';
  }
  out << "total entropy " << format_fixed6(report.total) << " n " << report.n
      << " q " << report.q << " k " << report.per_cluster.size() << '\n';
}

void write_entropy_csv(std::ostream& out, const EntropyReport& report) {
  out << "cluster,size,entropy,classes\n";
  for (const auto& entry : report.per_cluster) {
    std::string classes;
    for (const auto& [label, count] : entry.class_counts) {
      if (!classes.empty()) {
        classes += ',';
      }
      classes += label + "=" + std::to_string(count);
    }
    out << entry.cluster << ',' << entry.size << ','
        << format_fixed6(entry.entropy) << ',' << csv_field(classes) << '\n';
  }
  out << "total," << report.n << ',' << format_fixed6(report.total) << ",\n";
}

int cmd_cluster(const CorpusOptions& corpus_opt, std::size_t k, std::size_t r,
                std::uint64_t seed, const std::string& method_name,
                std::size_t max_iters, const std::string& out_path) {
  const Prepared prepared = prepare_corpus(corpus_opt);
  const Method method = method_from_string(method_name);
  const std::size_t r_used =
      r == 0 ? default_r_param(prepared.vectors.size(), k) : r;
  const ClusterRunResult run =
      cluster(prepared.vectors, k, r_used, seed, method, max_iters);

  write_assignment(out_path, prepared.doc_ids, run.solution.assignment());

  std::cout << "method " << to_string(method) << '\n'
            << "k " << k << '\n'
            << "r " << r_used << '\n'
            << "seed " << seed << '\n'
            << "docs " << prepared.vectors.size() << '\n'
            << "T " << format_fixed6(run.solution.cached_t()) << '\n'
            << "iterations " << run.stats.iterations << '\n'
            << "moves " << run.stats.moves_accepted << '\n'
            << "converged " << (run.stats.converged ? "true" : "false")
            << '\n';
  if (!prepared.labels.empty()) {
    print_entropy_report(std::cout,
                         total_entropy(run.solution, prepared.labels));
  }
  return 0;
}

int cmd_eval(const std::string& assign_path, const std::string& rclass_path,
             const std::string& csv_path) {
  const Assignment assignment = read_assignment(assign_path);
  const std::vector<std::string> labels = read_rclass(rclass_path);
  if (labels.size() != assignment.clusters.size()) {
    throw std::runtime_error(
        "eval: " + std::to_string(assignment.clusters.size()) +
        " assignment lines vs " + std::to_string(labels.size()) + " labels");
  }
  std::size_t k = 0;
  for (const std::size_t c : assignment.clusters) {
    k = std::max(k, c + 1);
  }
  const EntropyReport report = entropy_report(assignment.clusters, k, labels);
  print_entropy_report(std::cout, report);
  if (!csv_path.empty()) {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) {
      throw std::runtime_error("eval: cannot open " + csv_path);
    }
    write_entropy_csv(out, report);
  }
  return 0;
}

int cmd_vectorize(const CorpusOptions& corpus_opt, const std::string& out_mat,
                  std::string out_rclass) {
  const Prepared prepared = prepare_corpus(corpus_opt);
  DocTermMatrix out;
  out.docs = prepared.vectors;
  out.doc_ids = prepared.doc_ids;
  out.labels = prepared.labels;
  out.n_docs = prepared.vectors.size();
  out.n_terms = prepared.n_terms;
  write_cluto_mat(out, out_mat);
  if (!out.labels.empty()) {
    if (out_rclass.empty()) {
      out_rclass = out_mat + ".rclass";
    }
    write_rclass(out.labels, out_rclass);
  }
  std::cout << "wrote " << out.n_docs << " documents, " << out.n_terms
            << " terms to " << out_mat << '\n';
  return 0;
}

struct SyntheticOptions {
  SyntheticSpec spec;
  bool enabled = false;
};

int cmd_bench(const CorpusOptions& corpus_opt, const SyntheticOptions& synth,
              BenchConfig config, const std::string& out_path,
              const std::string& method_name) {
  Prepared prepared;
  if (synth.enabled) {
    const DocTermMatrix matrix = generate_synthetic(synth.spec);
    TransformResult tr = corpus_opt.no_tfidf
                             ? normalize_only(matrix)
                             : transform(matrix, fit_idf(matrix));
    prepared.vectors = std::move(tr.vectors);
    for (const std::size_t d : tr.kept) {
      prepared.doc_ids.push_back(matrix.doc_ids[d]);
      prepared.labels.push_back(matrix.labels[d]);
    }
    prepared.n_terms = matrix.n_terms;
    if (config.dataset.empty()) {
      config.dataset = "synthetic";
    }
  } else {
    prepared = prepare_corpus(corpus_opt);
    if (config.dataset.empty()) {
      config.dataset = fs::path(corpus_opt.input).filename().string();
    }
  }
  if (prepared.labels.empty()) {
    throw std::runtime_error(
        "bench: entropy scoring needs class labels (--rclass, a labeled "
        "directory corpus, or --synthetic)");
  }

  if (method_name == "proposed") {
    config.run_baseline = false;
  } else if (method_name == "baseline") {
    config.run_proposed = false;
  } else if (method_name != "both") {
    throw std::invalid_argument("bench: unknown method '" + method_name +
                                "'");
  }

  const BenchResult result =
      run_bench(config, prepared.vectors, prepared.labels);

  {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      throw std::runtime_error("bench: cannot open " + out_path);
    }
    write_rows_csv(out, result.rows);
  }
  const fs::path agg_path = aggregate_csv_path(out_path);
  {
    std::ofstream out(agg_path, std::ios::binary);
    if (!out) {
      throw std::runtime_error("bench: cannot open " + agg_path.string());
    }
    write_aggregates_csv(out, result.aggregates);
  }

  for (const auto& agg : result.aggregates) {
    std::cout << agg.method << " k " << agg.k << " mean_entropy "
              << format_fixed6(agg.mean_entropy) << " std_entropy "
              << format_fixed6(agg.std_entropy) << '\n';
  }
  std::cout << "rows " << result.rows.size() << " -> " << out_path
            << "\naggregates " << result.aggregates.size() << " -> "
            << agg_path.string() << '\n';
  if (result.any_failed) {
    std::cerr << "bench: one or more runs failed (see status column)\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "textclust: document clustering over tf-idf vectors with "
      "distance-based seeding and greedy criterion refinement"};
  app.require_subcommand(1);

  // cluster
  auto* cluster_cmd =
      app.add_subcommand("cluster", "cluster a corpus and write assignments");
  CorpusOptions cluster_corpus;
  add_corpus_options(cluster_cmd, cluster_corpus);
  std::size_t k = 0;
  std::size_t r = 0;
  std::uint64_t seed = 1;
  std::string method = "proposed";
  std::size_t max_iters = kDefaultMaxIterations;
  std::string assign_out = "assignment.txt";
  cluster_cmd->add_option("--k", k, "number of clusters")
      ->required()
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 32));
  cluster_cmd->add_option(
      "--r", r, "seed-selection candidate pool size (0 = max(1, N/(10 k)))");
  cluster_cmd->add_option("--seed", seed, "rng seed (default 1)");
  cluster_cmd->add_option("--method", method, "proposed | baseline")
      ->check(CLI::IsMember({"proposed", "baseline"}));
  cluster_cmd->add_option("--max-iters", max_iters,
                          "refinement iteration cap (default 500)");
  cluster_cmd->add_option("--out", assign_out,
                          "assignment output file (default assignment.txt)");

  // eval
  auto* eval_cmd = app.add_subcommand(
      "eval", "score an assignment file against class labels");
  std::string eval_assign;
  std::string eval_rclass;
  std::string eval_csv;
  eval_cmd->add_option("--assign", eval_assign, "assignment file")->required();
  eval_cmd->add_option("--rclass", eval_rclass, "class-label file")
      ->required();
  eval_cmd->add_option("--csv", eval_csv, "also write the report as CSV");

  // vectorize
  auto* vec_cmd = app.add_subcommand(
      "vectorize", "write a corpus as a weighted, unit-normalized matrix");
  CorpusOptions vec_corpus;
  add_corpus_options(vec_cmd, vec_corpus);
  std::string out_mat;
  std::string out_rclass;
  vec_cmd->add_option("--out-mat", out_mat, "output matrix file")->required();
  vec_cmd->add_option("--out-rclass", out_rclass,
                      "output label file (default <out-mat>.rclass)");

  // bench
  auto* bench_cmd = app.add_subcommand(
      "bench", "paired-seed benchmark of both methods over a k grid");
  CorpusOptions bench_corpus;
  bench_cmd->add_option("--input", bench_corpus.input,
                        "corpus (.mat file or text directory)");
  bench_cmd->add_option("--rclass", bench_corpus.rclass, "class-label file");
  bench_cmd->add_option("--stopwords", bench_corpus.stopwords_path,
                        "stopword file (text-directory corpora only)");
  bench_cmd->add_flag("--no-tfidf", bench_corpus.no_tfidf,
                      "skip tf-idf re-weighting");
  bench_cmd->add_flag("--drop-empty", bench_corpus.drop_empty,
                      "drop zero-norm documents instead of failing");
  SyntheticOptions synth;
  bench_cmd->add_flag("--synthetic", synth.enabled,
                      "benchmark a generated corpus instead of --input");
  bench_cmd->add_option("--classes", synth.spec.n_classes,
                        "synthetic: number of classes (default 15)");
  bench_cmd->add_option("--docs-per-class", synth.spec.docs_per_class,
                        "synthetic: documents per class (default 100)");
  bench_cmd->add_option("--vocab-per-class", synth.spec.vocab_per_class,
                        "synthetic: private terms per class (default 40)");
  bench_cmd->add_option("--shared-vocab", synth.spec.shared_vocab,
                        "synthetic: shared terms (default 200)");
  bench_cmd->add_option("--doc-length", synth.spec.doc_length,
                        "synthetic: term draws per document (default 80)");
  bench_cmd->add_option("--noise", synth.spec.noise_fraction,
                        "synthetic: shared-block draw probability "
                        "(default 0.3)");
  bench_cmd->add_option("--gen-seed", synth.spec.rng_seed,
                        "synthetic: generator rng seed (default 1)");
  BenchConfig bench_config;
  bench_config.dataset.clear();
  std::string bench_method = "both";
  std::string bench_out = "bench.csv";
  bool no_timing = false;
  bench_cmd->add_option("--k-list", bench_config.k_values,
                        "comma-separated cluster counts (default 10,15,20,25)")
      ->delimiter(',');
  bench_cmd->add_option("--trials", bench_config.trials,
                        "trials per (method, k) cell (default 10)");
  bench_cmd->add_option("--r", bench_config.r_param,
                        "seed-selection pool size (0 = auto)");
  bench_cmd->add_option("--seed", bench_config.base_seed,
                        "base rng seed; trial t uses base+t (default 1)");
  bench_cmd->add_option("--method", bench_method,
                        "proposed | baseline | both (default both)")
      ->check(CLI::IsMember({"proposed", "baseline", "both"}));
  bench_cmd->add_option("--max-iters", bench_config.max_iterations,
                        "refinement iteration cap (default 500)");
  bench_cmd->add_option("--out", bench_out,
                        "per-trial CSV path; aggregates go to "
                        "<out>_agg.csv (default bench.csv)");
  bench_cmd->add_option("--threads", bench_config.threads,
                        "worker count (0 = hardware, capped by "
                        "TEXTCLUST_THREADS)");
  bench_cmd->add_flag("--no-timing", no_timing,
                      "write 0 in wall_time_ms for byte-stable CSVs");
  bench_cmd->add_option("--dataset-name", bench_config.dataset,
                        "dataset column value (default: input filename)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(cluster_cmd)) {
      return cmd_cluster(cluster_corpus, k, r, seed, method, max_iters,
                         assign_out);
    }
    if (app.got_subcommand(eval_cmd)) {
      return cmd_eval(eval_assign, eval_rclass, eval_csv);
    }
    if (app.got_subcommand(vec_cmd)) {
      return cmd_vectorize(vec_corpus, out_mat, out_rclass);
    }
    if (app.got_subcommand(bench_cmd)) {
      if (!synth.enabled && bench_corpus.input.empty()) {
        std::cerr << "bench: provide --input or --synthetic\n";
        return 2;
      }
      bench_config.record_timing = !no_timing;
      return cmd_bench(bench_corpus, synth, bench_config, bench_out,
                       bench_method);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
