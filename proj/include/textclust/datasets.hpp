#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "textclust/io.hpp"
#include "textclust/rng.hpp"
#include "textclust/sparse_vector.hpp"
#include "textclust/vectorizer.hpp"

namespace textclust {

/**
 * A parsed CLUTO-style sparse matrix.
 *
 * Dialect: the first line is `n_rows n_cols n_nonzeros`; each following
 * line holds the space-separated `col val` pairs of one document, columns
 * 1-based, values real. An empty line is a document with no terms.
 * `row_classes` is filled when a companion .rclass file (one label per
 * line, same order) is loaded.
 */
struct ClutoMatrix {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::size_t n_nonzeros = 0;
  std::vector<std::vector<TermWeight>> rows;  // 0-based term ids, sorted
  std::vector<std::string> row_classes;
};

namespace detail {

[[noreturn]] inline void cluto_error(const std::filesystem::path& path,
                                     std::size_t line_no,
                                     const std::string& what) {
  throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                           ": " + what);
}

}  // namespace detail

/// Parses a .mat file, validating the header against the body: row count,
/// column range and total nonzero count must all agree.
inline ClutoMatrix read_cluto_mat(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("read_cluto_mat: cannot open " + path.string());
  }
  ClutoMatrix mat;
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) {
    detail::cluto_error(path, 1, "missing header line");
  }
  ++line_no;
  {
    std::istringstream header(line);
    if (!(header >> mat.n_rows >> mat.n_cols >> mat.n_nonzeros)) {
      detail::cluto_error(path, line_no,
                          "header must be 'n_rows n_cols n_nonzeros'");
    }
    std::string extra;
    if (header >> extra) {
      detail::cluto_error(path, line_no, "trailing tokens after header");
    }
  }

  std::size_t parsed_entries = 0;
  while (mat.rows.size() < mat.n_rows) {
    if (!std::getline(in, line)) {
      detail::cluto_error(path, line_no,
                          "file ends after " + std::to_string(mat.rows.size()) +
                              " of " + std::to_string(mat.n_rows) + " rows");
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    std::istringstream row_in(line);
    std::vector<TermWeight> row;
    long long col = 0;
    double val = 0.0;
    while (row_in >> col) {
      if (!(row_in >> val)) {
        detail::cluto_error(path, line_no, "column without a value");
      }
      if (col < 1 || static_cast<std::size_t>(col) > mat.n_cols) {
        detail::cluto_error(path, line_no,
                            "column " + std::to_string(col) +
                                " outside [1, " + std::to_string(mat.n_cols) +
                                "]");
      }
      if (val <= 0.0) {
        detail::cluto_error(path, line_no, "nonpositive value " +
                                               format_shortest(val));
      }
      row.push_back({static_cast<std::uint32_t>(col - 1), val});
      ++parsed_entries;
    }
    if (!row_in.eof()) {
      detail::cluto_error(path, line_no, "malformed column index");
    }
    std::sort(row.begin(), row.end(),
              [](const TermWeight& a, const TermWeight& b) {
                return a.term < b.term;
              });
    for (std::size_t i = 1; i < row.size(); ++i) {
      if (row[i - 1].term == row[i].term) {
        detail::cluto_error(path, line_no,
                            "duplicate column " +
                                std::to_string(row[i].term + 1));
      }
    }
    mat.rows.push_back(std::move(row));
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      detail::cluto_error(path, line_no, "content beyond declared row count");
    }
  }
  if (parsed_entries != mat.n_nonzeros) {
    detail::cluto_error(path, line_no,
                        "header declares " + std::to_string(mat.n_nonzeros) +
                            " nonzeros but body holds " +
                            std::to_string(parsed_entries));
  }
  return mat;
}

/// One class label per line, same order as the matrix rows.
inline std::vector<std::string> read_rclass(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("read_rclass: cannot open " + path.string());
  }
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                             line.back() == '\t')) {
      line.pop_back();
    }
    labels.push_back(line);
  }
  // Trailing blank lines are noise, interior ones are missing labels.
  while (!labels.empty() && labels.back().empty()) {
    labels.pop_back();
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].empty()) {
      throw std::runtime_error("read_rclass: empty label on line " +
                               std::to_string(i + 1) + " of " + path.string());
    }
  }
  return labels;
}

/// Loads a matrix without labels. Document ids are the 0-based row indices.
inline DocTermMatrix load_cluto(const std::filesystem::path& mat_path) {
  ClutoMatrix mat = read_cluto_mat(mat_path);
  DocTermMatrix matrix;
  matrix.n_docs = mat.n_rows;
  matrix.n_terms = mat.n_cols;
  matrix.docs.reserve(mat.n_rows);
  matrix.doc_ids.reserve(mat.n_rows);
  for (std::size_t i = 0; i < mat.rows.size(); ++i) {
    matrix.docs.emplace_back(std::move(mat.rows[i]), mat.n_cols);
    matrix.doc_ids.push_back(std::to_string(i));
  }
  return matrix;
}

/// Loads a matrix with its .rclass labels; label count must match the row
/// count.
inline DocTermMatrix load_cluto(const std::filesystem::path& mat_path,
                                const std::filesystem::path& rclass_path) {
  DocTermMatrix matrix = load_cluto(mat_path);
  matrix.labels = read_rclass(rclass_path);
  if (matrix.labels.size() != matrix.n_docs) {
    throw std::runtime_error(
        "load_cluto: " + std::to_string(matrix.labels.size()) +
        " labels in " + rclass_path.string() + " for " +
        std::to_string(matrix.n_docs) + " matrix rows");
  }
  return matrix;
}

/// Writes the matrix in the same dialect the loader reads. Values use the
/// shortest round-trip decimal form, so write/load is lossless.
inline void write_cluto_mat(const DocTermMatrix& matrix,
                            const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("write_cluto_mat: cannot open " + path.string());
  }
  std::size_t nnz = 0;
  for (const auto& doc : matrix.docs) {
    nnz += doc.nnz();
  }
  out << matrix.n_docs << ' ' << matrix.n_terms << ' ' << nnz << '\n';
  for (const auto& doc : matrix.docs) {
    bool first = true;
    for (const auto& e : doc.entries()) {
      if (!first) {
        out << ' ';
      }
      out << (e.term + 1) << ' ' << format_shortest(e.weight);
      first = false;
    }
    out << '\n';
  }
  if (!out) {
    throw std::runtime_error("write_cluto_mat: write failed for " +
                             path.string());
  }
}

inline void write_rclass(std::span<const std::string> labels,
                         const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("write_rclass: cannot open " + path.string());
  }
  for (const auto& label : labels) {
    out << label << '\n';
  }
  if (!out) {
    throw std::runtime_error("write_rclass: write failed for " +
                             path.string());
  }
}

/**
 * Shape of a generated labeled corpus.
 *
 * Each class owns a private block of `vocab_per_class` terms; one shared
 * block of `shared_vocab` terms is common to all classes. Every document
 * draws `doc_length` terms, each independently taken from the shared block
 * with probability `noise_fraction` and from its class's private block
 * otherwise. Defaults mirror a 15-class, 100-documents-per-class corpus.
 */
struct SyntheticSpec {
  std::size_t n_classes = 15;
  std::size_t docs_per_class = 100;
  std::size_t vocab_per_class = 40;
  std::size_t shared_vocab = 200;
  std::size_t doc_length = 80;
  double noise_fraction = 0.3;
  std::uint64_t rng_seed = 1;
};

/// Deterministic labeled corpus from a SyntheticSpec. With noise_fraction 0
/// documents of different classes share no terms.
inline DocTermMatrix generate_synthetic(const SyntheticSpec& spec) {
  if (spec.n_classes < 1 || spec.docs_per_class < 1 ||
      spec.vocab_per_class < 1 || spec.shared_vocab < 1 ||
      spec.doc_length < 1) {
    throw std::invalid_argument("generate_synthetic: all counts must be >= 1");
  }
  if (spec.noise_fraction < 0.0 || spec.noise_fraction >= 1.0) {
    throw std::invalid_argument(
        "generate_synthetic: noise_fraction must lie in [0, 1)");
  }
  const std::size_t shared_base = spec.n_classes * spec.vocab_per_class;
  const std::size_t m = shared_base + spec.shared_vocab;

  DocTermMatrix matrix;
  matrix.n_terms = m;
  matrix.n_docs = spec.n_classes * spec.docs_per_class;
  Rng rng(spec.rng_seed);
  for (std::size_t c = 0; c < spec.n_classes; ++c) {
    const std::string label = "class" + std::to_string(c);
    const std::size_t private_base = c * spec.vocab_per_class;
    for (std::size_t d = 0; d < spec.docs_per_class; ++d) {
      std::map<std::uint32_t, double> counts;
      for (std::size_t t = 0; t < spec.doc_length; ++t) {
        const bool from_shared = rng.uniform01() < spec.noise_fraction;
        const std::size_t term =
            from_shared
                ? shared_base +
                      static_cast<std::size_t>(rng.uniform_below(spec.shared_vocab))
                : private_base + static_cast<std::size_t>(
                                     rng.uniform_below(spec.vocab_per_class));
        counts[static_cast<std::uint32_t>(term)] += 1.0;
      }
      std::vector<TermWeight> entries;
      entries.reserve(counts.size());
      for (const auto& [term, count] : counts) {
        entries.push_back({term, count});
      }
      matrix.docs.emplace_back(std::move(entries), m);
      matrix.doc_ids.push_back(label + "_d" + std::to_string(d));
      matrix.labels.push_back(label);
    }
  }
  return matrix;
}

}  // namespace textclust
