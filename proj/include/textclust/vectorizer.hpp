#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "textclust/sparse_vector.hpp"

namespace textclust {

/**
 * A corpus as raw term-frequency vectors plus its term dictionary.
 *
 * `terms` maps term id to term string and is empty for corpora loaded from
 * matrix files (those carry no dictionary). `labels` is either empty or has
 * one class label per document. Immutable after construction.
 */
struct DocTermMatrix {
  std::vector<SparseVector> docs;
  std::vector<std::string> terms;
  std::vector<std::string> doc_ids;
  std::vector<std::string> labels;
  std::size_t n_docs = 0;
  std::size_t n_terms = 0;
};

/// Per-term document-frequency counts fitted on one corpus.
struct TfIdfModel {
  std::vector<std::size_t> doc_freq;
  std::size_t n_docs = 0;
};

/// A document awaiting vectorization.
struct RawDocument {
  std::string id;
  std::string text;
};

/**
 * Splits text into lowercased alphabetic tokens of length >= 2.
 *
 * Any byte outside [A-Za-z] separates tokens, so punctuation, digits and
 * non-ASCII bytes never appear inside a token. Deterministic and
 * locale-independent.
 */
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (current.size() >= 2) {
      tokens.push_back(current);
    }
    current.clear();
  };
  for (const char c : text) {
    if (c >= 'a' && c <= 'z') {
      current.push_back(c);
    } else if (c >= 'A' && c <= 'Z') {
      current.push_back(static_cast<char>(c - 'A' + 'a'));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

/**
 * Builds the raw term-frequency matrix of a corpus.
 *
 * Term ids are assigned in order of first appearance across the corpus;
 * weights are term counts. Tokens found in `stopwords` are skipped before
 * counting. Throws on duplicate document ids or on a label list whose length
 * does not match the corpus.
 */
inline DocTermMatrix build_matrix(
    std::span<const RawDocument> docs,
    std::span<const std::string> labels = {},
    const std::unordered_set<std::string>& stopwords = {}) {
  if (!labels.empty() && labels.size() != docs.size()) {
    throw std::invalid_argument("build_matrix: label count " +
                                std::to_string(labels.size()) +
                                " does not match document count " +
                                std::to_string(docs.size()));
  }
  DocTermMatrix matrix;
  std::unordered_map<std::string, std::uint32_t> vocab;
  std::unordered_set<std::string> seen_ids;

  // First pass: the dictionary, in first-appearance order.
  std::vector<std::vector<std::string>> tokenized(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    if (!seen_ids.insert(docs[d].id).second) {
      throw std::invalid_argument("build_matrix: duplicate doc id '" +
                                  docs[d].id + "'");
    }
    tokenized[d] = tokenize(docs[d].text);
    for (const auto& tok : tokenized[d]) {
      if (stopwords.contains(tok)) {
        continue;
      }
      if (vocab.emplace(tok, static_cast<std::uint32_t>(matrix.terms.size()))
              .second) {
        matrix.terms.push_back(tok);
      }
    }
  }

  const std::size_t m = matrix.terms.size();
  for (std::size_t d = 0; d < docs.size(); ++d) {
    std::map<std::uint32_t, double> counts;
    for (const auto& tok : tokenized[d]) {
      if (stopwords.contains(tok)) {
        continue;
      }
      counts[vocab.at(tok)] += 1.0;
    }
    std::vector<TermWeight> entries;
    entries.reserve(counts.size());
    for (const auto& [term, count] : counts) {
      entries.push_back({term, count});
    }
    matrix.docs.emplace_back(std::move(entries), m);
    matrix.doc_ids.push_back(docs[d].id);
  }
  matrix.labels.assign(labels.begin(), labels.end());
  matrix.n_docs = docs.size();
  matrix.n_terms = m;
  return matrix;
}

/// Counts, per term, the number of documents containing it. Throws on an
/// empty corpus.
inline TfIdfModel fit_idf(const DocTermMatrix& matrix) {
  if (matrix.n_docs == 0) {
    throw std::invalid_argument("fit_idf: empty corpus");
  }
  TfIdfModel model;
  model.n_docs = matrix.n_docs;
  model.doc_freq.assign(matrix.n_terms, 0);
  for (const auto& doc : matrix.docs) {
    for (const auto& e : doc.entries()) {
      ++model.doc_freq[e.term];
    }
  }
  return model;
}

/**
 * Result of vectorizing a corpus. `vectors[i]` is the unit vector of
 * original document `kept[i]`; documents whose tf-idf (or raw) weight vector
 * has zero norm are listed in `rejected` and excluded. The caller decides
 * whether rejection is fatal.
 */
struct TransformResult {
  std::vector<SparseVector> vectors;
  std::vector<std::size_t> kept;
  std::vector<std::size_t> rejected;
};

/**
 * Applies tf * ln(N/df) weighting and unit normalization.
 *
 * Terms occurring in every document have idf exactly zero and drop out of
 * the sparse representation. A document left with no surviving terms is
 * reported in `rejected`.
 */
inline TransformResult transform(const DocTermMatrix& matrix,
                                 const TfIdfModel& model) {
  if (model.doc_freq.size() != matrix.n_terms) {
    throw std::invalid_argument("transform: model term count " +
                                std::to_string(model.doc_freq.size()) +
                                " does not match matrix term count " +
                                std::to_string(matrix.n_terms));
  }
  TransformResult result;
  const double n = static_cast<double>(model.n_docs);
  for (std::size_t d = 0; d < matrix.docs.size(); ++d) {
    std::vector<TermWeight> weighted;
    for (const auto& e : matrix.docs[d].entries()) {
      const std::size_t df = model.doc_freq[e.term];
      if (df == 0 || df == model.n_docs) {
        continue;  // idf == 0; never-seen terms cannot occur in this corpus
      }
      const double w = e.weight * std::log(n / static_cast<double>(df));
      if (w != 0.0) {
        weighted.push_back({e.term, w});
      }
    }
    SparseVector v(std::move(weighted), matrix.n_terms);
    if (v.norm() == 0.0) {
      result.rejected.push_back(d);
      continue;
    }
    result.vectors.push_back(normalize(v));
    result.kept.push_back(d);
  }
  return result;
}

/// Unit-normalizes raw frequency vectors without tf-idf re-weighting.
/// Documents with no terms at all are rejected.
inline TransformResult normalize_only(const DocTermMatrix& matrix) {
  TransformResult result;
  for (std::size_t d = 0; d < matrix.docs.size(); ++d) {
    if (matrix.docs[d].norm() == 0.0) {
      result.rejected.push_back(d);
      continue;
    }
    result.vectors.push_back(normalize(matrix.docs[d]));
    result.kept.push_back(d);
  }
  return result;
}

/// Stopword file: one word per line, tokenized with the same rule as
/// document text so the file's case and punctuation do not matter.
inline std::unordered_set<std::string> load_stopwords(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("load_stopwords: cannot open " + path.string());
  }
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    for (auto& tok : tokenize(line)) {
      words.insert(std::move(tok));
    }
  }
  return words;
}

/// A plain-text corpus read from disk, labels taken from directory names.
struct TextCorpus {
  std::vector<RawDocument> docs;
  std::vector<std::string> labels;
};

/**
 * Reads a corpus laid out as <root>/<class_label>/<doc>.txt.
 *
 * Directories and files are visited in lexicographic order so document ids
 * and term ids are stable across runs. Files are read as raw bytes; the
 * tokenizer treats anything outside ASCII letters as a separator.
 */
inline TextCorpus read_corpus_dir(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root)) {
    throw std::runtime_error("read_corpus_dir: not a directory: " +
                             root.string());
  }
  std::vector<fs::path> class_dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) {
      class_dirs.push_back(entry.path());
    }
  }
  std::sort(class_dirs.begin(), class_dirs.end());

  TextCorpus corpus;
  for (const auto& dir : class_dirs) {
    const std::string label = dir.filename().string();
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      std::ifstream in(file, std::ios::binary);
      if (!in) {
        throw std::runtime_error("read_corpus_dir: cannot open " +
                                 file.string());
      }
      std::ostringstream text;
      text << in.rdbuf();
      corpus.docs.push_back(
          {label + "/" + file.stem().string(), std::move(text).str()});
      corpus.labels.push_back(label);
    }
  }
  return corpus;
}

}  // namespace textclust
