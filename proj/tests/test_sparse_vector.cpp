#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "textclust/sparse_vector.hpp"

using namespace textclust;
using test_support::random_unit_vector;
using Catch::Matchers::WithinAbs;

namespace {

SparseVector make(std::vector<TermWeight> entries, std::size_t dim) {
  return SparseVector(std::move(entries), dim);
}

}  // namespace

TEST_CASE("sparse vector construction enforces its invariants") {
  CHECK_NOTHROW(make({{0, 1.0}, {3, 2.0}}, 4));
  CHECK_NOTHROW(make({}, 0));
  CHECK_THROWS_AS(make({{0, 1.0}, {0, 2.0}}, 2), std::invalid_argument);
  CHECK_THROWS_AS(make({{2, 1.0}, {1, 2.0}}, 3), std::invalid_argument);
  CHECK_THROWS_AS(make({{5, 1.0}}, 5), std::invalid_argument);
  CHECK_THROWS_AS(make({{1, 0.0}}, 2), std::invalid_argument);
}

TEST_CASE("dot products over sparse supports") {
  const auto a = make({{0, 1.0}}, 2);
  const auto b = make({{1, 1.0}}, 2);
  CHECK(dot(a, b) == 0.0);

  const auto u = make({{0, 0.6}, {1, 0.8}}, 2);
  CHECK_THAT(dot(u, u), WithinAbs(1.0, 1e-12));

  const auto v = make({{0, 0.8}, {1, 0.6}}, 2);
  CHECK_THAT(dot(u, v), WithinAbs(0.96, 1e-12));
  CHECK(dot(u, v) == dot(v, u));

  CHECK_THROWS_AS(dot(a, make({{0, 1.0}}, 3)), std::invalid_argument);
}

TEST_CASE("cosine similarity") {
  CHECK_THAT(cosine(make({{0, 2.0}}, 1), make({{0, 5.0}}, 1)),
             WithinAbs(1.0, 1e-12));
  CHECK(cosine(make({{0, 1.0}}, 2), make({{1, 1.0}}, 2)) == 0.0);
  CHECK_THAT(cosine(make({{0, 3.0}, {1, 4.0}}, 2), make({{0, 4.0}, {1, 3.0}}, 2)),
             WithinAbs(0.96, 1e-12));
  CHECK_THROWS_AS(cosine(make({}, 2), make({{0, 1.0}}, 2)),
                  std::invalid_argument);
}

TEST_CASE("euclidean distance") {
  const auto u = make({{0, 0.6}, {1, 0.8}}, 2);
  CHECK(euclidean(u, u) == 0.0);

  const auto e0 = make({{0, 1.0}}, 2);
  const auto e1 = make({{1, 1.0}}, 2);
  CHECK_THAT(euclidean(e0, e1), WithinAbs(std::sqrt(2.0), 1e-12));

  // Direct subtraction on (0.6,0.8) vs (0.8,0.6): sqrt(0.04 + 0.04).
  const auto v = make({{0, 0.8}, {1, 0.6}}, 2);
  CHECK_THAT(euclidean(u, v), WithinAbs(0.282842712474619, 1e-12));
  CHECK_THROWS_AS(euclidean(e0, make({{0, 1.0}}, 3)), std::invalid_argument);
}

TEST_CASE("normalize") {
  const auto n = normalize(make({{0, 3.0}, {1, 4.0}}, 2));
  REQUIRE(n.entries().size() == 2);
  CHECK_THAT(n.entries()[0].weight, WithinAbs(0.6, 1e-12));
  CHECK_THAT(n.entries()[1].weight, WithinAbs(0.8, 1e-12));

  const auto single = normalize(make({{2, 7.0}}, 3));
  REQUIRE(single.entries().size() == 1);
  CHECK(single.entries()[0].term == 2);
  CHECK_THAT(single.entries()[0].weight, WithinAbs(1.0, 1e-12));

  CHECK_THROWS_AS(normalize(make({}, 3)), std::invalid_argument);
}

TEST_CASE("composite and centroid") {
  const auto v = make({{0, 0.6}, {1, 0.8}}, 2);
  const std::vector<SparseVector> singleton{v};
  CHECK(composite(singleton) == v);
  CHECK(centroid(singleton) == v);

  const std::vector<SparseVector> orthogonal{make({{0, 1.0}}, 2),
                                             make({{1, 1.0}}, 2)};
  const auto sum = composite(orthogonal);
  REQUIRE(sum.entries().size() == 2);
  CHECK(sum.entries()[0].weight == 1.0);
  CHECK(sum.entries()[1].weight == 1.0);

  const auto mid = centroid(orthogonal);
  CHECK_THAT(mid.entries()[0].weight, WithinAbs(0.5, 1e-12));
  CHECK_THAT(mid.entries()[1].weight, WithinAbs(0.5, 1e-12));
  CHECK_THAT(mid.norm(), WithinAbs(std::sqrt(2.0) / 2.0, 1e-12));

  const std::vector<SparseVector> triple{v, v, v};
  CHECK_THAT(composite(triple).norm(), WithinAbs(3.0, 1e-12));
  CHECK(centroid(triple) == centroid(std::vector<SparseVector>{v}));

  CHECK_THROWS_AS(composite(std::vector<SparseVector>{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(centroid(std::vector<SparseVector>{}),
                  std::invalid_argument);
  const std::vector<SparseVector> mismatched{make({{0, 1.0}}, 2),
                                             make({{0, 1.0}}, 3)};
  CHECK_THROWS_AS(composite(mismatched), std::invalid_argument);
}

TEST_CASE("unit-vector identity: dis^2 == 2 - 2 dot") {
  Rng rng(20240601);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_unit_vector(rng, 12, 8);
    const auto b = random_unit_vector(rng, 12, 8);
    const double dis = euclidean(a, b);
    CHECK_THAT(dis * dis, WithinAbs(2.0 - 2.0 * dot(a, b), 1e-9));
  }
}

TEST_CASE("cosine is scale invariant") {
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_unit_vector(rng, 10, 6);
    const auto b = random_unit_vector(rng, 10, 6);
    const double alpha = 0.25 + 3.0 * rng.uniform01();
    const double beta = 0.25 + 3.0 * rng.uniform01();
    auto scale = [](const SparseVector& v, double s) {
      auto entries = v.entries();
      for (auto& e : entries) {
        e.weight *= s;
      }
      return SparseVector(std::move(entries), v.dim());
    };
    CHECK_THAT(cosine(scale(a, alpha), scale(b, beta)),
               WithinAbs(cosine(a, b), 1e-9));
  }
}

TEST_CASE("dot distributes over composite") {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = random_unit_vector(rng, 15, 10);
    std::vector<SparseVector> vs;
    const std::size_t count = 2 + rng.uniform_below(6);
    for (std::size_t i = 0; i < count; ++i) {
      vs.push_back(random_unit_vector(rng, 15, 10));
    }
    double sum = 0.0;
    for (const auto& v : vs) {
      sum += dot(x, v);
    }
    CHECK_THAT(dot(x, composite(vs)),
               WithinAbs(sum, 1e-9 * static_cast<double>(vs.size())));
  }
}

TEST_CASE("normalize is idempotent") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto v = random_unit_vector(rng, 9, 9);
    const auto once = normalize(v);
    const auto twice = normalize(once);
    REQUIRE(once.entries().size() == twice.entries().size());
    for (std::size_t i = 0; i < once.entries().size(); ++i) {
      CHECK_THAT(twice.entries()[i].weight,
                 WithinAbs(once.entries()[i].weight, 1e-9));
    }
    CHECK_THAT(once.norm(), WithinAbs(1.0, 1e-9));
  }
}

TEST_CASE("dense accumulator round-trips, dropping exact zeros only") {
  DenseAccumulator acc(5);
  const auto a = SparseVector({{0, 1.5}, {2, 2.0}, {4, 1.0}}, 5);
  const auto b = SparseVector({{2, 2.0}, {3, 0.5}}, 5);
  acc.add(a);
  acc.add(b);
  acc.subtract(b);
  acc.subtract(SparseVector({{4, 1.0}}, 5));
  // Coordinates 2 and 3 cancelled exactly; 4 cancelled exactly too.
  const auto sparse = acc.to_sparse();
  REQUIRE(sparse.entries().size() == 2);
  CHECK(sparse.entries()[0] == TermWeight{0, 1.5});
  CHECK(sparse.entries()[1] == TermWeight{2, 2.0});

  CHECK_THAT(acc.dot_sparse(a), WithinAbs(1.5 * 1.5 + 2.0 * 2.0, 1e-12));
  CHECK_THAT(acc.norm(), WithinAbs(std::sqrt(1.5 * 1.5 + 4.0), 1e-12));
  CHECK_THROWS_AS(acc.add(SparseVector({{0, 1.0}}, 4)), std::invalid_argument);

  acc.clear();
  CHECK(acc.to_sparse().entries().empty());
}

TEST_CASE("sparse round-trip through a dense accumulator") {
  Rng rng(5150);
  for (int trial = 0; trial < 50; ++trial) {
    const auto v = random_unit_vector(rng, 20, 12);
    DenseAccumulator acc(20);
    acc.add(v);
    CHECK(acc.to_sparse() == v);
  }
}
