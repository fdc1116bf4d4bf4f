#include <algorithm>
#include <map>
#include <queue>
#include <random>

#include "doctest.h"
#include "loopfact/cartan.hpp"
#include "loopfact/errors.hpp"

using namespace loopfact;

namespace {

// Minimal word length of every element within `depth` letters, by BFS on
// the Cayley graph.
std::map<IntMat, int> bfs_lengths(const CartanData& d, int depth) {
  std::map<IntMat, int> dist;
  std::queue<FiniteWeylElement> q;
  const auto id = FiniteWeylElement::identity(d);
  dist[id.matrix()] = 0;
  q.push(id);
  while (!q.empty()) {
    const FiniteWeylElement w = q.front();
    q.pop();
    const int dw = dist[w.matrix()];
    if (dw == depth) continue;
    for (int i = 1; i <= d.rank; ++i) {
      const FiniteWeylElement v = FiniteWeylElement::simple_reflection(d, i) * w;
      if (!dist.count(v.matrix())) {
        dist[v.matrix()] = dw + 1;
        q.push(v);
      }
    }
  }
  return dist;
}

}  // namespace

TEST_CASE("rank one data") {
  const auto d = build_type_a(1);
  CHECK(d.highest_root == IntVec{1});
  CHECK(d.marks == IntVec{1});
  CHECK(d.comarks == IntVec{1});
  CHECK(d.positive_roots.size() == 1);
}

TEST_CASE("rank two positive roots have heights 1, 1, 2") {
  const auto d = build_type_a(2);
  CHECK(d.highest_root == IntVec{1, 1});
  std::vector<long long> h;
  for (const auto& r : d.positive_roots) h.push_back(height(r));
  std::sort(h.begin(), h.end());
  CHECK(h == std::vector<long long>{1, 1, 2});
}

TEST_CASE("rank three root count and height sum") {
  const auto d = build_type_a(3);
  CHECK(d.positive_roots.size() == 6);
  long long s = 0;
  for (const auto& r : d.positive_roots) s += height(r);
  CHECK(s == 10);
}

TEST_CASE("rank zero is rejected") {
  CHECK_THROWS_AS(build_type_a(0), InvalidArgument);
}

TEST_CASE("highest root has square length 2 and marks are 1") {
  for (int r = 1; r <= 5; ++r) {
    const auto d = build_type_a(r);
    CHECK(d.root_form(d.highest_root, d.highest_root) == 2);
    for (int i = 0; i < r; ++i) {
      CHECK(d.marks[i] == 1);
      CHECK(d.comarks[i] == 1);
    }
  }
}

TEST_CASE("duality between roots, coroots, weights and coweights") {
  for (int r = 1; r <= 4; ++r) {
    const auto d = build_type_a(r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        CHECK(d.pair(d.simple_roots[i], d.simple_coroots[j]) ==
              d.cartan_matrix[j][i]);
        CHECK(d.pair(d.simple_roots[i], d.fundamental_coweights[j]) ==
              (i == j ? 1 : 0));
        // Lambda_i(h_j) through the root-basis coefficients.
        Rational s = 0;
        for (int k = 0; k < r; ++k)
          s += d.fundamental_weights[i][k] * d.simple_coroots[j][k];
        CHECK(s == (i == j ? 1 : 0));
      }
  }
}

TEST_CASE("h_delta evaluates roots to their heights") {
  for (int r = 1; r <= 4; ++r) {
    const auto d = build_type_a(r);
    const RatVec h = h_delta(d);
    for (const auto& a : d.positive_roots) CHECK(d.pair(a, h) == height(a));
  }
  const auto d1 = build_type_a(1);
  CHECK(d1.pair(d1.highest_root, h_delta(d1)) == 1);
  const auto d2 = build_type_a(2);
  CHECK(d2.pair(d2.highest_root, h_delta(d2)) == 2);
  const auto d3 = build_type_a(3);
  std::vector<long long> v;
  for (const auto& a : d3.positive_roots)
    v.push_back(static_cast<long long>(d3.pair(a, h_delta(d3))));
  std::sort(v.begin(), v.end());
  CHECK(v == std::vector<long long>{1, 1, 1, 2, 2, 3});
}

TEST_CASE("h_delta lies in the coroot lattice exactly for even rank") {
  CHECK_FALSE(h_delta_in_coroot_lattice(build_type_a(1)));
  CHECK(h_delta_in_coroot_lattice(build_type_a(2)));
  CHECK_FALSE(h_delta_in_coroot_lattice(build_type_a(3)));
  CHECK(h_delta_in_coroot_lattice(build_type_a(4)));
}

TEST_CASE("longest element words") {
  CHECK(longest_element_word(build_type_a(1)) == std::vector<int>{1});
  CHECK(longest_element_word(build_type_a(2)) == std::vector<int>{1, 2, 1});
  for (int r = 1; r <= 4; ++r) {
    const auto d = build_type_a(r);
    const auto w = longest_element_word(d);
    CHECK(w.size() == d.positive_roots.size());
    const auto e = FiniteWeylElement::from_word(d, w);
    CHECK(e.length(d) == static_cast<int>(w.size()));
    for (const auto& a : d.positive_roots)
      CHECK(is_negative_root(e.act_on_root(a)));
  }
}

TEST_CASE("inversion count equals BFS word length") {
  std::mt19937_64 rng(11);
  for (int r = 1; r <= 3; ++r) {
    const auto d = build_type_a(r);
    const auto dist = bfs_lengths(d, 8);
    std::uniform_int_distribution<int> pick(0,
                                            static_cast<int>(d.positive_roots.size()) - 1);
    std::uniform_int_distribution<int> len(0, 8);
    for (int trial = 0; trial < 40; ++trial) {
      auto w = FiniteWeylElement::identity(d);
      const int m = len(rng);
      for (int k = 0; k < m; ++k)
        w = FiniteWeylElement::reflection(d, d.positive_roots[pick(rng)]) * w;
      REQUIRE(dist.count(w.matrix()));
      CHECK(w.length(d) == dist.at(w.matrix()));
    }
  }
}

TEST_CASE("simple reflections preserve the form") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> u(-9, 9);
  for (int r = 1; r <= 4; ++r) {
    const auto d = build_type_a(r);
    for (int trial = 0; trial < 10; ++trial) {
      RatVec x(r), y(r);
      for (int i = 0; i < r; ++i) {
        x[i] = Rational(u(rng), 7);
        y[i] = Rational(u(rng), 5);
      }
      for (int i = 1; i <= r; ++i) {
        const auto s = FiniteWeylElement::simple_reflection(d, i);
        CHECK(d.coweight_form(s.act(x), s.act(y)) == d.coweight_form(x, y));
      }
    }
  }
}
