#include <random>
#include <vector>

#include "doctest.h"

#include "diagalg/algebra.hpp"
#include "diagalg/diagram.hpp"
#include "diagalg/error.hpp"

using namespace diagalg;

namespace {

// Graph search over the stacked 3n vertices: d1's left column, the shared
// middle row, d2's right column.
CompositionResult naive_compose(const Diagram& d1, const Diagram& d2) {
  const int n = d1.n();
  std::vector<std::vector<int>> adj(3 * n);
  auto link = [&](const Diagram& d, int shift) {
    const auto lab = d.labels();
    for (int a = 0; a < 2 * n; ++a)
      for (int b = 0; b < 2 * n; ++b)
        if (a != b && lab[a] == lab[b]) adj[a + shift].push_back(b + shift);
  };
  link(d1, 0);
  link(d2, n);
  std::vector<int> comp(3 * n, -1);
  int count = 0;
  for (int s = 0; s < 3 * n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s};
    comp[s] = count;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (comp[w] < 0) comp[w] = count, stack.push_back(w);
    }
    ++count;
  }
  std::vector<std::vector<Vertex>> blocks(count);
  for (int i = 0; i < n; ++i) {
    blocks[comp[i]].push_back({Column::Left, i + 1});
    blocks[comp[2 * n + i]].push_back({Column::Right, i + 1});
  }
  int alpha = 0;
  std::vector<std::vector<Vertex>> outer;
  for (auto& b : blocks) {
    if (b.empty()) ++alpha;
    else outer.push_back(b);
  }
  return {alpha, Diagram::from_blocks(n, outer)};
}

}  // namespace

TEST_CASE("worked composition example") {
  const auto d1 = Diagram::parse("4:{1 3 -2}|{2}|{4}|{-1}|{-3 -4}");
  const auto d2 = Diagram::parse("4:{2 -3}|{3 4}|{1}|{-1 -2}|{-4}");
  const auto r = compose(d1, d2);
  CHECK(r.alpha == 2);
  CHECK(r.diagram == Diagram::parse("4:{1 3 -3}|{-1 -2}|{2}|{4}|{-4}"));
  CHECK(r.diagram.to_string() == "4:{1 3 -3}|{2}|{4}|{-1 -2}|{-4}");
}

TEST_CASE("identity and singleton compositions") {
  const auto d = Diagram::parse("3:{1 2 -3}|{3}|{-1 -2}");
  const auto id = Diagram::identity(3);
  CHECK(compose(id, d).alpha == 0);
  CHECK(compose(id, d).diagram == d);
  CHECK(compose(d, id).diagram == d);
  CHECK(id.to_string() == "3:{1 -1}|{2 -2}|{3 -3}");
  const auto s = Diagram::parse("1:{1}|{-1}");
  CHECK(compose(s, s).alpha == 1);
  CHECK(compose(s, s).diagram == s);
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(Diagram::parse("2:{1 -1}|{2 -3}"), ParseError);
  CHECK_THROWS_AS(Diagram::parse("2:{1 -1}"), ParseError);
  CHECK_THROWS_AS(Diagram::parse("2:{1 -1}|{1 2 -2}"), ParseError);
  CHECK_THROWS_AS(Diagram::parse("2 {1 -1}"), ParseError);
  try {
    Diagram::parse("2:{1 -1}|{2 -3}");
  } catch (const ParseError& e) {
    CHECK(e.position() > 0);
  }
  CHECK_THROWS_AS(compose(Diagram::identity(2), Diagram::identity(3)), Error);
}

TEST_CASE("component statistics") {
  const auto d = Diagram::parse("4:{1 3 -2}|{2}|{4}|{-1}|{-3 -4}");
  const auto s = component_stats(d);
  REQUIRE(s.size() == 5);
  CHECK(s[0] == ComponentStats{2, 1, 1});
  CHECK(s[4] == ComponentStats{0, 2, 2});
  CHECK(component_stats(Diagram::identity(1)).front() == ComponentStats{1, 1, 0});
}

TEST_CASE("propagating count and permutations") {
  CHECK(propagating_count(Diagram::identity(2)) == 2);
  CHECK(propagating_count(Diagram::parse("2:{1 2 -1 -2}")) == 1);
  CHECK(propagating_count(Diagram::parse("2:{1 2}|{-1 -2}")) == 0);
  CHECK(is_permutation(Diagram::identity(3)));
  CHECK(as_permutation(Diagram::identity(3)) == std::vector<int>{1, 2, 3});
  const auto swap = Diagram::parse("2:{1 -2}|{2 -1}");
  CHECK(is_permutation(swap));
  CHECK(as_permutation(swap) == std::vector<int>{2, 1});
  CHECK_FALSE(is_permutation(Diagram::parse("2:{1 2 -1 -2}")));
  const std::vector<int> sigma{2, 3, 1};
  CHECK(as_permutation(permutation_diagram(sigma)) == sigma);
}

TEST_CASE("family predicates") {
  const auto cups = Diagram::parse("2:{1 2}|{-1 -2}");
  const auto singles = Diagram::parse("2:{1}|{2}|{-1}|{-2}");
  CHECK(family_predicate(cups, FamilySpec::tanabe(2)));
  CHECK_FALSE(family_predicate(singles, FamilySpec::tanabe(2)));
  CHECK(family_predicate(singles, FamilySpec::tanabe(1)));
  CHECK_FALSE(family_predicate(cups, FamilySpec::uniform_block()));
  CHECK_FALSE(family_predicate(cups, FamilySpec::totally_propagating()));
  CHECK(family_predicate(Diagram::parse("2:{1 2 -1 -2}"), FamilySpec::uniform_block()));
  CHECK(FamilySpec::parse("T:3") == FamilySpec::tanabe(3));
  CHECK(FamilySpec::parse("TPP").to_string() == "TPP");
  CHECK_THROWS_AS(FamilySpec::parse("X"), ParseError);
}

TEST_CASE("composition matches a graph-search oracle") {
  const auto p2 = enumerate_basis(2, FamilySpec::partition());
  for (const auto& a : p2)
    for (const auto& b : p2) {
      const auto fast = compose(a, b);
      const auto slow = naive_compose(a, b);
      CHECK(fast.alpha == slow.alpha);
      CHECK(fast.diagram == slow.diagram);
    }
  const auto p3 = enumerate_basis(3, FamilySpec::partition());
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, p3.size() - 1);
  for (int t = 0; t < 2000; ++t) {
    const auto& a = p3[pick(rng)];
    const auto& b = p3[pick(rng)];
    const auto fast = compose(a, b);
    const auto slow = naive_compose(a, b);
    CHECK(fast.alpha == slow.alpha);
    CHECK(fast.diagram == slow.diagram);
  }
}

TEST_CASE("string form round-trips") {
  for (const auto& d : enumerate_basis(3, FamilySpec::partition())) CHECK(Diagram::parse(d.to_string()) == d);
}
