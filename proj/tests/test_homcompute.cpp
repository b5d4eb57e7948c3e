#include <numeric>

#include "doctest.h"

#include "diagalg/error.hpp"
#include "diagalg/homcompute.hpp"

using namespace diagalg;

namespace {

HomologyGroup Zf() { return {1, {}}; }
HomologyGroup Zt(long t) { return {0, {mpz_class(t)}}; }
HomologyGroup zero() { return {}; }

std::vector<Index> free_ranks(const std::vector<HomologyGroup>& g) {
  std::vector<Index> r;
  for (const auto& x : g) r.push_back(x.free_rank);
  return r;
}

// Group algebra of S_n built from permutation diagrams.
MultiplicationTable symmetric_group_table(int n) {
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 1);
  std::vector<Diagram> elems;
  do elems.push_back(permutation_diagram(sigma));
  while (std::next_permutation(sigma.begin(), sigma.end()));
  MultiplicationTable t;
  t.dim = elems.size();
  t.identity = 0;
  t.augmentation.assign(t.dim, 1);
  for (const auto& a : elems)
    for (const auto& b : elems) {
      const auto c = compose(a, b);
      const auto k = std::find(elems.begin(), elems.end(), c.diagram) - elems.begin();
      t.products.push_back({1, static_cast<std::uint32_t>(k)});
    }
  return t;
}

}  // namespace

TEST_CASE("bar complex ranks") {
  const auto ctx = AlgebraContext::create(2, FamilySpec::partition(), RingSpec::integers(), 1L);
  const auto bar = bar_complex(*ctx, 3);
  CHECK(bar.reduced_dim == 14);
  CHECK(bar.complex.dims() == std::vector<Index>{1, 14, 196, 2744});
  CHECK_THROWS_AS(bar_complex(*ctx, 8), ResourceGuard);
  BarOptions small;
  small.guard = 100;
  CHECK_THROWS_AS(bar_complex(*ctx, 3, small), ResourceGuard);
}

TEST_CASE("symmetric group oracle") {
  const auto Z = RingSpec::integers();
  CHECK(group_homology(3, Z, 5) == std::vector<HomologyGroup>{Zf(), Zt(2), zero(), Zt(6), zero()});
  CHECK(group_cohomology(3, Z, 5) == std::vector<HomologyGroup>{Zf(), zero(), Zt(2), zero(), Zt(6)});
  CHECK(group_homology(2, Z, 4) == std::vector<HomologyGroup>{Zf(), Zt(2), zero(), Zt(2)});
  CHECK(free_ranks(group_homology(2, RingSpec::modulo(2), 5)) == std::vector<Index>(5, 1));
  CHECK(free_ranks(group_homology(1, RingSpec::modulo(2), 3)) == std::vector<Index>{1, 0, 0});
  CHECK(free_ranks(group_homology(4, RingSpec::modulo(2), 3)) == std::vector<Index>{1, 1, 2});
  CHECK_THROWS_AS(group_homology(5, Z, 2), ResourceGuard);
}

TEST_CASE("bar complex of a group algebra matches the group oracle") {
  for (int n = 2; n <= 3; ++n) {
    const auto t = symmetric_group_table(n);
    const auto bar = bar_complex(t, 4);
    CHECK(bar.complex.homology_range(0, 3) == group_homology(n, RingSpec::integers(), 4));
    CHECK(bar.complex.cohomology_range(0, 3) == group_cohomology(n, RingSpec::integers(), 4));
  }
}

TEST_CASE("Tor and Ext over Z for small algebras") {
  const auto Z = RingSpec::integers();
  const auto t2 = AlgebraContext::create(2, FamilySpec::tanabe(2), Z, 0L);
  CHECK(compute_tor(*t2, 4) == std::vector<HomologyGroup>{Zf(), Zt(2), zero(), Zt(2)});
  const auto u2 = AlgebraContext::create(2, FamilySpec::uniform_block(), Z, 0L);
  const auto te = compute_tor_ext(*u2, 5);
  CHECK(te.tor == std::vector<HomologyGroup>{Zf(), Zt(2), zero(), Zt(2), zero()});
  CHECK(te.ext == std::vector<HomologyGroup>{Zf(), zero(), Zt(2), zero(), Zt(2)});
  const auto p2 = AlgebraContext::create(2, FamilySpec::partition(), RingSpec::modulo(3), 2L);
  CHECK(free_ranks(compute_ext(*p2, 3)) == std::vector<Index>{1, 0, 0});
}

TEST_CASE("field duality and truncation") {
  for (auto ring : {RingSpec::modulo(2), RingSpec::modulo(3), RingSpec::rationals()})
    for (const auto& f : {FamilySpec::tanabe(2), FamilySpec::uniform_block(), FamilySpec::partition()})
      for (long delta : {0L, 1L}) {
        const auto ctx = AlgebraContext::create(2, f, ring, delta);
        const auto te = compute_tor_ext(*ctx, 4);
        INFO(ctx->describe());
        CHECK(free_ranks(te.tor) == free_ranks(te.ext));
        const auto longer = compute_tor(*ctx, 5);
        CHECK(std::vector<HomologyGroup>(longer.begin(), longer.begin() + 4) == te.tor);
      }
}

TEST_CASE("rational parameters") {
  const auto Q = RingSpec::rationals();
  const auto ctx = AlgebraContext::create(2, FamilySpec::partition(), Q, Scalar::parse(Q, "1/2"));
  CHECK(free_ranks(compute_tor(*ctx, 3)) == std::vector<Index>{1, 0, 0});
}

TEST_CASE("comparison reports") {
  const auto Z = RingSpec::integers();
  const std::vector<HomologyGroup> ones(4, Zf());
  CHECK(compare(ones, ones, 3).match);
  const auto r = compare({Zf(), Zt(2)}, {Zf(), Zt(3)}, 1, Z);
  CHECK_FALSE(r.match);
  REQUIRE(r.mismatches.size() == 1);
  CHECK(r.mismatches[0].q == 1);
  CHECK(r.mismatches[0].left == "Z/2");
  CHECK_FALSE(compare({Zf()}, {Zf()}, 1).match);
  const auto F2 = RingSpec::modulo(2);
  const auto t3 = AlgebraContext::create(3, FamilySpec::tanabe(2), F2, 1L);
  CHECK(compare(compute_tor(*t3, 3), group_homology(3, F2, 3), 2, F2).match);
}

TEST_CASE("partition range is not exceeded silently") {
  const auto F2 = RingSpec::modulo(2);
  const auto p2 = AlgebraContext::create(2, FamilySpec::partition(), F2, 0L);
  const auto tor = compute_tor(*p2, 5);
  const auto grp = group_homology(2, F2, 5);
  CHECK(compare(tor, grp, 1, F2).match);
  const auto beyond = compare(tor, grp, 4, F2);
  CHECK_FALSE(beyond.match);
  CHECK(beyond.mismatches.front().q == 3);
  const auto p2inv = AlgebraContext::create(2, FamilySpec::partition(), F2, 1L);
  CHECK(compare(compute_tor(*p2inv, 5), grp, 4, F2).match);
}
