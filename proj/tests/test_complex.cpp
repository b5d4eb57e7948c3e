#include <algorithm>

#include "doctest.h"

#include "diagalg/complex.hpp"
#include "diagalg/error.hpp"
#include "diagalg/homcompute.hpp"

using namespace diagalg;

namespace {

MatrixPtr dense(const std::vector<std::vector<std::int64_t>>& a) {
  return std::make_shared<SparseMatrix>(SparseMatrix::from_dense(a));
}

}  // namespace

TEST_CASE("multiplication by two") {
  const ChainComplex c(RingSpec::integers(), 0, {1, 1}, {dense({{2}})});
  CHECK(c.homology(0) == HomologyGroup{0, {2}});
  CHECK(c.homology(1).is_zero());
  CHECK(c.homology(0).to_string(RingSpec::integers()) == "Z/2");
  const auto dual = c.dualize();
  // D_p = C_{-p}^*, so H^q(C) = H_{-q}(D).
  CHECK(dual.lo() == -1);
  CHECK(dual.homology(0).is_zero());
  CHECK(dual.homology(-1) == HomologyGroup{0, {2}});
  CHECK(c.cohomology_range(0, 1) == std::vector<HomologyGroup>{dual.homology(0), dual.homology(-1)});
  const auto f2 = c.over(RingSpec::modulo(2));
  CHECK(f2.homology(0) == HomologyGroup{1, {}});
  CHECK(f2.homology(1) == HomologyGroup{1, {}});
  CHECK(c.over(RingSpec::modulo(3)).homology(0).is_zero());
  CHECK(c.over(RingSpec::rationals()).homology_range(0, 1) == std::vector<HomologyGroup>(2));
}

TEST_CASE("group formatting") {
  const auto Z = RingSpec::integers();
  CHECK(HomologyGroup{}.to_string(Z) == "0");
  CHECK(HomologyGroup{1, {}}.to_string(Z) == "Z");
  CHECK(HomologyGroup{0, {2, 2, 2}}.to_string(Z) == "Z/2 + Z/2 + Z/2");
  CHECK(HomologyGroup{1, {2}}.to_string(Z) == "Z + Z/2");
  CHECK(HomologyGroup{2, {}}.to_string(RingSpec::modulo(3)) == "(Z/3)^2");
}

TEST_CASE("exactness") {
  CHECK(ChainComplex().check_exactness(0, 0).exact);
  const ChainComplex zero(RingSpec::integers(), 0, {1, 1}, {dense({{0}})});
  const auto r = zero.check_exactness(0, 1);
  CHECK_FALSE(r.exact);
  REQUIRE(r.first_failing_degree.has_value());
  CHECK(*r.first_failing_degree == 0);
  const ChainComplex iso(RingSpec::integers(), -1, {1, 1}, {dense({{1}})});
  CHECK(iso.check_exactness(-1, 0).exact);
}

TEST_CASE("validation rejects d^2 != 0 and bad shapes") {
  CHECK_THROWS_AS(ChainComplex(RingSpec::integers(), 0, {1, 1, 1}, {dense({{1}}), dense({{1}})}), ConsistencyError);
  CHECK_NOTHROW(ChainComplex(RingSpec::modulo(2), 0, {1, 1, 1}, {dense({{1}}), dense({{2}})}));
  CHECK_THROWS_AS(ChainComplex(RingSpec::integers(), 0, {2, 1}, {dense({{1}})}), Error);
  CHECK_THROWS_AS(ChainComplex(RingSpec::modulo(4), 0, {1, 1}, {dense({{2}})}).homology(0), UnsupportedRing);
}

TEST_CASE("Euler characteristic of a bar complex over a field") {
  const auto ctx = AlgebraContext::create(2, FamilySpec::tanabe(2), RingSpec::modulo(3), 1L);
  const auto c = bar_complex(*ctx, 4).complex;
  const auto h = c.homology_range(c.lo(), c.hi());
  Index chi_c = 0, chi_h = 0;
  for (int q = c.lo(); q <= c.hi(); ++q) {
    const Index s = q % 2 ? -1 : 1;
    chi_c += s * c.dim(q);
    chi_h += s * h[q - c.lo()].free_rank;
  }
  CHECK(chi_c == chi_h);
}

TEST_CASE("homology and cohomology from one reduction") {
  const auto ctx = AlgebraContext::create(2, FamilySpec::uniform_block(), RingSpec::integers(), 0L);
  const auto c = bar_complex(*ctx, 4).complex;
  const auto [h, co] = c.both_ranges(0, 3);
  CHECK(h == c.homology_range(0, 3));
  CHECK(co == c.cohomology_range(0, 3));
  auto dual = c.dualize().homology_range(-3, 0);
  std::reverse(dual.begin(), dual.end());
  CHECK(co == dual);
}
