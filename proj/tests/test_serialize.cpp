#include "doctest.h"

#include "diagalg/error.hpp"
#include "diagalg/serialize.hpp"

using namespace diagalg;

TEST_CASE("homology groups round-trip") {
  HomologyGroup h{2, {2, 6}};
  h.torsion.push_back(mpz_class("123456789012345678901234567890"));
  const auto j = to_json(h);
  CHECK(j["torsion"][2].is_string());
  CHECK(homology_from_json(j) == h);
  CHECK(homology_from_json(Json::parse(j.dump())) == h);
  CHECK_THROWS_AS(homology_from_json(Json::parse(R"({"free_rank": 1})")), ParseError);
}

TEST_CASE("chain complexes round-trip through the exchange format") {
  const auto ctx = AlgebraContext::create(2, FamilySpec::uniform_block(), RingSpec::integers(), 0L);
  const auto c = bar_complex(*ctx, 3).complex;
  const auto j = to_json(c);
  CHECK(j["lo"] == 0);
  CHECK(j["differentials"].size() == 3);
  const auto back = complex_from_json(Json::parse(j.dump()));
  CHECK(back.dims() == c.dims());
  CHECK(back.homology_range(0, 3) == c.homology_range(0, 3));
  CHECK(to_json(back).dump() == j.dump());
  auto broken = j;
  broken["differentials"][0]["rows"] = 5;
  CHECK_THROWS_AS(complex_from_json(broken), Error);
}

TEST_CASE("cover and MV reports") {
  const auto ctx = AlgebraContext::create(2, FamilySpec::tanabe(2), RingSpec::integers(), 1L);
  const auto cover = CoverSpec::standard(ctx);
  const auto r = to_json(verify_cover(cover));
  CHECK(r["covers"] == true);
  CHECK(r["width"] == 1);
  CHECK(r["verified_height"] == 1);
  CHECK(r["failures"].empty());
  REQUIRE(r["intersections"].size() == 1);
  CHECK(r["intersections"][0]["S"] == "{L(1,2)}");
  CHECK(r["intersections"][0]["status"] == "idempotent");
  CHECK(r["intersections"][0]["generator_diagram"] == "2:{1 2 -1 -2}");
  const auto mv = to_json(build_mv(cover));
  CHECK(mv["lo"] == -1);
  CHECK(mv["dims"] == Json::array({2, 4, 2}));
  CHECK(mv["summands"][0]["dim"] == 2);
}

TEST_CASE("results records") {
  const auto ctx = AlgebraContext::create(2, FamilySpec::tanabe(2), RingSpec::modulo(2), 1L);
  const auto rec = results_record(*ctx, compute_tor(*ctx, 2));
  CHECK(rec["context"]["family"] == "T:2");
  CHECK(rec["context"]["dim"] == 4);
  CHECK(rec["ring"] == "Z/2");
  CHECK(rec["delta"] == "1");
  CHECK(rec["degrees"][1]["free_rank"] == 1);
  const auto m = to_json(compare({HomologyGroup{1, {}}}, {HomologyGroup{}}, 0));
  CHECK(m["match"] == false);
  CHECK(m["mismatches"][0]["right"] == "0");
}
