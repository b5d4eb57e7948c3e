#include "diagalg/serialize.hpp"

#include "diagalg/error.hpp"
#include "diagalg/kernels.hpp"

namespace diagalg {

namespace {

Json mpz_json(const mpz_class& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

mpz_class mpz_from_json(const Json& j) {
  if (j.is_number_integer()) return mpz_class(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return mpz_class(j.get<std::string>());
  throw ParseError("expected an integer in JSON, got " + j.dump());
}

}  // namespace

Json to_json(const HomologyGroup& h) {
  Json j;
  j["free_rank"] = h.free_rank;
  j["torsion"] = Json::array();
  for (const auto& t : h.torsion) j["torsion"].push_back(mpz_json(t));
  return j;
}

HomologyGroup homology_from_json(const Json& j) {
  HomologyGroup h;
  try {
    h.free_rank = j.at("free_rank").get<Index>();
    for (const auto& t : j.at("torsion")) h.torsion.push_back(mpz_from_json(t));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed homology group: ") + e.what());
  }
  return h;
}

Json to_json(const CoverReport& report) {
  Json j;
  j["covers"] = report.covers;
  j["width"] = report.width;
  j["verified_height"] = report.verified_height;
  j["failures"] = Json::array();
  for (const auto& f : report.failures) j["failures"].push_back({{"S", f.subset}, {"check", f.check}, {"diagram", f.diagram}});
  j["intersections"] = Json::array();
  for (const auto& w : report.intersections) {
    Json x;
    x["S"] = w.label;
    x["status"] = to_string(w.status);
    x["dim"] = w.dim;
    x["generator_diagram"] = w.generator && w.status != WitnessStatus::Zero ? Json(w.generator->to_string()) : Json();
    j["intersections"].push_back(std::move(x));
  }
  return j;
}

Json to_json(const ChainComplex& c) {
  Json j;
  j["ring"] = c.ring().to_string();
  j["lo"] = c.lo();
  j["hi"] = c.hi();
  j["dims"] = c.dims();
  j["differentials"] = Json::array();
  for (int q = c.lo() + 1; q <= c.hi(); ++q) {
    const auto d = c.differential(q);
    const auto m = kernels::omp::materialize(*d);
    Json t = Json::array();
    for (const auto& e : m.triplets()) t.push_back(Json::array({e.row, e.col, e.value}));
    j["differentials"].push_back({{"degree", q}, {"rows", m.rows()}, {"cols", m.cols()}, {"triplets", std::move(t)}});
  }
  return j;
}

ChainComplex complex_from_json(const Json& j) {
  try {
    const auto ring = RingSpec::parse(j.at("ring").get<std::string>());
    const int lo = j.at("lo").get<int>();
    const auto dims = j.at("dims").get<std::vector<Index>>();
    std::vector<MatrixPtr> diffs;
    for (const auto& d : j.at("differentials")) {
      std::vector<Triplet> t;
      for (const auto& e : d.at("triplets")) t.push_back({e.at(0).get<Index>(), e.at(1).get<Index>(), e.at(2).get<std::int64_t>()});
      const std::uint64_t modulus = ring.kind() == RingKind::ModM ? ring.modulus() : 0;
      diffs.push_back(std::make_shared<SparseMatrix>(
          SparseMatrix::from_triplets(d.at("rows").get<Index>(), d.at("cols").get<Index>(), std::move(t), modulus)));
    }
    return ChainComplex(ring, lo, dims, std::move(diffs), true);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed chain complex: ") + e.what());
  }
}

Json to_json(const MVComplex& mv) {
  Json j = to_json(mv.complex);
  j["summands"] = Json::array();
  for (const auto& s : mv.summands) j["summands"].push_back({{"p", s.p}, {"S", s.label}, {"dim", s.basis.size()}});
  return j;
}

Json degrees_json(const std::vector<HomologyGroup>& groups) {
  Json d = Json::array();
  for (std::size_t q = 0; q < groups.size(); ++q) {
    Json x;
    x["q"] = q;
    const Json h = to_json(groups[q]);
    x["free_rank"] = h["free_rank"];
    x["torsion"] = h["torsion"];
    d.push_back(std::move(x));
  }
  return d;
}

Json results_record(const AlgebraContext& ctx, const std::vector<HomologyGroup>& groups) {
  Json j;
  j["context"] = {{"n", ctx.n()}, {"family", ctx.family().to_string()}, {"dim", ctx.dim()}};
  j["ring"] = ctx.ring().to_string();
  j["delta"] = ctx.delta().to_string();
  j["degrees"] = degrees_json(groups);
  return j;
}

Json to_json(const MatchReport& report) {
  Json j;
  j["match"] = report.match;
  j["through"] = report.through;
  j["mismatches"] = Json::array();
  for (const auto& m : report.mismatches) j["mismatches"].push_back({{"q", m.q}, {"left", m.left}, {"right", m.right}});
  return j;
}

}  // namespace diagalg
