#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "diagalg/complex.hpp"
#include "diagalg/cover.hpp"
#include "diagalg/homcompute.hpp"
#include "diagalg/mv.hpp"

namespace diagalg {

using Json = nlohmann::ordered_json;

// {free_rank, torsion: [..]}; torsion entries are numbers, or decimal strings
// beyond 64 bits.
Json to_json(const HomologyGroup& h);
HomologyGroup homology_from_json(const Json& j);

// {covers, width, verified_height, failures: [...], intersections: [{S, status, generator_diagram}]}
Json to_json(const CoverReport& report);

// Matrix exchange format:
// {ring, lo, hi, dims, differentials: [{degree, rows, cols, triplets: [[r, c, v], ...]}]}
// Lazy differentials are materialized.
Json to_json(const ChainComplex& c);
ChainComplex complex_from_json(const Json& j);

// Exchange format of the complex plus {summands: [{p, S, dim}]}.
Json to_json(const MVComplex& mv);

// {context, ring, delta, degrees: [{q, free_rank, torsion}]}
Json results_record(const AlgebraContext& ctx, const std::vector<HomologyGroup>& groups);
Json degrees_json(const std::vector<HomologyGroup>& groups);

Json to_json(const MatchReport& report);

}  // namespace diagalg
