#pragma once

#include <nlohmann/json.hpp>

#include "symrig/disc_area.hpp"
#include "symrig/domains.hpp"
#include "symrig/holo_radius.hpp"
#include "symrig/linear_geometry.hpp"
#include "symrig/types.hpp"

namespace symrig {

using Json = nlohmann::json;

/// Real matrices as arrays of rows; complex entries as [re, im] pairs.
Json to_json(const RealLinearMap& m);
Json to_json(const ComplexLinearMap& m);
Json to_json(const CxVector& v);

/// Parsers throw InvalidInput on malformed or non-finite input.
RealLinearMap real_matrix_from_json(const Json& j);
ComplexLinearMap complex_matrix_from_json(const Json& j);
/// Accepts [[re, im], ...] or a list of plain reals.
CxVector vector_from_json(const Json& j);

/// Tagged by "variant": ball, disc, polydisc, real_bidisc, cylinder (1-based "axis"), product,
/// transformed.
Json to_json(const Domain& g);
Domain domain_from_json(const Json& j);

Json to_json(const ClassificationResult& r);
Json to_json(const AreaReport& r);

/// Candidates carry a 1-based "axis" and "coefficients" as a dim x degree complex matrix.
Json to_json(const AnalyticCandidate& x);
AnalyticCandidate candidate_from_json(const Json& j);
Json to_json(const RadiusEstimate& e);
Json to_json(const CensusReport& r);
Json to_json(const Certificate& c);

}  // namespace symrig
