#pragma once

#include "mlspectra/badness.hpp"
#include "mlspectra/eps_adjugate.hpp"
#include "mlspectra/mlgeometry.hpp"
#include "mlspectra/subspace.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace mlspectra {

using Json = nlohmann::ordered_json;

// Schema: {"n": int, "field": "rational" | "real", "basis": [matrix, ...]}
// where each matrix is n rows of n entries or a flat list of n*n entries;
// entries are numbers or "p/q" strings. "field" defaults to rational.
// Throws LoadError; messages name the offending basis index.
LinearSubspace subspace_from_json(const nlohmann::json& j);
LinearSubspace load_subspace(const std::string& path);

Json to_json(const SymMatQ& m);
Json to_json(const SymMatR& m);
// Real entries when every imaginary part is below 1e-12 of the norm,
// otherwise [re, im] pairs.
Json to_json(const SymMatC& m);
Json to_json(const LinearSubspace& L);

Json to_json(const DegreeResult& d);
Json to_json(const TangencyResult& t);
Json to_json(const CknResult& c);
Json to_json(const MLReport& r, const GeometryOptions& opts);
Json to_json(const PsdRankResult& p);
Json to_json(const BadCertificate& c, const BadnessOptions& opts);
// Entries as polynomial strings in eps and the named parameters.
Json to_json(const EpsLeadingTerm& t, const std::vector<std::string>& names);

}  // namespace mlspectra
