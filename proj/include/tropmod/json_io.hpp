#pragma once

#include <json.hpp>

#include "tropmod/cpa.hpp"
#include "tropmod/family.hpp"
#include "tropmod/quiver.hpp"
#include "tropmod/semilattice.hpp"
#include "tropmod/weight_polyhedron.hpp"

namespace tropmod {

/// std::map-backed, so object keys are always emitted sorted.
using Json = nlohmann::json;

// Every *_from_json throws InvalidInput on malformed data.

Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json to_json(const Weight& w); // null for the sentinel
Weight weight_from_json(const Json& j);

Json to_json(const Point& p);
Point point_from_json(const Json& j, int dim = -1);

Json to_json(const IntVector& v);
IntVector int_vector_from_json(const Json& j, int dim = -1);
std::int64_t int_from_json(const Json& j);

Json to_json(const AffineFunction& f);
AffineFunction affine_from_json(const Json& j, int dim = -1);

Json to_json(const RationalPolytope& p);
PolytopePtr polytope_from_json(const Json& j);

Json to_json(const CPAFunction& f);
CPAFunction cpa_from_json(const Json& j, const PolytopePtr& domain);

Json to_json(const FinitePoset& p);
FinitePoset poset_from_json(const Json& j);

Json to_json(const FinBModule& m);
FinBModule module_from_json(const Json& j);

Json to_json(const MonoidPairSpec& pair);
MonoidPairSpec pair_from_json(const Json& j);

Json to_json(const CarrierElement& a);
CarrierElement carrier_from_json(const Json& j, const MonoidPairSpec& pair);

/// {"pair":..., "n":..., "edges":[{"src","dst","w"}]}. A family may give
/// "base" (and "boundary_rays") at the top level instead of "pair"; with
/// neither, the pair is the group pair over Z.
Json to_json(const QuiverPresentation& q);
QuiverPresentation quiver_from_json(const Json& j);

Json to_json(const FamilyPresentation& f);
FamilyPresentation family_from_json(const Json& j);

Json closure_to_json(const ClosureMatrix& c);
ClosureMatrix closure_from_json(const Json& j);
Json closure_to_json(const FamilyClosure& c);
FamilyClosure family_closure_from_json(const Json& j, const PolytopePtr& domain);

Json dbm_to_json(const WeightPolyhedron& p);
WeightPolyhedron dbm_from_json(const Json& j);

Json to_json(const ExtendedPoint& x);
ExtendedPoint extended_point_from_json(const Json& j);

Json to_json(const Generator& g);
Generator generator_from_json(const Json& j);
Json to_json(const AffineGenerator& g);
AffineGenerator affine_generator_from_json(const Json& j, int dim);

/// Throws InvalidInput(msg) unless cond holds.
void require_input(bool cond, const std::string& msg);

/// j[key], or InvalidInput when absent.
const Json& json_field(const Json& j, const char* key);

} // namespace tropmod
