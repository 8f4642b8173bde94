#pragma once

#include "json.hpp"

#include "conemetric/cones.hpp"
#include "conemetric/fixedpoint.hpp"
#include "conemetric/metric.hpp"
#include "conemetric/ordernorm.hpp"
#include "conemetric/sequences.hpp"

namespace conemetric {

// ordered_json keeps insertion order, so reports serialize to stable bytes
using Json = nlohmann::ordered_json;

Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j, const char* what);

Json cone_to_json(const Cone& cone);
Cone cone_from_json(const Json& j);

Json space_to_json(const OrderUnitSpace& space);
OrderUnitSpace space_from_json(const Json& j);

Json metric_to_json(const ConeMetric& m);
ConeMetric metric_from_json(const Json& j);

ContractionProblem problem_from_json(const Json& j);

Json archimedean_report_to_json(const ArchimedeanReport& r);
Json axiom_report_to_json(const AxiomReport& r, const ConeMetric& m);
Json ball_identity_report_to_json(const BallIdentityReport& r, const ConeMetric& m);
Json basis_report_to_json(const BasisReport& r);
Json cauchy_verdict_to_json(const CauchyVerdict& v);
Json ladder_report_to_json(const LadderReport& r);
Json cauchy_equivalence_report_to_json(const CauchyEquivalenceReport& r);
Json banach_result_to_json(const BanachResult& r, const ConeMetric& m);

}  // namespace conemetric
