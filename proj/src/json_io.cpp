#include "conemetric/json_io.hpp"

#include <string>

namespace conemetric {
namespace {

const Json& require_field(const Json& j, const char* key, const char* what) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw std::invalid_argument(std::string(what) + ": missing field '" + key + "'");
  }
  return *it;
}

ScalarMetricKind scalar_kind_from_string(const std::string& s) {
  if (s == "euclidean") return ScalarMetricKind::Euclidean;
  if (s == "manhattan") return ScalarMetricKind::Manhattan;
  if (s == "chebyshev") return ScalarMetricKind::Chebyshev;
  if (s == "discrete") return ScalarMetricKind::Discrete;
  throw std::invalid_argument("unknown scalar metric kind: " + s);
}

std::string scalar_kind_to_string(ScalarMetricKind kind) {
  switch (kind) {
    case ScalarMetricKind::Euclidean: return "euclidean";
    case ScalarMetricKind::Manhattan: return "manhattan";
    case ScalarMetricKind::Chebyshev: return "chebyshev";
    case ScalarMetricKind::Discrete: return "discrete";
  }
  throw std::logic_error("unknown scalar metric kind");
}

ScalarMetric scalar_metric_from_json(const Json& j) {
  ScalarMetric rho;
  rho.kind = scalar_kind_from_string(require_field(j, "kind", "rho").get<std::string>());
  rho.weight = j.value("weight", 1.0);
  return rho;
}

Json scalar_metric_to_json(const ScalarMetric& rho) {
  return Json{{"kind", scalar_kind_to_string(rho.kind)}, {"weight", rho.weight}};
}

std::vector<Point> points_from_json(const Json& j) {
  std::vector<Point> points;
  for (const Json& entry : j) {
    Point p;
    if (entry.is_string()) {
      p.id = entry.get<std::string>();
    } else {
      p.id = require_field(entry, "id", "point").get<std::string>();
      if (entry.contains("coords")) {
        p.coords = vector_from_json(entry["coords"], "point coords");
      }
    }
    points.push_back(std::move(p));
  }
  return points;
}

Json points_to_json(const std::vector<Point>& points) {
  Json j = Json::array();
  for (const Point& p : points) {
    if (p.coords) {
      j.push_back(Json{{"id", p.id}, {"coords", vector_to_json(*p.coords)}});
    } else {
      j.push_back(p.id);
    }
  }
  return j;
}

}  // namespace

Json vector_to_json(const Vector& v) {
  Json j = Json::array();
  for (Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

Vector vector_from_json(const Json& j, const char* what) {
  if (!j.is_array()) throw std::invalid_argument(std::string(what) + ": expected an array");
  Vector v(static_cast<Index>(j.size()));
  Index i = 0;
  for (const Json& entry : j) v[i++] = entry.get<double>();
  require_finite(v, what);
  return v;
}

Json cone_to_json(const Cone& cone) {
  switch (cone.family()) {
    case ConeFamily::Orthant:
      return Json{{"family", "orthant"}, {"n", cone.ambient_dim()}};
    case ConeFamily::Lorentz:
      return Json{{"family", "lorentz"}, {"n", cone.ambient_dim()}};
    case ConeFamily::Psd:
      return Json{{"family", "psd"}, {"n", cone.psd_side()}};
    case ConeFamily::Polyhedral: {
      Json gens = Json::array();
      const Matrix& f = cone.dual_generators();
      for (Index i = 0; i < f.rows(); ++i) gens.push_back(vector_to_json(f.row(i)));
      return Json{{"family", "polyhedral"}, {"n", cone.ambient_dim()}, {"dual_gens", gens}};
    }
  }
  throw std::logic_error("cone_to_json: unknown family");
}

Cone cone_from_json(const Json& j) {
  const std::string family = require_field(j, "family", "cone").get<std::string>();
  if (family == "polyhedral") {
    const Json& gens = require_field(j, "dual_gens", "cone");
    if (!gens.is_array() || gens.empty()) {
      throw std::invalid_argument("cone: dual_gens must be a nonempty array");
    }
    const Index rows = static_cast<Index>(gens.size());
    const Index cols = static_cast<Index>(gens.front().size());
    Matrix f(rows, cols);
    for (Index i = 0; i < rows; ++i) {
      const Vector row = vector_from_json(gens[static_cast<std::size_t>(i)], "dual generator");
      if (row.size() != cols) throw std::invalid_argument("cone: ragged dual_gens");
      f.row(i) = row;
    }
    if (j.contains("n") && j["n"].get<Index>() != cols) {
      throw std::invalid_argument("cone: n does not match generator dimension");
    }
    return Cone::Polyhedral(std::move(f));
  }
  const Index n = require_field(j, "n", "cone").get<Index>();
  if (family == "orthant") return Cone::Orthant(n);
  if (family == "lorentz") return Cone::Lorentz(n);
  if (family == "psd") return Cone::Psd(n);
  throw std::invalid_argument("unknown cone family: " + family);
}

Json space_to_json(const OrderUnitSpace& space) {
  return Json{{"cone", cone_to_json(space.cone())},
              {"e", vector_to_json(space.unit())},
              {"tol", space.tol()}};
}

OrderUnitSpace space_from_json(const Json& j) {
  Cone cone = cone_from_json(require_field(j, "cone", "space"));
  Vector e = vector_from_json(require_field(j, "e", "space"), "space unit");
  const double tol = j.value("tol", 1e-9);
  return OrderUnitSpace(std::move(cone), std::move(e), tol);
}

Json metric_to_json(const ConeMetric& m) {
  Json params;
  std::string family;
  switch (m.family()) {
    case MetricFamily::Discrete:
      family = "discrete";
      params = Json{{"c", vector_to_json(m.direction())}};
      break;
    case MetricFamily::ScaledScalar:
      family = "scaled";
      params = Json{{"c", vector_to_json(m.direction())},
                    {"rho", scalar_metric_to_json(m.rho())}};
      break;
    case MetricFamily::Componentwise: {
      family = "componentwise";
      Json rhos = Json::array();
      for (const ScalarMetric& rho : m.rhos()) rhos.push_back(scalar_metric_to_json(rho));
      params = Json{{"rhos", rhos}};
      break;
    }
    case MetricFamily::Table: {
      family = "table";
      Json rows = Json::array();
      for (std::size_t i = 0; i < m.size(); ++i) {
        Json row = Json::array();
        for (std::size_t j2 = 0; j2 < m.size(); ++j2) {
          row.push_back(vector_to_json(m.table()[i * m.size() + j2]));
        }
        rows.push_back(std::move(row));
      }
      params = Json{{"values", rows}};
      break;
    }
  }
  return Json{{"space", space_to_json(m.space())},
              {"family", family},
              {"params", params},
              {"points", points_to_json(m.points())}};
}

ConeMetric metric_from_json(const Json& j) {
  OrderUnitSpace space = space_from_json(require_field(j, "space", "metric"));
  std::vector<Point> points = points_from_json(require_field(j, "points", "metric"));
  const std::string family = require_field(j, "family", "metric").get<std::string>();
  const Json& params = require_field(j, "params", "metric");

  if (family == "discrete") {
    return ConeMetric::Discrete(std::move(space), std::move(points),
                                vector_from_json(require_field(params, "c", "metric"), "c"));
  }
  if (family == "scaled") {
    return ConeMetric::ScaledScalar(
        std::move(space), std::move(points),
        vector_from_json(require_field(params, "c", "metric"), "c"),
        scalar_metric_from_json(require_field(params, "rho", "metric")));
  }
  if (family == "componentwise") {
    std::vector<ScalarMetric> rhos;
    for (const Json& rho : require_field(params, "rhos", "metric")) {
      rhos.push_back(scalar_metric_from_json(rho));
    }
    return ConeMetric::Componentwise(std::move(space), std::move(points), std::move(rhos));
  }
  if (family == "table") {
    const Json& rows = require_field(params, "values", "metric");
    std::vector<Vector> values;
    for (const Json& row : rows) {
      for (const Json& entry : row) values.push_back(vector_from_json(entry, "table entry"));
    }
    return ConeMetric::Table(std::move(space), std::move(points), std::move(values));
  }
  throw std::invalid_argument("unknown metric family: " + family);
}

ContractionProblem problem_from_json(const Json& j) {
  ConeMetric metric = metric_from_json(require_field(j, "metric", "problem"));
  const Json& images = require_field(j, "map", "problem");
  if (images.size() != metric.size()) {
    throw std::invalid_argument("problem: map must list one image id per point");
  }
  std::vector<std::size_t> map;
  for (const Json& id : images) map.push_back(metric.index_of(id.get<std::string>()));
  std::optional<double> claimed;
  if (j.contains("k_claimed")) claimed = j["k_claimed"].get<double>();
  return ContractionProblem(std::move(metric), std::move(map), claimed);
}

Json archimedean_report_to_json(const ArchimedeanReport& r) {
  Json violations = Json::array();
  for (const ArchimedeanViolation& v : r.violations) {
    violations.push_back(Json{{"y", vector_to_json(v.y)},
                              {"x", vector_to_json(v.x)},
                              {"positive_margin", v.positive_margin}});
  }
  return Json{{"check", "archimedean-spot-check"},
              {"samples", r.samples},
              {"dominated_prefixes", r.dominated_prefixes},
              {"violations", violations}};
}

Json axiom_report_to_json(const AxiomReport& r, const ConeMetric& m) {
  Json violations = Json::array();
  for (const MetricViolation& v : r.violations) {
    Json ids = Json::array();
    for (std::size_t p : v.points) ids.push_back(m.point(p).id);
    violations.push_back(Json{{"axiom", v.axiom}, {"points", ids}});
  }
  return Json{{"check", "metric-axioms"},
              {"pair_checks", r.pair_checks},
              {"triple_checks", r.triple_checks},
              {"violations", violations}};
}

Json ball_identity_report_to_json(const BallIdentityReport& r, const ConeMetric& m) {
  Json mismatches = Json::array();
  for (const BallMismatch& mm : r.mismatches) {
    mismatches.push_back(Json{{"point", m.point(mm.point).id},
                              {"in_unit_ball", mm.in_unit_ball},
                              {"in_scalar_ball", mm.in_scalar_ball}});
  }
  return Json{{"check", "ball-identity"},
              {"mu", r.mu},
              {"compared", r.compared},
              {"boundary_excluded", r.boundary_excluded},
              {"violations", mismatches}};
}

Json basis_report_to_json(const BasisReport& r) {
  return Json{{"check", "ball-basis"},
              {"trials", r.trials},
              {"intersection_points", r.intersection_points},
              {"unit_scale_checks", r.unit_scale_checks},
              {"violations", r.failures}};
}

Json cauchy_verdict_to_json(const CauchyVerdict& v) {
  Json j{{"certified", v.certified}};
  if (v.certified) {
    j["k"] = v.k;
  } else if (v.witness) {
    j["witness"] = Json::array({v.witness->first, v.witness->second});
  }
  return j;
}

Json ladder_report_to_json(const LadderReport& r) {
  Json entries = Json::array();
  for (const LadderEntry& e : r.entries) {
    entries.push_back(Json{{"eps", e.eps},
                           {"verdict", cauchy_verdict_to_json(e.verdict)},
                           {"secondary_eps", e.secondary_eps},
                           {"secondary", cauchy_verdict_to_json(e.secondary)}});
  }
  return Json{{"check", "unit-cauchy-ladder"},
              {"all_certified", r.all_certified},
              {"entries", entries}};
}

Json cauchy_equivalence_report_to_json(const CauchyEquivalenceReport& r) {
  return Json{{"check", "cauchy-equivalence"},
              {"eps", r.eps},
              {"unit_cauchy", cauchy_verdict_to_json(r.unit_verdict)},
              {"scalar_cauchy", cauchy_verdict_to_json(r.scalar_verdict)},
              {"boundary_pairs", r.boundary_pairs},
              {"equivalent", r.equivalent},
              {"ratio_identity_ok", r.ratio_identity_ok}};
}

Json banach_result_to_json(const BanachResult& r, const ConeMetric& m) {
  Json iterates = Json::array();
  for (std::size_t i : r.iterates) iterates.push_back(m.point(i).id);
  Json bounds = Json::array();
  for (double b : r.bound_trace) bounds.push_back(b);
  return Json{{"fixed_point", m.point(r.fixed_point).id},
              {"iterations", r.iterates.size() - 1},
              {"k", r.contraction_ratio},
              {"residual", r.residual},
              {"iterates", iterates},
              {"bound_trace", bounds}};
}

}  // namespace conemetric
