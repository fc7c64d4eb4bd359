#include "symrig/serialize.hpp"

#include <cmath>
#include <string>

#include "symrig/errors.hpp"

namespace symrig {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double finite_number(const Json& j) {
  if (!j.is_number()) throw InvalidInput("expected a number, got " + j.dump());
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw InvalidInput("non-finite number");
  return x;
}

Cx complex_entry(const Json& j) {
  if (j.is_number()) return {finite_number(j), 0.0};
  if (j.is_array() && j.size() == 2) return {finite_number(j[0]), finite_number(j[1])};
  throw InvalidInput("expected a complex entry [re, im], got " + j.dump());
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

template <class Entry, class Parse>
Eigen::Matrix<Entry, Eigen::Dynamic, Eigen::Dynamic> parse_matrix(const Json& j, Parse parse) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw InvalidInput("matrix must be a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::Matrix<Entry, Eigen::Dynamic, Eigen::Dynamic> m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols) throw InvalidInput("ragged matrix rows");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = parse(j[r][c]);
  }
  return m;
}

}  // namespace

Json to_json(const RealLinearMap& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const ComplexLinearMap& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const CxVector& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back({v[k].real(), v[k].imag()});
  return out;
}

RealLinearMap real_matrix_from_json(const Json& j) { return parse_matrix<double>(j, finite_number); }

ComplexLinearMap complex_matrix_from_json(const Json& j) { return parse_matrix<Cx>(j, complex_entry); }

CxVector vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InvalidInput("vector must be a nonempty array");
  CxVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v[static_cast<Eigen::Index>(k)] = complex_entry(j[k]);
  return v;
}

Json to_json(const Domain& g) {
  return std::visit(
      Overloaded{
          [](const Ball& b) -> Json { return {{"variant", "ball"}, {"radius", b.radius}, {"dim", b.dim}}; },
          [](const Disc& d) -> Json { return {{"variant", "disc"}, {"radius", d.radius}}; },
          [](const Polydisc& p) -> Json { return {{"variant", "polydisc"}, {"radii", p.radii}}; },
          [](const RealBidisc& b) -> Json { return {{"variant", "real_bidisc"}, {"r", b.r}}; },
          [](const Cylinder& c) -> Json {
            return {{"variant", "cylinder"}, {"radius", c.radius}, {"dim", c.dim}, {"axis", c.axis + 1}};
          },
          [](const Product& p) -> Json {
            Json f = Json::array();
            for (const auto& d : p.factors) f.push_back(to_json(d));
            return {{"variant", "product"}, {"factors", f}};
          },
          [](const Transformed& t) -> Json {
            return {{"variant", "transformed"}, {"matrix", to_json(t.matrix)}, {"base", to_json(*t.base)}};
          },
      },
      g.variant());
}

Domain domain_from_json(const Json& j) {
  const Json& tag = field(j, "variant");
  if (!tag.is_string()) throw InvalidInput("domain variant must be a string");
  const std::string v = tag.get<std::string>();
  auto integer = [](const Json& x) {
    const double d = finite_number(x);
    if (d != std::floor(d)) throw InvalidInput("expected an integer");
    return static_cast<int>(d);
  };
  if (v == "ball") return Domain::ball(finite_number(field(j, "radius")), integer(field(j, "dim")));
  if (v == "disc") return Domain::disc(finite_number(field(j, "radius")));
  if (v == "polydisc") {
    const Json& r = field(j, "radii");
    if (!r.is_array()) throw InvalidInput("radii must be an array");
    std::vector<double> radii;
    for (const auto& x : r) radii.push_back(finite_number(x));
    return Domain::polydisc(radii);
  }
  if (v == "real_bidisc") return Domain::real_bidisc(j.contains("r") ? finite_number(j.at("r")) : 1.0);
  if (v == "cylinder") {
    const int axis = j.contains("axis") ? integer(j.at("axis")) : 1;
    return Domain::cylinder(finite_number(field(j, "radius")), integer(field(j, "dim")), axis - 1);
  }
  if (v == "product") {
    const Json& f = field(j, "factors");
    if (!f.is_array()) throw InvalidInput("factors must be an array");
    std::vector<Domain> factors;
    for (const auto& x : f) factors.push_back(domain_from_json(x));
    return Domain::product(std::move(factors));
  }
  if (v == "transformed") {
    return Domain::transformed(real_matrix_from_json(field(j, "matrix")), domain_from_json(field(j, "base")));
  }
  throw InvalidInput("unknown domain variant \"" + v + "\"");
}

Json to_json(const ClassificationResult& r) {
  Json out = {{"equivalent", r.equivalent}, {"residual", r.residual}};
  out["witness"] = r.witness_unitary ? to_json(*r.witness_unitary) : Json(nullptr);
  out["pattern"] = r.pattern ? Json{(*r.pattern)[0], (*r.pattern)[1]} : Json(nullptr);
  out["failed_plane"] = r.failed_planes.empty() ? Json(nullptr) : Json(r.failed_planes.front());
  out["failed_planes"] = r.failed_planes;
  return out;
}

Json to_json(const AreaReport& r) {
  Json out = {{"total", r.total}, {"per_component", r.per_component}, {"error_estimate", r.error_estimate}};
  out["clipped_total"] = r.clipped_total ? Json(*r.clipped_total) : Json(nullptr);
  return out;
}

Json to_json(const AnalyticCandidate& x) {
  return {{"kind", to_string(x.kind)},
          {"axis", x.axis + 1},
          {"degree", x.degree()},
          {"coefficients", to_json(x.coeffs)},
          {"tangent", to_json(x.tangent())},
          {"description", x.describe()}};
}

AnalyticCandidate candidate_from_json(const Json& j) {
  const ComplexLinearMap coeffs = complex_matrix_from_json(field(j, "coefficients"));
  const double axis = finite_number(field(j, "axis"));
  AnalyticCandidate x = AnalyticCandidate::graph(static_cast<int>(coeffs.rows()), static_cast<int>(axis) - 1, coeffs);
  if (j.contains("kind")) {
    const std::string kind = j.at("kind").is_string() ? j.at("kind").get<std::string>() : "";
    if (kind == "line") x.kind = CandidateKind::Line;
    else if (kind == "polynomial_graph") x.kind = CandidateKind::PolynomialGraph;
    else if (kind == "rational_circle") x.kind = CandidateKind::RationalCircle;
    else throw InvalidInput("unknown candidate kind");
  }
  return x;
}

Json to_json(const RadiusEstimate& e) {
  return {{"upper", e.upper},
          {"lower", e.lower},
          {"best_area", e.best_area},
          {"best_candidate", to_json(e.best_candidate)},
          {"samples_evaluated", e.samples_evaluated},
          {"families", e.families},
          {"upper_history", e.upper_history},
          {"upper_is_heuristic", true}};
}

Json to_json(const CensusReport& r) {
  auto entry = [](const CensusEntry& e) {
    return Json{{"candidate", to_json(e.candidate)}, {"area", e.area}, {"touches_rigid_circle", e.touches_rigid_circle}};
  };
  Json minimizers = Json::array();
  for (const auto& m : r.minimizers) minimizers.push_back(entry(m));
  return {{"minimizers", minimizers},
          {"distinct_count", r.distinct_count},
          {"margin", r.margin ? Json(*r.margin) : Json(nullptr)},
          {"pool_size", r.pool.size()}};
}

Json to_json(const Certificate& c) {
  return {{"verdict", to_string(c.verdict)}, {"rule", c.rule}, {"bound", c.bound}, {"target_radius", c.target_radius}};
}

}  // namespace symrig
