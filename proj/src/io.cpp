#include "commutant_lab/io.hpp"

#include <fstream>
#include <stdexcept>

namespace commutant_lab::io {

Json complex_matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix complex_matrix_from_json(const Json& entries, int dim) {
  if (!entries.is_array() || static_cast<int>(entries.size()) != dim) {
    throw std::invalid_argument("entries must be a dim x dim grid");
  }
  ComplexMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const Json& row = entries[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw std::invalid_argument("entries must be a dim x dim grid");
    }
    for (int j = 0; j < dim; ++j) {
      const Json& cell = row[static_cast<std::size_t>(j)];
      if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() || !cell[1].is_number()) {
        throw std::invalid_argument("each entry must be a [re, im] pair");
      }
      m(i, j) = Complex(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  return m;
}

Json matrix_to_json(const HermitianMatrix& m, const std::string& label) {
  Json j;
  j["dim"] = m.dim();
  if (!label.empty()) j["label"] = label;
  j["entries"] = complex_matrix_to_json(m.matrix());
  return j;
}

MatrixFile matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    throw std::invalid_argument("matrix file needs 'dim' and 'entries'");
  }
  if (!j["dim"].is_number_integer() || j["dim"].get<int>() < 1) {
    throw std::invalid_argument("'dim' must be a positive integer");
  }
  const int dim = j["dim"].get<int>();
  MatrixFile file;
  if (j.contains("label") && j["label"].is_string()) file.label = j["label"].get<std::string>();
  file.matrix = HermitianMatrix(complex_matrix_from_json(j["entries"], dim), kFileHermitianTolerance);
  return file;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in '" + path + "': " + e.what());
  }
}

MatrixFile read_matrix_file(const std::string& path) { return matrix_from_json(read_json_file(path)); }

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

Json tolerance_to_json(const Tolerance& tol) {
  return {{"rel_zero", tol.rel_zero}, {"rank_cut", tol.rank_cut}, {"cluster_gap", tol.cluster_gap}};
}

Tolerance tolerance_from_json(const Json& j) {
  Tolerance tol;
  tol.rel_zero = j.value("rel_zero", tol.rel_zero);
  tol.rank_cut = j.value("rank_cut", tol.rank_cut);
  tol.cluster_gap = j.value("cluster_gap", tol.cluster_gap);
  tol.validate();
  return tol;
}

Json shift_to_json(const ShiftPolicy& shift) {
  using Kind = ShiftPolicy::Kind;
  switch (shift.kind()) {
    case Kind::zero:
      return {{"kind", "zero"}};
    case Kind::constant:
      return {{"kind", "constant"}, {"value", shift.constant_value()}};
    case Kind::trace_based:
      return {{"kind", "trace_based"}};
    case Kind::theorem_compliant_quasi:
      return {{"kind", "theorem_compliant_quasi"},
              {"inner", shift_to_json(*shift.inner())},
              {"tolerance", tolerance_to_json(shift.tolerance())}};
    case Kind::pointwise: {
      Json points = Json::array();
      for (const auto& [m, value] : shift.points()) {
        points.push_back({{"matrix", matrix_to_json(m)}, {"value", value}});
      }
      return {{"kind", "pointwise"}, {"points", points}, {"fallback", shift_to_json(*shift.inner())}};
    }
    case Kind::custom:
      break;
  }
  throw std::invalid_argument("shift policy '" + shift.describe() + "' is not serializable");
}

ShiftPolicy shift_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "zero") return ShiftPolicy::zero();
  if (kind == "constant") return ShiftPolicy::constant(j.at("value").get<double>());
  if (kind == "trace_based") return ShiftPolicy::trace_based();
  if (kind == "theorem_compliant_quasi") {
    const Tolerance tol = j.contains("tolerance") ? tolerance_from_json(j["tolerance"]) : Tolerance{};
    return ShiftPolicy::theorem_compliant_quasi(shift_from_json(j.at("inner")), tol);
  }
  if (kind == "pointwise") {
    std::vector<std::pair<HermitianMatrix, double>> points;
    for (const Json& p : j.at("points")) {
      points.emplace_back(matrix_from_json(p.at("matrix")).matrix, p.at("value").get<double>());
    }
    return ShiftPolicy::pointwise(std::move(points), shift_from_json(j.at("fallback")));
  }
  throw std::invalid_argument("unknown shift policy kind '" + kind + "'");
}

const char* to_string(RelationKind kind) {
  return kind == RelationKind::commutative ? "commutative" : "quasi";
}

RelationKind relation_from_string(const std::string& s) {
  if (s == "commutative") return RelationKind::commutative;
  if (s == "quasi") return RelationKind::quasi;
  throw std::invalid_argument("unknown relation kind '" + s + "'");
}

Json map_to_json(const PreserverMap& m) {
  return {{"scale", m.scale()},
          {"antiunitary", m.antiunitary()},
          {"relation", to_string(m.relation())},
          {"dim", m.dim()},
          {"conjugator", complex_matrix_to_json(m.conjugator())},
          {"shift", shift_to_json(m.shift())}};
}

PreserverMap map_from_json(const Json& j) {
  const int dim = j.at("dim").get<int>();
  return PreserverMap(j.at("scale").get<double>(), complex_matrix_from_json(j.at("conjugator"), dim),
                      j.at("antiunitary").get<bool>(), shift_from_json(j.at("shift")),
                      relation_from_string(j.at("relation").get<std::string>()));
}

Json violation_to_json(const Violation& v) {
  return {{"trial", v.trial},
          {"direction", to_string(v.direction)},
          {"a", matrix_to_json(v.a, "A")},
          {"b", matrix_to_json(v.b, "B")},
          {"c", matrix_to_json(v.c, "C")}};
}

Json trial_report_to_json(const TrialReport& r, bool include_timing) {
  Json violations = Json::array();
  for (const auto& v : r.violations) violations.push_back(violation_to_json(v));
  Json j = {{"suite", r.suite},      {"seed", r.seed},           {"dims", r.dims},
            {"trials", r.trials},    {"both_hold", r.both_hold}, {"both_fail", r.both_fail},
            {"violations", violations}};
  if (include_timing) j["elapsed_seconds"] = r.elapsed_seconds;
  return j;
}

Json counterexample_to_json(const PreserverMap& m, const Violation& v, const Tolerance& tol) {
  Json j = violation_to_json(v);
  j["map"] = map_to_json(m);
  j["tolerance"] = tolerance_to_json(tol);
  return j;
}

}  // namespace commutant_lab::io
