#pragma once

#include <string>

#include "json.hpp"

#include "commutant_lab/hermitian.hpp"
#include "commutant_lab/preserver.hpp"

namespace commutant_lab::io {

using Json = nlohmann::json;

/// `{"dim": n, "label": "...", "entries": [[[re, im], ...], ...]}`.
struct MatrixFile {
  std::string label;
  HermitianMatrix matrix;
};

/// Relative Hermitian tolerance applied when loading matrix files.
inline constexpr double kFileHermitianTolerance = 1e-9;

Json complex_matrix_to_json(const ComplexMatrix& m);
ComplexMatrix complex_matrix_from_json(const Json& entries, int dim);

Json matrix_to_json(const HermitianMatrix& m, const std::string& label = "");
/// Validates shape and the Hermitian property; throws std::invalid_argument.
MatrixFile matrix_from_json(const Json& j);

MatrixFile read_matrix_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);
Json read_json_file(const std::string& path);

Json tolerance_to_json(const Tolerance& tol);
Tolerance tolerance_from_json(const Json& j);

/// Custom (closure) shift policies cannot be serialized and throw.
Json shift_to_json(const ShiftPolicy& shift);
ShiftPolicy shift_from_json(const Json& j);

Json map_to_json(const PreserverMap& m);
PreserverMap map_from_json(const Json& j);

const char* to_string(RelationKind kind);
RelationKind relation_from_string(const std::string& s);

Json violation_to_json(const Violation& v);
Json trial_report_to_json(const TrialReport& r, bool include_timing = true);

/// A replayable counterexample: the map, the triple, and the observed
/// verdict, with the tolerance it was observed under.
Json counterexample_to_json(const PreserverMap& m, const Violation& v, const Tolerance& tol);

}  // namespace commutant_lab::io
