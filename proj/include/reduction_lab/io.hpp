#pragma once

// JSON file formats.
//
//   matrix      row-major nested arrays, each entry a [re, im] pair
//   observable  {"eigenvalues": [...], "projectors": [matrix, ...]}
//               or {"hermitian": matrix, "degeneracy_tol": number?}
//   state       {"density_matrix": matrix} or {"state_vector": [[re, im], ...]}
//   model       {"dim_s", "dim_a", "observable", "apparatus_state": matrix,
//                "unitary": matrix, "probe": observable?}
//
// Doubles are written in shortest round-trip form, so parse(serialize(x))
// reproduces every bit and serialization is byte-stable.

#include <string>
#include <vector>

#include "json.hpp"
#include "reduction_lab/errors.hpp"
#include "reduction_lab/instrument.hpp"
#include "reduction_lab/models.hpp"
#include "reduction_lab/quantum.hpp"
#include "reduction_lab/report.hpp"
#include "reduction_lab/scenarios.hpp"

namespace rlab::io {

using Json = nlohmann::ordered_json;

/// Malformed input. `where` is "line L, column C" for syntax errors or a field
/// path such as "observable.projectors[1]" for content errors.
class ParseError : public Error {
 public:
  ParseError(std::string where, const std::string& message);
  const std::string& where() const noexcept { return where_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string where_;
  std::string message_;
};

Json to_json(const ComplexMatrix& m);
Json to_json(std::span<const cplx> v);
Json to_json(const DiscreteObservable& obs);
Json to_json(const MeasurementModel& model);
Json to_json(const VerificationReport& report);
Json to_json(const JointDistribution& jd);
Json to_json(const DecompositionExhibit& exhibit);

ComplexMatrix matrix_from_json(const Json& j, const std::string& path = "");
DiscreteObservable observable_from_json(const Json& j, const std::string& path = "");
DensityOperator state_from_json(const Json& j, const std::string& path = "");
MeasurementModel model_from_json(const Json& j);

/// Parses JSON text; syntax errors become ParseError with line and column.
Json parse_json(const std::string& text);
/// Reads and parses a file; an unreadable file is a ParseError too.
Json read_json_file(const std::string& path);

std::string serialize(const Json& j);
std::string serialize_model(const MeasurementModel& model);

/// check,outcome,residual,tolerance,pass
std::string report_csv(const VerificationReport& report);
/// a,x,probability
std::string joint_csv(const JointDistribution& jd);

std::string format_double(double v);

}  // namespace rlab::io
