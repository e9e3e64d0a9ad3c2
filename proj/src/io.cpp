#include "reduction_lab/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace rlab::io {
namespace {

std::string field(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

std::string element(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

std::string display(const std::string& path) { return path.empty() ? "<root>" : path; }

const Json& require(const Json& j, const std::string& path, const std::string& key) {
  if (!j.is_object()) throw ParseError(display(path), "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(field(path, key), "missing required field");
  return *it;
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(display(path), "expected a number");
  return j.get<double>();
}

std::size_t positive_integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 1) throw ParseError(display(path), "expected a positive integer");
  return static_cast<std::size_t>(j.get<long long>());
}

cplx complex_from_json(const Json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw ParseError(display(path), "expected a complex number [re, im]");
  return {number(j[0], element(path, 0)), number(j[1], element(path, 1))};
}

ComplexVector vector_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ParseError(display(path), "expected a non-empty array of complex numbers");
  ComplexVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(complex_from_json(j[i], element(path, i)));
  return v;
}

// Runs a constructor and reports its semantic failure at `path`.
template <typename F>
auto at_path(const std::string& path, F&& build) {
  try {
    return build();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(display(path), e.what());
  }
}

std::pair<std::size_t, std::size_t> line_and_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

ParseError::ParseError(std::string where, const std::string& message)
    : Error(where + ": " + message), where_(std::move(where)), message_(message) {}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Json to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.dim(); ++k) row.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(std::span<const cplx> v) {
  Json out = Json::array();
  for (const cplx& z : v) out.push_back(Json::array({z.real(), z.imag()}));
  return out;
}

Json to_json(const DiscreteObservable& obs) {
  Json values = Json::array();
  Json projectors = Json::array();
  for (const auto& o : obs.outcomes()) {
    values.push_back(o.value);
    projectors.push_back(to_json(o.projector));
  }
  return Json{{"eigenvalues", std::move(values)}, {"projectors", std::move(projectors)}};
}

Json to_json(const MeasurementModel& model) {
  Json j;
  j["dim_s"] = model.dim_s();
  j["dim_a"] = model.dim_a();
  j["observable"] = to_json(model.observable());
  j["apparatus_state"] = to_json(model.apparatus_state().matrix());
  j["unitary"] = to_json(model.unitary());
  if (model.probe()) j["probe"] = to_json(*model.probe());
  return j;
}

Json to_json(const VerificationReport& report) {
  Json records = Json::array();
  for (const CheckRecord& r : report.records()) {
    records.push_back(Json{{"check", r.check},
                           {"outcome", r.outcome},
                           {"residual", r.residual},
                           {"tolerance", r.tolerance},
                           {"pass", r.pass}});
  }
  return Json{{"pass", report.passed()}, {"records", std::move(records)}};
}

Json to_json(const JointDistribution& jd) {
  Json table = Json::array();
  for (const auto& row : jd.table()) table.push_back(row);
  return Json{{"first_eigenvalues", jd.first().eigenvalues()},
              {"second_eigenvalues", jd.second().eigenvalues()},
              {"table", std::move(table)}};
}

Json to_json(const DecompositionExhibit& exhibit) {
  Json decompositions = Json::array();
  for (const PureDecomposition& d : exhibit.decompositions) {
    Json states = Json::array();
    for (const PureState& s : d.states) states.push_back(to_json(s.vector()));
    decompositions.push_back(Json{{"label", d.label}, {"weights", d.weights}, {"states", std::move(states)}});
  }
  Json components = Json::array();
  for (const auto& [a, m] : exhibit.instrument_components) {
    components.push_back(Json{{"outcome", a}, {"image", to_json(m)}});
  }
  return Json{{"observable", to_json(exhibit.observable)},
              {"input_state", to_json(exhibit.input.vector())},
              {"mixed_state", to_json(exhibit.mixed_state.matrix())},
              {"decompositions", std::move(decompositions)},
              {"instrument_components", std::move(components)},
              {"min_cross_trace_distance", exhibit.min_cross_distance()}};
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ParseError(display(path), "expected a non-empty array of rows");
  const std::size_t n = j.size();
  std::vector<cplx> entries;
  entries.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const Json& row = j[i];
    const std::string row_path = element(path, i);
    if (!row.is_array() || row.size() != n) {
      throw ParseError(row_path, "expected a row of " + std::to_string(n) + " complex entries (matrix must be square)");
    }
    for (std::size_t k = 0; k < n; ++k) entries.push_back(complex_from_json(row[k], element(row_path, k)));
  }
  return at_path(path, [&] { return ComplexMatrix(n, std::move(entries)); });
}

DiscreteObservable observable_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(display(path), "expected an observable object");
  if (j.contains("hermitian")) {
    const ComplexMatrix h = matrix_from_json(j["hermitian"], field(path, "hermitian"));
    const double tol = j.contains("degeneracy_tol") ? number(j["degeneracy_tol"], field(path, "degeneracy_tol"))
                                                    : kDegeneracyTol;
    return at_path(field(path, "hermitian"), [&] { return observable_from_hermitian(h, tol); });
  }
  const Json& values = require(j, path, "eigenvalues");
  const Json& projectors = require(j, path, "projectors");
  const std::string values_path = field(path, "eigenvalues");
  const std::string projectors_path = field(path, "projectors");
  if (!values.is_array() || values.empty()) throw ParseError(values_path, "expected a non-empty array of numbers");
  if (!projectors.is_array() || projectors.size() != values.size()) {
    throw ParseError(projectors_path, "expected one projector per eigenvalue");
  }
  std::vector<DiscreteObservable::Outcome> outcomes;
  for (std::size_t i = 0; i < values.size(); ++i) {
    outcomes.push_back({number(values[i], element(values_path, i)),
                        matrix_from_json(projectors[i], element(projectors_path, i))});
  }
  return at_path(path, [&] { return DiscreteObservable(std::move(outcomes)); });
}

DensityOperator state_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(display(path), "expected a state object");
  if (j.contains("density_matrix")) {
    const std::string p = field(path, "density_matrix");
    ComplexMatrix m = matrix_from_json(j["density_matrix"], p);
    return at_path(p, [&] { return DensityOperator(std::move(m)); });
  }
  if (j.contains("state_vector")) {
    const std::string p = field(path, "state_vector");
    ComplexVector v = vector_from_json(j["state_vector"], p);
    return at_path(p, [&] { return DensityOperator(PureState(std::move(v))); });
  }
  throw ParseError(display(path), "expected a \"density_matrix\" or \"state_vector\" field");
}

MeasurementModel model_from_json(const Json& j) {
  const std::size_t dim_s = positive_integer(require(j, "", "dim_s"), "dim_s");
  const std::size_t dim_a = positive_integer(require(j, "", "dim_a"), "dim_a");
  DiscreteObservable observable = observable_from_json(require(j, "", "observable"), "observable");
  if (observable.dim() != dim_s) throw ParseError("observable", "dimension does not match dim_s");
  ComplexMatrix sigma = matrix_from_json(require(j, "", "apparatus_state"), "apparatus_state");
  if (sigma.dim() != dim_a) throw ParseError("apparatus_state", "dimension does not match dim_a");
  DensityOperator apparatus_state = at_path("apparatus_state", [&] { return DensityOperator(std::move(sigma)); });
  ComplexMatrix unitary = matrix_from_json(require(j, "", "unitary"), "unitary");
  if (unitary.dim() != dim_s * dim_a) throw ParseError("unitary", "dimension is not dim_s * dim_a");
  std::optional<DiscreteObservable> probe;
  if (j.contains("probe") && !j["probe"].is_null()) probe = observable_from_json(j["probe"], "probe");
  return at_path("unitary", [&] {
    return MeasurementModel(std::move(observable), std::move(apparatus_state), std::move(unitary), std::move(probe));
  });
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, column] = line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column), e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_json(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.where(), e.message());
  }
}

std::string serialize(const Json& j) { return j.dump(2) + "\n"; }

std::string serialize_model(const MeasurementModel& model) { return serialize(to_json(model)); }

std::string report_csv(const VerificationReport& report) {
  std::string out = "check,outcome,residual,tolerance,pass\n";
  for (const CheckRecord& r : report.records()) {
    out += r.check + "," + r.outcome + "," + format_double(r.residual) + "," + format_double(r.tolerance) + "," +
           (r.pass ? "true" : "false") + "\n";
  }
  return out;
}

std::string joint_csv(const JointDistribution& jd) {
  std::string out = "a,x,probability\n";
  const auto& first = jd.first().outcomes();
  const auto& second = jd.second().outcomes();
  for (std::size_t i = 0; i < first.size(); ++i)
    for (std::size_t k = 0; k < second.size(); ++k)
      out += format_double(first[i].value) + "," + format_double(second[k].value) + "," +
             format_double(jd.table()[i][k]) + "\n";
  return out;
}

}  // namespace rlab::io
