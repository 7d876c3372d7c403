#include "brlkit/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "brlkit/errors.hpp"

namespace brlkit {

namespace {

using nlohmann::json;

json complex_to_json(const Complex& value) { return json::array({value.real(), value.imag()}); }

json matrix_to_json(const Matrix& matrix) {
  json rows = json::array();
  for (Index i = 0; i < matrix.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < matrix.cols(); ++j) row.push_back(complex_to_json(matrix(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Vector& vec) {
  json out = json::array();
  for (Index i = 0; i < vec.size(); ++i) out.push_back(complex_to_json(vec(i)));
  return out;
}

Complex entry_from_json(const json& value, const std::string& where) {
  if (value.is_number()) return Complex(value.get<double>(), 0.0);
  if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number())
    return Complex(value[0].get<double>(), value[1].get<double>());
  raise(ErrorCode::SchemaError, where + ": expected a number or [re, im]");
}

Matrix matrix_from_json(const json& value, Index rows, Index cols, const std::string& name) {
  if (!value.is_array())
    raise(ErrorCode::SchemaError, "field \"" + name + "\": expected an array of rows");
  if (static_cast<Index>(value.size()) != rows)
    raise(ErrorCode::SchemaError, "field \"" + name + "\": expected " + std::to_string(rows) +
                                      " rows, found " + std::to_string(value.size()));
  Matrix out(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = value[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      raise(ErrorCode::SchemaError, "field \"" + name + "\", row " + std::to_string(i) +
                                        ": expected " + std::to_string(cols) + " entries");
    for (Index j = 0; j < cols; ++j)
      out(i, j) = entry_from_json(row[static_cast<size_t>(j)],
                                  "field \"" + name + "\", row " + std::to_string(i) +
                                      ", col " + std::to_string(j));
  }
  return out;
}

Vector vector_from_json(const json& value, const std::string& name) {
  if (!value.is_array()) raise(ErrorCode::SchemaError, "field \"" + name + "\": expected an array");
  Vector out(static_cast<Index>(value.size()));
  for (size_t i = 0; i < value.size(); ++i)
    out(static_cast<Index>(i)) =
        entry_from_json(value[i], "field \"" + name + "\", entry " + std::to_string(i));
  return out;
}

Index int_field(const json& doc, const std::string& name) {
  if (!doc.contains(name) || !doc[name].is_number_integer())
    raise(ErrorCode::SchemaError, "field \"" + name + "\": expected a nonnegative integer");
  const auto value = doc[name].get<long long>();
  if (value < 0) raise(ErrorCode::SchemaError, "field \"" + name + "\" is negative");
  return static_cast<Index>(value);
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    raise(ErrorCode::SchemaError, e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

SystemRealization system_from_json(const json& doc) {
  if (!doc.is_object()) raise(ErrorCode::SchemaError, "expected a JSON object");
  const Index n = int_field(doc, "n_state");
  const Index m = int_field(doc, "n_in");
  const Index p = int_field(doc, "n_out");
  for (const char* name : {"A", "B", "C", "D"})
    if (!doc.contains(name))
      raise(ErrorCode::SchemaError, std::string("missing field \"") + name + "\"");
  Matrix A = matrix_from_json(doc["A"], n, n, "A");
  Matrix B = matrix_from_json(doc["B"], n, m, "B");
  Matrix C = matrix_from_json(doc["C"], p, n, "C");
  Matrix D = matrix_from_json(doc["D"], p, m, "D");
  if (!all_finite(A) || !all_finite(B) || !all_finite(C) || !all_finite(D))
    raise(ErrorCode::NonFiniteEntry, "system file has a non-finite entry");
  SystemRealization sys;
  sys.n_state = n;
  sys.n_in = m;
  sys.n_out = p;
  sys.A = std::move(A);
  sys.B = std::move(B);
  sys.C = std::move(C);
  sys.D = std::move(D);
  validate(sys);
  return sys;
}

std::string dump(const json& doc, int indent) { return doc.dump(indent); }

json system_to_json(const SystemRealization& sys) {
  json doc;
  doc["n_state"] = sys.n_state;
  doc["n_in"] = sys.n_in;
  doc["n_out"] = sys.n_out;
  doc["A"] = matrix_to_json(sys.A);
  doc["B"] = matrix_to_json(sys.B);
  doc["C"] = matrix_to_json(sys.C);
  doc["D"] = matrix_to_json(sys.D);
  return doc;
}

}  // namespace

SystemRealization parse_system_string(const std::string& text) {
  return system_from_json(parse_document(text));
}

SystemRealization parse_system_file(const std::string& path) {
  return parse_system_string(read_file(path));
}

std::string to_json_string(const SystemRealization& sys, int indent) {
  return dump(system_to_json(sys), indent);
}

std::string to_json_string(const Matrix& matrix, int indent) {
  return dump(matrix_to_json(matrix), indent);
}

std::string to_json_string(const TransferSample& sample, int indent) {
  json doc;
  doc["z"] = complex_to_json(sample.z);
  doc["value"] = matrix_to_json(sample.value);
  doc["condition"] = sample.condition;
  return dump(doc, indent);
}

std::string to_json_string(const Trajectory& traj, int indent) {
  json doc;
  json inputs = json::array(), states = json::array(), outputs = json::array();
  for (const auto& u : traj.inputs) inputs.push_back(vector_to_json(u));
  for (const auto& x : traj.states) states.push_back(vector_to_json(x));
  for (const auto& y : traj.outputs) outputs.push_back(vector_to_json(y));
  doc["inputs"] = std::move(inputs);
  doc["states"] = std::move(states);
  doc["outputs"] = std::move(outputs);
  return dump(doc, indent);
}

std::string to_json_string(const OperatorTruncation& trunc, int indent) {
  json doc;
  doc["horizon"] = trunc.horizon;
  doc["n_state"] = trunc.n_state;
  doc["n_in"] = trunc.n_in;
  doc["n_out"] = trunc.n_out;
  doc["Wc"] = matrix_to_json(trunc.Wc);
  doc["Wo"] = matrix_to_json(trunc.Wo);
  doc["hankel"] = matrix_to_json(trunc.hankel);
  return dump(doc, indent);
}

std::string to_json_string(const MinimalityReport& report, int indent) {
  json doc;
  doc["controllable"] = report.controllable;
  doc["observable"] = report.observable;
  doc["minimal"] = report.minimal;
  doc["reach_rank"] = report.reach_rank;
  doc["obs_rank"] = report.obs_rank;
  if (report.gramian_min_eigs)
    doc["gramian_min_eigs"] =
        json::array({report.gramian_min_eigs->first, report.gramian_min_eigs->second});
  else
    doc["gramian_min_eigs"] = nullptr;
  return dump(doc, indent);
}

std::string to_json_string(const SimilarityMap& map, int indent) {
  json doc;
  doc["gamma"] = matrix_to_json(map.gamma);
  doc["gamma_left"] = matrix_to_json(map.gamma_left);
  doc["residuals"] = {{"r_AX", map.residuals.r_AX}, {"r_B", map.residuals.r_B},
                      {"r_C", map.residuals.r_C},   {"r_D", map.residuals.r_D},
                      {"r_inv", map.residuals.r_inv}};
  doc["valid"] = map.valid;
  return dump(doc, indent);
}

std::string to_json_string(const KypCertificate& cert, int indent) {
  json doc;
  doc["H"] = matrix_to_json(cert.H);
  doc["mode"] = cert.mode == KypMode::strict ? "strict" : "standard";
  doc["margin"] = cert.margin;
  if (cert.epsilon)
    doc["epsilon"] = *cert.epsilon;
  else
    doc["epsilon"] = nullptr;
  switch (cert.method) {
    case KypMethod::riccati_fixed_point: doc["method"] = "riccati_fixed_point"; break;
    case KypMethod::from_similarity: doc["method"] = "from_similarity"; break;
    case KypMethod::augmentation: doc["method"] = "augmentation"; break;
  }
  doc["iterations"] = cert.iterations;
  return dump(doc, indent);
}

std::string to_json_string(const NormBound& bound, int indent) {
  json doc;
  doc["lower"] = bound.lower;
  doc["upper"] = bound.upper;
  doc["samples"] = bound.samples;
  doc["certified"] = bound.certified;
  return dump(doc, indent);
}

Matrix parse_hermitian_file(const std::string& path) {
  const json doc = parse_document(read_file(path));
  const json* source = &doc;
  if (doc.is_object()) {
    // accept a bare matrix, {"H": ...}, a certificate, or a full CLI report
    // wrapping a certificate under "result"
    if (doc.contains("H"))
      source = &doc["H"];
    else if (doc.contains("result") && doc["result"].is_object() && doc["result"].contains("H"))
      source = &doc["result"]["H"];
    else
      raise(ErrorCode::SchemaError, "object form needs an \"H\" field");
  }
  if (!source->is_array()) raise(ErrorCode::SchemaError, "expected a matrix (array of rows)");
  const Index rows = static_cast<Index>(source->size());
  Index cols = 0;
  if (rows > 0) {
    if (!(*source)[0].is_array())
      raise(ErrorCode::SchemaError, "field \"H\", row 0: expected an array");
    cols = static_cast<Index>((*source)[0].size());
  }
  Matrix H = matrix_from_json(*source, rows, cols, "H");
  if (!all_finite(H)) raise(ErrorCode::NonFiniteEntry, "H has a non-finite entry");
  return H;
}

SimulationInput parse_simulation_input_file(const std::string& path) {
  const json doc = parse_document(read_file(path));
  if (!doc.is_object() || !doc.contains("inputs"))
    raise(ErrorCode::SchemaError, "expected an object with an \"inputs\" field");
  SimulationInput sim;
  const json& inputs = doc["inputs"];
  if (!inputs.is_array()) raise(ErrorCode::SchemaError, "field \"inputs\": expected an array");
  for (size_t k = 0; k < inputs.size(); ++k)
    sim.inputs.push_back(vector_from_json(inputs[k], "inputs[" + std::to_string(k) + "]"));
  if (doc.contains("x0") && !doc["x0"].is_null()) {
    sim.x0 = vector_from_json(doc["x0"], "x0");
    sim.has_x0 = true;
  }
  return sim;
}

}  // namespace brlkit
