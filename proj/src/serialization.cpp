#include "gpb/serialization.hpp"

#include <fstream>

namespace gpb {

Json matrix_to_json(const RealMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

RealMatrix matrix_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw InputError(std::string(what) + ": expected a nonempty array of rows");
  const auto rows = j.size();
  if (!j[0].is_array() || j[0].empty()) throw InputError(std::string(what) + ": rows must be nonempty arrays");
  const auto cols = j[0].size();
  RealMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw InputError(std::string(what) + ": ragged rows");
    for (std::size_t k = 0; k < cols; ++k) {
      if (!j[i][k].is_number()) throw InputError(std::string(what) + ": entries must be numbers");
      m(i, k) = j[i][k].get<double>();
    }
  }
  return m;
}

Json vector_to_json(const RealVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json params_to_json(const DilationParams& params) {
  return {{"n", params.n}, {"p", {params.p1, params.p2}}, {"B1", matrix_to_json(params.b1)},
          {"B2", matrix_to_json(params.b2)}};
}

DilationParams params_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("params: expected an object");
  for (const char* key : {"n", "p", "B1", "B2"})
    if (!j.contains(key)) throw InputError(std::string("params: missing key ") + key);
  if (!j["n"].is_number_integer()) throw InputError("params: n must be an integer");
  const Json& p = j["p"];
  if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
    throw InputError("params: p must be [p1, p2]");
  DilationParams params;
  params.n = j["n"].get<int>();
  params.p1 = p[0].get<double>();
  params.p2 = p[1].get<double>();
  params.b1 = matrix_from_json(j["B1"], "B1");
  params.b2 = matrix_from_json(j["B2"], "B2");
  try {
    check_shape(params);
  } catch (const DimensionError& e) {
    throw InputError(e.what());
  }
  return params;
}

Json element_to_json(const GroupElement& g) {
  return {{"t", {g.t(0), g.t(1)}}, {"x", vector_to_json(g.x)}, {"y", vector_to_json(g.y)}, {"z", g.z}};
}

Json validation_to_json(const ValidationReport& report) {
  Json flags = Json::array();
  if (report.heuristic) flags.push_back("m2_direction_scan");
  Json out = {{"commute", report.commute},
              {"m1_ok", report.m1_ok},
              {"m2_ok", report.m2_ok},
              {"heuristic_flags", flags},
              {"commute_defect", report.commute_defect},
              {"messages", report.messages}};
  if (report.m2_witness) out["m2_witness"] = {(*report.m2_witness)(0), (*report.m2_witness)(1)};
  return out;
}

namespace {

Json complex_to_json(Complex c) { return {c.real(), c.imag()}; }

}  // namespace

Json invariants_to_json(const InvariantVector& v) {
  Json profile = Json::array();
  const auto& pp = v.pencil_profile;
  for (int i : pp.sample_indices()) profile.push_back({{"theta", pp.grid_theta[i]}, {"value", vector_to_json(pp.grid_values[i])}});
  Json spaces = Json::array();
  for (const auto& s : v.joint_spectrum.spaces) {
    Json space = {{"first", complex_to_json(s.first)},
                  {"second", complex_to_json(s.second)},
                  {"multiplicity", s.multiplicity},
                  {"nilpotent_ranks", s.nilpotent_ranks},
                  {"kernel_dim", s.kernel_dim}};
    if (s.kernel_dim == 1) space["kernel_direction"] = {s.kernel_direction(0), s.kernel_direction(1)};
    spaces.push_back(space);
  }
  return {{"p1", v.p1},
          {"center_dim", v.center_dim},
          {"nilradical_dim", v.nilradical_dim},
          {"is_nilpotent_algebra", v.is_nilpotent_algebra},
          {"case_id", v.case_id},
          {"derived_series_dims", v.derived_series_dims},
          {"lower_central_dims", v.lower_central_dims},
          {"pencil_profile", profile},
          {"joint_spectrum", spaces}};
}

Json certificate_to_json(const Certificate& cert) {
  return {{"A", matrix_to_json(cert.a)}, {"S", matrix_to_json(cert.s)}};
}

Certificate certificate_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("A") || !j.contains("S")) throw InputError("certificate: expected {A, S}");
  const RealMatrix a = matrix_from_json(j["A"], "A");
  if (a.rows() != 2 || a.cols() != 2) throw InputError("certificate: A must be 2 x 2");
  Certificate cert;
  cert.a = a;
  cert.s = matrix_from_json(j["S"], "S");
  return cert;
}

Json certificate_report_to_json(const CertificateReport& report) {
  Json out = {{"ok", report.ok},
              {"symplectic_defect", report.symplectic_defect},
              {"p_defect", report.p_defect},
              {"c_defect", {report.c_defect[0], report.c_defect[1]}},
              {"scale", report.scale},
              {"tolerance", report.tolerance},
              {"messages", report.messages}};
  if (report.bracket_defect) out["bracket_defect"] = *report.bracket_defect;
  return out;
}

Json separation_to_json(const SeparationReport& report) {
  Json rows = Json::array();
  Json labels = Json::array();
  for (const auto& e : report.entries) {
    rows.push_back(params_to_json(e.params));
    labels.push_back(e.label);
  }
  Json verdicts = Json::array();
  Json witnesses = Json::array();
  for (std::size_t i = 0; i < report.witness.size(); ++i) {
    Json vrow = Json::array();
    Json wrow = Json::array();
    for (std::size_t j = 0; j < report.witness.size(); ++j) {
      const auto& w = report.witness[i][j];
      vrow.push_back(w.empty() ? "inconclusive" : "refuted");
      wrow.push_back(w.empty() ? Json(nullptr) : Json(w));
    }
    verdicts.push_back(vrow);
    witnesses.push_back(wrow);
  }
  return {{"rows", rows},
          {"labels", labels},
          {"verdicts", verdicts},
          {"witnesses", witnesses},
          {"inconclusive_off_diagonal", report.inconclusive_off_diagonal()}};
}

Json check_record(const std::string& check, const DilationParams& params, const GroupElement* g, double max_error,
                  double tolerance) {
  return {{"check", check},
          {"params", params_to_json(params)},
          {"groupElement", g ? element_to_json(*g) : Json(nullptr)},
          {"maxError", max_error},
          {"tolerance", tolerance},
          {"pass", max_error <= tolerance}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace gpb
