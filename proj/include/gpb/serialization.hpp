#pragma once

// JSON forms of parameters, certificates and reports.

#include <json.hpp>

#include "gpb/classification.hpp"
#include "gpb/representations.hpp"

namespace gpb {

using Json = nlohmann::json;

/// Malformed input documents.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Json matrix_to_json(const RealMatrix& m);
RealMatrix matrix_from_json(const Json& j, const char* what);
Json vector_to_json(const RealVector& v);

/// {"n": int, "p": [p1, p2], "B1": [[...]], "B2": [[...]]}.
Json params_to_json(const DilationParams& params);
DilationParams params_from_json(const Json& j);

Json element_to_json(const GroupElement& g);

Json validation_to_json(const ValidationReport& report);

Json invariants_to_json(const InvariantVector& v);

/// {"A": [[a11, a12], [a21, a22]], "S": [[...]]}.
Json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const Json& j);
Json certificate_report_to_json(const CertificateReport& report);

/// {rows: [params...], labels: [...], verdicts: [[...]], witnesses: [[...]]}.
Json separation_to_json(const SeparationReport& report);

/// {check, params, groupElement, maxError, tolerance, pass}.
Json check_record(const std::string& check, const DilationParams& params, const GroupElement* g, double max_error,
                  double tolerance);

Json read_json_file(const std::string& path);

}  // namespace gpb
