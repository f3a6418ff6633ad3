#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "momentbc/dynamics.hpp"
#include "momentbc/inverse_pipeline.hpp"

namespace momentbc::io {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kToolName = "momentbc";
inline constexpr std::string_view kToolVersion = "0.1.0";

/// Tolerances recorded in the meta block of every emitted document.
struct Settings {
  double tol_singular = 1e-10;
  double tol_residual = 1e-8;
};

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);
Json vector_to_json(const ComplexVector& v);
ComplexVector vector_from_json(const Json& j);
Json matrix_to_json(const Matrix& m);

/// {"kind": kind, "payload": payload, "meta": {...}}
Json make_document(std::string_view kind, Json payload, const Settings& settings);

/// Checks the envelope and the kind; returns the payload. Throws Error{ParseError}.
const Json& expect_kind(const Json& doc, std::string_view kind);

Json jacobi_payload(const JacobiSpec& spec);
JacobiSpec jacobi_from_payload(const Json& payload);
Json moments_payload(const MomentSequence& s);
MomentSequence moments_from_payload(const Json& payload);
Json response_payload(const ResponseVector& r);
ResponseVector response_from_payload(const Json& payload);
Json measure_payload(const DiscreteMeasure& m);
DiscreteMeasure measure_from_payload(const Json& payload);
Json control_payload(const Control& f);
Control control_from_payload(const Json& payload);

/// Deterministic serialization: insertion-ordered keys, doubles as %.17g, two-space
/// indentation, trailing newline.
std::string dump(const Json& j);

Json parse(std::string_view text);

/// CSV with header "n,t,re,im": every site (n = 0 is the control) for t = 0..horizon.
std::string wavefield_csv(const WaveField& field);

}  // namespace momentbc::io
