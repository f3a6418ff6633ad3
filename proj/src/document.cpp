#include "momentbc/document.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "momentbc/errors.hpp"

namespace momentbc::io {
namespace {

std::string format_double(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::NonFiniteEntry, "cannot serialize a non-finite number");
  if (x == 0.0) x = 0.0;  // drop the sign of zero
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

bool is_flat(const Json& j) {
  for (const auto& item : j) {
    if (item.is_structured()) return false;
  }
  return true;
}

void emit(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += inner + Json(it.key()).dump() + ": ";
      emit(it.value(), out, indent + 1);
    }
    out += "\n" + pad + "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
    } else if (is_flat(j)) {
      out += "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += ", ";
        emit(j[i], out, indent + 1);
      }
      out += "]";
    } else {
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += ",\n";
        out += inner;
        emit(j[i], out, indent + 1);
      }
      out += "\n" + pad + "]";
    }
  } else if (j.is_number_float()) {
    out += format_double(j.get<double>());
  } else {
    out += j.dump();
  }
}


[[noreturn]] void fail(const std::string& message) { throw Error(ErrorCode::ParseError, message); }

const Json& field(const Json& payload, const char* name) {
  if (!payload.is_object() || !payload.contains(name)) fail(std::string("payload is missing \"") + name + "\"");
  return payload.at(name);
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  fail("complex numbers are [re, im] pairs, got " + j.dump());
}

Json vector_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (const Complex& z : v) out.push_back(complex_to_json(z));
  return out;
}

ComplexVector vector_from_json(const Json& j) {
  if (!j.is_array()) fail("expected an array of [re, im] pairs, got " + j.dump());
  ComplexVector out;
  out.reserve(j.size());
  for (const auto& item : j) out.push_back(complex_from_json(item));
  return out;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

Json make_document(std::string_view kind, Json payload, const Settings& settings) {
  Json doc;
  doc["kind"] = std::string(kind);
  doc["payload"] = std::move(payload);
  Json meta;
  meta["tool"] = std::string(kToolName);
  meta["version"] = std::string(kToolVersion);
  meta["tol_singular"] = settings.tol_singular;
  meta["tol_residual"] = settings.tol_residual;
  doc["meta"] = std::move(meta);
  return doc;
}

const Json& expect_kind(const Json& doc, std::string_view kind) {
  if (!doc.is_object() || !doc.contains("kind") || !doc.contains("payload")) {
    fail("expected a {\"kind\", \"payload\", \"meta\"} document");
  }
  if (!doc.at("kind").is_string() || doc.at("kind").get<std::string>() != kind) {
    fail("expected kind \"" + std::string(kind) + "\", got " + doc.at("kind").dump());
  }
  return doc.at("payload");
}

Json jacobi_payload(const JacobiSpec& spec) {
  Json p;
  p["a0"] = complex_to_json(spec.a0);
  p["a"] = vector_to_json(spec.a);
  p["b"] = vector_to_json(spec.b);
  return p;
}

JacobiSpec jacobi_from_payload(const Json& payload) {
  JacobiSpec spec{complex_from_json(field(payload, "a0")), vector_from_json(field(payload, "a")),
                  vector_from_json(field(payload, "b"))};
  validate(spec);
  return spec;
}

Json moments_payload(const MomentSequence& s) {
  Json p;
  p["s"] = vector_to_json(s.s);
  return p;
}

MomentSequence moments_from_payload(const Json& payload) { return {vector_from_json(field(payload, "s"))}; }

Json response_payload(const ResponseVector& r) {
  Json p;
  p["r"] = vector_to_json(r.r);
  return p;
}

ResponseVector response_from_payload(const Json& payload) { return {vector_from_json(field(payload, "r"))}; }

Json measure_payload(const DiscreteMeasure& m) {
  Json p;
  p["support"] = vector_to_json(m.support);
  p["weights"] = vector_to_json(m.weights);
  return p;
}

DiscreteMeasure measure_from_payload(const Json& payload) {
  DiscreteMeasure m{vector_from_json(field(payload, "support")), vector_from_json(field(payload, "weights"))};
  if (m.support.size() != m.weights.size()) fail("support and weights differ in length");
  return m;
}

Json control_payload(const Control& f) {
  Json p;
  p["f"] = vector_to_json(f.samples);
  return p;
}

Control control_from_payload(const Json& payload) { return {vector_from_json(field(payload, "f"))}; }

std::string dump(const Json& j) {
  std::string out;
  emit(j, out, 0);
  out += "\n";
  return out;
}

Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(e.what());
  }
}

std::string wavefield_csv(const WaveField& field) {
  std::string out = "n,t,re,im\n";
  for (std::size_t n = 0; n < field.sites(); ++n) {
    for (long t = 0; t <= static_cast<long>(field.horizon()); ++t) {
      const Complex z = field(n, t);
      out += std::to_string(n) + "," + std::to_string(t) + "," + format_double(z.real()) + "," +
             format_double(z.imag()) + "\n";
    }
  }
  return out;
}

}  // namespace momentbc::io
